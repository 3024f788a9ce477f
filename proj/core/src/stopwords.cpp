#include <fstream>

#include "htmdoc/corpus.hpp"
#include "htmdoc/error.hpp"

namespace htmdoc {

namespace {

// Fixed English list, mirrored in data/stopwords_en.txt.
const char* const kEnglishStopwords[] = {
    "a",       "about",   "above",   "after",   "again",    "against",
    "all",     "am",      "an",      "and",     "any",      "are",
    "aren",    "as",      "at",      "be",      "because",  "been",
    "before",  "being",   "below",   "between", "both",     "but",
    "by",      "can",     "cannot",  "could",   "couldn",   "did",
    "didn",    "do",      "does",    "doesn",   "doing",    "don",
    "down",    "during",  "each",    "few",     "for",      "from",
    "further", "had",     "hadn",    "has",     "hasn",     "have",
    "haven",   "having",  "he",      "her",     "here",     "hers",
    "herself", "him",     "himself", "his",     "how",      "i",
    "if",      "in",      "into",    "is",      "isn",      "it",
    "its",     "itself",  "just",    "ll",      "me",       "mightn",
    "more",    "most",    "mustn",   "my",      "myself",   "needn",
    "no",      "nor",     "not",     "now",     "o",        "of",
    "off",     "on",      "once",    "only",    "or",       "other",
    "our",     "ours",    "ourselves", "out",   "over",     "own",
    "re",      "s",       "same",    "shan",    "she",      "should",
    "shouldn", "so",      "some",    "such",    "t",        "than",
    "that",    "the",     "their",   "theirs",  "them",     "themselves",
    "then",    "there",   "these",   "they",    "this",     "those",
    "through", "to",      "too",     "under",   "until",    "up",
    "ve",      "very",    "was",     "wasn",    "we",       "were",
    "weren",   "what",    "when",    "where",   "which",    "while",
    "who",     "whom",    "why",     "will",    "with",     "won",
    "would",   "wouldn",  "y",       "you",     "your",     "yours",
    "yourself", "yourselves",
};

}  // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet set(std::begin(kEnglishStopwords),
                               std::end(kEnglishStopwords));
  return set;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open stopword file: " + path.string());
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n' ||
                             line.back() == ' '))
      line.pop_back();
    if (!line.empty()) set.insert(line);
  }
  return set;
}

}  // namespace htmdoc
