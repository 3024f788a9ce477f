#!/usr/bin/env python3
"""Export the NLTK Movie Reviews corpus to the category-dirs layout.

Downloads via nltk (network required) and writes <out>/{neg,pos}/<id>.txt,
ready for `htmdoc train --data <out>`.
"""

import argparse
import pathlib

import nltk


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/movie_reviews", type=pathlib.Path)
    args = parser.parse_args()

    nltk.download("movie_reviews", quiet=True)
    from nltk.corpus import movie_reviews

    count = 0
    for fileid in movie_reviews.fileids():
        category, name = fileid.split("/", 1)
        directory = args.out / category
        directory.mkdir(parents=True, exist_ok=True)
        (directory / name).write_text(movie_reviews.raw(fileid), encoding="utf-8")
        count += 1
    print(f"wrote {count} documents to {args.out}")


if __name__ == "__main__":
    main()
