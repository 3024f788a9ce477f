#!/usr/bin/env python3
"""Export the 20 Newsgroups corpus to the category-dirs layout.

Downloads via scikit-learn (network required) and writes
<out>/<category>/<id>.txt, one plain-text file per document, ready for
`htmdoc train --data <out>`.
"""

import argparse
import pathlib

from sklearn.datasets import fetch_20newsgroups


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/20news", type=pathlib.Path)
    args = parser.parse_args()

    dataset = fetch_20newsgroups(
        subset="all", remove=("headers", "footers", "quotes")
    )
    counters = {}
    for text, label in zip(dataset.data, dataset.target):
        category = dataset.target_names[label]
        directory = args.out / category
        directory.mkdir(parents=True, exist_ok=True)
        index = counters.get(category, 0)
        counters[category] = index + 1
        (directory / f"{index:05d}.txt").write_text(text, encoding="utf-8")
    total = sum(counters.values())
    print(f"wrote {total} documents across {len(counters)} categories to {args.out}")


if __name__ == "__main__":
    main()
