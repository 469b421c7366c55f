#!/usr/bin/env python3
# Copyright 2026 The PSC Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the small end-to-end corpus in this directory.

Output is fully determined by the seed and the two sibling fixtures, so the
committed files can be checked with `make_corpus.py --check`.
"""

import argparse
import pathlib
import random
import sys

HERE = pathlib.Path(__file__).resolve().parent
FIXTURES = HERE.parent
SEED = 20260101
LINES = 500
ZWNJ = "‌"

FUNCTION_WORDS = [
    "و", "در", "به", "از", "که", "این", "با", "برای", "است", "بود", "آن",
    "هم", "تا", "اما", "یک", "را", "نیز", "شد", "کرد", "خواهد",
]
FORMAL_EXTRA = [
    "کتاب", "مادر", "خانه", "شهر", "روز", "امروز", "فیلم", "دیدم", "جلسه",
    "خبر", "برنامه", "ساعت", "فردا", "خیلی", "واقعا", "من", "ما", "شما",
]
NOISE = ["😂", "❤️", "@user_12", "http://t.co/x1", "#خبر_فوری", "!!!", "؟",
         "ي", "ك", "۱۲۳"]
SENTIMENT = {
    "positive": ["عالیه", "خوبه", "قشنگه", "عاالی", "خیلیییی خوب", "دوستش دارم",
                 "عالی", "زیبا"],
    "negative": ["افتضاحه", "بده", "زشته", "خیلی بد", "بدددد", "متنفرم",
                 "افتضاح", "غمگین"],
    "neutral": ["خبر", "جلسه", "فردا", "ساعت", "برنامه", "امروز", "اطلاعیه",
                "گزارش"],
}
LABELS = ["negative", "neutral", "positive"]


def read_rows(path):
    rows = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line and not line.startswith("#"):
            rows.append(line.split("\t"))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--check", action="store_true",
                        help="fail if the committed files differ")
    args = parser.parse_args()

    rng = random.Random(SEED)
    golden = read_rows(FIXTURES / "golden_pairs.tsv")
    slang_words = [r[1] for r in golden]
    formal_vocab = [r[0] for r in read_rows(FIXTURES / "formal_vocab.txt")]
    formal_tokens = sorted({t for r in golden for t in r[2].split(" ")}
                           | set(formal_vocab))

    def sentence(pool, lo, hi, noise):
        words = [rng.choice(pool) for _ in range(rng.randint(lo, hi))]
        if rng.random() < noise:
            words.insert(rng.randrange(len(words) + 1), rng.choice(NOISE))
        return " ".join(words)

    formal = []
    for _ in range(LINES):
        pool = FUNCTION_WORDS * 2 + FORMAL_EXTRA + formal_tokens
        formal.append(sentence(pool, 5, 12, 0.1))

    slang = []
    for _ in range(LINES):
        words = [rng.choice(FUNCTION_WORDS + FORMAL_EXTRA)
                 for _ in range(rng.randint(3, 8))]
        for _ in range(rng.randint(1, 3)):
            words.insert(rng.randrange(len(words) + 1), rng.choice(slang_words))
        if rng.random() < 0.3:
            words.append(rng.choice(NOISE))
        slang.append(" ".join(words))

    labeled = []
    for i in range(LINES):
        label = LABELS[i % 3]
        words = [rng.choice(FUNCTION_WORDS + FORMAL_EXTRA)
                 for _ in range(rng.randint(2, 5))]
        words.insert(rng.randrange(len(words) + 1),
                     rng.choice(SENTIMENT[label]))
        if rng.random() < 0.4:
            words.insert(rng.randrange(len(words) + 1), rng.choice(slang_words))
        text = " ".join(words)
        r = rng.random()
        if r < 0.05:
            # No majority: dropped when read.
            votes = rng.sample(LABELS, 3)
            labeled.append("\t".join(votes + [text]))
        elif r < 0.25:
            other = rng.choice([l for l in LABELS if l != label])
            votes = [label, label, other]
            rng.shuffle(votes)
            labeled.append("\t".join(votes + [text]))
        else:
            labeled.append(label + "\t" + text)

    outputs = {
        "formal.txt": "\n".join(formal) + "\n",
        "slang.txt": "\n".join(slang) + "\n",
        "labeled.tsv": "\n".join(labeled) + "\n",
    }
    stale = []
    for name, text in outputs.items():
        path = HERE / name
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                stale.append(name)
        else:
            path.write_text(text, encoding="utf-8")
    if stale:
        print("stale: " + ", ".join(stale), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
