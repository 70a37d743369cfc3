#!/usr/bin/env python3
"""Writes msnbc_1000.seq: 1000 sessions in the msnbc990928 layout.

Users follow one of a few browsing archetypes (a handful of favourite
categories visited with archetype-specific relative intensity) and
repeat pages in runs. Lengths are geometric-ish so only part of the
file survives the default 5..15 length filter, as with the real data.

    python3 make_msnbc_fixture.py > msnbc_1000.seq
"""
import random
import sys

CATEGORIES = ("frontpage news tech local opinion on-air misc weather msn-news "
              "health living business msn-sports sports summary bbs travel").split()

ARCHETYPES = [
    {1: 4, 2: 2, 8: 1},            # frontpage, news, weather
    {13: 3, 14: 3, 1: 1},          # msn-sports, sports, frontpage
    {3: 3, 12: 2, 2: 1, 4: 1},     # tech, business, news, local
    {6: 4, 7: 2, 16: 1},           # on-air, misc, bbs
    {10: 2, 11: 2, 17: 2, 9: 1},   # health, living, travel, msn-news
]


def session(rng):
    length = min(40, 1 + int(rng.expovariate(1 / 5.5)))
    arch = rng.choice(ARCHETYPES)
    pages, weights = zip(*arch.items())
    out = []
    while len(out) < length:
        if rng.random() < 0.1:
            page = rng.randint(1, len(CATEGORIES))
        else:
            page = rng.choices(pages, weights)[0]
        run = 1 + int(rng.expovariate(1 / 0.8))
        out.extend([page] * run)
    return out[:length]


def main():
    rng = random.Random(20240917)
    w = sys.stdout.write
    w("% Different categories found in input file:\n\n")
    w(" ".join(CATEGORIES) + "\n\n")
    w("% Sequences:\n\n")
    for _ in range(1000):
        w(" ".join(map(str, session(rng))) + " \n")


if __name__ == "__main__":
    main()
