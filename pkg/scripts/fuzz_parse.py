#!/usr/bin/env python3
"""Standalone parser fuzzer.

Feeds seeded random token soup into the register parser and checks the
robustness contract: no crash, document present exactly when there are no
errors, and every diagnostic span inside the input's bounds.

    python scripts/fuzz_parse.py --count 100000 --seed 123456
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from evrforge import dsl

PIECES = [
    "register", "phase", "end", "corevalue", "quality", "evr", "threat",
    "control", "stakeholder", "session", "statement", "mission", "alias",
    "of", "for", "rank", "direction", "supports", "undermines", "note",
    "kind", "lens", "true", "false", '"text"', '"unterminated', '""',
    "1", "42", "1.1", "1.1.1", "1.1.1-T1", "1.1.1-C1", "007", ",", "#c",
    "\\", '"a\\"b"', '"a\\qb"', "€", "日本語", "~", "xyz", "concept",
    "exploration", "@", "-", ".", '"', "direct",
]


def fuzz_source(rng: random.Random) -> str:
    out = []
    for _ in range(rng.randint(0, 14)):
        out.append(rng.choice(PIECES))
        out.append(rng.choice([" ", " ", "\n", "\t", "  "]))
    return "".join(out)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=123456)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    started = time.monotonic()
    with_errors = 0
    for i in range(args.count):
        text = fuzz_source(rng)
        result = dsl.parse_register(text, "fuzz.evr")
        if (result.document is not None) == bool(result.errors):
            print(f"contract breach at input {i}: {text!r}")
            return 1
        with_errors += bool(result.errors)
        lines = text.split("\n")
        for d in result.diagnostics:
            if not 1 <= d.span.start_line <= max(1, len(lines)):
                print(f"line out of bounds at input {i}: {text!r}")
                return 1
            line = lines[d.span.start_line - 1] if d.span.start_line <= len(lines) else ""
            if not 1 <= d.span.start_col <= len(line) + 1:
                print(f"column out of bounds at input {i}: {text!r}")
                return 1
    elapsed = time.monotonic() - started
    print(f"{args.count} inputs, {with_errors} with errors, "
          f"no crashes, all spans in bounds ({elapsed:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
