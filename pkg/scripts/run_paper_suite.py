"""Run every example family and write the table and JSON rows to an output directory."""

import argparse
from collections import Counter
from pathlib import Path

from nielsen.suite import paper_suite, suite_json, suite_text


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=Path("results"))
    p.add_argument("--no-certificate", action="store_true")
    args = p.parse_args()

    rows = paper_suite(include_certificate=not args.no_certificate)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "suite.txt").write_text(suite_text(rows) + "\n")
    (args.out / "suite.json").write_text(suite_json(rows) + "\n")

    counts = Counter((r.group, r.conclusion) for r in rows)
    for (group, concl), n in sorted(counts.items()):
        print(f"{group:<12} {concl:<28} {n}")
    print(f"{len(rows)} rows written to {args.out}")


if __name__ == "__main__":
    main()
