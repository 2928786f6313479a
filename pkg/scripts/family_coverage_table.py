"""Tabulate verdicts per family and parameter, one cell per (row parameter, column parameter)."""

import re
from collections import defaultdict

from nielsen.suite import paper_suite

ABBREV = {"Obstructed": "O", "Inapplicable": "I", "HypothesisFailure": "H", "Error": "E"}


def abbrev(conclusion: str) -> str:
    return next((a for name, a in ABBREV.items() if conclusion.startswith(name)), "?")


def main():
    rows = paper_suite(include_certificate=False)
    tables = defaultdict(dict)
    for r in rows:
        m = re.match(r"([XYZ])_\{(-?\d+),(\d+)\}(?: b2T=(\d+))?", r.label)
        if not m:
            continue
        fam, a, n, b2T = m.groups()
        key = f"{fam} b2T={b2T}" if b2T else f"{fam} {r.mapping.split()[0]}"
        cell = abbrev(r.conclusion)
        if r.as_paper is not None:
            cell += "/" + abbrev(r.as_paper)
        tables[key][(int(a), int(n))] = cell

    for key, cells in tables.items():
        params = sorted({a for a, _ in cells})
        ns = sorted({n for _, n in cells})
        print(f"\n{key}   (rows: first index, columns: n)")
        print("      " + "".join(f"{n:>7}" for n in ns))
        for a in params:
            print(f"{a:>5} " + "".join(f"{cells.get((a, n), '-'):>7}" for n in ns))
    print("\nO Obstructed, I Inapplicable, H HypothesisFailure, E Error; a/b is literal/as-paper")


if __name__ == "__main__":
    main()
