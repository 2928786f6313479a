"""Build the eigenlattice certificate, verify it, and optionally dump it as JSON."""

import argparse
import sys
import time
from pathlib import Path

from nielsen.degtyarev import build_certificate, certificate_json, verify_certificate


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--json", type=Path, help="write certificate and report to this file")
    args = p.parse_args()

    t0 = time.perf_counter()
    rep = verify_certificate(build_certificate())
    print(rep.to_text())
    print(f"elapsed {time.perf_counter() - t0:.2f}s")
    if args.json:
        args.json.write_text(certificate_json() + "\n")
    sys.exit(0 if rep.passed else 1)


if __name__ == "__main__":
    main()
