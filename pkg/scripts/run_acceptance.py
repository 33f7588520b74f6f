"""Run the acceptance criteria and print one line per criterion.

    python scripts/run_acceptance.py            # all ten
    python scripts/run_acceptance.py 1 7 9      # a subset
    python scripts/run_acceptance.py --out report.txt

The run is deterministic; PACKETC_SEED changes the random corpora.
"""

import argparse
import os
import sys
import time

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, "..", "tests"))

import test_acceptance as acc  # noqa: E402


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("criteria", nargs="*", type=int, help="criterion numbers (default: all)")
    parser.add_argument("--out", help="also write the report to this file")
    args = parser.parse_args(argv)

    chosen = args.criteria or sorted(acc.CRITERIA)
    unknown = [n for n in chosen if n not in acc.CRITERIA]
    if unknown:
        parser.error(f"no criterion {unknown[0]}")
    lines = []
    for n in chosen:
        start = time.perf_counter()
        acc.run(n)
        line = f"{acc.line(n)}  [{time.perf_counter() - start:.1f} s]"
        print(line, flush=True)
        lines.append(line)
    passed = sum(acc.RESULTS[n][1] for n in chosen)
    lines.append(f"{passed}/{len(chosen)} criteria pass (PACKETC_SEED={os.environ.get('PACKETC_SEED', '0')})")
    print(lines[-1])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0 if passed == len(chosen) else 1


if __name__ == "__main__":
    sys.exit(main())
