#!/usr/bin/env python3
"""Solve an exported MPS file with HiGHS and print the maximization optimum.

The exporter writes max c'x as min -c'x, so the printed value is the negated
HiGHS objective. Exit status 0 on optimum, 1 otherwise, 3 if highspy is missing.
"""
import argparse
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("mps", help="fixed-format MPS file")
    args = parser.parse_args()
    try:
        import highspy
    except ImportError:
        print("highspy not available", file=sys.stderr)
        return 3

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if h.readModel(args.mps) != highspy.HighsStatus.kOk:
        print(f"could not read {args.mps}", file=sys.stderr)
        return 1
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        print(f"status: {h.modelStatusToString(h.getModelStatus())}", file=sys.stderr)
        return 1
    print(f"{-h.getInfo().objective_function_value:.12f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
