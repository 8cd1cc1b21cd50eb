#!/usr/bin/env python3
"""Run Glucose 3 (python-sat) on a DIMACS file and print competition output."""
import sys

from pysat.formula import CNF
from pysat.solvers import Glucose3


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: pysat_solver.py <file.cnf>", file=sys.stderr)
        return 2
    cnf = CNF(from_file=sys.argv[1])
    with Glucose3(bootstrap_with=cnf.clauses) as solver:
        if not solver.solve():
            print("s UNSATISFIABLE")
            return 20
        print("s SATISFIABLE")
        model = solver.get_model() or []
        print("v " + " ".join(str(lit) for lit in model) + " 0")
        return 10


if __name__ == "__main__":
    sys.exit(main())
