#!/usr/bin/env python3
"""Solve an exported LP model with scipy's HiGHS backend.

The CI suite only checks that decoded schedules satisfy every exported
constraint; this script performs the complementary external check that the
model's optimum matches the toolkit's brute-force value on a small instance:

    fjssp-bench export --milp --in instance.fjs --out model.lp
    python3 docs/verify_milp_optimum.py model.lp

It reads the LP subset emitted by the exporter (named constraints, integer
coefficients, a Binary section) and prints the optimal objective.
"""

import re
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp


def parse_lp(path):
    section = None
    constraints = []  # (name, {var: coef}, sense, rhs)
    binaries = set()
    with open(path) as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("\\"):
                continue
            if line in ("Minimize", "Subject To", "Binary", "Bounds", "End"):
                section = line
                continue
            if section == "Minimize":
                continue  # objective is always "obj: Cmax"
            if section == "Binary":
                binaries.add(line)
                continue
            if section != "Subject To":
                continue
            name, body = line.split(":", 1)
            tokens = body.split()
            terms, sign, coef = {}, 1.0, None
            sense = rhs = None
            it = iter(range(len(tokens)))
            i = 0
            while i < len(tokens):
                tok = tokens[i]
                if tok == "+":
                    sign, coef = 1.0, None
                elif tok == "-":
                    sign, coef = -1.0, None
                elif tok in (">=", "<=", "="):
                    sense = tok
                    rhs = float(tokens[i + 1])
                    break
                elif re.fullmatch(r"-?\d+(\.\d+)?", tok):
                    coef = float(tok)
                else:
                    terms[tok] = terms.get(tok, 0.0) + sign * (coef if coef is not None else 1.0)
                    sign, coef = 1.0, None
                i += 1
            constraints.append((name.strip(), terms, sense, rhs))
    return constraints, binaries


def main():
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    constraints, binaries = parse_lp(sys.argv[1])
    variables = sorted({v for _, terms, _, _ in constraints for v in terms} | binaries)
    index = {v: i for i, v in enumerate(variables)}
    c = np.zeros(len(variables))
    c[index["Cmax"]] = 1.0

    rows, lower, upper = [], [], []
    for _, terms, sense, rhs in constraints:
        row = np.zeros(len(variables))
        for var, coef in terms.items():
            row[index[var]] = coef
        rows.append(row)
        lower.append(rhs if sense in (">=", "=") else -np.inf)
        upper.append(rhs if sense in ("<=", "=") else np.inf)

    integrality = np.array([1 if v in binaries else 0 for v in variables])
    bounds_lower = np.zeros(len(variables))
    bounds_upper = np.array([1.0 if v in binaries else np.inf for v in variables])

    result = milp(
        c,
        constraints=LinearConstraint(np.vstack(rows), lower, upper),
        integrality=integrality,
        bounds=Bounds(bounds_lower, bounds_upper),
    )
    if not result.success:
        sys.exit(f"solver failed: {result.message}")
    print(f"optimum = {result.fun:.6f}")


if __name__ == "__main__":
    main()
