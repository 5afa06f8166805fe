#!/usr/bin/env python3
"""Build data/knots.csv from KnotInfo and the bundled spectrum list.

KnotInfo is read through the `database_knotinfo` package
(`pip install database_knotinfo`). Jones polynomials are rewritten into the
internal `e:c` form, with exponents in quarter-units of t.

Usage: python3 scripts/ingest_knotinfo.py [--data DIR]
"""

import argparse
import csv
import os
import re
import sys

from database_knotinfo import link_list

TERM = re.compile(r"([+-]?)(\d*)\*?(t(?:\^\(?(-?\d+)\)?)?)?")


def jones_to_quarter(text):
    """'t+ t^3-t^4' -> {4: 1, 12: 1, 16: -1}"""
    coeffs = {}
    for sign, coef, var, exp in TERM.findall(text.replace(" ", "")):
        if not coef and not var:
            continue
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        e = 0 if not var else (int(exp) if exp else 1)
        coeffs[4 * e] = coeffs.get(4 * e, 0) + c
    return {e: c for e, c in coeffs.items() if c}


def render_jones(coeffs):
    return ";".join(f"{e}:{c}" for e, c in sorted(coeffs.items()))


def render_dt(text):
    text = text.strip().strip("[]")
    if not text:
        return ""
    return " ".join(tok.strip() for tok in text.split(","))


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    parser = argparse.ArgumentParser()
    parser.add_argument("--data", default=os.path.join(here, "..", "data"))
    args = parser.parse_args()

    knotinfo = {row["name"]: row for row in link_list()[1:]}

    with open(os.path.join(args.data, "spectra.csv"), newline="") as f:
        spectra = list(csv.DictReader(f))

    out_path = os.path.join(args.data, "knots.csv")
    with open(out_path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "crossings", "bridge", "braid", "dt", "jones", "spectrum", "derivation"])
        for row in spectra:
            k = knotinfo[row["name"]]
            if (k["bridge_index"], k["braid_index"]) != (row["bridge"], row["braid"]):
                sys.exit(f"{row['name']}: KnotInfo indices disagree with spectra.csv")
            w.writerow([
                row["name"],
                k["crossing_number"],
                k["bridge_index"],
                k["braid_index"],
                render_dt(k["dt_notation"]),
                render_jones(jones_to_quarter(k["jones_polynomial"])),
                row["spectrum"],
                row["derivation"],
            ])
    print(f"wrote {len(spectra)} rows to {out_path}")


if __name__ == "__main__":
    main()
