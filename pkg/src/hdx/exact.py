"""Exact rank over the rationals by fraction-free row reduction."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np


def _integer_rows(M) -> list[dict[int, int]]:
    rows = []
    for row in M:
        vals = list(row)
        den = 1
        for x in vals:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        sparse = {}
        for j, x in enumerate(vals):
            if isinstance(x, (float, np.floating)):
                x = Fraction(float(x))
                if x.denominator != 1:
                    raise TypeError("exact_rank needs integer or rational entries")
            v = int(Fraction(x) * den)
            if v:
                sparse[j] = v
        if sparse:
            rows.append(sparse)
    return rows


def exact_rank(M) -> int:
    """Rank of an integer/rational matrix over Q.

    Accepts a numpy integer/object array or a nested sequence.
    """
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2 or 0 in arr.shape:
        return 0
    rows = _integer_rows(arr)
    rank = 0
    while rows:
        # pivot on the row with the fewest nonzeros to limit fill-in
        k = min(range(len(rows)), key=lambda i: len(rows[i]))
        piv_row = rows.pop(k)
        col = min(piv_row)
        p = piv_row[col]
        rank += 1
        rest = []
        for row in rows:
            a = row.get(col)
            if a is None:
                rest.append(row)
                continue
            new = {j: p * v for j, v in row.items()}
            for j, v in piv_row.items():
                nv = new.get(j, 0) - a * v
                if nv:
                    new[j] = nv
                else:
                    new.pop(j, None)
            if new:
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
                rest.append(new)
        rows = rest
    return rank
