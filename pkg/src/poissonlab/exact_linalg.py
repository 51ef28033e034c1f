"""Exact sparse rational matrices with fraction-free rank/kernel computation.

Elimination strategy: clear denominators row by row, then eliminate with
integer cross-multiplication, dividing each updated row by its content.  No
floating point anywhere; pivoting is deterministic (first remaining row with
a nonzero entry, columns scanned left to right), so ranks and kernel bases
are bit-identical across runs.
"""

from __future__ import annotations

import math
from fractions import Fraction


class ExactMatrix:
    """Sparse rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
                v = Fraction(v)
                if v:
                    self.entries[(r, c)] = v

    def set(self, r, c, value):
        value = Fraction(value)
        if value:
            self.entries[(r, c)] = value
        else:
            self.entries.pop((r, c), None)

    def get(self, r, c):
        return self.entries.get((r, c), Fraction(0))

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def apply(self, vector):
        """Matrix-vector product over Fractions."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            if vector[c]:
                out[r] += v * vector[c]
        return out

    def integer_rows(self):
        """Rows as {col: int} dicts after clearing denominators and content."""
        byrow = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            byrow[r][c] = v
        out = []
        for row in byrow:
            if not row:
                out.append({})
                continue
            den = math.lcm(*(v.denominator for v in row.values()))
            ints = {c: int(v * den) for c, v in row.items()}
            g = math.gcd(*(abs(v) for v in ints.values()))
            if g > 1:
                ints = {c: v // g for c, v in ints.items()}
            out.append(ints)
        return out

    def __str__(self):
        dense = self.to_dense()
        return "\n".join(" ".join(str(v) for v in row) for row in dense)


def _echelon(int_rows, cols):
    """In-place forward elimination; returns (echelon rows, pivot columns)."""
    rows = [dict(r) for r in int_rows if r]
    pivots = []
    echelon = []
    for col in range(cols):
        pivot_row = None
        for idx, row in enumerate(rows):
            if row.get(col):
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        piv = rows.pop(pivot_row)
        pv = piv[col]
        survivors = []
        for row in rows:
            rv = row.get(col)
            if not rv:
                survivors.append(row)
                continue
            new = {}
            for c in row.keys() | piv.keys():
                val = pv * row.get(c, 0) - rv * piv.get(c, 0)
                if val:
                    new[c] = val
            if new:
                g = math.gcd(*(abs(v) for v in new.values()))
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
                survivors.append(new)
        rows = survivors
        pivots.append(col)
        echelon.append(piv)
    return echelon, pivots


def rank_kernel(matrix):
    """Exact rank and a deterministic kernel basis.

    One kernel vector per free column, in increasing column order: the free
    coordinate is set to 1, pivot coordinates back-substituted, and the
    result scaled to integer entries with content 1 (free coordinate stays
    positive), so repeated runs are bit-identical.
    """
    echelon, pivots = _echelon(matrix.integer_rows(), matrix.cols)
    rank = len(pivots)
    pivot_set = set(pivots)
    free_cols = [c for c in range(matrix.cols) if c not in pivot_set]
    kernel = []
    for free in free_cols:
        x = [Fraction(0)] * matrix.cols
        x[free] = Fraction(1)
        for row, pc in zip(reversed(echelon), reversed(pivots)):
            s = Fraction(0)
            for c, v in row.items():
                if c > pc and x[c]:
                    s += v * x[c]
            if s:
                x[pc] = -s / row[pc]
        den = math.lcm(*(v.denominator for v in x)) if any(x) else 1
        ints = [int(v * den) for v in x]
        g = math.gcd(*(abs(v) for v in ints if v)) if any(ints) else 1
        if g > 1:
            ints = [v // g for v in ints]
        kernel.append(tuple(Fraction(v) for v in ints))
    return rank, kernel


def rank_only(matrix):
    _, pivots = _echelon(matrix.integer_rows(), matrix.cols)
    return len(pivots)


def fraction_rows_echelon(vectors):
    """Echelon form of a list of Fraction tuples; returns (rows, pivot columns).

    Used to reduce one span against another (representative extraction).
    """
    if not vectors:
        return [], []
    cols = len(vectors[0])
    int_rows = []
    for vec in vectors:
        nz = {c: v for c, v in enumerate(vec) if v}
        if not nz:
            int_rows.append({})
            continue
        den = math.lcm(*(v.denominator for v in nz.values()))
        ints = {c: int(v * den) for c, v in nz.items()}
        g = math.gcd(*(abs(v) for v in ints.values()))
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        int_rows.append(ints)
    return _echelon(int_rows, cols)
