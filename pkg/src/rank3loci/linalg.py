"""Exact sparse Gaussian elimination over the rationals.

Rows are dicts mapping column index to a nonzero Fraction.  Used for rank
certificates and for solving the fixed overdetermined systems that express
bidegree-(2,2) polynomials over a precomputed basis.
"""

from __future__ import annotations

from fractions import Fraction


class InconsistentSystem(ValueError):
    """Right-hand side is not in the column span."""


def matrix_rank(rows):
    """Rank of a matrix given as an iterable of sparse rows."""
    work = [dict(r) for r in rows if r]
    rank = 0
    while work:
        row = work.pop()
        if not row:
            continue
        piv = min(row)
        pval = row[piv]
        rank += 1
        reduced = []
        for r in work:
            if piv in r:
                factor = r[piv] / pval
                for c, v in row.items():
                    nv = r.get(c, Fraction(0)) - factor * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
            if r:
                reduced.append(r)
        work = reduced
    return rank


class LinearSolver:
    """Solve M x = b exactly for many right-hand sides.

    M is given by columns (sparse dicts over row indices).  Forward
    elimination is performed once; each solve replays the recorded row
    operations on b and back-substitutes.  Raises InconsistentSystem when
    b is outside the column span.
    """

    def __init__(self, columns, nrows):
        self.ncols = len(columns)
        self.nrows = nrows
        rows = [dict() for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows[i][j] = Fraction(v)
        self.ops = []          # ("swap", i, j) or ("elim", target, src, factor)
        self.pivots = []       # (row, col) in elimination order
        used = set()
        for col in range(self.ncols):
            piv = None
            for i in range(nrows):
                if i not in used and col in rows[i]:
                    piv = i
                    break
            if piv is None:
                raise ValueError("columns are linearly dependent")
            used.add(piv)
            prow = rows[piv]
            pval = prow[col]
            for i in range(nrows):
                if i != piv and i not in used and col in rows[i]:
                    factor = rows[i][col] / pval
                    self.ops.append(("elim", i, piv, factor))
                    r = rows[i]
                    for c, v in prow.items():
                        nv = r.get(c, Fraction(0)) - factor * v
                        if nv:
                            r[c] = nv
                        else:
                            r.pop(c, None)
            self.pivots.append((piv, col))
        self.rows = rows
        self.pivot_rows = used

    def solve(self, rhs):
        """Solve for a sparse right-hand side dict; returns coordinate dict."""
        b = [Fraction(0)] * self.nrows
        for i, v in rhs.items():
            b[i] = Fraction(v)
        for op, target, src, factor in self.ops:
            if b[src]:
                b[target] -= factor * b[src]
        x = {}
        for piv, col in reversed(self.pivots):
            row = self.rows[piv]
            val = b[piv]
            for c, v in row.items():
                if c != col and c in x:
                    val -= v * x[c]
            if val:
                x[col] = val / row[col]
        # consistency: non-pivot rows must have matched right-hand sides
        for i in range(self.nrows):
            if i not in self.pivot_rows and b[i]:
                residual = b[i]
                for c, v in self.rows[i].items():
                    if c in x:
                        residual -= v * x[c]
                if residual:
                    raise InconsistentSystem(
                        "right-hand side outside column span")
        return x
