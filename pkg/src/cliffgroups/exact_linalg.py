"""Exact linear algebra over Q and Q(i) on numpy object arrays.

Dense solves use fraction-free (Bareiss) elimination on integer-scaled
input followed by rational back-substitution; nullspaces use a sparse
row-reduction on ``{column: value}`` dictionaries.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import SingularError
from .scalars import Gaussian, denominator, normalize

__all__ = ["common_denominator", "solve", "nullspace", "rank", "exact_div"]


def common_denominator(values) -> int:
    d = 1
    for v in values:
        if v != 0:
            d = math.lcm(d, denominator(v))
    return d


def exact_div(x, y):
    """Field division that stays exact for int, Fraction and Gaussian operands."""
    if isinstance(x, Gaussian) or isinstance(y, Gaussian):
        return normalize(x / y)
    return normalize(Fraction(x) / y)


def _to_integral(arr: np.ndarray) -> np.ndarray:
    d = common_denominator(arr.ravel())
    if d == 1:
        return arr.copy()
    f = np.frompyfunc(lambda v: normalize(v * d), 1, 1)
    return f(arr).astype(object)


def solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``A x = b`` exactly for square, nonsingular ``A``.

    Raises :class:`SingularError` when ``A`` is singular.
    """
    N = A.shape[0]
    if A.shape != (N, N) or b.shape != (N,):
        raise ValueError("solve expects a square matrix and a matching vector")
    M = np.empty((N, N + 1), dtype=object)
    M[:, :N] = A
    M[:, N] = b
    M = _to_integral(M)
    prev = 1
    for k in range(N):
        nz = np.flatnonzero(M[k:, k] != 0)
        if nz.size == 0:
            raise SingularError("matrix is singular")
        r = k + int(nz[0])
        if r != k:
            M[[k, r]] = M[[r, k]]
        p = M[k, k]
        if k + 1 < N:
            below = M[k + 1:, k]
            M[k + 1:, k + 1:] = (M[k + 1:, k + 1:] * p - np.multiply.outer(below, M[k, k + 1:])) // prev
            M[k + 1:, k] = 0
        prev = p
    x = np.empty(N, dtype=object)
    for i in range(N - 1, -1, -1):
        acc = M[i, N]
        if i + 1 < N:
            acc = acc - np.dot(M[i, i + 1:N], x[i + 1:])
        x[i] = exact_div(acc, M[i, i])
    return x


def _eliminate(row: dict, c: int, prow: dict) -> None:
    f = row[c]
    for cc, vv in prow.items():
        nv = row.get(cc, 0) - f * vv
        if nv == 0:
            row.pop(cc, None)
        else:
            row[cc] = normalize(nv)


def _rref_rows(rows: list[dict], ncols: int) -> dict[int, dict]:
    """Reduced row echelon form of sparse rows, keyed by pivot column."""
    pivots: dict[int, dict] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v != 0}
        if any(not 0 <= c < ncols for c in row):
            raise ValueError("row refers to a column out of range")
        # pivot rows are zero on every other pivot column, so one pass suffices
        for c in [c for c in row if c in pivots]:
            _eliminate(row, c, pivots[c])
        if not row:
            continue
        lead_col = min(row)
        lead = row[lead_col]
        row = {cc: exact_div(vv, lead) for cc, vv in row.items()}
        for prow in pivots.values():
            if lead_col in prow:
                _eliminate(prow, lead_col, row)
        pivots[lead_col] = row
    return pivots


def nullspace(rows: list[dict], ncols: int) -> list[np.ndarray]:
    """Basis of ``{x : row . x = 0 for every row}``; rows are ``{column: value}`` dicts."""
    pivots = _rref_rows(rows, ncols)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = np.empty(ncols, dtype=object)
        v.fill(0)
        v[f] = 1
        for pc, prow in pivots.items():
            if f in prow:
                v[pc] = normalize(-prow[f])
        basis.append(v)
    return basis


def rank(rows: list[dict], ncols: int) -> int:
    return len(_rref_rows(rows, ncols))
