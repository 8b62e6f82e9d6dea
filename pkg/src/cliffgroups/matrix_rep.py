"""Left-regular matrix representation: inversion, centralizers, exponentials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import exact_linalg
from .algebra import Multivector, Signature, SubspaceSpec, basis_blade_product, sign_table
from .errors import SingularError
from .scalars import Gaussian, gauss, normalize

__all__ = [
    "LeftMatrix", "left_matrix", "right_matrix", "inverse", "is_invertible",
    "centralizer_basis", "exp_mv", "minimal_polynomial", "conjugation_matrix", "ConjugationMatrix",
]


@dataclass(frozen=True)
class LeftMatrix:
    """Matrix of ``x -> a x`` in the blade basis; column ``b`` is ``a * e_b``."""

    sig: Signature
    entries: np.ndarray

    def __matmul__(self, other: "LeftMatrix") -> "LeftMatrix":
        return LeftMatrix(self.sig, self.entries.dot(other.entries))

    def apply(self, x: Multivector) -> Multivector:
        return Multivector._raw(self.sig, self.entries.dot(x.coeffs))


def _operator(a: Multivector, left: bool) -> np.ndarray:
    sig = a.sig
    N = sig.dim
    rows = np.arange(N)[:, None]
    cols = np.arange(N)[None, :]
    src = rows ^ cols
    if sig.n <= 10:
        table = sign_table(sig)
        signs = table[src, cols] if left else table[cols, src]
    else:
        signs = np.empty((N, N), dtype=np.int8)
        for r in range(N):
            for c in range(N):
                s = r ^ c
                signs[r, c] = basis_blade_product(s, c, sig)[0] if left else basis_blade_product(c, s, sig)[0]
    vals = a.coeffs[src]
    if sig.is_exact:
        out = vals.copy()
        neg = signs < 0
        out[neg] = -out[neg]
        return out
    return vals * signs


def left_matrix(a: Multivector) -> LeftMatrix:
    return LeftMatrix(a.sig, _operator(a, left=True))


def right_matrix(a: Multivector) -> np.ndarray:
    """Matrix of ``x -> x a``; column ``b`` is ``e_b * a``."""
    return _operator(a, left=False)


def _unit(sig: Signature) -> np.ndarray:
    if sig.is_exact:
        v = np.empty(sig.dim, dtype=object)
        v.fill(0)
    else:
        v = np.zeros(sig.dim, dtype=np.complex128 if sig.is_complex else np.float64)
    v[0] = 1
    return v


def inverse(a: Multivector, method: str = "krylov") -> Multivector:
    """Two-sided inverse of ``a``, or :class:`SingularError`.

    ``method="matrix"`` solves ``L(a) x = e`` by fraction-free elimination.
    ``method="krylov"`` (default, exact backend) finds the first linear
    dependency among ``e, a, a^2, ...``, i.e. the minimal polynomial of
    ``a``; ``a`` is invertible iff its constant term is nonzero, and the
    inverse is read off the polynomial.  Both are exact; the Krylov route is
    much cheaper because the degree is at most the matrix size of the
    algebra (8 for n = 6) instead of ``2**n``.
    """
    sig = a.sig
    if a.is_zero:
        raise SingularError("zero has no inverse")
    if not sig.is_exact:
        L = _operator(a, left=True)
        try:
            if np.linalg.cond(L) > 1e12:
                raise SingularError("matrix is numerically singular")
            x = np.linalg.solve(L, _unit(sig))
        except np.linalg.LinAlgError as exc:
            raise SingularError(str(exc)) from exc
        return Multivector(sig, x)
    if method == "matrix":
        x = exact_linalg.solve(_operator(a, left=True), _unit(sig))
        return Multivector(sig, x)
    if method != "krylov":
        raise ValueError(f"unknown inversion method {method!r}")
    out = _krylov_inverse(a)
    if out is None:
        raise SingularError("element is a zero divisor")
    return out


@lru_cache(maxsize=4096)
def _krylov_inverse(a: Multivector) -> Multivector | None:
    poly = minimal_polynomial(a)
    if poly[0] == 0:
        return None
    # a^-1 = -(1/c0) * sum_{j>=1} c_j a^(j-1), evaluated by Horner's rule
    acc = Multivector.scalar(a.sig, poly[-1])
    for c in reversed(poly[1:-1]):
        acc = acc * a + c
    return acc.scale(exact_linalg.exact_div(-1, poly[0]))


def minimal_polynomial(a: Multivector) -> list:
    """Coefficients ``[c0, c1, ..., 1]`` of the monic minimal polynomial of ``a``."""
    if not a.sig.is_exact:
        raise ValueError("minimal_polynomial needs the exact backend")
    basis: list[tuple[int, np.ndarray, list]] = []  # (pivot, vector, combination)
    power = Multivector.scalar(a.sig, 1)
    k = 0
    while True:
        vec = power.coeffs.copy()
        combo = [0] * k + [1]
        for piv, bvec, bcombo in basis:
            f = vec[piv]
            if f != 0:
                vec = vec - bvec * f
                combo = [c - f * bc for c, bc in zip(combo, bcombo + [0] * (len(combo) - len(bcombo)))]
        nz = np.flatnonzero(vec != 0)
        if nz.size == 0:
            return [exact_linalg.exact_div(c, 1) for c in combo]
        piv = int(nz[0])
        lead = vec[piv]
        inv_lead = exact_linalg.exact_div(1, lead)
        basis.append((piv, vec * inv_lead, [c * inv_lead for c in combo]))
        power = power * a
        k += 1


def is_invertible(a: Multivector) -> bool:
    try:
        inverse(a)
    except SingularError:
        return False
    return True


@dataclass(frozen=True)
class ConjugationMatrix:
    """``U -> T U T^-1`` stored as ``(re + i*im) / denom`` with integral parts.

    Column ``b`` is ``denom`` times the image of blade ``b``; ``im`` is
    ``None`` over the reals.  ``support`` marks the nonzero entries, which is
    all the subspace-preservation predicates look at.
    """

    sig: Signature
    re: np.ndarray
    im: np.ndarray | None
    denom: object
    inverse: Multivector

    @property
    def support(self) -> np.ndarray:
        s = self.re != 0
        if self.im is not None:
            s = s | (self.im != 0)
        return s

    def image(self, blade: int) -> Multivector:
        col = self.re[:, blade]
        if self.im is not None:
            col = [gauss(r, i) for r, i in zip(col, self.im[:, blade])]
        if self.sig.is_exact:
            return Multivector(self.sig, [exact_linalg.exact_div(c, self.denom) for c in col])
        return Multivector(self.sig, np.asarray(col) / self.denom)


def _split(coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    re = np.empty(coeffs.shape, dtype=object)
    im = np.empty(coeffs.shape, dtype=object)
    for i, c in enumerate(coeffs):
        if isinstance(c, Gaussian):
            re[i], im[i] = c.re, c.im
        else:
            re[i], im[i] = c, 0
    return re, im


def conjugation_matrix(T: Multivector, T_inv: Multivector | None = None) -> ConjugationMatrix:
    """Exact inner automorphism of ``T`` with denominators cleared.

    Group predicates only test which entries vanish, so working with integral
    numerators keeps rationals out of the matrix product; complex elements
    are split into real and imaginary integer parts for the same reason.
    """
    if T_inv is None:
        T_inv = inverse(T)
    sig = T.sig
    if not sig.is_exact:
        M = _operator(T, True).dot(_operator(T_inv, False))
        return ConjugationMatrix(sig, M, None, 1.0, T_inv)
    t = exact_linalg.common_denominator(T.coeffs)
    d = exact_linalg.common_denominator(T_inv.coeffs)
    Ti = np.frompyfunc(lambda c: normalize(c * t), 1, 1)(T.coeffs).astype(object)
    Xi = np.frompyfunc(lambda c: normalize(c * d), 1, 1)(T_inv.coeffs).astype(object)
    rsig = Signature(sig.n, 0) if sig.is_complex else sig
    if not sig.is_complex:
        M = _operator(Multivector._raw(sig, Ti), True).dot(_operator(Multivector._raw(sig, Xi), False))
        return ConjugationMatrix(sig, M, None, t * d, T_inv)
    tr, ti = _split(Ti)
    xr, xi = _split(Xi)
    Lr = _operator(Multivector._raw(rsig, tr), True)
    Li = _operator(Multivector._raw(rsig, ti), True)
    Rr = _operator(Multivector._raw(rsig, xr), False)
    Ri = _operator(Multivector._raw(rsig, xi), False)
    re = Lr.dot(Rr) - Li.dot(Ri)
    im = Lr.dot(Ri) + Li.dot(Rr)
    return ConjugationMatrix(sig, re, im, t * d, T_inv)


def centralizer_basis(spec: SubspaceSpec, sig: Signature) -> list[Multivector]:
    """Basis of ``{U : [U, B] = 0 for every blade B of spec}`` by exact nullspace.

    Each blade ``B`` contributes the rows of the operator ``U -> U B - B U``.
    """
    if not sig.is_exact:
        raise ValueError("centralizer_basis needs the exact backend")
    if sig.n > 8:
        raise ValueError("centralizer_basis is limited to n <= 8")
    if spec.n != sig.n:
        raise ValueError("subspace and signature disagree on n")
    rows: list[dict] = []
    seen = set()
    for B in spec.blades():
        blade = Multivector.basis(sig, B)
        op = right_matrix(blade) - _operator(blade, True)
        for r in range(sig.dim):
            nz = np.flatnonzero(op[r] != 0)
            if nz.size == 0:
                continue
            row = {int(c): op[r, c] for c in nz}
            key = tuple(sorted(row.items()))
            if key in seen:
                continue
            seen.add(key)
            rows.append(row)
    basis = exact_linalg.nullspace(rows, sig.dim)
    return [Multivector(sig, v) for v in basis]


def exp_mv(a: Multivector, tol: float = 1e-12) -> Multivector:
    """Exponential by scaling and squaring of the left-regular matrix.

    The Taylor series of the scaled matrix is truncated once the tail bound
    drops below ``tol``; the result is the image of the unit-scalar vector.
    """
    if a.sig.is_exact:
        raise ValueError("exp_mv needs the float backend; convert with .to_float()")
    if tol <= 0:
        raise ValueError("tol must be positive")
    L = _operator(a, True)
    norm = np.linalg.norm(L, 1)
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    A = L / (2.0 ** s)
    anorm = norm / (2.0 ** s)
    N = L.shape[0]
    result = np.eye(N, dtype=L.dtype)
    term = np.eye(N, dtype=L.dtype)
    k = 0
    bound = anorm
    while True:
        k += 1
        term = term.dot(A) / k
        result = result + term
        # tail sum_{j>k} anorm^j / j! <= anorm^(k+1)/(k+1)! / (1 - anorm/(k+2))
        bound = bound * anorm / (k + 1)
        if bound / (1 - anorm / (k + 2)) < tol / 4 or k > 60:
            break
    for _ in range(s):
        result = result.dot(result)
    return Multivector(a.sig, result[:, 0])
