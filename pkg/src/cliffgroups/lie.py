"""Lie algebras of the groups: grade subspaces, dimension formulas, checks.

The dimension column mixes ``2**(k/2)`` with sines and cosines of multiples
of pi/4.  Those all live in Q(sqrt 2), so the formulas are evaluated there
exactly and the sqrt 2 part is asserted to cancel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .algebra import Backend, Multivector, Signature, SubspaceSpec, sign_table
from .errors import UnsupportedGroup
from .groups import GAMMA, INVERTIBLE, GroupId
from .matrix_rep import exp_mv

__all__ = [
    "LieAlgebraSpec", "lie_spec", "dim_formula", "enumerated_dim", "closure_check", "Closure",
    "exp_membership_check", "ExpCheck", "TABLE1_GROUPS", "float_residual", "Root2",
]

TABLE1_GROUPS = (INVERTIBLE, GAMMA, GroupId("P"), GroupId("A"), GroupId("B"), GroupId("Q"), GroupId("QPrime"))


@dataclass(frozen=True)
class Root2:
    """``a + b*sqrt(2)`` with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __add__(self, o):
        o = _r2(o)
        return Root2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = _r2(o)
        return Root2(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return _r2(o) - self

    def __mul__(self, o):
        o = _r2(o)
        return Root2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def to_int(self) -> int:
        if self.b != 0 or self.a.denominator != 1:
            raise ArithmeticError(f"{self} is not an integer")
        return int(self.a)


def _r2(x) -> Root2:
    return x if isinstance(x, Root2) else Root2(Fraction(x))


def _pow2_half(m: int) -> Root2:
    """``2**(m/2)`` for any integer m."""
    if m % 2 == 0:
        return Root2(Fraction(2) ** (m // 2))
    return Root2(Fraction(0), Fraction(2) ** ((m - 1) // 2))


_HALF = Fraction(1, 2)
# cos(j*pi/4), j = 0..7
_COS = [Root2(Fraction(1)), Root2(b=_HALF), Root2(), Root2(b=-_HALF),
        Root2(Fraction(-1)), Root2(b=-_HALF), Root2(), Root2(b=_HALF)]


def _cos(j: int) -> Root2:
    return _COS[j % 8]


def _sin(j: int) -> Root2:
    return _COS[(j - 2) % 8]


@dataclass(frozen=True)
class LieAlgebraSpec:
    group: GroupId
    n: int
    spec: SubspaceSpec

    @property
    def dim(self) -> int:
        return self.spec.dim


def _row_grades(g: GroupId, n: int) -> set[int]:
    t = g.tag
    odd = n % 2 == 1
    bar = lambda *ms: {k for k in range(n + 1) if k % 4 in ms}
    if t == "Invertible" or g == GroupId.gamma_grade(0):
        return set(range(n + 1))
    if g == GAMMA:
        return {0, 2} | ({n} if odd else set())
    if t == "P":
        return bar(0, 2) | ({n} if odd else set())
    if t == "A":
        return {0} | bar(2, 3) | ({n} if n % 4 == 1 else set())
    if t == "B":
        return {0} | bar(1, 2) | ({n} if n % 4 == 3 else set())
    if t == "Q":
        return {0} | bar(2) | ({n} if odd else set())
    if t == "QPrime":
        return {0} | bar(2) | ({n} if odd or n % 4 == 0 else set())
    raise UnsupportedGroup(f"no Lie algebra row for {g.name}")


def lie_spec(g: GroupId, sig: Signature | int) -> LieAlgebraSpec:
    n = sig if isinstance(sig, int) else sig.n
    g.validate(n)
    grades = {k for k in _row_grades(g, n) if 0 <= k <= n}
    return LieAlgebraSpec(g, n, SubspaceSpec.of(n, grades))


def dim_formula(g: GroupId, n: int) -> int:
    """The closed-form dimension column, evaluated exactly."""
    g.validate(n)
    t = g.tag
    odd = n % 2
    if t == "Invertible" or g == GroupId.gamma_grade(0):
        val = _r2(2 ** n)
    elif g == GAMMA:
        val = _r2(n * (n - 1) // 2 + 1 + odd)
    elif t == "P":
        val = _r2(Fraction(2) ** (n - 1) + odd)
    elif t == "A":
        val = Fraction(2) ** (n - 1) - _pow2_half(n - 1) * _sin(n + 1) + (2 if n % 4 == 1 else 1)
    elif t == "B":
        val = Fraction(2) ** (n - 1) - _pow2_half(n - 1) * _cos(n + 1) + (2 if n % 4 == 3 else 1)
    elif t in ("Q", "QPrime"):
        extra = 2 if odd or (t == "QPrime" and n % 4 == 0) else 1
        val = Fraction(2) ** (n - 2) - _pow2_half(n - 2) * _cos(n) + extra
    else:
        raise UnsupportedGroup(f"no dimension formula for {g.name}")
    return _r2(val).to_int()


def enumerated_dim(grades, n: int) -> int:
    return sum(comb(n, k) for k in set(grades))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Closure:
    ok: bool
    pair: tuple[Multivector, Multivector] | None = None

    def __bool__(self):
        return self.ok


def closure_check(spec: SubspaceSpec, sig: Signature) -> Closure:
    """Is ``spec`` closed under the commutator?  Works blade pair by blade pair.

    Two blades either commute or anticommute, so ``[A, B]`` is zero or
    ``2 A B``, a multiple of the blade ``A xor B``.
    """
    if sig.n > 8:
        raise ValueError("closure_check is limited to n <= 8")
    if spec.n != sig.n:
        raise ValueError("subspace and signature disagree on n")
    bl = spec.blades()
    if len(bl) == 0:
        return Closure(True)
    bl = np.asarray(bl)
    S = sign_table(sig)[np.ix_(bl, bl)]
    X = bl[:, None] ^ bl[None, :]
    bad = (S != S.T) & ~spec.mask[X]
    if not bad.any():
        return Closure(True)
    i, j = np.argwhere(bad)[0]
    return Closure(False, (Multivector.basis(sig, int(bl[i])), Multivector.basis(sig, int(bl[j]))))


# ---------------------------------------------------------------------------
# float membership residuals


def _float_ops(T: Multivector):
    from .matrix_rep import _operator

    L = _operator(T, True)
    N = L.shape[0]
    e = np.zeros(N, dtype=L.dtype)
    e[0] = 1
    Tinv = Multivector(T.sig, np.linalg.solve(L, e))
    return L, Tinv


def _outside(x: Multivector, spec: SubspaceSpec) -> float:
    c = np.asarray(x.coeffs)
    return float(np.abs(c[~spec.mask]).max(initial=0.0))


def float_residual(T: Multivector, g: GroupId) -> tuple[float, float]:
    """``(residual, scale)`` of the float membership test for ``g``.

    The residual is the largest coefficient that must vanish for exact
    membership; ``scale`` is the magnitude it is measured against.
    """
    from .matrix_rep import _operator

    n = T.n
    Z = SubspaceSpec.center(n)
    Z0n = SubspaceSpec.of(n, {0, n})
    L, Tinv = _float_ops(T)
    scale = max(1.0, T.norm() * Tinv.norm())
    t = g.tag
    spec = g.subspace(n)
    if t == "Invertible":
        return 0.0, scale
    if spec is not None:
        M = L.dot(_operator(Tinv, False))
        cols = spec.mask
        return float(np.abs(M[np.ix_(~spec.mask, cols)]).max(initial=0.0)), scale
    psi = T.rev() * T
    chi = T.cj() * T
    W = T.gi() * Tinv
    if t == "P":
        return _outside(W, Z), scale
    if t == "A":
        return _outside(psi, Z), max(scale, psi.norm())
    if t == "B":
        return _outside(chi, Z), max(scale, chi.norm())
    if t == "Q":
        return max(_outside(W, Z), _outside(psi, Z)), max(scale, psi.norm())
    if t == "QPrime":
        return max(_outside(W, Z), _outside(psi, Z0n)), max(scale, psi.norm())
    raise UnsupportedGroup(f"no float residual for {g.name}")


@dataclass(frozen=True)
class ExpCheck:
    ok: bool
    trials: int
    worst: float
    witness: Multivector | None = None

    def __bool__(self):
        return self.ok


def exp_membership_check(g: GroupId, sig: Signature, seed, trials: int = 20, tol: float = 1e-9) -> ExpCheck:
    """Exponentiate random Lie algebra elements and test group membership in floats."""
    if sig.n > 5:
        raise ValueError("exp_membership_check is limited to n <= 5")
    fsig = sig.with_backend(Backend.FLOAT)
    spec = lie_spec(g, fsig).spec
    rng = random.Random(f"{seed}:exp:{g.name}:{sig.label}")
    worst = 0.0
    for t in range(trials):
        coeffs = np.zeros(fsig.dim, dtype=np.complex128 if fsig.is_complex else np.float64)
        for b in spec.blades():
            c = rng.uniform(-0.5, 0.5)
            if fsig.is_complex:
                c = complex(c, rng.uniform(-0.5, 0.5))
            coeffs[b] = c
        x = Multivector(fsig, coeffs)
        T = exp_mv(x)
        res, scale = float_residual(T, g)
        r = res / scale
        worst = max(worst, r)
        if r >= tol:
            return ExpCheck(False, t + 1, worst, x)
    return ExpCheck(True, trials, worst)
