"""Norm functions, conjugation predicates and membership for every group.

Groups are identified by :class:`GroupId`.  Groups defined by preserving a
subspace under ``U -> T U T^-1`` are decided from the exact conjugation
matrix; groups defined through the norms ``psi(T) = rev(T) T`` and
``chi(T) = hat(rev(T)) T`` are decided from those values directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .algebra import Multivector, Signature, SubspaceSpec, in_subspace, popcount_table
from .errors import NotInvertible, SamplerExhausted, SingularError, UnsupportedGroup
from .matrix_rep import ConjugationMatrix, conjugation_matrix, inverse
from .scalars import Gaussian, gauss

__all__ = [
    "GroupId", "GAMMA", "P", "A", "A_PRIME", "B", "B_PRIME", "Q", "Q_PRIME",
    "LIPSCHITZ", "PIN", "SPIN", "INVERTIBLE", "parse_group",
    "psi", "chi", "preserves_subspace", "Preservation", "member", "analyze", "Analysis",
    "in_P_by_parity", "Family", "GENERIC", "CENTER_UNIT", "sample",
]

_SIMPLE = ("P", "A", "APrime", "B", "BPrime", "Q", "QPrime", "Lipschitz", "Pin", "Spin", "Invertible")
_LABELS = {"APrime": "A'", "BPrime": "B'", "QPrime": "Q'", "Invertible": "C^x"}


@dataclass(frozen=True)
class GroupId:
    """One of the groups under study, with its integer parameters."""

    tag: str
    params: tuple = ()

    def __post_init__(self):
        t, ps = self.tag, self.params
        if t == "GammaGrade":
            if len(ps) != 1 or ps[0] < 0:
                raise ValueError("GammaGrade takes one grade k >= 0")
        elif t == "GammaParity":
            if len(ps) != 1 or ps[0] not in (0, 1):
                raise ValueError("GammaParity takes j in {0, 1}")
        elif t == "GammaBar":
            if len(ps) != 1 or ps[0] not in (0, 1, 2, 3):
                raise ValueError("GammaBar takes m in 0..3")
        elif t == "GammaBarPair":
            if len(ps) != 2 or not all(m in (0, 1, 2, 3) for m in ps) or ps[0] >= ps[1]:
                raise ValueError("GammaBarPair takes k < l in 0..3")
        elif t == "Meet":
            if len(ps) < 2 or not all(isinstance(g, GroupId) for g in ps):
                raise ValueError("Meet takes two or more groups")
        elif t in _SIMPLE:
            if ps:
                raise ValueError(f"{t} takes no parameters")
        else:
            raise ValueError(f"unknown group tag {t!r}")

    # -- constructors --------------------------------------------------------
    @classmethod
    def gamma_grade(cls, k: int) -> "GroupId":
        return cls("GammaGrade", (k,))

    @classmethod
    def gamma_parity(cls, j: int) -> "GroupId":
        return cls("GammaParity", (j,))

    @classmethod
    def gamma_bar(cls, m: int) -> "GroupId":
        return cls("GammaBar", (m,))

    @classmethod
    def gamma_bar_pair(cls, k: int, l: int) -> "GroupId":
        k, l = sorted((k, l))
        return cls("GammaBarPair", (k, l))

    @classmethod
    def meet(cls, *groups: "GroupId") -> "GroupId":
        return cls("Meet", tuple(groups))

    def validate(self, n: int) -> None:
        if self.tag == "GammaGrade" and self.params[0] > n:
            raise ValueError(f"grade {self.params[0]} exceeds n = {n}")
        if self.tag == "Meet":
            for g in self.params:
                g.validate(n)

    def subspace(self, n: int) -> SubspaceSpec | None:
        """The preserved subspace for conjugation-defined groups, else ``None``."""
        t, ps = self.tag, self.params
        if t == "GammaGrade":
            return SubspaceSpec.grade(n, ps[0])
        if t == "GammaParity":
            return SubspaceSpec.parity(n, ps[0])
        if t == "GammaBar":
            return SubspaceSpec.bar(n, ps[0])
        if t == "GammaBarPair":
            return SubspaceSpec.bars(n, *ps)
        return None

    @property
    def name(self) -> str:
        t, ps = self.tag, self.params
        if t == "GammaGrade":
            return "Gamma" if ps[0] == 1 else f"Gamma^{ps[0]}"
        if t == "GammaParity":
            return f"Gamma^({ps[0]})"
        if t == "GammaBar":
            return f"Gamma^bar{ps[0]}"
        if t == "GammaBarPair":
            return f"Gamma^bar{ps[0]}{ps[1]}"
        if t == "Meet":
            return "(" + " & ".join(g.name for g in ps) + ")"
        return _LABELS.get(t, t)

    def __str__(self):
        return self.name


GAMMA = GroupId.gamma_grade(1)
P = GroupId("P")
A = GroupId("A")
A_PRIME = GroupId("APrime")
B = GroupId("B")
B_PRIME = GroupId("BPrime")
Q = GroupId("Q")
Q_PRIME = GroupId("QPrime")
LIPSCHITZ = GroupId("Lipschitz")
PIN = GroupId("Pin")
SPIN = GroupId("Spin")
INVERTIBLE = GroupId("Invertible")


def parse_group(text: str) -> GroupId:
    """Parse CLI group names: ``Gamma``, ``Gamma:3``, ``GammaParity:0``,
    ``GammaBar:2``, ``GammaBar:23``, ``P``, ``A'``/``APrime``, ``Cx``, ..."""
    name, _, arg = text.strip().partition(":")
    key = name.replace("'", "Prime").replace("Γ", "Gamma")
    aliases = {"Cx": "Invertible", "C^x": "Invertible", "Full": "Invertible", "Gamma^pm": "Lipschitz"}
    key = aliases.get(key, key)
    try:
        if key in ("Gamma", "GammaGrade"):
            return GroupId.gamma_grade(int(arg) if arg else 1)
        if key == "GammaParity":
            return GroupId.gamma_parity(int(arg))
        if key == "GammaBar":
            if len(arg) == 1:
                return GroupId.gamma_bar(int(arg))
            if len(arg) == 2:
                return GroupId.gamma_bar_pair(int(arg[0]), int(arg[1]))
            raise ValueError(arg)
        if key in _SIMPLE and not arg:
            return GroupId(key)
    except ValueError as exc:
        raise ValueError(f"bad group parameter in {text!r}") from exc
    raise ValueError(f"unknown group {text!r}")


# ---------------------------------------------------------------------------
# norms and predicates


def psi(T: Multivector) -> Multivector:
    """``rev(T) T``; always lies in C^bar0 + C^bar1."""
    return T.rev() * T


def chi(T: Multivector) -> Multivector:
    """``hat(rev(T)) T``; always lies in C^bar0 + C^bar3."""
    return T.cj() * T


@dataclass(frozen=True)
class Preservation:
    """Outcome of a subspace-preservation test.

    Truthy when every blade of the subspace is mapped back into it; on failure
    ``blade`` is the first violating blade and ``image`` its conjugate.
    """

    ok: bool
    blade: int | None = None
    image: Multivector | None = None

    def __bool__(self):
        return self.ok


def _require_exact(T: Multivector):
    if not T.sig.is_exact:
        raise ValueError("group membership is decided on the exact backend")


def _center_or_pseudo(n: int) -> SubspaceSpec:
    return SubspaceSpec.of(n, {0, n})


class Analysis:
    """Cached facts about one invertible element, shared by all deciders."""

    def __init__(self, T: Multivector):
        _require_exact(T)
        if T.is_zero:
            raise NotInvertible("0 is not invertible")
        try:
            self.inv = inverse(T)
        except SingularError as exc:
            raise NotInvertible(f"{T} is not invertible") from exc
        self.T = T
        self.sig = T.sig
        self.n = T.sig.n
        self._memo: dict[GroupId, bool] = {}

    @cached_property
    def conj(self) -> ConjugationMatrix:
        return conjugation_matrix(self.T, self.inv)

    @cached_property
    def _support(self) -> np.ndarray:
        return self.conj.support

    @cached_property
    def psi(self) -> Multivector:
        return psi(self.T)

    @cached_property
    def chi(self) -> Multivector:
        return chi(self.T)

    @cached_property
    def hat_ratio(self) -> Multivector:
        return self.T.gi() * self.inv

    @cached_property
    def is_even(self) -> bool:
        return in_subspace(self.T, SubspaceSpec.parity(self.n, 0))

    @cached_property
    def is_odd(self) -> bool:
        return in_subspace(self.T, SubspaceSpec.parity(self.n, 1))

    def preserves(self, spec: SubspaceSpec, with_image: bool = True) -> Preservation:
        if spec.is_zero:
            return Preservation(True)
        outside = ~spec.mask
        sup = self._support
        for b in spec.blades():
            if sup[outside, b].any():
                return Preservation(False, b, self.conj.image(b) if with_image else None)
        return Preservation(True)

    @cached_property
    def fixes_everything(self) -> bool:
        """Whether ``U -> T U T^-1`` is the identity map."""
        sup = self._support.copy()
        diag = np.diag_indices(self.sig.dim)
        if sup[~np.eye(self.sig.dim, dtype=bool)].any():
            return False
        c = self.conj
        vals = c.re[diag]
        if c.im is not None:
            vals = [gauss(r, i) for r, i in zip(vals, c.im[diag])]
        return all(v == c.denom for v in vals)

    def member(self, g: GroupId) -> bool:
        hit = self._memo.get(g)
        if hit is None:
            hit = self._memo[g] = self._decide(g)
        return hit

    def _decide(self, g: GroupId) -> bool:
        g.validate(self.n)
        spec = g.subspace(self.n)
        if spec is not None:
            return self.preserves(spec, with_image=False).ok
        n = self.n
        Z = SubspaceSpec.center(n)
        t = g.tag
        if t == "Invertible":
            return True
        if t == "P":
            return in_subspace(self.hat_ratio, Z)
        if t == "A":
            return in_subspace(self.psi, Z)
        if t == "APrime":
            return in_subspace(self.psi, _center_or_pseudo(n))
        if t == "B":
            return in_subspace(self.chi, Z)
        if t == "BPrime":
            return in_subspace(self.chi, _center_or_pseudo(n))
        if t == "Q":
            return self.member(P) and in_subspace(self.psi, Z)
        if t == "QPrime":
            return self.member(P) and in_subspace(self.psi, _center_or_pseudo(n))
        if t in ("Lipschitz", "Pin", "Spin"):
            if self.sig.is_complex:
                raise UnsupportedGroup(f"{g.name} is only defined over the reals")
            lip = (self.is_even or self.is_odd) and self.preserves(SubspaceSpec.grade(n, 1), False).ok
            if t == "Lipschitz" or not lip:
                return lip
            ps = self.psi
            pin = ps == Multivector.scalar(self.sig, 1) or ps == Multivector.scalar(self.sig, -1)
            return pin and (t == "Pin" or self.is_even)
        if t == "Meet":
            return all(self.member(h) for h in g.params)
        raise UnsupportedGroup(g.name)


@lru_cache(maxsize=2048)
def analyze(T: Multivector) -> Analysis:
    """Cached :class:`Analysis`; elements are immutable and hashable."""
    return Analysis(T)


def preserves_subspace(T: Multivector, spec: SubspaceSpec) -> Preservation:
    """Does ``U -> T U T^-1`` map ``spec`` into itself?  Raises NotInvertible."""
    if spec.n != T.n:
        raise ValueError("subspace and element disagree on n")
    return analyze(T).preserves(spec)


def member(T: Multivector, g: GroupId) -> bool:
    return analyze(T).member(g)


def in_P_by_parity(T: Multivector) -> bool:
    """Independent decider for P from the split ``T = T0 + T1``.

    ``T`` lies in ``Z^x (C^x(0) u C^x(1))`` iff it is homogeneous, or one part
    is invertible and the other part divided by it lies in the center.
    """
    _require_exact(T)
    n = T.n
    Z = SubspaceSpec.center(n)
    T0, T1 = T.even(), T.odd()
    if T0.is_zero or T1.is_zero:
        return not T.is_zero
    for num, den in ((T1, T0), (T0, T1)):
        try:
            den_inv = inverse(den)
        except SingularError:
            continue
        if in_subspace(num * den_inv, Z):
            return True
    return False


# ---------------------------------------------------------------------------
# sampling


@dataclass(frozen=True)
class Family:
    """A constructive sampling family that is not itself a group."""

    kind: str
    param: int | None = None

    @classmethod
    def homogeneous(cls, j: int) -> "Family":
        return cls("HomogeneousInvertible", j)

    @classmethod
    def versor(cls, m: int) -> "Family":
        return cls("Versor", m)


GENERIC = Family("Generic")
CENTER_UNIT = Family("CenterUnit")

_RETRIES = 100
_LO, _HI = -3, 3


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _coef(rng: random.Random, sig: Signature, nonzero: bool = False):
    while True:
        c = rng.randint(_LO, _HI)
        if sig.is_complex:
            c = gauss(c, rng.randint(_LO, _HI))
        if c != 0 or not nonzero:
            return c


def _random_mv(rng, sig, spec: SubspaceSpec | None = None) -> Multivector:
    mask = spec.mask if spec is not None else None
    return Multivector(sig, [_coef(rng, sig) if mask is None or mask[b] else 0 for b in range(sig.dim)])


def _invertible(x: Multivector) -> bool:
    try:
        inverse(x)
    except SingularError:
        return False
    return True


def _random_vector(rng, sig) -> Multivector:
    for _ in range(_RETRIES):
        v = sig.vector([_coef(rng, sig) for _ in range(sig.n)])
        if not (v * v).is_zero:
            return v
    raise SamplerExhausted("no invertible vector found")


def _versor(rng, sig, m: int) -> Multivector:
    out = Multivector.scalar(sig, 1)
    for _ in range(m):
        out = out * _random_vector(rng, sig)
    return out


def _center_unit(rng, sig) -> Multivector:
    n = sig.n
    for _ in range(_RETRIES):
        a = _coef(rng, sig, nonzero=n % 2 == 0)
        x = Multivector.scalar(sig, a)
        if n % 2:
            x = x + sig.pseudoscalar().scale(_coef(rng, sig, nonzero=True))
        if _invertible(x):
            return x
    raise SamplerExhausted("no invertible center element found")


def _blade_factor(rng, sig, grades: set[int]) -> Multivector:
    """``a + b U`` for a random blade ``U`` with grade in ``grades``; ``U^2 = +-1``."""
    pc = popcount_table(sig.n)
    blades = [b for b in range(1, sig.dim) if int(pc[b]) in grades]
    if not blades:
        return Multivector.scalar(sig, 1)
    for _ in range(_RETRIES):
        U = Multivector.basis(sig, rng.choice(blades))
        x = Multivector.scalar(sig, _coef(rng, sig, nonzero=True)) + U.scale(_coef(rng, sig, nonzero=True))
        if _invertible(x):
            return x
    raise SamplerExhausted("no invertible blade factor found")


def _unit_vector(rng, sig) -> Multivector:
    """A rational vector squaring to +-1: a signed generator or a Pythagorean mix."""
    metric = sig.metric
    i = rng.randrange(sig.n)
    sgn = rng.choice((1, -1))
    if sig.n == 1 or rng.random() < 0.4:
        return sig.blade(i + 1, coeff=sgn)
    j = rng.choice([k for k in range(sig.n) if k != i])
    from fractions import Fraction

    if metric[i] == metric[j]:
        a, b, c = 3, 4, 5
    else:
        a, b, c = 5, 4, 3
    coeffs = [0] * sig.n
    coeffs[i] = Fraction(sgn * a, c)
    coeffs[j] = Fraction(b, c)
    return sig.vector(coeffs)


def _grade_classes(n: int, classes) -> set[int]:
    return {k for k in range(1, n + 1) if k % 4 in classes}


def _draw(g, sig: Signature, rng: random.Random) -> Multivector:
    n = sig.n
    if isinstance(g, Family):
        if g.kind == "Generic":
            return _random_mv(rng, sig)
        if g.kind == "HomogeneousInvertible":
            return _random_mv(rng, sig, SubspaceSpec.parity(n, g.param))
        if g.kind == "Versor":
            return _versor(rng, sig, g.param)
        if g.kind == "CenterUnit":
            return _center_unit(rng, sig)
        raise ValueError(f"unknown family {g.kind!r}")
    t = g.tag
    if g == GAMMA:
        return _center_unit(rng, sig) * _versor(rng, sig, rng.randint(0, n))
    if t == "Invertible":
        return _random_mv(rng, sig)
    if t == "Lipschitz":
        return _versor(rng, sig, rng.randint(0, n))
    if t in ("Pin", "Spin"):
        m = rng.randint(0, n)
        if t == "Spin":
            m -= m % 2
        out = Multivector.scalar(sig, 1)
        for _ in range(m):
            out = out * _unit_vector(rng, sig)
        return out
    if t == "P":
        return _center_unit(rng, sig) * _random_mv(rng, sig, SubspaceSpec.parity(n, rng.randint(0, 1)))
    base = _draw(GAMMA, sig, rng)
    if t == "Q":
        return base * _blade_factor(rng, sig, _grade_classes(n, {2}))
    if t == "QPrime":
        x = base * _blade_factor(rng, sig, _grade_classes(n, {2}))
        if n % 4 == 0:
            x = x * _blade_factor(rng, sig, {n})
        return x
    if t in ("A", "APrime"):
        x = base * _blade_factor(rng, sig, _grade_classes(n, {2, 3}))
        if t == "APrime":
            x = x * _blade_factor(rng, sig, {n})
        return x
    if t in ("B", "BPrime"):
        x = base * _blade_factor(rng, sig, _grade_classes(n, {1, 2}))
        if t == "BPrime":
            x = x * _blade_factor(rng, sig, {n})
        return x
    raise UnsupportedGroup(f"no constructive sampler for {g.name}")


def sample(g: GroupId | Family, sig: Signature, seed) -> Multivector:
    """Deterministic random element of a group or family (exact backend).

    Coefficients are small integers in ``[-3, 3]`` (both parts over the
    complex field); candidates failing invertibility or membership are
    redrawn, at most 100 times.
    """
    if not sig.is_exact:
        raise ValueError("sampling uses the exact backend")
    rng = _rng(seed)
    if isinstance(g, GroupId):
        g.validate(sig.n)
        if g.subspace(sig.n) is not None and g != GAMMA:
            raise UnsupportedGroup(f"no constructive sampler for {g.name}")
        if g.tag == "Meet":
            raise UnsupportedGroup("no constructive sampler for intersections")
        if g.tag in ("Lipschitz", "Pin", "Spin") and sig.is_complex:
            raise UnsupportedGroup(f"{g.name} is only defined over the reals")
    for _ in range(_RETRIES):
        x = _draw(g, sig, rng)
        if x.is_zero or not _invertible(x):
            continue
        if isinstance(g, GroupId) and not member(x, g):
            continue
        if isinstance(g, Family) and g.kind == "HomogeneousInvertible" and x.is_zero:
            continue
        return x
    raise SamplerExhausted(f"sampler for {g} exhausted after {_RETRIES} retries")
