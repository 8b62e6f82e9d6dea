"""Dense multivector arithmetic for Cl(p,q) and Cl(C^n).

Basis blades are indexed by bitmask: bit ``a-1`` set means the generator
``e_a`` is a factor, and the blade is the ascending product.  A multivector
stores all ``2**n`` coefficients in that order.

The exact backend keeps coefficients as ``int``/``Fraction`` (plus
:class:`~cliffgroups.scalars.Gaussian` over the complex field) in a numpy
object array.  The float backend uses ``float64``/``complex128`` and exists
mainly for exponentials.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import SignatureMismatch
from .scalars import Gaussian, format_scalar, is_exact, normalize

__all__ = [
    "MAX_N", "Field", "Backend", "Signature", "SubspaceSpec", "Multivector", "Involution",
    "basis_blade_product", "geometric_product", "linear_combine", "involution",
    "grade_project", "in_subspace", "in_bar_by_involutions", "bracket", "grade_of",
    "popcount_table", "sign_table", "blade_text",
]

MAX_N = 12
_TABLE_MAX_N = 10


class Field(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


class Backend(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


@dataclass(frozen=True)
class Signature:
    """Algebra descriptor: ``p`` generators squaring to +1, ``q`` to -1.

    Over the complex field every generator squares to +1 and ``q`` must be 0.
    """

    p: int
    q: int = 0
    field: Field = Field.REAL
    backend: Backend = Backend.EXACT

    def __post_init__(self):
        object.__setattr__(self, "field", Field(self.field))
        object.__setattr__(self, "backend", Backend(self.backend))
        if self.p < 0 or self.q < 0:
            raise ValueError("p and q must be non-negative")
        if not 1 <= self.p + self.q <= MAX_N:
            raise ValueError(f"n = p + q must lie in [1, {MAX_N}], got {self.p + self.q}")
        if self.field is Field.COMPLEX and self.q != 0:
            raise ValueError("the complex algebra uses the identity metric (q = 0)")

    @classmethod
    def complex(cls, n: int, backend: Backend | str = Backend.EXACT) -> "Signature":
        return cls(n, 0, Field.COMPLEX, backend)

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def is_complex(self) -> bool:
        return self.field is Field.COMPLEX

    @property
    def is_exact(self) -> bool:
        return self.backend is Backend.EXACT

    @property
    def metric(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q

    @property
    def pseudoscalar_mask(self) -> int:
        return self.dim - 1

    def with_backend(self, backend: Backend | str) -> "Signature":
        return Signature(self.p, self.q, self.field, backend)

    @property
    def label(self) -> str:
        if self.is_complex:
            return f"Cl(C^{self.n})"
        return f"Cl({self.p},{self.q})"

    def __str__(self):
        return self.label if self.is_exact else self.label + "[float]"

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "field": self.field.value}

    # convenience constructors
    def zero(self) -> "Multivector":
        return Multivector.zero(self)

    def scalar(self, c=1) -> "Multivector":
        return Multivector.scalar(self, c)

    def blade(self, *indices: int, coeff=1) -> "Multivector":
        return Multivector.from_indices(self, indices, coeff)

    def pseudoscalar(self) -> "Multivector":
        return Multivector.basis(self, self.pseudoscalar_mask)

    def vector(self, coeffs: Sequence) -> "Multivector":
        if len(coeffs) != self.n:
            raise ValueError("need one coefficient per generator")
        data = {1 << a: c for a, c in enumerate(coeffs)}
        return Multivector.from_dict(self, data)

    def mv(self, text: str) -> "Multivector":
        """Parse and evaluate an expression such as ``"e12 + 2*e34"``."""
        from .parser import evaluate

        return evaluate(text, self)


def all_signatures(n: int, complex_field: bool = True) -> list[Signature]:
    """Every real signature with ``p + q = n`` (p descending), then Cl(C^n)."""
    sigs = [Signature(n - q, q) for q in range(n + 1)]
    if complex_field:
        sigs.append(Signature.complex(n))
    return sigs


# ---------------------------------------------------------------------------
# blade tables


@lru_cache(maxsize=None)
def popcount_table(n: int) -> np.ndarray:
    idx = np.arange(1 << n)
    out = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        out += (idx >> i) & 1
    out.setflags(write=False)
    return out


def grade_of(blade: int) -> int:
    return blade.bit_count()


def _reorder_swaps(a: int, b: int) -> int:
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return swaps


def basis_blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Product of canonical blades ``a`` and ``b``: returns ``(sign, a ^ b)``."""
    n = sig.n
    if not (0 <= a < (1 << n) and 0 <= b < (1 << n)):
        raise ValueError("blade bitmask out of range")
    swaps = _reorder_swaps(a, b)
    neg = ((a & b) >> sig.p).bit_count() if not sig.is_complex else 0
    return (-1 if (swaps + neg) & 1 else 1), a ^ b


@lru_cache(maxsize=32)
def _sign_table(p: int, q: int) -> np.ndarray:
    n = p + q
    N = 1 << n
    pc = popcount_table(n)
    A = np.arange(N)[:, None]
    B = np.arange(N)[None, :]
    swaps = np.zeros((N, N), dtype=np.int64)
    for i in range(n):
        swaps += ((B >> i) & 1) * pc[A >> (i + 1)]
    negmask = ((1 << q) - 1) << p
    swaps += pc[A & B & negmask]
    table = (1 - 2 * (swaps & 1)).astype(np.int8)
    table.setflags(write=False)
    return table


def sign_table(sig: Signature) -> np.ndarray:
    """``T[a, b]`` is the sign of ``e_a e_b``; only built for n <= 10."""
    if sig.n > _TABLE_MAX_N:
        raise ValueError("sign tables are only cached for n <= 10")
    return _sign_table(sig.n if sig.is_complex else sig.p, 0 if sig.is_complex else sig.q)


@lru_cache(maxsize=None)
def _grade_sign_vector(n: int, kind: str) -> np.ndarray:
    k = popcount_table(n)
    if kind == "grade":
        e = k
    elif kind == "reversion":
        e = k * (k - 1) // 2
    else:
        e = k * (k + 1) // 2
    out = (1 - 2 * (e & 1)).astype(np.int8)
    out.setflags(write=False)
    return out


def blade_text(blade: int, n: int) -> str:
    if blade == 0:
        return "1"
    idx = [a + 1 for a in range(n) if blade >> a & 1]
    if n <= 9:
        return "e" + "".join(map(str, idx))
    return "e{" + ",".join(map(str, idx)) + "}"


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class SubspaceSpec:
    """A direct sum of grade subspaces of an ``n``-generator algebra."""

    n: int
    grades: frozenset
    label: str = field(default="", compare=False)

    def __post_init__(self):
        g = frozenset(int(k) for k in self.grades)
        if any(k < 0 or k > self.n for k in g):
            raise ValueError(f"grades {sorted(g)} out of range for n = {self.n}")
        object.__setattr__(self, "grades", g)
        if not self.label:
            object.__setattr__(self, "label", "C^{" + ",".join(map(str, sorted(g))) + "}")

    @classmethod
    def grade(cls, n: int, k: int) -> "SubspaceSpec":
        return cls(n, frozenset({k}), f"C^{k}")

    @classmethod
    def parity(cls, n: int, j: int) -> "SubspaceSpec":
        if j not in (0, 1):
            raise ValueError("parity must be 0 or 1")
        return cls(n, frozenset(k for k in range(n + 1) if k % 2 == j), f"C^({j})")

    @classmethod
    def bar(cls, n: int, m: int) -> "SubspaceSpec":
        if m not in (0, 1, 2, 3):
            raise ValueError("quaternion type must be in 0..3")
        return cls(n, frozenset(k for k in range(n + 1) if k % 4 == m), f"C^bar{m}")

    @classmethod
    def bars(cls, n: int, *ms: int) -> "SubspaceSpec":
        spec = cls(n, frozenset())
        for m in ms:
            spec = spec | cls.bar(n, m)
        return cls(n, spec.grades, "C^bar" + "".join(map(str, ms)))

    @classmethod
    def center(cls, n: int) -> "SubspaceSpec":
        return cls(n, frozenset({0} if n % 2 == 0 else {0, n}), "Z")

    @classmethod
    def all(cls, n: int) -> "SubspaceSpec":
        return cls(n, frozenset(range(n + 1)), "C")

    @classmethod
    def of(cls, n: int, grades: Iterable[int]) -> "SubspaceSpec":
        return cls(n, frozenset(grades))

    def __or__(self, other: "SubspaceSpec") -> "SubspaceSpec":
        if self.n != other.n:
            raise ValueError("cannot combine subspaces of different algebras")
        return SubspaceSpec(self.n, self.grades | other.grades)

    def __and__(self, other: "SubspaceSpec") -> "SubspaceSpec":
        if self.n != other.n:
            raise ValueError("cannot combine subspaces of different algebras")
        return SubspaceSpec(self.n, self.grades & other.grades)

    def __le__(self, other: "SubspaceSpec") -> bool:
        return self.grades <= other.grades

    @property
    def mask(self) -> np.ndarray:
        return _grade_mask(self.n, self.grades)

    def blades(self) -> list[int]:
        return [int(b) for b in np.flatnonzero(self.mask)]

    @property
    def dim(self) -> int:
        return sum(math.comb(self.n, k) for k in self.grades)

    @property
    def is_zero(self) -> bool:
        return not self.grades

    def __str__(self):
        return self.label


@lru_cache(maxsize=1024)
def _grade_mask(n: int, grades: frozenset) -> np.ndarray:
    m = np.isin(popcount_table(n), sorted(grades))
    m.setflags(write=False)
    return m


# ---------------------------------------------------------------------------
# multivectors


def _exact_scalar(c, complex_ok: bool):
    c = normalize(c)
    if not is_exact(c):
        raise TypeError(f"exact backend needs int/Fraction/Gaussian scalars, got {c!r}")
    if isinstance(c, Gaussian) and not complex_ok:
        raise TypeError("complex scalar in a real algebra")
    return c


class Multivector:
    """An immutable element of a Clifford algebra."""

    __slots__ = ("sig", "coeffs", "_hash")

    def __init__(self, sig: Signature, coeffs, _trusted: bool = False):
        if sig.is_exact:
            if _trusted:
                arr = coeffs
            else:
                if len(coeffs) != sig.dim:
                    raise ValueError(f"expected {sig.dim} coefficients, got {len(coeffs)}")
                arr = np.empty(sig.dim, dtype=object)
                cplx = sig.is_complex
                for i, c in enumerate(coeffs):
                    arr[i] = _exact_scalar(c, cplx)
        else:
            dtype = np.complex128 if sig.is_complex else np.float64
            arr = np.array(coeffs, dtype=dtype) if not _trusted else coeffs
            if arr.shape != (sig.dim,):
                raise ValueError(f"expected {sig.dim} coefficients, got {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError("float multivector coefficients must be finite")
        arr.setflags(write=False)
        self.sig = sig
        self.coeffs = arr
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def _raw(cls, sig, arr):
        if sig.is_exact:
            arr = np.frompyfunc(normalize, 1, 1)(arr).astype(object) if arr.size else arr
        return cls(sig, arr, _trusted=True)

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls._raw(sig, _zeros(sig))

    @classmethod
    def scalar(cls, sig: Signature, c=1) -> "Multivector":
        return cls.basis(sig, 0, c)

    @classmethod
    def basis(cls, sig: Signature, blade: int, coeff=1) -> "Multivector":
        if not 0 <= blade < sig.dim:
            raise ValueError("blade bitmask out of range")
        data = [0] * sig.dim
        data[blade] = coeff
        return cls(sig, data)

    @classmethod
    def from_indices(cls, sig: Signature, indices: Sequence[int], coeff=1) -> "Multivector":
        """Ordered product of generators ``e_{i1} e_{i2} ...`` (1-based), times ``coeff``."""
        blade, sign = 0, 1
        for a in indices:
            if not 1 <= a <= sig.n:
                raise ValueError(f"generator index {a} out of range 1..{sig.n}")
            s, blade = basis_blade_product(blade, 1 << (a - 1), sig)
            sign *= s
        return cls.basis(sig, blade, coeff if sign > 0 else -coeff)

    @classmethod
    def from_dict(cls, sig: Signature, data: dict) -> "Multivector":
        coeffs = [0] * sig.dim
        for b, c in data.items():
            coeffs[b] = coeffs[b] + c
        return cls(sig, coeffs)

    # -- basic queries -----------------------------------------------------
    @property
    def n(self) -> int:
        return self.sig.n

    def __getitem__(self, blade: int):
        return self.coeffs[blade]

    def nonzero(self) -> list[tuple[int, object]]:
        return [(int(b), self.coeffs[b]) for b in np.flatnonzero(self.coeffs != 0)]

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    @property
    def scalar_part(self):
        return self.coeffs[0]

    def grades(self) -> set[int]:
        pc = popcount_table(self.n)
        return {int(pc[b]) for b in np.flatnonzero(self.coeffs != 0)}

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Multivector):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig} vs {other.sig}")
            return other
        if _is_scalar(other):
            return Multivector.scalar(self.sig, other if self.sig.is_exact else complex(other) if self.sig.is_complex else float(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Multivector._raw(self.sig, self.coeffs + o.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Multivector._raw(self.sig, self.coeffs - o.coeffs)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Multivector._raw(self.sig, o.coeffs - self.coeffs)

    def __neg__(self):
        return Multivector._raw(self.sig, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            if other == 0:
                raise ZeroDivisionError("division of a multivector by zero")
            if self.sig.is_exact:
                inv = Fraction(1) / other if not isinstance(other, Gaussian) else 1 / other
                return self.scale(inv)
            return self.scale(1 / other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            from .matrix_rep import inverse

            return inverse(self) ** (-k)
        result = Multivector.scalar(self.sig, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Multivector":
        if self.sig.is_exact:
            c = _exact_scalar(c, True)
            if isinstance(c, Gaussian) and not self.sig.is_complex:
                raise TypeError("complex scalar in a real algebra")
        return Multivector._raw(self.sig, self.coeffs * c)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            if _is_scalar(other):
                return self == Multivector.scalar(self.sig, other)
            return NotImplemented
        return self.sig == other.sig and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, tuple(self.coeffs.tolist())))
        return self._hash

    # -- involutions and projections ----------------------------------------
    def rev(self) -> "Multivector":
        return involution(self, Involution.REVERSION)

    def gi(self) -> "Multivector":
        return involution(self, Involution.GRADE)

    def cj(self) -> "Multivector":
        return involution(self, Involution.CLIFFORD)

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, SubspaceSpec.grade(self.n, k))

    def project(self, spec: SubspaceSpec) -> "Multivector":
        return grade_project(self, spec)

    def even(self) -> "Multivector":
        return grade_project(self, SubspaceSpec.parity(self.n, 0))

    def odd(self) -> "Multivector":
        return grade_project(self, SubspaceSpec.parity(self.n, 1))

    def to_float(self) -> "Multivector":
        if not self.sig.is_exact:
            return self
        fsig = self.sig.with_backend(Backend.FLOAT)
        conv = complex if self.sig.is_complex else float
        return Multivector(fsig, [conv(c) for c in self.coeffs])

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector (float)."""
        return float(np.sqrt(sum(abs(complex(c)) ** 2 for c in self.coeffs)))

    # -- text ----------------------------------------------------------------
    def __str__(self):
        return format_multivector(self)

    def __repr__(self):
        return f"Multivector({self.sig}, {format_multivector(self)!r})"


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, Gaussian, float, complex, np.number)) and not isinstance(x, bool)


def _zeros(sig: Signature) -> np.ndarray:
    if sig.is_exact:
        z = np.empty(sig.dim, dtype=object)
        z.fill(0)
        return z
    return np.zeros(sig.dim, dtype=np.complex128 if sig.is_complex else np.float64)


def format_multivector(x: Multivector) -> str:
    """Canonical text: ascending blades, ``c*e12`` terms, bare scalar for the identity."""
    parts = []
    for b, c in x.nonzero():
        if b == 0:
            text = format_scalar(c)
        else:
            bt = blade_text(b, x.n)
            if c == 1:
                text = bt
            elif c == -1:
                text = "-" + bt
            else:
                cs = format_scalar(c)
                if isinstance(c, Gaussian) and c.re != 0:
                    cs = "(" + cs + ")"
                elif isinstance(c, (complex, np.complexfloating)):
                    cs = "(" + cs + ")"
                text = cs + "*" + bt
        if not parts:
            parts.append(text)
        elif text.startswith("-"):
            parts.append(" - " + text[1:])
        else:
            parts.append(" + " + text)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# operations


def _check_same(a: Multivector, b: Multivector):
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    _check_same(a, b)
    sig = a.sig
    out = _zeros(sig)
    ib = np.flatnonzero(b.coeffs != 0)
    if ib.size == 0:
        return Multivector._raw(sig, out)
    bvals = b.coeffs[ib]
    if sig.n <= _TABLE_MAX_N:
        table = sign_table(sig)
        for i in np.flatnonzero(a.coeffs != 0):
            vals = a.coeffs[i] * bvals
            neg = table[i, ib] < 0
            vals[neg] = -vals[neg]
            out[i ^ ib] += vals
    else:
        for i in np.flatnonzero(a.coeffs != 0):
            ai = a.coeffs[i]
            for j, bj in zip(ib.tolist(), bvals):
                s, k = basis_blade_product(int(i), j, sig)
                out[k] += ai * bj if s > 0 else -(ai * bj)
    return Multivector._raw(sig, out)


def linear_combine(terms: Iterable[tuple[object, Multivector]]) -> Multivector:
    terms = list(terms)
    if not terms:
        raise ValueError("linear_combine needs at least one term")
    sig = terms[0][1].sig
    out = Multivector.zero(sig)
    for c, x in terms:
        if x.sig != sig:
            raise SignatureMismatch(f"{sig} vs {x.sig}")
        out = out + x.scale(c)
    return out


class Involution(str, enum.Enum):
    GRADE = "grade"
    REVERSION = "reversion"
    CLIFFORD = "clifford"


def involution(a: Multivector, kind: Involution | str) -> Multivector:
    """Grade involution, reversion or Clifford conjugation (their composite)."""
    kind = Involution(kind)
    signs = _grade_sign_vector(a.n, kind.value)
    out = a.coeffs.copy()
    neg = signs < 0
    out[neg] = -out[neg]
    return Multivector._raw(a.sig, out)


def grade_project(a: Multivector, spec: SubspaceSpec) -> Multivector:
    if spec.n != a.n:
        raise ValueError(f"subspace of a {spec.n}-generator algebra applied in n = {a.n}")
    out = a.coeffs.copy()
    out[~spec.mask] = 0
    return Multivector._raw(a.sig, out)


def in_subspace(a: Multivector, spec: SubspaceSpec) -> bool:
    """Exact membership: every nonzero coefficient sits on a blade of ``spec``."""
    if not a.sig.is_exact:
        raise ValueError("in_subspace needs the exact backend; float callers use residuals")
    if spec.n != a.n:
        raise ValueError(f"subspace of a {spec.n}-generator algebra applied in n = {a.n}")
    return not np.any(a.coeffs[~spec.mask] != 0)


def in_bar_by_involutions(a: Multivector, m: int) -> bool:
    """Membership in the grade-mod-4 class ``m`` via the eigenvalues of hat and tilde."""
    hat_sign = -1 if m % 2 else 1
    rev_sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return a.gi() == a.scale(hat_sign) and a.rev() == a.scale(rev_sign)


def bracket(a: Multivector, b: Multivector, kind: str = "commutator") -> Multivector:
    """``ab - ba`` (``kind="commutator"``) or ``ab + ba`` (``"anticommutator"``)."""
    _check_same(a, b)
    if kind == "commutator":
        return a * b - b * a
    if kind == "anticommutator":
        return a * b + b * a
    raise ValueError(f"unknown bracket kind {kind!r}")
