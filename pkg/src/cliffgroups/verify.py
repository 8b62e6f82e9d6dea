"""Falsification harness for the group identities.

Every claimed equality, inclusion or separation is checked on a seeded
corpus of invertible elements.  Equalities are tested as biconditionals;
strict inclusions and separations must be backed by a fixed witness from
:data:`REGISTRY`, never by sampling luck.  Reports are plain dataclasses
that serialize to a deterministic JSON document.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .algebra import Multivector, Signature, SubspaceSpec, all_signatures, in_subspace
from .errors import MissingWitness, NotInvertible, SamplerExhausted, UnsupportedGroup
from .groups import (
    A, A_PRIME, B, B_PRIME, CENTER_UNIT, GAMMA, GENERIC, INVERTIBLE, LIPSCHITZ, P, PIN, Q, Q_PRIME, SPIN,
    Family, GroupId, analyze, chi, in_P_by_parity, member, psi, sample,
)
from .lie import TABLE1_GROUPS, closure_check, dim_formula, enumerated_dim, exp_membership_check, lie_spec
from .matrix_rep import centralizer_basis
from .parser import evaluate

__all__ = [
    "VERSION", "Extra", "CounterexampleEntry", "REGISTRY", "CorpusElement", "Corpus", "build_corpus",
    "CheckReport", "check_relation", "replay", "run_suite", "report_json", "table1_report", "render_table1",
    "CATALOG", "catalog_universe", "small_n_catalog", "emit_lattice", "TOPICS",
]

VERSION = "1"

G = GroupId.gamma_grade
GP = GroupId.gamma_parity
GB = GroupId.gamma_bar
GBB = GroupId.gamma_bar_pair
MEET = GroupId.meet

# check-id prefix -> topic; every topic must own at least one check
TOPICS = {
    "grade-groups": ("gamma-k", "gamma-versor-closure", "gamma-top"),
    "parity-groups": ("parity", "p-deciders", "centralizer", "kernel-of-ad"),
    "psi-groups": ("norm-A", "psi-range"),
    "chi-groups": ("norm-B", "chi-range"),
    "Q-groups": ("Q-meet", "Q-prime", "bar-groups"),
    "relations": ("gamma-k-in-Q", "gamma-k-mirror", "gamma-vs-Q", "small-n", "spin"),
    "catalogs": ("catalog",),
    "lie-algebras": ("table1", "closure", "exp", "lie-lattice"),
    "witnesses": ("replay", "scale-invariance", "singular-probes"),
}


def _topic(check_id: str) -> str:
    head = check_id.split(":", 1)[0]
    for topic, prefixes in TOPICS.items():
        if head in prefixes:
            return topic
    raise KeyError(f"check id {check_id!r} has no topic")


# ---------------------------------------------------------------------------
# witness registry


def _square(sig: Signature, *idx: int):
    b = Multivector.from_indices(sig, idx)
    return (b * b).scalar_part


@dataclass(frozen=True)
class Extra:
    """An exact side computation replayed with a witness.

    ``expr`` is evaluated in the parser syntax; it must equal ``expected``
    (canonical text) when given, and have a nonzero grade ``nonzero_grade``
    part when given.  ``labels`` restricts the signatures it applies to.
    """

    expr: str
    expected: str | None = None
    labels: tuple[str, ...] | None = None
    nonzero_grade: int | None = None


@dataclass(frozen=True)
class CounterexampleEntry:
    id: str
    element: str
    ns: tuple[int, ...]
    claims: tuple[tuple[GroupId, bool], ...]
    paper_ref: str
    constraint: Callable[[Signature], bool] | None = None
    extras: tuple[Extra, ...] = ()

    def text(self, n: int) -> str:
        return self.element.replace("{N}", "".join(str(a) for a in range(1, n + 1)))

    def admissible(self, sig: Signature) -> bool:
        if sig.n not in self.ns:
            return False
        return self.constraint is None or bool(self.constraint(sig))

    def element_for(self, sig: Signature) -> Multivector:
        return evaluate(self.text(sig.n), sig)


REGISTRY: tuple[CounterexampleEntry, ...] = (
    CounterexampleEntry(
        "P-not-A", "e12 + 2*e34", (4, 5, 6),
        ((P, True), (GP(0), True), (A, False), (Q, False), (B, False)),
        "P != A and P != Q for n >= 4: psi(e12 + 2e34) has a grade-4 part",
        extras=(Extra("psi(e12 + 2*e34)", nonzero_grade=4),
                Extra("psi(e12 + 2*e34)", "5 - 4*e1234", labels=("Cl(4,0)",))),
    ),
    CounterexampleEntry(
        "P-not-Qprime", "e12 + 2*e34", (8,),
        ((P, True), (Q_PRIME, False), (Q, False)),
        "Q' != P for n = 8, 12, ...: psi(e12 + 2e34) leaves C^0 + C^n",
        extras=(Extra("psi(e12 + 2*e34)", nonzero_grade=4),),
    ),
    CounterexampleEntry(
        "A-not-Q", "1 + 2*e123", (4, 5, 6),
        ((A, True), (Q, False), (P, False), (B, False)),
        "A != Q for n >= 4: psi(e + 2e123) = e - 4(e123)^2 is a nonzero scalar",
        extras=(Extra("psi(1 + 2*e123)", "5", labels=("Cl(4,0)",)),
                Extra("psi(1 + 2*e123) - proj({0}, psi(1 + 2*e123))", "0")),
    ),
    CounterexampleEntry(
        "Qprime-not-Q", "1 + 2*e{N}", (4, 8),
        ((Q_PRIME, True), (Q, False), (P, True)),
        "Q != Q' for n = 0 mod 4: psi(e + 2e1...n) has a grade-n part",
        extras=(Extra("psi(1 + 2*e1234)", "5 + 4*e1234", labels=("Cl(4,0)",)),),
    ),
    CounterexampleEntry(
        "bar2-not-bar1", "1 + e1234", (4,),
        ((GB(2), True), (GB(1), False)),
        "Gamma^bar2 != Gamma^bar1 at n = 4, example e + e1234 in Cl(1,3)",
        constraint=lambda s: _square(s, 1, 2, 3, 4) == -1,
        extras=(Extra("inv(1 + e1234)", "1/2 - 1/2*e1234", labels=("Cl(1,3)",)),
                Extra("(1 + e1234)*e1*inv(1 + e1234)", "-e234", labels=("Cl(1,3)",))),
    ),
    CounterexampleEntry(
        "Q-not-Gamma", "e12 + e3456", (6,),
        ((Q, True), (GAMMA, False), (P, True), (A, True)),
        "Gamma != Q at n = 6: T = e12 + e3456 has scalar psi but moves e1 out of C^1",
        constraint=lambda s: _square(s, 3, 4, 5, 6) - _square(s, 1, 2) != 0,
        extras=(Extra("psi(e12 + e3456)", "2", labels=("Cl(6,0)",)),
                Extra("(e12 + e3456)*e1*inv(e12 + e3456)", "-e23456", labels=("Cl(6,0)",))),
    ),
    CounterexampleEntry(
        "Gamma3-not-Gamma1", "1 + 2*e123456", (6,),
        ((G(3), True), (GAMMA, False)),
        "Gamma^3 != Gamma at n = 6: e1...6 anticommutes with odd elements",
    ),
    CounterexampleEntry(
        "B-not-P", "1 + 2*e1", (2, 3, 4, 5, 6),
        ((B, True), (P, False), (A, False)),
        "chi(e + 2e1) is a nonzero scalar while e + 2e1 is not parity-homogeneous up to the center",
    ),
)


# ---------------------------------------------------------------------------
# corpora


@dataclass(frozen=True)
class CorpusElement:
    tag: str
    element: Multivector
    source: object = None
    witness: str | None = None


@dataclass
class Corpus:
    sig: Signature
    seed: int
    elements: list[CorpusElement]
    singular: list[Multivector] = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    def member(self, i: int, g: GroupId) -> bool:
        return analyze(self.elements[i].element).member(g)

    def witnesses(self) -> list[int]:
        return [i for i, e in enumerate(self.elements) if e.tag == "RegistryWitness"]

    def tags(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.elements:
            out[e.tag] = out.get(e.tag, 0) + 1
        return out


def _factored_sources(sig: Signature) -> list[GroupId]:
    out = [P, A, B, Q, Q_PRIME, A_PRIME, B_PRIME, GAMMA]
    if not sig.is_complex:
        out.append(PIN)
    return out


def build_corpus(sig: Signature, seed: int = 7, size: int = 40) -> Corpus:
    """Seeded corpus: registry witnesses plus round-robin sampled tags.

    Tags: Generic, Even, Odd, Versor(m), CenterMultiple (a center unit times
    another sample) and Factored (samples of the constructive groups).
    """
    if size < 20:
        raise ValueError("corpus size must be at least 20")
    rng = random.Random(f"{seed}:corpus:{sig.label}")
    elements: list[CorpusElement] = []
    seen = set()
    for entry in REGISTRY:
        if entry.admissible(sig):
            x = entry.element_for(sig)
            if x not in seen:
                seen.add(x)
                elements.append(CorpusElement("RegistryWitness", x, None, entry.id))
    n = sig.n
    factored = _factored_sources(sig)
    mults = [GENERIC, P, A, B]
    plan = ("Generic", "Even", "Odd", "Versor", "CenterMultiple", "Factored")
    counts = dict.fromkeys(plan, 0)
    k = 0
    while len(elements) < size:
        tag = plan[k % len(plan)]
        c = counts[tag]
        if tag == "Generic":
            src = GENERIC
        elif tag == "Even":
            src = Family.homogeneous(0)
        elif tag == "Odd":
            src = Family.homogeneous(1)
        elif tag == "Versor":
            src = Family.versor(1 + c % n)
        elif tag == "CenterMultiple":
            src = mults[c % len(mults)]
        else:
            src = factored[c % len(factored)]
        x = sample(src, sig, rng)
        if tag == "CenterMultiple":
            x = sample(CENTER_UNIT, sig, rng) * x
        counts[tag] += 1
        k += 1
        if x in seen:
            continue
        seen.add(x)
        elements.append(CorpusElement(tag, x, src))
    singular = [Multivector.zero(sig)]
    for b in range(1, sig.dim):
        U = Multivector.basis(sig, b)
        if (U * U) == 1:
            singular.append(U + 1)
            break
    return Corpus(sig, seed, elements, singular)


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckReport:
    id: str
    paper_ref: str
    signature: dict
    trials: int
    result: str
    witness: str | None = None
    elapsed_ms: float = 0.0
    note: str | None = None

    @property
    def passed(self) -> bool:
        return self.result == "Pass"

    @property
    def topic(self) -> str:
        return _topic(self.id)

    def sort_key(self):
        s = self.signature
        return (self.id, s.get("p") if s.get("p") is not None else -1, s.get("field") or "", s.get("q") or 0)

    def to_dict(self, timings: bool = False) -> dict:
        d = {"id": self.id, "paper_ref": self.paper_ref, "signature": self.signature,
             "trials": self.trials, "result": self.result}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note:
            d["note"] = self.note
        if timings:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


_ANY = {"p": None, "q": None, "field": "any"}


def _sigdict(sig: Signature | None, n: int | None = None) -> dict:
    if sig is None:
        d = dict(_ANY)
        if n is not None:
            d["n"] = n
        return d
    return sig.as_dict()


def _report(check_id, claim, sig, trials, failure, t0, note=None, n=None) -> CheckReport:
    if failure is not None and not failure:
        failure = "(no element)"
    return CheckReport(check_id, claim, _sigdict(sig, n), trials, "Fail" if failure else "Pass",
                       failure or None, (time.perf_counter() - t0) * 1000, note)


def _vacuity_note(n: int, *groups: GroupId) -> str | None:
    empties = []
    for g in groups:
        spec = g.subspace(n)
        if spec is not None and spec.is_zero:
            empties.append(g.name)
    if empties:
        return "vacuous: empty subspace for " + ", ".join(empties)
    return None


def check_relation(kind: str, g1: GroupId, g2: GroupId, corpus: Corpus,
                   check_id: str | None = None, claim: str = "") -> CheckReport:
    """``Equal``, ``Subset``, ``ProperSubset`` or ``Distinct`` on a corpus.

    Equal is a biconditional over every element; since the corpus holds
    samples of every constructive group, this also covers cross-membership
    of each side's generators.  ProperSubset and Distinct need a registry
    witness that separates the two groups.
    """
    t0 = time.perf_counter()
    check_id = check_id or f"{kind}:{g1.name}:{g2.name}"
    sig = corpus.sig
    failure = None
    for i, e in enumerate(corpus.elements):
        m1, m2 = corpus.member(i, g1), corpus.member(i, g2)
        if kind == "Equal" and m1 != m2:
            failure = f"{e.element}"
            break
        if kind in ("Subset", "ProperSubset") and m1 and not m2:
            failure = f"{e.element}"
            break
        if kind not in ("Equal", "Subset", "ProperSubset", "Distinct"):
            raise ValueError(f"unknown relation kind {kind!r}")
    note = _vacuity_note(sig.n, g1, g2)
    if failure is None and kind in ("ProperSubset", "Distinct"):
        idx = corpus.witnesses()
        if not idx:
            raise MissingWitness(f"no registry witness admissible for {sig.label}")
        sep = None
        for i in idx:
            m1, m2 = corpus.member(i, g1), corpus.member(i, g2)
            if (kind == "ProperSubset" and m2 and not m1) or (kind == "Distinct" and m1 != m2):
                sep = corpus.elements[i]
                break
        if sep is None:
            failure = f"no registry witness separates {g1.name} and {g2.name}"
        else:
            note = (note + "; " if note else "") + f"separated by {sep.witness}: {sep.element}"
    return _report(check_id, claim, sig, len(corpus), failure, t0, note)


# ---------------------------------------------------------------------------
# the relation plan


def _plan(n: int, sig: Signature) -> list[tuple[str, str, GroupId, GroupId, str]]:
    """(id, kind, g1, g2, claim) for every relation asserted at this n."""
    out = []

    def add(prefix, kind, g1, g2, claim):
        out.append((f"{prefix}:{kind}:{g1.name}:{g2.name}", kind, g1, g2, claim))

    bars = [GB(m) for m in range(4)]
    # fixed grades
    for k in range(n + 1):
        add("gamma-k", "Subset", GAMMA, G(k), "Gamma is contained in every Gamma^k")
    add("gamma-top", "Equal", G(0), INVERTIBLE, "Gamma^0 = C^x")
    if n % 2:
        add("gamma-top", "Equal", G(n), INVERTIBLE, "Gamma^n = C^x for odd n")
    else:
        add("gamma-top", "Equal", G(n), P, "Gamma^n = C^x(0) u C^x(1) for even n")
    if n >= 2:
        add("gamma-k", "Equal", GAMMA, MEET(*[G(k) for k in range(n + 1)]), "Gamma is the intersection of all Gamma^k")
    # parity
    add("parity", "Equal", P, GP(0), "P = Gamma^(0) = Gamma^(1)")
    add("parity", "Equal", P, GP(1), "P = Gamma^(0) = Gamma^(1)")
    add("parity", "Subset", GAMMA, GP(0), "Gamma is contained in Gamma^(0) and Gamma^(1)")
    # A and B
    add("norm-A", "Equal", A, GBB(0, 1), "A = Gamma^bar01 = Gamma^bar23")
    add("norm-A", "Equal", A, GBB(2, 3), "A = Gamma^bar01 = Gamma^bar23")
    add("norm-A", "Subset", GAMMA, A, "A contains Gamma")
    add("norm-B", "Equal", B, GBB(0, 3), "B = Gamma^bar03 = Gamma^bar12")
    add("norm-B", "Equal", B, GBB(1, 2), "B = Gamma^bar03 = Gamma^bar12")
    if n <= 3:
        add("norm-B", "Equal", B, INVERTIBLE, "B = C^x for n <= 3")
    # Q and Q'
    add("Q-meet", "Equal", Q, MEET(A, P), "Q = A & P = B & P = A & B")
    add("Q-meet", "Equal", Q, MEET(B, P), "Q = A & P = B & P = A & B")
    add("Q-meet", "Equal", Q, MEET(A, B), "Q = A & P = B & P = A & B")
    for g in (P, A, B):
        add("Q-meet", "Subset", Q, g, "Q is contained in P, A and B")
    if n <= 3:
        add("Q-meet", "Equal", Q, P, "Q = P for n <= 3")
    if n == 4:
        add("Q-meet", "Distinct", Q, P, "Q != P and A != P at n = 4")
        add("Q-meet", "Distinct", A, P, "Q != P and A != P at n = 4")
    add("Q-prime", "Equal", Q_PRIME, MEET(A_PRIME, B_PRIME), "A' & B' = Q'")
    if n % 4:
        add("Q-prime", "Equal", Q_PRIME, Q, "Q' = Q for n = 1, 2, 3 mod 4")
    else:
        add("Q-prime", "Subset", Q, Q_PRIME, "Q <= Q' <= P for n = 0 mod 4")
        add("Q-prime", "Subset", Q_PRIME, P, "Q <= Q' <= P for n = 0 mod 4")
        add("Q-prime", "ProperSubset", Q, Q_PRIME, "Q != Q' for n = 4, 8, ...")
        if n == 4:
            add("Q-prime", "Equal", Q_PRIME, P, "Q' = P at n = 4")
    # quaternion-type subspaces
    if n >= 4:
        if n % 4 == 0:
            for m in (1, 3):
                add("bar-groups", "Equal", Q, bars[m], "Q = Gamma^bar1 = Gamma^bar3 for n = 0 mod 4")
            for m in (0, 2):
                add("bar-groups", "Equal", Q_PRIME, bars[m], "Q' = Gamma^bar0 = Gamma^bar2 for n = 0 mod 4")
        else:
            for m in range(4):
                add("bar-groups", "Equal", Q, bars[m], "Q = Gamma^bar k for all k, n = 1, 2, 3 mod 4")
    elif n in (2, 3):
        add("bar-groups", "Equal", bars[0], INVERTIBLE, "Gamma^bar0 = C^x for n = 2, 3")
        if n == 3:
            add("bar-groups", "Equal", bars[3], INVERTIBLE, "Gamma^bar3 = C^x for n = 3")
        for m in (1, 2):
            add("bar-groups", "Equal", bars[m], Q, "Gamma^bar1 = Gamma^bar2 = Q = P for n = 2, 3")
        add("bar-groups", "Distinct", bars[0], bars[1], "Gamma^bar0 != Gamma^bar1 for n = 2, 3")
    if n >= 2:
        add("bar-groups", "Equal", bars[1], MEET(*bars), "Gamma^bar1 is the intersection of all Gamma^bar k")
    # relations between the Gamma^k
    for k in range(1, n):
        if n % 4 or k % 2:
            add("gamma-k-in-Q", "Subset", G(k), Q, "Gamma^k <= Q (Q' for even k when n = 0 mod 4)")
        else:
            add("gamma-k-in-Q", "Subset", G(k), Q_PRIME, "Gamma^k <= Q (Q' for even k when n = 0 mod 4)")
        if k < n - k:
            add("gamma-k-mirror", "Equal", G(k), G(n - k), "Gamma^k = Gamma^(n-k)")
    if n <= 5:
        add("gamma-vs-Q", "Equal", GAMMA, Q, "Gamma = Q for n <= 5")
    elif n == 6:
        if any(e.id == "Q-not-Gamma" and e.admissible(sig) for e in REGISTRY):
            add("gamma-vs-Q", "ProperSubset", GAMMA, Q, "Gamma != Q at n = 6")
        else:
            add("gamma-vs-Q", "Subset", GAMMA, Q, "Gamma <= Q; the n = 6 separating example needs eta1 eta2 = eta3 eta4 eta5 eta6")
        add("gamma-vs-Q", "ProperSubset", GAMMA, G(3), "e + 2e1...6 lies in Gamma^3 but not in Gamma at n = 6")
    if n <= 3:
        add("small-n", "Equal", A, Q, "A = Q = P for n <= 3")
        add("small-n", "Equal", A, P, "A = Q = P for n <= 3")
    if n == 3:
        add("small-n", "Equal", G(1), G(2), "Gamma^1 = Gamma^2 = Q = P = A at n = 3")
    if n == 4:
        add("small-n", "Distinct", Q, A, "Q != A at n = 4")
        add("small-n", "Equal", G(1), G(3), "Gamma^1 = Gamma^3 = Q != Gamma^2 = Q' = P at n = 4")
        add("small-n", "Equal", G(2), Q_PRIME, "Gamma^1 = Gamma^3 = Q != Gamma^2 = Q' = P at n = 4")
        add("small-n", "Equal", G(2), P, "Gamma^1 = Gamma^3 = Q != Gamma^2 = Q' = P at n = 4")
        add("small-n", "Distinct", G(1), G(2), "Gamma^1 = Gamma^3 = Q != Gamma^2 = Q' = P at n = 4")
    if n == 5:
        for k in range(1, 5):
            add("small-n", "Equal", G(k), Q, "Gamma^1 = ... = Gamma^4 = Q at n = 5")
    if not sig.is_complex:
        add("spin", "Subset", LIPSCHITZ, GAMMA, "the Lipschitz group lies in Gamma")
        add("spin", "Subset", PIN, LIPSCHITZ, "Pin is a subgroup of the Lipschitz group")
        add("spin", "Subset", SPIN, PIN, "Spin = Pin & C^(0)")
        add("spin", "Subset", LIPSCHITZ, A, "A contains the Lipschitz group")
    return out


# ---------------------------------------------------------------------------
# invariant checks on one signature


def _range_check(sig, seed, which: str, trials: int = 500) -> CheckReport:
    t0 = time.perf_counter()
    rng = random.Random(f"{seed}:{which}:{sig.label}")
    n = sig.n
    target = SubspaceSpec.bars(n, 0, 1) if which == "psi" else SubspaceSpec.bars(n, 0, 3)
    fn = psi if which == "psi" else chi
    failure = None
    for _ in range(trials):
        T = _generic(sig, rng)
        if not in_subspace(fn(T), target):
            failure = str(T)
            break
    claim = "psi(T) lies in C^bar01 for every T" if which == "psi" else "chi(T) lies in C^bar03 for every T"
    return _report(f"{which}-range", claim, sig, trials, failure, t0)


def _generic(sig, rng) -> Multivector:
    from .groups import _coef

    return Multivector(sig, [_coef(rng, sig) for _ in range(sig.dim)])


def _versor_closure(sig, seed, samples: int = 100) -> CheckReport:
    t0 = time.perf_counter()
    rng = random.Random(f"{seed}:versor-closure:{sig.label}")
    failure = None
    for _ in range(samples):
        T = sample(GAMMA, sig, rng)
        a = analyze(T)
        for k in range(sig.n + 1):
            if not a.preserves(SubspaceSpec.grade(sig.n, k), with_image=False):
                failure = f"{T} (grade {k})"
                break
        if failure:
            break
    return _report("gamma-versor-closure", "center unit times versor preserves every C^k", sig,
                   samples, failure, t0)


def _p_deciders(corpus: Corpus) -> CheckReport:
    t0 = time.perf_counter()
    failure = None
    for i, e in enumerate(corpus.elements):
        if corpus.member(i, P) != in_P_by_parity(e.element):
            failure = str(e.element)
            break
    return _report("p-deciders", "hat(T) T^-1 in Z agrees with the parity-split decider for P",
                   corpus.sig, len(corpus), failure, t0)


def _kernel_of_ad(corpus: Corpus) -> CheckReport:
    t0 = time.perf_counter()
    Z = SubspaceSpec.center(corpus.sig.n)
    failure = None
    for e in corpus.elements:
        if analyze(e.element).fixes_everything != in_subspace(e.element, Z):
            failure = str(e.element)
            break
    return _report("kernel-of-ad", "U -> T U T^-1 is the identity iff T is a center unit",
                   corpus.sig, len(corpus), failure, t0)


def _centralizer(sig) -> list[CheckReport]:
    out = []
    n = sig.n
    t0 = time.perf_counter()
    basis = centralizer_basis(SubspaceSpec.parity(n, 0), sig)
    want = {Multivector.scalar(sig, 1), sig.pseudoscalar()}
    got = set(basis)
    fail = None if got == want else ", ".join(sorted(map(str, basis)))
    out.append(_report("centralizer:even", "the centralizer of C^(0) is C^0 + C^n", sig, 1, fail, t0))
    t0 = time.perf_counter()
    basis = centralizer_basis(SubspaceSpec.all(n), sig)
    want = {Multivector.basis(sig, b) for b in SubspaceSpec.center(n).blades()}
    fail = None if set(basis) == want else ", ".join(sorted(map(str, basis)))
    out.append(_report("centralizer:all", "the center is C^0 (even n) or C^0 + C^n (odd n)", sig, 1, fail, t0))
    return out


def _scale_invariance(corpus: Corpus) -> CheckReport:
    t0 = time.perf_counter()
    failure = None
    trials = 0
    for i in corpus.witnesses():
        e = corpus.elements[i]
        entry = next(r for r in REGISTRY if r.id == e.witness)
        for g, _ in entry.claims:
            trials += 1
            if member(e.element.scale(3), g) != corpus.member(i, g):
                failure = f"{e.element} ({g.name})"
                break
        if failure:
            break
    return _report("scale-invariance", "membership is unchanged by nonzero scalar multiples",
                   corpus.sig, trials, failure, t0)


def _singular_probes(corpus: Corpus) -> CheckReport:
    t0 = time.perf_counter()
    failure = None
    for x in corpus.singular:
        try:
            member(x, GAMMA)
        except NotInvertible:
            continue
        failure = str(x)
        break
    return _report("singular-probes", "non-invertible elements are rejected, not classified",
                   corpus.sig, len(corpus.singular), failure, t0)


# ---------------------------------------------------------------------------
# counterexample replay


@dataclass
class Replay:
    entry: CounterexampleEntry
    sig: Signature
    element: Multivector
    lines: list[str]
    ok: bool


def replay(entry: CounterexampleEntry, sig: Signature) -> Replay:
    """Recompute one witness in one signature; ``lines`` narrate each step."""
    if not entry.admissible(sig):
        raise ValueError(f"{entry.id} is not admissible in {sig.label}")
    x = entry.element_for(sig)
    lines = [f"T = {x}", f"psi(T) = {psi(x)}", f"chi(T) = {chi(x)}"]
    ok = True
    for g, want in entry.claims:
        got = member(x, g)
        ok &= got == want
        lines.append(f"member(T, {g.name}) = {str(got).lower()} (expected {str(want).lower()})")
    for ex in entry.extras:
        if ex.labels is not None and sig.label not in ex.labels:
            continue
        val = evaluate(ex.expr, sig)
        line = f"{ex.expr} = {val}"
        if ex.expected is not None:
            good = str(val) == ex.expected
            ok &= good
            line += "" if good else f" (expected {ex.expected})"
        if ex.nonzero_grade is not None:
            good = not val.grade(ex.nonzero_grade).is_zero
            ok &= good
            line += f" (grade-{ex.nonzero_grade} part {'nonzero' if good else 'zero, expected nonzero'})"
        lines.append(line)
    return Replay(entry, sig, x, lines, ok)


def _replay_report(entry, sig) -> CheckReport:
    t0 = time.perf_counter()
    r = replay(entry, sig)
    failure = None if r.ok else str(r.element) + " | " + "; ".join(r.lines)
    return _report(f"replay:{entry.id}", entry.paper_ref, sig, len(entry.claims) + len(entry.extras), failure, t0)


# ---------------------------------------------------------------------------
# Lie algebra checks


def _lie_lattice(n: int) -> CheckReport:
    t0 = time.perf_counter()
    g = {x.tag if x != GAMMA else "Gamma": lie_spec(x, n).spec.grades for x in TABLE1_GROUPS}
    gam, q, p, a, b, qp = g["Gamma"], g["Q"], g["P"], g["A"], g["B"], g["QPrime"]
    claims = [
        ("gamma <= q <= p", gam <= q <= p), ("q <= a", q <= a), ("q <= b", q <= b),
        ("q = a & p", q == a & p), ("q = b & p", q == b & p), ("q = a & b", q == a & b),
    ]
    if n <= 3:
        claims.append(("q = p = a", q == p == a))
    if n == 4:
        claims.append(("q, p, a pairwise distinct", q != p and q != a and p != a))
    if n <= 5:
        claims.append(("gamma = q", gam == q))
    if n == 6:
        claims.append(("gamma != q", gam != q))
    if n % 4 == 0:
        claims += [("q <= q' <= p", q <= qp <= p), ("gamma <= q'", gam <= qp), ("q != q'", q != qp)]
        claims.append(("q' = p", qp == p) if n == 4 else ("q' != p", qp != p))
    bad = [c for c, ok in claims if not ok]
    return _report(f"lie-lattice:n={n}", "inclusions among the Lie algebras", None, len(claims),
                   "; ".join(bad) if bad else None, t0, n=n)


def _table1_checks(max_dim_n: int = 10) -> list[CheckReport]:
    out = []
    for g in TABLE1_GROUPS:
        t0 = time.perf_counter()
        bad = [n for n in range(1, max_dim_n + 1) if dim_formula(g, n) != lie_spec(g, n).dim]
        out.append(_report(f"table1:{g.name}", "closed-form dimension equals blade count", None,
                           max_dim_n, ", ".join(f"n={n}" for n in bad) if bad else None, t0))
    t0 = time.perf_counter()
    bad = [n for n in range(2, max_dim_n + 1)
           if enumerated_dim({k for k in range(n + 1) if k % 4 == 2}, n) != _dim_bar2(n)]
    out.append(_report("table1:C^bar2", "dim C^bar2 = 2^(n-2) - 2^((n-2)/2) cos(pi n/4)", None,
                       max_dim_n - 1, ", ".join(f"n={n}" for n in bad) if bad else None, t0))
    return out


def _dim_bar2(n: int) -> int:
    from .lie import _cos, _pow2_half
    from fractions import Fraction

    return (Fraction(2) ** (n - 2) - _pow2_half(n - 2) * _cos(n)).to_int()


def _closure_checks(sig) -> list[CheckReport]:
    out = []
    for g in TABLE1_GROUPS:
        t0 = time.perf_counter()
        r = closure_check(lie_spec(g, sig).spec, sig)
        w = None if r else f"[{r.pair[0]}, {r.pair[1]}]"
        out.append(_report(f"closure:{g.name}", "each Lie algebra subspace is closed under the commutator",
                           sig, 1, w, t0))
    if sig.n >= 2:
        t0 = time.perf_counter()
        r = closure_check(SubspaceSpec.grade(sig.n, 1), sig)
        out.append(_report("closure:negative-control", "C^1 alone is not a Lie algebra", sig, 1,
                           None if not r else "C^1 closed", t0))
    return out


def _exp_checks(sig, seed, tol) -> list[CheckReport]:
    out = []
    for g in TABLE1_GROUPS:
        t0 = time.perf_counter()
        r = exp_membership_check(g, sig, seed, trials=20, tol=tol)
        out.append(_report(f"exp:{g.name}", "exp maps the Lie algebra into the group", sig, r.trials,
                           None if r else f"{r.witness} (residual {r.worst:.3e})", t0,
                           note=None if not r else None))
    return out


# ---------------------------------------------------------------------------
# small-n catalogs


def _cls(*gs) -> tuple[GroupId, ...]:
    return tuple(gs)


CATALOG: dict[int, tuple[tuple[GroupId, ...], ...]] = {
    2: (
        _cls(GB(0), G(0), GBB(0, 3), GBB(1, 2), B, INVERTIBLE),
        _cls(G(1), G(2), GB(2), GBB(2, 3), GBB(0, 1), GP(0), GP(1), GB(1), Q, P, A),
    ),
    3: (
        _cls(GB(0), G(0), G(3), GB(3), GBB(0, 3), GBB(1, 2), B, INVERTIBLE),
        _cls(G(1), GP(0), GP(1), GB(1), G(2), GB(2), GBB(2, 3), GBB(0, 1), Q, P, A),
    ),
    4: (
        _cls(G(0), INVERTIBLE),
        _cls(GP(0), GP(1), GB(0), G(4), GB(2), G(2), P, Q_PRIME),
        _cls(G(1), GB(1), G(3), GB(3), Q),
        _cls(GBB(0, 3), GBB(1, 2), B),
        _cls(GBB(2, 3), GBB(0, 1), A),
    ),
    5: (
        _cls(G(0), G(5), INVERTIBLE),
        _cls(GP(0), GP(1), P),
        _cls(G(1), G(2), G(3), G(4), GB(1), GB(2), GB(3), GB(0), Q),
        _cls(GBB(0, 3), GBB(1, 2), B),
        _cls(GBB(2, 3), GBB(0, 1), A),
    ),
}
# at n = 1 the algebra is commutative and every group is C^x
CATALOG[1] = (
    _cls(G(0), G(1), GP(0), GP(1), GB(0), GB(1), GBB(0, 1), GBB(0, 3), GBB(1, 2), GBB(2, 3),
         P, A, A_PRIME, B, B_PRIME, Q, Q_PRIME, INVERTIBLE),
)


def catalog_universe(n: int) -> tuple[GroupId, ...]:
    return tuple(g for cls in CATALOG[n] for g in cls)


@dataclass
class SignatureCatalog:
    sig: Signature
    classes: list[tuple[GroupId, ...]]
    separations: dict[tuple[int, int], str | None]
    ok: bool


@dataclass
class CatalogReport:
    n: int
    expected: tuple[tuple[GroupId, ...], ...]
    per_signature: list[SignatureCatalog]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.per_signature)

    @property
    def class_count(self) -> int:
        return len(self.expected)


def _catalog_one(n: int, corpus: Corpus) -> SignatureCatalog:
    universe = catalog_universe(n)
    by_vec: dict[tuple, list[GroupId]] = {}
    for g in universe:
        vec = tuple(corpus.member(i, g) for i in range(len(corpus)))
        by_vec.setdefault(vec, []).append(g)
    classes = [tuple(v) for v in by_vec.values()]
    expected = CATALOG[n]
    ok = {frozenset(c) for c in classes} == {frozenset(c) for c in expected}
    seps: dict[tuple[int, int], str | None] = {}
    wit = corpus.witnesses()
    for i, j in combinations(range(len(expected)), 2):
        gi, gj = expected[i][0], expected[j][0]
        seps[(i, j)] = None
        for k in wit:
            if corpus.member(k, gi) != corpus.member(k, gj):
                seps[(i, j)] = corpus.elements[k].witness
                break
        ok &= seps[(i, j)] is not None
    return SignatureCatalog(corpus.sig, classes, seps, ok)


def small_n_catalog(n: int, seed: int = 7, size: int = 40, complex_field: bool = True,
                    corpora: dict | None = None) -> CatalogReport:
    """Partition the groups into coincidence classes in every signature of size n.

    Classes come from corpus membership vectors; every pair of distinct
    classes must also be separated by a registry witness.
    """
    if not 1 <= n <= 5:
        raise ValueError("catalogs cover 1 <= n <= 5")
    per = []
    for sig in all_signatures(n, complex_field):
        corpus = (corpora or {}).get(sig) or build_corpus(sig, seed, size)
        per.append(_catalog_one(n, corpus))
    return CatalogReport(n, CATALOG[n], per)


def _catalog_reports(n: int, corpora: dict) -> list[CheckReport]:
    out = []
    for sig, corpus in corpora.items():
        t0 = time.perf_counter()
        r = _catalog_one(n, corpus)
        failure = None
        if not r.ok:
            found = " | ".join("{" + ", ".join(g.name for g in c) + "}" for c in r.classes)
            missing = [f"{i}-{j}" for (i, j), w in r.separations.items() if w is None]
            failure = f"classes {found}" + (f"; unseparated {missing}" if missing else "")
        out.append(_report(f"catalog:n={n}", f"{len(CATALOG[n])} distinct groups at n = {n}", sig,
                           len(corpus), failure, t0))
    return out


# ---------------------------------------------------------------------------
# Lie algebra table and lattice


def table1_report(max_n: int = 10) -> list[dict]:
    if not 1 <= max_n <= 10:
        raise ValueError("max_n must be in 1..10")
    rows = []
    for g in TABLE1_GROUPS:
        for n in range(1, max_n + 1):
            spec = lie_spec(g, n).spec
            f = dim_formula(g, n)
            e = enumerated_dim(spec.grades, n)
            rows.append({"group": g.name, "n": n, "grades": sorted(spec.grades),
                         "formula": f, "enumerated": e, "match": f == e})
    return rows


def render_table1(rows: list[dict]) -> str:
    lines = [f"{'group':<6} {'n':>2}  {'Lie algebra grades':<28} {'formula':>7} {'count':>7}  match"]
    for r in rows:
        grades = "C^{" + ",".join(map(str, r["grades"])) + "}"
        lines.append(f"{r['group']:<6} {r['n']:>2}  {grades:<28} {r['formula']:>7} {r['enumerated']:>7}  "
                     f"{'yes' if r['match'] else 'NO'}")
    return "\n".join(lines)


_LATTICE_EDGES = (
    ("Gamma", "Q", "= for n <= 5, != at n = 6"),
    ("Q", "Q'", "= for n = 1, 2, 3 mod 4, != for n = 0 mod 4"),
    ("Q'", "P", "= for n = 4, != for n >= 8 (n = 0 mod 4)"),
    ("Q", "A", "= for n <= 3, != for n >= 4"),
    ("Q", "B", "!= from n = 2 (B = C^x for n <= 3)"),
    ("P", "C^x", "!= for n >= 2"),
    ("A", "C^x", "!= for n >= 2"),
    ("B", "C^x", "= for n <= 3, != for n >= 4"),
    ("Spin", "Gamma", "subgroup (real signatures)"),
)


def emit_lattice(fmt: str = "DOT") -> str:
    """Inclusion lattice of the groups; edges point from subgroup to supergroup."""
    if fmt.upper() != "DOT":
        raise ValueError("only DOT output is supported")
    nodes = ["Spin", "Gamma", "Q", "Q'", "P", "A", "B", "C^x"]
    lines = ["digraph groups {", "  rankdir=BT;"]
    for v in nodes:
        lines.append(f'  "{v}";')
    for a, b, label in _LATTICE_EDGES:
        lines.append(f'  "{a}" -> "{b}" [label="{label}"];')
    lines.append('  "Q" -> "A & B" [style=dashed, label="Q = A & B = A & P = B & P"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the suite


def _signatures(n: int, fields: Iterable[str]) -> list[Signature]:
    fields = set(fields)
    out = []
    if "real" in fields:
        out += [s for s in all_signatures(n, complex_field=False)]
    if "complex" in fields:
        out.append(Signature.complex(n))
    return out


def run_suite(max_n: int = 6, seed: int = 7, fields: Iterable[str] = ("real", "complex"),
              corpus_size: int = 40, tol: float = 1e-9, group_n_cap: int = 6,
              closure_n: int = 8, dims_n: int = 10, exp_n: int = 5,
              corpora_out: dict | None = None) -> list[CheckReport]:
    """Run the full registry; reports come back sorted by (id, signature).

    Pass a dict as ``corpora_out`` to receive the corpus used per signature.
    """
    if max_n < 1:
        raise ValueError("max_n must be positive")
    fields = tuple(fields)
    reports: list[CheckReport] = []
    group_n = min(max_n, group_n_cap)
    for n in range(1, group_n + 1):
        corpora = {}
        for sig in _signatures(n, fields):
            corpus = build_corpus(sig, seed, corpus_size)
            corpora[sig] = corpus
            if corpora_out is not None:
                corpora_out[sig] = corpus
            for cid, kind, g1, g2, claim in _plan(n, sig):
                reports.append(check_relation(kind, g1, g2, corpus, cid, claim))
            reports.append(_range_check(sig, seed, "psi"))
            reports.append(_range_check(sig, seed, "chi"))
            reports.append(_versor_closure(sig, seed))
            reports.append(_p_deciders(corpus))
            reports.append(_kernel_of_ad(corpus))
            reports += _centralizer(sig)
            reports.append(_scale_invariance(corpus))
            reports.append(_singular_probes(corpus))
            if n <= min(exp_n, max_n):
                reports += _exp_checks(sig, seed, tol)
        if n <= 5:
            reports += _catalog_reports(n, corpora)
    for entry in REGISTRY:
        for n in entry.ns:
            if n > group_n and n != 8:
                continue
            for sig in _signatures(n, fields):
                if entry.admissible(sig):
                    reports.append(_replay_report(entry, sig))
    for n in range(1, min(max(max_n, closure_n), 8) + 1):
        for sig in _signatures(n, fields):
            reports += _closure_checks(sig)
    reports += _table1_checks(dims_n)
    for n in range(1, dims_n + 1):
        reports.append(_lie_lattice(n))
    reports.sort(key=CheckReport.sort_key)
    return reports


def report_json(reports: list[CheckReport], seed: int, max_n: int, timings: bool = False) -> str:
    doc = {"version": VERSION, "seed": seed, "max_n": max_n,
           "checks": [r.to_dict(timings) for r in reports]}
    return json.dumps(doc, indent=2) + "\n"
