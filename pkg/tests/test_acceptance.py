"""Acceptance suite: one marked test per criterion, at the stated tolerances.

The full verification run (n <= 6, seed 7) is executed once per session and
shared; bit-exact witness values are recomputed directly.
"""

import subprocess
import sys
import time

import pytest

from cliffgroups import (
    GAMMA, P, Q, Q_PRIME, A, GroupId, Signature, all_signatures, evaluate, member, psi, preserves_subspace,
)
from cliffgroups.lie import TABLE1_GROUPS, dim_formula, enumerated_dim, lie_spec
from cliffgroups.verify import CATALOG, check_relation, report_json, run_suite

SEED = 7
MAX_N = 6
N_SIGS = sum(n + 2 for n in range(1, MAX_N + 1))  # all (p, q) plus complex, per n


def crit(num, title):
    return pytest.mark.criterion(num, title)


@pytest.fixture(scope="session")
def suite():
    corpora = {}
    t0 = time.perf_counter()
    reports = run_suite(MAX_N, SEED, corpora_out=corpora)
    elapsed = time.perf_counter() - t0
    return reports, elapsed, corpora


def select(reports, check_id, max_n=MAX_N):
    out = [r for r in reports if r.id == check_id]
    return [r for r in out if r.signature.get("p") is None or _n(r) <= max_n]


def _n(r):
    s = r.signature
    return s["p"] + s["q"] if s["field"] != "any" else s.get("n", 0)


def assert_all_signatures(reports, check_id, max_n=MAX_N, min_trials=0):
    rs = select(reports, check_id, max_n)
    expected = sum(n + 2 for n in range(1, max_n + 1))
    assert len(rs) == expected, f"{check_id}: {len(rs)} signatures, want {expected}"
    bad = [(r.signature, r.witness) for r in rs if not r.passed]
    assert not bad, f"{check_id} failed: {bad[:3]}"
    assert min(r.trials for r in rs) >= min_trials


def bar(m):
    return GroupId.gamma_bar(m)


@crit(1, "Lie algebra table: formula = blade enumeration for n in 1..10")
def test_table1_dimensions():
    t0 = time.perf_counter()
    for g in TABLE1_GROUPS:
        for n in range(1, 11):
            spec = lie_spec(g, n).spec
            assert dim_formula(g, n) == enumerated_dim(spec.grades, n) == spec.dim, (g.name, n)
    assert time.perf_counter() - t0 < 1.0
    for n in range(1, 11):
        assert dim_formula(GAMMA, n) == n * (n - 1) // 2 + (1 if n % 2 == 0 else 2)
    assert dim_formula(A, 4) == 11
    assert dim_formula(Q, 5) == 12
    assert dim_formula(P, 6) == 32


@crit(2, "P = Gamma^(0) = Gamma^(1) on corpora, n <= 6")
def test_parity_groups(suite):
    reports = suite[0]
    assert_all_signatures(reports, "parity:Equal:P:Gamma^(0)", min_trials=40)
    assert_all_signatures(reports, "parity:Equal:P:Gamma^(1)", min_trials=40)


@crit(3, "A = Gamma^bar01 = Gamma^bar23 and B = Gamma^bar03 = Gamma^bar12, n <= 6")
def test_norm_groups(suite):
    reports = suite[0]
    for cid in ("norm-A:Equal:A:Gamma^bar01", "norm-A:Equal:A:Gamma^bar23",
                "norm-B:Equal:B:Gamma^bar03", "norm-B:Equal:B:Gamma^bar12"):
        assert_all_signatures(reports, cid, min_trials=40)


@crit(4, "psi(T) in C^bar01 and chi(T) in C^bar03, 500 samples per signature")
def test_norm_ranges(suite):
    reports = suite[0]
    assert_all_signatures(reports, "psi-range", min_trials=500)
    assert_all_signatures(reports, "chi-range", min_trials=500)


@crit(5, "Q = A & B = A & P = B & P; separating witnesses exact")
def test_q_groups_and_witnesses(suite):
    reports = suite[0]
    for cid in ("Q-meet:Equal:Q:(A & B)", "Q-meet:Equal:Q:(A & P)", "Q-meet:Equal:Q:(B & P)"):
        rs = [r for r in select(reports, cid)]
        assert rs and all(r.passed for r in rs), cid
        assert {_n(r) for r in rs} >= {4, 5, 6}
    for sig in all_signatures(4):
        x = sig.mv("e12 + 2*e34")
        assert member(x, P) and not member(x, A)
        y = sig.mv("1 + 2*e123")
        assert member(y, A) and not member(y, Q)
    for n in (4, 8):
        for sig in (Signature(n, 0), Signature(n // 2, n // 2), Signature.complex(n)):
            z = sig.mv("1 + 2*e" + "".join(str(a) for a in range(1, n + 1)))
            assert member(z, Q_PRIME) and not member(z, Q), sig
    for sig in (Signature(8, 0), Signature(4, 4), Signature.complex(8)):
        x = sig.mv("e12 + 2*e34")
        assert member(x, P) and not member(x, Q_PRIME), sig
    sig = Signature(1, 3)
    T = sig.mv("1 + e1234")
    assert member(T, bar(2)) and not member(T, bar(1))
    assert str(T * sig.mv("e1") * evaluate("inv(1 + e1234)", sig)) == "-e234"
    r = preserves_subspace(T, bar(1).subspace(4))
    assert str(r.image) == "-e234"


@crit(6, "Gamma^k = Gamma^(n-k); Gamma = Q for n <= 5, not at n = 6; Gamma^3 != Gamma at n = 6")
def test_grade_mirror_and_gamma_vs_q(suite):
    reports, _, corpora = suite
    mirror = [r for r in reports if r.id.startswith("gamma-k-mirror:")]
    assert mirror and all(r.passed for r in mirror)
    # at n = 2 the only pair is k = n - k = 1, nothing to compare
    assert {_n(r) for r in mirror} == set(range(3, 7))
    eq = [r for r in reports if r.id == "gamma-vs-Q:Equal:Gamma:Q"]
    assert {_n(r) for r in eq} == {1, 2, 3, 4, 5} and all(r.passed for r in eq)
    assert len(eq) == sum(n + 2 for n in range(1, 6))
    sig = Signature(6, 0)
    r = check_relation("Equal", GAMMA, Q, corpora[sig])
    assert not r.passed and r.witness == "e12 + e3456"
    T = sig.mv("e12 + e3456")
    assert str(psi(T)) == "2"
    assert str(T * sig.mv("e1") * evaluate("inv(e12 + e3456)", sig)) == "-e23456"
    U = sig.mv("1 + 2*e123456")
    assert member(U, GroupId.gamma_grade(3)) and not member(U, GAMMA)


@crit(7, "sampled Gamma elements preserve every grade, 100 per signature")
def test_versor_closure(suite):
    assert_all_signatures(suite[0], "gamma-versor-closure", min_trials=100)


@crit(8, "centralizers of the even part and of the algebra")
def test_centralizers(suite):
    assert_all_signatures(suite[0], "centralizer:even")
    assert_all_signatures(suite[0], "centralizer:all")


@crit(9, "coincidence classes for n = 1..5 with witnessed separations")
def test_catalogs(suite):
    assert [len(CATALOG[n]) for n in range(1, 6)] == [1, 2, 2, 5, 5]
    for n in range(1, 6):
        rs = [r for r in suite[0] if r.id == f"catalog:n={n}"]
        assert len(rs) == n + 2
        assert all(r.passed for r in rs), [r.witness for r in rs if not r.passed]


@crit(10, "Lie algebra closure for n <= 8 and exp membership below 1e-9 for n <= 5")
def test_lie_structure(suite):
    reports = suite[0]
    for g in TABLE1_GROUPS:
        assert_all_signatures(reports, f"closure:{g.name}", max_n=8)
        assert_all_signatures(reports, f"exp:{g.name}", max_n=5, min_trials=20)
    neg = select(reports, "closure:negative-control", max_n=8)
    assert neg and all(r.passed for r in neg)


@crit(11, "verify --max-n 6 under 5 minutes, byte-identical JSON, parser round-trip")
def test_engineering(suite):
    reports, elapsed, corpora = suite
    print(f"\nfull verification: {len(reports)} checks in {elapsed:.1f} s")
    assert elapsed < 300
    assert all(r.passed for r in reports), [r.id for r in reports if not r.passed][:5]
    mine = report_json(reports, SEED, MAX_N)
    out = subprocess.run([sys.executable, "-m", "cliffgroups", "verify", "--max-n", str(MAX_N), "--seed", str(SEED),
                          "--json"], capture_output=True, check=False)
    assert out.returncode == 0
    assert out.stdout == mine.encode()
    assert len(corpora) == N_SIGS
    for sig, corpus in corpora.items():
        assert len(corpus) >= 40
        for e in corpus.elements:
            assert evaluate(str(e.element), sig) == e.element
