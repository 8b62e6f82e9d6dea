from fractions import Fraction

import pytest

from cliffgroups import GroupId, Signature, SubspaceSpec, all_signatures
from cliffgroups.errors import UnsupportedGroup
from cliffgroups.lie import (
    TABLE1_GROUPS, Root2, closure_check, dim_formula, enumerated_dim, exp_membership_check, lie_spec,
)


def test_root2_arithmetic():
    r = Root2(Fraction(1), Fraction(1))
    assert r * r == Root2(Fraction(3), Fraction(2))
    assert (r - r).to_int() == 0
    with pytest.raises(ArithmeticError):
        r.to_int()


@pytest.mark.parametrize("n", range(1, 11))
@pytest.mark.parametrize("g", TABLE1_GROUPS, ids=lambda g: g.name)
def test_formula_matches_enumeration(g, n):
    spec = lie_spec(g, n).spec
    assert dim_formula(g, n) == enumerated_dim(_grades(spec), n) == spec.dim


def _grades(spec):
    from cliffgroups.algebra import grade_of

    return {grade_of(b) for b in spec.blades()}


@pytest.mark.parametrize("g,n,d", [
    (GroupId("A"), 4, 11), (GroupId("Q"), 5, 12), (GroupId("P"), 6, 32),
    (GroupId.gamma_grade(1), 6, 16), (GroupId.gamma_grade(1), 5, 12), (GroupId("B"), 7, 58),
])
def test_known_dimensions(g, n, d):
    assert dim_formula(g, n) == d


def test_no_row_for_other_groups():
    with pytest.raises(UnsupportedGroup):
        lie_spec(GroupId("Spin"), 4)


@pytest.mark.parametrize("n", range(1, 7))
def test_rows_close_under_commutator(n):
    for sig in all_signatures(n):
        for g in TABLE1_GROUPS:
            assert closure_check(lie_spec(g, sig).spec, sig), (g.name, sig)


def test_vectors_do_not_close():
    sig = Signature(3, 0)
    res = closure_check(SubspaceSpec.grade(3, 1), sig)
    assert not res and {str(x) for x in res.pair} == {"e1", "e2"}


def test_closure_limit():
    with pytest.raises(ValueError):
        closure_check(SubspaceSpec.all(9), Signature(9, 0))


@pytest.mark.parametrize("sig", [Signature(3, 0), Signature(2, 2), Signature.complex(4)], ids=str)
def test_exp_lands_in_group(sig):
    for g in TABLE1_GROUPS:
        res = exp_membership_check(g, sig, seed=1, trials=5)
        assert res and res.worst < 1e-9, g.name


def test_exp_of_non_algebra_element_leaves_group():
    # vectors are not in the Lie algebra of Gamma; exp(e1 + e2...) generally leaves P
    from cliffgroups.lie import float_residual
    from cliffgroups.matrix_rep import exp_mv

    sig = Signature(4, 0).with_backend("float")
    T = exp_mv(sig.mv("e1 + e123"))
    res, scale = float_residual(T, GroupId.gamma_grade(1))
    assert res / scale > 1e-3
