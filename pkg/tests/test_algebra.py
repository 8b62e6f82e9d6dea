from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffgroups import Multivector, Signature, SubspaceSpec, all_signatures
from cliffgroups.algebra import basis_blade_product, blade_text, format_multivector, grade_of, sign_table
from cliffgroups.errors import SignatureMismatch
from cliffgroups.scalars import I, gauss


def test_generator_squares_follow_metric():
    sig = Signature(2, 3)
    for a in range(1, 6):
        e = sig.blade(a)
        assert e * e == sig.scalar(1 if a <= 2 else -1)


def test_complex_generators_square_to_one():
    sig = Signature.complex(3)
    for a in range(1, 4):
        assert sig.blade(a) ** 2 == sig.scalar(1)


def test_generators_anticommute():
    sig = Signature(3, 1)
    e1, e3 = sig.blade(1), sig.blade(3)
    assert e1 * e3 == -(e3 * e1)


def test_ordered_product_sign():
    sig = Signature(3, 0)
    assert sig.blade(2, 1) == -sig.blade(1, 2)
    assert sig.blade(1, 2, 1) == -sig.blade(2)


def test_pseudoscalar_square():
    assert Signature(4, 0).pseudoscalar() ** 2 == Signature(4, 0).scalar(1)
    assert Signature(3, 0).pseudoscalar() ** 2 == Signature(3, 0).scalar(-1)
    assert Signature(1, 3).pseudoscalar() ** 2 == Signature(1, 3).scalar(-1)


def test_sign_table_matches_blade_product():
    sig = Signature(2, 2)
    T = sign_table(sig)
    for a in range(16):
        for b in range(16):
            s, blade = basis_blade_product(a, b, sig)
            assert blade == a ^ b and T[a, b] == s


def test_signature_validation():
    with pytest.raises(ValueError):
        Signature(0, 0)
    with pytest.raises(ValueError):
        Signature(-1, 2)
    with pytest.raises(ValueError):
        Signature(13, 0)


def test_all_signatures_count():
    assert len(all_signatures(4)) == 6
    assert len(all_signatures(4, complex_field=False)) == 5


def test_mixed_signatures_rejected():
    with pytest.raises(SignatureMismatch):
        Signature(2, 0).blade(1) + Signature(1, 1).blade(1)


def test_involution_signs_by_grade():
    sig = Signature(4, 0)
    for k in range(5):
        x = sig.mv(f"proj({{{k}}}, 1 + e1 + e12 + e123 + e1234)")
        r = (-1) ** (k * (k - 1) // 2)
        assert x.rev() == x.scale(r)
        assert x.gi() == x.scale((-1) ** k)
        assert x.cj() == x.scale(r * (-1) ** k)


def test_exact_rational_coefficients():
    sig = Signature(2, 0)
    x = sig.mv("1/3 + 2/3*e12")
    assert x[0] == Fraction(1, 3)
    assert isinstance((x * 3)[0], int)


def test_complex_coefficients():
    sig = Signature.complex(2)
    x = sig.mv("i*e1 + 2")
    assert x[1] == I
    assert (x * x) == sig.mv("4 + 4*i*e1 - 1")
    assert gauss(3, 0) == 3


def test_subspace_specs():
    n = 5
    assert SubspaceSpec.bar(n, 2).dim == 10 + 0
    assert SubspaceSpec.parity(n, 0).dim == 16
    assert SubspaceSpec.center(4).blades() == [0]
    assert SubspaceSpec.center(5).blades() == [0, 31]
    assert SubspaceSpec.grade(n, 2) <= SubspaceSpec.bar(n, 2)
    assert (SubspaceSpec.grade(n, 1) | SubspaceSpec.grade(n, 2)).dim == 15


def test_grade_of_and_text():
    assert grade_of(0b1011) == 3
    assert blade_text(0b1011, 4) == "e124"
    assert blade_text(0b1, 10) == "e{1}"
    assert blade_text(0, 4) == "1"


def test_format_is_canonical():
    sig = Signature(4, 0)
    assert format_multivector(sig.mv("-4*e1234 + 5")) == "5 - 4*e1234"
    assert str(sig.zero()) == "0"


def test_float_backend_roundtrip():
    sig = Signature(3, 0)
    x = sig.mv("1 + 2*e12 - e3")
    f = x.to_float()
    assert np.allclose(f.coeffs, [float(c) for c in x.coeffs])


small_int = st.integers(-3, 3)


@st.composite
def multivectors(draw, sig):
    return Multivector(sig, [draw(small_int) for _ in range(sig.dim)])


SIGS = [Signature(3, 0), Signature(1, 2), Signature(2, 2)]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_product_is_associative(data):
    sig = data.draw(st.sampled_from(SIGS))
    a, b, c = (data.draw(multivectors(sig)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_reversion_is_antiautomorphism(data):
    sig = data.draw(st.sampled_from(SIGS))
    a, b = data.draw(multivectors(sig)), data.draw(multivectors(sig))
    assert (a * b).rev() == b.rev() * a.rev()
    assert (a * b).gi() == a.gi() * b.gi()
    assert (a * b).cj() == b.cj() * a.cj()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_distributivity(data):
    sig = data.draw(st.sampled_from(SIGS))
    a, b, c = (data.draw(multivectors(sig)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
