import numpy as np
import pytest

from cliffgroups import Signature, SubspaceSpec, all_signatures
from cliffgroups.errors import SingularError
from cliffgroups.matrix_rep import (
    centralizer_basis, conjugation_matrix, exp_mv, inverse, is_invertible, left_matrix, minimal_polynomial,
)


@pytest.mark.parametrize("sig", [Signature(3, 0), Signature(2, 2), Signature.complex(3)], ids=str)
def test_inverse_methods_agree(sig):
    x = sig.mv("2 + e1 - e12 + 3*e" + "".join(str(i) for i in range(1, sig.n + 1)))
    a = inverse(x)
    b = inverse(x, method="matrix")
    assert a == b
    assert a * x == sig.scalar(1) and x * a == sig.scalar(1)


def test_inverse_of_cl13_example():
    sig = Signature(1, 3)
    assert str(inverse(sig.mv("1 + e1234"))) == "1/2 - 1/2*e1234"


def test_zero_divisor_detected():
    sig = Signature(2, 0)
    x = sig.mv("1 + e1")
    with pytest.raises(SingularError):
        inverse(x)
    with pytest.raises(SingularError):
        inverse(x, method="matrix")
    assert not is_invertible(x)
    assert not is_invertible(sig.zero())


def test_minimal_polynomial_of_blade():
    sig = Signature(3, 0)
    # e12^2 = -1, so x^2 + 1
    assert minimal_polynomial(sig.mv("e12")) == [1, 0, 1]


def test_left_matrix_is_product():
    sig = Signature(2, 1)
    a, b = sig.mv("1 + 2*e13"), sig.mv("e2 - e123")
    L = left_matrix(a).entries
    assert list(L.dot(b.coeffs)) == list((a * b).coeffs)


def test_conjugation_matrix_maps_blades():
    sig = Signature(1, 3)
    T = sig.mv("1 + e1234")
    C = conjugation_matrix(T)
    img = C.image(1)
    assert str(img) == "-e234"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_centralizers(n):
    for sig in all_signatures(n):
        even = centralizer_basis(SubspaceSpec.parity(n, 0), sig)
        assert sorted(str(x) for x in even) == sorted({"1", str(sig.pseudoscalar())})
        allg = centralizer_basis(SubspaceSpec.all(n), sig)
        expected = ["1"] if n % 2 == 0 else ["1", str(sig.pseudoscalar())]
        assert sorted(str(x) for x in allg) == sorted(expected)


def test_exp_of_bivector_is_rotor():
    sig = Signature(3, 0).with_backend("float")
    t = 0.7
    R = exp_mv(sig.mv("e12").scale(t))
    assert np.isclose(R[0], np.cos(t)) and np.isclose(R[3], np.sin(t))


def test_exp_of_zero_is_one():
    sig = Signature(2, 0).with_backend("float")
    assert np.allclose(exp_mv(sig.zero()).coeffs, [1, 0, 0, 0])
