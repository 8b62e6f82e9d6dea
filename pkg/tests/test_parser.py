import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cliffgroups import Multivector, Signature
from cliffgroups.errors import IndexOutOfRange, ParseError, SingularError
from cliffgroups.parser import BinOp, Blade, Call, Lit, Neg, Pow, evaluate, parse_expression
from cliffgroups.scalars import gauss


CL4 = Signature(4, 0)


@pytest.mark.parametrize("text,out", [
    ("psi(1 + 2*e123)", "5"),
    ("chi(1 + 2*e123)", "-3 + 4*e123"),
    ("psi(e12 + 2*e34)", "5 - 4*e1234"),
    ("proj({0,n}, psi(1 + 2*e1234))", "5 + 4*e1234"),
    ("e21", "-e12"),
    ("e1*e1", "1"),
    ("(1 + e1)^2", "2 + 2*e1"),
    ("e12^-1", "-e12"),
    ("-(-e3)", "e3"),
    ("1.5 + 1/4", "7/4"),
    ("rev(e123) + gi(e1) + cj(e12)", "-e1 - e12 - e123"),
    ("2*3*e1 - 6*e1", "0"),
])
def test_evaluate(text, out):
    assert str(evaluate(text, CL4)) == out


def test_inverse_in_cl13():
    assert str(evaluate("inv(1 + e1234)", Signature(1, 3))) == "1/2 - 1/2*e1234"


def test_singular_inverse():
    with pytest.raises(SingularError):
        evaluate("inv(1 + e1)", CL4)


def test_ast_shape():
    node = parse_expression("-e12 + 2*e3^2", CL4)
    assert node == BinOp("+", Neg(Blade((1, 2))), BinOp("*", Lit(2), Pow(Blade((3,)), 2)))
    assert parse_expression("proj({1}, e1)", CL4) == Call("proj", (Blade((1,)),), frozenset({1}))


def test_brace_blades_for_large_n():
    sig = Signature(10, 0)
    x = evaluate("e{1,10} + e{10}", sig)
    assert str(x) == "e{10} + e{1,10}" or str(x) == "e{1,10} + e{10}"
    with pytest.raises(ParseError):
        evaluate("e12", sig)


def test_complex_unit():
    sig = Signature.complex(2)
    assert str(evaluate("i*i", sig)) == "-1"
    with pytest.raises(ParseError):
        evaluate("i", Signature(2, 0))


@pytest.mark.parametrize("text,offset", [
    ("", 0), ("1 +", 3), ("e", 1), ("1 + e5", 5), ("foo(e1)", 0), ("(1 + e1", 7), ("1 2", 2),
    ("e{1,9}", 4), ("proj({7}, e1)", 6), ("1/0", 2), ("1..2", 0),
])
def test_errors_report_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        evaluate(text, CL4)
    assert info.value.offset == offset
    assert info.value.expected


def test_index_errors_have_own_class():
    with pytest.raises(IndexOutOfRange):
        evaluate("e15", CL4)


def test_offsets_are_bytes():
    with pytest.raises(ParseError) as info:
        evaluate("1 + é", CL4)
    assert info.value.offset == 4
    with pytest.raises(ParseError) as info:
        evaluate("éé", CL4)
    assert info.value.offset == 0


def test_identity_hint():
    with pytest.raises(ParseError, match="identity as 1"):
        evaluate("e + 2*e123", CL4)


SIGS = [Signature(4, 0), Signature(1, 3), Signature.complex(3), Signature(10, 0)]


@st.composite
def elements(draw):
    sig = draw(st.sampled_from(SIGS))
    data = {}
    for _ in range(draw(st.integers(0, 8))):
        c = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 5)))
        if sig.is_complex:
            c = gauss(c, Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3))))
        data[draw(st.integers(0, sig.dim - 1))] = c
    return Multivector.from_dict(sig, data)


@settings(max_examples=120, deadline=None)
@given(elements())
def test_print_parse_roundtrip(x):
    assert evaluate(str(x), x.sig) == x


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="e0123456789+-*/^(){},. inpsrvcjgx", max_size=20))
def test_fuzz_never_crashes(text):
    try:
        evaluate(text, CL4)
    except (ParseError, SingularError):
        pass


def test_mutation_fuzz():
    rng = random.Random(3)
    base = ["psi(e12 + 2*e34)", "inv(2 + e1) * e23", "proj({0,2}, (1 + e1)^3)", "1/2*e1234 - 3"]
    for _ in range(400):
        t = list(rng.choice(base))
        for _ in range(rng.randint(1, 3)):
            i = rng.randrange(len(t))
            op = rng.randint(0, 2)
            if op == 0:
                del t[i]
            elif op == 1:
                t.insert(i, rng.choice("e1({,)*+^-9n"))
            else:
                t[i] = rng.choice("e2}(/ .")
        try:
            evaluate("".join(t), CL4)
        except (ParseError, SingularError):
            pass
