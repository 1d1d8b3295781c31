import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bifourier.bicomplex import E1, I1, I2, J, Bicomplex, to_idempotent
from bifourier.errors import BifourierError, DSLSyntaxError, NotRational, UnknownIdentifier, ZeroDenominator
from bifourier.parser import (
    BinOp,
    Neg,
    Num,
    Pow,
    Var,
    evaluate,
    lower_to_rational,
    parse,
    parse_bicomplex,
    parse_spectrum,
    render_spectrum,
)
from bifourier.rational import ComplexRational
from bifourier.transform import BicomplexRational

from corpus import CORPUS, random_expressions


def _close(a: ComplexRational, b: ComplexRational, tol=1e-12) -> bool:
    if (a.num.degree, a.den.degree) != (b.num.degree, b.den.degree):
        return False
    pairs = list(zip(a.num.coeffs, b.num.coeffs)) + list(zip(a.den.coeffs, b.den.coeffs))
    return all(abs(x - y) <= tol * max(1.0, abs(y)) for x, y in pairs)


class TestParse:
    def test_example1(self):
        F = parse_spectrum("2/(1 + w^2)")
        want = ComplexRational.from_coeffs([2], [1, 0, 1])
        assert F.comp1 == want and F.comp2 == want

    def test_identity(self):
        F = parse_spectrum("w")
        assert F.comp1.num.coeffs == (0, 1)
        assert F.comp1.den.coeffs == (1,)

    def test_example2(self):
        F = parse_spectrum("0.5*(1/(w + 2 + i1/1) - 1/(w - 2 + i1/1))")
        # 0.5*((w-2+i) - (w+2+i)) / ((w+i)^2 - 4) = -2 / (w^2 + 2i w - 5)
        want = ComplexRational.from_coeffs([-2], [-5, 2j, 1])
        assert _close(F.comp1, want) and _close(F.comp2, want)

    def test_e1_kills_second_component(self):
        F = parse_spectrum("e1 * (1/(w - i1))")
        assert _close(F.comp1, ComplexRational.from_coeffs([1], [-1j, 1]))
        assert F.comp2.is_zero()

    def test_zero_divisor_denominator(self):
        with pytest.raises(ZeroDenominator):
            parse_spectrum("1/e2")

    def test_i2_coefficient_projects_to_plus_minus_i(self):
        F = parse_spectrum("i2/(w^2 + 4)")
        # i2 = -i*e1 + i*e2
        assert _close(F.comp1, ComplexRational.from_coeffs([-1j], [4, 0, 1]))
        assert _close(F.comp2, ComplexRational.from_coeffs([1j], [4, 0, 1]))

    def test_precedence(self):
        a = parse_spectrum("1+2*w")
        b = parse_spectrum("(1+2)*w")
        assert a != b
        assert a.comp1.num.coeffs == (1, 2)
        assert b.comp1.num.coeffs == (0, 3)

    def test_unary_minus_binds_looser_than_power(self):
        assert parse("-w^2") == Neg(Pow(Var(), Num(2.0)))
        assert parse_spectrum("-w^2").comp1.num.coeffs == (0, 0, -1)
        assert parse_spectrum("(-w)^2").comp1.num.coeffs == (0, 0, 1)

    def test_left_associativity(self):
        assert parse("1-2-3") == BinOp("-", BinOp("-", Num(1.0), Num(2.0)), Num(3.0))
        assert parse_bicomplex("8/4/2") == Bicomplex(1)

    def test_whitespace_and_exponents(self):
        assert parse_bicomplex("  1.5e1 +\t.5 ") == Bicomplex(15.5)
        assert parse_bicomplex("2E-2") == Bicomplex(0.02)

    def test_cancellation_gives_lowest_terms(self):
        F = parse_spectrum("(w - 1)/((w - 1)*(w + 2*i1))")
        assert F.comp1.num.degree == 0 and F.comp1.den.degree == 1

    @pytest.mark.parametrize("src,offset", [("(1+", 3), ("1 + * w", 4), ("w)", 1), ("", 0), ("2 $ w", 2)])
    def test_syntax_errors(self, src, offset):
        with pytest.raises(DSLSyntaxError) as info:
            parse(src)
        assert info.value.offset == offset
        assert info.value.kind == "SyntaxError"

    def test_syntax_error_lists_expected_tokens(self):
        with pytest.raises(DSLSyntaxError) as info:
            parse("(1 + w")
        assert info.value.expected == ("')'",)

    def test_byte_offsets(self):
        with pytest.raises(DSLSyntaxError) as info:
            parse("ω + 1")
        assert info.value.offset == 0
        with pytest.raises(DSLSyntaxError) as info:
            parse("1 + ω")
        assert info.value.offset == 4

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifier) as info:
            parse("sin(w)")
        assert info.value.name == "sin" and info.value.offset == 0

    @pytest.mark.parametrize("src", ["w^w", "w^(1/2)", "w^(0-1)", "2^i1"])
    def test_not_rational(self, src):
        with pytest.raises(NotRational):
            parse_spectrum(src)


class TestBicomplexLiterals:
    def test_units(self):
        assert parse_bicomplex("i1") == I1
        assert parse_bicomplex("i2") == I2
        assert parse_bicomplex("j") == J
        assert parse_bicomplex("e1") == E1

    def test_cartesian_rendering_reparses(self):
        x = Bicomplex(1.25, -2.0, 0.5, -3.75)
        assert parse_bicomplex(str(x)) == x

    def test_idempotent_rendering_reparses(self):
        x = Bicomplex(1.25, -2.0, 0.5, -3.75)
        back = parse_bicomplex(x.idempotent_str())
        assert np.allclose(back.components(), x.components(), rtol=0, atol=1e-15)

    def test_variable_rejected(self):
        with pytest.raises(NotRational):
            parse_bicomplex("1 + w")


@pytest.mark.parametrize("src", CORPUS)
def test_corpus_round_trip(src):
    F = parse_spectrum(src)
    G = parse_spectrum(render_spectrum(F))
    assert _close(G.comp1, F.comp1) and _close(G.comp2, F.comp2)


def test_corpus_size():
    assert len(CORPUS) >= 30


def _eval_agrees(src, ws, rel=1e-9):
    node = parse(src)
    F = lower_to_rational(node)
    for w in ws:
        try:
            direct = to_idempotent(evaluate(node, w))
        except ZeroDivisionError:
            continue
        lowered = to_idempotent(F(w))
        # relative to the bicomplex magnitude: the Cartesian route cancels when one projection is tiny
        scale = max(abs(direct.p1), abs(direct.p2))
        if not math.isfinite(scale):
            continue
        for a, b in zip(direct, lowered):
            assert abs(a - b) <= rel * max(scale, 1e-300), (src, w, a, b)


def test_evaluation_oracle_corpus():
    rng = np.random.default_rng(40)
    for src in CORPUS:
        _eval_agrees(src, rng.uniform(-5, 5, 100))


def test_evaluation_oracle_random_expressions():
    rng = np.random.default_rng(41)
    checked = 0
    for src in random_expressions(42, 200):
        try:
            parse_spectrum(src)
        except ZeroDenominator:
            continue
        _eval_agrees(src, rng.uniform(-5, 5, 100))
        checked += 1
    assert checked >= 100


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_random_expression_round_trip(seed):
    (src,) = random_expressions(seed, 1)
    try:
        F = parse_spectrum(src)
    except BifourierError:
        return
    G = parse_spectrum(render_spectrum(F))
    assert _close(G.comp1, F.comp1, 1e-10) and _close(G.comp2, F.comp2, 1e-10)


def test_render_zero_and_split_components():
    assert render_spectrum(BicomplexRational.zero()) == "0"
    text = render_spectrum(parse_spectrum("e1/(w + i1)"))
    assert text.startswith("e1*") and "e2" not in text
