from fractions import Fraction

import pytest

from projrigid.field import (
    FieldElement,
    FieldMismatchError,
    ParseError,
    is_squarefree,
    parse_element,
    render,
)


def F(text, d=3):
    return parse_element(text, d)


def test_sqrt_and_imaginary_unit():
    r, i = FieldElement.sqrt_d(3), FieldElement.imag_unit(3)
    assert r * r == 3
    assert i * i == -1
    assert (i * r) * (i * r) == -3


def test_cube_roots_of_unity():
    w = F("1/2 - 1/2*i*r")
    assert w * F("1/2 + 1/2*i*r") == 1
    assert w.inv() == F("1/2 + 1/2*i*r")
    assert w ** 6 == 1 and w ** 3 == -1


def test_inverse_through_norm():
    x = F("1 + r")
    assert x.inv() == F("-1/2 + 1/2*r")
    assert x.norm() == 4
    y = F("2/3 - 5*i + 7*i*r")
    assert y * y.inv() == 1
    with pytest.raises(ZeroDivisionError):
        FieldElement.zero(3).inv()


def test_d_equal_one_folds_sqrt():
    x = FieldElement(1, 2, 3, 4, d=1)
    assert x == parse_element("3 + 7*i", 1)
    assert x.b == 0 and x.e == 0


@pytest.mark.parametrize("text", ["0", "3/2", "-1/2 + 1/2*i*r", "r", "-1*r", "i - 2*i*r",
                                  "5 - r + i + i*r", "-7/9*i"])
def test_render_round_trip(text):
    x = F(text)
    assert F(render(x)) == x
    assert render(F(render(x))) == render(x)


def test_render_forms():
    assert render(F("-1/2+1/2*i*r")) == "-1/2 + 1/2*i*r"
    assert render(F("-r")) == "-1*r"
    assert render(F("2 - r")) == "2 - r"
    assert render(FieldElement.zero(3)) == "0"


@pytest.mark.parametrize("bad,pos", [("1 +", 3), ("2*q", 1), ("1/0", 2), ("", 0), ("1 2", 1)])
def test_parse_errors_report_position(bad, pos):
    with pytest.raises(ParseError) as info:
        parse_element(bad, 3)
    assert info.value.position >= 0
    assert info.value.position <= max(pos, len(bad))


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        FieldElement.sqrt_d(3) + FieldElement.sqrt_d(2)


def test_squarefree():
    assert [n for n in range(1, 13) if is_squarefree(n)] == [1, 2, 3, 5, 6, 7, 10, 11]
    with pytest.raises(ValueError):
        FieldElement(1, d=4)


def test_coefficients_and_parts():
    x = F("1/2 + 3*r - i + 2/5*i*r")
    assert x.coefficients() == (Fraction(1, 2), 3, -1, Fraction(2, 5))
    assert x.real_part() == F("1/2 + 3*r")
    assert x.imag_part() == F("-1 + 2/5*r")
    assert x.conj_i() == F("1/2 + 3*r + i - 2/5*i*r")
    assert abs(x.to_float() - complex(0.5 + 3 * 3 ** 0.5, -1 + 0.4 * 3 ** 0.5)) < 1e-12


def test_equality_with_rationals_and_hash():
    assert F("3/4") == Fraction(3, 4)
    assert F("2") == 2
    assert hash(F("1/2 + r")) == hash(F("r + 2/4"))
