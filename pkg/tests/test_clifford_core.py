import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finestruct.clifford_core import (
    GRADE,
    ONE,
    PARAVECTOR_MASKS,
    ZERO,
    Multivector,
    axis_decompose,
    blade_product,
    check_imaginary_unit,
    embed,
    is_paravector,
    mv_mul,
    paravector_conjugate,
    paravector_inverse,
    paravector_norm_sq,
)
from finestruct.errors import NotImaginaryUnit, ZeroParavector

small_ints = st.integers(min_value=-4, max_value=4)
mv_strategy = st.builds(
    lambda coeffs: Multivector(np.array(coeffs, dtype=float)),
    st.lists(small_ints, min_size=32, max_size=32),
)


def test_generators_square_to_minus_one():
    for i in range(5):
        e = Multivector.basis(1 << i)
        assert e * e == Multivector.scalar(-1.0)


def test_generators_anticommute():
    for i in range(5):
        for j in range(i + 1, 5):
            ei, ej = Multivector.basis(1 << i), Multivector.basis(1 << j)
            assert ei * ej + ej * ei == ZERO


def test_blade_product_signs():
    # e1 * e12 = e1 e1 e2 = -e2
    sign, mask = blade_product(0b00001, 0b00011)
    assert (sign, mask) == (-1, 0b00010)
    # e12 * e12 = -1
    sign, mask = blade_product(0b00011, 0b00011)
    assert (sign, mask) == (-1, 0)


def test_grades():
    assert GRADE[0] == 0
    assert GRADE[0b10101] == 3
    assert GRADE[0b11111] == 5


@given(mv_strategy, mv_strategy, mv_strategy)
@settings(max_examples=60, deadline=None)
def test_product_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(mv_strategy, mv_strategy, mv_strategy)
@settings(max_examples=60, deadline=None)
def test_product_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(mv_strategy)
@settings(max_examples=60, deadline=None)
def test_one_is_identity(a):
    assert ONE * a == a
    assert a * ONE == a


def test_mv_mul_matches_operator():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = Multivector(rng.normal(size=32))
        b = Multivector(rng.normal(size=32))
        assert (mv_mul(a, b) - a * b).norm_inf() == 0.0


def test_paravector_roundtrip():
    x = Multivector.paravector(1.0, 2.0, 0.0, -1.0, 0.5, 0.25)
    assert is_paravector(x)
    assert x[0] == 1.0
    assert x[1] == 2.0
    assert x[16] == 0.25


def test_paravector_inverse():
    x = Multivector.paravector(0.5, -1.0, 2.0, 0.0, 0.0, 1.5)
    assert (x * paravector_inverse(x) - ONE).norm_inf() < 1e-14
    assert (paravector_inverse(x) * x - ONE).norm_inf() < 1e-14


def test_paravector_conjugate_product_is_norm():
    x = Multivector.paravector(0.5, -1.0, 2.0, 0.0, 0.25, 1.5)
    n = paravector_norm_sq(x)
    assert (x * paravector_conjugate(x)
            - Multivector.scalar(n)).norm_inf() < 1e-14


def test_zero_paravector_inverse_raises():
    with pytest.raises(ZeroParavector):
        paravector_inverse(ZERO)


def test_axis_decompose_and_embed():
    x = Multivector.paravector(1.5, 3.0, 4.0)
    x0, r, omega = axis_decompose(x)
    assert x0 == 1.5
    assert abs(r - 5.0) < 1e-14
    assert (omega * omega + ONE).norm_inf() < 1e-14
    assert (embed(x0, r, omega) - x).norm_inf() < 1e-14


def test_axis_decompose_on_axis():
    x0, r, omega = axis_decompose(Multivector.scalar(2.0))
    assert (x0, r) == (2.0, 0.0)
    assert omega is None


def test_check_imaginary_unit():
    check_imaginary_unit(Multivector.basis(2))
    v = Multivector.paravector(0.0, 0.6, 0.8)
    check_imaginary_unit(v)
    with pytest.raises(NotImaginaryUnit):
        check_imaginary_unit(Multivector.paravector(1.0, 1.0))
    with pytest.raises(NotImaginaryUnit):
        check_imaginary_unit(Multivector.paravector(0.0, 2.0))


def test_grade_part():
    x = Multivector.paravector(1.0, 2.0, 3.0)
    assert x.grade_part(0) == Multivector.scalar(1.0)
    assert x.grade_part(1) == x - Multivector.scalar(1.0)


def test_paravector_masks():
    assert PARAVECTOR_MASKS == (0, 1, 2, 4, 8, 16)
