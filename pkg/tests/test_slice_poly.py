import numpy as np
import pytest

from finestruct.clifford_core import Multivector
from finestruct.errors import AxisSingularity
from finestruct.slice_poly import (
    LEFT,
    RIGHT,
    CanonicalPoly,
    SlicePolynomial,
    StemPair,
    XBarPolynomial,
    canonical_eval,
    eval_slice_poly,
    eval_xbar_poly,
    extend_stem,
    is_intrinsic,
    is_slice,
    slice_from_canonical,
    stem_of_intrinsic,
    to_canonical,
)


def rand_pv(rng, scale=1.0):
    return Multivector.paravector(*(rng.normal(size=6) * scale))


def test_monomial_expansion_x2():
    C = to_canonical(SlicePolynomial.monomial(2))
    # x^2 = x0^2 + 2 x0 x_ + x_^2
    assert C.terms[(2, 0)] == Multivector.scalar(1.0)
    assert C.terms[(1, 1)] == Multivector.scalar(2.0)
    assert C.terms[(0, 2)] == Multivector.scalar(1.0)


def test_to_canonical_matches_direct_evaluation():
    rng = np.random.default_rng(5)
    for side in (LEFT, RIGHT):
        Q = XBarPolynomial(
            [(a, b, Multivector(rng.normal(size=32)))
             for a in range(4) for b in range(3)], side)
        C = to_canonical(Q)
        for _ in range(5):
            x = rand_pv(rng)
            assert (canonical_eval(C, x)
                    - eval_xbar_poly(Q, x)).norm_inf() < 1e-12


def test_canonical_eval_matches_horner():
    rng = np.random.default_rng(7)
    for side in (LEFT, RIGHT):
        P = SlicePolynomial([Multivector(rng.normal(size=32))
                             for _ in range(7)], side)
        C = to_canonical(P)
        for _ in range(5):
            x = rand_pv(rng)
            ref = eval_slice_poly(P, x)
            assert ((canonical_eval(C, x) - ref).norm_inf()
                    < 1e-12 * (1.0 + ref.norm_inf()))


def test_is_slice_and_recovery():
    rng = np.random.default_rng(9)
    P = SlicePolynomial([Multivector(rng.normal(size=32)) for _ in range(6)])
    C = to_canonical(P)
    assert is_slice(C)
    R = slice_from_canonical(C)
    assert R is not None
    assert all((a - b).norm_inf() < 1e-12
               for a, b in zip(R.coeffs, P.coeffs))


def test_non_slice_detected():
    C = CanonicalPoly({(1, 1): Multivector.scalar(1.0)})
    assert not is_slice(C)
    assert slice_from_canonical(C) is None


def test_is_intrinsic():
    assert is_intrinsic(SlicePolynomial([1.0, -2.0, 3.0]))
    assert not is_intrinsic(
        SlicePolynomial([Multivector.basis(1), Multivector.scalar(1.0)]))


def test_stem_extension_reproduces_polynomial():
    rng = np.random.default_rng(11)
    P = SlicePolynomial([0.5, -1.0, 2.0, 0.25])
    stem = stem_of_intrinsic(P)
    for _ in range(5):
        x = rand_pv(rng)
        assert (extend_stem(stem, x)
                - eval_slice_poly(P, x)).norm_inf() < 1e-12
    # real axis: beta vanishes, extension well defined
    x = Multivector.scalar(0.7)
    assert (extend_stem(stem, x) - eval_slice_poly(P, x)).norm_inf() < 1e-12


def test_axis_singularity_for_odd_stem():
    stem = StemPair(lambda u, v: 0.0, lambda u, v: 1.0)
    with pytest.raises(AxisSingularity):
        extend_stem(stem, Multivector.scalar(1.0))


def test_canonical_poly_arithmetic():
    a = CanonicalPoly({(1, 0): Multivector.scalar(2.0)})
    b = CanonicalPoly({(1, 0): Multivector.scalar(-2.0),
                       (0, 1): Multivector.scalar(1.0)})
    s = a + b
    assert (1, 0) not in s.terms
    assert s.terms[(0, 1)] == Multivector.scalar(1.0)
    assert (s - s).is_zero()


def test_side_mismatch_rejected():
    a = CanonicalPoly(side=LEFT)
    b = CanonicalPoly(side=RIGHT)
    with pytest.raises(ValueError):
        a + b
