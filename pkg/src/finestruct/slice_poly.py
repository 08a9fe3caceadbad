"""Slice polynomials, stem/axial representations, and an exact canonical
polynomial form in the commuting scalar x0 and the vector part x_.

The canonical form stores terms x0^a x_^b c with Clifford coefficients c on
the right (left objects) or on the left (right objects).  Evaluation reduces
x_^2 to -r^2, so x_^b becomes (-1)^(b/2) r^b for even b and
(-1)^((b-1)/2) r^(b-1) x_ for odd b.
"""

from __future__ import annotations

from math import comb

from .clifford_core import (
    Multivector,
    ZERO,
    ONE,
    axis_decompose,
    close,
)
from .errors import AxisSingularity

LEFT = "left"
RIGHT = "right"


def _check_side(side: str) -> str:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    return side


def _coerce_coeff(c) -> Multivector:
    if isinstance(c, Multivector):
        return c
    return Multivector.scalar(float(c))


class SlicePolynomial:
    """One-sided polynomial sum_m x^m a_m (left) or sum_m a_m x^m (right)."""

    def __init__(self, coeffs, side: str = LEFT):
        self.side = _check_side(side)
        self.coeffs = [_coerce_coeff(c) for c in coeffs]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def monomial(m: int, coeff=1.0, side: str = LEFT) -> "SlicePolynomial":
        coeffs = [ZERO] * m + [_coerce_coeff(coeff)]
        return SlicePolynomial(coeffs, side)


class XBarPolynomial:
    """Polynomial in the pair (x, conjugate of x).

    Terms are (a, b, c) meaning x^a x̄^b c for left objects and c x^a x̄^b for
    right objects; factor order is preserved.
    """

    def __init__(self, terms, side: str = LEFT):
        self.side = _check_side(side)
        self.terms = [(int(a), int(b), _coerce_coeff(c)) for a, b, c in terms]


class CanonicalPoly:
    """Exact polynomial sum over (a, b) of x0^a x_^b c_ab."""

    def __init__(self, terms=None, side: str = LEFT):
        self.side = _check_side(side)
        self.terms: dict[tuple[int, int], Multivector] = {}
        if terms:
            for (a, b), c in dict(terms).items():
                self._add_term(int(a), int(b), _coerce_coeff(c))

    def _add_term(self, a: int, b: int, c: Multivector) -> None:
        if c.is_zero():
            return
        key = (a, b)
        cur = self.terms.get(key)
        new = c if cur is None else cur + c
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def __add__(self, other: "CanonicalPoly") -> "CanonicalPoly":
        if self.side != other.side:
            raise ValueError("side mismatch")
        out = CanonicalPoly(self.terms, self.side)
        for (a, b), c in other.terms.items():
            out._add_term(a, b, c)
        return out

    def __sub__(self, other: "CanonicalPoly") -> "CanonicalPoly":
        if self.side != other.side:
            raise ValueError("side mismatch")
        out = CanonicalPoly(self.terms, self.side)
        for (a, b), c in other.terms.items():
            out._add_term(a, b, -c)
        return out

    def scale(self, factor: float) -> "CanonicalPoly":
        return CanonicalPoly(
            {k: c * factor for k, c in self.terms.items()}, self.side
        )

    def is_zero(self, atol: float = 0.0) -> bool:
        return all(c.is_zero(atol) for c in self.terms.values())

    def equals(self, other: "CanonicalPoly", atol: float = 0.0) -> bool:
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            a = self.terms.get(k, ZERO)
            b = other.terms.get(k, ZERO)
            if not (a - b).is_zero(atol):
                return False
        return True

    def __repr__(self):
        items = ", ".join(f"x0^{a} x_^{b}: {c!r}" for (a, b), c in sorted(self.terms.items()))
        return f"CanonicalPoly({items})"


class StemPair:
    """Pair of stem functions (u, v) -> Multivector with even-odd symmetry."""

    def __init__(self, alpha, beta):
        self.alpha = alpha
        self.beta = beta


def eval_slice_poly(P: SlicePolynomial, x: Multivector) -> Multivector:
    """Horner evaluation respecting the side of the coefficients."""
    acc = ZERO
    if P.side == LEFT:
        for c in reversed(P.coeffs):
            acc = x * acc + c
    else:
        for c in reversed(P.coeffs):
            acc = acc * x + c
    return acc


def extend_stem(stem: StemPair, x: Multivector, atol: float = 1e-12) -> Multivector:
    """Axial extension alpha(x0, r) + omega beta(x0, r) of a stem pair."""
    x0, r, omega = axis_decompose(x)
    beta = _coerce_coeff(stem.beta(x0, r))
    if omega is None:
        if beta.norm_inf() > atol:
            raise AxisSingularity("odd stem part does not vanish on the axis")
        return _coerce_coeff(stem.alpha(x0, 0.0))
    return _coerce_coeff(stem.alpha(x0, r)) + omega * beta


def to_canonical(Q) -> CanonicalPoly:
    """Exact binomial expansion into the (x0, x_) canonical form."""
    if isinstance(Q, CanonicalPoly):
        return Q
    if isinstance(Q, SlicePolynomial):
        terms = [(m, 0, c) for m, c in enumerate(Q.coeffs) if not c.is_zero()]
        xbar = XBarPolynomial(terms, Q.side)
    elif isinstance(Q, XBarPolynomial):
        xbar = Q
    else:
        raise TypeError(f"cannot canonicalize {type(Q)!r}")

    out = CanonicalPoly(side=xbar.side)
    for a, b, c in xbar.terms:
        # x^a = sum_i C(a,i) x0^(a-i) x_^i ; x̄^b = sum_j C(b,j) x0^(b-j) (-x_)^j
        for i in range(a + 1):
            for j in range(b + 1):
                coef = comb(a, i) * comb(b, j) * ((-1) ** j)
                out._add_term(a + b - i - j, i + j, c * coef)
    return out


def canonical_eval(C: CanonicalPoly, x: Multivector) -> Multivector:
    """Numeric substitution with x_^2 reduced to -r^2."""
    x0, r, omega = axis_decompose(x)
    acc = ZERO
    for (a, b), c in C.terms.items():
        scalar = (x0 ** a) * ((-1.0) ** (b // 2)) * (r ** (b - (b % 2)))
        if b % 2 == 0:
            factor = Multivector.scalar(scalar)
        else:
            if omega is None:
                continue
            factor = omega * (scalar * r)
        acc = acc + (factor * c if C.side == LEFT else c * factor)
    return acc


def eval_xbar_poly(Q: XBarPolynomial, x: Multivector) -> Multivector:
    """Direct evaluation via multivector powers (oracle for to_canonical)."""
    from .clifford_core import paravector_conjugate

    xbar = paravector_conjugate(x)
    acc = ZERO
    for a, b, c in Q.terms:
        p = ONE
        for _ in range(a):
            p = p * x
        for _ in range(b):
            p = p * xbar
        acc = acc + (p * c if Q.side == LEFT else c * p)
    return acc


def is_intrinsic(P: SlicePolynomial, atol: float = 0.0) -> bool:
    """True iff every coefficient is a real scalar."""
    return all((c - Multivector.scalar(c[0])).is_zero(atol) for c in P.coeffs)


def is_slice(C: CanonicalPoly, atol: float = 1e-11) -> bool:
    """True iff the canonical polynomial equals the expansion of some
    one-sided slice polynomial sum_m x^m a_m.

    The expansion of x^m has coefficient C(m, b) on x0^(m-b) x_^b, so the
    canonical coefficients must satisfy c_ab = C(a+b, b) a_(a+b) for a single
    coefficient sequence a_m.
    """
    degree = max((a + b for a, b in C.terms), default=-1)
    for m in range(degree + 1):
        candidate = None
        for b in range(m + 1):
            c = C.terms.get((m - b, b), ZERO)
            value = c * (1.0 / comb(m, b))
            if candidate is None:
                candidate = value
            elif not close(candidate, value, atol=atol, rtol=1e-10):
                return False
    return True


def slice_from_canonical(C: CanonicalPoly) -> SlicePolynomial | None:
    """Recover the slice polynomial whose expansion is C, or None."""
    if not is_slice(C):
        return None
    degree = max((a + b for a, b in C.terms), default=-1)
    coeffs = []
    for m in range(degree + 1):
        coeffs.append(C.terms.get((m, 0), ZERO))
    return SlicePolynomial(coeffs, C.side)


def stem_of_intrinsic(P: SlicePolynomial) -> StemPair:
    """Stem pair (alpha, beta) of an intrinsic slice polynomial, evaluated
    through the complex polynomial sum a_m (u + i v)^m."""
    import numpy as np

    reals = [c[0] for c in P.coeffs]

    def alpha(u, v):
        z = complex(u, v)
        return Multivector.scalar(float(np.real(sum(a * z ** m for m, a in enumerate(reals)))))

    def beta(u, v):
        z = complex(u, v)
        return Multivector.scalar(float(np.imag(sum(a * z ** m for m, a in enumerate(reals)))))

    return StemPair(alpha, beta)
