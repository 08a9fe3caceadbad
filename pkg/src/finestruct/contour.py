"""Quadrature over circles in a slice plane, realizing the Cauchy formula and
the fine-structure integral representations.

A circle of radius R centered at c on the real axis inside the plane C_J is
parametrized s(θ) = c + R(cos θ + J sin θ).  With ds = J R e^{Jθ} dθ the
slice measure is ds_J = ds·(−J) = R e^{Jθ} dθ; the uniform trapezoid rule is
spectrally accurate for the analytic periodic integrands used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, pi, sin, sqrt

from .clifford_core import Multivector, ZERO, check_imaginary_unit
from .errors import DegenerateRadius, PointOutsideDomain
from .fueter_ops import KIND_WORDS, apply_word
from .kernels import fine_kernel
from .slice_poly import LEFT, SlicePolynomial, canonical_eval, eval_slice_poly


@dataclass(frozen=True)
class Contour:
    J: Multivector
    center: float
    radius: float
    nodes: tuple      # s_i on the circle
    dsj: tuple        # ds_J value times quadrature weight at each node


def circle(center: float, radius: float, J: Multivector, N: int = 256) -> Contour:
    if radius <= 0.0:
        raise DegenerateRadius("radius must be positive")
    if N < 16:
        raise ValueError("at least 16 nodes required")
    check_imaginary_unit(J)
    weight = 2.0 * pi / N
    nodes = []
    dsj = []
    for i in range(N):
        theta = weight * i
        c, s = cos(theta), sin(theta)
        nodes.append(Multivector.scalar(center + radius * c) + J * (radius * s))
        dsj.append((Multivector.scalar(c) + J * s) * (radius * weight))
    return Contour(J, float(center), float(radius), tuple(nodes), tuple(dsj))


def slice_integral(K, c: Contour, f, side: str = LEFT) -> Multivector:
    """(1/2π) Σ K(s_i)·dsJ_i·f(s_i) (Left) or f(s_i)·dsJ_i·K(s_i) (Right).

    Accumulation is sequential in node order for reproducibility.
    """
    acc = ZERO
    for s, w in zip(c.nodes, c.dsj):
        if side == LEFT:
            acc = acc + K(s) * w * f(s)
        else:
            acc = acc + f(s) * w * K(s)
    return acc * (1.0 / (2.0 * pi))


def _check_inside(x: Multivector, c: Contour) -> None:
    dist = sqrt((x[0] - c.center) ** 2
                + sum(x[1 << i] ** 2 for i in range(5)))
    if dist >= c.radius:
        raise PointOutsideDomain("x is not strictly inside the contour")


def cauchy_eval(P: SlicePolynomial, x: Multivector, c: Contour) -> Multivector:
    """Cauchy reproduction of a slice polynomial at an interior point."""
    _check_inside(x, c)
    return fine_integral_eval("Cauchy", P, x, c)


def fine_integral_eval(kind: str, P: SlicePolynomial, x: Multivector,
                       c: Contour) -> Multivector:
    """(1/2π)∫ S⁻¹_kind(s, x) ds_J P(s); equals the operator word of the
    kind applied to P, evaluated at x."""
    _check_inside(x, c)

    def K(s):
        return fine_kernel(kind, P.side, s, x)

    def f(s):
        return eval_slice_poly(P, s)

    return slice_integral(K, c, f, P.side)


def word_eval(kind: str, P: SlicePolynomial, x: Multivector) -> Multivector:
    """Exact oracle: the operator word of the kind applied to P, at x."""
    return canonical_eval(apply_word(KIND_WORDS[kind], P), x)
