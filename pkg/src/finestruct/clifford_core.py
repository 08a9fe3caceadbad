"""Exact arithmetic in the real Clifford algebra with five anticommuting
generators, each squaring to -1, together with its paravector subspace.

A multivector is stored densely as 32 real coefficients indexed by the 5-bit
mask of the blade's index set (bit i-1 set means the generator e_i is a
factor, in ascending order).
"""

from __future__ import annotations

import numpy as np

from .errors import NotImaginaryUnit, ZeroParavector

N_GENERATORS = 5
DIM = 1 << N_GENERATORS

ATOL_DEFAULT = 1e-12
RTOL_DEFAULT = 1e-10


def blade_product(a: int, b: int) -> tuple[int, int]:
    """Product of two basis blades given as bit masks.

    Returns (sign, result_mask) where sign is +1 or -1 and result_mask is the
    symmetric difference of the index sets.  The sign counts the
    transpositions needed to interleave the generators plus a -1 for every
    repeated generator (e_i^2 = -1).
    """
    sign = 1
    acc = a
    for i in range(N_GENERATORS):
        if not (b >> i) & 1:
            continue
        higher = acc >> (i + 1)
        if bin(higher).count("1") & 1:
            sign = -sign
        if (acc >> i) & 1:
            sign = -sign
            acc &= ~(1 << i)
        else:
            acc |= 1 << i
    return sign, a ^ b


def _build_tables() -> tuple[np.ndarray, np.ndarray]:
    signs = np.empty((DIM, DIM), dtype=np.float64)
    index = np.empty((DIM, DIM), dtype=np.intp)
    for a in range(DIM):
        for b in range(DIM):
            s, r = blade_product(a, b)
            signs[a, b] = s
            index[a, b] = r
    return signs, index


SIGN_TABLE, INDEX_TABLE = _build_tables()

GRADE = np.array([bin(m).count("1") for m in range(DIM)])
PARAVECTOR_MASKS = (0, 1, 2, 4, 8, 16)


class Multivector:
    """Immutable value of the 32-dimensional real Clifford algebra."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            c = np.zeros(DIM)
        else:
            c = np.asarray(coeffs, dtype=np.float64)
            if c.shape != (DIM,):
                raise ValueError(f"expected {DIM} blade coefficients")
            c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def scalar(value: float) -> "Multivector":
        c = np.zeros(DIM)
        c[0] = value
        return Multivector(c)

    @staticmethod
    def basis(mask: int) -> "Multivector":
        c = np.zeros(DIM)
        c[mask] = 1.0
        return Multivector(c)

    @staticmethod
    def paravector(x0: float, *xs: float) -> "Multivector":
        if len(xs) > N_GENERATORS:
            raise ValueError("too many vector components")
        c = np.zeros(DIM)
        c[0] = x0
        for i, v in enumerate(xs):
            c[1 << i] = v
        return Multivector(c)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return Multivector(self.c + other.c)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Multivector(self.c - other.c)

    def __rsub__(self, other):
        other = _coerce(other)
        return Multivector(other.c - self.c)

    def __neg__(self):
        return Multivector(-self.c)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self.c * float(other))
        if isinstance(other, Multivector):
            return mv_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self.c * float(other))
        return NotImplemented

    # -- queries ---------------------------------------------------------------

    def __getitem__(self, mask: int) -> float:
        return float(self.c[mask])

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.c)))

    def norm2(self) -> float:
        return float(np.linalg.norm(self.c))

    def grade_part(self, g: int) -> "Multivector":
        c = np.where(GRADE == g, self.c, 0.0)
        return Multivector(c)

    def is_zero(self, atol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self.c)) <= atol)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return bool(np.array_equal(self.c, other.c))

    def __hash__(self):
        return hash(self.c.tobytes())

    def __repr__(self):
        parts = []
        for m in range(DIM):
            v = self.c[m]
            if v == 0.0:
                continue
            name = "1" if m == 0 else "e" + "".join(
                str(i + 1) for i in range(N_GENERATORS) if (m >> i) & 1
            )
            parts.append(f"{v:+g}*{name}")
        return "MV(" + (" ".join(parts) if parts else "0") + ")"


def _coerce(value) -> Multivector:
    if isinstance(value, Multivector):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)):
        return Multivector.scalar(float(value))
    raise TypeError(f"cannot coerce {type(value)!r} to Multivector")


ZERO = Multivector()
ONE = Multivector.scalar(1.0)


def mv_mul(a: Multivector, b: Multivector) -> Multivector:
    """Bilinear extension of the blade product."""
    out = np.zeros(DIM)
    bc = b.c
    ac = a.c
    for mask in np.nonzero(ac)[0]:
        # INDEX_TABLE[mask] is a permutation of the 32 blades, so the fancy
        # indexed accumulation below touches each output slot once.
        out[INDEX_TABLE[mask]] += ac[mask] * (SIGN_TABLE[mask] * bc)
    return Multivector(out)


def mv_linear(a: Multivector, b: Multivector, s: float, t: float) -> Multivector:
    return Multivector(s * a.c + t * b.c)


def is_paravector(x: Multivector, atol: float = ATOL_DEFAULT) -> bool:
    higher = np.delete(x.c, PARAVECTOR_MASKS)
    return bool(np.max(np.abs(higher), initial=0.0) <= atol)


def paravector_conjugate(x: Multivector) -> Multivector:
    """x0 - x_ for a paravector x = x0 + x_ (grade-1 part negated)."""
    c = x.c.copy()
    for m in PARAVECTOR_MASKS[1:]:
        c[m] = -c[m]
    return Multivector(c)


def paravector_norm_sq(x: Multivector) -> float:
    return float(sum(x.c[m] ** 2 for m in PARAVECTOR_MASKS))


def paravector_inverse(x: Multivector) -> Multivector:
    n2 = paravector_norm_sq(x)
    if n2 == 0.0:
        raise ZeroParavector("cannot invert the zero paravector")
    return paravector_conjugate(x) * (1.0 / n2)


def axis_decompose(x: Multivector):
    """Split a paravector into (x0, r, omega) with x = x0 + r*omega.

    r = |x_| and omega is the unit 1-vector x_/r, or None when r = 0.
    """
    x0 = x[0]
    vec = np.array([x.c[m] for m in PARAVECTOR_MASKS[1:]])
    r = float(np.linalg.norm(vec))
    if r == 0.0:
        return x0, 0.0, None
    omega = Multivector.paravector(0.0, *(vec / r))
    return x0, r, omega


def embed(u: float, v: float, J: Multivector, atol: float = ATOL_DEFAULT) -> Multivector:
    """The point u + J v of the slice plane determined by the unit 1-vector J."""
    check_imaginary_unit(J, atol)
    return Multivector.scalar(u) + J * v


def check_imaginary_unit(J: Multivector, atol: float = ATOL_DEFAULT) -> None:
    if not is_paravector(J, atol) or abs(J[0]) > atol:
        raise NotImaginaryUnit("J must be a 1-vector")
    if abs(paravector_norm_sq(J) - 1.0) > max(atol, 1e-12):
        raise NotImaginaryUnit("J must have unit norm")


def close(a: Multivector, b: Multivector, atol: float = ATOL_DEFAULT,
          rtol: float = RTOL_DEFAULT) -> bool:
    scale = max(a.norm_inf(), b.norm_inf())
    return (a - b).norm_inf() <= max(atol, rtol * scale)
