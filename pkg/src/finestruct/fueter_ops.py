"""Exact and numerical application of the Dirac operator D, its conjugate
Dbar, and the Laplacian Delta; monomial image tables; axial PDE residuals;
fine-structure space classification and factorization enumeration.

The operators act exactly on the canonical form: the scalar derivative acts
on x0^a, and the radial part of D acts on x_^b by -b x_^(b-1) for even b and
-(b+4) x_^(b-1) for odd b.  D = d0 + radial, Dbar = d0 - radial, and Delta is
the composition D(Dbar(.)).
"""

from __future__ import annotations

from .clifford_core import Multivector, ONE, ZERO
from .errors import AxisTooClose
from .slice_poly import (
    LEFT,
    RIGHT,
    CanonicalPoly,
    SlicePolynomial,
    XBarPolynomial,
    is_slice,
    to_canonical,
)

LETTERS = ("D", "Dbar", "Delta")

KERNEL_KINDS = ("D", "Delta", "DeltaD", "Dbar", "Dbar2", "D2", "DeltaDbar")

# Operator words (composition, applied right to left) for each kernel kind.
KIND_WORDS = {
    "D": ("D",),
    "Delta": ("Delta",),
    "DeltaD": ("Delta", "D"),
    "Dbar": ("Dbar",),
    "Dbar2": ("Dbar", "Dbar"),
    "D2": ("D", "D"),
    "DeltaDbar": ("Delta", "Dbar"),
    "F5": ("Delta", "Delta"),
    "Cauchy": (),
}

# Degree of the annihilating polynomial of each kind (the total derivative
# order of its word).
KIND_ORDER = {
    "Cauchy": 0,
    "D": 1,
    "Dbar": 1,
    "Delta": 2,
    "D2": 2,
    "Dbar2": 2,
    "DeltaD": 3,
    "DeltaDbar": 3,
    "F5": 4,
}

FINE_SPACE_TAGS = (
    "AM", "AH", "ABH", "ACH1", "AntiACH1", "AP2", "AP3", "APC12", "SH",
)

# Annihilator word of each fine-structure space.
TAG_WORDS = {
    "AM": ("D",),
    "AH": ("Delta",),
    "ABH": ("Delta", "Delta"),
    "ACH1": ("Delta", "D"),
    "AntiACH1": ("Delta", "Dbar"),
    "AP2": ("D", "D"),
    "AP3": ("D", "D", "D"),
    "APC12": ("Delta", "D", "D"),
}


def word_degrees(word) -> tuple[int, int]:
    """Total (D-degree, Dbar-degree) of a word over {D, Dbar, Delta}."""
    a = b = 0
    for letter in word:
        if letter == "D":
            a += 1
        elif letter == "Dbar":
            b += 1
        elif letter == "Delta":
            a += 1
            b += 1
        else:
            raise ValueError(f"unknown letter {letter!r}")
    return a, b


def normalize_word(word) -> tuple[str, ...]:
    """Canonical form Delta^k D^a Dbar^b with min(a, b) folded into k."""
    a, b = word_degrees(word)
    k = min(a, b)
    return ("Delta",) * k + ("D",) * (a - k) + ("Dbar",) * (b - k)


# -- exact operator action on the canonical form ------------------------------


def _d0(C: CanonicalPoly) -> CanonicalPoly:
    out = CanonicalPoly(side=C.side)
    for (a, b), c in C.terms.items():
        if a > 0:
            out._add_term(a - 1, b, c * a)
    return out


def _radial(C: CanonicalPoly) -> CanonicalPoly:
    out = CanonicalPoly(side=C.side)
    for (a, b), c in C.terms.items():
        if b == 0:
            continue
        factor = -b if b % 2 == 0 else -(b + 4)
        out._add_term(a, b - 1, c * factor)
    return out


def apply_operator(op: str, C: CanonicalPoly) -> CanonicalPoly:
    if op == "d0":
        return _d0(C)
    if op == "Dradial":
        return _radial(C)
    if op == "D":
        return _d0(C) + _radial(C)
    if op == "Dbar":
        return _d0(C) - _radial(C)
    if op == "Delta":
        return apply_operator("D", apply_operator("Dbar", C))
    raise ValueError(f"unknown operator {op!r}")


def apply_word(word, P) -> CanonicalPoly:
    """Apply a composition word (leftmost letter applied last).

    Slice polynomials are processed one monomial at a time with a unit
    coefficient.  The intermediate coefficients are then exact (small)
    integers, so identities such as D(Δ²P) = 0 cancel exactly in floating
    point; the polynomial's coefficients multiply the finished images.
    """
    word = tuple(word)
    if isinstance(P, SlicePolynomial):
        out = CanonicalPoly(side=P.side)
        for m, coeff in enumerate(P.coeffs):
            if coeff.is_zero():
                continue
            C = to_canonical(SlicePolynomial.monomial(m, 1.0, P.side))
            for letter in reversed(word):
                C = apply_operator(letter, C)
            for (a, b), c in C.terms.items():
                scalar = c[0]
                if scalar != 0.0:
                    out._add_term(a, b, coeff * scalar)
        return out
    C = to_canonical(P)
    for letter in reversed(word):
        C = apply_operator(letter, C)
    return C


# -- monomial image tables -----------------------------------------------------


def monomial_image(kind: str, m: int, side: str = LEFT) -> XBarPolynomial:
    """Image of x^m under the operator word of the given kind, as an exact
    integer-coefficient polynomial in (x, x̄)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    terms: list[tuple[int, int, float]] = []
    if kind == "D":
        if m >= 1:
            terms = [(m - k, k - 1, -4) for k in range(1, m + 1)]
    elif kind == "Delta":
        if m >= 2:
            terms = [(m - k - 1, k - 1, -8 * (m - k)) for k in range(1, m)]
    elif kind == "D2":
        if m >= 2:
            terms = [(m - k - 1, k - 1, -8 * k) for k in range(1, m)]
    elif kind == "DeltaD":
        if m >= 3:
            terms = [(m - k - 2, k - 1, 16 * (m - k - 1) * k)
                     for k in range(1, m - 1)]
    elif kind == "Dbar":
        if m >= 1:
            terms = [(m - 1, 0, 2 * m)]
            terms += [(m - k, k - 1, 4) for k in range(1, m + 1)]
    elif kind == "Dbar2":
        if m >= 2:
            terms = [(m - 2, 0, 4 * m * (m - 1))]
            terms += [(m - k - 1, k - 1, 8 * (2 * m - k)) for k in range(1, m)]
    elif kind == "DeltaDbar":
        if m >= 3:
            terms = [(m - k - 2, k - 1, -16 * (m - k - 1) * (m + k))
                     for k in range(1, m - 1)]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return XBarPolynomial(terms, side)


def sum_lemma_1(m: int) -> bool:
    """sum_{k=1}^{m-2} (m-k-1) k == m(m-1)(m-2)/6, exactly (integers)."""
    lhs = sum((m - k - 1) * k for k in range(1, m - 1))
    return 6 * lhs == m * (m - 1) * (m - 2)


def sum_lemma_2(m: int) -> bool:
    """sum_{k=1}^{m-2} (m-k-1)(m+k) == 2 m(m-1)(m-2)/3, exactly (integers)."""
    lhs = sum((m - k - 1) * (m + k) for k in range(1, m - 1))
    return 3 * lhs == 2 * m * (m - 1) * (m - 2)


# -- finite-difference application ----------------------------------------------


def _fd_first_order(g, x: Multivector, h: float, conj: bool, side: str) -> Multivector:
    acc = (g(x + ONE * h) - g(x - ONE * h)) * (1.0 / (2.0 * h))
    sgn = -1.0 if conj else 1.0
    for i in range(5):
        e = Multivector.basis(1 << i)
        d = (g(x + e * h) - g(x - e * h)) * (1.0 / (2.0 * h))
        acc = acc + (e * d if side == LEFT else d * e) * sgn
    return acc


def _fd_laplacian(g, x: Multivector, h: float) -> Multivector:
    center = g(x)
    acc = ZERO
    for i in range(6):
        e = ONE if i == 0 else Multivector.basis(1 << (i - 1))
        acc = acc + (g(x + e * h) - center * 2.0 + g(x - e * h)) * (1.0 / (h * h))
    return acc


def _fd_letter(letter: str, g, x: Multivector, h: float, side: str) -> Multivector:
    """One central-difference letter with two Richardson extrapolation levels
    (steps h, 2h, 4h; the even-power error expansion leaves O(h^6))."""
    if letter == "D":
        def stencil(step):
            return _fd_first_order(g, x, step, False, side)
    elif letter == "Dbar":
        def stencil(step):
            return _fd_first_order(g, x, step, True, side)
    elif letter == "Delta":
        def stencil(step):
            return _fd_laplacian(g, x, step)
    else:
        raise ValueError(f"unknown letter {letter!r}")
    r1_h = (stencil(h) * 4.0 - stencil(2.0 * h)) * (1.0 / 3.0)
    r1_2h = (stencil(2.0 * h) * 4.0 - stencil(4.0 * h)) * (1.0 / 3.0)
    return (r1_h * 16.0 - r1_2h) * (1.0 / 15.0)


def fd_apply(word, f, x: Multivector, h: float = 1e-3, side: str = LEFT,
             step_growth: float = 4.0) -> Multivector:
    """Numerically apply a word of operators to a smooth function f at x.

    Central differences per coordinate with one Richardson level per letter;
    letters are applied right to left (composition order).  Outer letters use
    a step enlarged by step_growth per composition level: differencing an
    already-differenced value amplifies rounding noise by 1/step^2, so the
    outer step must grow for composed words to stay near the h^4 accuracy of
    a single letter.
    """
    word = tuple(word)
    if not word:
        return f(x)
    head, rest = word[0], word[1:]
    if rest:
        def g(y, _rest=rest):
            return fd_apply(_rest, f, y, h, side, step_growth)
    else:
        g = f
    step = h * step_growth ** len(rest)
    return _fd_letter(head, g, x, step, side)


# -- axial representation and the printed PDE systems ---------------------------


class AxialPoly:
    """Exact bivariate polynomial sum x0^i r^j c_ij with Clifford values."""

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, int], Multivector] = {}
        if terms:
            for (i, j), c in dict(terms).items():
                self._add(int(i), int(j), c)

    def _add(self, i: int, j: int, c: Multivector) -> None:
        if c.is_zero():
            return
        key = (i, j)
        cur = self.terms.get(key)
        new = c if cur is None else cur + c
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def deriv(self, i: int, j: int) -> "AxialPoly":
        out = self
        for _ in range(i):
            out = out._d(0)
        for _ in range(j):
            out = out._d(1)
        return out

    def _d(self, axis: int) -> "AxialPoly":
        out = AxialPoly()
        for (i, j), c in self.terms.items():
            if axis == 0 and i > 0:
                out._add(i - 1, j, c * i)
            elif axis == 1 and j > 0:
                out._add(i, j - 1, c * j)
        return out

    def __call__(self, x0: float, r: float) -> Multivector:
        acc = ZERO
        for (i, j), c in self.terms.items():
            acc = acc + c * ((x0 ** i) * (r ** j))
        return acc


def axial_parts(C: CanonicalPoly) -> tuple[AxialPoly, AxialPoly]:
    """Split a left canonical polynomial into (A, B) with value A + omega B."""
    if C.side != LEFT:
        raise ValueError("axial split is defined for left polynomials")
    A = AxialPoly()
    B = AxialPoly()
    for (a, b), c in C.terms.items():
        if b % 2 == 0:
            A._add(a, b, c * ((-1.0) ** (b // 2)))
        else:
            B._add(a, b, c * ((-1.0) ** ((b - 1) // 2)))
    return A, B


VEKUA_SYSTEMS = (
    "AntiCliffordian", "BiHarmonic", "Poly3", "Cliffordian1",
    "Harmonic", "Poly2", "PolyCliffordian12",
)

# Annihilator word of the space characterized by each printed system.
SYSTEM_WORDS = {
    "AntiCliffordian": ("Delta", "Dbar"),
    "BiHarmonic": ("Delta", "Delta"),
    "Poly3": ("D", "D", "D"),
    "Cliffordian1": ("Delta", "D"),
    "Harmonic": ("Delta",),
    "Poly2": ("D", "D"),
    "PolyCliffordian12": ("Delta", "D", "D"),
}


class _Partials:
    """Partial-derivative evaluator at a fixed point for A or B."""

    def __init__(self, fun, x0: float, r: float, h: float = 1e-2):
        self.x0 = x0
        self.r = r
        self.h = h
        if isinstance(fun, AxialPoly):
            self.poly = fun
            self.fun = None
        else:
            self.poly = None
            self.fun = fun

    def __call__(self, i: int, j: int) -> Multivector:
        if self.poly is not None:
            return self.poly.deriv(i, j)(self.x0, self.r)
        fine = self._stencil(i, j, self.h)
        coarse = self._stencil(i, j, 2.0 * self.h)
        return (fine * 4.0 - coarse) * (1.0 / 3.0)

    def _stencil(self, i: int, j: int, h: float) -> Multivector:
        wi = _central_weights(i)
        wj = _central_weights(j)
        acc = ZERO
        for oi, ci in wi:
            for oj, cj in wj:
                v = self.fun(self.x0 + oi * h, self.r + oj * h)
                if not isinstance(v, Multivector):
                    v = Multivector.scalar(float(v))
                acc = acc + v * (ci * cj / (h ** (i + j)))
        return acc


def _central_weights(order: int):
    if order == 0:
        return [(0, 1.0)]
    if order == 1:
        return [(-1, -0.5), (1, 0.5)]
    if order == 2:
        return [(-1, 1.0), (0, -2.0), (1, 1.0)]
    if order == 3:
        return [(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)]
    if order == 4:
        return [(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)]
    raise ValueError("stencil order up to 4 only")


def vekua_residual(sys: str, A, B, p, r_min: float = 0.1,
                   h: float = 1e-2) -> tuple[Multivector, Multivector]:
    """Evaluate both equations of the named axial PDE system at p = (x0, r).

    A and B are either AxialPoly values (exact partials) or callables
    (x0, r) -> Multivector (central stencils with one Richardson level).
    """
    x0, r = float(p[0]), float(p[1])
    if r < r_min:
        raise AxisTooClose(f"r = {r} below r_min = {r_min}")
    a = _Partials(A, x0, r, h)
    b = _Partials(B, x0, r, h)
    if sys == "AntiCliffordian":
        res1 = (a(3, 0) + a(1, 2) + a(1, 1) * (4 / r) + b(2, 1) + b(0, 3)
                + b(0, 2) * (8 / r) + b(0, 1) * (8 / r ** 2)
                - b(0, 0) * (8 / r ** 3) + b(2, 0) * (4 / r))
        res2 = (b(3, 0) + b(1, 2)
                - (b(1, 1) * (1 / r) - b(1, 0) * (1 / r ** 2)) * 4
                - a(2, 1) - a(0, 3)
                - (a(0, 2) * (1 / r) - a(0, 1) * (1 / r ** 2)) * 4)
    elif sys == "BiHarmonic":
        res1 = (a(4, 0) + a(2, 2) * 2 + a(0, 4) - a(0, 1) * (8 / r ** 3)
                + a(0, 2) * (8 / r ** 2) + a(0, 3) * (8 / r) + a(2, 1) * (4 / r))
        res2 = (b(0, 4) + b(0, 3) * (8 / r) - b(0, 1) * (24 / r ** 3)
                + b(0, 0) * (24 / r ** 4) + b(2, 2) * 2 - b(2, 0) * (8 / r ** 2)
                + b(2, 1) * (8 / r) + b(4, 0))
    elif sys == "Poly3":
        res1 = (a(3, 0) + b(0, 3) - b(2, 1) * 3 - a(1, 2) * 3
                - b(2, 0) * (12 / r) - a(1, 1) * (12 / r) + b(0, 2) * (8 / r)
                + b(0, 1) * (8 / r ** 2) - b(0, 0) * (8 / r ** 3))
        res2 = (b(3, 0) - a(0, 3) + a(2, 1) * 3 - b(1, 2) * 3
                - b(1, 1) * (12 / r) + b(1, 0) * (12 / r ** 2)
                - a(0, 2) * (4 / r) + a(0, 1) * (4 / r ** 2))
    elif sys == "Cliffordian1":
        res1 = (a(1, 0) + a(1, 2) + a(1, 1) * (4 / r) - b(2, 1) - b(0, 3)
                - b(0, 1) * (8 / r ** 2) + b(0, 0) * (8 / r ** 3)
                - b(2, 0) * (4 / r))
        res2 = (b(3, 0) + b(1, 2)
                + (b(1, 1) * (1 / r) - b(1, 0) * (1 / r ** 2)) * 4
                + a(2, 1) + a(0, 3)
                + (a(0, 2) * (1 / r) - a(0, 1) * (2 / r ** 2)
                   + a(0, 0) * (2 / r ** 3)) * 4)
    elif sys == "Harmonic":
        res1 = a(2, 0) + a(0, 2) + a(0, 1) * (4 / r)
        res2 = (b(2, 0) + b(0, 2)
                + (b(0, 1) * (1 / r) - b(0, 0) * (1 / r ** 2)) * 4)
    elif sys == "Poly2":
        res1 = (a(2, 0) - b(1, 1) * 2 - b(1, 0) * (8 / r) - a(0, 2)
                - a(0, 1) * (4 / r))
        res2 = (b(2, 0) + a(1, 1) * 2 - b(0, 2)
                - (b(0, 1) * (1 / r) - b(0, 0) * (1 / r ** 2)) * 4)
    elif sys == "PolyCliffordian12":
        res1 = (a(4, 0) - b(3, 1) * 2 - b(1, 3) * 2 - b(3, 0) * (8 / r)
                - b(1, 2) * (8 / r) - a(0, 4) - a(0, 3) * (8 / r)
                - a(0, 1) * (8 / r ** 3) - a(0, 2) * (4 / r ** 2)
                - a(0, 0) * (8 / r ** 4) - b(1, 1) * (16 / r ** 2))
        res2 = (b(4, 0) + a(3, 1) * 2 + a(1, 3) * 2 + a(1, 2) * (8 / r)
                - a(1, 1) * (12 / r ** 2) - b(1, 1) * (4 / r ** 2) - b(0, 4)
                + a(1, 0) * (8 / r ** 3) - b(0, 2) * (8 / r ** 2)
                + b(0, 1) * (24 / r ** 3) - b(0, 0) * (24 / r ** 4)
                + b(2, 0) * (4 / r ** 2))
    else:
        raise ValueError(f"unknown system {sys!r}")
    return res1, res2


# -- classification and enumeration ---------------------------------------------


def classify_space(P, atol: float = 0.0) -> set[str]:
    """Set of fine-structure tags whose annihilator word kills P exactly."""
    C = to_canonical(P)
    tags = {tag for tag, word in TAG_WORDS.items()
            if apply_word(word, C).is_zero(atol)}
    if is_slice(C):
        tags.add("SH")
    return tags


_BLOCKS_FINE = ("D", "Dbar")
_BLOCKS_COARSE = ("D", "Dbar", "Delta", "D2", "Dbar2")
_BLOCK_DEGREES = {
    "D": (1, 0), "Dbar": (0, 1), "Delta": (1, 1), "D2": (2, 0), "Dbar2": (0, 2),
}

_DEGREE_TAG = {
    (0, 1, 0): "AM",
    (1, 0, 0): "AH",
    (2, 0, 0): "ABH",
    (1, 1, 0): "ACH1",
    (1, 0, 1): "AntiACH1",
    (0, 2, 0): "AP2",
    (0, 3, 0): "AP3",
    (1, 2, 0): "APC12",
}


def _tag_of_degrees(a: int, b: int) -> str:
    k = min(a, b)
    return _DEGREE_TAG[(k, a - k, b - k)]


def enumerate_factorizations(coarse: bool = False):
    """All ordered factorizations of the degree-(2,2) word, labeled.

    With coarse=False the words run over single letters D, Dbar (four letters,
    two of each).  With coarse=True the blocks Delta, D2, Dbar2 are also
    allowed.  Each prefix is labeled by the space whose annihilator is D
    composed with the letters not yet applied.
    """
    blocks = _BLOCKS_COARSE if coarse else _BLOCKS_FINE
    results = []

    def rec(word, da, db):
        if da == 2 and db == 2:
            labels = []
            pa = pb = 0
            for block in word:
                ba, bb = _BLOCK_DEGREES[block]
                pa += ba
                pb += bb
                labels.append(_tag_of_degrees(2 - pa + 1, 2 - pb))
            results.append((tuple(word), labels))
            return
        for block in blocks:
            ba, bb = _BLOCK_DEGREES[block]
            if da + ba <= 2 and db + bb <= 2:
                rec(word + [block], da + ba, db + bb)

    rec([], 0, 0)
    return results
