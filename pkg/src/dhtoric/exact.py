"""Exact scalars, univariate polynomials and piecewise polynomials.

Scalars are :class:`fractions.Fraction` throughout (aliased as ``Rational``).
A :class:`PiecewisePoly` is a compactly supported function given by one
polynomial per open interval between consecutive breakpoints and zero
outside the outermost breakpoints.  Point evaluation is right-continuous.

Sign questions about a polynomial on an interval are answered exactly by
Sturm sequences (:func:`sign_on_interval`), never by floating point.
"""

from __future__ import annotations

import bisect
import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
NEG_INF = -math.inf
POS_INF = math.inf

Scalar = Union[int, Fraction, str]


def as_rational(x: Scalar) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction (floats are refused)."""
    if isinstance(x, float):
        raise TypeError(f"refusing to convert float {x!r} to an exact rational")
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is one."""
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Polynomial with rational coefficients in ascending degree order."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [as_rational(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def constant(cls, c: Scalar) -> "UniPoly":
        return cls((as_rational(c),))

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "UniPoly":
        return cls((0,) * degree + (as_rational(c),))

    @classmethod
    def linear_factor(cls, root: Scalar) -> "UniPoly":
        """The monic polynomial ``t - root``."""
        return cls((-as_rational(root), 1))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Union[int, float]:
        """Degree, or ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, t: Scalar) -> Fraction:
        t = as_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other) -> "UniPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UniPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "UniPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            s = as_rational(other)
            return UniPoly(tuple(c * s for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            q = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(tuple(quot)), UniPoly(tuple(rem[: len(other.coeffs) - 1]))

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def deriv(self, order: int = 1) -> "UniPoly":
        c = list(self.coeffs)
        for _ in range(order):
            c = [i * c[i] for i in range(1, len(c))]
        return UniPoly(tuple(c))

    def antideriv(self) -> "UniPoly":
        """Antiderivative vanishing at zero."""
        return UniPoly((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))

    def compose_affine(self, alpha: Scalar, beta: Scalar) -> "UniPoly":
        """The polynomial ``t -> self(alpha*t + beta)``."""
        inner = UniPoly((as_rational(beta), as_rational(alpha)))
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def shift(self, a: Scalar) -> "UniPoly":
        """Re-expand around ``a``: the polynomial ``s -> self(a + s)``."""
        return self.compose_affine(1, a)

    def monic(self) -> "UniPoly":
        return self * (1 / self.lead) if not self.is_zero else self

    def primitive_part(self) -> "UniPoly":
        """Positive rational multiple with coprime integer coefficients."""
        if self.is_zero:
            return self
        den = 1
        for c in self.coeffs:
            den = math.lcm(den, c.denominator)
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, int(c * den))
        return self * Fraction(den, g)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")


def _as_poly(x) -> UniPoly:
    return x if isinstance(x, UniPoly) else UniPoly.constant(x)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero if both inputs vanish)."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """``p / gcd(p, p')``: same roots as ``p``, all simple."""
    if p.degree <= 0:
        return p
    return p // poly_gcd(p, p.deriv())


# ---------------------------------------------------------------------------
# Sturm sequences and exact sign certification
# ---------------------------------------------------------------------------


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm chain of ``p``; each remainder is reduced to its primitive part."""
    seq = [p.primitive_part(), p.deriv().primitive_part()]
    while not seq[-1].is_zero:
        r = -(seq[-2] % seq[-1])
        seq.append(r.primitive_part())
    return seq[:-1]


def _variations(seq: Sequence[UniPoly], x: Fraction) -> int:
    signs = [v > 0 for v in (q(x) for q in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _deflate_endpoints(q: UniPoly, lo: Fraction, hi: Fraction) -> UniPoly:
    # q is squarefree, so each endpoint root is simple
    for x in {lo, hi}:
        if not q.is_zero and q.degree > 0 and q(x) == 0:
            q = q // UniPoly.linear_factor(x)
    return q


def count_real_roots(p: UniPoly, lo: Scalar, hi: Scalar) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(lo, hi)``."""
    lo, hi = as_rational(lo), as_rational(hi)
    if p.is_zero:
        raise ValueError("the zero polynomial vanishes everywhere")
    if hi <= lo or p.degree == 0:
        return 0
    q = _deflate_endpoints(squarefree_part(p), lo, hi)
    if q.degree <= 0:
        return 0
    seq = sturm_sequence(q)
    return _variations(seq, lo) - _variations(seq, hi)


def _split_point(q: UniPoly, a: Fraction, b: Fraction) -> Fraction:
    for den in itertools.count(2):
        for num in range(1, den):
            m = a + (b - a) * Fraction(num, den)
            if q(m) != 0:
                return m
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class Interval:
    """Interval with optional infinite ends (``NEG_INF``/``POS_INF``)."""

    lo: Union[Fraction, float]
    hi: Union[Fraction, float]
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo = self.lo if self.lo in (NEG_INF, POS_INF) else as_rational(self.lo)
        hi = self.hi if self.hi in (NEG_INF, POS_INF) else as_rational(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval: lo={lo} > hi={hi}")
        if lo == hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("a degenerate point interval must be closed")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    @property
    def bounded(self) -> bool:
        return self.lo != NEG_INF and self.hi != POS_INF

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, t) -> bool:
        t = as_rational(t)
        left = t > self.lo or (self.lo_closed and t == self.lo)
        right = t < self.hi or (self.hi_closed and t == self.hi)
        return left and right


class Sign(enum.Enum):
    NON_NEGATIVE = "NonNegative"
    NON_POSITIVE = "NonPositive"
    ZERO = "Zero"
    MIXED = "Mixed"


@dataclass(frozen=True)
class SignVerdict:
    sign: Sign
    positive_at: Fraction | None = None
    negative_at: Fraction | None = None

    @property
    def witness(self) -> Fraction | None:
        """A point where the value is nonzero (for MIXED: where it is negative)."""
        return self.negative_at if self.negative_at is not None else self.positive_at


def sign_on_interval(p: UniPoly, interval: Interval) -> SignVerdict:
    """Exact sign of ``p`` over a bounded interval.

    Distinct roots are isolated by Sturm counting and bisection at rational
    points; ``p`` is then sampled once on each side of every root.  A MIXED
    verdict carries one rational point of each strict sign.
    """
    if not interval.bounded:
        raise ValueError("sign_on_interval needs a bounded interval")
    lo, hi = interval.lo, interval.hi
    if p.is_zero:
        return SignVerdict(Sign.ZERO)
    samples: list[Fraction] = []
    if interval.is_point:
        samples.append(lo)
    else:
        if interval.lo_closed:
            samples.append(lo)
        if interval.hi_closed:
            samples.append(hi)
        q = _deflate_endpoints(squarefree_part(p), lo, hi)
        if q.degree <= 0:
            samples.append((lo + hi) / 2)
        else:
            seq = sturm_sequence(q)

            def usable(x: Fraction) -> bool:
                if x == lo:
                    return interval.lo_closed and p(x) != 0
                if x == hi:
                    return interval.hi_closed and p(x) != 0
                return True

            stack = [(lo, hi, _variations(seq, lo), _variations(seq, hi))]
            while stack:
                a, b, va, vb = stack.pop()
                n = va - vb
                if n == 0:
                    samples.append((a + b) / 2)
                elif n == 1 and usable(a) and usable(b):
                    samples.extend((a, b))
                else:
                    m = _split_point(q, a, b)
                    vm = _variations(seq, m)
                    stack.append((m, b, vm, vb))
                    stack.append((a, m, va, vm))
    pos = next((x for x in samples if p(x) > 0), None)
    neg = next((x for x in samples if p(x) < 0), None)
    if pos is not None and neg is not None:
        return SignVerdict(Sign.MIXED, pos, neg)
    if pos is not None:
        return SignVerdict(Sign.NON_NEGATIVE, pos, None)
    if neg is not None:
        return SignVerdict(Sign.NON_POSITIVE, None, neg)
    return SignVerdict(Sign.ZERO)


# ---------------------------------------------------------------------------
# Piecewise polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiecewisePoly:
    """Compactly supported piecewise polynomial on rational breakpoints.

    ``pieces[i]`` is the polynomial on the open interval
    ``(breakpoints[i], breakpoints[i+1])``; the function is zero outside
    ``[breakpoints[0], breakpoints[-1]]``.  Instances are always stored in
    canonical form: adjacent identical pieces are merged and zero pieces at
    either end are dropped.
    """

    breakpoints: tuple[Fraction, ...] = ()
    pieces: tuple[UniPoly, ...] = ()

    def __post_init__(self):
        bps = [as_rational(b) for b in self.breakpoints]
        pcs = [p if isinstance(p, UniPoly) else UniPoly(tuple(p)) for p in self.pieces]
        if bps or pcs:
            if len(pcs) != len(bps) - 1:
                raise ValueError(f"{len(pcs)} pieces for {len(bps)} breakpoints")
            if any(a >= b for a, b in zip(bps, bps[1:])):
                raise ValueError("breakpoints must be strictly increasing")
        bps, pcs = _canonicalize(bps, pcs)
        object.__setattr__(self, "breakpoints", tuple(bps))
        object.__setattr__(self, "pieces", tuple(pcs))

    @classmethod
    def zero(cls) -> "PiecewisePoly":
        return cls()

    @classmethod
    def from_intervals(cls, spec: Iterable[tuple[Scalar, Scalar, UniPoly]]) -> "PiecewisePoly":
        """Build from ``(lo, hi, poly)`` triples; gaps between them are zero."""
        bps: list[Fraction] = []
        pcs: list[UniPoly] = []
        for lo, hi, poly in sorted(spec, key=lambda s: as_rational(s[0])):
            lo, hi = as_rational(lo), as_rational(hi)
            if bps and lo < bps[-1]:
                raise ValueError("overlapping intervals")
            if bps and lo > bps[-1]:
                bps.append(lo)
                pcs.append(UniPoly())
            if not bps:
                bps.append(lo)
            bps.append(hi)
            pcs.append(_as_poly(poly))
        return cls(tuple(bps), tuple(pcs))

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    @property
    def support(self) -> Interval | None:
        """Closed hull of the support, or ``None`` for the zero function."""
        if self.is_zero:
            return None
        return Interval(self.breakpoints[0], self.breakpoints[-1])

    @property
    def max_degree(self) -> Union[int, float]:
        return max((p.degree for p in self.pieces), default=NEG_INF)

    def intervals(self) -> Iterable[tuple[Fraction, Fraction, UniPoly]]:
        return zip(self.breakpoints, self.breakpoints[1:], self.pieces)

    def piece_left_of(self, t: Scalar) -> UniPoly:
        """Polynomial governing the function just to the left of ``t``."""
        t = as_rational(t)
        i = bisect.bisect_left(self.breakpoints, t) - 1
        return self.pieces[i] if 0 <= i < len(self.pieces) else UniPoly()

    def piece_right_of(self, t: Scalar) -> UniPoly:
        """Polynomial governing the function just to the right of ``t``."""
        t = as_rational(t)
        i = bisect.bisect_right(self.breakpoints, t) - 1
        return self.pieces[i] if 0 <= i < len(self.pieces) else UniPoly()

    def __call__(self, t: Scalar) -> Fraction:
        """Value at ``t``; at a breakpoint this is the right limit."""
        t = as_rational(t)
        return self.piece_right_of(t)(t)

    def _map_pieces(self, fn) -> "PiecewisePoly":
        return PiecewisePoly(self.breakpoints, tuple(fn(p) for p in self.pieces))

    def derivative(self, order: int = 1) -> "PiecewisePoly":
        """Piecewise derivative; no distributional terms at breakpoints."""
        return self._map_pieces(lambda p: p.deriv(order))

    def __mul__(self, c: Scalar) -> "PiecewisePoly":
        c = as_rational(c)
        return self._map_pieces(lambda p: p * c)

    __rmul__ = __mul__

    def __neg__(self) -> "PiecewisePoly":
        return self * -1

    def __add__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        pcs = []
        for a, b in zip(bps, bps[1:]):
            m = (a + b) / 2
            pcs.append(self.piece_right_of(m) + other.piece_right_of(m))
        return PiecewisePoly(tuple(bps), tuple(pcs))

    def __sub__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        return self + (-other)

    def restrict(self, lo: Scalar = NEG_INF, hi: Scalar = POS_INF) -> "PiecewisePoly":
        """The function multiplied by the indicator of ``[lo, hi]``."""
        if self.is_zero:
            return self
        lo = self.breakpoints[0] if lo == NEG_INF else max(as_rational(lo), self.breakpoints[0])
        hi = self.breakpoints[-1] if hi == POS_INF else min(as_rational(hi), self.breakpoints[-1])
        if lo >= hi:
            return PiecewisePoly()
        inner = [b for b in self.breakpoints if lo < b < hi]
        bps = [lo] + inner + [hi]
        pcs = [self.piece_right_of((a + b) / 2) for a, b in zip(bps, bps[1:])]
        return PiecewisePoly(tuple(bps), tuple(pcs))

    def integrate(self, interval: Interval | None = None) -> Fraction:
        """Exact integral over ``interval`` (default: the whole line)."""
        if self.is_zero:
            return Fraction(0)
        if interval is None:
            lo, hi = NEG_INF, POS_INF
        else:
            lo, hi = interval.lo, interval.hi
        total = Fraction(0)
        for a, b, p in self.restrict(lo, hi).intervals():
            anti = p.antideriv()
            total += anti(b) - anti(a)
        return total

    def one_sided_derivatives(self, b: Scalar, order: int = 1) -> tuple[Fraction, Fraction]:
        """``(left, right)`` derivatives of the given order at ``b``.

        Outside the closed support both are zero; at the support ends the
        missing side is the zero extension.
        """
        b = as_rational(b)
        return (self.piece_left_of(b).deriv(order)(b), self.piece_right_of(b).deriv(order)(b))

    def jump_at(self, a: Scalar) -> UniPoly:
        """Right polynomial minus left polynomial, both expanded in ``s = t - a``."""
        a = as_rational(a)
        return self.piece_right_of(a).shift(a) - self.piece_left_of(a).shift(a)

    def affine_reparam(self, alpha: Scalar, beta: Scalar) -> "PiecewisePoly":
        """The function ``t -> self(alpha*t + beta)`` for ``alpha > 0``."""
        alpha, beta = as_rational(alpha), as_rational(beta)
        if alpha <= 0:
            raise ValueError("affine reparametrisation needs alpha > 0")
        bps = tuple((b - beta) / alpha for b in self.breakpoints)
        return PiecewisePoly(bps, tuple(p.compose_affine(alpha, beta) for p in self.pieces))

    def translate(self, c: Scalar) -> "PiecewisePoly":
        """The function ``t -> self(t - c)``."""
        return self.affine_reparam(1, -as_rational(c))

    def sample(self, num: int = 200) -> list[tuple[Fraction, Fraction]]:
        """``num`` evenly spaced rational points over the support, with values."""
        if self.is_zero:
            return []
        lo, hi = self.breakpoints[0], self.breakpoints[-1]
        if num == 1:
            return [(lo, self(lo))]
        pts = [lo + (hi - lo) * Fraction(i, num - 1) for i in range(num)]
        return [(x, self(x)) for x in pts]


def _canonicalize(bps: list[Fraction], pcs: list[UniPoly]) -> tuple[list[Fraction], list[UniPoly]]:
    if not pcs:
        return [], []
    out_b = [bps[0]]
    out_p: list[UniPoly] = []
    for b, p in zip(bps[1:], pcs):
        if out_p and out_p[-1] == p:
            out_b[-1] = b
        else:
            out_p.append(p)
            out_b.append(b)
    while out_p and out_p[0].is_zero:
        out_p.pop(0)
        out_b.pop(0)
    while out_p and out_p[-1].is_zero:
        out_p.pop()
        out_b.pop()
    if not out_p:
        return [], []
    return out_b, out_p


def canonicalize(f: PiecewisePoly) -> PiecewisePoly:
    """Canonical form; construction already canonicalizes, so this is idempotent."""
    return PiecewisePoly(f.breakpoints, f.pieces)


def evaluate(f: PiecewisePoly, t: Scalar) -> Fraction:
    return f(t)


def derivative(f: PiecewisePoly) -> PiecewisePoly:
    return f.derivative()


def integrate(f: PiecewisePoly, interval: Interval | None = None) -> Fraction:
    return f.integrate(interval)


def one_sided_derivatives(f: PiecewisePoly, b: Scalar, order: int = 1) -> tuple[Fraction, Fraction]:
    return f.one_sided_derivatives(b, order)
