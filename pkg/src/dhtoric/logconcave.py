"""Exact log-concavity certificates for piecewise-polynomial densities.

On the open support a piecewise polynomial ``g`` is log-concave iff

* the support is one interval and ``g`` has no zeros inside it,
* on every piece ``(g')**2 - g*g'' >= 0``,
* at every interior breakpoint ``g`` is continuous and ``g'_+ <= g'_-``.

All three are decided with Sturm sign certificates, so verdicts are exact.
The second half of the module treats densities on the circle ``R/Z`` and the
decision chain for circle-valued momentum maps.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from dhtoric.exact import (
    Interval,
    PiecewisePoly,
    Scalar,
    UniPoly,
    as_rational,
    count_real_roots,
    sign_on_interval,
)
from dhtoric.pushforward import DHFunction, FixedComponent, gls_jump


class Status(enum.Enum):
    LOG_CONCAVE = "LogConcave"
    STRICTLY_LOG_CONCAVE = "StrictlyLogConcave"
    NOT_LOG_CONCAVE = "NotLogConcave"


class Reason(enum.Enum):
    PIECE_FAILURE = "PieceFailure"
    WALL_FAILURE = "WallFailure"
    SUPPORT_GAP = "SupportGap"


@dataclass(frozen=True)
class Witness:
    location: Fraction
    reason: Reason


@dataclass(frozen=True)
class LogConcavityVerdict:
    status: Status
    witness: Witness | None = None

    def __post_init__(self):
        if self.status is Status.NOT_LOG_CONCAVE and self.witness is None:
            raise ValueError("a negative verdict must carry a witness")

    @property
    def is_log_concave(self) -> bool:
        return self.status is not Status.NOT_LOG_CONCAVE


class NegativeDensityError(ValueError):
    def __init__(self, location: Fraction):
        self.location = location
        super().__init__(f"density is negative at t = {location}")


class NotAWallError(ValueError):
    pass


def log_discriminant(g: UniPoly) -> UniPoly:
    """``(g')**2 - g*g''``; nonnegative exactly where ``log g`` is concave."""
    d1 = g.deriv()
    return d1 * d1 - g * g.deriv(2)


def locate_root(p: UniPoly, a: Fraction, b: Fraction, width: Fraction = Fraction(1, 2**20)) -> Fraction:
    """A rational point within ``width`` of some root of ``p`` in ``(a, b)``."""
    while b - a > width:
        m = (a + b) / 2
        if p(m) == 0:
            return m
        if count_real_roots(p, a, m) > 0:
            b = m
        else:
            a = m
    return (a + b) / 2


def _density(f: Union[DHFunction, PiecewisePoly]) -> PiecewisePoly:
    return f.density if isinstance(f, DHFunction) else f


def check_nonnegative(f: PiecewisePoly) -> None:
    for a, b, p in f.intervals():
        v = sign_on_interval(p, Interval.open(a, b))
        if v.negative_at is not None:
            raise NegativeDensityError(v.negative_at)


def _piece_failure(a: Fraction, b: Fraction, g: UniPoly) -> Witness | None:
    if g.is_zero:
        return Witness((a + b) / 2, Reason.SUPPORT_GAP)
    if count_real_roots(g, a, b):
        return Witness(locate_root(g, a, b), Reason.SUPPORT_GAP)
    v = sign_on_interval(log_discriminant(g), Interval.open(a, b))
    if v.negative_at is not None:
        return Witness(v.negative_at, Reason.PIECE_FAILURE)
    return None


def _wall_failure(b: Fraction, left: UniPoly, right: UniPoly) -> Witness | None:
    lv, rv = left(b), right(b)
    if lv == 0 or rv == 0:
        return Witness(b, Reason.SUPPORT_GAP)
    if lv != rv or right.deriv()(b) > left.deriv()(b):
        return Witness(b, Reason.WALL_FAILURE)
    return None


def logconcave_on_line(f: Union[DHFunction, PiecewisePoly]) -> LogConcavityVerdict:
    """Exact log-concavity verdict; a failure reports the leftmost witness found."""
    g = _density(f)
    if g.is_zero:
        raise ValueError("the zero density is not positive almost everywhere")
    check_nonnegative(g)
    strict = True
    bps = g.breakpoints
    for i, (a, b, p) in enumerate(g.intervals()):
        w = _piece_failure(a, b, p)
        if w is not None:
            return LogConcavityVerdict(Status.NOT_LOG_CONCAVE, w)
        if log_discriminant(p).is_zero:
            strict = False
        if i + 1 < len(g.pieces):
            w = _wall_failure(bps[i + 1], p, g.pieces[i + 1])
            if w is not None:
                return LogConcavityVerdict(Status.NOT_LOG_CONCAVE, w)
    return LogConcavityVerdict(Status.STRICTLY_LOG_CONCAVE if strict else Status.LOG_CONCAVE)


def graham_wall_check(f: Union[DHFunction, PiecewisePoly], a: Scalar) -> bool:
    """Whether the first derivative drops across the wall at ``a``."""
    g = _density(f)
    a = as_rational(a)
    if a not in g.breakpoints:
        raise NotAWallError(f"{a} is not a breakpoint of the density")
    left, right = g.one_sided_derivatives(a, 1)
    return right <= left


# ---------------------------------------------------------------------------
# Densities on the circle R/Z
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CircleDensity:
    """Density on ``R/Z`` given by its restriction to ``[0, 1]``.

    The chart is the covering ``t -> exp(2 pi i t)``; the seam ``0 = 1`` joins
    the piece ending at 1 to the piece starting at 0.
    """

    density: PiecewisePoly
    period: Fraction = Fraction(1)

    def __post_init__(self):
        if self.period != 1:
            raise ValueError("only the unit circle R/Z is supported")
        if not self.density.is_zero and (self.density.breakpoints[0] < 0 or self.density.breakpoints[-1] > 1):
            raise ValueError("circle density must be supported in [0, 1]")

    def __call__(self, t: Scalar) -> Fraction:
        t = as_rational(t)
        return self.density(t - (t.numerator // t.denominator))

    def left_piece(self, x: Fraction) -> UniPoly:
        """Polynomial just left of ``x`` in [0, 1), written in the variable ``s = t - x``."""
        base = Fraction(1) if x == 0 else x
        return self.density.piece_left_of(base).shift(base)

    def right_piece(self, x: Fraction) -> UniPoly:
        return self.density.piece_right_of(x).shift(x)

    def jump_at(self, x: Scalar) -> UniPoly:
        """Right germ minus left germ at ``x``, in ``s = t - x``."""
        x = _mod1(as_rational(x))
        return self.right_piece(x) - self.left_piece(x)

    def walls(self) -> list[Fraction]:
        """Points of ``[0, 1)`` where the germ changes (seam included)."""
        cands = sorted({_mod1(b) for b in self.density.breakpoints} | {Fraction(0)})
        return [x for x in cands if not self.jump_at(x).is_zero]

    def rotate(self, r: Scalar) -> "CircleDensity":
        """The density ``t -> f(t - r)``."""
        r = _mod1(as_rational(r))
        g = self.density.translate(r) + self.density.translate(r - 1)
        return CircleDensity(g.restrict(0, 1))


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


class CircleKind(enum.Enum):
    CONSTANT = "Constant"
    PROPER_SUPPORT = "ProperSupport"
    FULL_SUPPORT_NON_CONSTANT = "FullSupportNonConstant"


@dataclass(frozen=True)
class CircleClassification:
    kind: CircleKind
    chart_failure: Witness | None = None

    @property
    def fails_on_every_chart(self) -> bool:
        """A local failure at a point is seen by every chart around it (charts differ by integer translation)."""
        return self.chart_failure is not None


def circle_logconcavity_failure(f: CircleDensity) -> Witness | None:
    """First point of [0, 1) where the periodic density is not locally log-concave."""
    g = f.density
    for x in f.walls():
        w = _wall_failure(Fraction(0), f.left_piece(x), f.right_piece(x))
        if w is not None:
            return Witness(x, w.reason)
    for a, b, p in g.intervals():
        w = _piece_failure(a, b, p)
        if w is not None:
            return w
    return None


def circle_classify(f: CircleDensity) -> CircleClassification:
    g = f.density
    check_nonnegative(g)
    if len(g.pieces) == 1 and g.breakpoints == (0, 1) and g.pieces[0].degree == 0:
        return CircleClassification(CircleKind.CONSTANT)
    if g.is_zero or g.breakpoints[0] > 0 or g.breakpoints[-1] < 1 or any(p.is_zero for p in g.pieces):
        return CircleClassification(CircleKind.PROPER_SUPPORT)
    return CircleClassification(CircleKind.FULL_SUPPORT_NON_CONSTANT, circle_logconcavity_failure(f))


@dataclass(frozen=True)
class CriticalLevelData:
    level: Fraction
    components: tuple[FixedComponent, ...]

    def __post_init__(self):
        object.__setattr__(self, "level", _mod1(as_rational(self.level)))
        comps = tuple(self.components)
        for c in comps:
            if _mod1(c.level) != self.level:
                raise ValueError(f"component level {c.level} differs from record level {self.level}")
        object.__setattr__(self, "components", comps)


class Decision(enum.Enum):
    HAMILTONIAN = "Hamiltonian"
    NON_HAMILTONIAN_CANDIDATE = "NonHamiltonianCandidate"
    INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class HamiltonianVerdict:
    decision: Decision
    report: str
    classification: CircleKind


def _lowest_term(p: UniPoly) -> tuple[int, Fraction] | None:
    for i, c in enumerate(p.coeffs):
        if c != 0:
            return i, c
    return None


def _jump_mismatch(f: CircleDensity, crit: CriticalLevelData) -> str | None:
    measured = f.jump_at(crit.level)
    if measured.is_zero:
        return f"declared critical level {crit.level} but the density is smooth there"
    local = [FixedComponent(crit.level, c.weights, c.reduced_volume) for c in crit.components]
    predicted = _lowest_term(gls_jump(local, crit.level))
    if predicted is None:
        return None
    deg, coeff = predicted
    if any(measured.coeff(i) != 0 for i in range(deg)) or measured.coeff(deg) != coeff:
        return (
            f"jump at level {crit.level} is {measured} (in s = t - {crit.level}), "
            f"but the fixed-point data predicts {coeff}*s^{deg} to leading order"
        )
    return None


def hamiltonian_decision(f: CircleDensity, criticals: Sequence[CriticalLevelData] = ()) -> HamiltonianVerdict:
    """Decision chain for a circle-valued momentum map with DH density ``f``.

    * proper support: the map is not surjective, so it lifts to a real-valued
      momentum map (Hamiltonian);
    * declared critical levels must match the measured jumps of ``f``;
    * constant density without critical levels: no conclusion possible;
    * every wall carrying two opposite-sign weights together with chart-wise
      log-concavity away from the walls forces a strictly log-concave periodic
      density, which cannot exist, so the surjective case is excluded
      (Hamiltonian).  Otherwise no conclusion.
    """
    kind = circle_classify(f).kind
    if kind is CircleKind.PROPER_SUPPORT:
        return HamiltonianVerdict(Decision.HAMILTONIAN, "momentum map is not surjective", kind)
    for crit in criticals:
        problem = _jump_mismatch(f, crit)
        if problem is not None:
            return HamiltonianVerdict(Decision.INCONSISTENT, problem, kind)
    if kind is CircleKind.CONSTANT:
        if criticals:
            raise AssertionError("a constant density has no walls to match")
        return HamiltonianVerdict(
            Decision.NON_HAMILTONIAN_CANDIDATE, "constant density with no critical levels", kind
        )
    declared = {c.level for c in criticals}
    opposite_pairs = all(
        len(c.weights) == 2 and c.weights[0] * c.weights[1] < 0 for crit in criticals for c in crit.components
    )
    walls_covered = bool(criticals) and set(f.walls()) <= declared
    pieces_ok = all(_piece_failure(a, b, p) is None for a, b, p in f.density.intervals())
    if walls_covered and opposite_pairs and pieces_ok:
        return HamiltonianVerdict(
            Decision.HAMILTONIAN,
            "every wall has a strictly negative derivative jump; a log-concave periodic density must be constant",
            kind,
        )
    return HamiltonianVerdict(
        Decision.NON_HAMILTONIAN_CANDIDATE, "fixed-point data does not force a strict derivative drop", kind
    )
