"""Duistermaat-Heckman densities of subtorus actions on toric models.

A toric model is a rational polytope together with an integer projection;
the Liouville measure is taken to be Lebesgue measure on the polytope, so the
DH density of a rank-one projection ``x -> <w, x>`` is the density of the
image of Lebesgue measure under that linear form.

The exact path triangulates the polytope and pushes each simplex forward
with the divided-difference (B-spline) formula.  An independent Monte Carlo
estimate is available for any rank.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from dhtoric import _linalg, rng
from dhtoric.exact import NEG_INF, PiecewisePoly, Scalar, UniPoly, as_rational
from dhtoric.polytope import (
    DegeneratePolytopeError,
    PolytopeError,
    Simplex,
    VRep,
    _dot,
    triangulate,
)


class ZeroProjectionError(ValueError):
    pass


class RankError(ValueError):
    pass


class NonGenericError(ValueError):
    """The projection is orthogonal to an edge, so fixed sets are not isolated."""

    def __init__(self, edge):
        self.edge = edge
        u, v = edge
        fmt = lambda p: "(" + ", ".join(str(x) for x in p) + ")"  # noqa: E731
        super().__init__(f"projection is orthogonal to the edge {fmt(u)} -- {fmt(v)}")


class MixedLevelError(ValueError):
    pass


@dataclass(frozen=True)
class ToricModel:
    polytope: VRep
    projection: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.projection)
        object.__setattr__(self, "projection", rows)
        if not rows:
            raise RankError("projection needs at least one row")
        if any(len(r) != self.polytope.dim for r in rows):
            raise RankError(f"projection rows must have {self.polytope.dim} entries")
        if not all(any(r) for r in rows):
            raise ZeroProjectionError("projection rows must be nonzero")
        if len(rows) > self.polytope.dim or _linalg.rank(rows) != len(rows):
            raise RankError("projection rows must be linearly independent")

    @classmethod
    def rank_one(cls, polytope: VRep, w: Sequence[int]) -> "ToricModel":
        return cls(polytope, (tuple(w),))

    @property
    def n(self) -> int:
        return self.polytope.dim

    @property
    def k(self) -> int:
        return len(self.projection)

    @property
    def w(self) -> tuple[int, ...]:
        if self.k != 1:
            raise RankError("w is only defined for rank-one projections")
        return self.projection[0]


@dataclass(frozen=True)
class DHFunction:
    density: PiecewisePoly
    walls: tuple[Fraction, ...]
    n: int
    k: int = 1


@dataclass(frozen=True)
class FixedComponent:
    """Isolated fixed point data: critical level, isotropy weights, reduced volume."""

    level: Fraction
    weights: tuple[Fraction, ...]
    reduced_volume: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "level", as_rational(self.level))
        object.__setattr__(self, "weights", tuple(as_rational(a) for a in self.weights))
        object.__setattr__(self, "reduced_volume", as_rational(self.reduced_volume))
        if any(a == 0 for a in self.weights):
            raise ValueError("isotropy weights must be nonzero")


@dataclass(frozen=True)
class MCEstimate:
    sample_points: tuple
    estimates: tuple[float, ...]
    stderrs: tuple[float, ...]
    seed: int
    N: int
    bin_width: tuple[float, ...] = field(default=())


# ---------------------------------------------------------------------------
# Exact push-forward
# ---------------------------------------------------------------------------


def _inverse_series(q: UniPoly, order: int) -> list[Fraction]:
    """Taylor coefficients of ``1/q`` at 0 up to ``s**order``."""
    c = [q.coeff(i) for i in range(order + 1)]
    inv = [1 / c[0]]
    for k in range(1, order + 1):
        inv.append(-sum(c[i] * inv[k - i] for i in range(1, k + 1)) / c[0])
    return inv


def _dd_functional(knots: Counter) -> dict[Fraction, list[Fraction]]:
    """Weights ``c[u][r]`` with ``[knots] F = sum c[u][r] * F^(r)(u)``.

    Obtained from the partial-fraction expansion of ``1 / prod (z - t_i)``, so
    repeated knots are handled by the same formula.
    """
    out = {}
    for u, m in knots.items():
        q = UniPoly.constant(1)
        for v, mv in knots.items():
            if v != u:
                q = q * UniPoly((u - v, 1)) ** mv  # (z - v)^mv expanded at z = u + s
        inv = _inverse_series(q, m - 1)
        out[u] = [inv[m - 1 - r] / math.factorial(r) for r in range(m)]
    return out


def simplex_pushforward(s: Simplex, w: Sequence[int]) -> PiecewisePoly:
    """Density of the image of Lebesgue measure on ``s`` under ``x -> <w, x>``.

    With vertex images ``t_0..t_n`` this is
    ``n * vol(s) * [t_0, ..., t_n] (. - t)_+^(n-1)``, a degree ``n-1`` spline
    on the distinct images; repeated images use confluent divided differences.
    """
    n = s.dim
    ts = [_dot(w, v) for v in s.vertices]
    knots = Counter(ts)
    if len(knots) == 1:
        raise ZeroProjectionError("projection is constant on the simplex")
    coef = _dd_functional(knots)
    scale = n * s.volume()
    distinct = sorted(knots)
    pieces = []
    for j in range(len(distinct) - 1):
        poly = UniPoly()
        for u in distinct[j + 1:]:
            for r, c in enumerate(coef[u]):
                if r > n - 1 or c == 0:
                    continue
                falling = Fraction(math.factorial(n - 1), math.factorial(n - 1 - r))
                poly = poly + UniPoly((u, -1)) ** (n - 1 - r) * (c * falling)
        pieces.append(poly * scale)
    return PiecewisePoly(tuple(distinct), tuple(pieces))


def dh_compute(model: ToricModel, simplices: Sequence[Simplex] | None = None) -> DHFunction:
    """Exact DH density of a rank-one projection.

    ``simplices`` may supply any triangulation of the polytope; by default the
    lexicographic placing triangulation is used.
    """
    if model.k != 1:
        raise RankError(f"exact densities need a rank-one projection (got k={model.k}); use dh_mc_oracle")
    w = model.w
    if not any(w):
        raise ZeroProjectionError("projection vector must be nonzero")
    if simplices is None:
        simplices = triangulate(model.polytope)
    density = PiecewisePoly()
    for s in simplices:
        density = density + simplex_pushforward(s, w)
    return DHFunction(density, density.breakpoints, model.n, 1)


# ---------------------------------------------------------------------------
# Fixed points and wall jumps
# ---------------------------------------------------------------------------


def _simple_cones(p: VRep, v, edge_dirs: list[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    if len(edge_dirs) == p.dim:
        return [edge_dirs]
    # non-simple vertex: split the tangent cone into simplicial cones spanned by edges
    tips = {tuple(a + b for a, b in zip(v, e)): e for e in edge_dirs}
    local = VRep(p.dim, [v, *tips])
    cones = []
    for s in triangulate(local):
        if v in s.vertices:
            cones.append(sorted(tips[u] for u in s.vertices if u != v))
    return cones


def fixed_components(model: ToricModel) -> list[FixedComponent]:
    """Fixed-point data of the circle generated by ``w``, one record per vertex.

    Weights are ``<w, e>`` over the primitive edge directions ``e`` at the
    vertex and the reduced volume is the lattice index ``|det(e_1..e_n)|``
    (one at a smooth vertex).  A non-simple vertex contributes one record per
    simplicial cone of a triangulation of its tangent cone.
    """
    if model.k != 1:
        raise RankError("fixed components need a rank-one projection")
    p, w = model.polytope, model.w
    if not p.full_dimensional:
        raise DegeneratePolytopeError("fixed components need a full-dimensional polytope")
    edges = p.edges()
    for u, v in edges:
        if _dot(w, [a - b for a, b in zip(u, v)]) == 0:
            raise NonGenericError((u, v))
    out = []
    for v in p.vertices:
        dirs = sorted(
            _linalg.primitive_integer([a - b for a, b in zip(u, v)])
            for u in (b if a == v else a for a, b in edges if v in (a, b))
        )
        for cone in _simple_cones(p, v, dirs):
            weights = tuple(_dot(w, e) for e in cone)
            vol = abs(_linalg.det([list(e) for e in cone]))
            out.append(FixedComponent(_dot(w, v), weights, vol))
    return out


def components_at(components: Sequence[FixedComponent], a: Scalar) -> list[FixedComponent]:
    a = as_rational(a)
    return [c for c in components if c.level == a]


def gls_jump(components: Sequence[FixedComponent], a: Scalar) -> UniPoly:
    """Leading jump of the density across the level ``a``, in ``s = t - a``.

    Each component contributes ``vol / prod(weights) * s**(d-1) / (d-1)!``
    with ``d`` the number of weights.
    """
    a = as_rational(a)
    jump = UniPoly()
    for c in components:
        if c.level != a:
            raise MixedLevelError(f"component at level {c.level} passed for level {a}")
        d = len(c.weights)
        coeff = c.reduced_volume / math.prod(c.weights) / math.factorial(d - 1)
        jump = jump + UniPoly.monomial(d - 1, coeff)
    return jump


@dataclass(frozen=True)
class DegreeVerdict:
    passed: bool
    max_degree: int | float
    bound: int


def degree_check(f: DHFunction) -> DegreeVerdict:
    """Every chamber polynomial must have degree at most ``n - k``."""
    bound = f.n - f.k
    top = f.density.max_degree
    return DegreeVerdict(top == NEG_INF or top <= bound, top, bound)


# ---------------------------------------------------------------------------
# Monte Carlo oracle
# ---------------------------------------------------------------------------

MC_CHUNK = 1 << 16


def dh_mc_oracle(model: ToricModel, N: int, seed: int, sample_points: Sequence) -> MCEstimate:
    """Histogram estimate of the DH density by rejection sampling.

    Points are drawn uniformly from the bounding box with :mod:`dhtoric.rng`
    (sample ``i`` uses counters ``i*n .. i*n+n-1``).  At each requested value
    ``t`` the density is estimated by the mass of the bin of half-width
    ``h/2`` around ``t`` divided by the bin volume, with
    ``h = (image width) * N**(-1/(k+2))`` per projected coordinate.
    """
    if N < 10_000:
        raise ValueError("the Monte Carlo oracle needs N >= 10**4")
    p = model.polytope
    if p.is_empty or not p.full_dimensional:
        raise DegeneratePolytopeError("Monte Carlo oracle needs a full-dimensional polytope")
    n, k = model.n, model.k
    verts = np.array([[float(x) for x in v] for v in p.vertices])
    lo, hi = verts.min(axis=0), verts.max(axis=0)
    box_vol = float(np.prod(hi - lo))
    facets = p.facets()
    A = np.array([[float(x) for x in nrm] for nrm, _ in facets])
    b = np.array([float(bd) for _, bd in facets])
    W = np.array(model.projection, dtype=float)
    images = verts @ W.T
    width = images.max(axis=0) - images.min(axis=0)
    h = width * N ** (-1.0 / (k + 2))

    pts = np.array([[float(as_rational(x)) for x in np.atleast_1d(t)] for t in sample_points]).reshape(-1, k)
    counts = np.zeros(len(pts), dtype=np.int64)
    for start in range(0, N, MC_CHUNK):
        m = min(MC_CHUNK, N - start)
        u = rng.random_uniform(seed, start * n, m * n).reshape(m, n)
        x = lo + u * (hi - lo)
        inside = np.all(x @ A.T >= b, axis=1)
        y = x[inside] @ W.T
        for i, t in enumerate(pts):
            counts[i] += int(np.count_nonzero(np.all(np.abs(y - t) < h / 2, axis=1)))
    scale = box_vol / float(np.prod(h))
    phat = counts / N
    est = scale * phat
    se = scale * np.sqrt(phat * (1 - phat) / N)
    return MCEstimate(
        tuple(sample_points),
        tuple(float(e) for e in est),
        tuple(float(s) for s in se),
        seed,
        N,
        tuple(float(x) for x in h),
    )
