"""Exact convex polytopes with rational vertices.

The vertex representation :class:`VRep` is the primary carrier.  Its hull
structure (facets, edges, a deterministic triangulation) comes from a
placing triangulation: points are inserted in lexicographic order, each new
point either raising the affine dimension (coning over everything built so
far) or being joined to the boundary facets it can see.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from dhtoric import _linalg
from dhtoric.exact import Interval, Scalar, as_rational

Point = tuple[Fraction, ...]
Halfspace = tuple[tuple[int, ...], Fraction]  # <x, normal> >= bound

MAX_HREP_DIM = 4


class PolytopeError(ValueError):
    pass


class DegeneratePolytopeError(PolytopeError):
    """Raised when an operation needs a full-dimensional polytope."""


class UnboundedError(PolytopeError):
    pass


class DimensionTooLargeError(PolytopeError):
    pass


def as_point(p: Iterable[Scalar]) -> Point:
    return tuple(as_rational(x) for x in p)


def _sub(a: Point, b: Point) -> list[Fraction]:
    return [x - y for x, y in zip(a, b)]


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


# ---------------------------------------------------------------------------
# Placing triangulation in the affine hull
# ---------------------------------------------------------------------------


@dataclass
class _Hull:
    """Placing triangulation of a point list, in its own affine hull."""

    points: list[Point]
    dim: int = 0  # affine dimension of the hull
    simplices: list[tuple[int, ...]] = field(default_factory=list)
    coords: tuple[int, ...] = ()  # coordinates on which the affine hull projects injectively

    def project(self, p: Point) -> tuple[Fraction, ...]:
        return tuple(p[c] for c in self.coords)

    def orient(self, facet: Sequence[int], q: Point) -> int:
        base = self.project(self.points[facet[0]])
        rows = [_sub(self.project(self.points[i]), base) for i in facet[1:]]
        rows.append(_sub(self.project(q), base))
        d = _linalg.det(rows)
        return (d > 0) - (d < 0)

    def boundary(self) -> list[tuple[tuple[int, ...], int]]:
        """Boundary facets of the triangulation with their opposite vertex."""
        seen: dict[tuple[int, ...], list[int]] = {}
        for s in self.simplices:
            for j in range(len(s)):
                f = s[:j] + s[j + 1:]
                seen.setdefault(f, []).append(s[j])
        return [(f, opp[0]) for f, opp in seen.items() if len(opp) == 1]


def _choose_coords(directions: list[list[Fraction]], ambient: int) -> tuple[int, ...]:
    if not directions:
        return ()
    cols = []
    for c in range(ambient):
        trial = cols + [c]
        if _linalg.rank([[d[k] for k in trial] for d in directions]) == len(trial):
            cols = trial
        if len(cols) == len(directions):
            break
    return tuple(cols)


def _placing(points: list[Point]) -> _Hull:
    hull = _Hull(points)
    if not points:
        return hull
    ambient = len(points[0])
    base = points[0]
    directions: list[list[Fraction]] = []
    hull.simplices = [(0,)]
    for idx in range(1, len(points)):
        p = points[idx]
        d = _sub(p, base)
        if _linalg.rank(directions + [d]) > len(directions):
            directions.append(d)
            hull.dim += 1
            hull.coords = _choose_coords(directions, ambient)
            hull.simplices = [s + (idx,) for s in hull.simplices]
            continue
        if hull.dim == 0:
            continue  # duplicate of the base point
        new = []
        for facet, opp in hull.boundary():
            o = hull.orient(facet, points[opp])
            q = hull.orient(facet, p)
            if q != 0 and q != o:
                new.append(facet + (idx,))
        hull.simplices.extend(new)
    return hull


def _facet_planes(hull: _Hull) -> list[tuple[tuple[int, ...], Fraction]]:
    """Facet hyperplanes of the hull in projected coordinates, inward normals."""
    if hull.dim == 0:
        return []
    planes = {}
    for facet, opp in hull.boundary():
        base = hull.project(hull.points[facet[0]])
        rows = [_sub(hull.project(hull.points[i]), base) for i in facet[1:]]
        (normal,) = _linalg.nullspace(rows, hull.dim)
        normal = _linalg.primitive_integer(normal)
        if _dot(normal, _sub(hull.project(hull.points[opp]), base)) < 0:
            normal = tuple(-x for x in normal)
        planes[(normal, _dot(normal, base))] = None
    return list(planes)


# ---------------------------------------------------------------------------
# Public types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(as_point(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if self.signed_det() == 0:
            raise DegeneratePolytopeError("simplex vertices are affinely dependent")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def signed_det(self) -> Fraction:
        v0 = self.vertices[0]
        rows = [_sub(v, v0) for v in self.vertices[1:]]
        if len(rows) != len(v0):
            raise DegeneratePolytopeError("simplex must have ambient-dimension + 1 vertices")
        return _linalg.det(rows)

    def volume(self) -> Fraction:
        return abs(self.signed_det()) / math.factorial(self.dim)


class VRep:
    """Convex hull of finitely many rational points.

    The stored vertex list is irredundant and lexicographically sorted.
    """

    def __init__(self, dim: int, vertices: Iterable[Iterable[Scalar]]):
        pts = sorted({as_point(v) for v in vertices})
        if any(len(p) != dim for p in pts):
            raise PolytopeError(f"all vertices must have {dim} coordinates")
        self.dim = dim
        if len(pts) <= 1:
            self.vertices: tuple[Point, ...] = tuple(pts)
        else:
            self.vertices = _extreme_points(pts)

    def __repr__(self) -> str:
        verts = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"VRep(dim={self.dim}, vertices=[{verts}])"

    def __eq__(self, other) -> bool:
        return isinstance(other, VRep) and (self.dim, self.vertices) == (other.dim, other.vertices)

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def _hull(self) -> _Hull:
        return _placing(list(self.vertices))

    @property
    def affine_dim(self) -> int:
        return self._hull.dim if self.vertices else -1

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def facets(self) -> list[Halfspace]:
        """Irredundant H-representation ``<x, normal> >= bound`` (primitive integer normals)."""
        if not self.full_dimensional:
            raise DegeneratePolytopeError("facets are only defined for full-dimensional polytopes")
        hull = self._hull
        if hull.coords != tuple(range(self.dim)):
            raise AssertionError("full-dimensional hull must use every coordinate")
        return sorted(_facet_planes(hull))

    def hrep(self) -> "HRep":
        return HRep(self.dim, tuple(self.facets()))

    def edges(self) -> list[tuple[Point, Point]]:
        """Pairs of vertices spanning an edge (full-dimensional polytopes only)."""
        facets = self.facets()
        inc = {v: [n for n, b in facets if _dot(n, v) == b] for v in self.vertices}
        out = []
        for u, v in itertools.combinations(self.vertices, 2):
            common = [n for n in inc[u] if n in inc[v]]
            r = _linalg.rank(common) if common else 0
            if r == self.dim - 1:
                out.append((u, v))
        return out

    def neighbors(self, v: Point) -> list[Point]:
        v = as_point(v)
        return [b if a == v else a for a, b in self.edges() if v in (a, b)]

    def contains(self, x: Iterable[Scalar]) -> bool:
        x = as_point(x)
        if self.full_dimensional:
            return all(_dot(n, x) >= b for n, b in self.facets())
        return any(_in_simplex(s, x) for s in self._raw_simplices())

    def _raw_simplices(self) -> list[tuple[Point, ...]]:
        return [tuple(self.vertices[i] for i in s) for s in self._hull.simplices]


def _in_simplex(verts: Sequence[Point], x: Point) -> bool:
    # solve x = sum l_i v_i, sum l_i = 1 and test l >= 0
    rows = [[v[c] for v in verts] for c in range(len(x))] + [[Fraction(1)] * len(verts)]
    rhs = list(x) + [Fraction(1)]
    lam = _linalg.solve(rows, rhs)
    return lam is not None and all(l >= 0 for l in lam)


def _extreme_points(pts: list[Point]) -> tuple[Point, ...]:
    hull = _placing(pts)
    if hull.dim == 0:
        return (pts[0],)
    planes = _facet_planes(hull)
    out = []
    for p in pts:
        q = hull.project(p)
        tight = [list(n) for n, b in planes if _dot(n, q) == b]
        if tight and _linalg.rank(tight) == hull.dim:
            out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class HRep:
    """Polyhedron ``{x : <x, normal_i> >= bound_i}``."""

    dim: int
    constraints: tuple[Halfspace, ...]

    def __post_init__(self):
        cons = []
        for normal, bound in self.constraints:
            normal = tuple(int(x) for x in normal)
            if len(normal) != self.dim:
                raise PolytopeError(f"constraint normal {normal} does not have {self.dim} entries")
            if not any(normal):
                raise PolytopeError("constraint normals must be nonzero")
            cons.append((normal, as_rational(bound)))
        object.__setattr__(self, "constraints", tuple(cons))

    def satisfied_by(self, x: Point) -> bool:
        return all(_dot(n, x) >= b for n, b in self.constraints)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def _enumerate_vertices(dim: int, cons: Sequence[Halfspace]) -> list[Point]:
    found = set()
    for sub in itertools.combinations(cons, dim):
        x = _linalg.solve([list(n) for n, _ in sub], [b for _, b in sub])
        if x is not None and all(_dot(n, x) >= b for n, b in cons):
            found.add(tuple(x))
    return sorted(found)


def vertices_from_hrep(h: HRep) -> VRep:
    """Exact vertex enumeration for bounded systems in dimension at most four.

    Every ``dim``-subset of constraints is solved; feasible solutions are the
    vertices.  Infeasible systems give an empty :class:`VRep`.
    """
    if h.dim > MAX_HREP_DIM:
        raise DimensionTooLargeError(f"vertex enumeration supports dim <= {MAX_HREP_DIM}, got {h.dim}")
    normals = [list(n) for n, _ in h.constraints]
    r = _linalg.rank(normals) if normals else 0
    if r < h.dim:
        # lineality space present: feasible implies unbounded
        basis, _ = _linalg.row_echelon(normals) if normals else ([], [])
        reduced = [(tuple(_dot(b, n) for b in basis), bnd) for n, bnd in h.constraints]
        if r == 0 or _enumerate_vertices(r, reduced):
            raise UnboundedError("constraint normals do not span the space")
        return VRep(h.dim, [])
    verts = _enumerate_vertices(h.dim, h.constraints)
    if not verts:
        return VRep(h.dim, [])
    for sub in itertools.combinations(h.constraints, h.dim - 1):
        rows = [list(n) for n, _ in sub]
        null = _linalg.nullspace(rows, h.dim)
        if len(null) != 1:
            continue
        ray = null[0]
        for sgn in (1, -1):
            if all(sgn * _dot(n, ray) >= 0 for n, _ in h.constraints):
                raise UnboundedError(f"recession direction {tuple(sgn * x for x in ray)}")
    return VRep(h.dim, verts)


def triangulate(p: VRep, order: Sequence[Sequence[Scalar]] | None = None) -> list[Simplex]:
    """Deterministic placing triangulation.

    Vertices are inserted in lexicographic order unless ``order`` gives a
    permutation of them; different orders generally give different
    triangulations of the same polytope.
    """
    if not p.full_dimensional:
        raise DegeneratePolytopeError(
            f"cannot triangulate: affine dimension {p.affine_dim} < ambient {p.dim}"
        )
    if order is None:
        return [Simplex(s) for s in p._raw_simplices()]
    pts = [as_point(v) for v in order]
    if sorted(pts) != list(p.vertices):
        raise PolytopeError("order must be a permutation of the vertex list")
    hull = _placing(pts)
    return [Simplex(tuple(pts[i] for i in s)) for s in hull.simplices]


def volume(p: VRep) -> Fraction:
    """Euclidean volume; zero for lower-dimensional input."""
    if p.is_empty or not p.full_dimensional:
        return Fraction(0)
    return sum((s.volume() for s in triangulate(p)), Fraction(0))


def cut(p: VRep, halfspaces: Iterable[tuple[Sequence[int], Scalar]]) -> VRep:
    """Intersect with ``{x : <x, v_i> >= b_i}`` for every given ``(v_i, b_i)``."""
    current = p
    for normal, bound in halfspaces:
        normal = tuple(int(x) for x in normal)
        bound = as_rational(bound)
        if current.is_empty:
            break
        pieces = current._raw_simplices()
        new_pts = set()
        for simplex in pieces:
            vals = [_dot(normal, v) - bound for v in simplex]
            for v, s in zip(simplex, vals):
                if s >= 0:
                    new_pts.add(v)
            for (u, su), (v, sv) in itertools.combinations(zip(simplex, vals), 2):
                if (su > 0 > sv) or (sv > 0 > su):
                    lam = su / (su - sv)
                    new_pts.add(tuple(a + lam * (b - a) for a, b in zip(u, v)))
        current = VRep(p.dim, new_pts)
    return current


def support_and_criticals(p: VRep, w: Sequence[int]) -> tuple[Interval, list[Fraction]]:
    """Image interval of ``x -> <w, x>`` and the sorted distinct vertex images."""
    if not any(w):
        raise ValueError("projection vector must be nonzero")
    if p.is_empty:
        raise PolytopeError("empty polytope has no image")
    images = sorted({_dot(w, v) for v in p.vertices})
    return Interval(images[0], images[-1]), images


# ---------------------------------------------------------------------------
# Standard shapes
# ---------------------------------------------------------------------------


def cube(dim: int, side: Scalar = 1) -> VRep:
    side = as_rational(side)
    return VRep(dim, [tuple(side * x for x in bits) for bits in itertools.product((0, 1), repeat=dim)])


def standard_simplex(dim: int) -> VRep:
    verts = [tuple(Fraction(0) for _ in range(dim))]
    for i in range(dim):
        verts.append(tuple(Fraction(int(i == j)) for j in range(dim)))
    return VRep(dim, verts)


def cross_polytope(dim: int) -> VRep:
    verts = []
    for i in range(dim):
        for s in (1, -1):
            verts.append(tuple(Fraction(s * int(i == j)) for j in range(dim)))
    return VRep(dim, verts)


def product(p: VRep, q: VRep) -> VRep:
    return VRep(p.dim + q.dim, [u + v for u in p.vertices for v in q.vertices])
