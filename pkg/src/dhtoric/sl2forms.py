"""Constant-coefficient exterior algebra of the symplectic space R^(2n).

Basis one-forms are ordered ``x1, y1, x2, y2, ...`` and stored as bit
positions ``x_i -> 2(i-1)``, ``y_i -> 2(i-1)+1``; a basis monomial is the
bitmask of its factors, wedged in increasing order.  ``omega = sum x_i ^ y_i``.

The Lefschetz triple is ``L = omega ^ .``, ``Lambda = sum_i i(d/dy_i) i(d/dx_i)``
(contract ``x_i`` first) and ``H = (n - k)`` on degree ``k``; with these signs
``[Lambda, L] = H``, ``[H, Lambda] = 2 Lambda`` and ``[H, L] = -2 L``.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from dhtoric import _linalg
from dhtoric.exact import Scalar, as_rational


class FormError(ValueError):
    pass


class MixedDegreeError(FormError):
    pass


class NotPrimitiveError(FormError):
    pass


class NotTypeOneOneError(FormError):
    pass


_NAME = re.compile(r"^([xy])([1-9][0-9]*)$")


def index_name(i: int) -> str:
    return f"{'xy'[i % 2]}{i // 2 + 1}"


def parse_index(name: str) -> int:
    m = _NAME.match(name)
    if not m:
        raise FormError(f"bad basis name {name!r}; expected x1, y1, x2, ...")
    return 2 * (int(m.group(2)) - 1) + (m.group(1) == "y")


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _wedge_sign(a: int, b: int) -> int:
    """Sign of ``e_a ^ e_b`` relative to the sorted monomial ``e_(a|b)``."""
    swaps = sum(bin(a >> (j + 1)).count("1") for j in _bits(b))
    return -1 if swaps & 1 else 1


@dataclass(frozen=True)
class ExteriorForm:
    n: int
    terms: Mapping[int, Fraction]

    def __post_init__(self):
        if self.n < 1:
            raise FormError("half-dimension must be positive")
        full = (1 << 2 * self.n) - 1
        clean = {}
        for mask, c in dict(self.terms).items():
            if mask & ~full:
                raise FormError(f"monomial {mask:b} uses indices beyond dimension {2 * self.n}")
            c = as_rational(c)
            if c:
                clean[mask] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.terms.items())))

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "ExteriorForm":
        return cls(n, {})

    @classmethod
    def scalar(cls, n: int, c: Scalar = 1) -> "ExteriorForm":
        return cls(n, {0: as_rational(c)})

    @classmethod
    def monomial(cls, n: int, indices: Iterable[int | str], coeff: Scalar = 1) -> "ExteriorForm":
        """``coeff * e_{i1} ^ e_{i2} ^ ...`` in the order given (sign-normalized)."""
        form = cls.scalar(n, coeff)
        for i in indices:
            i = parse_index(i) if isinstance(i, str) else i
            form = form.wedge(cls(n, {1 << i: Fraction(1)}))
        return form

    @classmethod
    def basis(cls, n: int, degree: int | None = None) -> list["ExteriorForm"]:
        masks = range(1 << 2 * n)
        return [cls(n, {m: 1}) for m in masks if degree is None or bin(m).count("1") == degree]

    # structure ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {bin(m).count("1") for m in self.terms}

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise MixedDegreeError(f"form has mixed degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def coeff(self, indices: Iterable[int | str]) -> Fraction:
        mask = 0
        for i in indices:
            mask |= 1 << (parse_index(i) if isinstance(i, str) else i)
        return self.terms.get(mask, Fraction(0))

    def top_coefficient(self) -> Fraction:
        """Coefficient against ``x1^y1^...^xn^yn`` (= omega^n / n!)."""
        return self.terms.get((1 << 2 * self.n) - 1, Fraction(0))

    # algebra --------------------------------------------------------------

    def _same(self, other: "ExteriorForm") -> None:
        if other.n != self.n:
            raise FormError("forms live on different spaces")

    def __add__(self, other: "ExteriorForm") -> "ExteriorForm":
        self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExteriorForm(self.n, out)

    def __neg__(self) -> "ExteriorForm":
        return ExteriorForm(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ExteriorForm") -> "ExteriorForm":
        return self + (-other)

    def __mul__(self, c: Scalar) -> "ExteriorForm":
        c = as_rational(c)
        return ExteriorForm(self.n, {m: c * v for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "ExteriorForm":
        return self * (1 / as_rational(c))

    def wedge(self, other: "ExteriorForm") -> "ExteriorForm":
        self._same(other)
        out: dict[int, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                if a & b:
                    continue
                out[a | b] = out.get(a | b, 0) + _wedge_sign(a, b) * ca * cb
        return ExteriorForm(self.n, out)

    __xor__ = wedge

    def contract(self, i: int) -> "ExteriorForm":
        """Interior product with the basis vector dual to ``e_i``."""
        out = {}
        for m, c in self.terms.items():
            if m >> i & 1:
                sign = -1 if bin(m & ((1 << i) - 1)).count("1") & 1 else 1
                out[m & ~(1 << i)] = sign * c
        return ExteriorForm(self.n, out)

    def power(self, k: int) -> "ExteriorForm":
        out = ExteriorForm.scalar(self.n)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def apply_j(self) -> "ExteriorForm":
        """Pull back along ``J: x_j -> y_j, y_j -> -x_j``."""
        out = ExteriorForm.scalar(self.n, 0)
        for m, c in self.terms.items():
            img = ExteriorForm.scalar(self.n, c)
            for i in _bits(m):
                if i % 2 == 0:
                    img = img.wedge(ExteriorForm(self.n, {1 << (i + 1): 1}))
                else:
                    img = img.wedge(ExteriorForm(self.n, {1 << (i - 1): -1}))
            out = out + img
        return out

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for m, c in self.terms.items():
            mono = "^".join(index_name(i) for i in _bits(m)) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def omega(n: int) -> ExteriorForm:
    return ExteriorForm(n, {0b11 << 2 * i: 1 for i in range(n)})


def volume_form(n: int) -> ExteriorForm:
    return ExteriorForm(n, {(1 << 2 * n) - 1: 1})


# ---------------------------------------------------------------------------
# sl(2) action
# ---------------------------------------------------------------------------


def lefschetz(a: ExteriorForm) -> ExteriorForm:
    return omega(a.n).wedge(a)


def dual_lefschetz(a: ExteriorForm) -> ExteriorForm:
    out = ExteriorForm.zero(a.n)
    for i in range(a.n):
        out = out + a.contract(2 * i).contract(2 * i + 1)
    return out


def counting(a: ExteriorForm) -> ExteriorForm:
    return ExteriorForm(a.n, {m: (a.n - bin(m).count("1")) * c for m, c in a.terms.items()})


_OPS = {"L": lefschetz, "Lambda": dual_lefschetz, "H": counting}


def sl2_apply(op: str, a: ExteriorForm) -> ExteriorForm:
    if op not in _OPS:
        raise ValueError(f"unknown operator {op!r}; expected one of {sorted(_OPS)}")
    if op == "H":
        a.degree  # raises on mixed degree
    return _OPS[op](a)


def bracket(x: str, y: str, a: ExteriorForm) -> ExteriorForm:
    """``[X, Y] a`` for operator names (H applied per homogeneous piece)."""
    return _OPS[x](_OPS[y](a)) - _OPS[y](_OPS[x](a))


# ---------------------------------------------------------------------------
# Primitivity and decomposition
# ---------------------------------------------------------------------------


def is_primitive(a: ExteriorForm) -> bool:
    k = a.degree
    if k > a.n:
        raise FormError(f"degree {k} exceeds n = {a.n}; there are no primitive forms above middle degree")
    return omega(a.n).power(a.n - k + 1).wedge(a).is_zero


@dataclass(frozen=True)
class PrimitiveDecomposition:
    """``alpha = sum_r L^r / r! beta[r]`` with each ``beta[r]`` primitive."""

    n: int
    degree: int
    components: Mapping[int, ExteriorForm]

    def reconstruct(self) -> ExteriorForm:
        out = ExteriorForm.zero(self.n)
        for r, beta in self.components.items():
            out = out + omega(self.n).power(r).wedge(beta) / math.factorial(r)
        return out


def primitive_decomposition(a: ExteriorForm) -> PrimitiveDecomposition:
    """Peel components off from the top: ``Lambda^R`` kills every term with ``r < R``.

    For primitive ``beta`` of degree ``m``, ``Lambda L^r beta = r (n-m-r+1) L^(r-1) beta``,
    hence ``Lambda^R (L^R/R! beta) = prod_{r=1..R} (n-m-r+1) * beta``.
    """
    n, k = a.n, a.degree
    rest = a
    comps: dict[int, ExteriorForm] = {}
    for R in range(k // 2, max(k - n, 0) - 1, -1):
        m = k - 2 * R
        c = math.prod(n - m - r + 1 for r in range(1, R + 1))
        probe = rest
        for _ in range(R):
            probe = dual_lefschetz(probe)
        beta = probe / c
        if not beta.is_zero:
            comps[R] = beta
            rest = rest - omega(n).power(R).wedge(beta) / math.factorial(R)
    if not rest.is_zero:
        raise AssertionError(f"primitive decomposition left a remainder {rest}")
    return PrimitiveDecomposition(n, k, dict(sorted(comps.items())))


def _matrix(fn, n: int, k: int, target: int) -> list[list[Fraction]]:
    """Matrix of a linear map on degree-``k`` forms, columns indexed by basis monomials."""
    src = ExteriorForm.basis(n, k)
    rows = [m for m in range(1 << 2 * n) if bin(m).count("1") == target]
    images = [fn(b) for b in src]
    return [[img.terms.get(m, Fraction(0)) for img in images] for m in rows]


def primitive_dimension(n: int, k: int) -> int:
    """Dimension of primitive ``k``-forms, computed as the kernel of ``omega^(n-k+1) ^ .``."""
    if k > n:
        return 0
    p = n - k + 1
    w = omega(n).power(p)
    target = k + 2 * p
    if target > 2 * n:
        return math.comb(2 * n, k)
    mat = _matrix(w.wedge, n, k, target)
    return math.comb(2 * n, k) - _linalg.rank(mat)


def primitive_basis(n: int, k: int) -> list[ExteriorForm]:
    p = n - k + 1
    target = k + 2 * p
    src = ExteriorForm.basis(n, k)
    if target > 2 * n:
        return src
    mat = _matrix(omega(n).power(p).wedge, n, k, target)
    out = []
    for vec in _linalg.nullspace(mat, len(src)):
        form = ExteriorForm.zero(n)
        for c, b in zip(vec, src):
            form = form + b * c
        out.append(form)
    return out


def _random_rational(rnd: random.Random) -> Fraction:
    return Fraction(rnd.randint(-9, 9), rnd.randint(1, 6))


def random_form(n: int, k: int, seed: int) -> ExteriorForm:
    rnd = random.Random(seed)
    masks = [m for m in range(1 << 2 * n) if bin(m).count("1") == k]
    return ExteriorForm(n, {m: _random_rational(rnd) for m in masks})


# ---------------------------------------------------------------------------
# Dimension four: Hodge star and the Hodge-Riemann sign
# ---------------------------------------------------------------------------

_FULL4 = 0b1111


def hodge_star_dim4(a: ExteriorForm) -> ExteriorForm:
    """Euclidean Hodge star on R^4 oriented by ``omega^2/2 = x1^y1^x2^y2``."""
    if a.n != 2:
        raise FormError("hodge_star_dim4 needs n = 2")
    out = {}
    for m, c in a.terms.items():
        comp = _FULL4 & ~m
        out[comp] = _wedge_sign(m, comp) * c
    return ExteriorForm(2, out)


def is_type_one_one(a: ExteriorForm) -> bool:
    """A real 2-form is of type (1,1) iff it is invariant under ``J``."""
    if a.is_zero:
        return True
    return a.degree == 2 and a.apply_j() == a


def _check_primitive_11(g: ExteriorForm) -> None:
    if g.n != 2:
        raise FormError("expected a form on R^4 (n = 2)")
    if g.is_zero:
        return
    if g.degree != 2:
        raise FormError(f"expected a 2-form, got degree {g.degree}")
    if not is_primitive(g):
        raise NotPrimitiveError(f"omega ^ gamma = {lefschetz(g)} is nonzero")
    if not is_type_one_one(g):
        raise NotTypeOneOneError(f"gamma is not J-invariant: J gamma = {g.apply_j()}")


def primitive_11_basis() -> list[ExteriorForm]:
    """Basis of primitive J-invariant 2-forms on R^4 (three-dimensional)."""
    prim = primitive_basis(2, 2)
    # J-invariant part of the primitive space: kernel of (J - 1)
    cols = [p.apply_j() - p for p in prim]
    masks = [m for m in range(16) if bin(m).count("1") == 2]
    mat = [[c.terms.get(m, Fraction(0)) for c in cols] for m in masks]
    out = []
    for vec in _linalg.nullspace(mat, len(prim)):
        form = ExteriorForm.zero(2)
        for c, p in zip(vec, prim):
            form = form + p * c
        out.append(form)
    return out


def random_primitive_11(seed: int) -> ExteriorForm:
    rnd = random.Random(seed)
    out = ExteriorForm.zero(2)
    for b in primitive_11_basis():
        out = out + b * _random_rational(rnd)
    return out


def weil_verify(g: ExteriorForm) -> bool:
    _check_primitive_11(g)
    return hodge_star_dim4(g) == -g


def key_inequality_check(g: ExteriorForm, s: Scalar) -> bool:
    """With ``c = gamma + s omega``: is ``(c^c)(omega^omega) <= 2 (c^omega)^2``?"""
    _check_primitive_11(g)
    w = omega(2)
    c = g + w * as_rational(s)
    c2 = c.wedge(c).top_coefficient()
    w2 = w.wedge(w).top_coefficient()
    cw = c.wedge(w).top_coefficient()
    return c2 * w2 <= 2 * cw * cw
