"""JSON and CSV formats.

Rationals travel as strings ``"p/q"`` (or ``"p"``); JSON integers are also
accepted on input, floats never are.  Structural problems raise
:class:`SchemaError`, which carries a line/column for syntax errors and a
JSON path otherwise.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from dhtoric.exact import PiecewisePoly, UniPoly, format_rational
from dhtoric.logconcave import (
    CircleClassification,
    CircleDensity,
    CriticalLevelData,
    HamiltonianVerdict,
    LogConcavityVerdict,
    Witness,
)
from dhtoric.polytope import PolytopeError, VRep
from dhtoric.pushforward import DHFunction, FixedComponent, MCEstimate, ToricModel
from dhtoric.sl2forms import ExteriorForm, FormError, PrimitiveDecomposition, index_name, parse_index


class SchemaError(ValueError):
    def __init__(self, message: str, path: str = "$", line: int | None = None, col: int | None = None):
        self.path, self.line, self.col = path, line, col
        where = f"line {line}, column {col}" if line is not None else path
        super().__init__(f"{where}: {message}")


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(e.msg, line=e.lineno, col=e.colno) from None


def load(path: str | Path) -> Any:
    return loads(Path(path).read_text())


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _need(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", path)
    if key not in obj:
        raise SchemaError(f"missing key {key!r}", path)
    return obj[key]


def _list(obj: Any, path: str) -> list:
    if not isinstance(obj, list):
        raise SchemaError("expected an array", path)
    return obj


# -- scalars and polynomials -------------------------------------------------


def rational_to_json(x: Fraction) -> str:
    return format_rational(Fraction(x))


def rational_from_json(v: Any, path: str = "$") -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SchemaError(f"expected a rational string like \"3/4\", got {v!r}", path)
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"not a rational: {v!r}", path) from None


def int_from_json(v: Any, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"expected an integer, got {v!r}", path)
    return v


def pw_to_json(f: PiecewisePoly) -> dict:
    return {
        "breakpoints": [rational_to_json(b) for b in f.breakpoints],
        "pieces": [{"coeffs": [rational_to_json(c) for c in p.coeffs] or ["0"]} for p in f.pieces],
    }


def pw_from_json(obj: Any, path: str = "$") -> PiecewisePoly:
    bps = [rational_from_json(b, f"{path}.breakpoints[{i}]") for i, b in enumerate(_list(_need(obj, "breakpoints", path), f"{path}.breakpoints"))]
    pieces = []
    for i, p in enumerate(_list(_need(obj, "pieces", path), f"{path}.pieces")):
        q = f"{path}.pieces[{i}]"
        coeffs = _list(_need(p, "coeffs", q), f"{q}.coeffs")
        pieces.append(UniPoly(tuple(rational_from_json(c, f"{q}.coeffs[{j}]") for j, c in enumerate(coeffs))))
    try:
        return PiecewisePoly(tuple(bps), tuple(pieces))
    except ValueError as e:
        raise SchemaError(str(e), path) from None


# -- polytopes and models ----------------------------------------------------


def polytope_to_json(p: VRep) -> dict:
    return {"dim": p.dim, "vertices": [[rational_to_json(x) for x in v] for v in p.vertices]}


def polytope_from_json(obj: Any, path: str = "$") -> VRep:
    dim = int_from_json(_need(obj, "dim", path), f"{path}.dim")
    verts = []
    for i, v in enumerate(_list(_need(obj, "vertices", path), f"{path}.vertices")):
        q = f"{path}.vertices[{i}]"
        coords = _list(v, q)
        if len(coords) != dim:
            raise SchemaError(f"vertex has {len(coords)} coordinates, expected {dim}", q)
        verts.append([rational_from_json(x, f"{q}[{j}]") for j, x in enumerate(coords)])
    try:
        return VRep(dim, verts)
    except PolytopeError as e:
        raise SchemaError(str(e), path) from None


def halfspace_to_json(normal, bound) -> dict:
    return {"normal": [int(a) for a in normal], "bound": rational_to_json(bound)}


def halfspace_from_json(obj: Any, path: str = "$") -> tuple[tuple[int, ...], Fraction]:
    normal = tuple(int_from_json(a, f"{path}.normal[{i}]") for i, a in enumerate(_list(_need(obj, "normal", path), f"{path}.normal")))
    return normal, rational_from_json(_need(obj, "bound", path), f"{path}.bound")


def model_to_json(m: ToricModel) -> dict:
    return {"polytope": polytope_to_json(m.polytope), "projection": [list(r) for r in m.projection]}


def projection_from_json(obj: Any, path: str) -> tuple[tuple[int, ...], ...]:
    rows = _list(obj, path)
    return tuple(
        tuple(int_from_json(a, f"{path}[{i}][{j}]") for j, a in enumerate(_list(r, f"{path}[{i}]")))
        for i, r in enumerate(rows)
    )


def model_from_json(obj: Any, path: str = "$") -> ToricModel:
    poly = polytope_from_json(_need(obj, "polytope", path), f"{path}.polytope")
    proj = projection_from_json(_need(obj, "projection", path), f"{path}.projection")
    try:
        return ToricModel(poly, proj)
    except ValueError as e:
        raise SchemaError(str(e), f"{path}.projection") from None


def dh_to_json(f: DHFunction) -> dict:
    out = pw_to_json(f.density)
    out.update(walls=[rational_to_json(w) for w in f.walls], n=f.n, k=f.k)
    return out


def dh_from_json(obj: Any, path: str = "$") -> DHFunction:
    density = pw_from_json(obj, path)
    walls = tuple(rational_from_json(w, f"{path}.walls[{i}]") for i, w in enumerate(_list(_need(obj, "walls", path), f"{path}.walls")))
    return DHFunction(density, walls, int_from_json(_need(obj, "n", path), f"{path}.n"), int_from_json(obj.get("k", 1), f"{path}.k"))


def component_to_json(c: FixedComponent) -> dict:
    return {
        "level": rational_to_json(c.level),
        "weights": [rational_to_json(a) for a in c.weights],
        "reduced_volume": rational_to_json(c.reduced_volume),
    }


def component_from_json(obj: Any, path: str = "$") -> FixedComponent:
    weights = [rational_from_json(a, f"{path}.weights[{i}]") for i, a in enumerate(_list(_need(obj, "weights", path), f"{path}.weights"))]
    try:
        return FixedComponent(
            rational_from_json(_need(obj, "level", path), f"{path}.level"),
            tuple(weights),
            rational_from_json(obj.get("reduced_volume", "1"), f"{path}.reduced_volume"),
        )
    except ValueError as e:
        raise SchemaError(str(e), path) from None


def criticals_from_json(obj: Any, path: str = "$") -> list[CriticalLevelData]:
    out = []
    for i, rec in enumerate(_list(obj, path)):
        q = f"{path}[{i}]"
        level = rational_from_json(_need(rec, "level", q), f"{q}.level")
        comps = [component_from_json(c, f"{q}.components[{j}]") for j, c in enumerate(_list(_need(rec, "components", q), f"{q}.components"))]
        try:
            out.append(CriticalLevelData(level, tuple(comps)))
        except ValueError as e:
            raise SchemaError(str(e), q) from None
    return out


# -- verdicts and circle densities ------------------------------------------


def witness_to_json(w: Witness | None) -> dict | None:
    if w is None:
        return None
    return {"location": rational_to_json(w.location), "reason": w.reason.value}


def verdict_to_json(v: LogConcavityVerdict) -> dict:
    out = {"status": v.status.value}
    if v.witness is not None:
        out["witness"] = witness_to_json(v.witness)
    return out


def classification_to_json(c: CircleClassification) -> dict:
    out = {"classification": c.kind.value}
    if c.chart_failure is not None:
        out["witness"] = witness_to_json(c.chart_failure)
        out["fails_on_every_chart"] = c.fails_on_every_chart
    return out


def hamiltonian_to_json(v: HamiltonianVerdict) -> dict:
    return {"status": v.decision.value, "classification": v.classification.value, "report": v.report}


def circle_to_json(f: CircleDensity) -> dict:
    out = pw_to_json(f.density)
    out["period"] = rational_to_json(f.period)
    return out


def circle_from_json(obj: Any, path: str = "$") -> CircleDensity:
    period = rational_from_json(_need(obj, "period", path), f"{path}.period")
    try:
        return CircleDensity(pw_from_json(obj, path), period)
    except ValueError as e:
        raise SchemaError(str(e), path) from None


# -- exterior forms ------------------------------------------------------------


def form_to_json(a: ExteriorForm) -> dict:
    terms = [
        {"indices": [index_name(i) for i in range(2 * a.n) if m >> i & 1], "coeff": rational_to_json(c)}
        for m, c in a.terms.items()
    ]
    return {"n": a.n, "terms": terms}


def form_from_json(obj: Any, path: str = "$") -> ExteriorForm:
    n = int_from_json(_need(obj, "n", path), f"{path}.n")
    try:
        out = ExteriorForm.zero(n)
        for i, t in enumerate(_list(_need(obj, "terms", path), f"{path}.terms")):
            q = f"{path}.terms[{i}]"
            names = _list(_need(t, "indices", q), f"{q}.indices")
            idx = [parse_index(s) if isinstance(s, str) else -1 for s in names]
            if any(j < 0 or j >= 2 * n for j in idx) or len(set(idx)) != len(idx):
                raise SchemaError(f"bad index list {names!r} for n = {n}", f"{q}.indices")
            out = out + ExteriorForm.monomial(n, idx, rational_from_json(_need(t, "coeff", q), f"{q}.coeff"))
        return out
    except FormError as e:
        raise SchemaError(str(e), path) from None


def decomposition_to_json(d: PrimitiveDecomposition) -> dict:
    return {
        "n": d.n,
        "degree": d.degree,
        "components": [{"r": r, "beta": form_to_json(b)} for r, b in d.components.items()],
    }


# -- CSV -------------------------------------------------------------------------


def mc_to_csv(est: MCEstimate) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "estimate", "stderr", "N", "seed"])
    for t, e, s in zip(est.sample_points, est.estimates, est.stderrs):
        tt = ";".join(rational_to_json(Fraction(x)) for x in t) if isinstance(t, (list, tuple)) else rational_to_json(Fraction(t))
        w.writerow([tt, repr(e), repr(s), est.N, est.seed])
    return buf.getvalue()


def samples_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "value"])
    for t, v in rows:
        w.writerow([rational_to_json(t), rational_to_json(v)])
    return buf.getvalue()
