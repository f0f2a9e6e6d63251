"""Curated fixtures with self-validation and golden-file comparison.

Every exact case recomputes its density and checks mass = volume, the degree
bound, log-concavity, Graham's inequality at interior walls and (in dimension
two) the GLS jump at every wall before its output is compared to the stored
golden JSON.  Monte Carlo, circle and exterior-algebra cases run alongside.
"""

from __future__ import annotations

import difflib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from dhtoric import jsonio, logconcave as lc, polytope as pt, pushforward as pf, rng, sl2forms as sl
from dhtoric.exact import PiecewisePoly, UniPoly

DEFAULT_SEED = 42
MC_POINTS = [Fraction(3 * k, 21) for k in range(1, 21)]


def default_golden_dir() -> Path:
    return Path(str(resources.files("dhtoric") / "golden"))


# -- fixtures ----------------------------------------------------------------


def _cut_square() -> pt.VRep:
    return pt.cut(pt.cube(2, 2), [((-1, -1), -3)])


def _cut_cube() -> pt.VRep:
    return pt.cut(pt.cube(3, 2), [((-1, -1, -1), -5)])


def _hexagon() -> pt.VRep:
    return pt.VRep(2, [(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)])


def _trapezoid() -> pt.VRep:
    return pt.VRep(2, [(0, 0), (3, 0), (2, 1), (0, 1)])


POLYTOPES: dict[str, Callable[[], pt.VRep]] = {
    "square": lambda: pt.cube(2),
    "triangle": lambda: pt.standard_simplex(2),
    "hexagon": _hexagon,
    "trapezoid": _trapezoid,
    "diamond": lambda: pt.cross_polytope(2),
    "cut_square": _cut_square,
    "cube3": lambda: pt.cube(3),
    "simplex3": lambda: pt.standard_simplex(3),
    "octahedron": lambda: pt.cross_polytope(3),
    "cut_cube": _cut_cube,
    "cube4": lambda: pt.cube(4),
    "simplex4": lambda: pt.standard_simplex(4),
    "cross4": lambda: pt.cross_polytope(4),
}

PROJECTIONS: dict[int, list[tuple[int, ...]]] = {
    2: [(1, 2), (3, 1), (2, -1)],
    3: [(1, 2, 4), (1, 3, 7), (2, -1, 5)],
    4: [(1, 2, 4, 8), (1, 3, 7, 15), (2, -1, 5, 11)],
}

# [0,1] x Q projected to the first coordinate: exact but not generic
PRODUCT_MODELS: dict[str, Callable[[], pf.ToricModel]] = {
    "interval_x_triangle": lambda: pf.ToricModel.rank_one(pt.product(pt.cube(1), pt.standard_simplex(2)), (1, 0, 0)),
    "interval_x_square": lambda: pf.ToricModel.rank_one(pt.product(pt.cube(1), pt.cube(2)), (1, 0, 0)),
    "interval_x_hexagon": lambda: pf.ToricModel.rank_one(pt.product(pt.cube(1), _hexagon()), (1, 0, 0)),
}


def gallery_models() -> dict[str, pf.ToricModel]:
    out = {}
    for name, make in POLYTOPES.items():
        p = make()
        for w in PROJECTIONS[p.dim]:
            tag = "_".join(str(a).replace("-", "m") for a in w)
            out[f"{name}_w{tag}"] = pf.ToricModel.rank_one(p, w)
    return out


def circle_fixtures() -> dict[str, tuple[lc.CircleDensity, list[lc.CriticalLevelData]]]:
    pw = PiecewisePoly.from_intervals
    q = Fraction(1, 4)
    wall = lc.CriticalLevelData(q, (pf.FixedComponent(q, (-1, 1), 2),))
    return {
        "constant": (lc.CircleDensity(pw([(0, 1, UniPoly((3,)))])), []),
        "half_support": (lc.CircleDensity(pw([(0, Fraction(1, 2), UniPoly((1,)))])), []),
        "triangle_wave": (
            lc.CircleDensity(pw([(0, Fraction(1, 2), UniPoly((1, 1))), (Fraction(1, 2), 1, UniPoly((2, -1)))])),
            [],
        ),
        "quarter_wall": (lc.CircleDensity(pw([(0, q, UniPoly((0, 1))), (q, 2 * q, UniPoly((2 * q, -1)))])), [wall]),
    }


# -- case machinery ------------------------------------------------------------


@dataclass
class CaseResult:
    name: str
    group: str
    passed: bool
    output: dict
    problems: list[str] = field(default_factory=list)
    diff: str = ""


def _r(x) -> str:
    return jsonio.rational_to_json(x)


def validate_dh(model: pf.ToricModel, f: pf.DHFunction, generic: bool = True) -> tuple[dict, list[str]]:
    """Self-checks for an exact density; returns a report and a list of failures."""
    problems = []
    vol = pt.volume(model.polytope)
    mass = f.density.integrate()
    if mass != vol:
        problems.append(f"mass {mass} != volume {vol}")
    deg = pf.degree_check(f)
    if not deg.passed:
        problems.append(f"degree {deg.max_degree} exceeds bound {deg.bound}")
    verdict = lc.logconcave_on_line(f)
    if not verdict.is_log_concave:
        problems.append(f"not log-concave: {verdict.witness}")
    interior = f.density.breakpoints[1:-1]
    for a in interior:
        if not lc.graham_wall_check(f, a):
            problems.append(f"Graham inequality fails at {a}")
    jumps = []
    if generic and model.n == 2:
        comps = pf.fixed_components(model)
        for a in sorted({c.level for c in comps}):
            measured = f.density.jump_at(a)
            predicted = pf.gls_jump(pf.components_at(comps, a), a)
            low = min(i for i, c in enumerate(predicted.coeffs) if c) if not predicted.is_zero else None
            ok = low is not None and all(measured.coeff(i) == 0 for i in range(low)) and measured.coeff(low) == predicted.coeff(low)
            if not ok:
                problems.append(f"GLS mismatch at {a}: measured {measured}, predicted {predicted}")
            jumps.append({"level": _r(a), "measured": str(measured), "gls": str(predicted)})
    report = {
        "volume": _r(vol),
        "mass": _r(mass),
        "degree": {"max": deg.max_degree, "bound": deg.bound},
        "verdict": jsonio.verdict_to_json(verdict),
        "graham_walls": [_r(a) for a in interior],
    }
    if jumps:
        report["gls"] = jumps
    return report, problems


def _dh_case(name: str, model: pf.ToricModel, generic: bool) -> CaseResult:
    f = pf.dh_compute(model)
    report, problems = validate_dh(model, f, generic)
    out = {"model": jsonio.model_to_json(model), "dh": jsonio.dh_to_json(f), "checks": report}
    return CaseResult(name, "dh", not problems, out, problems)


def mc_case(seed: int, N: int = 10**6) -> CaseResult:
    model = pf.ToricModel.rank_one(pt.cube(3), (1, 1, 1))
    f = pf.dh_compute(model)
    est = pf.dh_mc_oracle(model, N, seed, MC_POINTS)
    rows, problems = [], []
    for t, e, s in zip(MC_POINTS, est.estimates, est.stderrs):
        exact = f.density(t)
        z = (e - float(exact)) / s if s > 0 else math.inf
        rows.append({"t": _r(t), "exact": _r(exact), "estimate": repr(e), "stderr": repr(s), "z": repr(round(z, 6))})
        if abs(z) > 3:
            problems.append(f"t={t}: |z| = {abs(z):.3f} > 3")
    out = {"model": jsonio.model_to_json(model), "N": N, "seed": seed, "bin_width": repr(est.bin_width[0]), "samples": rows}
    return CaseResult("mc_cube3_w1_1_1", "mc", not problems, out, problems)


def _circle_case(name: str, f: lc.CircleDensity, crits: list[lc.CriticalLevelData]) -> CaseResult:
    cls = lc.circle_classify(f)
    dec = lc.hamiltonian_decision(f, crits)
    problems = []
    if cls.kind is lc.CircleKind.FULL_SUPPORT_NON_CONSTANT and cls.chart_failure is None:
        problems.append("full-support non-constant density passed every chart check")
    for r in (Fraction(1, 3), Fraction(3, 7)):
        if lc.circle_classify(f.rotate(r)).kind is not cls.kind:
            problems.append(f"classification changes under rotation by {r}")
    if cls.kind is lc.CircleKind.CONSTANT and dec.decision is lc.Decision.HAMILTONIAN:
        problems.append("constant density declared Hamiltonian")
    out = {
        "density": jsonio.circle_to_json(f),
        "walls": [_r(x) for x in f.walls()],
        "classify": jsonio.classification_to_json(cls),
        "decision": jsonio.hamiltonian_to_json(dec),
    }
    return CaseResult(f"circle_{name}", "circle", not problems, out, problems)


def sl2_cases(seed: int, samples: int = 100) -> list[CaseResult]:
    results = []

    problems, checked = [], 0
    for n in range(1, 5):
        for b in sl.ExteriorForm.basis(n):
            checked += 1
            if sl.bracket("Lambda", "L", b) != sl.counting(b):
                problems.append(f"[Lambda,L] != H on {b}")
            if sl.bracket("H", "Lambda", b) != sl.dual_lefschetz(b) * 2:
                problems.append(f"[H,Lambda] != 2 Lambda on {b}")
            if sl.bracket("H", "L", b) != sl.lefschetz(b) * -2:
                problems.append(f"[H,L] != -2 L on {b}")
    results.append(CaseResult("sl2_brackets", "sl2", not problems, {"basis_forms": checked}, problems))

    table, problems = [], []
    for n in range(1, 5):
        for k in range(n + 1):
            got = sl.primitive_dimension(n, k)
            want = math.comb(2 * n, k) - (math.comb(2 * n, k - 2) if k >= 2 else 0)
            table.append({"n": n, "k": k, "dim": got})
            if got != want:
                problems.append(f"n={n} k={k}: rank gives {got}, expected {want}")
    results.append(CaseResult("sl2_primitive_dims", "sl2", not problems, {"dims": table}, problems))

    problems, count = [], 0
    for n in (1, 2, 3):
        for k in range(2 * n + 1):
            for i in range(samples):
                a = sl.random_form(n, k, rng.split(seed, 1000 * (10 * n + k) + i))
                d = sl.primitive_decomposition(a)
                count += 1
                if d.reconstruct() != a or not all(sl.is_primitive(b) for b in d.components.values()):
                    problems.append(f"round trip fails for n={n} k={k} sample {i}")
    results.append(CaseResult("sl2_roundtrip", "sl2", not problems, {"forms": count}, problems))

    problems, count = [], 0
    for i in range(samples):
        g = sl.random_primitive_11(rng.split(seed, 7 + i))
        count += 1
        top = g.wedge(g).top_coefficient()
        if not sl.weil_verify(g) or top > 0 or (top == 0) != g.is_zero:
            problems.append(f"Weil/negativity fails for {g}")
        if not sl.key_inequality_check(g, Fraction(i - samples // 2, 3)):
            problems.append(f"key inequality fails for {g}")
    results.append(CaseResult("sl2_weil", "sl2", not problems, {"forms": count}, problems))
    return results


def build_cases(seed: int = DEFAULT_SEED, filter: str | None = None) -> list[Callable[[], list[CaseResult]]]:
    """Lazily evaluated case groups, optionally restricted by a substring filter."""
    jobs: list[tuple[str, Callable[[], list[CaseResult]]]] = []
    for name, model in gallery_models().items():
        jobs.append((name, lambda name=name, model=model: [_dh_case(name, model, True)]))
    for name, make in PRODUCT_MODELS.items():
        jobs.append((name, lambda name=name, make=make: [_dh_case(name, make(), False)]))
    jobs.append(("mc_cube3_w1_1_1", lambda: [mc_case(seed)]))
    for name, (f, crits) in circle_fixtures().items():
        jobs.append((f"circle_{name}", lambda name=name, f=f, crits=crits: [_circle_case(name, f, crits)]))
    jobs.append(("sl2", lambda: sl2_cases(seed)))
    return [job for key, job in jobs if filter is None or filter in key]


def golden_text(result: CaseResult) -> str:
    return jsonio.dumps(result.output)


def run_gallery(
    seed: int = DEFAULT_SEED,
    filter: str | None = None,
    golden_dir: Path | None = None,
    update: bool = False,
) -> list[CaseResult]:
    golden_dir = Path(golden_dir) if golden_dir else default_golden_dir()
    results = [r for job in build_cases(seed, filter) for r in job()]
    results.sort(key=lambda r: r.name)
    for r in results:
        path = golden_dir / f"{r.name}.json"
        text = golden_text(r)
        # MC estimates depend on the seed; goldens are pinned to the default one
        if r.group == "mc" and seed != DEFAULT_SEED:
            continue
        if update:
            if r.passed:
                golden_dir.mkdir(parents=True, exist_ok=True)
                path.write_text(text)
            continue
        if not path.exists():
            r.passed = False
            r.problems.append(f"missing golden file {path.name}")
            continue
        want = path.read_text()
        if want != text:
            r.passed = False
            r.diff = "".join(difflib.unified_diff(want.splitlines(True), text.splitlines(True), f"golden/{path.name}", "computed"))
            r.problems.append("output differs from golden file")
    return results


def format_table(results: Sequence[CaseResult]) -> str:
    width = max((len(r.name) for r in results), default=4)
    lines = [f"{'case':<{width}}  group   result"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {r.group:<6}  {'pass' if r.passed else 'FAIL'}")
        for p in r.problems:
            lines.append(f"    {p}")
        if r.diff:
            lines.extend("    " + ln for ln in r.diff.rstrip("\n").split("\n"))
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} cases passed")
    return "\n".join(lines) + "\n"
