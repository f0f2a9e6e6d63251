"""Command-line front end.

Exit codes: 0 success, 1 negative verdict or gallery failure, 2 bad input
(schema, unmet precondition), 3 non-generic projection.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from dhtoric import gallery, jsonio, logconcave as lc, polytope as pt, pushforward as pf, sl2forms as sl
from dhtoric.exact import PiecewisePoly

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NONGENERIC = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt(args, default: str = "json") -> str:
    return args.format or default


def _rational_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a comma-separated list of rationals: {text!r}") from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"not a comma-separated list of integers: {text!r}") from None


def _load_model(path: str, projection: str | None) -> pf.ToricModel:
    obj = jsonio.load(path)
    if isinstance(obj, dict) and "polytope" in obj:
        poly = jsonio.polytope_from_json(obj["polytope"], "$.polytope")
        proj = jsonio.projection_from_json(obj.get("projection", []), "$.projection")
    else:
        poly, proj = jsonio.polytope_from_json(obj), ()
    if projection:
        proj = tuple(_int_list(row) for row in projection.split(";"))
    if not proj:
        raise InputError("no projection given (add one to the model or pass --projection)")
    try:
        return pf.ToricModel(poly, proj)
    except ValueError as e:
        raise InputError(str(e)) from None


def _load_density(obj) -> pf.DHFunction | PiecewisePoly:
    return jsonio.dh_from_json(obj) if isinstance(obj, dict) and "walls" in obj else jsonio.pw_from_json(obj)


# -- subcommands -------------------------------------------------------------------


def cmd_dh(args) -> int:
    model = _load_model(args.model, args.projection)
    if not args.allow_degenerate and model.k == 1:
        pf.fixed_components(model)  # rejects projections orthogonal to an edge
    f = pf.dh_compute(model)
    samples = f.density.sample(args.samples)
    if args.csv:
        Path(args.csv).write_text(jsonio.samples_to_csv(samples))
    if _fmt(args) == "csv":
        _emit(args, jsonio.samples_to_csv(samples))
    else:
        _emit(args, jsonio.dumps(jsonio.dh_to_json(f)))
    return EXIT_OK


def cmd_check(args) -> int:
    obj = jsonio.load(args.input)
    if args.circle:
        f = jsonio.circle_from_json(obj)
        crits = jsonio.criticals_from_json(jsonio.load(args.criticals)) if args.criticals else []
        cls = lc.circle_classify(f)
        dec = lc.hamiltonian_decision(f, crits)
        out = jsonio.hamiltonian_to_json(dec)
        out.update(jsonio.classification_to_json(cls))
        _emit(args, jsonio.dumps(out))
        return EXIT_OK if dec.decision is lc.Decision.HAMILTONIAN else EXIT_NEGATIVE
    if isinstance(obj, dict) and "polytope" in obj:
        f = pf.dh_compute(_load_model(args.input, args.projection))
    else:
        f = _load_density(obj)
    verdict = lc.logconcave_on_line(f)
    _emit(args, jsonio.dumps(jsonio.verdict_to_json(verdict)))
    return EXIT_OK if verdict.is_log_concave else EXIT_NEGATIVE


def cmd_jump(args) -> int:
    model = _load_model(args.model, args.projection)
    comps = pf.fixed_components(model)
    density = pf.dh_compute(model).density
    levels = [Fraction(args.level)] if args.level is not None else sorted({c.level for c in comps})
    out = []
    for a in levels:
        here = pf.components_at(comps, a)
        out.append({
            "level": jsonio.rational_to_json(a),
            "components": [jsonio.component_to_json(c) for c in here],
            "gls": [jsonio.rational_to_json(c) for c in pf.gls_jump(here, a).coeffs],
            "measured": [jsonio.rational_to_json(c) for c in density.jump_at(a).coeffs],
        })
    _emit(args, jsonio.dumps(out))
    return EXIT_OK


def cmd_cut(args) -> int:
    obj = jsonio.load(args.polytope)
    if isinstance(obj, dict) and "polytope" in obj:
        poly = jsonio.polytope_from_json(obj["polytope"], "$.polytope")
    else:
        poly = jsonio.polytope_from_json(obj)
    hs = [jsonio.halfspace_from_json(jsonio.loads(h), f"--halfspace[{i}]") for i, h in enumerate(args.halfspace or [])]
    if args.halfspaces:
        raw = jsonio.load(args.halfspaces)
        hs += [jsonio.halfspace_from_json(h, f"$[{i}]") for i, h in enumerate(raw if isinstance(raw, list) else [raw])]
    if not hs:
        raise InputError("no halfspaces given")
    q = pt.cut(poly, hs)
    out = jsonio.polytope_to_json(q)
    out["volume"] = jsonio.rational_to_json(pt.volume(q)) if not q.is_empty else "0"
    _emit(args, jsonio.dumps(out))
    return EXIT_OK


def cmd_mc(args) -> int:
    model = _load_model(args.model, args.projection)
    if args.points:
        pts = _rational_list(args.points) if model.k == 1 else [tuple(_rational_list(p)) for p in args.points.split(";")]
    else:
        if model.k != 1:
            raise InputError("--points is required for projections of rank > 1")
        imgs = [pf._dot(model.w, v) for v in model.polytope.vertices]
        lo, hi = min(imgs), max(imgs)
        pts = [lo + (hi - lo) * Fraction(i, args.grid + 1) for i in range(1, args.grid + 1)]
    est = pf.dh_mc_oracle(model, args.N, args.seed, pts)
    if _fmt(args, "csv") == "csv":
        _emit(args, jsonio.mc_to_csv(est))
    else:
        rows = [{"t": str(t), "estimate": e, "stderr": se} for t, e, se in zip(pts, est.estimates, est.stderrs)]
        _emit(args, jsonio.dumps({"N": est.N, "seed": est.seed, "bin_width": list(est.bin_width), "samples": rows}))
    return EXIT_OK


def cmd_sl2(args) -> int:
    form = jsonio.form_from_json(jsonio.load(args.form))
    if args.action == "decompose":
        _emit(args, jsonio.dumps(jsonio.decomposition_to_json(sl.primitive_decomposition(form))))
        return EXIT_OK
    if args.action == "star":
        _emit(args, jsonio.dumps(jsonio.form_to_json(sl.hodge_star_dim4(form))))
        return EXIT_OK
    s = Fraction(args.s)
    weil = sl.weil_verify(form)
    key = sl.key_inequality_check(form, s)
    top = form.wedge(form).top_coefficient() if form.n == 2 else Fraction(0)
    _emit(args, jsonio.dumps({"weil": weil, "gamma_squared": jsonio.rational_to_json(top), "s": str(s), "key_inequality": key}))
    return EXIT_OK if weil and key else EXIT_NEGATIVE


def cmd_gallery(args) -> int:
    results = gallery.run_gallery(args.seed, args.filter, args.golden_dir, args.update_golden)
    if not results:
        sys.stderr.write(f"no gallery case matches {args.filter!r}\n")
        return EXIT_INPUT
    table = gallery.format_table(results)
    sys.stdout.write(table)
    if args.out:
        full = {r.name: {"passed": r.passed, "output": r.output, "problems": r.problems} for r in results}
        Path(args.out).write_text(jsonio.dumps(full))
    return EXIT_OK if all(r.passed for r in results) else EXIT_NEGATIVE


# -- parser ---------------------------------------------------------------------------


def _common(top_level: bool) -> argparse.ArgumentParser:
    # sub-parsers must not overwrite values given before the subcommand
    def default(v):
        return v if top_level else argparse.SUPPRESS

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=default(gallery.DEFAULT_SEED), help="random seed (unsigned 64-bit)")
    p.add_argument("--out", default=default(None), help="write output here instead of stdout")
    p.add_argument("--format", choices=["json", "csv"], default=default(None), help="output format")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dhtoric",
        description="Exact Duistermaat-Heckman densities of toric models and log-concavity checks.",
        parents=[_common(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("dh", parents=[common], help="exact density of a rank-one projection")
    p.add_argument("model")
    p.add_argument("--projection", help="integer rows, e.g. '1,1' or '1,0;0,1'")
    p.add_argument("--samples", type=int, default=200, help="number of sample points for CSV output")
    p.add_argument("--csv", help="also write (t, value) samples to this file")
    p.add_argument("--allow-degenerate", action="store_true", help="skip the genericity check")
    p.set_defaults(func=cmd_dh)

    p = sub.add_parser("check", parents=[common], help="log-concavity or circle Hamiltonian-ness verdict")
    p.add_argument("input", help="DH function, piecewise polynomial, model, or (with --circle) circle density")
    p.add_argument("--circle", action="store_true")
    p.add_argument("--criticals", help="JSON list of critical level records")
    p.add_argument("--projection")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("jump", parents=[common], help="GLS jumps at critical levels")
    p.add_argument("model")
    p.add_argument("--projection")
    p.add_argument("--level", help="only this level")
    p.set_defaults(func=cmd_jump)

    p = sub.add_parser("cut", parents=[common], help="intersect a polytope with halfspaces <v,x> >= b")
    p.add_argument("polytope", help="polytope or model file")
    p.add_argument("--halfspace", action="append", help='inline JSON, e.g. \'{"normal": [1,1], "bound": "1/2"}\'')
    p.add_argument("--halfspaces", help="JSON file with a list of halfspaces")
    p.set_defaults(func=cmd_cut)

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo density estimate")
    p.add_argument("model")
    p.add_argument("--projection")
    p.add_argument("--N", type=int, default=10**6)
    p.add_argument("--points", help="comma-separated rationals (';' between points when k > 1)")
    p.add_argument("--grid", type=int, default=20, help="interior grid size when --points is absent")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("sl2", parents=[common], help="exterior-algebra tools")
    p.add_argument("action", choices=["decompose", "verify", "star"])
    p.add_argument("form")
    p.add_argument("--s", default="1", help="scalar s in c = gamma + s*omega for verify")
    p.set_defaults(func=cmd_sl2)

    p = sub.add_parser("gallery", parents=[common], help="run the curated gallery against golden files")
    p.add_argument("--filter")
    p.add_argument("--update-golden", action="store_true")
    p.add_argument("--golden-dir", type=Path)
    p.set_defaults(func=cmd_gallery)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except pf.NonGenericError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_NONGENERIC
    except (jsonio.SchemaError, InputError, OSError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
