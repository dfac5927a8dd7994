"""``subflag`` command line: reports, flags, parameter sweeps, verification.

Every command can emit a JSON document with the stable top-level fields
``schema_version``, ``request``, ``results`` and ``residuals``.  Matrices are
serialized row-major as ``{"rows": r, "cols": c, "data": [...]}``.  Floats
use Python's shortest round-trip repr (at most 17 significant digits), and
exact rationals are written as floats next to their ``"p/q"`` string.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import checks, codazzi
from .algebra import BASIS_NAMES, X, Y, Z
from .chart_fields import HEISENBERG, SU2, ChartPoint, SingularPointError, lie_bracket
from .holonomy_flag import FLAG_MODES, PROJECTION, flag_spaces, horizontal_filtration
from .liealg_connection import (
    connection_table,
    curvature,
    metric_obstruction,
    metric_parallel_defect,
    torsion,
)
from .model_groups import FRAMES, StructureConstants, cartan_structure
from .sampling import DEFAULT_SEED, sample_points

SCHEMA_VERSION = 1
GROUPS = (HEISENBERG, SU2, "cartan", "general")
EXPECTED_R = {
    HEISENBERG: [[0.0] * 3 for _ in range(3)],
    SU2: [[0.0, -4.0, 0.0], [4.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
}
EXPECTED_BRACKET_Z = {HEISENBERG: 1.0, SU2: 2.0}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class ReportRequest:
    command: str = "report"
    group: str = HEISENBERG
    rho: Any = None
    chi: Any = None
    kappa: Any = None
    alpha: Any = None
    beta: Any = None
    n_points: int = 5
    points: list = field(default_factory=list)
    seed: int = DEFAULT_SEED
    mode: str = codazzi.STANDARD
    json: bool = False

    def validate(self) -> None:
        if self.group not in GROUPS:
            raise UsageError(f"unknown group {self.group!r}; choose from {', '.join(GROUPS)}")
        general = (self.chi, self.kappa, self.alpha, self.beta)
        if self.group in (HEISENBERG, SU2):
            if self.rho is not None or any(v is not None for v in general):
                raise UsageError(f"group {self.group!r} takes no --rho/--chi/--kappa/--alpha/--beta")
            if self.n_points < 0:
                raise UsageError("--points must be non-negative")
        elif self.group == "cartan":
            if self.rho is None or any(v is not None for v in general):
                raise UsageError("group 'cartan' needs --rho and nothing else")
        else:
            if self.rho is not None or self.chi is None or self.kappa is None:
                raise UsageError("group 'general' needs --chi and --kappa (--alpha/--beta default to 0)")
        if self.mode not in codazzi.MODES:
            raise UsageError(f"--mode must be one of {codazzi.MODES}")

    def echo(self) -> dict:
        out: dict[str, Any] = {"command": self.command, "group": self.group}
        if self.group == "cartan":
            out["parameters"] = {"rho": _num(self.rho)}
        elif self.group == "general":
            out["parameters"] = {k: _num(_or0(getattr(self, k))) for k in ("chi", "kappa", "alpha", "beta")}
        else:
            out["points"] = [list(p) for p in self.points] if self.points else self.n_points
            out["seed"] = self.seed
            out["mode"] = self.mode
        return out


def _or0(v):
    return 0 if v is None else v


# ------------------------------------------------------------ serialization


def _num(x: Any) -> Any:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite value in report")
        return x + 0.0  # normalizes -0.0
    return x


def _exact(x: Any) -> Any:
    return {"value": _num(x), "exact": str(x)} if isinstance(x, Fraction) and x.denominator != 1 else _num(x)


def _matrix(m: Sequence[Sequence[Any]]) -> dict:
    return {"rows": len(m), "cols": len(m[0]) if m else 0, "data": [_num(v) for row in m for v in row]}


def _element(v) -> list:
    return [_num(c) for c in v]


def dumps(doc: dict, pretty: bool = True) -> str:
    return json.dumps(doc, indent=2 if pretty else None, allow_nan=False) + "\n"


def _document(request: dict, results: dict, residuals: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "request": request, "results": results, "residuals": residuals}


# ------------------------------------------------------------ report pieces


def _max_abs_dev(a, b) -> float:
    return max(abs(float(x) - float(y)) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _chart_report(req: ReportRequest) -> tuple[dict, dict]:
    frame = FRAMES[req.group]()
    if req.points:
        pts = [ChartPoint(req.group, tuple(p)) for p in req.points]
    else:
        pts = sample_points(req.group, req.n_points, req.seed)
    entries = []
    r_dev = 0.0
    bracket_dev = 0.0
    for p in pts:
        entry: dict[str, Any] = {"coords": list(p.coords)}
        try:
            dec = codazzi.derivation_equations(frame, p, req.mode)
            a = codazzi.assemble_A_matrices(dec)
            r = codazzi.codazzi_curvature(frame, p, req.mode)
            zcoef = codazzi.decompose_in_frame(lie_bracket(frame.X, frame.Y, p), frame, p)[2]
        except (SingularPointError, codazzi.SingularFrameError) as exc:
            entry["error"] = str(exc)
            entries.append(entry)
            continue
        entry["decomposition"] = {
            "gamma": [[[_num(v) for v in row] for row in k] for k in dec.gamma],
            "b": [[_num(v) for v in row] for row in dec.b],
            "weingarten": [[_num(v) for v in row] for row in dec.weingarten],
        }
        entry["A1"], entry["A2"] = _matrix(a.A1), _matrix(a.A2)
        entry["curvature"] = _matrix(r)
        entry["bracket_xy_z"] = _num(zcoef)
        entries.append(entry)
        r_dev = max(r_dev, _max_abs_dev(r, EXPECTED_R[req.group]))
        bracket_dev = max(bracket_dev, abs(zcoef - EXPECTED_BRACKET_Z[req.group]))
        if req.mode == codazzi.STANDARD:
            bracket_dev = max(bracket_dev, abs(dec.b[0][1] - dec.b[1][0] - EXPECTED_BRACKET_Z[req.group]))
    results: dict[str, Any] = {"chart": req.group, "points": entries}
    if req.group == HEISENBERG:
        # the Heisenberg table is the (chi, kappa) = (0, 0) member with [X,Y] = Z
        results["flag"] = _flag_payload(connection_table(0, 0, 0, 0), PROJECTION)
    residuals = {
        "curvature_max_deviation": r_dev,
        "bracket_bookkeeping_max_deviation": bracket_dev,
        "singular_points": sum(1 for e in entries if "error" in e),
    }
    return results, residuals


def _structure_payload(sc: StructureConstants) -> dict:
    pairs = (("X", "Y", X, Y), ("Y", "Z", Y, Z), ("X", "Z", X, Z))
    return {f"[{a},{b}]": _element(sc.bracket(u, v)) for a, b, u, v in pairs}


def _filtration_payload(sc: StructureConstants) -> dict:
    filt = horizontal_filtration(sc)
    return {
        "dims": [len(level) for level in filt.levels],
        "steps": filt.steps,
        "bracket_generating": filt.bracket_generating,
    }


def _cartan_report(req: ReportRequest) -> tuple[dict, dict]:
    sc = cartan_structure(req.rho)
    a = codazzi.assemble_A_matrices(sc)
    r = codazzi.codazzi_curvature(sc, mode=codazzi.LIE)
    rho = sc.params["rho"]
    want = [[0, -2 * rho, 0], [2 * rho, 0, 0], [0, 0, 0]]
    results = {
        "structure": _structure_payload(sc),
        "A1": _matrix(a.A1),
        "A2": _matrix(a.A2),
        "curvature": _matrix(r),
        "filtration": _filtration_payload(sc),
    }
    residuals = {
        "curvature_max_deviation": _max_abs_dev(r, want),
        "jacobi": sc.jacobi_residual().norm_inf(),
    }
    return results, residuals


def _flag_payload(ct, mode: str) -> dict:
    flag = flag_spaces(ct, mode)
    return {
        "mode": mode,
        "pair": list(flag.pair),
        "R0_basis": [_element(v) for v in flag.R0_basis],
        "R1_basis": [_element(v) for v in flag.R1_basis],
        "dims": list(flag.dims),
    }


def _closed_form_images(chi, kappa, alpha, beta) -> tuple:
    h = Fraction(1, 2) if isinstance(chi, Fraction) else 0.5
    q = h * h
    return (
        (0, (chi - kappa) * q, -3 * h * alpha),
        ((chi + kappa) * q, 0, -3 * h * beta),
        (-alpha * h * (chi + kappa), beta * h * (chi - kappa), 0),
    )


def _general_report(req: ReportRequest) -> tuple[dict, dict]:
    ct = connection_table(req.chi, req.kappa, _or0(req.alpha), _or0(req.beta))
    sc = ct.structure
    basis = (X, Y, Z)
    images = [curvature(ct, X, Y, v) for v in basis]
    obstruction = metric_obstruction(*ct.params)
    results = {
        "structure": _structure_payload(sc),
        "connection": {
            f"nabla_{BASIS_NAMES[i]}{BASIS_NAMES[j]}": _element(ct.table[i][j]) for i in range(3) for j in range(3)
        },
        "curvature_XY": {f"R(X,Y){n}": _element(v) for n, v in zip(BASIS_NAMES, images)},
        "flag": {mode: _flag_payload(ct, mode) for mode in FLAG_MODES},
        "filtration": _filtration_payload(sc),
        "obstruction": {
            "uxy_z_residual": _exact(obstruction.uxy_z_residual),
            "metric_exists_for_uxy": obstruction.uxy_consistent,
            "candidates_checked": len(obstruction.rows),
        },
    }
    closed = _closed_form_images(*ct.params)
    residuals = {
        "torsion": max(torsion(ct, a, b).norm_inf() for a in basis for b in basis),
        "parallel_defect": max(
            abs(float(metric_parallel_defect(ct, a, b, c))) for a in (X, Y) for b in (X, Y) for c in (X, Y)
        ),
        "closed_form_deviation": max(float(abs(g - w)) for v, t in zip(images, closed) for g, w in zip(v, t)),
        "jacobi": sc.jacobi_residual().norm_inf(),
    }
    return results, residuals


def run_report(req: ReportRequest) -> dict:
    req.validate()
    if req.group in (HEISENBERG, SU2):
        results, residuals = _chart_report(req)
    elif req.group == "cartan":
        results, residuals = _cartan_report(req)
    else:
        results, residuals = _general_report(req)
    return _document(req.echo(), results, residuals)


def run_flag(chi, kappa, alpha=0, beta=0, mode: str = PROJECTION) -> dict:
    if mode not in FLAG_MODES:
        raise UsageError(f"--mode must be one of {FLAG_MODES}")
    ct = connection_table(chi, kappa, alpha, beta)
    request = {"command": "flag", "parameters": {k: _num(v) for k, v in zip(("chi", "kappa", "alpha", "beta"), ct.params)}, "mode": mode}
    return _document(request, _flag_payload(ct, mode), {})


# ------------------------------------------------------------------ sweeps

PARAM_NAMES = ("chi", "kappa", "alpha", "beta")


def parse_number(text: str) -> Fraction | float:
    """Exact ``Fraction`` for decimal/rational literals, float otherwise."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"non-finite parameter {text!r}")
    return value


def parse_grid(spec: str) -> dict[str, list]:
    """Grid from ``"v1,v2,..."`` (same values for all four parameters) or
    ``"chi=..;kappa=..;alpha=..;beta=.."`` (missing parameters fixed at 0).
    An empty spec is an empty grid."""
    spec = spec.strip()
    if not spec:
        return {name: [] for name in PARAM_NAMES}

    def values(text: str) -> list:
        return sorted({parse_number(v) for v in text.split(",") if v.strip()})

    if "=" not in spec:
        vals = values(spec)
        return {name: vals for name in PARAM_NAMES}
    grid = {name: [Fraction(0)] for name in PARAM_NAMES}
    for part in spec.split(";"):
        if not part.strip():
            continue
        name, _, text = part.partition("=")
        name = name.strip()
        if name not in PARAM_NAMES:
            raise UsageError(f"unknown grid parameter {name!r}; use {', '.join(PARAM_NAMES)}")
        grid[name] = values(text)
    return grid


def degeneracy_labels(chi, kappa, alpha, beta) -> list[str]:
    labels = []
    if chi == kappa:
        labels.append("chi=kappa")
    if chi == -kappa:
        labels.append("chi=-kappa")
    if alpha == 0 and beta == 0:
        labels.append("alpha=beta=0")
    if chi == kappa == alpha == beta == 0:
        labels.append("all-zero")
    return labels


def _sweep_row(params: tuple, mode: str) -> dict:
    dims = flag_spaces(connection_table(*params), mode).dims
    row = {name: _num(v) for name, v in zip(PARAM_NAMES, params)}
    row["dims"] = list(dims)
    row["labels"] = degeneracy_labels(*params)
    return row


def run_sweep(grid: dict[str, list], mode: str = PROJECTION, jobs: int = 1) -> list[dict]:
    """Flag dimensions over the product grid, rows in lexicographic tuple order."""
    if mode not in FLAG_MODES:
        raise UsageError(f"--mode must be one of {FLAG_MODES}")
    tuples = list(itertools.product(*(sorted(grid[name]) for name in PARAM_NAMES)))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda t: _sweep_row(t, mode), tuples))
    return [_sweep_row(t, mode) for t in tuples]


# ------------------------------------------------------------------ verify


def run_verify(names: Sequence[str] | None = None, context: checks.Context | None = None) -> list[checks.CriterionResult]:
    if names:
        unknown = [n for n in names if n not in checks.CRITERIA]
        if unknown:
            raise UsageError(
                f"unknown criterion {', '.join(unknown)}; valid names: {', '.join(checks.CRITERIA)}"
            )
    ctx = context or checks.Context()
    selected = list(names) if names else list(checks.CRITERIA)
    return [checks.CRITERIA[n](ctx) for n in selected]


# ------------------------------------------------------------------ text output


def _fmt(x: Any) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _text_matrix(m: dict, indent: str = "    ") -> list[str]:
    d, c = m["data"], m["cols"]
    return [indent + "  ".join(f"{_fmt(v):>12}" for v in d[i : i + c]) for i in range(0, len(d), c)]


def format_report_text(doc: dict) -> str:
    req, res, resid = doc["request"], doc["results"], doc["residuals"]
    lines = [f"group: {req['group']}"]
    if "points" in res:
        for e in res["points"]:
            coords = ", ".join(_fmt(c) for c in e["coords"])
            if "error" in e:
                lines.append(f"point ({coords}): {e['error']}")
                continue
            lines.append(f"point ({coords})")
            for key in ("A1", "A2", "curvature"):
                lines.append(f"  {key}:")
                lines.extend(_text_matrix(e[key]))
    else:
        for key in ("A1", "A2", "curvature"):
            if key in res:
                lines.append(f"{key}:")
                lines.extend(_text_matrix(res[key]))
        if "curvature_XY" in res:
            for k, v in res["curvature_XY"].items():
                lines.append(f"{k:10} = {_vec(v)}")
    flag = res.get("flag")
    if flag:
        for f in flag.values() if "mode" not in flag else [flag]:
            lines.append(f"flag [{f['mode']}]: dims {tuple(f['dims'])}")
    lines.append("residuals:")
    for k, v in resid.items():
        lines.append(f"  {k:34} {_fmt(v)}")
    return "\n".join(lines) + "\n"


def _vec(v) -> str:
    return "(" + ", ".join(_fmt(x) for x in v) + ")"


def format_flag_text(doc: dict) -> str:
    res = doc["results"]
    p = doc["request"]["parameters"]
    lines = [
        "chi={chi} kappa={kappa} alpha={alpha} beta={beta}".format(**{k: _fmt(v) for k, v in p.items()}),
        f"mode: {res['mode']}",
        f"dim R0 = {res['dims'][0]}   span " + ", ".join(_vec(v) for v in res["R0_basis"]),
        f"dim R1 = {res['dims'][1]}   span " + ", ".join(_vec(v) for v in res["R1_basis"]),
    ]
    return "\n".join(lines) + "\n"


def format_sweep_text(rows: list[dict]) -> str:
    header = f"{'chi':>8} {'kappa':>8} {'alpha':>8} {'beta':>8}  dimR0 dimR1  labels"
    lines = [header]
    for r in rows:
        lines.append(
            f"{_fmt(r['chi']):>8} {_fmt(r['kappa']):>8} {_fmt(r['alpha']):>8} {_fmt(r['beta']):>8}"
            f"  {r['dims'][0]:>5} {r['dims'][1]:>5}  {','.join(r['labels'])}"
        )
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ argparse


def _number(text: str):
    try:
        return parse_number(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _point(text: str) -> tuple[float, float, float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"point needs 3 comma-separated coordinates, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subflag", description="Holonomy flags and Codazzi curvature of 3D sub-Riemannian Lie groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="full report for one group")
    rep.add_argument("--group", required=True, choices=GROUPS)
    rep.add_argument("--rho", type=_number)
    for name in PARAM_NAMES:
        rep.add_argument(f"--{name}", type=_number)
    rep.add_argument("--points", type=int, default=5, help="number of random chart points (default 5)")
    rep.add_argument("--point", type=_point, action="append", default=[], help="explicit point 'a,b,c' (repeatable)")
    rep.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"sampling seed (default {DEFAULT_SEED:#x})")
    rep.add_argument("--mode", choices=codazzi.MODES, default=codazzi.STANDARD)
    rep.add_argument("--json", action="store_true")
    rep.add_argument("--output", help="write to this file instead of stdout")

    flag = sub.add_parser("flag", help="holonomy flag for (chi, kappa, alpha, beta)")
    for name in PARAM_NAMES:
        flag.add_argument(f"--{name}", type=_number, required=name in ("chi", "kappa"), default=Fraction(0))
    flag.add_argument("--mode", choices=FLAG_MODES, default=PROJECTION)
    flag.add_argument("--json", action="store_true")
    flag.add_argument("--output")

    sw = sub.add_parser("sweep", help="flag dimensions over a parameter grid")
    sw.add_argument("--grid", required=True, help="'v1,v2,...' or 'chi=..;kappa=..;alpha=..;beta=..' (use --grid=... for negative values)")
    sw.add_argument("--mode", choices=FLAG_MODES, default=PROJECTION)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--json", action="store_true")
    sw.add_argument("--output")

    ver = sub.add_parser("verify", help="run the verification criteria")
    ver.add_argument("--only", action="append", default=[], metavar="NAME", help="run only this criterion (repeatable)")
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--json", action="store_true")
    return parser


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "report":
            req = ReportRequest(
                command="report",
                group=args.group,
                rho=args.rho,
                chi=args.chi,
                kappa=args.kappa,
                alpha=args.alpha,
                beta=args.beta,
                n_points=args.points,
                points=args.point,
                seed=args.seed,
                mode=args.mode,
                json=args.json,
            )
            doc = run_report(req)
            _emit(dumps(doc) if args.json else format_report_text(doc), args.output)
        elif args.command == "flag":
            doc = run_flag(args.chi, args.kappa, args.alpha, args.beta, args.mode)
            _emit(dumps(doc) if args.json else format_flag_text(doc), args.output)
        elif args.command == "sweep":
            grid = parse_grid(args.grid)
            rows = run_sweep(grid, args.mode, args.jobs)
            if args.json:
                doc = _document({"command": "sweep", "grid": args.grid, "mode": args.mode}, {"rows": rows}, {})
                _emit(dumps(doc), args.output)
            else:
                _emit(format_sweep_text(rows), args.output)
        else:
            results = run_verify(args.only, checks.Context(seed=args.seed))
            failed = [r for r in results if not r.passed]
            if args.json:
                doc = _document(
                    {"command": "verify", "only": args.only, "seed": args.seed},
                    {r.name: {"passed": r.passed, "detail": r.detail} for r in results},
                    {r.name: r.residual for r in results},
                )
                sys.stdout.write(dumps(doc))
            else:
                for r in results:
                    sys.stdout.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name:24} residual={r.residual:.3g}  {r.detail}\n")
                sys.stdout.write(f"{len(results) - len(failed)}/{len(results)} criteria passed\n")
            return EXIT_FAIL if failed else EXIT_OK
    except UsageError as exc:
        sys.stderr.write(f"subflag: error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
