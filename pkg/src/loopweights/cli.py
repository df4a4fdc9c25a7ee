"""Command-line front end: ``loopweights <subcommand> [options]``.

Every subcommand renders as JSON (sorted keys, rationals as ``"p/q"``), CSV
or a plain table. Exit codes: 0 ok, 2 configuration or parse error,
3 precondition failure, 4 point on a wall, 5 window not stabilized.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from . import affine_weyl, cartan, grassmann, loopalg, weights
from . import serialize as ser
from .errors import ConfigurationError, DomainError, LoopWeightsError

DEFAULT_WINDOW = 32


@dataclass(frozen=True)
class Config:
    family: str = "A"
    rank: int = 1
    level: Optional[int] = None
    max_energy: Optional[int] = None
    window: int = DEFAULT_WINDOW
    format: str = "table"
    mode: str = "exact"
    threads: int = 1

    def __post_init__(self):
        if self.rank < 1:
            raise ConfigurationError("--rank must be >= 1")
        if self.window < 1:
            raise ConfigurationError("--window must be >= 1")
        if self.threads < 1:
            raise ConfigurationError("--threads must be >= 1")
        if self.level is not None and self.level < 0:
            raise ConfigurationError("--level must be >= 0")

    def root_system(self) -> cartan.RootSystem:
        return cartan.build_root_system(self.family, self.rank)


@dataclass
class Result:
    """What a subcommand produced: the JSON payload plus rows for CSV/table output."""

    payload: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: List[str] = field(default_factory=list)
    csv_text: Optional[str] = None
    exit_code: int = 0


# rendering

def _cell(v) -> str:
    if isinstance(v, Fraction):
        return str(ser.rational(v))
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_cell(x) for x in v) + ")"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _csv(res: Result) -> str:
    if res.csv_text is not None:
        return res.csv_text
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if res.rows:
        # vector-valued columns spread into name0, name1, ...
        widths = {c: len(res.rows[0][c]) if isinstance(res.rows[0][c], (list, tuple)) else 0 for c in res.columns}
        header = []
        for c in res.columns:
            header.extend([f"{c}{i}" for i in range(widths[c])] if widths[c] else [c])
        writer.writerow(header)
        for r in res.rows:
            cells = []
            for c in res.columns:
                cells.extend([_cell(v) for v in r[c]] if widths[c] else [_cell(r[c])])
            writer.writerow(cells)
    else:
        writer.writerow(["key", "value"])
        for k in sorted(res.payload):
            writer.writerow([k, _cell(res.payload[k])])
    return buf.getvalue()


def _table(res: Result) -> str:
    lines = []
    for k in sorted(res.payload):
        v = res.payload[k]
        if isinstance(v, (list, dict)) and res.rows:
            continue
        if isinstance(v, dict):
            v = ", ".join(f"{a}={_cell(b)}" for a, b in sorted(v.items()))
        lines.append(f"{k}: {_cell(v)}")
    if res.rows:
        cells = [[_cell(r[c]) for c in res.columns] for r in res.rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(res.columns)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(res.columns, widths)).rstrip())
        for row in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(res: Result, fmt: str) -> str:
    if fmt == "json":
        return ser.dumps(res.payload)
    if fmt == "csv":
        return _csv(res)
    return _table(res)


# argument parsing helpers

def _parse_ints(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_point(rs: cartan.RootSystem, text: str):
    vals = [ser.parse_rational(t) for t in text.split(",") if t.strip()]
    if rs.family == "A" and rs.rank == 1 and len(vals) == 1:
        return (vals[0], -vals[0])
    if len(vals) != rs.ambient_dim:
        raise ConfigurationError(f"--point needs {rs.ambient_dim} coordinates for {rs.name}")
    return tuple(vals)


def _weight_arg(rs: cartan.RootSystem, cfg: Config, text: str, energy: int) -> weights.Weight:
    level = _require(cfg.level, "--level")
    vals = _parse_ints(text)
    if rs.family == "A" and rs.rank == 1 and len(vals) == 1:
        return weights.su2_weight(level, vals[0], energy)
    try:
        return weights.make_weight(rs, level, vals, energy)
    except DomainError as exc:
        raise ConfigurationError(str(exc)) from exc


def _require(value, flag: str):
    if value is None:
        raise ConfigurationError(f"{flag} is required for this subcommand")
    return value


def _weight_rows(ws: Sequence[weights.Weight], extra: Optional[Callable] = None) -> List[Dict[str, Any]]:
    rows = []
    for w in ws:
        row = {"level": w.level, "weight": list(w.lam), "energy": w.energy}
        if extra is not None:
            row.update(extra(w))
        rows.append(row)
    return rows


# subcommands

def cmd_roots(cfg: Config, args) -> Result:
    rs = cfg.root_system()
    payload = ser.root_system_to_json(rs)
    payload["name"] = rs.name
    pos = set(rs.positive_roots)
    simple = set(rs.simple_roots)
    rows = [{"root": list(a), "coroot": list(cartan.coroot(rs, a)),
             "positive": a in pos, "simple": a in simple} for a in rs.roots]
    return Result(payload, rows, ["root", "coroot", "positive", "simple"])


def cmd_weyl(cfg: Config, args) -> Result:
    rs = cfg.root_system()
    group = cartan.weyl_group(rs, cap=args.cap)
    payload = {"name": rs.name, "order": len(group)}
    if args.list:
        payload["elements"] = [[list(r) for r in g.matrix] for g in group]
    return Result(payload)


def cmd_alcoves(cfg: Config, args) -> Result:
    rs = cfg.root_system()
    radius = ser.parse_rational(args.radius)
    found = affine_weyl.enumerate_alcoves(rs, radius)
    payload: Dict[str, Any] = {"name": rs.name, "radius": ser.rational(radius), "count": len(found),
                               "alcoves": [ser.alcove_to_json(a) for a in found]}
    if args.check:
        geo = affine_weyl.discover_alcoves_geometric(rs, radius)
        payload["geometric_count"] = len(geo)
        payload["routes_agree"] = sorted(geo) == sorted(a.sample_point for a in found)
    rows = [{"translation": list(a.address.translation), "weyl": [v for r in a.address.weyl.matrix for v in r],
             "sample_point": list(a.sample_point)} for a in found]
    return Result(payload, rows, ["translation", "weyl", "sample_point"])


def cmd_reduce(cfg: Config, args) -> Result:
    rs = cfg.root_system()
    x = _parse_point(rs, _require(args.point, "--point"))
    x0, g, word = affine_weyl.reduce_to_alcove(rs, x)
    payload = {
        "point": ser.vector(x),
        "reduced": ser.vector(x0),
        "reduced_simple_values": [ser.rational(cartan.evaluate(a, x0)) for a in rs.simple_roots],
        "element": ser.element_to_json(g),
        "word": list(word),
    }
    return Result(payload)


def cmd_antidominant(cfg: Config, args) -> Result:
    rs = cfg.root_system()
    ws = weights.enumerate_antidominant(rs, _require(cfg.level, "--level"))
    payload = {"name": rs.name, "level": cfg.level, "count": len(ws),
               "weights": [ser.weight_to_json(w) for w in ws]}
    return Result(payload, _weight_rows(ws), ["level", "weight", "energy"], csv_text=weights.to_csv(ws))


def cmd_orbit(cfg: Config, args) -> Result:
    rs = cfg.root_system()
    w = _weight_arg(rs, cfg, _require(args.weight, "--weight"), args.energy)
    if not weights.is_antidominant(rs, w):
        raise DomainError(f"weight {ser.vector(w.lam)} at level {w.level} is not antidominant")
    ws = weights.orbit(rs, w, _require(cfg.max_energy, "--max-energy"))
    norms = {weights.norm_squared(rs, v) for v in ws}
    on = all(weights.parabola_check(rs, w, v) == weights.ON_PARABOLA for v in ws)
    payload = {
        "name": rs.name,
        "lowest": ser.weight_to_json(w),
        "max_energy": cfg.max_energy,
        "count": len(ws),
        "weights": [ser.weight_to_json(v) for v in ws],
        "norm_squared": ser.rational(weights.norm_squared(rs, w)),
        "norm_invariant": len(norms) <= 1,
        "on_parabola": on,
    }
    return Result(payload, _weight_rows(ws), ["level", "weight", "energy"], csv_text=weights.to_csv(ws))


def _load_loops(cfg: Config, paths: Sequence[str]) -> List[loopalg.LaurentLoop]:
    return [ser.load_loop(p, cfg.mode) for p in paths]


def _complex_json(v) -> List[float]:
    v = complex(loopalg._to_complex(v))
    return [float(v.real), float(v.imag)]


def cmd_cocycle(cfg: Config, args) -> Result:
    x, y = _load_loops(cfg, [args.x, args.y])
    closed = loopalg.cocycle(x, y)
    quad = loopalg.cocycle_quadrature(x, y)
    payload: Dict[str, Any] = {
        "closed_form": _complex_json(closed),
        "quadrature": [float(quad.real), float(quad.imag)],
        "difference": float(abs(loopalg._to_complex(closed) - quad)),
    }
    if x.exact and y.exact:
        re, im = loopalg.gaussian_parts(closed)
        payload["closed_form_exact"] = [ser.rational(re), ser.rational(im)]
    return Result(payload)


def cmd_exp_su2(cfg: Config, args) -> Result:
    t = float(ser.parse_rational(args.t))
    g = loopalg.su2_generator_exp(args.n, t, args.kind)
    zs = np.exp(2j * np.pi * np.arange(16) / 16)
    vals = g.evaluate_many(zs)
    defect = max(float(np.linalg.norm(v.conj().T @ v - np.eye(2), 2)) for v in vals)
    payload = {"n": args.n, "t": t, "kind": args.kind, "loop": ser.loop_to_json(g),
               "unitarity_defect": defect}
    return Result(payload)


def cmd_split(cfg: Config, args) -> Result:
    (f,) = _load_loops(cfg, [args.loop])
    g, based = loopalg.split_loop(f)
    const = loopalg.LaurentLoop.constant(g, exact=f.exact)
    payload = {"constant": ser.loop_to_json(const)["terms"][0]["matrix"] if const.coeffs else [],
               "based_loop": ser.loop_to_json(based)}
    return Result(payload)


def cmd_grassmann(cfg: Config, args) -> Result:
    (gamma,) = _load_loops(cfg, [args.loop])
    win = grassmann.PolarizedWindow(gamma.size, cfg.window)
    rep = grassmann.gl_res_certificate(gamma, args.tail_bound, win, threads=cfg.threads)
    payload = {k: (ser.rational(v) if isinstance(v, Fraction) else v) for k, v in rep.items()}
    payload["threshold"] = grassmann.SV_TOL
    if rep["invertible"] and args.m:
        dims = grassmann.intersection_dimensions(gamma, win, _parse_ints(args.m))
        payload["intersection_dimensions"] = {str(m): d for m, d in sorted(dims.items())}
    code = 0
    if rep["invertible"] and not rep["stabilized"]:
        code = 5
    return Result(payload, exit_code=code)


COMMANDS: Dict[str, Callable[[Config, argparse.Namespace], Result]] = {
    "roots": cmd_roots,
    "weyl": cmd_weyl,
    "alcoves": cmd_alcoves,
    "reduce": cmd_reduce,
    "antidominant": cmd_antidominant,
    "orbit": cmd_orbit,
    "cocycle": cmd_cocycle,
    "exp-su2": cmd_exp_su2,
    "split": cmd_split,
    "grassmann": cmd_grassmann,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigurationError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--family", default="A", help="root system family (A or D)")
    common.add_argument("--rank", type=int, default=1)
    common.add_argument("--level", type=int)
    common.add_argument("--max-energy", type=int, dest="max_energy")
    common.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="window bound M")
    common.add_argument("--format", choices=["json", "csv", "table"], default="table")
    common.add_argument("--mode", choices=["exact", "float"], default="exact")
    common.add_argument("--threads", type=int, help="worker threads (default: $LOOPWEIGHTS_THREADS or 1)")
    common.add_argument("--output", metavar="FILE", help="write to FILE instead of stdout")

    parser = _Parser(prog="loopweights", description="Loop-group weights, alcoves and loop diagnostics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("roots", parents=[common], help="root datum")
    p = sub.add_parser("weyl", parents=[common], help="Weyl group by reflection closure")
    p.add_argument("--list", action="store_true", help="include the element matrices")
    p.add_argument("--cap", type=int, default=cartan.WEYL_CAP)
    p = sub.add_parser("alcoves", parents=[common], help="alcoves whose barycenter lies in a ball")
    p.add_argument("--radius", required=True)
    p.add_argument("--check", action="store_true", help="cross-check with the geometric route")
    p = sub.add_parser("reduce", parents=[common], help="move a point into the positive alcove")
    p.add_argument("--point", help="comma-separated rationals; a single t for A1 means (t, -t)")
    sub.add_parser("antidominant", parents=[common], help="antidominant weights at a level")
    p = sub.add_parser("orbit", parents=[common], help="affine Weyl orbit of a lowest weight")
    p.add_argument("--weight", help="comma-separated integers; a single mu for A1")
    p.add_argument("--energy", type=int, default=0)
    p = sub.add_parser("cocycle", parents=[common], help="cocycle of two loops with a quadrature check")
    p.add_argument("x")
    p.add_argument("y")
    p = sub.add_parser("exp-su2", parents=[common], help="exp(t X_n) as a polynomial loop")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--t", default="1")
    p.add_argument("--kind", choices=["X", "Y"], default="X")
    p = sub.add_parser("split", parents=[common], help="constant times based loop")
    p.add_argument("loop")
    p = sub.add_parser("grassmann", parents=[common], help="Gl_res certificate and virtual dimension")
    p.add_argument("loop")
    p.add_argument("--tail-bound", type=float, default=grassmann.SV_TOL, dest="tail_bound")
    p.add_argument("--m", help="comma-separated m for windowed dim of gamma H+ cap z^m H-")
    return parser


def _threads(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("LOOPWEIGHTS_THREADS")
    if not env:
        return 1
    try:
        return int(env)
    except ValueError as exc:
        raise ConfigurationError(f"LOOPWEIGHTS_THREADS={env!r} is not an integer") from exc


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = Config(family=args.family, rank=args.rank, level=args.level, max_energy=args.max_energy,
                     window=args.window, format=args.format, mode=args.mode, threads=_threads(args.threads))
        res = COMMANDS[args.command](cfg, args)
        text = render(res, cfg.format)
        if args.output:
            try:
                with open(args.output, "w", encoding="utf-8", newline="") as fh:
                    fh.write(text)
            except OSError as exc:
                raise ConfigurationError(f"cannot write {args.output}: {exc}") from exc
        else:
            sys.stdout.write(text)
        if res.exit_code:
            print(f"error: window M={cfg.window} did not stabilize", file=sys.stderr)
        return res.exit_code
    except LoopWeightsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
