"""Command-line front end.

Subcommands::

    vstates spectrum  --b 0.5 [--m-min M] [--m-max M] [--out F] [--format csv|json]
    vstates threshold --b 0.5
    vstates branch    --b 0.6 --m 5 --sign plus [--steps N] [--ds H]
                      [--modes K] [--quad P] [--tol T] [--out F] [--boundaries]
    vstates check     [--seed S] [--out F] [--format text|json]
    vstates render    INPUT.json [--points last|all|none|i,j,...] [--out F]

Exit codes: 0 success, 2 usage error, 3 guard violation, 4 numerical
failure.  Output is deterministic: identical invocations produce
byte-identical files.  The environment variable ``VSTATES_NMAX`` overrides
the size of the memoized constant tables.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .contour import PatchPair, boundary_samples, branch_continue
from .errors import (
    BoundaryCollision,
    IndexOutOfTable,
    NoConvergence,
    NonConvergence,
    NotAnEigenvalue,
    NotSimple,
    PreconditionError,
    SingularJacobian,
    TableExhausted,
)
from .specfun import AnnulusConstants
from .spectrum import bifurcation_row, discriminant, threshold_N
from .verify import DEFAULT_SEED, format_report_table, run_default_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_NUMERIC = 4

_GUARD_ERRORS = (PreconditionError, NotSimple, NotAnEigenvalue, TableExhausted, IndexOutOfTable)
_NUMERIC_ERRORS = (NonConvergence, NoConvergence, SingularJacobian, BoundaryCollision)


@dataclass
class RunConfig:
    """Parsed invocation; one instance drives exactly one command."""

    command: str
    b: float = 0.0
    m: int = 0
    m_min: Optional[int] = None
    m_max: Optional[int] = None
    sign: str = "plus"
    modes: int = 32
    quad: int = 4096
    steps: int = 10
    ds: float = 1e-3
    tol: float = 1e-10
    seed: int = DEFAULT_SEED
    out: Optional[str] = None
    fmt: str = ""
    boundaries: bool = False
    points: str = "last"
    input: Optional[str] = None


def _fmt17(x: float) -> str:
    return f"{x:.17g}"


def _table_size(*requested: int) -> int:
    env = os.environ.get("VSTATES_NMAX")
    if env is not None:
        return int(env)
    return max(200, *requested) if requested else 200


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_spectrum(cfg: RunConfig) -> int:
    consts = AnnulusConstants.build(cfg.b, n_max=_table_size((cfg.m_max or 0) + 1))
    n_thr = threshold_N(cfg.b, consts)
    m_min = cfg.m_min if cfg.m_min is not None else n_thr
    m_max = cfg.m_max if cfg.m_max is not None else n_thr + 20
    if m_min < n_thr:
        raise PreconditionError(f"m-min={m_min} is below threshold N({cfg.b}) = {n_thr}")
    if m_max < m_min:
        raise PreconditionError(f"m-max={m_max} < m-min={m_min}")
    rows = [bifurcation_row(m, cfg.b, consts) for m in range(m_min, m_max + 1)]
    if cfg.fmt == "json":
        payload = [
            {
                "m": r.m,
                "C_m": r.c_m,
                "D_m": r.d_m,
                "Delta_m": r.delta_m,
                "lambda_minus": r.lambda_minus,
                "lambda_plus": r.lambda_plus,
                "omega_minus": r.omega_minus,
                "omega_plus": r.omega_plus,
                "transversal": r.transversal,
            }
            for r in rows
        ]
        _write_text(cfg.out, json.dumps(payload, indent=2))
    else:
        lines = ["m,C_m,D_m,Delta_m,lambda_minus,lambda_plus,omega_minus,omega_plus,transversal"]
        for r in rows:
            lines.append(
                ",".join(
                    [str(r.m)]
                    + [_fmt17(v) for v in (r.c_m, r.d_m, r.delta_m, r.lambda_minus,
                                           r.lambda_plus, r.omega_minus, r.omega_plus)]
                    + ["true" if r.transversal else "false"]
                )
            )
        _write_text(cfg.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_threshold(cfg: RunConfig) -> int:
    consts = AnnulusConstants.build(cfg.b, n_max=_table_size())
    n_thr = threshold_N(cfg.b, consts)
    _, e_prev, _ = discriminant(n_thr - 1, cfg.b, consts)
    _, e_at, _ = discriminant(n_thr, cfg.b, consts)
    print(f"b={_fmt17(cfg.b)} N={n_thr} E[N-1]={_fmt17(e_prev)} E[N]={_fmt17(e_at)}")
    return EXIT_OK


def cmd_branch(cfg: RunConfig) -> int:
    consts = AnnulusConstants.build(cfg.b, n_max=_table_size(4 * cfg.modes * cfg.m))
    run = branch_continue(
        cfg.m, cfg.b, cfg.sign, cfg.steps, cfg.ds,
        K=cfg.modes, P=cfg.quad, newton_tol=cfg.tol, consts=consts,
    )
    payload = {
        "b": cfg.b,
        "m": cfg.m,
        "K": cfg.modes,
        "P": run.P,
        "sign": cfg.sign,
        "stopped_reason": run.stopped_reason,
        "points": [
            {
                "s": pt.s,
                "omega": pt.patch.omega,
                "a": list(pt.patch.a),
                "c": list(pt.patch.c),
                "residual_norm": pt.residual_norm,
            }
            for pt in run.points
        ],
    }
    _write_text(cfg.out, json.dumps(payload, indent=2))
    if cfg.boundaries:
        stem = os.path.splitext(cfg.out)[0] if cfg.out else "branch"
        for pt in run.points:
            samples = boundary_samples(pt.patch)
            lines = ["theta,x1,y1,x2,y2"]
            for row in samples:
                lines.append(",".join(_fmt17(v) for v in row))
            with open(f"{stem}.boundaries.{pt.step_index:03d}.csv", "w", encoding="utf-8") as fh:
                fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    reports = run_default_suite(seed=cfg.seed)
    if cfg.fmt == "json":
        _write_text(cfg.out, json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        _write_text(cfg.out, format_report_table(reports) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NUMERIC


# --- render -----------------------------------------------------------------

_SCHEMA = {
    "b": float,
    "m": int,
    "K": int,
    "P": int,
    "sign": str,
    "points": list,
}
_POINT_SCHEMA = {
    "s": float,
    "omega": float,
    "a": list,
    "c": list,
    "residual_norm": float,
}


def _validate_branch_json(data: dict) -> None:
    def fail(path: str, why: str) -> None:
        raise PreconditionError(f"branch JSON schema violation at {path}: {why}")

    if not isinstance(data, dict):
        fail("$", "expected an object")
    for key, typ in _SCHEMA.items():
        if key not in data:
            fail(key, "missing")
        value = data[key]
        if typ is float and isinstance(value, int):
            continue
        if not isinstance(value, typ):
            fail(key, f"expected {typ.__name__}")
    for i, pt in enumerate(data["points"]):
        if not isinstance(pt, dict):
            fail(f"points[{i}]", "expected an object")
        for key, typ in _POINT_SCHEMA.items():
            if key not in pt:
                fail(f"points[{i}].{key}", "missing")
            value = pt[key]
            if typ is float and isinstance(value, int):
                continue
            if not isinstance(value, typ):
                fail(f"points[{i}].{key}", f"expected {typ.__name__}")


def _select_points(spec: str, count: int) -> list[int]:
    if spec == "none" or count == 0:
        return []
    if spec == "all":
        return list(range(count))
    if spec == "last":
        return [count - 1]
    try:
        idx = [int(tok) for tok in spec.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise PreconditionError(f"cannot parse --points {spec!r}") from exc
    for i in idx:
        if not 0 <= i < count:
            raise PreconditionError(f"--points index {i} out of range 0..{count - 1}")
    return idx


def _svg_polygon(xy: np.ndarray, stroke: str) -> str:
    pts = " ".join(f"{x:.6f},{-y:.6f}" for x, y in xy)
    return f'<polygon points="{pts}" fill="none" stroke="{stroke}" stroke-width="0.004"/>'


def _render_svg(data: dict, point_indices: list[int]) -> str:
    b = float(data["b"])
    m = int(data["m"])
    big_k = int(data["K"])
    parts = []
    xmax = 1.0
    for i in point_indices:
        pt = data["points"][i]
        patch = PatchPair(
            b=b, m=m, K=big_k,
            a=np.asarray(pt["a"], dtype=float),
            c=np.asarray(pt["c"], dtype=float),
            omega=float(pt["omega"]),
        )
        samples = boundary_samples(patch)
        outer = samples[:, 1:3]
        inner = samples[:, 3:5]
        xmax = max(xmax, float(np.abs(outer).max()), float(np.abs(inner).max()))
        parts.append(_svg_polygon(outer, "#1f77b4"))
        parts.append(_svg_polygon(inner, "#d62728"))
    half = 1.05 * xmax  # 5% margin
    dashes = (
        f'<circle cx="0" cy="0" r="1" fill="none" stroke="#999999" '
        f'stroke-width="0.003" stroke-dasharray="0.04,0.04"/>'
        f'<circle cx="0" cy="0" r="{b:.6f}" fill="none" stroke="#999999" '
        f'stroke-width="0.003" stroke-dasharray="0.04,0.04"/>'
    )
    body = dashes + "".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="640" height="640" '
        f'viewBox="{-half:.6f} {-half:.6f} {2 * half:.6f} {2 * half:.6f}">{body}</svg>\n'
    )


def cmd_render(cfg: RunConfig) -> int:
    with open(cfg.input, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    _validate_branch_json(data)
    indices = _select_points(cfg.points, len(data["points"]))
    svg = _render_svg(data, indices)
    _write_text(cfg.out, svg)
    return EXIT_OK


# --- argument parsing ---------------------------------------------------------


def _add_b(p: argparse.ArgumentParser) -> None:
    p.add_argument("--b", type=float, required=True, help="inner radius, 0 < b < 1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vstates",
        description="Bifurcation diagram and branches of doubly connected rotating patches",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="per-mode bifurcation table")
    _add_b(p_spec)
    p_spec.add_argument("--m-min", type=int, default=None)
    p_spec.add_argument("--m-max", type=int, default=None)
    p_spec.add_argument("--out", default=None)
    p_spec.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")

    p_thr = sub.add_parser("threshold", help="smallest admissible fold symmetry")
    _add_b(p_thr)

    p_br = sub.add_parser("branch", help="trace a bifurcation branch")
    _add_b(p_br)
    p_br.add_argument("--m", type=int, required=True, help="fold symmetry")
    p_br.add_argument("--sign", choices=("plus", "minus"), default="plus")
    p_br.add_argument("--steps", type=int, default=10)
    p_br.add_argument("--ds", type=float, default=1e-3)
    p_br.add_argument("--modes", type=int, default=32, help="retained modes K")
    p_br.add_argument("--quad", type=int, default=4096, help="collocation/quadrature size P")
    p_br.add_argument("--tol", type=float, default=1e-10)
    p_br.add_argument("--out", default=None)
    p_br.add_argument("--boundaries", action="store_true",
                      help="also write sampled boundary CSV per point")

    p_chk = sub.add_parser("check", help="run the oracle verification suite")
    p_chk.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_chk.add_argument("--out", default=None)
    p_chk.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    p_ren = sub.add_parser("render", help="render branch boundaries as SVG")
    p_ren.add_argument("input", help="branch JSON file")
    p_ren.add_argument("--points", default="last",
                       help="'last', 'all', 'none', or comma-separated indices")
    p_ren.add_argument("--out", default=None)

    return parser


def _config_from_args(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for field in ("b", "m", "m_min", "m_max", "sign", "modes", "quad", "steps",
                  "ds", "tol", "seed", "out", "fmt", "boundaries", "points", "input"):
        if hasattr(args, field):
            setattr(cfg, field, getattr(args, field))
    if hasattr(args, "b") and not (
        isinstance(args.b, float) and math.isfinite(args.b) and 0.0 < args.b < 1.0
    ):
        parser.error(f"--b must lie strictly between 0 and 1, got {args.b}")
    return cfg


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "threshold": cmd_threshold,
    "branch": cmd_branch,
    "check": cmd_check,
    "render": cmd_render,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args, parser)
    try:
        return _COMMANDS[cfg.command](cfg)
    except _GUARD_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except _NUMERIC_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
