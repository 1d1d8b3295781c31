"""Command-line front end.

Usage:
    bifourier invert --spectrum "2/(1+w^2)" --t-range=-3:3:7
    bifourier poles --spectrum "0.5*(1/(w+2+i1) - 1/(w-2+i1))"
    bifourier transform --signal exp_abs:1 --w 0 --w 0.5 --format csv
    bifourier roc --alpha 1 --beta 1 --w i2
    bifourier roundtrip --signal exp_abs:1 --spectrum "2/(1+w^2)" --t-range=-2:2:5 --w 0

Exit status is 0 on success, 1 on a usage error and 2 on a computation
error; errors are reported on stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bicomplex import Bicomplex, to_idempotent
from .errors import BifourierError
from .parser import parse_bicomplex, parse_spectrum, render_spectrum
from .rational import find_poles
from .transform import (
    DecayEstimate,
    RegionOfConvergence,
    TimeSignal,
    damped_sin,
    exp_abs,
    forward_transform,
    inverse_transform,
    roc_contains_four,
    roc_contains_idem,
    roundtrip_error,
    table_signal,
)

__all__ = ["RunConfig", "UsageError", "run", "main"]

COMMANDS = ("invert", "transform", "poles", "roc", "roundtrip")
TOL_ENV = "BIFOURIER_TOL"
DEFAULT_TOL = 1e-10


class UsageError(BifourierError):
    pass


class ROCDisagreement(BifourierError):
    pass


@dataclass
class RunConfig:
    command: str
    spectrum: str | None = None
    signal: str | None = None
    t_range: tuple[float, float, int] | None = None
    w_points: list[str] = field(default_factory=list)
    alpha: float | None = None
    beta: float | None = None
    tol: float = DEFAULT_TOL
    format: str = "json"
    out_path: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        needs = {
            "invert": ("spectrum", "t_range"),
            "poles": ("spectrum",),
            "transform": ("signal", "w_points"),
            "roc": ("alpha", "beta", "w_points"),
            "roundtrip": ("signal", "spectrum"),
        }[self.command]
        for name in needs:
            if not getattr(self, name):
                flag = "--" + name.replace("_points", "").replace("_", "-")
                raise UsageError(f"{self.command} requires {flag}")
        allowed = set(needs) | {"tol", "format", "out_path", "command"}
        if self.command == "roundtrip":
            allowed |= {"t_range", "w_points"}
        for name in ("spectrum", "signal", "t_range", "w_points", "alpha", "beta"):
            if name not in allowed and getattr(self, name):
                flag = "--" + name.replace("_points", "").replace("_", "-")
                raise UsageError(f"{flag} is not accepted by {self.command}")
        if self.t_range is not None and self.t_range[2] < 1:
            raise UsageError("--t-range count must be >= 1")
        if not self.tol > 0:
            raise UsageError("--tol must be > 0")
        if self.format not in ("json", "csv"):
            raise UsageError("--format must be json or csv")


def parse_t_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--t-range expects A:B:N, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--t-range expects A:B:N, got {text!r}") from None


def parse_signal(text: str) -> TimeSignal:
    """``exp_abs:A``, ``damped_sin:T:W0`` or ``table:PATH:C1:ALPHA:C2:BETA``."""
    name, _, rest = text.partition(":")
    params = rest.split(":") if rest else []
    try:
        if name == "exp_abs":
            return exp_abs(*(float(p) for p in params))
        if name == "damped_sin":
            return damped_sin(*(float(p) for p in params))
        if name == "table":
            path, *consts = params
            c1, alpha, c2, beta = (float(c) for c in consts)
            ts, fs = _read_table(path)
            return table_signal(ts, fs, DecayEstimate(c1, alpha, c2, beta), name=text)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad signal parameters in {text!r}: {exc}") from None
    raise UsageError(f"unknown signal {name!r}; expected exp_abs, damped_sin or table")


def _read_table(path: str) -> tuple[list[float], list[float]]:
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    except OSError as exc:
        raise UsageError(f"cannot read signal table {path!r}: {exc}") from None
    if rows and not _is_number(rows[0][0]):
        rows = rows[1:]
    return [float(r[0]) for r in rows], [float(r[1]) for r in rows]


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def _t_grid(t_range) -> list[float]:
    a, b, n = t_range
    return [float(t) for t in np.linspace(a, b, n)]


def _num(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _components(x: Bicomplex) -> dict:
    return {name: v + 0.0 for name, v in zip(("a0", "a1", "a2", "a3"), x.components())}


def _poles_json(F) -> dict:
    out = {}
    for name, comp in (("comp1", F.comp1), ("comp2", F.comp2)):
        if comp.den.degree < 1:
            out[name] = {"poles": [], "strip_clear": ["-inf", "inf"]}
        else:
            out[name] = find_poles(comp).to_json()
    return out


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{v + 0.0:.12g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_invert(cfg: RunConfig) -> str:
    F = parse_spectrum(cfg.spectrum)
    rows = [(t, *inverse_transform(F, t).components()) for t in _t_grid(cfg.t_range)]
    if cfg.format == "csv":
        return _csv(("t", "a0", "a1", "a2", "a3"), rows)
    return _json({
        "command": "invert",
        "spectrum": render_spectrum(F),
        "poles": _poles_json(F),
        "rows": [dict(zip(("t", "a0", "a1", "a2", "a3"), (v + 0.0 for v in r))) for r in rows],
    })


def _cmd_poles(cfg: RunConfig) -> str:
    F = parse_spectrum(cfg.spectrum)
    poles = _poles_json(F)
    if cfg.format == "csv":
        rows = []
        for comp, data in poles.items():
            for q in data["poles"]:
                rows.append((comp, float(q["location"][0]), float(q["location"][1]),
                             q["multiplicity"]))
        return _csv(("component", "re", "im", "multiplicity"), rows)
    return _json({"command": "poles", "spectrum": render_spectrum(F), **poles})


def _cmd_transform(cfg: RunConfig) -> str:
    f = parse_signal(cfg.signal)
    rows = []
    for text in cfg.w_points:
        w = parse_bicomplex(text)
        rows.append((text, forward_transform(f, w, cfg.tol)))
    if cfg.format == "csv":
        return _csv(("w", "a0", "a1", "a2", "a3"), [(t, *v.components()) for t, v in rows])
    out = []
    for text, v in rows:
        p = to_idempotent(v)
        out.append({"w": text, **_components(v),
                    "p1": [p.p1.real, p.p1.imag], "p2": [p.p2.real, p.p2.imag]})
    return _json({"command": "transform", "signal": f.name, "tol": cfg.tol, "rows": out})


def _cmd_roc(cfg: RunConfig) -> str:
    roc = RegionOfConvergence(cfg.alpha, cfg.beta)
    rows = []
    for text in cfg.w_points:
        w = parse_bicomplex(text)
        four, idem = roc_contains_four(roc, w), roc_contains_idem(roc, w)
        if four != idem:
            raise ROCDisagreement(f"predicates disagree at {text!r}: four={four}, idem={idem}")
        rows.append((text, four, idem))
    if cfg.format == "csv":
        return _csv(("w", "four", "idem", "agree"),
                    [(t, str(a).lower(), str(b).lower(), "true") for t, a, b in rows])
    return _json({
        "command": "roc", "alpha": _num(cfg.alpha), "beta": _num(cfg.beta),
        "rows": [{"w": t, "four": a, "idem": b, "agree": a == b} for t, a, b in rows],
    })


def _cmd_roundtrip(cfg: RunConfig) -> str:
    f = parse_signal(cfg.signal)
    F = parse_spectrum(cfg.spectrum)
    t_grid = _t_grid(cfg.t_range) if cfg.t_range else []
    w_grid = [parse_bicomplex(text) for text in cfg.w_points]
    err = roundtrip_error(f, F, t_grid, w_grid, cfg.tol)
    if cfg.format == "csv":
        return _csv(("max_error",), [(err,)])
    return _json({"command": "roundtrip", "signal": f.name, "spectrum": render_spectrum(F),
                  "t_points": len(t_grid), "w_points": len(w_grid), "max_error": err})


_HANDLERS = {
    "invert": _cmd_invert,
    "poles": _cmd_poles,
    "transform": _cmd_transform,
    "roc": _cmd_roc,
    "roundtrip": _cmd_roundtrip,
}


def run(cfg: RunConfig) -> str:
    """Execute ``cfg`` and return the rendered artifact (nothing is written)."""
    cfg.validate()
    return _HANDLERS[cfg.command](cfg)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="bifourier", description="Bicomplex Fourier transform tool.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--spectrum", help="rational spectrum in w, e.g. '2/(1+w^2)'")
    parser.add_argument("--signal", help="exp_abs:A | damped_sin:T:W0 | table:PATH:C1:ALPHA:C2:BETA")
    parser.add_argument("--t-range", dest="t_range", help="A:B:N uniform grid (use --t-range=A:B:N)")
    parser.add_argument("--w", dest="w_points", action="append", default=[],
                        help="bicomplex point, repeatable (use --w=... for a leading minus)")
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", dest="out_path")
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    tol = ns.tol
    if tol is None:
        env = os.environ.get(TOL_ENV)
        try:
            tol = float(env) if env else DEFAULT_TOL
        except ValueError:
            raise UsageError(f"{TOL_ENV}={env!r} is not a number") from None
    return RunConfig(
        command=ns.command,
        spectrum=ns.spectrum,
        signal=ns.signal,
        t_range=parse_t_range(ns.t_range) if ns.t_range else None,
        w_points=list(ns.w_points),
        alpha=ns.alpha,
        beta=ns.beta,
        tol=tol,
        format=ns.format,
        out_path=ns.out_path,
    )


def _report(exc: Exception, kind: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        text = run(cfg)
    except UsageError as exc:
        _report(exc, exc.kind)
        return 1
    except BifourierError as exc:
        _report(exc, exc.kind)
        return 2
    except (ValueError, ArithmeticError) as exc:
        _report(exc, type(exc).__name__)
        return 2
    if cfg.out_path:
        with open(cfg.out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
