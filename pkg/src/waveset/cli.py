"""Command-line entry point: ``waveset {construct,verify,render,demo}``.

Exit codes: 0 all checks pass, 1 a verification failed, 2 the construction
failed, 3 the configuration is invalid.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from . import construct as cons
from . import verify as ver
from .config import BUNDLED, ConfigError, JobConfig, config_dict, load_config
from .dilation import DirectProductWarning, enumerate_dilations
from .geometry import GeometryError, Region
from .render import color, render_svg

log = logging.getLogger("waveset")

EXIT_PASS, EXIT_FAIL, EXIT_CONSTRUCTION, EXIT_CONFIG = 0, 1, 2, 3


@dataclass
class RunReport:
    config: dict[str, Any]
    exit_code: int = EXIT_PASS
    trace: cons.ConstructionTrace | None = None
    reports: list[dict[str, Any]] = field(default_factory=list)
    errors: list[dict[str, Any]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    artifacts: dict[str, str] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def verdict(self) -> str:
        return {EXIT_PASS: "pass", EXIT_FAIL: "fail"}.get(self.exit_code, "error")

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict,
            "exit_code": self.exit_code,
            "config": self.config,
            "trace": self.trace.to_dict() if self.trace is not None else None,
            "reports": self.reports,
            "errors": self.errors,
            "warnings": self.warnings,
            "artifacts": self.artifacts,
            "wall_time": round(self.wall_time, 3),
            "version": __version__,
        }


def build_trace(cfg: JobConfig) -> cons.ConstructionTrace:
    c = cfg.construction
    assert c is not None
    lat = cfg.lattice.build()
    if c.name == "diag-rot":
        return cons.construct_diag_rot(c.J, c.variant)
    if c.name == "rot-scale":
        return cons.construct_rot_scale(
            c.a, c.m, max_iters=c.max_iters, tol=cfg.tolerances.get("residual", 1e-5), segments=c.segments
        )
    dils = cfg.dilation.build()
    if c.name == "dls-exchange":
        return cons.dls_exchange(
            cfg.region("E"), cfg.region("F"), dils, lat, c.max_iters, cfg.tolerances.get("residual", 1e-9)
        )
    return cons.exwave_pipeline(
        cfg.region("E"), dils, lat, cfg.region("window"), tol=1e-3, max_iters=c.max_iters,
        exchange_tol=cfg.tolerances.get("residual", 1e-6),
    )


def _omega(cfg: JobConfig, name: str, trace: cons.ConstructionTrace | None) -> Region:
    if name == "omega" and trace is not None:
        return trace.result
    return cfg.region(name)


def run_check(cfg: JobConfig, check, trace: cons.ConstructionTrace | None) -> dict[str, Any]:
    omega = _omega(cfg, check.omega, trace)
    lat = cfg.lattice.build()
    window = cfg.region(check.window) if check.window else None
    exclude = cfg.region(check.exclude) if check.exclude else None
    family = enumerate_dilations(cfg.dilation.build(check.power_range)) if cfg.dilation is not None else []
    if check.kind == "additive":
        rep = ver.check_additive_tiling(omega, lat, window, check.tol, exclude, check.gap_tol)
    elif check.kind == "multiplicative":
        rep = ver.check_mult_tiling(omega, family, window, check.tol, exclude, check.gap_tol)
        rep.truncation["power_range"] = list(check.power_range or cfg.dilation.power_range)
    elif check.kind == "spectral":
        rep = ver.check_spectral(omega, lat, check.route, check.truncation_K, check.tol)
    elif check.kind == "wavelet":
        rep = ver.check_wavelet_system(omega, family, lat, check.truncation_K, window, check.tol, exclude)
    else:
        ks = check.truncations or [check.truncation_K]
        rep = ver.ParsevalReport(
            ver.parseval_defects(omega, family, lat, cfg.region(check.target), ks),
            check.max_defect,
        )
    out = rep.to_dict()
    out["check"] = check.model_dump(mode="json", exclude_none=True)
    return out


def run(cfg: JobConfig) -> RunReport:
    t0 = time.perf_counter()
    report = RunReport(config_dict(cfg))
    with warnings.catch_warnings(record=True) as caught, cfg.tolerance_context():
        warnings.simplefilter("always", DirectProductWarning)
        if cfg.construction is not None:
            try:
                report.trace = build_trace(cfg)
            except (cons.ConstructionError, GeometryError, ValueError) as exc:
                report.errors.append({"stage": "construction", "type": type(exc).__name__, "message": str(exc),
                                      **({"hypothesis": exc.hypothesis} if isinstance(exc, cons.HypothesisError) else {})})
                report.exit_code = EXIT_CONSTRUCTION
            else:
                residual_tol = cfg.tolerances.get("residual")
                if residual_tol is not None and report.trace.residual_area > residual_tol:
                    report.errors.append({"stage": "construction", "type": "ResidualTooLarge",
                                          "message": f"residual {report.trace.residual_area:.3e} > {residual_tol:g}"})
                    report.exit_code = EXIT_CONSTRUCTION
                for name, sub in report.trace.reports.items():
                    report.reports.append({**sub.to_dict(), "name": name})
        if report.exit_code == EXIT_PASS and cfg.command != "render":
            for i, check in enumerate(cfg.checks):
                try:
                    entry = run_check(cfg, check, report.trace)
                except (ver.PreconditionError, GeometryError, ValueError) as exc:
                    entry = {"kind": "error", "check": check.model_dump(mode="json", exclude_none=True),
                             "pass": False, "type": type(exc).__name__, "message": str(exc)}
                report.reports.append(entry)
                log.info("check %d (%s): %s", i, check.kind, "pass" if entry["pass"] else "FAIL")
            if not all(r["pass"] for r in report.reports):
                report.exit_code = EXIT_FAIL
        if report.trace is not None and cfg.command in ("render", "demo") and "svg" in cfg.output_paths:
            try:
                svg = Path(cfg.output_paths["svg"])
                svg.parent.mkdir(parents=True, exist_ok=True)
                report.artifacts["svg"] = str(render_trace(report.trace, svg))
            except OSError as exc:
                report.errors.append({"stage": "render", "type": "OSError", "message": str(exc)})
                report.exit_code = max(report.exit_code, EXIT_CONSTRUCTION)
    report.warnings = sorted({str(w.message) for w in caught})
    report.wall_time = time.perf_counter() - t0
    if "report" in cfg.output_paths:
        write_report(report, cfg.output_paths["report"])
    return report


def render_trace(trace: cons.ConstructionTrace, path: str | Path) -> Path:
    """Figure of the constructed set; recursion steps of the same label share a colour."""
    labels: dict[str, int] = {}
    items = []
    for s in trace.steps:
        key = s.label or f"step {s.iteration}"
        idx = labels.setdefault(key, len(labels))
        items.append((s.placed, {"fill": color(idx), "label": key}))
    return render_svg(items, path)


def write_report(report: RunReport, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    return p


def _summary(report: RunReport) -> str:
    lines = []
    if report.trace is not None:
        d = report.trace.digest()
        lines.append(f"construction {d['name']}: {d['steps']} steps, {d['pieces']} pieces, residual {d['residual_area']:.3e}")
    for e in report.errors:
        lines.append(f"error [{e['stage']}] {e['type']}: {e['message']}")
    for r in report.reports:
        masses = ", ".join(f"{k}={v:.3e}" for k, v in r.get("masses", {}).items() if isinstance(v, float))
        tag = r.get("name") or r.get("route") or ""
        lines.append(f"{'PASS' if r['pass'] else 'FAIL'} {r['kind']}{' ' + tag if tag else ''}: {masses or r.get('message', '')}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    lines.append(f"verdict: {report.verdict} ({report.wall_time:.1f} s)")
    return "\n".join(lines)


def demo_config(name: str, args: argparse.Namespace) -> JobConfig:
    data = json.loads(BUNDLED[name].read_text())
    c = data["construction"]
    if args.J is not None:
        c["J"] = args.J
    if getattr(args, "variant", None):
        c["variant"] = args.variant
    if args.a is not None:
        c["a"] = args.a
    if args.m is not None:
        c["m"] = args.m
    if args.tol is not None:
        for check in data.get("checks", []):
            check["tol"] = args.tol
            check.pop("gap_tol", None)
    outputs = {}
    if args.out:
        out = Path(args.out)
        outputs = {"report": str(out / f"{name}-report.json"), "svg": str(out / f"{name}.svg")}
    data["output_paths"] = outputs
    return JobConfig.model_validate(data)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="waveset", description="Construct and verify wavelet sets for planar dilation families.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--json", action="store_true", help="print the full report as JSON")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("construct", "verify", "render"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
    demo = sub.add_parser("demo", help="run a bundled example")
    demo.add_argument("example", choices=sorted(BUNDLED))
    demo.add_argument("--J", type=int)
    demo.add_argument("--tol", type=float)
    demo.add_argument("--out")
    demo.add_argument("--variant", choices=["literal", "repaired"])
    demo.add_argument("--a", type=float)
    demo.add_argument("--m", type=int)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        if args.command == "demo":
            cfg = demo_config(args.example, args)
        else:
            cfg = load_config(args.config)
            if cfg.command != args.command and not (args.command == "verify" and cfg.command == "demo"):
                cfg = cfg.model_copy(update={"command": args.command})
                if args.command in ("construct", "render") and cfg.construction is None:
                    raise ConfigError(f"command {args.command!r} needs a construction")
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report = run(cfg)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(_summary(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
