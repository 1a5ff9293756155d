"""Job configuration: JSON schema, loading and canonical serialization."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, ValidationError, field_validator, model_validator

from .dilation import DilationSpec, Lattice
from .geometry import Region, polygonal_annular_sector, use_tolerances

CONFIG_DIR = Path(__file__).parent / "configs"
BUNDLED = {"example-3-1": CONFIG_DIR / "example-3-1.json", "example-3-2": CONFIG_DIR / "example-3-2.json"}


class ConfigError(ValueError):
    """Configuration could not be parsed or failed validation."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class BoxShape(_Strict):
    box: tuple[float, float, float, float]

    @field_validator("box")
    @classmethod
    def _ordered(cls, v: tuple[float, float, float, float]) -> tuple[float, float, float, float]:
        if not (v[0] < v[2] and v[1] < v[3]):
            raise ValueError("box must be [x0, y0, x1, y1] with x0 < x1 and y0 < y1")
        return v


class AnnularSectorSpec(_Strict):
    r_in: PositiveFloat
    r_out: PositiveFloat
    angle: PositiveFloat = 2 * math.pi
    segments: int = Field(64, ge=1)


class AnnularSectorShape(_Strict):
    annular_sector: AnnularSectorSpec


RegionSpec = Union[BoxShape, AnnularSectorShape, list[list[tuple[float, float]]]]


def build_region(spec: RegionSpec) -> Region:
    if isinstance(spec, BoxShape):
        return Region.box(*spec.box)
    if isinstance(spec, AnnularSectorShape):
        s = spec.annular_sector
        return polygonal_annular_sector(s.r_in, s.r_out, s.angle, s.segments)
    return Region.from_literal(spec)


class DilationModel(_Strict):
    rotation_order: int = Field(1, ge=1)
    expansive_base: tuple[tuple[float, float], tuple[float, float]]
    power_range: tuple[int, int]
    extra_factors: list[tuple[tuple[float, float], tuple[float, float]]] = Field(
        default_factory=lambda: [((1.0, 0.0), (0.0, 1.0))]
    )
    order: Literal["rotations-then-powers", "powers-then-rotations"] = "rotations-then-powers"

    def build(self, power_range: tuple[int, int] | None = None) -> DilationSpec:
        d = self.model_dump()
        if power_range is not None:
            d["power_range"] = power_range
        return DilationSpec.from_dict(d)


class LatticeModel(_Strict):
    basis: tuple[tuple[float, float], tuple[float, float]]

    def build(self) -> Lattice:
        return Lattice(self.basis)


class ConstructionModel(_Strict):
    name: Literal["diag-rot", "rot-scale", "dls-exchange", "exwave"]
    J: int | None = Field(None, ge=1, le=40)
    variant: Literal["literal", "repaired"] = "literal"
    a: float = Field(2.0, gt=1.0)
    m: int = Field(4, ge=1)
    max_iters: int = Field(5000, ge=1)
    segments: int | None = Field(None, ge=1)

    @model_validator(mode="after")
    def _needs_depth(self) -> ConstructionModel:
        if self.name == "diag-rot" and self.J is None:
            raise ValueError("diag-rot needs J")
        return self


class CheckModel(_Strict):
    kind: Literal["additive", "multiplicative", "spectral", "wavelet", "parseval"]
    omega: str = "omega"
    window: str | None = None
    exclude: str | None = None
    target: str | None = None
    tol: PositiveFloat = 1e-6
    gap_tol: PositiveFloat | None = None
    route: Literal["fuglede-tiling", "gram-matrix"] = "gram-matrix"
    truncation_K: int = Field(3, ge=1)
    power_range: tuple[int, int] | None = None
    truncations: list[int] | None = None
    max_defect: PositiveFloat | None = None


class JobConfig(_Strict):
    command: Literal["construct", "verify", "render", "demo"]
    construction: ConstructionModel | None = None
    dilation: DilationModel | None = None
    lattice: LatticeModel
    regions: dict[str, RegionSpec] = Field(default_factory=dict)
    tolerances: dict[str, PositiveFloat] = Field(default_factory=dict)
    truncations: dict[str, int] = Field(default_factory=dict)
    checks: list[CheckModel] = Field(default_factory=list)
    seed: int = 0
    output_paths: dict[str, str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _references(self) -> JobConfig:
        known = set(self.regions) | ({"omega"} if self.construction is not None else set())
        for i, c in enumerate(self.checks):
            for key in ("omega", "window", "exclude", "target"):
                name = getattr(c, key)
                if name is not None and name not in known:
                    raise ValueError(f"checks.{i}.{key}: unknown region {name!r}")
            if c.kind in ("additive", "multiplicative") and c.window is None:
                raise ValueError(f"checks.{i}.window is required for {c.kind} checks")
            if c.kind in ("multiplicative", "wavelet", "parseval") and self.dilation is None:
                raise ValueError(f"checks.{i}: {c.kind} checks need a dilation family")
            if c.kind == "parseval" and c.target is None:
                raise ValueError(f"checks.{i}.target is required for parseval checks")
        if self.command in ("construct", "render") and self.construction is None:
            raise ValueError(f"command {self.command!r} needs a construction")
        if self.command == "render" and "svg" not in self.output_paths:
            raise ValueError("output_paths.svg is required for render")
        if self.construction is not None and self.construction.name in ("dls-exchange", "exwave"):
            need = ("E", "F") if self.construction.name == "dls-exchange" else ("E", "window")
            for name in need:
                if name not in self.regions:
                    raise ValueError(f"regions.{name} is required for {self.construction.name}")
            if self.dilation is None:
                raise ValueError(f"{self.construction.name} needs a dilation family")
        for name in self.tolerances:
            if name not in TOLERANCE_KEYS:
                raise ValueError(f"tolerances.{name}: unknown tolerance (known: {', '.join(sorted(TOLERANCE_KEYS))})")
        return self

    def region(self, name: str) -> Region:
        return build_region(self.regions[name])

    def tolerance_context(self):
        geom = {k: v for k, v in self.tolerances.items() if k in ("geom", "area", "det", "phase")}
        return use_tolerances(**geom)


# geometry tolerances plus the exchange residual target
TOLERANCE_KEYS = {"geom", "area", "det", "phase", "residual"}


def _format_error(err: ValidationError) -> str:
    lines = []
    for e in err.errors():
        loc = ".".join(str(p) for p in e["loc"]) or "<root>"
        lines.append(f"{loc}: {e['msg']}")
    return "; ".join(lines)


def parse_config(data: dict[str, Any] | str) -> JobConfig:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return JobConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_error(exc)) from exc


def load_config(path: str | Path) -> JobConfig:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {p}: {exc.strerror}") from exc
    return parse_config(text)


def config_dict(cfg: JobConfig) -> dict[str, Any]:
    return cfg.model_dump(mode="json", exclude_none=True)


def dump_config(cfg: JobConfig) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(config_dict(cfg), indent=2, sort_keys=True) + "\n"
