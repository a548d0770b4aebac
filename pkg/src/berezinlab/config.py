"""Run configuration: an INI file (configparser) with three sections, overridable by CLI flags.

    [run]          suites, budget, seed, jobs, out
    [deformation]  t, s, epsilon, h
    [quadrature]   n_radial, n_angular, n_f

Unknown sections or keys are rejected.  Every verify run writes the resolved
configuration next to its reports.
"""
from __future__ import annotations

import configparser
import io
from dataclasses import asdict, dataclass, field, fields, replace

from .deform import DeformationParams
from .suites import BUDGETS


class ConfigError(ValueError):
    """Invalid configuration; the CLI maps it to exit code 2."""


@dataclass(frozen=True)
class QuadratureOverrides:
    n_radial: int | None = None
    n_angular: int | None = None
    n_f: int | None = None

    def __post_init__(self) -> None:
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None and v < 2:
                raise ConfigError(f"quadrature.{f.name} must be >= 2")

    def apply(self, spec):
        changes = {k: v for k, v in asdict(self).items() if v is not None}
        return replace(spec, **changes) if changes else spec


@dataclass(frozen=True)
class RunConfig:
    suites: tuple = ("all",)
    budget: str = "med"
    seed: int = 0
    jobs: int = 1
    out: str = "reports"
    t: float | None = None
    s: float | None = None
    epsilon: float | None = None
    h: float | None = None
    quadrature: QuadratureOverrides = field(default_factory=QuadratureOverrides)

    def __post_init__(self) -> None:
        if self.budget not in BUDGETS:
            raise ConfigError(f"unknown budget {self.budget!r}; choose from {sorted(BUDGETS)}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if not self.suites:
            raise ConfigError("at least one suite is required")
        try:
            DeformationParams(t=8.0 if self.t is None else self.t, s=self.s,
                              epsilon=0.1 if self.epsilon is None else self.epsilon,
                              h=0.05 if self.h is None else self.h)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def to_ini(self) -> str:
        cp = configparser.ConfigParser()
        cp["run"] = {"suites": ",".join(self.suites), "budget": self.budget, "seed": str(self.seed),
                     "jobs": str(self.jobs), "out": self.out}
        cp["deformation"] = {k: repr(v) for k in ("t", "s", "epsilon", "h")
                             if (v := getattr(self, k)) is not None}
        cp["quadrature"] = {k: str(v) for k, v in asdict(self.quadrature).items() if v is not None}
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue()


_SCHEMA = {
    "run": {"suites": "list", "budget": str, "seed": int, "jobs": int, "out": str},
    "deformation": {"t": float, "s": float, "epsilon": float, "h": float},
    "quadrature": {"n_radial": int, "n_angular": int, "n_f": int},
}


def _convert(section: str, key: str, raw: str):
    kind = _SCHEMA[section][key]
    if kind == "list":
        items = tuple(x.strip() for x in raw.split(",") if x.strip())
        if not items:
            raise ConfigError(f"{section}.{key} is empty")
        return items
    try:
        return kind(raw)
    except ValueError as exc:
        raise ConfigError(f"{section}.{key}: cannot parse {raw!r} as {kind.__name__}") from exc


def parse_config(text: str, source: str = "<config>") -> dict:
    """Validated flat dictionary of the keys present in an INI text."""
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    values: dict = {}
    for section in cp.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"{source}: unknown section [{section}]")
        for key, raw in cp.items(section, raw=True):
            if key not in _SCHEMA[section]:
                raise ConfigError(f"{source}: unknown key {key!r} in [{section}]")
            values[(section, key)] = _convert(section, key, raw)
    return values


def build_config(file_values: dict | None = None, overrides: dict | None = None) -> RunConfig:
    """Merge file values with CLI overrides (flags win) into a RunConfig."""
    merged = dict(file_values or {})
    for key, v in (overrides or {}).items():
        if v is not None:
            merged[key] = v
    quad = QuadratureOverrides(**{k: v for (sec, k), v in merged.items() if sec == "quadrature"})
    kwargs = {k: v for (sec, k), v in merged.items() if sec in ("run", "deformation")}
    try:
        return RunConfig(quadrature=quad, **kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | None, overrides: dict | None = None) -> RunConfig:
    values = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                values = parse_config(fh.read(), path)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return build_config(values, overrides)


__all__ = ["ConfigError", "QuadratureOverrides", "RunConfig", "parse_config", "build_config", "load_config"]
