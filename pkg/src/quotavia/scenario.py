"""Scenario configuration: a flat, sectioned key-value format.

Strict schema: unknown sections or keys are rejected with a field
diagnostic, every value is re-validated through the domain types, and
serialization emits a canonical form (fixed order, explicit defaults) so
load -> serialize is idempotent.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, replace

from .control import Strategy
from .econ import EconParams, Recruitment
from .engine import SimConfig, StrategySettings
from .viability import Maturity, ViabilityBounds

__all__ = ["ConfigError", "OutputSettings", "ScenarioConfig"]


class ConfigError(ValueError):
    """Malformed scenario file; the message names the offending field."""


@dataclass(frozen=True)
class OutputSettings:
    directory: str = "."
    trajectory_file: str = "trajectory.csv"
    events_file: str = "events.json"


_TRENDS = {"": None, "none": None, "growing": 1, "declining": -1}

# section -> key -> (parser, required)
_SCHEMA: dict[str, dict[str, tuple]] = {
    "econ": {key: (float, True) for key in
             ("alpha_1", "alpha_2", "beta_1", "beta_2", "kappa_1", "kappa_2", "price")},
    "recruitment": {"growth": (float, True), "capacity": (float, True)},
    "bounds": {"stock_floor": (float, True), "harvest_floor": (float, True)},
    "strategy": {
        "name": (str, True),
        "rate": (float, False),
        "floor_step": (float, False),
        "initial_recommendation": (float, False),
        "initial_maturity": (str, False),
        "initial_trend": (str, False),
        "moratorium_exit_intervals": (int, False),
    },
    "simulation": {
        "initial_stock": (float, True),
        "dt": (float, False),
        "horizon": (float, False),
        "control_interval": (float, False),
        "record_stride": (int, False),
    },
    "output": {
        "directory": (str, False),
        "trajectory_file": (str, False),
        "events_file": (str, False),
    },
}


def _parse_value(section: str, key: str, raw: str):
    try:
        kind, _ = _SCHEMA[section][key]
    except KeyError:
        raise ConfigError(f"[{section}] {key}: unknown key") from None
    if kind is str:
        return raw.strip()
    try:
        return kind(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected {kind.__name__}, got {raw!r}") from None


@dataclass(frozen=True)
class ScenarioConfig:
    econ: EconParams
    recruitment: Recruitment
    bounds: ViabilityBounds
    strategy: StrategySettings
    simulation: SimConfig
    output: OutputSettings = OutputSettings()

    @classmethod
    def from_text(cls, text: str) -> "ScenarioConfig":
        parser = configparser.ConfigParser(interpolation=None)
        try:
            parser.read_string(text)
        except configparser.Error as exc:
            raise ConfigError(f"unparseable config: {exc}") from None
        for section in parser.sections():
            if section not in _SCHEMA:
                raise ConfigError(f"[{section}]: unknown section")
        for section, keys in _SCHEMA.items():
            if section == "output":
                continue
            if not parser.has_section(section):
                raise ConfigError(f"[{section}]: missing section")
            for key, (_, required) in keys.items():
                if required and not parser.has_option(section, key):
                    raise ConfigError(f"[{section}] {key}: missing required key")

        values: dict[str, dict] = {}
        for section in parser.sections():
            values[section] = {key: _parse_value(section, key, raw)
                               for key, raw in parser.items(section)}
        return cls._build(values)

    @classmethod
    def from_file(cls, path) -> "ScenarioConfig":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.from_text(handle.read())

    @classmethod
    def _build(cls, values: dict[str, dict]) -> "ScenarioConfig":
        def wrap(section: str, factory):
            try:
                return factory()
            except ConfigError:
                raise
            except ValueError as exc:
                raise ConfigError(f"[{section}]: {exc}") from None

        econ = wrap("econ", lambda: EconParams(**values["econ"]))
        recruitment = wrap("recruitment", lambda: Recruitment(**values["recruitment"]))
        bounds = wrap("bounds", lambda: ViabilityBounds(**values["bounds"]))

        strat = dict(values["strategy"])
        name = strat.pop("name")
        try:
            strategy_kind = Strategy(name)
        except ValueError:
            raise ConfigError(f"[strategy] name: unknown strategy {name!r}") from None
        maturity_raw = strat.pop("initial_maturity", "emerging")
        try:
            maturity = Maturity(maturity_raw)
        except ValueError:
            raise ConfigError(f"[strategy] initial_maturity: {maturity_raw!r}") from None
        trend_raw = strat.pop("initial_trend", "").lower()
        if trend_raw not in _TRENDS:
            raise ConfigError(f"[strategy] initial_trend: {trend_raw!r}")
        settings = wrap("strategy", lambda: StrategySettings(
            strategy=strategy_kind,
            initial_maturity=maturity,
            initial_trend=_TRENDS[trend_raw],
            **strat,
        ))

        simulation = wrap("simulation", lambda: SimConfig(
            settings=settings, **values["simulation"]))
        output = OutputSettings(**values.get("output", {}))
        return cls(econ=econ, recruitment=recruitment, bounds=bounds,
                   strategy=settings, simulation=simulation, output=output)

    def to_text(self) -> str:
        """Canonical serialization: fixed order, every key explicit."""
        s = self.strategy
        sim = self.simulation
        trend = {None: "none", 1: "growing", -1: "declining"}[s.initial_trend]
        sections = [
            ("econ", [(k, repr(getattr(self.econ, k))) for k in
                      ("alpha_1", "alpha_2", "beta_1", "beta_2",
                       "kappa_1", "kappa_2", "price")]),
            ("recruitment", [("growth", repr(self.recruitment.growth)),
                             ("capacity", repr(self.recruitment.capacity))]),
            ("bounds", [("stock_floor", repr(self.bounds.stock_floor)),
                        ("harvest_floor", repr(self.bounds.harvest_floor))]),
            ("strategy", [
                ("name", s.strategy.value),
                ("rate", repr(s.rate)),
                *([("floor_step", repr(s.floor_step))] if s.floor_step is not None else []),
                *([("initial_recommendation", repr(s.initial_recommendation))]
                  if s.initial_recommendation is not None else []),
                ("initial_maturity", s.initial_maturity.value),
                ("initial_trend", trend),
                ("moratorium_exit_intervals", str(s.moratorium_exit_intervals)),
            ]),
            ("simulation", [("initial_stock", repr(sim.initial_stock)),
                            ("dt", repr(sim.dt)),
                            ("horizon", repr(sim.horizon)),
                            ("control_interval", repr(sim.control_interval)),
                            ("record_stride", str(sim.record_stride))]),
            ("output", [("directory", self.output.directory),
                        ("trajectory_file", self.output.trajectory_file),
                        ("events_file", self.output.events_file)]),
        ]
        buffer = io.StringIO()
        for title, items in sections:
            buffer.write(f"[{title}]\n")
            for key, value in items:
                buffer.write(f"{key} = {value}\n")
            buffer.write("\n")
        return buffer.getvalue()

    def with_overrides(self, overrides: dict) -> "ScenarioConfig":
        """New config with dotted ``section.key`` fields replaced.

        Values may be strings (parsed like file input) or already typed.
        """
        cfg = self
        for path, value in overrides.items():
            try:
                section, key = path.split(".", 1)
            except ValueError:
                raise ConfigError(f"{path!r}: expected section.key") from None
            if section not in _SCHEMA or key not in _SCHEMA[section]:
                raise ConfigError(f"{path!r}: unknown field")
            if isinstance(value, str):
                value = _parse_value(section, key, value)
            cfg = cfg._with_field(section, key, value)
        return cfg

    def _with_field(self, section: str, key: str, value) -> "ScenarioConfig":
        if section == "econ":
            return replace(self, econ=replace(self.econ, **{key: value}))
        if section == "recruitment":
            rec = Recruitment(**{**{"growth": self.recruitment.growth,
                                    "capacity": self.recruitment.capacity}, key: value})
            return replace(self, recruitment=rec)
        if section == "bounds":
            return replace(self, bounds=replace(self.bounds, **{key: value}))
        if section == "strategy":
            if key == "name":
                value = Strategy(value)
                strategy = replace(self.strategy, strategy=value)
            elif key == "initial_maturity":
                strategy = replace(self.strategy, initial_maturity=Maturity(value))
            elif key == "initial_trend":
                if isinstance(value, str):
                    value = _TRENDS[value.lower()]
                strategy = replace(self.strategy, initial_trend=value)
            else:
                strategy = replace(self.strategy, **{key: value})
            simulation = replace(self.simulation, settings=strategy)
            return replace(self, strategy=strategy, simulation=simulation)
        if section == "simulation":
            return replace(self, simulation=replace(self.simulation, **{key: value}))
        return replace(self, output=replace(self.output, **{key: value}))

    def build(self) -> tuple[EconParams, Recruitment, ViabilityBounds, SimConfig]:
        return self.econ, self.recruitment, self.bounds, self.simulation
