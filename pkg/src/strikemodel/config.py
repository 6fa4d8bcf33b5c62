"""Flat ``key = value`` run configuration.

Grammar, one entry per line::

    # comment
    key = value   # trailing comment

Blank lines are ignored. Keys are the 13 rate names of
:class:`~strikemodel.model.ModelParameters` plus ``eligible_population``,
``t_end``, ``dt`` and ``scenario``. Numbers use a dot decimal separator.
Unknown or repeated keys are errors; a missing rate defaults to 0 with a
:class:`MissingKeyWarning`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .model import PARAM_NAMES, ModelParameters, SimulationConfig, validate
from .scenarios import BUILTIN_MASKS

SIMULATION_KEYS = ("eligible_population", "t_end", "dt")
KNOWN_KEYS = PARAM_NAMES + SIMULATION_KEYS + ("scenario",)
_SIM_DEFAULTS = SimulationConfig()


class ConfigError(ValueError):
    """Parse or validation failure. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.key = key


class MissingKeyWarning(UserWarning):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: ModelParameters
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    scenario: str | None = None


def _number(text: str, key: str, lineno: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"{key}: not a number: {text!r}", lineno, key) from None
    return value


def parse_config(text: str) -> RunConfig:
    values: dict[str, float] = {}
    scenario = None
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno, key)
        if key in seen:
            raise ConfigError(f"duplicate key {key!r}", lineno, key)
        seen.add(key)
        if not value:
            raise ConfigError(f"{key}: missing value", lineno, key)
        if key == "scenario":
            if value not in BUILTIN_MASKS:
                raise ConfigError(
                    f"scenario: unknown name {value!r}, expected one of {sorted(BUILTIN_MASKS)}",
                    lineno,
                    key,
                )
            scenario = value
        else:
            values[key] = _number(value, key, lineno)

    missing = [k for k in PARAM_NAMES if k not in values]
    if missing:
        warnings.warn(f"missing rate keys default to 0: {', '.join(missing)}", MissingKeyWarning, stacklevel=2)
    params = ModelParameters(**{k: values.get(k, 0.0) for k in PARAM_NAMES})
    msg = validate(params)
    if msg is not None:
        raise ConfigError(msg, key=msg.split(" ", 1)[0])

    sim = SimulationConfig(
        eligible_population=values.get("eligible_population", _SIM_DEFAULTS.eligible_population),
        t_end=values.get("t_end", _SIM_DEFAULTS.t_end),
        dt=values.get("dt", _SIM_DEFAULTS.dt),
    )
    msg = sim.validate()
    if msg is not None:
        raise ConfigError(msg, key=msg.split(" ", 1)[0])
    return RunConfig(params=params, simulation=sim, scenario=scenario)


def format_config(cfg: RunConfig) -> str:
    """Render *cfg* in the grammar accepted by :func:`parse_config`.

    Floats are written with ``repr`` so parsing the output gives back an
    equal :class:`RunConfig`.
    """
    lines = [f"{k} = {getattr(cfg.params, k)!r}" for k in PARAM_NAMES]
    lines += [f"{k} = {float(getattr(cfg.simulation, k))!r}" for k in SIMULATION_KEYS]
    if cfg.scenario is not None:
        lines.append(f"scenario = {cfg.scenario}")
    return "\n".join(lines) + "\n"
