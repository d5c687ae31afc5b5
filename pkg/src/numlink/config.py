"""YAML scenario configuration: parsing, validation, and unit conversion.

dB/dBm live only in the file format; everything downstream is watts/meters.
Syntax problems raise ScenarioParseError (with the YAML line number),
semantic problems raise ScenarioValidationError naming the offending field.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import yaml

from .controller import ControlConstraints, ControllerOptions
from .geometry import ChannelParams, Node, Role
from .reception import SigmoidParams
from .utility import Scenario


class ScenarioParseError(Exception):
    """Unreadable or syntactically invalid configuration file."""


class ScenarioValidationError(Exception):
    """Well-formed file whose contents violate a scenario invariant."""


@dataclass(frozen=True)
class SimulationSettings:
    packets: int = 100_000
    seed: int = 0
    smoothing_window_s: float = 2.0

    def __post_init__(self):
        if self.packets < 1:
            raise ValueError("simulation.packets must be >= 1")
        if self.smoothing_window_s <= 0:
            raise ValueError("simulation.smoothing_window_s must be > 0")


@dataclass(frozen=True)
class LoadedConfig:
    scenario: Scenario
    controller: ControllerOptions
    simulation: SimulationSettings


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    return 10.0 * np.log10(watts) + 30.0


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _require(mapping, key, context, cast=float):
    if key not in mapping:
        raise ScenarioValidationError(f"{context}: missing required field '{key}'")
    try:
        return cast(mapping[key])
    except (TypeError, ValueError):
        raise ScenarioValidationError(f"{context}.{key}: cannot interpret {mapping[key]!r}") from None


def _optional(mapping, key, default, cast=float):
    if key not in mapping or mapping[key] is None:
        return default
    try:
        return cast(mapping[key])
    except (TypeError, ValueError):
        raise ScenarioValidationError(f"{key}: cannot interpret {mapping[key]!r}") from None


_ROLES = {"tx": Role.TRANSMITTER, "transmitter": Role.TRANSMITTER,
          "rx": Role.RECEIVER, "receiver": Role.RECEIVER}


def _parse_nodes(raw) -> list:
    if not isinstance(raw, list) or not raw:
        raise ScenarioValidationError("nodes: must be a nonempty list")
    nodes = []
    seen = set()
    for k, item in enumerate(raw):
        ctx = f"nodes[{k}]"
        if not isinstance(item, dict):
            raise ScenarioValidationError(f"{ctx}: must be a mapping")
        node_id = _require(item, "id", ctx, int)
        if node_id in seen:
            raise ScenarioValidationError(f"{ctx}.id: duplicate node id {node_id}")
        seen.add(node_id)
        role_txt = str(_require(item, "role", ctx, str)).lower()
        if role_txt not in _ROLES:
            raise ScenarioValidationError(f"{ctx}.role: unknown role {role_txt!r} (use tx or rx)")
        role = _ROLES[role_txt]
        x = _require(item, "x", ctx)
        y = _require(item, "y", ctx)
        if role is Role.TRANSMITTER:
            power = dbm_to_watts(_require(item, "power_dbm", ctx))
        else:
            if "power_dbm" in item:
                raise ScenarioValidationError(f"{ctx}.power_dbm: receivers must not set a power")
            power = 0.0
        try:
            nodes.append(Node(id=node_id, role=role, position=np.array([x, y]), tx_power=power))
        except ValueError as exc:
            raise ScenarioValidationError(f"{ctx}: {exc}") from None
    return nodes


def _parse_channel(raw) -> ChannelParams:
    raw = raw or {}
    try:
        return ChannelParams(
            path_loss_exponent=_optional(raw, "path_loss_exponent", 2.0),
            reference_gain=db_to_linear(_optional(raw, "reference_gain_db", 0.0)),
            noise_power=dbm_to_watts(_optional(raw, "noise_dbm", -90.0)),
            min_distance=_optional(raw, "min_distance_m", 1.0),
        )
    except ValueError as exc:
        raise ScenarioValidationError(f"channel: {exc}") from None


def _parse_sigmoid(raw) -> SigmoidParams:
    raw = raw or {}
    try:
        return SigmoidParams(alpha=_optional(raw, "alpha", 0.05),
                             beta=_optional(raw, "beta", 0.525))
    except ValueError as exc:
        raise ScenarioValidationError(f"sigmoid: {exc}") from None


def _parse_constraints(raw) -> ControlConstraints:
    raw = raw or {}
    arena = raw.get("arena", [-100.0, -100.0, 100.0, 100.0])
    if not (isinstance(arena, (list, tuple)) and len(arena) == 4):
        raise ScenarioValidationError("constraints.arena: expected [xmin, ymin, xmax, ymax]")
    try:
        return ControlConstraints(
            max_step=_optional(raw, "max_step_m", 0.5),
            min_power=dbm_to_watts(_optional(raw, "min_power_dbm", -30.0)),
            max_power=dbm_to_watts(_optional(raw, "max_power_dbm", 30.0)),
            arena=tuple(float(v) for v in arena),
            optimize_positions=_optional(raw, "optimize_positions", True, bool),
            optimize_powers=_optional(raw, "optimize_powers", False, bool),
        )
    except ValueError as exc:
        raise ScenarioValidationError(f"constraints: {exc}") from None


def _parse_controller(raw) -> ControllerOptions:
    raw = raw or {}
    try:
        return ControllerOptions(
            step_size=_optional(raw, "step_size", 1.0),
            backtracking_factor=_optional(raw, "backtracking_factor", 0.5),
            max_iterations=_optional(raw, "max_iterations", 500, int),
            tolerance=_optional(raw, "tolerance", 1e-9),
        )
    except ValueError as exc:
        raise ScenarioValidationError(f"controller: {exc}") from None


def _parse_simulation(raw) -> SimulationSettings:
    raw = raw or {}
    try:
        return SimulationSettings(
            packets=_optional(raw, "packets", 100_000, int),
            seed=_optional(raw, "seed", 0, int),
            smoothing_window_s=_optional(raw, "smoothing_window_s", 2.0),
        )
    except ValueError as exc:
        raise ScenarioValidationError(f"simulation: {exc}") from None


def parse_scenario(path) -> LoadedConfig:
    """Load and fully validate a scenario configuration file."""
    try:
        with open(path, "r") as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ScenarioParseError(f"{path}: {exc.strerror or exc}") from None
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}" if mark is not None else "unknown position"
        raise ScenarioParseError(f"{path}: YAML syntax error at {where}: {exc}") from None
    if not isinstance(raw, dict):
        raise ScenarioParseError(f"{path}: top level must be a mapping")

    nodes = _parse_nodes(raw.get("nodes"))
    channel = _parse_channel(raw.get("channel"))
    sigmoid = _parse_sigmoid(raw.get("sigmoid"))
    constraints = _parse_constraints(raw.get("constraints"))
    controller = _parse_controller(raw.get("controller"))
    simulation = _parse_simulation(raw.get("simulation"))

    try:
        scenario = Scenario(nodes=nodes, channel=channel, sigmoid=sigmoid,
                            constraints=constraints)
    except ValueError as exc:
        raise ScenarioValidationError(str(exc)) from None

    for node in scenario.transmitters():
        if not constraints.contains(node.position):
            raise ScenarioValidationError(
                f"nodes: transmitter {node.id} starts outside the arena {constraints.arena}")
        if not (constraints.min_power <= node.tx_power <= constraints.max_power):
            raise ScenarioValidationError(
                f"nodes: transmitter {node.id} power {node.tx_power:.3e} W is outside "
                f"[{constraints.min_power:.3e}, {constraints.max_power:.3e}] W")

    return LoadedConfig(scenario=scenario, controller=controller, simulation=simulation)
