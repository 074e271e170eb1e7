"""Run configuration: INI-style key = value sections, validated into RunConfig.

Unknown keys are rejected, missing keys take the documented defaults, and
scenario-specific invariants (matched contact data, admissible composite end
states, equal end states for convergence runs) are enforced at parse time.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .coefficients import CoefficientModel, make_coefficient_model
from .errors import BracketError, ConfigError, DomainError
from .riemann import EndStates, solve_middle_states
from .thermo import ThermoParams, pressure

__all__ = ["RunConfig", "parse_config", "load_config", "config_from_overrides"]

SCENARIOS = ("contact", "composite", "rarefaction", "convergence", "profile-validation")
SHAPES = ("gaussian", "sine-packet", "none")

# schema: section -> key -> (converter, default)
_SCHEMA: Dict[str, Dict[str, Tuple[str, object]]] = {
    "thermo": {
        "R": ("float", 1.0),
        "gamma": ("float", 1.1),
        "A": ("float", 1.0),
    },
    "coefficients": {
        "model": ("str", "default"),
        # remaining keys are family parameters, validated by the factory
    },
    "end_states": {
        "v_minus": ("float", 1.0),
        "u_minus": ("float", 0.0),
        "theta_minus": ("float", 1.0),
        "v_plus": ("float", 1.05),
        "u_plus": ("float", 0.0),
        "theta_plus": ("float", 1.05),
    },
    "scenario": {
        "kind": ("str", "contact"),
        "contact_anchor": ("str", "middle"),
        "t_final": ("float", 1.0),
        "snapshot_times": ("floats", []),
    },
    "grid": {
        "half_width": ("float", 50.0),
        "n_points": ("int", 2000),
    },
    "solver": {
        "cfl": ("float", 0.1),
        "advective_cfl": ("float", 0.4),
        "cadence": ("int", 10),
        "profile_n": ("int", 2001),
        "profile_half_width": ("float", 0.0),  # 0 = automatic
        "v_floor": ("float", 0.0),
        "v_ceil": ("float", 0.0),              # 0 = unbounded
        "theta_floor": ("float", 0.0),
        "theta_ceil": ("float", 0.0),
        "sponge_width": ("float", 0.0),
        "sponge_rate": ("float", 2.0),
    },
    "perturbation": {
        "shape": ("str", "gaussian"),
        "amp_v": ("float", 0.0),
        "amp_u": ("float", 0.0),
        "amp_theta": ("float", 0.0),
        "center": ("float", 0.0),
        "width": ("float", 5.0),
        "wavelength": ("float", 5.0),
    },
    "output": {
        "directory": ("str", "out"),
    },
}


@dataclass
class RunConfig:
    thermo: ThermoParams
    coeff: CoefficientModel
    ends: EndStates
    kind: str
    contact_anchor: str
    t_final: float
    snapshot_times: List[float]
    half_width: float
    n_points: int
    cfl: float
    advective_cfl: float
    cadence: int
    profile_n: int
    profile_half_width: Optional[float]
    v_floor: float
    v_ceil: float
    theta_floor: float
    theta_ceil: float
    sponge_width: float
    sponge_rate: float
    shape: str
    amp_v: float
    amp_u: float
    amp_theta: float
    center: float
    width: float
    wavelength: float
    out_directory: str
    resolved: Dict[str, str] = field(default_factory=dict)


def _convert(kind: str, raw: str, where: str):
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
        if kind == "floats":
            raw = raw.strip()
            return [float(tok) for tok in raw.replace(",", " ").split()] if raw else []
        return raw.strip()
    except ValueError as exc:
        raise ConfigError(f"cannot parse {where} = {raw!r} as {kind}") from exc


def parse_config(text: str) -> RunConfig:
    """Parse and validate the documented line-oriented configuration format."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keys are case-sensitive (e.g. K1, R)
    try:
        parser.read_file(io.StringIO(text))
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc

    values: Dict[str, Dict[str, object]] = {}
    coeff_params: Dict[str, float] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]; "
                              f"known: {sorted(_SCHEMA)}")
        for key, raw in parser[section].items():
            if section == "coefficients" and key != "model":
                coeff_params[key] = _convert("float", raw, f"coefficients.{key}")
                continue
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key '{key}' in section [{section}]")
            kind, _ = _SCHEMA[section][key]
            values.setdefault(section, {})[key] = _convert(kind, raw, f"{section}.{key}")

    def get(section: str, key: str):
        kind, default = _SCHEMA[section][key]
        return values.get(section, {}).get(key, default)

    try:
        thermo = ThermoParams(R=get("thermo", "R"), gamma=get("thermo", "gamma"),
                              A=get("thermo", "A"))
    except DomainError as exc:
        raise ConfigError(f"thermo validation failed: {exc}") from exc

    model_name = get("coefficients", "model")
    try:
        coeff = make_coefficient_model(model_name, **coeff_params)
    except (DomainError, TypeError) as exc:
        raise ConfigError(f"coefficient model '{model_name}' rejected: {exc}") from exc

    try:
        ends = EndStates(
            v_minus=get("end_states", "v_minus"), u_minus=get("end_states", "u_minus"),
            theta_minus=get("end_states", "theta_minus"),
            v_plus=get("end_states", "v_plus"), u_plus=get("end_states", "u_plus"),
            theta_plus=get("end_states", "theta_plus"))
    except DomainError as exc:
        raise ConfigError(f"end states rejected (positivity): {exc}") from exc

    kind = get("scenario", "kind")
    if kind not in SCENARIOS:
        raise ConfigError(f"unknown scenario kind '{kind}'; known: {SCENARIOS}")
    anchor = get("scenario", "contact_anchor")
    if anchor not in ("middle", "left"):
        raise ConfigError(f"contact_anchor must be 'middle' or 'left', got '{anchor}'")
    shape = get("perturbation", "shape")
    if shape not in SHAPES:
        raise ConfigError(f"unknown perturbation shape '{shape}'; known: {SHAPES}")

    n_points = get("grid", "n_points")
    if n_points < 8:
        raise ConfigError("grid.n_points must be at least 8")
    if get("grid", "half_width") <= 0:
        raise ConfigError("grid.half_width must be positive")
    t_final = get("scenario", "t_final")
    if t_final < 0:
        raise ConfigError("scenario.t_final must be nonnegative")
    cfl = get("solver", "cfl")
    if not (0.0 < cfl <= 1.0):
        raise ConfigError("solver.cfl must lie in (0, 1]")
    profile_n = get("solver", "profile_n")
    if profile_n < 101 or profile_n % 2 == 0:
        raise ConfigError("solver.profile_n must be an odd count >= 101")
    for key in ("width", "wavelength"):
        if get("perturbation", key) <= 0:
            raise ConfigError(f"perturbation.{key} must be positive")

    cfg = RunConfig(
        thermo=thermo, coeff=coeff, ends=ends,
        kind=kind, contact_anchor=anchor, t_final=t_final,
        snapshot_times=list(get("scenario", "snapshot_times")),
        half_width=get("grid", "half_width"), n_points=n_points,
        cfl=cfl, advective_cfl=get("solver", "advective_cfl"),
        cadence=get("solver", "cadence"),
        profile_n=profile_n,
        profile_half_width=(get("solver", "profile_half_width") or None),
        v_floor=get("solver", "v_floor"),
        v_ceil=get("solver", "v_ceil") or float("inf"),
        theta_floor=get("solver", "theta_floor"),
        theta_ceil=get("solver", "theta_ceil") or float("inf"),
        sponge_width=get("solver", "sponge_width"),
        sponge_rate=get("solver", "sponge_rate"),
        shape=shape,
        amp_v=get("perturbation", "amp_v"), amp_u=get("perturbation", "amp_u"),
        amp_theta=get("perturbation", "amp_theta"),
        center=get("perturbation", "center"), width=get("perturbation", "width"),
        wavelength=get("perturbation", "wavelength"),
        out_directory=get("output", "directory"),
    )
    cfg.resolved = _echo(cfg, model_name, coeff_params)
    _validate_scenario(cfg)
    return cfg


def _echo(cfg: RunConfig, model_name: str, coeff_params: Dict[str, float]):
    echo = {}
    for section, keys in _SCHEMA.items():
        for key in keys:
            echo[f"{section}.{key}"] = None
    echo.update({
        "thermo.R": cfg.thermo.R, "thermo.gamma": cfg.thermo.gamma, "thermo.A": cfg.thermo.A,
        "coefficients.model": model_name,
        "end_states.v_minus": cfg.ends.v_minus, "end_states.u_minus": cfg.ends.u_minus,
        "end_states.theta_minus": cfg.ends.theta_minus,
        "end_states.v_plus": cfg.ends.v_plus, "end_states.u_plus": cfg.ends.u_plus,
        "end_states.theta_plus": cfg.ends.theta_plus,
        "scenario.kind": cfg.kind, "scenario.contact_anchor": cfg.contact_anchor,
        "scenario.t_final": cfg.t_final,
        "scenario.snapshot_times": " ".join(repr(t) for t in cfg.snapshot_times),
        "grid.half_width": cfg.half_width, "grid.n_points": cfg.n_points,
        "solver.cfl": cfg.cfl, "solver.advective_cfl": cfg.advective_cfl,
        "solver.cadence": cfg.cadence, "solver.profile_n": cfg.profile_n,
        "solver.profile_half_width": cfg.profile_half_width or 0.0,
        "solver.v_floor": cfg.v_floor, "solver.v_ceil": cfg.v_ceil,
        "solver.theta_floor": cfg.theta_floor, "solver.theta_ceil": cfg.theta_ceil,
        "solver.sponge_width": cfg.sponge_width, "solver.sponge_rate": cfg.sponge_rate,
        "perturbation.shape": cfg.shape,
        "perturbation.amp_v": cfg.amp_v, "perturbation.amp_u": cfg.amp_u,
        "perturbation.amp_theta": cfg.amp_theta,
        "perturbation.center": cfg.center, "perturbation.width": cfg.width,
        "perturbation.wavelength": cfg.wavelength,
        "output.directory": cfg.out_directory,
    })
    for key, value in sorted(coeff_params.items()):
        echo[f"coefficients.{key}"] = value
    return {k: str(v) for k, v in echo.items() if v is not None}


def _validate_scenario(cfg: RunConfig) -> None:
    ends, thermo = cfg.ends, cfg.thermo
    if cfg.kind == "contact":
        if abs(ends.u_minus - ends.u_plus) > 1e-12 * max(1.0, abs(ends.u_minus)):
            raise ConfigError("contact scenario requires u_minus == u_plus")
        p_m = pressure(thermo, ends.v_minus, ends.theta_minus)
        p_p = pressure(thermo, ends.v_plus, ends.theta_plus)
        if abs(p_m - p_p) > 1e-12 * p_p:
            raise ConfigError("contact scenario requires matched end pressures")
    elif cfg.kind in ("composite", "rarefaction"):
        try:
            middle = solve_middle_states(ends, thermo)
        except BracketError as exc:
            raise ConfigError(f"end states are outside the admissible "
                              f"wave-pattern region: {exc}") from exc
        if cfg.kind == "rarefaction":
            jump = abs(middle.theta_m_plus - middle.theta_m_minus)
            if jump > 1e-8 * max(middle.theta_m_minus, middle.theta_m_plus):
                raise ConfigError(
                    "rarefaction scenario requires end states with no contact "
                    f"jump (got middle temperature jump {jump:.3g})")
    elif cfg.kind == "convergence":
        if not (ends.v_minus == ends.v_plus and ends.u_minus == ends.u_plus
                and ends.theta_minus == ends.theta_plus):
            raise ConfigError("convergence scenario requires equal end states "
                              "(it perturbs a constant state)")
    # profile-validation accepts any states solve_middle_states accepts
    if cfg.kind == "profile-validation":
        p_m = pressure(thermo, ends.v_minus, ends.theta_minus)
        p_p = pressure(thermo, ends.v_plus, ends.theta_plus)
        contact_like = (abs(ends.u_minus - ends.u_plus) <= 1e-12
                        and abs(p_m - p_p) <= 1e-12 * p_p)
        if not contact_like:
            try:
                solve_middle_states(ends, thermo)
            except BracketError as exc:
                raise ConfigError(f"end states are outside the admissible "
                                  f"wave-pattern region: {exc}") from exc


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def config_from_overrides(text: str, overrides: Dict[str, str]) -> RunConfig:
    """Re-parse ``text`` with section.key overrides applied (used by sweeps)."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_file(io.StringIO(text))
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    for dotted, value in overrides.items():
        if "." not in dotted:
            raise ConfigError(f"override key '{dotted}' must look like section.key")
        section, key = dotted.split(".", 1)
        if not parser.has_section(section):
            parser.add_section(section)
        parser[section][key] = value
    out = io.StringIO()
    parser.write(out)
    return parse_config(out.getvalue())
