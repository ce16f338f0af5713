"""Configuration types and YAML config ingestion.

Everything downstream consumes the frozen dataclasses defined here. Inside
the model all quantities are SI (bit, FLOP, FLOP/s, Hz, seconds) except
distances, which stay in km for the channel math. The config file uses the
friendlier units of the parameter table (Mb, GFLOP, GFLOP/s, GHz, MHz) and
is converted on load and on dump.
"""
from __future__ import annotations

import dataclasses
import enum
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import AmbiguityError, ParseError, ValidationError

SCHEMA_VERSION = 1

# Physical constants (not configurable).
C0_KM_S = 299792.458
BOLTZMANN_DB = -228.6  # dBW/(K*Hz)

MEGABIT = 1e6
GIGAFLOP = 1e9
MEGAHERTZ = 1e6

# Default scenario values.
DEFAULT_FC_GHZ = 38.0
DEFAULT_BANDWIDTH_HZ = 400e6
DEFAULT_PL_OVERRIDE = {"UAV": 101.98, "HAP": 172.76}

# Excess HAP loss (gaseous absorption) chosen so that FSPL at the default
# mean slant range (A = 1 km^2, h0 = 20 km) plus this term gives 172.76 dB.
_DEFAULT_HAP_RANGE_KM = math.sqrt(1.0 / (2 * math.pi) + 20.0**2)
DEFAULT_HAP_PL_G = 172.76 - (
    92.45 + 20 * math.log10(DEFAULT_FC_GHZ) + 20 * math.log10(_DEFAULT_HAP_RANGE_KM)
)


class ConfigWarning(UserWarning):
    """Configuration is valid but contradicts a modelling assumption."""


class Kind(str, enum.Enum):
    GV = "GV"
    UAV = "UAV"
    HAP = "HAP"

    def __str__(self):
        return self.value


class Direction(str, enum.Enum):
    UL = "UL"
    DL = "DL"

    def __str__(self):
        return self.value


class PathLossMode(str, enum.Enum):
    COMPUTED = "computed"
    OVERRIDE = "override"

    def __str__(self):
        return self.value


def _require(cond, field_name, message):
    if not cond:
        raise ValidationError(field_name, message)


def _finite(value, field_name):
    _require(
        isinstance(value, (int, float)) and not isinstance(value, bool),
        field_name,
        f"expected a number, got {value!r}",
    )
    _require(math.isfinite(value), field_name, "must be finite")


@dataclass(frozen=True)
class Scenario:
    """Workload and geometry shared by every platform.

    Attributes:
        k: vehicle density [GV/km^2]
        A: area of interest [km^2]
        r: perception rate [frames/s]
        n_ul: perception size [bit]
        n_dl: processed output size [bit]
        C: computational load per perception [FLOP]
        xi: relative stopping tolerance of the crossing searches
    """

    k: float = 200.0
    A: float = 1.0
    r: float = 10.0
    n_ul: float = 1.0 * MEGABIT
    n_dl: float = 0.1 * MEGABIT
    C: float = 100 * GIGAFLOP
    xi: float = 1e-3

    def __post_init__(self):
        for name in ("k", "A", "r", "n_ul", "n_dl", "C", "xi"):
            _finite(getattr(self, name), name)
        _require(self.k > 0, "k", "vehicle density must be > 0")
        _require(self.A > 0, "A", "area must be > 0")
        _require(self.r > 0, "r", "perception rate must be > 0")
        _require(self.n_ul > 0, "n_ul", "perception size must be > 0")
        _require(self.n_dl >= 0, "n_dl", "output size must be >= 0")
        _require(self.n_dl <= self.n_ul, "n_dl", "output size must not exceed n_ul")
        _require(self.C > 0, "C", "computational load must be > 0")
        _require(0 < self.xi < 1, "xi", "tolerance must lie in (0, 1)")

    @property
    def vehicles(self):
        """Expected number of vehicles in the area, k*A."""
        return self.k * self.A

    @property
    def arrival_rate(self):
        """Task arrival rate at an offloading platform, r*k*A [tasks/s]."""
        return self.r * self.k * self.A


@dataclass(frozen=True)
class PlatformProfile:
    kind: Kind
    capacity: float  # FLOP/s
    servers: int
    altitude: float  # km

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        _finite(self.capacity, "capacity")
        _finite(self.altitude, "altitude")
        _require(self.capacity > 0, "capacity", "must be > 0")
        _require(
            isinstance(self.servers, int) and not isinstance(self.servers, bool),
            "servers",
            f"must be an integer, got {self.servers!r}",
        )
        _require(self.servers >= 1, "servers", "must be >= 1")
        _require(self.altitude >= 0, "altitude", "must be >= 0")


DEFAULT_PLATFORMS = {
    Kind.GV: PlatformProfile(Kind.GV, 500 * GIGAFLOP, 1, 0.0),
    Kind.UAV: PlatformProfile(Kind.UAV, 1500 * GIGAFLOP, 4, 0.1),
    Kind.HAP: PlatformProfile(Kind.HAP, 3500 * GIGAFLOP, 12, 20.0),
}

_EIRP_PARTS = ("p_t", "l_c", "g_t")
_GT_PARTS = ("g_r", "n_f", "t0", "t_a")


@dataclass(frozen=True)
class RadioEndpoint:
    """Transmit/receive characteristics of one node.

    EIRP [dBW] and G/T [dB/K] are either given directly or derived from
    their constituents (p_t, l_c, g_t) and (g_r, n_f, t0, t_a). Giving a
    quantity both ways is an ambiguity error.
    """

    eirp: float | None = None
    g_over_t: float | None = None
    p_t: float | None = None
    g_t: float | None = None
    l_c: float | None = None
    g_r: float | None = None
    n_f: float | None = None
    t0: float | None = None
    t_a: float | None = None

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if value is not None:
                _finite(value, f.name)
        self._check_group("eirp", _EIRP_PARTS)
        self._check_group("g_over_t", _GT_PARTS)
        if self.t0 is not None:
            _require(self.t0 > 0, "t0", "must be > 0 K")
        if self.t_a is not None:
            _require(self.t_a > 0, "t_a", "must be > 0 K")

    def _check_group(self, direct, parts):
        given = [p for p in parts if getattr(self, p) is not None]
        if getattr(self, direct) is not None and given:
            raise AmbiguityError(
                direct, f"given directly and via constituents {', '.join(given)}"
            )
        if given and len(given) != len(parts):
            missing = [p for p in parts if p not in given]
            raise ValidationError(direct, f"missing constituents {', '.join(missing)}")

    @property
    def has_eirp(self):
        return self.eirp is not None or self.p_t is not None

    @property
    def has_g_over_t(self):
        return self.g_over_t is not None or self.g_r is not None

    def resolved_eirp(self):
        from .channel import eirp

        if self.eirp is not None:
            return float(self.eirp)
        if self.p_t is None:
            raise ValidationError("eirp", "not configured")
        return eirp(self.p_t, self.l_c, self.g_t)

    def resolved_g_over_t(self):
        from .channel import g_over_t

        if self.g_over_t is not None:
            return float(self.g_over_t)
        if self.g_r is None:
            raise ValidationError("g_over_t", "not configured")
        return g_over_t(self.g_r, self.n_f, self.t0, self.t_a)

    def to_dict(self):
        return {f.name: getattr(self, f.name) for f in dataclasses.fields(self)
                if getattr(self, f.name) is not None}


DEFAULT_RADIOS = {
    Kind.GV: RadioEndpoint(eirp=29.0, g_over_t=12.15),
    Kind.UAV: RadioEndpoint(eirp=-10.0, g_over_t=-11.6),
    Kind.HAP: RadioEndpoint(eirp=27.9, g_over_t=27.7),
}


@dataclass(frozen=True)
class LinkBudget:
    """Radio parameters for one direction of a GV <-> platform link."""

    fc: float  # GHz
    bandwidth: float  # Hz
    tx: RadioEndpoint
    rx: RadioEndpoint
    path_loss_mode: PathLossMode = PathLossMode.OVERRIDE
    pl_override: float | None = None
    pl_g: float = 0.0
    pl_s: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "path_loss_mode", PathLossMode(self.path_loss_mode))
        _finite(self.fc, "fc")
        _finite(self.bandwidth, "bandwidth")
        _finite(self.pl_g, "pl_g")
        _finite(self.pl_s, "pl_s")
        _require(self.fc > 0, "fc", "carrier frequency must be > 0")
        _require(self.bandwidth > 0, "bandwidth", "must be > 0")
        if self.path_loss_mode is PathLossMode.OVERRIDE:
            _require(self.pl_override is not None, "pl_override",
                     "required when mode is 'override'")
            _finite(self.pl_override, "pl_override")
        else:
            _require(self.pl_override is None, "pl_override",
                     "only allowed when mode is 'override'")
        _require(self.tx.has_eirp, "tx.eirp", "transmitter needs an EIRP")
        _require(self.rx.has_g_over_t, "rx.g_over_t", "receiver needs a G/T")


def link_key(kind, direction):
    return f"{Kind(kind).value}_{Direction(direction).value}"


class SweepAxis(str, enum.Enum):
    K = "k"
    N_UL = "n_ul"
    C_GV = "c_gv"
    UAV_CAPACITY = "uav_capacity_and_servers"
    HAP_CAPACITY = "hap_capacity_and_servers"

    def __str__(self):
        return self.value


class Scheme(str, enum.Enum):
    LOCAL = "LOCAL"
    SO_UAV = "SO_UAV"
    SO_HAP = "SO_HAP"
    HO = "HO"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text):
        """Accept both ``SO_HAP`` and the CLI spelling ``so-hap``."""
        return cls(str(text).strip().upper().replace("-", "_"))


# File units of each sweep axis (values are multiplied by this on load).
AXIS_UNITS = {
    SweepAxis.K: 1.0,
    SweepAxis.N_UL: MEGABIT,
    SweepAxis.C_GV: GIGAFLOP,
    SweepAxis.UAV_CAPACITY: GIGAFLOP,
    SweepAxis.HAP_CAPACITY: GIGAFLOP,
}

DEFAULT_AXIS_VALUES = {
    SweepAxis.K: (25.0, 50.0, 100.0, 200.0, 350.0, 500.0),
    SweepAxis.N_UL: tuple(x * MEGABIT for x in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0)),
    SweepAxis.C_GV: tuple(x * GIGAFLOP for x in (200.0, 500.0, 1000.0)),
    SweepAxis.UAV_CAPACITY: tuple(x * GIGAFLOP for x in (1000.0, 1500.0, 2000.0, 2500.0, 3000.0, 3500.0, 4000.0)),
    SweepAxis.HAP_CAPACITY: tuple(x * GIGAFLOP for x in (3000.0, 4000.0, 5000.0, 6000.0, 7000.0, 8000.0, 9000.0, 10000.0)),
}


@dataclass(frozen=True)
class SweepSettings:
    """Sweep defaults stored in the config file.

    ``uav_pairing``/``hap_pairing`` are ((cap_lo, cap_hi), (servers_lo,
    servers_hi)); servers follow capacity linearly along paired axes.
    """

    axis: SweepAxis = SweepAxis.K
    values: tuple = DEFAULT_AXIS_VALUES[SweepAxis.K]
    schemes: tuple = (Scheme.LOCAL, Scheme.SO_UAV, Scheme.SO_HAP, Scheme.HO)
    uav_pairing: tuple = ((1000 * GIGAFLOP, 4000 * GIGAFLOP), (2, 8))
    hap_pairing: tuple = ((3000 * GIGAFLOP, 10000 * GIGAFLOP), (6, 25))

    def __post_init__(self):
        object.__setattr__(self, "axis", SweepAxis(self.axis))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "schemes", tuple(Scheme.parse(s) for s in self.schemes))
        _require(len(self.values) > 0, "values", "must not be empty")
        _require(
            all(b > a for a, b in zip(self.values, self.values[1:])),
            "values", "must be strictly increasing",
        )
        _require(len(self.schemes) > 0, "schemes", "must not be empty")
        for name in ("uav_pairing", "hap_pairing"):
            (c_lo, c_hi), (s_lo, s_hi) = getattr(self, name)
            _require(0 < c_lo < c_hi, name, "capacity range must be increasing and > 0")
            _require(1 <= s_lo <= s_hi, name, "server range must be >= 1 and ordered")


@dataclass(frozen=True)
class Config:
    """A fully validated configuration."""

    scenario: Scenario = field(default_factory=Scenario)
    platforms: dict = field(default_factory=lambda: dict(DEFAULT_PLATFORMS))
    links: dict = field(default_factory=lambda: build_links())
    sweep: SweepSettings = field(default_factory=SweepSettings)

    def platform(self, kind):
        return self.platforms[Kind(kind)]

    def link(self, kind, direction):
        return self.links[link_key(kind, direction)]

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


def build_links(radios=None, fc=DEFAULT_FC_GHZ, bandwidth=DEFAULT_BANDWIDTH_HZ,
                path_loss=None):
    """Assemble per-direction link budgets for UAV and HAP.

    UL uses the GV as transmitter and the platform as receiver; DL swaps
    the roles. ``path_loss`` maps platform kind to a dict with keys
    ``mode``, ``pl_override``, ``pl_g``, ``pl_s``.
    """
    radios = {Kind(k): v for k, v in (radios or DEFAULT_RADIOS).items()}
    path_loss = {Kind(k): v for k, v in (path_loss or default_path_loss()).items()}
    links = {}
    for kind in (Kind.UAV, Kind.HAP):
        pl = path_loss[kind]
        common = dict(
            fc=fc,
            bandwidth=bandwidth,
            path_loss_mode=PathLossMode(pl.get("mode", PathLossMode.OVERRIDE)),
            pl_override=pl.get("pl_override"),
            pl_g=pl.get("pl_g", 0.0),
            pl_s=pl.get("pl_s", 0.0),
        )
        links[link_key(kind, Direction.UL)] = LinkBudget(
            tx=radios[Kind.GV], rx=radios[kind], **common)
        links[link_key(kind, Direction.DL)] = LinkBudget(
            tx=radios[kind], rx=radios[Kind.GV], **common)
    return links


def default_path_loss():
    return {
        Kind.UAV: {"mode": "override", "pl_override": DEFAULT_PL_OVERRIDE["UAV"],
                   "pl_g": 0.0, "pl_s": 0.0},
        Kind.HAP: {"mode": "override", "pl_override": DEFAULT_PL_OVERRIDE["HAP"],
                   "pl_g": DEFAULT_HAP_PL_G, "pl_s": 0.0},
    }


def check_capacity_ordering(platforms):
    """Warn if C_HAP >= C_UAV >= C_GV does not hold."""
    if not all(k in platforms for k in Kind):
        return
    gv, uav, hap = (platforms[k].capacity for k in (Kind.GV, Kind.UAV, Kind.HAP))
    if hap < uav or uav < gv:
        warnings.warn(
            f"platform capacities break the ordering C_HAP >= C_UAV >= C_GV "
            f"(GV={gv:.4g}, UAV={uav:.4g}, HAP={hap:.4g} FLOP/s)",
            ConfigWarning,
            stacklevel=3,
        )


# --------------------------------------------------------------------------
# YAML schema (version 1)
# --------------------------------------------------------------------------

_SCENARIO_UNITS = {"k": 1.0, "A": 1.0, "r": 1.0, "n_ul": MEGABIT, "n_dl": MEGABIT,
                   "C": GIGAFLOP}
_TOP_KEYS = {"version", "scenario", "solver", "platforms", "links", "sweep"}


def _section(raw, key, path):
    value = raw.get(key, {})
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ParseError(f"{path}: expected a mapping, got {type(value).__name__}")
    return value


def _reject_unknown(section, allowed, path):
    unknown = set(section) - set(allowed)
    if unknown:
        raise ValidationError(f"{path}.{sorted(unknown)[0]}", "unknown key")


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(path, f"expected a number, got {value!r}")
    return float(value)


def _prefixed(path, build):
    try:
        return build()
    except ValidationError as exc:
        cls = type(exc)
        raise cls(f"{path}.{exc.field}", exc.message) from None


def config_from_dict(raw):
    """Build a validated :class:`Config` from the parsed YAML mapping."""
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ParseError("top level of the config must be a mapping")
    _reject_unknown(raw, _TOP_KEYS, "config")
    version = raw.get("version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError("version", f"unsupported schema version {version!r}")

    sc = _section(raw, "scenario", "scenario")
    _reject_unknown(sc, _SCENARIO_UNITS, "scenario")
    solver = _section(raw, "solver", "solver")
    _reject_unknown(solver, {"xi"}, "solver")
    values = {}
    for key, unit in _SCENARIO_UNITS.items():
        if key in sc:
            values[key] = _number(sc[key], f"scenario.{key}") * unit
    if "xi" in solver:
        values["xi"] = _number(solver["xi"], "solver.xi")
    try:
        scenario = Scenario(**values)
    except ValidationError as exc:
        section = "solver" if exc.field == "xi" else "scenario"
        raise ValidationError(f"{section}.{exc.field}", exc.message) from None

    pl_raw = _section(raw, "platforms", "platforms")
    _reject_unknown(pl_raw, [k.value for k in Kind], "platforms")
    platforms = {}
    for kind in Kind:
        entry = pl_raw.get(kind.value) or {}
        path = f"platforms.{kind.value}"
        if not isinstance(entry, dict):
            raise ParseError(f"{path}: expected a mapping")
        _reject_unknown(entry, {"capacity", "servers", "altitude"}, path)
        base = DEFAULT_PLATFORMS[kind]
        capacity = (_number(entry["capacity"], f"{path}.capacity") * GIGAFLOP
                    if "capacity" in entry else base.capacity)
        servers = entry.get("servers", base.servers)
        altitude = (_number(entry["altitude"], f"{path}.altitude")
                    if "altitude" in entry else base.altitude)
        platforms[kind] = _prefixed(
            path, lambda: PlatformProfile(kind, capacity, servers, altitude))
    check_capacity_ordering(platforms)

    ln = _section(raw, "links", "links")
    _reject_unknown(ln, {"fc", "bandwidth", "radios", "path_loss"}, "links")
    fc = _number(ln["fc"], "links.fc") if "fc" in ln else DEFAULT_FC_GHZ
    bandwidth = (_number(ln["bandwidth"], "links.bandwidth") * MEGAHERTZ
                 if "bandwidth" in ln else DEFAULT_BANDWIDTH_HZ)
    radios_raw = _section(ln, "radios", "links.radios")
    _reject_unknown(radios_raw, [k.value for k in Kind], "links.radios")
    radios = {}
    for kind in Kind:
        path = f"links.radios.{kind.value}"
        entry = radios_raw.get(kind.value)
        if entry is None:
            radios[kind] = DEFAULT_RADIOS[kind]
            continue
        if not isinstance(entry, dict):
            raise ParseError(f"{path}: expected a mapping")
        names = [f.name for f in dataclasses.fields(RadioEndpoint)]
        _reject_unknown(entry, names, path)
        kwargs = {k: _number(v, f"{path}.{k}") for k, v in entry.items()}
        radio = _prefixed(path, lambda: RadioEndpoint(**kwargs))
        # every node transmits on one direction and receives on the other
        _require(radio.has_eirp, f"{path}.eirp", "EIRP or its constituents required")
        _require(radio.has_g_over_t, f"{path}.g_over_t", "G/T or its constituents required")
        radios[kind] = radio
    pl_section = _section(ln, "path_loss", "links.path_loss")
    _reject_unknown(pl_section, ("UAV", "HAP"), "links.path_loss")
    path_loss = default_path_loss()
    for kind in (Kind.UAV, Kind.HAP):
        entry = pl_section.get(kind.value)
        if entry is None:
            continue
        path = f"links.path_loss.{kind.value}"
        if not isinstance(entry, dict):
            raise ParseError(f"{path}: expected a mapping")
        _reject_unknown(entry, {"mode", "pl_override", "pl_g", "pl_s"}, path)
        merged = dict(path_loss[kind])
        if "mode" in entry:
            try:
                merged["mode"] = PathLossMode(entry["mode"])
            except ValueError:
                raise ValidationError(f"{path}.mode", f"unknown mode {entry['mode']!r}") from None
            if merged["mode"] is PathLossMode.COMPUTED and "pl_override" not in entry:
                merged["pl_override"] = None
        for key in ("pl_override", "pl_g", "pl_s"):
            if key in entry:
                merged[key] = None if entry[key] is None else _number(entry[key], f"{path}.{key}")
        path_loss[kind] = merged
    try:
        links = build_links(radios, fc, bandwidth, path_loss)
    except ValidationError as exc:
        raise type(exc)(f"links.{exc.field}", exc.message) from None

    sweep = _sweep_from_dict(_section(raw, "sweep", "sweep"))
    return Config(scenario=scenario, platforms=platforms, links=links, sweep=sweep)


def _pairing_from_dict(entry, default, path):
    if entry is None:
        return default
    if not isinstance(entry, dict):
        raise ParseError(f"{path}: expected a mapping")
    _reject_unknown(entry, {"capacity", "servers"}, path)
    cap = entry.get("capacity", [default[0][0] / GIGAFLOP, default[0][1] / GIGAFLOP])
    srv = entry.get("servers", list(default[1]))
    if not (isinstance(cap, list) and len(cap) == 2):
        raise ValidationError(f"{path}.capacity", "expected [low, high]")
    if not (isinstance(srv, list) and len(srv) == 2 and all(isinstance(s, int) for s in srv)):
        raise ValidationError(f"{path}.servers", "expected [low, high] integers")
    return ((_number(cap[0], f"{path}.capacity") * GIGAFLOP,
             _number(cap[1], f"{path}.capacity") * GIGAFLOP), (srv[0], srv[1]))


def _sweep_from_dict(sw):
    _reject_unknown(sw, {"axis", "values", "schemes", "uav_pairing", "hap_pairing"}, "sweep")
    try:
        axis = SweepAxis(sw.get("axis", SweepAxis.K.value))
    except ValueError:
        raise ValidationError("sweep.axis", f"unknown axis {sw.get('axis')!r}") from None
    if "values" in sw:
        raw_values = sw["values"]
        if not isinstance(raw_values, list):
            raise ValidationError("sweep.values", "expected a list")
        values = tuple(_number(v, "sweep.values") * AXIS_UNITS[axis] for v in raw_values)
    else:
        values = DEFAULT_AXIS_VALUES[axis]
    kwargs = {"axis": axis, "values": values}
    if "schemes" in sw:
        try:
            kwargs["schemes"] = tuple(Scheme.parse(s) for s in sw["schemes"])
        except (ValueError, TypeError):
            raise ValidationError("sweep.schemes", f"unknown scheme in {sw['schemes']!r}") from None
    defaults = SweepSettings()
    kwargs["uav_pairing"] = _pairing_from_dict(sw.get("uav_pairing"), defaults.uav_pairing,
                                               "sweep.uav_pairing")
    kwargs["hap_pairing"] = _pairing_from_dict(sw.get("hap_pairing"), defaults.hap_pairing,
                                               "sweep.hap_pairing")
    return _prefixed("sweep", lambda: SweepSettings(**kwargs))


def config_to_dict(config):
    """Inverse of :func:`config_from_dict`, in file units."""
    sc = config.scenario
    uav_ul = config.link(Kind.UAV, Direction.UL)
    radios = {Kind.GV.value: uav_ul.tx.to_dict()}
    path_loss = {}
    for kind in (Kind.UAV, Kind.HAP):
        ul = config.link(kind, Direction.UL)
        radios[kind.value] = ul.rx.to_dict()
        path_loss[kind.value] = {
            "mode": ul.path_loss_mode.value,
            "pl_override": ul.pl_override,
            "pl_g": ul.pl_g,
            "pl_s": ul.pl_s,
        }
    sw = config.sweep
    unit = AXIS_UNITS[sw.axis]
    return {
        "version": SCHEMA_VERSION,
        "scenario": {key: getattr(sc, key) / u for key, u in _SCENARIO_UNITS.items()},
        "solver": {"xi": sc.xi},
        "platforms": {
            p.kind.value: {"capacity": p.capacity / GIGAFLOP, "servers": p.servers,
                           "altitude": p.altitude}
            for p in config.platforms.values()
        },
        "links": {
            "fc": uav_ul.fc,
            "bandwidth": uav_ul.bandwidth / MEGAHERTZ,
            "radios": radios,
            "path_loss": path_loss,
        },
        "sweep": {
            "axis": sw.axis.value,
            "values": [v / unit for v in sw.values],
            "schemes": [s.value for s in sw.schemes],
            "uav_pairing": _pairing_to_dict(sw.uav_pairing),
            "hap_pairing": _pairing_to_dict(sw.hap_pairing),
        },
    }


def _pairing_to_dict(pairing):
    (c_lo, c_hi), (s_lo, s_hi) = pairing
    return {"capacity": [c_lo / GIGAFLOP, c_hi / GIGAFLOP], "servers": [s_lo, s_hi]}


def parse_config(text):
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed YAML: {exc}") from None
    return config_from_dict(raw)


def dump_config(config):
    return yaml.safe_dump(config_to_dict(config), sort_keys=False)


def load_config(path):
    """Read and validate a config file; ``"default"`` selects the bundled one."""
    if str(path) == "default":
        path = default_config_path()
    text = Path(path).read_text(encoding="utf-8")
    return parse_config(text)


def load_scenario(path):
    """Load a config file and return ``(scenario, platforms, links)``."""
    config = load_config(path)
    return config.scenario, config.platforms, config.links


def save_config(config, path):
    Path(path).write_text(dump_config(config), encoding="utf-8")


def default_config_path():
    return Path(__file__).with_name("data") / "default.yaml"


def apply_overrides(config, assignments):
    """Apply ``section.key=value`` assignments (file units) to a config.

    Values are parsed as YAML scalars, so ``scenario.k=25`` and
    ``sweep.values=[1, 2]`` both work.
    """
    raw = config_to_dict(config)
    touched = set()
    for item in assignments:
        if "=" not in item:
            raise ParseError(f"override {item!r} is not of the form key=value")
        dotted, text = item.split("=", 1)
        keys = dotted.strip().split(".")
        try:
            value = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ParseError(f"override {item!r}: {exc}") from None
        node = raw
        for key in keys[:-1]:
            node = node.setdefault(key, {})
            if not isinstance(node, dict):
                raise ValidationError(dotted, "does not name a config section")
        node[keys[-1]] = value
        touched.add(dotted.strip())
    if "sweep.axis" in touched and "sweep.values" not in touched:
        # stored values are in the old axis' units
        raw.get("sweep", {}).pop("values", None)
    return config_from_dict(raw)
