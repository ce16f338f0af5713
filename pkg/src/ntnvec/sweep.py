"""Parameter sweeps over the scenario and their CSV / plot-data output."""
from __future__ import annotations

import csv
import dataclasses
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import NtnVecError, ValidationError
from .optimizer import solve
from .scenario import Kind, Scheme, SweepAxis, SweepSettings

CSV_COLUMNS = (
    "axis", "value", "scheme", "eta_uav", "eta_hap", "objective_s", "t_lp_s",
    "t_prop_s", "t_ul_s", "t_dl_s", "t_wait_s", "t_service_s", "binding", "feasible",
)
_FLOAT_COLUMNS = CSV_COLUMNS[3:12]
REFERENCE_MS = 100.0
ERROR_BINDING = "error"


@dataclass(frozen=True)
class SweepSpec:
    axis: SweepAxis
    values: tuple
    schemes: tuple
    base: object  # scenario.Config
    hybrid_method: str = "equalize"

    def __post_init__(self):
        # reuse the config-level checks (non-empty, increasing, known schemes)
        settings = SweepSettings(axis=self.axis, values=self.values, schemes=self.schemes,
                                 uav_pairing=self.base.sweep.uav_pairing,
                                 hap_pairing=self.base.sweep.hap_pairing)
        object.__setattr__(self, "axis", settings.axis)
        object.__setattr__(self, "values", settings.values)
        object.__setattr__(self, "schemes", settings.schemes)

    @classmethod
    def from_config(cls, config, axis=None, values=None, schemes=None, **kwargs):
        """Sweep described by the config's ``sweep`` section, with overrides."""
        sw = config.sweep
        if axis is not None and SweepAxis(axis) is not sw.axis and values is None:
            from .scenario import DEFAULT_AXIS_VALUES

            values = DEFAULT_AXIS_VALUES[SweepAxis(axis)]
        return cls(
            axis=sw.axis if axis is None else SweepAxis(axis),
            values=sw.values if values is None else tuple(values),
            schemes=sw.schemes if schemes is None else tuple(schemes),
            base=config,
            **kwargs,
        )


@dataclass(frozen=True)
class SweepRecord:
    axis: str
    value: float
    scheme: str
    eta_uav: float
    eta_hap: float
    objective_s: float
    t_lp_s: float
    t_prop_s: float
    t_ul_s: float
    t_dl_s: float
    t_wait_s: float
    t_service_s: float
    binding: str
    feasible: bool

    def rounded(self):
        """Copy with every float cut to the 9 significant digits of the CSV."""
        changes = {name: float(_fmt(getattr(self, name)))
                   for name in ("value",) + _FLOAT_COLUMNS}
        return dataclasses.replace(self, **changes)


def paired_servers(capacity, pairing):
    """Server count that tracks ``capacity`` linearly across the pairing range."""
    (c_lo, c_hi), (s_lo, s_hi) = pairing
    frac = (capacity - c_lo) / (c_hi - c_lo)
    return max(1, int(math.floor(s_lo + frac * (s_hi - s_lo) + 0.5)))


def point_config(base, axis, value):
    """Config for one sweep point; raises ValidationError if it is invalid."""
    axis = SweepAxis(axis)
    if axis is SweepAxis.K:
        return base.replace(scenario=_replace_scenario(base.scenario, k=value))
    if axis is SweepAxis.N_UL:
        return base.replace(scenario=_replace_scenario(base.scenario, n_ul=value))
    platforms = dict(base.platforms)
    if axis is SweepAxis.C_GV:
        platforms[Kind.GV] = _replace_platform(platforms[Kind.GV], capacity=value)
    else:
        kind, pairing = ((Kind.UAV, base.sweep.uav_pairing) if axis is SweepAxis.UAV_CAPACITY
                         else (Kind.HAP, base.sweep.hap_pairing))
        platforms[kind] = _replace_platform(platforms[kind], capacity=value,
                                            servers=paired_servers(value, pairing))
    return base.replace(platforms=platforms)


def _replace_scenario(scenario, **changes):
    try:
        return dataclasses.replace(scenario, **changes)
    except ValidationError as exc:
        raise ValidationError(f"scenario.{exc.field}", exc.message) from None


def _replace_platform(platform, **changes):
    try:
        return dataclasses.replace(platform, **changes)
    except ValidationError as exc:
        raise ValidationError(f"platforms.{platform.kind}.{exc.field}", exc.message) from None


def _record(axis, value, scheme, solution):
    etas = (solution.eta_uav, solution.eta_hap)
    used = [b for kind, b in solution.breakdowns.items() if solution.eta_star.get(kind, 0) > 0]
    if used:
        b = max(used, key=lambda item: item.t_vec)
        parts = (b.t_prop, b.t_ul, b.t_dl, b.t_queue_wait, b.t_service)
    else:
        parts = (0.0,) * 5
    return SweepRecord(axis.value, float(value), scheme.value, *etas,
                       solution.objective_value, solution.t_lp, *parts,
                       str(solution.binding), True)


def _failed(axis, value, scheme):
    nan = math.nan
    return SweepRecord(axis.value, float(value), scheme.value, nan, nan, nan, nan,
                       nan, nan, nan, nan, nan, ERROR_BINDING, False)


def _evaluate_point(args):
    base, axis, value, schemes, method = args
    try:
        config = point_config(base, axis, value)
    except NtnVecError:
        return [_failed(axis, value, s) for s in schemes]
    records = []
    for scheme in schemes:
        try:
            solution = solve(config, scheme, hybrid_method=method)
        except NtnVecError:
            records.append(_failed(axis, value, scheme))
        else:
            records.append(_record(axis, value, scheme, solution))
    return records


def run_sweep(spec, workers=None):
    """Solve every (value, scheme) pair, in value-major, scheme-minor order.

    Per-point failures are recorded with ``feasible=False`` instead of
    raising. ``workers`` > 1 evaluates points in a process pool; the output
    is identical to a sequential run.
    """
    tasks = [(spec.base, spec.axis, v, spec.schemes, spec.hybrid_method) for v in spec.values]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_evaluate_point, tasks))
    else:
        chunks = [_evaluate_point(t) for t in tasks]
    return [rec for chunk in chunks for rec in chunk]


def _fmt(x):
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.9g}"


def format_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([
            r.axis, _fmt(r.value), r.scheme,
            *(_fmt(getattr(r, name)) for name in _FLOAT_COLUMNS),
            r.binding, "true" if r.feasible else "false",
        ])
    return buf.getvalue()


def emit_csv(records, destination):
    """Write records as CSV to a path or an open text stream."""
    _write(format_csv(records), destination)


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError("missing or unexpected CSV header")
    records = []
    for row in rows[1:]:
        data = dict(zip(CSV_COLUMNS, row))
        records.append(SweepRecord(
            axis=data["axis"],
            value=float(data["value"]),
            scheme=data["scheme"],
            **{name: float(data[name]) for name in _FLOAT_COLUMNS},
            binding=data["binding"],
            feasible=data["feasible"] == "true",
        ))
    return records


def read_csv(path):
    return parse_csv(Path(path).read_text(encoding="utf-8"))


def format_plotdata(records):
    """Whitespace-separated blocks, one per scheme: x and objective [ms].

    Infeasible points are left out. A final block holds the 100 ms
    real-time reference line over the same x range.
    """
    lines = []
    schemes = list(dict.fromkeys(r.scheme for r in records))
    axis = records[0].axis if records else ""
    xs = sorted({r.value for r in records})
    for scheme in schemes:
        lines.append(f"# axis={axis} scheme={scheme}")
        lines.append("# x objective_ms")
        for r in records:
            if r.scheme == scheme and r.feasible:
                lines.append(f"{_fmt(r.value)} {_fmt(r.objective_s * 1e3)}")
        lines.append("")
    lines.append(f"# axis={axis} scheme=REFERENCE_{REFERENCE_MS:g}ms")
    lines.append("# x objective_ms")
    for x in (xs[:1] + xs[-1:] if len(xs) > 1 else xs):
        lines.append(f"{_fmt(x)} {_fmt(REFERENCE_MS)}")
    return "\n".join(lines) + "\n"


def emit_plotdata(records, destination):
    _write(format_plotdata(records), destination)


def parse_plotdata(text):
    """Return {block name: [(x, y_ms), ...]} from :func:`format_plotdata` output."""
    blocks = {}
    current = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            current = None
        elif line.startswith("# axis="):
            current = line.split("scheme=", 1)[1]
            blocks[current] = []
        elif line.startswith("#"):
            continue
        else:
            x, y = line.split()
            blocks[current].append((float(x), float(y)))
    return blocks


def _write(text, destination):
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")

