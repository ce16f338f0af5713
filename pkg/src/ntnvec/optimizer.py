"""Offloading-factor optimizers.

The standalone problem minimizes max(t_lp, t_vec) over one platform's
share. t_lp falls linearly with eta while t_vec grows (the queue wait
diverges at the stability bound), so the optimum is either the crossing
of the two curves, fully local processing, or the feasible upper end.

Two hybrid (UAV + HAP) solvers are provided. ``"two_step"`` follows the
sequential heuristic: fix the standalone UAV optimum, then load the HAP
until its delay matches the UAV's. ``"equalize"`` (the default) bisects
on a common delay target T and gives each platform the largest share it
can finish within T; the smallest T for which the remaining local work
also fits is the min-max optimum, so it never does worse than either
standalone scheme.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

from .channel import platform_capacities
from .errors import DomainError, SolverError
from .latency import local_processing_time, objective_hybrid, vec_delay
from .scenario import Kind, Scheme

log = logging.getLogger(__name__)

GUARD = 1e-9  # relative backoff from the stability bound
MAX_ITER = 200
MIN_BRACKET = 1e-12


class Binding(str, enum.Enum):
    CROSSING = "crossing"
    LOCAL_ONLY = "local_only"
    STABILITY_BOUND = "stability_bound"
    UNIT_BOUND = "unit_bound"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class OffloadSolution:
    scheme: Scheme
    eta_star: dict  # Kind -> offloaded share
    objective_value: float
    t_lp: float
    breakdowns: dict = field(default_factory=dict)  # Kind -> LatencyBreakdown
    binding: Binding = Binding.CROSSING
    iterations: int = 0

    @property
    def eta_uav(self):
        return self.eta_star.get(Kind.UAV, 0.0)

    @property
    def eta_hap(self):
        return self.eta_star.get(Kind.HAP, 0.0)

    @property
    def eta_total(self):
        return sum(self.eta_star.values())


def eta_max(servers, capacity, c_load, k, area, r):
    """Largest share keeping the platform queue stable (not clamped to 1)."""
    return servers * capacity / (c_load * k * area * r)


class _Platform:
    """Evaluates one platform's delays and reports every probe point."""

    def __init__(self, scenario, platform, ul, dl, probe=None):
        self.scenario = scenario
        self.platform = platform
        self.ul, self.dl = ul, dl
        self.probe = probe
        self.evaluations = 0
        bound = eta_max(platform.servers, platform.capacity, scenario.C,
                        scenario.k, scenario.A, scenario.r)
        self.bound = bound
        if bound > 1:
            self.hi, self.hi_binding = 1.0, Binding.UNIT_BOUND
        else:
            self.hi, self.hi_binding = bound * (1 - GUARD), Binding.STABILITY_BOUND
        b0 = vec_delay(0.0, scenario, platform, ul, dl)
        self.overhead = b0.t_vec

    @property
    def kind(self):
        return self.platform.kind

    def t_vec(self, eta):
        return self.breakdown(eta).t_vec

    def breakdown(self, eta, c_gv=None, local_eta=None):
        if self.probe is not None:
            offered = self.scenario.arrival_rate * (eta * self.scenario.C / self.platform.capacity)
            self.probe(self.kind, eta, offered, self.platform.servers)
        self.evaluations += 1
        return vec_delay(eta, self.scenario, self.platform, self.ul, self.dl,
                         c_gv=c_gv, local_eta=local_eta)

    def max_share_within(self, target, limit=None):
        """Largest eta in [0, limit] with t_vec(eta) <= target (0 if none)."""
        limit = self.hi if limit is None else min(limit, self.hi)
        if limit <= 0 or self.overhead >= target:
            return 0.0
        if self.t_vec(limit) <= target:
            return limit
        lo, hi = 0.0, limit
        for _ in range(MAX_ITER):
            if hi - lo < MIN_BRACKET:
                return lo
            mid = 0.5 * (lo + hi)
            if self.t_vec(mid) <= target:
                lo = mid
            else:
                hi = mid
        raise SolverError(f"{self.kind}: share search did not converge")


def _local_solution(scheme, scenario, gv, iterations=0):
    return OffloadSolution(
        scheme=scheme,
        eta_star={},
        objective_value=scenario.C / gv.capacity,
        t_lp=scenario.C / gv.capacity,
        binding=Binding.LOCAL_ONLY,
        iterations=iterations,
    )


def solve_standalone(scenario, platform, gv, ul, dl, probe=None):
    """Optimal share of the load to offload to a single UAV or HAP.

    Args:
        ul, dl: :class:`~ntnvec.channel.LinkCapacity` of the platform links.
        probe: optional ``probe(kind, eta, offered_traffic, servers)``
            called before every delay evaluation.
    """
    if platform.kind is Kind.GV:
        raise DomainError("standalone offloading needs a UAV or HAP platform")
    scheme = Scheme.SO_UAV if platform.kind is Kind.UAV else Scheme.SO_HAP
    node = _Platform(scenario, platform, ul, dl, probe)
    c_gv = gv.capacity

    def evaluate(eta):
        b = node.breakdown(eta, c_gv=c_gv)
        log.debug("%s eta=%.12f t_lp=%.9g t_vec=%.9g", node.kind, eta, b.t_lp, b.t_vec)
        return b

    def finish(b, binding, iterations):
        return OffloadSolution(scheme, {node.kind: b.eta}, b.objective, b.t_lp,
                               {node.kind: b}, binding, iterations)

    t_lp0 = local_processing_time(0.0, scenario.C, c_gv)
    if node.overhead >= t_lp0:
        log.debug("%s: fixed overhead %.6g s >= local time %.6g s", node.kind,
                  node.overhead, t_lp0)
        return _local_solution(scheme, scenario, gv)

    top = evaluate(node.hi)
    if top.t_vec < top.t_lp:
        return finish(top, node.hi_binding, 1)

    xi = scenario.xi
    lo, hi = 0.0, node.hi
    best = top
    for it in range(1, MAX_ITER + 1):
        mid = 0.5 * (lo + hi)
        b = evaluate(mid)
        if abs(b.t_lp - b.t_vec) < xi * b.t_vec:
            return finish(b, Binding.CROSSING, it + 1)
        if b.t_lp > b.t_vec:
            lo = mid
        else:
            hi = mid
        if b.objective < best.objective:
            best = b
        if hi - lo < MIN_BRACKET:
            # crossing pinned against the guarded bound
            return finish(best, Binding.STABILITY_BOUND, it + 1)
    raise SolverError(
        f"{node.kind}: bisection missed both stopping rules after {MAX_ITER} iterations "
        f"(bracket [{lo:.12g}, {hi:.12g}])"
    )


def solve_hybrid(scenario, uav, hap, gv, uav_links, hap_links, probe=None,
                 method="equalize"):
    """Split the load between a UAV, a HAP and local processing.

    ``uav_links``/``hap_links`` are (ul, dl) capacity pairs. ``method`` is
    ``"equalize"`` or ``"two_step"`` (see the module docstring).
    """
    if method == "equalize":
        return _hybrid_equalize(scenario, uav, hap, gv, uav_links, hap_links, probe)
    if method == "two_step":
        return _hybrid_two_step(scenario, uav, hap, gv, uav_links, hap_links, probe)
    raise ValueError(f"unknown hybrid method {method!r}")


def _hybrid_solution(scenario, nodes, gv, eta_uav, eta_hap, binding, iterations):
    total = min(eta_uav + eta_hap, 1.0)
    etas = {Kind.UAV: eta_uav, Kind.HAP: eta_hap}
    breakdowns = {
        kind: nodes[kind].breakdown(etas[kind], c_gv=gv.capacity, local_eta=total)
        for kind in (Kind.UAV, Kind.HAP)
    }
    value = objective_hybrid(eta_uav, eta_hap, scenario, nodes[Kind.UAV].platform,
                             nodes[Kind.HAP].platform, gv,
                             (nodes[Kind.UAV].ul, nodes[Kind.UAV].dl),
                             (nodes[Kind.HAP].ul, nodes[Kind.HAP].dl))
    t_lp = local_processing_time(total, scenario.C, gv.capacity)
    if eta_uav == 0 and eta_hap == 0:
        binding = Binding.LOCAL_ONLY
    return OffloadSolution(Scheme.HO, etas, value, t_lp, breakdowns, binding, iterations)


def _hybrid_two_step(scenario, uav, hap, gv, uav_links, hap_links, probe):
    step1 = solve_standalone(scenario, uav, gv, *uav_links, probe=probe)
    eta_uav = step1.eta_uav
    target = step1.objective_value
    nodes = {Kind.UAV: _Platform(scenario, uav, *uav_links, probe),
             Kind.HAP: _Platform(scenario, hap, *hap_links, probe)}
    node = nodes[Kind.HAP]
    iterations = step1.iterations
    if node.overhead >= target:
        return _hybrid_solution(scenario, nodes, gv, eta_uav, 0.0, step1.binding, iterations)

    limit = min(1.0 - eta_uav, node.hi)
    binding = Binding.UNIT_BOUND if limit < node.hi else node.hi_binding
    if limit <= 0 or node.t_vec(limit) <= target:
        return _hybrid_solution(scenario, nodes, gv, eta_uav, max(limit, 0.0), binding,
                                iterations + 1)
    xi = scenario.xi
    lo, hi = 0.0, limit
    for it in range(1, MAX_ITER + 1):
        mid = 0.5 * (lo + hi)
        t = node.t_vec(mid)
        log.debug("HAP eta=%.12f t_vec=%.9g target=%.9g", mid, t, target)
        if abs(t - target) < xi * t or hi - lo < MIN_BRACKET:
            return _hybrid_solution(scenario, nodes, gv, eta_uav, mid, Binding.CROSSING,
                                    iterations + it)
        if t < target:
            lo = mid
        else:
            hi = mid
    raise SolverError(f"HAP step did not converge after {MAX_ITER} iterations")


def _hybrid_equalize(scenario, uav, hap, gv, uav_links, hap_links, probe):
    nodes = {Kind.UAV: _Platform(scenario, uav, *uav_links, probe),
             Kind.HAP: _Platform(scenario, hap, *hap_links, probe)}
    so_uav = solve_standalone(scenario, uav, gv, *uav_links, probe=probe)
    so_hap = solve_standalone(scenario, hap, gv, *hap_links, probe=probe)
    t_local = scenario.C / gv.capacity

    def shares(target):
        eu = nodes[Kind.UAV].max_share_within(target)
        eh = nodes[Kind.HAP].max_share_within(target, limit=1.0 - eu)
        return eu, eh

    def feasible(target):
        eu, eh = shares(target)
        return local_processing_time(min(eu + eh, 1.0), scenario.C, gv.capacity) <= target

    upper = min(so_uav.objective_value, so_hap.objective_value, t_local)
    lower = 0.0
    iterations = 0
    while upper - lower > scenario.xi * upper:
        iterations += 1
        if iterations > MAX_ITER:
            raise SolverError(f"hybrid target search did not converge after {MAX_ITER} steps")
        mid = 0.5 * (lower + upper)
        ok = feasible(mid)
        log.debug("HO target=%.9g feasible=%s", mid, ok)
        if ok:
            upper = mid
        else:
            lower = mid

    eu, eh = shares(upper)
    if eu + eh >= 1.0:
        binding = Binding.UNIT_BOUND
    elif eu >= nodes[Kind.UAV].hi:
        binding = nodes[Kind.UAV].hi_binding
    elif eh >= nodes[Kind.HAP].hi:
        binding = nodes[Kind.HAP].hi_binding
    else:
        binding = Binding.CROSSING
    return _hybrid_solution(scenario, nodes, gv, eu, eh, binding, iterations)


def solve(config, scheme, probe=None, hybrid_method="equalize"):
    """Solve ``scheme`` for a loaded :class:`~ntnvec.scenario.Config`."""
    scheme = Scheme.parse(scheme)
    scenario = config.scenario
    gv = config.platform(Kind.GV)
    if scheme is Scheme.LOCAL:
        return _local_solution(scheme, scenario, gv)
    links = {kind: platform_capacities(scenario, config.platform(kind), config.links)
             for kind in (Kind.UAV, Kind.HAP)}
    if scheme is Scheme.SO_UAV:
        return solve_standalone(scenario, config.platform(Kind.UAV), gv, *links[Kind.UAV],
                                probe=probe)
    if scheme is Scheme.SO_HAP:
        return solve_standalone(scenario, config.platform(Kind.HAP), gv, *links[Kind.HAP],
                                probe=probe)
    return solve_hybrid(scenario, config.platform(Kind.UAV), config.platform(Kind.HAP), gv,
                        links[Kind.UAV], links[Kind.HAP], probe=probe, method=hybrid_method)
