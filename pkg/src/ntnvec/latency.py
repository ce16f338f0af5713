"""End-to-end delay model for local and offloaded processing."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .queueing import vec_processing_parts
from .scenario import C0_KM_S


@dataclass(frozen=True)
class LatencyBreakdown:
    """Delay components of one platform at a given offloading factor [s].

    ``t_vec`` is the capture-to-output delay of the offloaded share;
    ``objective`` is the max over the terms the caller combined (equal to
    ``t_vec`` when no local term was supplied).
    """

    eta: float
    t_lp: float
    t_prop: float
    t_ul: float
    t_dl: float
    t_queue_wait: float
    t_service: float
    t_vec: float
    objective: float

    @property
    def fixed_overhead(self):
        return self.t_prop + self.t_ul + self.t_dl


def local_processing_time(eta, c_load, c_gv):
    if not 0 <= eta <= 1:
        raise DomainError(f"offloading factor must be in [0, 1], got {eta!r}")
    if c_gv <= 0:
        raise DomainError(f"local capacity must be > 0, got {c_gv!r}")
    return (1 - eta) * c_load / c_gv


def avg_distance(area, altitude):
    """Mean GV-to-platform distance [km] for a platform above the area centre."""
    if area < 0 or altitude < 0:
        raise DomainError(f"area and altitude must be >= 0 (got {area}, {altitude})")
    if area == 0 and altitude == 0:
        raise DomainError("area and altitude are both zero; distance is degenerate")
    return math.sqrt(area / (2 * math.pi) + altitude**2)


def propagation_delay(d):
    if d < 0:
        raise DomainError(f"distance must be >= 0, got {d}")
    return d / C0_KM_S


def transmission_delay(k, area, n_bits, rate):
    """Time to push every vehicle's payload through a shared link [s]."""
    if rate <= 0:
        raise DomainError(f"link rate must be > 0, got {rate}")
    if k < 0 or area < 0 or n_bits < 0:
        raise DomainError("k, area and n_bits must be >= 0")
    return k * area * n_bits / rate


def fixed_overhead(scenario, platform, ul, dl):
    """Round-trip propagation plus UL/DL transmission, independent of eta."""
    t_prop = 2 * propagation_delay(avg_distance(scenario.A, platform.altitude))
    t_ul = transmission_delay(scenario.k, scenario.A, scenario.n_ul, ul.rate)
    t_dl = transmission_delay(scenario.k, scenario.A, scenario.n_dl, dl.rate)
    return t_prop, t_ul, t_dl


def vec_delay(eta, scenario, platform, ul, dl, *, c_gv=None, local_eta=None):
    """Delay breakdown for offloading ``eta`` of the load to ``platform``.

    With ``c_gv`` given, the local term is filled in using the locally
    kept share ``1 - local_eta`` (``local_eta`` defaults to ``eta``) and
    ``objective`` becomes max(t_lp, t_vec). A platform that receives no
    load (eta == 0) is idle and does not enter the objective, although
    ``t_vec`` still reports its fixed overhead.
    """
    t_prop, t_ul, t_dl = fixed_overhead(scenario, platform, ul, dl)
    wait, service = vec_processing_parts(
        eta, scenario.C, platform.capacity, platform.servers, scenario.arrival_rate,
        platform=platform.kind.value,
    )
    t_vec = t_prop + t_ul + t_dl + wait + service
    if c_gv is None:
        t_lp = 0.0
        objective = t_vec
    else:
        share = eta if local_eta is None else local_eta
        t_lp = local_processing_time(share, scenario.C, c_gv)
        objective = max(t_lp, t_vec) if eta > 0 else t_lp
    return LatencyBreakdown(eta, t_lp, t_prop, t_ul, t_dl, wait, service, t_vec, objective)


def objective_standalone(eta, scenario, platform, gv, ul, dl):
    """max(t_lp, t_vec) when offloading ``eta`` to a single platform."""
    return vec_delay(eta, scenario, platform, ul, dl, c_gv=gv.capacity).objective


def objective_hybrid(eta_uav, eta_hap, scenario, uav, hap, gv, uav_links, hap_links):
    """max of both platforms' t_vec and the local time for the remainder.

    ``uav_links`` and ``hap_links`` are (ul, dl) capacity pairs. Idle
    platforms (zero share) are left out of the max.
    """
    if not (0 <= eta_uav <= 1 and 0 <= eta_hap <= 1):
        raise DomainError(f"offloading factors must be in [0, 1], got {eta_uav}, {eta_hap}")
    total = eta_uav + eta_hap
    if total > 1 + 1e-12:
        raise DomainError(f"eta_uav + eta_hap = {total} exceeds 1")
    terms = [local_processing_time(min(total, 1.0), scenario.C, gv.capacity)]
    if eta_uav > 0:
        terms.append(vec_delay(eta_uav, scenario, uav, *uav_links).t_vec)
    if eta_hap > 0:
        terms.append(vec_delay(eta_hap, scenario, hap, *hap_links).t_vec)
    return max(terms)
