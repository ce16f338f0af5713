"""Link budget: EIRP, G/T, path loss, SNR and Shannon capacity.

All quantities are in the dB domain except bandwidth (Hz), carrier
frequency (GHz) and distance (km).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .scenario import BOLTZMANN_DB, Direction, PathLossMode, link_key


@dataclass(frozen=True)
class LinkCapacity:
    direction: Direction
    snr_db: float
    rate: float  # bit/s
    pl_used: float  # dB


def eirp(p_t, l_c, g_t):
    """Effective isotropic radiated power [dBW]."""
    return p_t - l_c + g_t


def g_over_t(g_r, n_f, t0, t_a):
    """Receive gain-to-noise-temperature ratio [dB/K].

    Args:
        g_r: receive antenna gain [dBi]
        n_f: noise figure [dB]
        t0: ambient temperature [K]
        t_a: antenna temperature [K]
    """
    if t0 <= 0 or t_a <= 0:
        raise DomainError(f"temperatures must be positive (t0={t0}, t_a={t_a})")
    noise_temp = t0 + (t_a - t0) * 10 ** (-n_f / 10)
    if noise_temp <= 0:
        raise DomainError(f"non-positive effective noise temperature {noise_temp!r} K")
    return g_r - n_f - 10 * math.log10(noise_temp)


def fspl(fc, d):
    """Free-space path loss [dB] for ``fc`` in GHz and ``d`` in km."""
    if fc <= 0 or d <= 0:
        raise DomainError(f"fspl needs fc > 0 and d > 0 (got fc={fc}, d={d})")
    return 92.45 + 20 * math.log10(fc) + 20 * math.log10(d)


def total_path_loss(link, d):
    """Path loss of ``link`` at mean distance ``d`` [km].

    Override mode returns the configured value regardless of ``d``.
    Computed mode adds the gaseous and scintillation terms to FSPL; with
    both at zero this is the plain FSPL used for low-altitude UAV links.
    """
    if link.path_loss_mode is PathLossMode.OVERRIDE:
        if link.pl_override is None:
            raise ValidationError("pl_override", "required when mode is 'override'")
        return float(link.pl_override)
    if d <= 0:
        raise DomainError(f"distance must be > 0, got {d}")
    return fspl(link.fc, d) + link.pl_g + link.pl_s


def snr_db(eirp_dbw, g_over_t_dbk, pl, bandwidth):
    if bandwidth <= 0:
        raise DomainError(f"bandwidth must be > 0, got {bandwidth}")
    return eirp_dbw + g_over_t_dbk - pl - BOLTZMANN_DB - 10 * math.log10(bandwidth)


def shannon_capacity(bandwidth, snr):
    """Shannon rate [bit/s] for ``snr`` given in dB."""
    if bandwidth <= 0:
        raise DomainError(f"bandwidth must be > 0, got {bandwidth}")
    # log1p keeps very low SNRs strictly positive
    return bandwidth * math.log1p(10 ** (snr / 10)) / math.log(2)


def link_capacity(link, d, direction):
    pl = total_path_loss(link, d)
    snr = snr_db(link.tx.resolved_eirp(), link.rx.resolved_g_over_t(), pl, link.bandwidth)
    return LinkCapacity(
        direction=Direction(direction),
        snr_db=snr,
        rate=shannon_capacity(link.bandwidth, snr),
        pl_used=pl,
    )


def platform_capacities(scenario, platform, links):
    """UL and DL capacities between the ground vehicles and ``platform``.

    ``links`` is the config's link map (see :func:`scenario.build_links`).
    """
    from .latency import avg_distance

    d = avg_distance(scenario.A, platform.altitude)
    ul = link_capacity(links[link_key(platform.kind, Direction.UL)], d, Direction.UL)
    dl = link_capacity(links[link_key(platform.kind, Direction.DL)], d, Direction.DL)
    return ul, dl
