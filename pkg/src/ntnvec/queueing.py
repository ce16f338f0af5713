"""M/M/c and M/D/c queue analytics, plus a small FCFS simulator to check them."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InstabilityError


def _check_servers(c):
    if isinstance(c, bool) or not isinstance(c, (int, np.integer)):
        raise DomainError(f"server count must be an integer, got {c!r}")
    if c < 1:
        raise DomainError(f"server count must be >= 1, got {c}")
    return int(c)


def _check_traffic(c, g, platform=None):
    c = _check_servers(c)
    if not g >= 0:
        raise DomainError(f"offered traffic must be >= 0, got {g!r}")
    if g >= c:
        raise InstabilityError(g, c, platform)
    return c


@dataclass(frozen=True)
class QueueSpec:
    lam: float  # arrivals/s
    mu: float  # services/s per server
    c: int

    def __post_init__(self):
        _check_servers(self.c)
        if not self.lam >= 0:
            raise DomainError(f"arrival rate must be >= 0, got {self.lam!r}")
        if not self.mu > 0:
            raise DomainError(f"service rate must be > 0, got {self.mu!r}")

    @property
    def offered(self):
        return self.lam / self.mu

    @property
    def stable(self):
        return self.offered < self.c


def erlang_c(c, g):
    """Probability that an arriving job finds all ``c`` servers busy.

    Uses the Erlang-B recurrence, which is stable for large ``c`` and ``g``
    where the factorial form overflows.
    """
    c = _check_traffic(c, g)
    b = 1.0
    for j in range(1, c + 1):
        b = g * b / (j + g * b)
    return c * b / (c - g * (1.0 - b))


def lq_mmc(c, g):
    """Mean number of jobs waiting in an M/M/c queue."""
    c = _check_traffic(c, g)
    return g / (c - g) * erlang_c(c, g)


def wq_mmc(queue):
    """Mean waiting time in queue for M/M/c [s]; 0 when nothing arrives."""
    if queue.lam == 0:
        return 0.0
    return lq_mmc(queue.c, queue.offered) / queue.lam


def wq_mdc(queue):
    """Mean waiting time for M/D/c, approximated as half the M/M/c value."""
    return 0.5 * wq_mmc(queue)


def vec_processing_time(eta, c_load, capacity, servers, lam, platform=None):
    """Queueing wait plus service time for an offloaded share ``eta``.

    Service is deterministic, 1/mu = eta*c_load/capacity. Raises
    :class:`InstabilityError` carrying (G, c) if the induced queue is
    unstable.
    """
    wait, service = vec_processing_parts(eta, c_load, capacity, servers, lam, platform)
    return wait + service


def vec_processing_parts(eta, c_load, capacity, servers, lam, platform=None):
    if not 0 <= eta <= 1:
        raise DomainError(f"offloading factor must be in [0, 1], got {eta!r}")
    if eta == 0:
        return 0.0, 0.0
    servers = _check_servers(servers)
    service = eta * c_load / capacity
    # G = lam / mu with mu = 1 / service; avoids 1/service for tiny eta
    g = lam * service
    if g >= servers:
        raise InstabilityError(g, servers, platform)
    if lam == 0 or g == 0:
        return 0.0, service
    return 0.5 * lq_mmc(servers, g) / lam, service


@dataclass(frozen=True)
class SimulationResult:
    mean_wait: float
    std_error: float
    n_tasks: int
    batches: int


def simulate_waiting_time(lam, mu, c, n_tasks, service="exponential", seed=0,
                          batches=50, warmup=None):
    """Simulate a FCFS multi-server queue and estimate the mean wait.

    Waits follow the Kiefer-Wolfowitz recursion: each arrival is served by
    the earliest-free server. The standard error is taken from ``batches``
    non-overlapping batch means after discarding ``warmup`` tasks (default
    1% of ``n_tasks``).

    Args:
        service: ``"exponential"`` (M/M/c) or ``"deterministic"`` (M/D/c).
    """
    c = _check_servers(c)
    if service not in ("exponential", "deterministic"):
        raise ValueError(f"unknown service distribution {service!r}")
    if warmup is None:
        warmup = n_tasks // 100
    rng = np.random.default_rng(seed)
    total = n_tasks + warmup
    arrivals = np.cumsum(rng.exponential(1.0 / lam, total)).tolist()
    if service == "exponential":
        services = rng.exponential(1.0 / mu, total).tolist()
    else:
        services = [1.0 / mu] * total

    free = [0.0] * c
    waits = np.empty(total)
    for i, (t, s) in enumerate(zip(arrivals, services)):
        earliest = free[0]
        start = t if t > earliest else earliest
        waits[i] = start - t
        heapq.heapreplace(free, start + s)

    kept = waits[warmup:]
    usable = (len(kept) // batches) * batches
    means = kept[:usable].reshape(batches, -1).mean(axis=1)
    return SimulationResult(
        mean_wait=float(kept.mean()),
        std_error=float(means.std(ddof=1) / math.sqrt(batches)),
        n_tasks=n_tasks,
        batches=batches,
    )
