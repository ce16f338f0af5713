"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""
import itertools
import math
import time

import numpy as np
import pytest

from ntnvec.channel import platform_capacities
from ntnvec.errors import InstabilityError
from ntnvec.latency import objective_standalone
from ntnvec.optimizer import eta_max, solve, solve_standalone
from ntnvec.queueing import (QueueSpec, erlang_c, lq_mmc, simulate_waiting_time, wq_mdc,
                             wq_mmc)
from ntnvec.scenario import Config, Kind, Scheme, SweepAxis
from ntnvec.sweep import SweepSpec, format_csv, format_plotdata, parse_csv, run_sweep

from conftest import make_config
from oracles import erlang_c_factorial, grid_minimum

GRID_STEP = 1e-4
MS = 1e-3


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} | {detail}")
        return ok
    return emit


def _grid_configs():
    """The 27 (k, C_GV, n_UL) scenarios of the oracle grid, defaults otherwise."""
    for k, c_gv, n_ul in itertools.product((25, 100, 200), (200, 500, 1000), (0.5, 1, 2.5)):
        yield (k, c_gv, n_ul), make_config(k=k, c_gv=c_gv * 1e9, n_ul=n_ul * 1e6)


def _g_grid(c):
    return c * np.linspace(0.01, 0.99, 50)


def _rel(a, b):
    return abs(a - b) / abs(b) if b else abs(a)


def test_criterion_1_queueing_identities(report):
    start = time.perf_counter()
    worst_unit = 0.0
    for g in np.arange(1, 10) / 10:
        g = float(g)
        worst_unit = max(worst_unit, _rel(erlang_c(1, g), g), _rel(lq_mmc(1, g), g * g / (1 - g)))
    worst_rec = 0.0
    for c in range(1, 21):
        for g in _g_grid(c):
            worst_rec = max(worst_rec, _rel(erlang_c(c, float(g)), erlang_c_factorial(c, float(g))))
    elapsed = time.perf_counter() - start
    ok = worst_unit <= 1e-12 and worst_rec <= 1e-10 and elapsed < 1.0
    report(1, ok, f"c=1 identities rel err {worst_unit:.2e} (<=1e-12), "
                  f"recurrence vs factorial {worst_rec:.2e} (<=1e-10), {elapsed:.3f} s (<1 s)")
    assert ok


def test_criterion_2_mdc_halving(report):
    start = time.perf_counter()
    worst_ulps = 0.0
    points = 0
    for c in range(1, 21):
        for g in _g_grid(c):
            for lam in (0.5, 1.0, 2500.0):
                q = QueueSpec(lam=lam, mu=lam / float(g), c=c)
                md, mm = wq_mdc(q), wq_mmc(q)
                worst_ulps = max(worst_ulps, abs(md - 0.5 * mm) / math.ulp(md))
                points += 1
    elapsed = time.perf_counter() - start
    ok = worst_ulps <= 1 and elapsed < 1.0
    report(2, ok, f"{points} points, max deviation {worst_ulps:g} ulp (<=1), {elapsed:.3f} s (<1 s)")
    assert ok


def test_criterion_3_des_cross_check(report):
    start = time.perf_counter()
    sim = simulate_waiting_time(lam=1.0, mu=1.0, c=2, n_tasks=1_000_000, seed=12345)
    elapsed = time.perf_counter() - start
    exact = wq_mmc(QueueSpec(lam=1.0, mu=1.0, c=2))
    z = abs(sim.mean_wait - exact) / sim.std_error
    ok = sim.n_tasks >= 1_000_000 and z <= 3 and elapsed < 30
    report(3, ok, f"M/M/2 G=1: simulated {sim.mean_wait:.5f} +- {sim.std_error:.5f} vs "
                  f"analytic {exact:.5f} ({z:.2f} SE, <=3), {sim.n_tasks} tasks, "
                  f"{elapsed:.2f} s (<30 s)")
    assert ok


def test_criterion_4_stability_bound(report):
    start = time.perf_counter()
    values = {}
    for k in (25, 200):
        sc = make_config(k=k).scenario
        uav = Config().platform(Kind.UAV)
        values[k] = eta_max(uav.servers, uav.capacity, sc.C, sc.k, sc.A, sc.r)
    exact = abs(values[25] - 0.24) <= math.ulp(0.24) and abs(values[200] - 0.03) <= math.ulp(0.03)

    violations = []
    probes = 0

    def probe(kind, eta, offered, servers):
        nonlocal probes
        probes += 1
        if offered >= servers:
            violations.append((kind, eta, offered, servers))

    for _, config in _grid_configs():
        for scheme in (Scheme.SO_UAV, Scheme.SO_HAP, Scheme.HO):
            solve(config, scheme, probe=probe)
        solve(config, Scheme.HO, probe=probe, hybrid_method="two_step")
    elapsed = time.perf_counter() - start
    ok = exact and not violations and probes > 0 and elapsed < 1.0
    report(4, ok, f"eta_max(UAV,k=25)={values[25]!r} eta_max(UAV,k=200)={values[200]!r}, "
                  f"{probes} probed evaluations, {len(violations)} with G>=c, "
                  f"{elapsed:.2f} s (<1 s)")
    assert ok


def _oracle_case(config, kind):
    sc = config.scenario
    platform, gv = config.platform(kind), config.platform(Kind.GV)
    ul, dl = platform_capacities(sc, platform, config.links)
    bound = eta_max(platform.servers, platform.capacity, sc.C, sc.k, sc.A, sc.r)

    def objective(eta):
        try:
            return objective_standalone(eta, sc, platform, gv, ul, dl)
        except InstabilityError:
            return math.inf

    hi = bound if bound <= 1 else 1.0 + GRID_STEP / 2
    best, best_eta, values, _ = grid_minimum(objective, hi, GRID_STEP)
    i = int(np.argmin(values))
    neighbours = [values[j] for j in (i - 1, i + 1) if 0 <= j < len(values)]
    slope_step = max((abs(v - best) for v in neighbours if math.isfinite(v)), default=0.0)
    sol = solve_standalone(sc, platform, gv, ul, dl)
    tol = max(sc.xi * sol.objective_value, 2 * slope_step)
    return sol, best, best_eta, tol


def test_criterion_5_optimizer_vs_grid(report):
    start = time.perf_counter()
    failures = []
    cases = 0
    for key, config in _grid_configs():
        for kind in (Kind.UAV, Kind.HAP):
            sol, best, best_eta, tol = _oracle_case(config, kind)
            cases += 1
            if abs(sol.objective_value - best) > tol:
                failures.append((key, kind.value, sol.objective_value, best, tol))
    elapsed = time.perf_counter() - start
    ok = cases >= 50 and not failures and elapsed < 60
    report(5, ok, f"{cases} scenarios, {len(failures)} outside max(xi*obj, 2 grid-step slope), "
                  f"{elapsed:.1f} s (<60 s)" + (f"; first: {failures[0]}" if failures else ""))
    assert ok


def test_criterion_6_so_uav_trend(report):
    sol = solve(make_config(k=25, c_gv=200e9), Scheme.SO_UAV)
    ok = 0.35 <= sol.objective_value <= 0.45 and abs(sol.eta_uav - 0.24) <= 0.05
    report(6, ok, f"SO-UAV k=25 C_GV=200: objective {sol.objective_value:.4f} s in [0.35, 0.45], "
                  f"eta* {sol.eta_uav:.4f} (0.24 +- 0.05), binding {sol.binding}")
    assert ok


def test_criterion_7_so_hap_trend(report):
    sol = solve(make_config(k=25, c_gv=200e9), Scheme.SO_HAP)
    ok = 0.88 <= sol.eta_hap <= 0.98 and sol.objective_value < 100 * MS
    report(7, ok, f"SO-HAP k=25 C_GV=200: eta* {sol.eta_hap:.4f} in [0.88, 0.98], "
                  f"objective {sol.objective_value / MS:.2f} ms (<100 ms)")
    assert ok


PLATEAU_TOL = 0.02  # relative spread that still counts as constant


def test_criterion_8_n_ul_threshold(report):
    base = make_config(k=200, HAP={"capacity": 5000e9, "servers": 20})
    n_ul = [round(0.1 * i, 1) for i in range(5, 31)]  # 0.5 .. 3.0 Mb
    spec = SweepSpec(SweepAxis.N_UL, [v * 1e6 for v in n_ul], (Scheme.SO_HAP,), base)
    objs = [r.objective_s for r in run_sweep(spec)]

    plateau = objs[0]
    knee = next((i for i, v in enumerate(objs) if v > plateau * (1 + PLATEAU_TOL)), len(objs))
    flat = all(abs(v - plateau) <= PLATEAU_TOL * plateau for v in objs[:knee])
    rising = all(b >= a for a, b in zip(objs[knee:], objs[knee + 1:]))
    crossing = next((n_ul[i] for i, v in enumerate(objs) if v >= 100 * MS), None)
    below_first = objs[0] < 100 * MS
    threshold = below_first and crossing is not None and 1.0 <= crossing <= 1.5
    ok = flat and rising and threshold
    curve = ", ".join(f"{n}:{v / MS:.1f}" for n, v in zip(n_ul[::5], objs[::5]))
    report(8, ok, f"shape {'ok' if flat and rising else 'broken'} (flat to "
                  f"{n_ul[min(knee, len(n_ul) - 1)]} Mb, then non-decreasing); "
                  + (f"100 ms crossed at {crossing} Mb" if below_first and crossing
                     else "never below 100 ms" if not below_first else "never reaches 100 ms")
                  + f", required crossing in [1.0, 1.5] Mb; Mb:ms {curve}")
    assert flat and rising
    assert threshold, "SO-HAP objective is not below 100 ms before 1.0 Mb in this regime"


def test_criterion_9_hybrid_dominance(report):
    worst = -math.inf
    failures = []
    for key, config in _grid_configs():
        ho = solve(config, Scheme.HO).objective_value
        best_so = min(solve(config, Scheme.SO_UAV).objective_value,
                      solve(config, Scheme.SO_HAP).objective_value)
        excess = ho - best_so
        worst = max(worst, excess / (config.scenario.xi * ho))
        if excess > config.scenario.xi * ho:
            failures.append((key, ho, best_so))
    ok = not failures
    report(9, ok, f"27 scenarios, {len(failures)} with HO > min(SO) + xi*obj; "
                  f"worst excess {worst:.3f} xi*obj")
    assert ok


def test_criterion_10_determinism_and_round_trip(report):
    spec_k = SweepSpec.from_config(make_config(c_gv=200e9))
    spec_n = SweepSpec(SweepAxis.N_UL, [0.05e6, 0.5e6, 1e6, 2.5e6, 5e6], tuple(Scheme),
                       make_config(k=100))
    identical = True
    round_trip = True
    rows = 0
    for spec in (spec_k, spec_n):
        first = run_sweep(spec)
        outputs = {format_csv(first), format_csv(run_sweep(spec)),
                   format_csv(run_sweep(spec, workers=2))}
        plots = {format_plotdata(first), format_plotdata(run_sweep(spec, workers=3))}
        identical &= len(outputs) == 1 and len(plots) == 1
        text = outputs.pop()
        parsed = parse_csv(text)
        rows += len(parsed)
        round_trip &= format_csv(parsed) == text
        for got, rec in zip(parsed, first):
            if rec.feasible:
                round_trip &= got == rec.rounded()
            else:
                round_trip &= (not got.feasible and got.binding == rec.binding
                               and math.isnan(got.objective_s))
        round_trip &= len(parsed) == len(first)
    ok = identical and round_trip
    report(10, ok, f"byte-identical across sequential/parallel runs: {identical}; "
                   f"CSV round-trip at 9 significant digits over {rows} rows: {round_trip}")
    assert ok
