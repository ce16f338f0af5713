import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ntnvec.channel import platform_capacities
from ntnvec.errors import DomainError, InstabilityError
from ntnvec.latency import (avg_distance, local_processing_time, objective_hybrid,
                            objective_standalone, propagation_delay, transmission_delay,
                            vec_delay)
from ntnvec.optimizer import solve_standalone
from ntnvec.queueing import QueueSpec, wq_mdc
from ntnvec.scenario import Kind

from conftest import make_config


def test_local_processing_time():
    assert local_processing_time(0, 1e11, 2e11) == 0.5
    assert local_processing_time(1, 1e11, 2e11) == 0.0
    assert local_processing_time(0.5, 1e11, 5e11) == pytest.approx(0.1, rel=1e-15)
    with pytest.raises(DomainError):
        local_processing_time(1.2, 1e11, 2e11)


def test_avg_distance():
    assert avg_distance(0, 20) == 20
    assert avg_distance(1, 20) == pytest.approx(20.0039784778701, rel=1e-13)
    assert avg_distance(1, 0.1) == pytest.approx(0.411284503831466, rel=1e-13)
    with pytest.raises(DomainError):
        avg_distance(0, 0)


def test_propagation_delay():
    assert propagation_delay(0) == 0
    assert propagation_delay(20.004) == pytest.approx(66.7262e-6, rel=1e-5)
    assert propagation_delay(0.41129) == pytest.approx(1.37192e-6, rel=1e-5)


def test_transmission_delay():
    assert transmission_delay(0, 1, 1e6, 3.52e9) == 0
    assert transmission_delay(25, 1, 1e6, 3.52e9) == pytest.approx(7.102e-3, rel=1e-3)
    assert transmission_delay(200, 1, 1.2e6, 3.52e9) == pytest.approx(68.18e-3, rel=1e-3)
    with pytest.raises(DomainError):
        transmission_delay(1, 1, 1, 0)


def _hap(k=25, c_gv=200e9):
    config = make_config(k=k, c_gv=c_gv)
    sc = config.scenario
    hap = config.platform(Kind.HAP)
    ul, dl = platform_capacities(sc, hap, config.links)
    return config, sc, hap, ul, dl


def test_vec_delay_at_zero_is_fixed_overhead():
    _, sc, hap, ul, dl = _hap()
    b = vec_delay(0.0, sc, hap, ul, dl)
    assert b.t_queue_wait == 0 and b.t_service == 0
    assert b.t_vec == b.t_prop + b.t_ul + b.t_dl


def test_vec_delay_composition():
    _, sc, hap, ul, dl = _hap()
    b = vec_delay(0.5, sc, hap, ul, dl, c_gv=200e9)
    d = math.sqrt(1 / (2 * math.pi) + 400)
    assert b.t_prop == pytest.approx(2 * d / 299792.458, rel=1e-14)
    assert b.t_ul == pytest.approx(25 * 1e6 / 3525106335.75988, rel=1e-12)
    assert b.t_dl == pytest.approx(25 * 1e5 / 1368018261.43857, rel=1e-12)
    mu = 3500e9 / (0.5 * 1e11)
    assert b.t_queue_wait == pytest.approx(wq_mdc(QueueSpec(250.0, mu, 12)), rel=1e-12)
    assert b.t_service == pytest.approx(0.5 * 1e11 / 3500e9, rel=1e-14)
    assert b.t_vec == b.t_prop + b.t_ul + b.t_dl + b.t_queue_wait + b.t_service
    assert b.t_lp == pytest.approx(0.25)
    assert b.objective == max(b.t_lp, b.t_vec)


def test_vec_delay_instability():
    config = make_config(k=25)
    sc = config.scenario
    uav = config.platform(Kind.UAV)
    ul, dl = platform_capacities(sc, uav, config.links)
    with pytest.raises(InstabilityError):
        vec_delay(0.24, sc, uav, ul, dl)


@given(st.floats(0.0, 0.99))
def test_fixed_overhead_independent_of_eta(eta):
    _, sc, hap, ul, dl = _hap()
    b = vec_delay(eta, sc, hap, ul, dl)
    b0 = vec_delay(0.0, sc, hap, ul, dl)
    assert b.fixed_overhead == b0.fixed_overhead


def test_standalone_objective_ends():
    _, sc, hap, ul, dl = _hap()
    gv = make_config(c_gv=200e9).platform(Kind.GV)
    assert objective_standalone(0.0, sc, hap, gv, ul, dl) == 0.5
    b1 = vec_delay(1.0, sc, hap, ul, dl)
    assert objective_standalone(1.0, sc, hap, gv, ul, dl) == b1.t_vec


def test_standalone_objective_quasiconvex():
    config, sc, hap, ul, dl = _hap()
    gv = config.platform(Kind.GV)
    sol = solve_standalone(sc, hap, gv, ul, dl)
    etas = [i / 200 for i in range(200)]
    values = [objective_standalone(e, sc, hap, gv, ul, dl) for e in etas]
    left = [v for e, v in zip(etas, values) if e < sol.eta_hap]
    right = [v for e, v in zip(etas, values) if e > sol.eta_hap]
    assert all(b < a for a, b in zip(left, left[1:]))
    assert all(b > a for a, b in zip(right, right[1:]))


def test_hybrid_objective():
    config = make_config(k=200, c_gv=200e9)
    sc = config.scenario
    uav, hap, gv = (config.platform(k) for k in (Kind.UAV, Kind.HAP, Kind.GV))
    ul_u = platform_capacities(sc, uav, config.links)
    ul_h = platform_capacities(sc, hap, config.links)
    assert objective_hybrid(0, 0, sc, uav, hap, gv, ul_u, ul_h) == 0.5
    assert objective_hybrid(0.02, 0, sc, uav, hap, gv, ul_u, ul_h) == \
        objective_standalone(0.02, sc, uav, gv, *ul_u)
    value = objective_hybrid(0.02, 0.15, sc, uav, hap, gv, ul_u, ul_h)
    expected = max(vec_delay(0.02, sc, uav, *ul_u).t_vec, vec_delay(0.15, sc, hap, *ul_h).t_vec,
                   (1 - 0.17) * 0.5)
    assert value == pytest.approx(expected, rel=1e-15)
    with pytest.raises(InstabilityError):
        objective_hybrid(0.05, 0.5, sc, uav, hap, gv, ul_u, ul_h)
    with pytest.raises(DomainError):
        objective_hybrid(0.6, 0.6, sc, uav, hap, gv, ul_u, ul_h)
