import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chanstatic import (Carrier, CompensationMode, ComplexGain, Environment, GeometryError, Parasitic, Rail,
                        Scatterer, Scenario, SteppedTrajectory, Vec3, amplitude_span_db, enumerate_paths,
                        make_anechoic, make_office, run_scenario, run_triplet)
from chanstatic.metrics import unwrap_phase
from conftest import direct_sum


def test_trace_structure():
    tr = run_scenario(Scenario(environment=make_anechoic(1, 3)))
    assert len(tr) == 301
    assert tr.steps[0] == 0 and tr.steps[-1] == 300
    np.testing.assert_array_equal(tr.time_s, tr.steps * 0.2)
    assert np.all(np.diff(tr.time_s) > 0)
    step, t, pos, h = tr.samples()[5]
    assert (step, t) == (5, 5 * 0.2)
    assert isinstance(pos, Vec3) and isinstance(h, ComplexGain)


@pytest.mark.parametrize("mode", [CompensationMode.STATIONARY, CompensationMode.COMPENSATE])
def test_static_modes_are_bit_exact(mode):
    tr = run_scenario(Scenario(environment=make_office(5, 30), mode=mode))
    assert np.all(tr.h == tr.h[0])


def test_trace_matches_direct_summation():
    s = Scenario(environment=make_office(8, 10), mode=CompensationMode.FIXED,
                 parasitic=Parasitic())
    tr = run_scenario(s)
    for i in (0, 77, 300):
        plat = s.trajectory.direction * (i * s.trajectory.step_lambda * s.carrier.wavelength_m)
        env = s.environment.with_scatterer(Scatterer(s.tx_anchor + plat + s.parasitic.offset,
                                                     s.parasitic.reflectivity))
        ref = direct_sum(env, s.tx_anchor + plat, s.rx_position, s.carrier)
        assert abs(tr.h[i] - ref) < 1e-12


def test_fixed_two_path_trace_has_twelve_nulls():
    lam = Carrier(2.45e9).wavelength_m
    # reflector behind the antenna, receiver ahead, both on the motion axis;
    # reflector distance chosen so the path difference is a whole number of
    # wavelengths at the start, putting nulls at lambda/4 + k*lambda/2
    env = Environment((Scatterer(Vec3(-10 * lam, 0, 1.0), ComplexGain(1.0)),))
    tr = run_scenario(Scenario(environment=env, mode=CompensationMode.FIXED,
                               tx_anchor=Vec3(0, 0, 1.0), rx_position=Vec3(400 * lam, 0, 1.0)))
    mag = np.abs(tr.h)
    minima = [i for i in range(1, len(mag) - 1) if mag[i] < mag[i - 1] and mag[i] <= mag[i + 1]]
    assert len(minima) == 12


def test_triplet_order_and_step_zero_equivalence():
    f, c, s = run_triplet(Scenario(environment=make_office(3, 30), parasitic=Parasitic()))
    assert (f.mode, c.mode, s.mode) == (CompensationMode.FIXED, CompensationMode.COMPENSATE,
                                        CompensationMode.STATIONARY)
    assert len(f) == len(c) == len(s)
    assert f.h[0] == c.h[0] == s.h[0]


def test_office_fixed_spans_more_than_compensated():
    f, c, _ = run_triplet(Scenario(environment=make_office(4, 30)))
    assert amplitude_span_db(f) > amplitude_span_db(c)


def test_parasitic_causes_nonzero_residual():
    _, c, s = run_triplet(Scenario(environment=make_anechoic(0), parasitic=Parasitic()))
    assert amplitude_span_db(c) > 0
    assert amplitude_span_db(s) == 0


def test_zero_parasitic_equals_baseline():
    env = make_office(12, 30)
    for mode in CompensationMode:
        a = run_scenario(Scenario(environment=env, mode=mode))
        b = run_scenario(Scenario(environment=env, mode=mode, parasitic=Parasitic(reflectivity=ComplexGain(0.0))))
        assert np.max(np.abs(a.h - b.h)) <= 1e-12


def test_saturated_rail_moves_antenna():
    tr = run_scenario(Scenario(environment=make_office(2, 30), rail=Rail(0.3)))
    lam = tr.carrier.wavelength_m
    still = tr.steps * 0.02 * lam <= 0.3
    assert np.all(tr.h[still] == tr.h[0])
    assert amplitude_span_db(tr.h[~still]) > 0


def test_geometry_error_carries_step():
    # a scatterer where the fixed antenna lands at step 10
    lam = Carrier(2.45e9).wavelength_m
    pos = Vec3(10 * 0.02 * lam, 0, 1.0)
    env = Environment((Scatterer(pos, ComplexGain(0.5)),))
    with pytest.raises(GeometryError, match="row 10"):
        run_scenario(Scenario(environment=env, mode=CompensationMode.FIXED))


def test_scenario_rejects_coincident_link():
    with pytest.raises(GeometryError):
        Scenario(tx_anchor=Vec3(1, 1, 1), rx_position=Vec3(1, 1, 1))


def test_make_anechoic():
    assert make_anechoic(7, 0).scatterers == ()
    env = make_anechoic(7, 4, -30.0)
    assert len(env.scatterers) == 4 and env.los_enabled
    for s in env.scatterers:
        assert abs(s.reflectivity) == pytest.approx(10 ** (-30 / 20), rel=1e-12)
        assert abs(s.position.x - 1.0) <= 2.5 and abs(s.position.y) <= 2.5 and abs(s.position.z - 1.0) <= 2.5
    assert make_anechoic(7, 4, -30.0) == env
    with pytest.raises(ValueError):
        make_anechoic(1, -1)
    with pytest.raises(ValueError):
        make_anechoic(1, 1, 3.0)


def test_make_office():
    env = make_office(1, 30)
    assert env == make_office(1, 30)
    assert env.positions().tolist() != make_office(2, 30).positions().tolist()
    assert len(enumerate_paths(env, Vec3(0, 0, 1), Vec3(2, 0, 1))) == 31
    mags = [abs(s.reflectivity) for s in env.scatterers]
    assert min(mags) >= 0.2 and max(mags) <= 0.9
    p = env.positions()
    assert p[:, 2].min() >= 0 and p[:, 2].max() <= 4.0
    with pytest.raises(ValueError):
        make_office(1, 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 40))
def test_compensation_exact_for_any_office(seed, count):
    tr = run_scenario(Scenario(environment=make_office(seed, count)))
    assert amplitude_span_db(tr) == 0.0
    u = unwrap_phase(tr)
    assert u.max() - u.min() == 0.0
