import math

import pytest

from corridor_forge.corridor import (
    ProcessConfig,
    candidates,
    corridor_p,
    default_tracked_family,
    error_band,
    error_function,
    i_end,
    init,
    predicted_Y,
    run,
    step,
    volume_bound_steps,
    z_value,
)
from corridor_forge.dual import build_dual, is_induced_path
from corridor_forge.errors import (
    InvalidParams,
    InvalidTrackedComplex,
    NotRecorded,
    OutOfRegime,
)


class TestInit:
    def test_contracts(self):
        state = init(ProcessConfig(n=30, d=2, seed=1))
        assert len(state.phi) == 3
        assert len(state.closed_keys) == 3
        assert state.step == 0
        assert state.tracker is None

    def test_small_n_guard(self):
        with pytest.raises(InvalidParams):
            init(ProcessConfig(n=5, d=2, seed=0))

    def test_small_n_opt_in(self):
        state = init(ProcessConfig(n=5, d=2, seed=0, allow_small_n=True))
        assert len(state.phi) == 3

    def test_d1_rejected(self):
        with pytest.raises(InvalidParams):
            init(ProcessConfig(n=30, d=1, seed=0))

    def test_tracker_created_with_recording(self):
        state = init(ProcessConfig(n=30, d=2, seed=1, record_every=5))
        assert state.tracker is not None
        assert state.tracker.period == 7


class TestStep:
    def test_candidates_at_step_zero(self):
        state = init(ProcessConfig(n=30, d=2, seed=3))
        cand = candidates(state)
        assert len(cand) == 30 - 3
        assert not set(cand) & set(state.phi)

    def test_step_growth(self):
        state = init(ProcessConfig(n=30, d=2, seed=3))
        before = len(state.closed_keys)
        assert step(state)
        assert len(state.closed_keys) == before + 2
        assert len(state.phi) == 4
        assert state.step == 1

    def test_determinism(self):
        cfg = ProcessConfig(n=40, d=2, seed=11)
        a = init(cfg)
        b = init(cfg)
        for _ in range(20):
            assert step(a) == step(b)
        assert a.phi == b.phi

    def test_recording_does_not_change_run(self):
        plain = run(ProcessConfig(n=40, d=2, seed=5))
        tracked = run(ProcessConfig(n=40, d=2, seed=5, record_every=25))
        assert plain.image.facets == tracked.image.facets
        assert plain.steps == tracked.steps


class TestFormulas:
    def test_p_and_prediction_at_start(self):
        assert corridor_p(100, 2, 0) == 1.0
        assert predicted_Y(100, 2, 0, 3) == 100.0

    def test_prediction_midway(self):
        # p = 1 - 2*2*1250/10000 = 0.5, n p^2 = 25
        assert predicted_Y(100, 2, 1250, 2) == pytest.approx(25.0)

    def test_prediction_at_p_zero(self):
        assert predicted_Y(100, 2, 2500, 2) == pytest.approx(0.0)

    def test_prediction_out_of_regime(self):
        with pytest.raises(OutOfRegime):
            predicted_Y(100, 2, 3000, 2)

    def test_error_function_at_one(self):
        assert error_function(2, 1.0) == pytest.approx(math.exp(31))

    def test_error_band_value_and_growth(self):
        assert error_band(200, 2, 0.0) == pytest.approx(
            200**0.75 * math.exp(31) / 2
        )
        assert error_band(200, 2, 0.1) > error_band(200, 2, 0.0)
        # the rigorous band is vacuous at desk scale
        assert error_band(200, 2, 0.0) > 200

    def test_error_band_out_of_regime(self):
        with pytest.raises(OutOfRegime):
            error_band(200, 2, 0.25)

    def test_i_end_asymptotic_only(self):
        assert i_end(1000, 2, 0.2) is None

    def test_i_end_positive_at_astronomical_n(self):
        value = i_end(10**150, 2, 0.24)
        assert value is not None and value > 0

    def test_i_end_eps_guard(self):
        with pytest.raises(InvalidParams):
            i_end(1000, 2, 0.25)
        with pytest.raises(InvalidParams):
            i_end(1000, 2, 0.0)

    def test_volume_bound(self):
        assert volume_bound_steps(10, 2) == pytest.approx((45 - 3) / 2)


class TestTrackedFamily:
    def test_default_family_names(self):
        cfg = ProcessConfig(n=40, d=2, seed=0, record_every=1, track_random=3)
        fam = default_tracked_family(cfg)
        names = [tc.name for tc in fam]
        assert names == ["rand0", "rand1", "rand2", "link"]

    def test_link_shape(self):
        cfg = ProcessConfig(n=40, d=3, seed=0, record_every=1, track_random=0)
        (link,) = default_tracked_family(cfg)
        assert link.v_count == 6  # 2d vertices
        assert link.size <= 9  # |A| <= d^2

    def test_custom_entry_validated(self):
        cfg = ProcessConfig(
            n=40,
            d=2,
            seed=0,
            track=(("bad", ((1, 2, 3),)),),  # wrong face dimension
        )
        with pytest.raises(InvalidTrackedComplex):
            default_tracked_family(cfg)


class TestTrackerIdentity:
    def test_identity_every_step(self):
        state = init(ProcessConfig(n=40, d=2, seed=7, record_every=1))
        tracker = state.tracker
        for _ in range(60):
            if not step(state):
                break
            for tc in tracker.tracked:
                assert tracker.identity_holds(tc)

    def test_z_value_and_not_recorded(self):
        state = init(ProcessConfig(n=40, d=2, seed=7, record_every=1))
        tracker = state.tracker
        tracker.snapshot(0)
        z = z_value(tracker, "rand0", j=0, ell=0, n=40, d=2)
        assert z < 0  # the half-band dwarfs any single counter
        with pytest.raises(NotRecorded):
            z_value(tracker, "rand0", j=3, ell=1, n=40, d=2)


class TestRun:
    def test_report_invariants(self):
        report = run(ProcessConfig(n=40, d=2, seed=2))
        assert len(report.image.facets) == report.steps + 1
        assert report.path_length == report.steps
        assert report.steps <= volume_bound_steps(40, 2)
        assert is_induced_path(build_dual(report.image, 2))
        assert report.termination == "exhausted"
        assert report.first_low_step is not None

    def test_d3_run(self):
        report = run(ProcessConfig(n=20, d=3, seed=4))
        assert is_induced_path(build_dual(report.image, 3))
        assert report.steps <= volume_bound_steps(20, 3)

    def test_small_n_run(self):
        report = run(ProcessConfig(n=5, d=2, seed=0, allow_small_n=True))
        assert report.steps >= 0
        assert len(report.image.facets) == report.steps + 1

    def test_records_stride(self):
        report = run(ProcessConfig(n=40, d=2, seed=2, record_every=25))
        steps = [rec.step for rec in report.records]
        assert steps[0] == 0
        assert all(s % 25 == 0 for s in steps)

    def test_band_never_exited_at_desk_scale(self):
        report = run(ProcessConfig(n=40, d=2, seed=2, record_every=10))
        assert report.first_band_exit is None
