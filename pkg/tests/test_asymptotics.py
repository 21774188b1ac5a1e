"""Limit integrals, convergence studies, and the closing Riemann-sum pieces."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wnl.asymptotics import (
    asymptotic_limit,
    asymptotic_limit_slope_route,
    convergence_study,
    default_thread_count,
    final_step_report,
    full_circle_reference,
    riemann_sum_bound_check,
    truncated_riemann,
)
from wnl.errors import DomainError, WnlError
from wnl.phase import (
    build_blaschke,
    build_blaschke_general,
    build_from_callable,
    build_linear,
    build_sine,
)

L_SINE = 1.2171884777994833275  # 16 / Gamma(1/4)^2
L_HALF = 1.25133889276404441  # one zero at 0.5
L_PAIR = 1.87867627073246121  # zeros at 0.3 and 0.7
SQRT_8_OVER_PI = 1.5957691216057308  # limit value for constant curvature 1


@pytest.mark.parametrize(
    "phase,want",
    [
        (build_sine(), L_SINE),
        (build_blaschke([0.5]), L_HALF),
        (build_blaschke([0.3, 0.7]), L_PAIR),
    ],
    ids=lambda v: v.label if hasattr(v, "label") else str(v),
)
def test_limit_frozen_values(phase, want):
    assert asymptotic_limit(phase, tol=1e-11) == pytest.approx(want, abs=1e-10)


def test_two_quadrature_routes_agree():
    for phase in (build_sine(), build_blaschke([0.5]), build_blaschke([0.3, 0.7])):
        t_route = asymptotic_limit(phase, tol=1e-11)
        u_route = asymptotic_limit_slope_route(phase, tol=1e-9)
        assert t_route == pytest.approx(u_route, abs=1e-8)


def test_limit_on_synthetic_curvature():
    """h = t^2/2 is no phase at all, but h'' = 1 makes the integral pi.

    The wrapped callable differentiates by central differences, whose
    rounding floor on d2 is ~1e-6; the tolerance reflects that, not the
    quadrature."""
    fake = build_from_callable(lambda t: 0.5 * t * t, label="parabola")
    got = asymptotic_limit(fake, tol=1e-9)
    assert got == pytest.approx(SQRT_8_OVER_PI, abs=1e-5)


def test_limit_vanishes_for_linear_phase():
    assert asymptotic_limit(build_linear(5), tol=1e-9) == pytest.approx(0.0, abs=1e-12)


def test_full_circle_matches_half_for_odd_phases():
    for phase in (build_sine(), build_blaschke([0.5])):
        assert full_circle_reference(phase, tol=1e-10) == pytest.approx(
            asymptotic_limit(phase, tol=1e-10), abs=1e-9
        )


def test_full_circle_is_rotation_invariant():
    """Rotating a Blaschke zero must not move the conjectured limit."""
    base = full_circle_reference(build_blaschke([0.5]), tol=1e-10)
    for angle in (0.3, 1.2, 2.0):
        z = 0.5 * complex(math.cos(angle), math.sin(angle))
        rotated = full_circle_reference(build_blaschke_general([z]), tol=1e-10)
        assert rotated == pytest.approx(base, abs=1e-8)


# ---------------------------------------------------------------------------
# Convergence study
# ---------------------------------------------------------------------------


def test_study_errors_decrease():
    report = convergence_study(build_sine(), [50.0, 100.0, 200.0])
    errs = report.errors()
    assert errs[0] > errs[1] > errs[2] > 0.0
    assert report.limit == pytest.approx(L_SINE, abs=1e-9)
    assert report.phase_label == "-(sine)"
    for row in report.rows:
        assert row.parseval_defect < 1e-9
        assert math.isfinite(row.tail_bound)
        total = row.external_sum + row.periphery_sum + row.central_sum
        assert total == pytest.approx(row.scaled_norm * math.sqrt(row.param), rel=1e-12)


def test_study_threading_invariance():
    seq = convergence_study(build_sine(), [40.0, 80.0], threads=1)
    par = convergence_study(build_sine(), [40.0, 80.0], threads=2)
    assert seq.rows == par.rows


def test_study_accepts_real_ladder_for_winding_zero():
    report = convergence_study(build_sine(), [50.5, 120.25])
    assert report.rows[0].param == 50.5


@pytest.mark.parametrize(
    "params",
    [[], [100.0, 50.0], [1.0, 50.0], [100.0, 100.0]],
    ids=["empty", "decreasing", "below-two", "stalled"],
)
def test_study_rejects_bad_ladders(params):
    with pytest.raises(DomainError):
        convergence_study(build_sine(), params)


def test_study_rejects_real_ladder_for_nonzero_winding():
    with pytest.raises(DomainError, match="winding"):
        convergence_study(build_blaschke([0.5]), [50.5, 100.0])


def test_study_rejects_invalid_phase():
    with pytest.raises(WnlError, match="validation"):
        convergence_study(build_linear(2), [50.0, 100.0])


def test_report_csv_and_json(tmp_path):
    report = convergence_study(build_sine(), [50.0, 100.0])
    csv_path = tmp_path / "study.csv"
    json_path = tmp_path / "study.json"
    report.to_csv(csv_path)
    report.to_json(json_path)
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("# phase_label=-(sine) limit=")
    assert lines[1] == "param,scaled_norm,abs_err,external_sum,periphery_sum,central_sum"
    assert len(lines) == 4
    first = lines[2].split(",")
    assert float(first[0]) == 50.0
    assert float(first[1]) == report.rows[0].scaled_norm
    payload = json.loads(json_path.read_text())
    assert payload["phase_label"] == "-(sine)"
    assert payload["limit"] == report.limit
    assert len(payload["rows"]) == 2
    assert payload["rows"][1]["param"] == 100.0
    assert set(payload["rows"][0]) == {
        "param",
        "scaled_norm",
        "abs_err",
        "external_sum",
        "periphery_sum",
        "central_sum",
    }


def test_default_thread_count_env(monkeypatch):
    monkeypatch.setenv("WNL_THREADS", "3")
    assert default_thread_count() == 3
    monkeypatch.setenv("WNL_THREADS", "1")
    assert default_thread_count() == 1


# ---------------------------------------------------------------------------
# Riemann-sum closing pieces
# ---------------------------------------------------------------------------


def test_truncated_riemann_converges():
    """Dropping j = 0, 1 leaves a sum converging to the full integral of
    1/sqrt(u) on [0, 1], which is 2."""
    f = lambda u: 1.0 / np.sqrt(u)
    vals = [truncated_riemann(f, 0.0, 1.0, n) for n in (100, 10_000, 1_000_000)]
    errs = [abs(v - 2.0) for v in vals]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 3e-3


def test_truncated_riemann_guards():
    f = lambda u: np.asarray(u)
    with pytest.raises(DomainError):
        truncated_riemann(f, 0.0, 1.0, 1)
    with pytest.raises(DomainError):
        truncated_riemann(f, 1.0, 1.0, 10)
    with np.errstate(invalid="ignore", divide="ignore"):
        with pytest.raises(DomainError):
            truncated_riemann(lambda u: 1.0 / np.sqrt(u - 0.5), 0.0, 1.0, 10)


@given(d=st.floats(0.05, 1.2))
@settings(max_examples=25, deadline=None)
def test_riemann_edge_sum_scales_linearly(d):
    """The edge-strip sum is O(d) uniformly in n; the constant here is
    crude but the linear scaling is the claim that matters."""
    val = riemann_sum_bound_check(build_sine(), 4000, d)
    assert val <= 3.0 * d


def test_riemann_edge_sum_guards():
    with pytest.raises(DomainError):
        riemann_sum_bound_check(build_sine(), 4000, 0.0)
    with pytest.raises(DomainError):
        riemann_sum_bound_check(build_sine(), 4000, 2.0)


def test_final_step_report_tracks_limit():
    report = final_step_report(build_sine(), 6400, eps=0.1)
    assert report.edge_left >= 0.0 and report.edge_right >= 0.0
    assert report.middle > 0.0
    assert 0.0 < report.limit_piece < L_SINE
    # middle tracks its limit piece to a few percent at this scale
    assert report.middle == pytest.approx(report.limit_piece, rel=0.08)


def test_final_step_report_eps_too_small():
    with pytest.raises(DomainError, match="eps"):
        final_step_report(build_sine(), 400, eps=0.1)
