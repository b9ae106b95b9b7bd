import math
import os
import subprocess

import pytest

import ldcm


def test_dregular_rate_agrees_three_ways():
    half_log2 = 0.5 * math.log(2.0)
    assert ldcm.rate_d_regular(3, 0.5) == pytest.approx(half_log2, abs=1e-12)
    assert ldcm.rate_component_degree({3: 1.0}, {3: 0.5}).I1 == pytest.approx(half_log2, abs=1e-12)
    assert ldcm.cost_closed_form(0.0, {3: 1.0}, 0.0, {3: 0.5}) == pytest.approx(half_log2, abs=1e-12)


def test_quadrature_matches_closed_form():
    closed = ldcm.cost_closed_form(1.0, {3: 1.0}, 0.5, {3: 0.5})
    quad = ldcm.minimizer_cost_quadrature(1.0, {3: 1.0}, 0.5, {3: 0.5})
    assert abs(closed - quad) < 1e-8
    beta, case = ldcm.beta_general(1.0, {3: 1.0}, 0.5, {3: 0.5})
    assert beta == pytest.approx(0.5218479361478246, abs=1e-12)
    assert case == "case_ii"


def test_lln_quantities():
    p = {1: 0.5, 3: 0.5}
    assert ldcm.survival_rho(p) == pytest.approx(1.0 / 3.0, abs=1e-10)
    assert ldcm.giant_fraction(p) == pytest.approx(22.0 / 27.0, abs=1e-12)
    path = ldcm.lln_path(p, [i / 100 for i in range(101)])
    assert len(path["t"]) == 101
    assert path["zeta"][0][1] == 0.5


def test_errors_are_typed():
    with pytest.raises(ldcm.FeasibilityError):
        ldcm.rate_component_degree({3: 1.0}, {3: 0.5, 4: 0.1})
    with pytest.raises(ldcm.Error):
        ldcm.rate_d_regular(2, 0.5)


def test_estimate_is_deterministic_across_workers():
    a = ldcm.estimate_event_prob({3: 1.0}, 12, {3: 0.5}, 0.01, 2000, 7, workers=1)
    b = ldcm.estimate_event_prob({3: 1.0}, 12, {3: 0.5}, 0.01, 2000, 7, workers=4)
    assert a == b
    assert 0.0 < a.p_hat < 1.0


def test_components_cover_all_vertices():
    sizes = ldcm.components([1, 1, 2, 3, 3], seed=3)
    assert sum(sizes) == 5


@pytest.mark.skipif(not os.environ.get("LDCM_CLI"), reason="CLI path not provided")
def test_cli_rate():
    out = subprocess.run([os.environ["LDCM_CLI"], "rate", "dreg", "--D", "3", "--q", "0.5"],
                         capture_output=True, text=True, check=True).stdout
    assert "rate 0.3465736" in out
