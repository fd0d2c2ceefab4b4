import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from chaoswpt.analytic import (
    FAMILIES,
    ClosedFormInputs,
    PdfOracle,
    beta_crossover,
    closed_form_inputs,
    make_oracle,
    oracle_cdf,
    oracle_moment,
    oracle_normalization,
    papr_analytic,
    pdf_eval,
    z_with_correlator,
    z_without_correlator,
)
from chaoswpt.harvester import EhCircuit


def test_inputs_validation():
    ClosedFormInputs(beta=1, r=1.0, alpha=2.0, rho1=0.17, rho2=0.0)
    with pytest.raises(ValueError):
        ClosedFormInputs(beta=0, r=1.0, alpha=2.0, rho1=0.17, rho2=957.25)
    with pytest.raises(ValueError):
        ClosedFormInputs(beta=1, r=-1.0, alpha=2.0, rho1=0.17, rho2=957.25)
    with pytest.raises(ValueError):
        ClosedFormInputs(beta=1, r=1.0, alpha=2.0, rho1=0.0, rho2=957.25)
    with pytest.raises(ValueError):
        ClosedFormInputs(beta=1, r=1.0, alpha=2.0, rho1=0.17, rho2=-1.0)


def test_papr_analytic_values():
    assert papr_analytic("bypass", 1) == 2.0
    assert papr_analytic("bypass", 100) == 2.0
    assert papr_analytic("full", 1) == 4.0
    assert papr_analytic("full", 10) == 40.0
    assert papr_analytic("full", 256) == 1024.0
    with pytest.raises(ValueError):
        papr_analytic("sideways", 4)
    with pytest.raises(ValueError):
        papr_analytic("full", 0)


def _inputs(beta, r, circuit=None):
    return closed_form_inputs(circuit or EhCircuit(), beta, r, 4.0)


def test_harvest_closed_forms_frozen():
    # unit path gain, default circuit
    assert z_with_correlator(_inputs(1, 1.0)) == pytest.approx(5743.67, rel=1e-12)
    assert z_without_correlator(_inputs(1, 1.0)) == pytest.approx(1436.045, rel=1e-12)
    # r = 20 → gain 6.25e-6
    assert z_with_correlator(_inputs(1, 20.0)) == pytest.approx(
        1.28685546875e-06, rel=1e-12
    )
    assert z_without_correlator(_inputs(16, 20.0)) == pytest.approx(
        1.7897421875e-05, rel=1e-12
    )
    assert z_without_correlator(_inputs(4, 20.0)) == pytest.approx(
        4.47435546875e-06, rel=1e-12
    )
    assert z_with_correlator(_inputs(100, 30.0)) == pytest.approx(
        0.00019606767261088248, rel=1e-12
    )


def test_single_symbol_branch_is_not_the_generic_formula():
    # at beta=1 the correlated form keeps the exact fourth-moment constant (6),
    # not the asymptotic 12 the generic branch would give
    exact = z_with_correlator(_inputs(1, 20.0))
    g = 20.0**-4.0
    generic = g * 0.17 + 12.0 * g * g * 957.25
    assert exact < generic
    assert exact == pytest.approx(g * 0.17 + 6.0 * g * g * 957.25, rel=1e-12)


@given(st.integers(1, 300), st.floats(1.0, 100.0), st.floats(2.0, 6.0))
@settings(max_examples=100)
def test_linear_rectifier_makes_both_links_equal(beta, r, alpha):
    circuit = EhCircuit(k2=0.0034, k4=0.0, r_ant=50.0, p_t=1.0)
    ci = closed_form_inputs(circuit, beta, r, alpha)
    assert z_with_correlator(ci) == pytest.approx(z_without_correlator(ci), rel=1e-12)


def test_beta_crossover_frozen():
    bound = beta_crossover(30.0, 20.0, 4.0, 0.17, 957.25)
    assert bound == pytest.approx(51.90268614622781, rel=1e-12)
    assert 51.0 < bound < 52.5


def test_beta_crossover_equal_distances():
    # gains cancel: bound = 1.5/12 regardless of geometry
    assert beta_crossover(10.0, 10.0, 4.0, 0.17, 957.25) == pytest.approx(0.125)
    assert beta_crossover(7.0, 7.0, 2.0, 1.0, 2.0) == pytest.approx(0.125)


def test_beta_crossover_consistency_with_closed_forms():
    bound = beta_crossover(30.0, 20.0, 4.0, 0.17, 957.25)
    above = math.ceil(bound)  # 52
    below = above - 1  # 51
    assert z_with_correlator(_inputs(above, 30.0)) >= z_without_correlator(
        _inputs(above, 20.0)
    )
    assert z_with_correlator(_inputs(below, 30.0)) < z_without_correlator(
        _inputs(below, 20.0)
    )


def test_beta_crossover_validation():
    with pytest.raises(ValueError):
        beta_crossover(0.0, 20.0, 4.0, 0.17, 957.25)
    with pytest.raises(ValueError):
        beta_crossover(30.0, 20.0, 4.0, 0.17, 0.0)
    with pytest.raises(ValueError):
        beta_crossover(30.0, -20.0, 4.0, 0.17, 957.25)


@given(
    st.floats(5.0, 80.0),
    st.floats(5.0, 80.0),
    st.floats(2.0, 5.0),
    st.floats(0.01, 1.0),
    st.floats(1.0, 2000.0),
)
@settings(max_examples=200)
def test_crossover_bound_property(r_c, r_nc, alpha, rho1, rho2):
    bound = beta_crossover(r_c, r_nc, alpha, rho1, rho2)
    assume(bound > 1.0)  # the beta=1 branch has its own constant
    beta_star = math.ceil(bound)
    circuit = EhCircuit(k2=rho1, k4=rho2, r_ant=1.0, p_t=1.0)
    z_c = z_with_correlator(closed_form_inputs(circuit, beta_star, r_c, alpha))
    z_nc = z_without_correlator(closed_form_inputs(circuit, beta_star, r_nc, alpha))
    assert z_c >= z_nc * (1.0 - 1e-9)


# ---------------------------------------------------------------------------
# Reference distributions
# ---------------------------------------------------------------------------


def test_oracle_fields():
    assert FAMILIES == ("S_b1", "Z_b1", "P_b1", "S_clt", "Delta_b1", "Theta_b1")
    atoms = {f: make_oracle(f, beta=4 if f == "S_clt" else None).atom_at_zero
             for f in FAMILIES}
    assert atoms == {
        "S_b1": 0.5,
        "Z_b1": 0.5,
        "P_b1": 0.5,
        "S_clt": 0.5,
        "Delta_b1": 0.0,
        "Theta_b1": 0.0,
    }
    assert make_oracle("S_b1").support == (-math.inf, math.inf)
    assert make_oracle("S_clt", beta=9).support == (-math.inf, math.inf)
    assert make_oracle("Z_b1").support == (0.0, math.inf)
    assert make_oracle("Theta_b1").support == (0.0, math.inf)


def test_oracle_validation():
    with pytest.raises(ValueError):
        make_oracle("W_b1")
    with pytest.raises(ValueError):
        make_oracle("S_clt")  # spreading factor required
    with pytest.raises(ValueError):
        make_oracle("S_clt", beta=1)  # asymptotic law needs beta >= 2
    with pytest.raises(ValueError):
        make_oracle("Z_b1", beta=5)  # single-symbol law only
    make_oracle("Z_b1", beta=1)
    with pytest.raises(ValueError):
        PdfOracle(family="S_b1", atom_at_zero=1.5)


def test_pdf_frozen_values():
    # each verified against the erf-form antiderivatives
    assert pdf_eval(make_oracle("S_b1"), 0.0) == pytest.approx(
        0.14104739588693907, rel=1e-14
    )
    assert pdf_eval(make_oracle("Z_b1"), 1.0) == pytest.approx(
        0.10984782236693061, rel=1e-14
    )
    assert pdf_eval(make_oracle("P_b1"), 1.0) == pytest.approx(
        0.054923911183465304, rel=1e-14
    )
    assert pdf_eval(make_oracle("Delta_b1"), 1.0) == pytest.approx(
        0.24197072451914337, rel=1e-14
    )
    assert pdf_eval(make_oracle("Theta_b1"), 2.0) == pytest.approx(
        0.05188843717757435, rel=1e-14
    )
    assert pdf_eval(make_oracle("S_clt", beta=4), 0.0) == pytest.approx(0.125)
    assert pdf_eval(make_oracle("S_clt", beta=4), 1.0) == pytest.approx(
        0.07581633246407918, rel=1e-14
    )


def test_pdf_outside_support_is_zero():
    assert pdf_eval(make_oracle("Z_b1"), -1.0) == 0.0
    assert pdf_eval(make_oracle("P_b1"), -0.5) == 0.0
    assert pdf_eval(make_oracle("Delta_b1"), -2.0) == 0.0
    assert pdf_eval(make_oracle("Delta_b1"), 1.0) > 0.0


def test_pdf_singular_families_reject_origin():
    for family in ("Z_b1", "P_b1", "Delta_b1", "Theta_b1"):
        with pytest.raises(ValueError):
            pdf_eval(make_oracle(family), 0.0)
    # the two-sided laws are finite there
    assert pdf_eval(make_oracle("S_b1"), 0.0) > 0.0


def test_cdf_frozen_values():
    assert oracle_cdf(make_oracle("Z_b1"), 0.0) == pytest.approx(0.5)
    assert oracle_cdf(make_oracle("S_b1"), 0.0) == pytest.approx(0.75)
    assert oracle_cdf(make_oracle("S_b1"), -1e-4) == pytest.approx(
        0.24998589526042306, rel=1e-12
    )
    assert oracle_cdf(make_oracle("Delta_b1"), 0.0) == pytest.approx(0.0, abs=1e-15)


@given(st.sampled_from(FAMILIES), st.floats(-30.0, 60.0), st.floats(0.0, 30.0))
@settings(max_examples=200)
def test_cdf_is_monotone_and_bounded(family, x, step):
    beta = 4 if family == "S_clt" else None
    oracle = make_oracle(family, beta=beta)
    lo = float(oracle_cdf(oracle, x))
    hi = float(oracle_cdf(oracle, x + step))
    assert 0.0 <= lo <= hi <= 1.0


def test_cdf_limits():
    for family in FAMILIES:
        beta = 4 if family == "S_clt" else None
        oracle = make_oracle(family, beta=beta)
        assert oracle_cdf(oracle, 1e6) == pytest.approx(1.0, abs=1e-9)
        assert oracle_cdf(oracle, -1e6) == pytest.approx(0.0, abs=1e-9)


def test_normalization_targets():
    targets = {
        "S_b1": 0.5,
        "Z_b1": 0.5,
        "P_b1": 0.5,
        "S_clt": 0.5,
        "Delta_b1": 1.0,
        "Theta_b1": 1.0,
    }
    for family, target in targets.items():
        beta = 4 if family == "S_clt" else None
        oracle = make_oracle(family, beta=beta)
        assert oracle_normalization(oracle) == pytest.approx(target, abs=1e-9)


def test_moment_targets():
    cases = [
        ("S_b1", None, 2, 1.0),
        ("S_b1", None, 4, 6.0),
        ("Z_b1", None, 1, 1.0),
        ("Z_b1", None, 2, 6.0),
        ("P_b1", None, 1, 6.0),
        ("S_clt", 4, 2, 4.0),
        ("S_clt", 4, 4, 192.0),
        ("S_clt", 25, 2, 25.0),
        ("S_clt", 25, 4, 7500.0),
        ("Delta_b1", None, 1, 1.0),
        ("Delta_b1", None, 2, 3.0),
        ("Theta_b1", None, 1, 1.5),
    ]
    for family, beta, order, target in cases:
        oracle = make_oracle(family, beta=beta)
        got = oracle_moment(oracle, order)
        assert got == pytest.approx(target, rel=1e-9), (family, order)


def test_moment_order_validation():
    oracle = make_oracle("Z_b1")
    with pytest.raises(ValueError):
        oracle_moment(oracle, 0)
    with pytest.raises(ValueError):
        oracle_moment(oracle, -1)
    with pytest.raises(ValueError):
        oracle_moment(oracle, 1.5)
