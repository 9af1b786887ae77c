import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splicelab.grid import make_grid, map_from_function, translate
from splicelab.spaces import (WeightSpec, jensen_gap, lp_norm, make_probes,
                              norm_weighted, op_norm_lower, pair_norm,
                              weight_eval)


def test_weight_spec_validation():
    with pytest.raises(ValueError):
        WeightSpec(delta=0.0)
    with pytest.raises(ValueError):
        WeightSpec(delta=1.0)
    with pytest.raises(ValueError):
        WeightSpec(delta=0.5, p=2.0)
    with pytest.raises(ValueError):
        WeightSpec(delta=0.5, k=-1)
    WeightSpec(delta=0.5, k=0, p=3.0)


def test_weight_eval_even():
    spec = WeightSpec(delta=0.5)
    assert weight_eval(spec, -3.0) == weight_eval(spec, 3.0)
    assert weight_eval(spec, 0.0) == 1.0


def test_weighted_norm_against_closed_form():
    # u = e^{-t} on [0, inf): integral of (e^{0.5 t} e^{-t})^3 over t and s
    # is 2 pi / 1.5, so the (0, 3, 0.5)-norm is (4 pi / 3)^{1/3}
    g = make_grid(0.0, 40.0, 801, 16)
    u = map_from_function(g, lambda t, s: np.exp(-t))
    spec = WeightSpec(delta=0.5, k=0, p=3.0)
    expect = (4.0 * math.pi / 3.0) ** (1.0 / 3.0)
    assert norm_weighted(u, spec) == pytest.approx(expect, rel=1e-3)


def test_lp_norm_constant():
    g = make_grid(0.0, 2.0, 21, 8)
    u = map_from_function(g, lambda t, s: 1.0 + 0.0 * t)
    expect = (2.0 * 2.0 * math.pi) ** (1.0 / 3.0)
    assert lp_norm(u, 3.0) == pytest.approx(expect, rel=1e-12)


def test_norm_conventions_comparable():
    g = make_grid(0.0, 30.0, 601, 16)
    u = map_from_function(g, lambda t, s: np.exp(-0.9 * t) * np.cos(s))
    spec = WeightSpec(delta=0.5, k=1, p=3.0)
    a = norm_weighted(u, spec, convention="weight-first")
    b = norm_weighted(u, spec, convention="weighted-derivatives")
    assert 0.3 < a / b < 3.0
    with pytest.raises(ValueError):
        norm_weighted(u, spec, convention="other")


def test_overflow_guard():
    g = make_grid(0.0, 3000.0, 3001, 4)
    u = map_from_function(g, lambda t, s: 1.0 + 0.0 * t)
    with pytest.raises(OverflowError):
        norm_weighted(u, WeightSpec(delta=0.5, k=0, p=3.0))


@settings(max_examples=25, deadline=None)
@given(c=st.floats(min_value=-5.0, max_value=5.0,
                   allow_nan=False, allow_infinity=False),
       seed=st.integers(min_value=0, max_value=100))
def test_norm_homogeneity(c, seed):
    g = make_grid(0.0, 8.0, 41, 8)
    rng = np.random.default_rng(seed)
    vals = rng.normal(size=(41, 8, 1)) + 1j * rng.normal(size=(41, 8, 1))
    from splicelab.grid import DiscreteMap
    u = DiscreteMap(g, vals)
    spec = WeightSpec(delta=0.5, k=1, p=3.0)
    assert norm_weighted(c * u, spec) == pytest.approx(
        abs(c) * norm_weighted(u, spec), rel=1e-10, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100))
def test_norm_triangle_inequality(seed):
    g = make_grid(0.0, 8.0, 41, 8)
    rng = np.random.default_rng(seed)
    from splicelab.grid import DiscreteMap
    u = DiscreteMap(g, rng.normal(size=(41, 8, 1)))
    v = DiscreteMap(g, rng.normal(size=(41, 8, 1)))
    spec = WeightSpec(delta=0.5, k=0, p=3.0)
    assert (norm_weighted(u + v, spec)
            <= norm_weighted(u, spec) + norm_weighted(v, spec) + 1e-10)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=100))
def test_jensen_property(seed):
    g = make_grid(-4.0, 4.0, 41, 8)
    rng = np.random.default_rng(seed)
    q = np.linspace(0.0, 1.0, 7)
    F = rng.normal(size=(41, 8, 7))
    lhs, rhs = jensen_gap(F, g, q, 3.0)
    assert lhs <= rhs * (1.0 + 1e-12)


def test_jensen_equality_for_q_independent():
    g = make_grid(-4.0, 4.0, 41, 8)
    q = np.linspace(0.0, 1.0, 7)
    base = np.cos(np.linspace(0, 3, 41))[:, None] * np.ones((1, 8))
    F = np.repeat(base[:, :, None], 7, axis=2)
    lhs, rhs = jensen_gap(F, g, q, 3.0)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_pair_norm_psum():
    g = make_grid(0.0, 10.0, 101, 8)
    u = map_from_function(g, lambda t, s: np.exp(-t))
    spec = WeightSpec(delta=0.5, k=0, p=3.0)
    n = norm_weighted(u, spec)
    assert pair_norm((u, u), spec) == pytest.approx(2.0 ** (1.0 / 3.0) * n)


def test_probes_unit_norm_and_validation():
    g = make_grid(0.0, 20.0, 201, 8)
    spec = WeightSpec(delta=0.5, k=1, p=3.0)
    probes = make_probes(g, spec, seed=0)
    assert len(probes.maps) > 10
    for u in probes.maps[:5]:
        assert norm_weighted(u, spec) == pytest.approx(1.0, rel=1e-10)
    with pytest.raises(ValueError):
        make_probes(g, spec, gammas=(0.4,))


def test_op_norm_lower_identity_and_scaling():
    g = make_grid(0.0, 20.0, 201, 8)
    spec = WeightSpec(delta=0.5, k=1, p=3.0)
    probes = make_probes(g, spec, seed=1)
    assert op_norm_lower(lambda u: u, probes, spec, spec) == pytest.approx(1.0)
    assert op_norm_lower(lambda u: -2.5 * u, probes, spec, spec) \
        == pytest.approx(2.5, rel=1e-10)


def test_op_norm_lower_rejects_nonlinear():
    g = make_grid(0.0, 20.0, 201, 8)
    spec = WeightSpec(delta=0.5, k=1, p=3.0)
    probes = make_probes(g, spec, seed=1)

    def crooked(u):
        from splicelab.grid import DiscreteMap
        return DiscreteMap(u.grid, np.abs(u.values))

    with pytest.raises(ValueError):
        op_norm_lower(crooked, probes, spec, spec)


def test_translation_contracts_weighted_norm():
    # translation toward larger |t| loses exactly e^{-delta R} of the norm
    g = make_grid(0.0, 30.0, 301, 8)
    spec = WeightSpec(delta=0.5, k=0, p=3.0)
    u = map_from_function(g, lambda t, s: np.exp(-0.9 * t))
    from splicelab.grid import restrict
    R = 2.0
    v = restrict(translate(u, R), 0.0, 30.0 - R)
    assert norm_weighted(v, spec) <= math.exp(-0.5 * R) * norm_weighted(u, spec) * (1 + 1e-12)
