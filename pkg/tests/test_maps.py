import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from sepscope.bipartite import partial_transpose
from sepscope.exceptions import ValidationError
from sepscope.maps import (
    criterion_report,
    dual_lambda_inverse,
    dual_lambda_map,
    gamma,
    gamma_inverse,
    lambda_inverse,
    lambda_map,
    map_criterion,
    symmetric_inverse,
    symmetric_map,
)
from sepscope.states import random_density, random_separable, werner
from sepscope.verdict import Criterion

shapes = st.sampled_from([(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)])
seeds = st.integers(0, 10_000)


def test_gamma_on_qubit_is_spin_flip():
    sy = np.array([[0, -1j], [1j, 0]])
    rho = oracles.ginibre_state(2, 5)
    assert np.allclose(gamma(rho), sy @ rho.T @ sy)


def test_gamma_inverse_round_trip():
    x = oracles.ginibre_state(4, 2)
    assert np.allclose(gamma_inverse(gamma(x)), x)
    assert np.allclose(gamma(gamma_inverse(x)), x)
    with pytest.raises(ValidationError):
        gamma_inverse(np.ones((1, 1)))


@settings(max_examples=40, deadline=None)
@given(seeds, shapes)
def test_lifts_match_basis_expansion(seed, shape):
    da, db = shape
    m = oracles.ginibre_state(da * db, seed)
    assert np.allclose(lambda_map(m, shape), oracles.lambda_map(m, da, db))
    assert np.allclose(dual_lambda_map(m, shape), oracles.dual_lambda_map(m, da, db))
    assert np.allclose(symmetric_map(m, shape), oracles.symmetric_map(m, da, db))


@settings(max_examples=40, deadline=None)
@given(seeds, shapes)
def test_closed_forms(seed, shape):
    da, db = shape
    m = oracles.ginibre_state(da * db, seed)
    ra = oracles.partial_trace(m, da, db, "B")
    rb = oracles.partial_trace(m, da, db, "A")
    ia, ib = np.eye(da), np.eye(db)
    assert np.allclose(lambda_map(m, shape), np.kron(ia, rb) - m)
    assert np.allclose(dual_lambda_map(m, shape), np.kron(ra, ib) - m)
    assert np.allclose(symmetric_map(m, shape), np.eye(da * db) - np.kron(ra, ib) - np.kron(ia, rb) + m)


@settings(max_examples=40, deadline=None)
@given(seeds, shapes)
def test_traces(seed, shape):
    da, db = shape
    m = oracles.ginibre_state(da * db, seed)
    assert np.isclose(np.trace(lambda_map(m, shape)), da - 1)
    assert np.isclose(np.trace(dual_lambda_map(m, shape)), db - 1)
    assert np.isclose(np.trace(symmetric_map(m, shape)), (da - 1) * (db - 1))


@settings(max_examples=40, deadline=None)
@given(seeds, shapes)
def test_inverses(seed, shape):
    m = oracles.ginibre_state(shape[0] * shape[1], seed)
    assert np.allclose(lambda_inverse(lambda_map(m, shape), shape), m, atol=1e-12)
    assert np.allclose(dual_lambda_inverse(dual_lambda_map(m, shape), shape), m, atol=1e-12)
    assert np.allclose(symmetric_inverse(symmetric_map(m, shape), shape), m, atol=1e-12)


def test_inverses_need_nontrivial_factor():
    m = np.eye(3) / 3
    with pytest.raises(ValidationError):
        lambda_inverse(m, (1, 3))
    with pytest.raises(ValidationError):
        symmetric_inverse(m, (1, 3))
    with pytest.raises(ValidationError):
        dual_lambda_inverse(m, (3, 1))


@settings(max_examples=60, deadline=None)
@given(seeds, shapes)
def test_product_states_map_to_psd(seed, shape):
    da, db = shape
    m = oracles.separable_mixture(da, db, 1, seed)
    for f in (lambda_map, dual_lambda_map, symmetric_map):
        assert np.linalg.eigvalsh(f(m, shape))[0] >= -1e-12


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from([2, 3, 4]))
def test_lambda_spectrum_equals_partial_transpose_for_qubit_a(seed, n):
    rho = random_density(2, n, seed=seed)
    a = np.linalg.eigvalsh(lambda_map(rho))
    b = np.linalg.eigvalsh(partial_transpose(rho, over="A"))
    assert np.allclose(a, b, atol=1e-12)


def test_werner_lambda_spectrum():
    x = 0.6
    w = np.linalg.eigvalsh(lambda_map(werner(x)))
    assert np.allclose(w, sorted([(1 - 3 * x) / 4] + [(1 + x) / 4] * 3))


def test_map_criterion_rejects_conditional_names():
    with pytest.raises(ValidationError):
        map_criterion(werner(0.1), Criterion.SPECTRAL_CONDITIONAL)


def test_report_subset_and_lookup():
    rep = criterion_report(werner(0.9), criteria=["Lambda", "SpectralConditional"])
    assert [v.criterion for v in rep.verdicts] == [Criterion.LAMBDA, Criterion.SPECTRAL_CONDITIONAL]
    assert rep.certified_inseparable
    assert rep["Lambda"].statistic == pytest.approx((1 - 2.7) / 4)
    assert set(rep.failing()) == {Criterion.LAMBDA, Criterion.SPECTRAL_CONDITIONAL}
    with pytest.raises(KeyError):
        rep[Criterion.SYMMETRIC]


def test_report_on_separable_passes():
    rep = criterion_report(random_separable(3, 3, 5, seed=1))
    assert not rep.certified_inseparable
    assert rep.failing() == []


def test_tolerance_is_respected():
    # min eigenvalue of lambda at x slightly above 1/3 is about -1e-7
    rho = werner(1 / 3 + 4e-7 / 3)
    assert not map_criterion(rho, "Lambda", tol=1e-9).passes
    assert map_criterion(rho, "Lambda", tol=1e-6).passes
