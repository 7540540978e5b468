"""Randomized invariants: regularity, linearity, normalization, eigenpairs."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cesaro.climits import cesaro_limit, classical_limit
from cesaro.config import DEFAULT_CONFIG
from cesaro.operators import (MeasureScheme, apply_P, apply_P_D,
                              apply_P_D_inverse, apply_P_mu,
                              build_regular_polynomial)
from cesaro.seqfun import PiecewiseFn, alt_ones, psum_function
from cesaro.zeta import discrete_eigensequence

FAST = DEFAULT_CONFIG.with_(horizon=2 * 10 ** 4)

finite = st.floats(min_value=-5.0, max_value=5.0,
                   allow_nan=False, allow_infinity=False)


def _power_fn(rho):
    return PiecewiseFn.from_callable(
        lambda x, p=rho: np.asarray(x, dtype=float) ** p,
        closed_cumulative=lambda X, p=rho: X ** (p + 1) / (p + 1),
        label=f"x^{rho}")


def _convergent_fn(L, c1, c2):
    def fn(x):
        x = np.asarray(x, dtype=float)
        return L + c1 / (1.0 + x) + c2 * np.exp(-x)
    return PiecewiseFn.from_callable(fn, label="convergent")


# -- regularity: averaging never moves an existing limit -------------------

@settings(max_examples=25, deadline=None)
@given(L=finite, c1=finite, c2=finite)
def test_P_preserves_classical_limits(L, c1, c2):
    g = apply_P(_convergent_fn(L, c1, c2))
    x = 2.0 * 10 ** 3
    # the average of L + O(1/x) converges like ln(x)/x
    slack = (abs(c1) + abs(c2) + 1.0) * 20.0 * math.log(x) / x
    assert abs(g.value(x) - L) <= slack + 1e-9


@settings(max_examples=25, deadline=None)
@given(L=finite, c=finite)
def test_P_D_preserves_sequence_limits(L, c):
    n = 4000
    a = [L + c / (k * k) for k in range(1, n + 1)]
    avg = apply_P_D(a)
    # sum of c/k^2 is bounded, so the running mean misses L by O(1/n)
    assert abs(avg[-1] - L) <= (abs(c) * 2.0 + 1e-9) / n + 1e-12


@settings(max_examples=15, deadline=None)
@given(rho=st.floats(min_value=0.25, max_value=3.0, allow_nan=False))
def test_P_mu_unit_weight_matches_P(rho):
    scheme = MeasureScheme(lambda x: np.ones_like(np.asarray(x, float)),
                           F_mu=lambda X: X, label="unit")
    # no closed cumulative: both operators then share the quadrature path
    # and the comparison isolates the operator identity itself
    f = PiecewiseFn.from_callable(
        lambda x, p=rho: np.asarray(x, dtype=float) ** p, label=f"x^{rho}")
    x = 37.5
    assert apply_P_mu(f, scheme).value(x) == pytest.approx(
        apply_P(f).value(x), rel=1e-12)


@settings(max_examples=15, deadline=None)
@given(L=finite)
def test_P_mu_linear_weight_preserves_constants(L):
    scheme = MeasureScheme(lambda x: np.asarray(x, float),
                           F_mu=lambda X: X * X / 2.0, label="t")
    f = _convergent_fn(L, 0.0, 0.0)
    assert apply_P_mu(f, scheme).value(50.0) == pytest.approx(L, abs=1e-8)


# -- linearity --------------------------------------------------------------

@settings(max_examples=10, deadline=None)
@given(alpha=finite, beta=finite)
def test_limit_is_linear(alpha, beta):
    # alpha * (partial sums of 1-1+1-...) + beta has limit alpha/2 + beta
    base = psum_function(alt_ones())
    f = PiecewiseFn.linear_combination(
        [(alpha, base),
         (beta, _convergent_fn(1.0, 0.0, 0.0))])
    res = cesaro_limit(f, None, FAST)
    assert complex(res.limit).real == pytest.approx(alpha / 2.0 + beta,
                                                    abs=1e-6)


@settings(max_examples=20, deadline=None)
@given(L1=finite, L2=finite, a=finite, b=finite)
def test_classical_limit_linearity(L1, L2, a, b):
    f = PiecewiseFn.linear_combination(
        [(a, _convergent_fn(L1, 1.0, 0.0)), (b, _convergent_fn(L2, 0.0, 1.0))])
    # the 1/(1+x) tail needs the full horizon to fall below the raw
    # variation threshold when |a| is at the top of its range
    assert classical_limit(f, DEFAULT_CONFIG) == pytest.approx(
        a * L1 + b * L2, abs=1e-6)


# -- normalization of the annihilating polynomial ---------------------------

lam = st.fractions(min_value=Fraction(-3), max_value=Fraction(3)).filter(
    lambda q: q != 1)


@settings(max_examples=100, deadline=None)
@given(factors=st.lists(st.tuples(lam, st.integers(1, 3)),
                        min_size=1, max_size=4),
       pure=st.integers(0, 3))
def test_regular_polynomial_unit_at_one(factors, pure):
    q = build_regular_polynomial(factors, pure_power=pure)
    assert q.eval_scalar(1) == 1
    assert q.degree == pure + sum(m for _, m in factors)


# -- eigen relations --------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(rho=st.floats(min_value=0.2, max_value=4.0, allow_nan=False),
       x=st.floats(min_value=5.0, max_value=200.0, allow_nan=False))
def test_power_eigenfunction_residual(rho, x):
    g = apply_P(_power_fn(rho))
    want = x ** rho / (rho + 1.0)
    assert abs(g.value(x) - want) <= 1e-8 * max(1.0, abs(want))


@settings(max_examples=50, deadline=None)
@given(m=st.integers(0, 6), length=st.integers(20, 60))
def test_binomial_eigensequence_exact(m, length):
    v = discrete_eigensequence(m, "exact-binomial", length=length)
    assert apply_P_D_inverse(v) == [(m + 1) * x for x in v]


@settings(max_examples=50, deadline=None)
@given(a=st.lists(st.fractions(min_value=Fraction(-50), max_value=Fraction(50)),
                  min_size=2, max_size=30))
def test_discrete_average_round_trip(a):
    assert apply_P_D_inverse(apply_P_D(a)) == a


@settings(max_examples=30, deadline=None)
@given(length=st.integers(10, 80))
def test_harmonic_eigensequence_shift(length):
    v = discrete_eigensequence(0, "generalised-harmonic", length=length)
    assert apply_P_D_inverse(v)[1:] == [x + 1 for x in v][1:]
