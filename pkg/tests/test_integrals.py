"""Regularized integrals, endpoint analysis, and the Mellin showcase."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from cesaro.asymptotics import AsymptoticExpansion, ExpansionTerm
from cesaro.config import DEFAULT_CONFIG
from cesaro.errors import (FitFailureError, IllegalCancellationError,
                           PoleSignal, is_pole)
from cesaro.integrals import (DomainSpec, SingularPoint, cesaro_integral,
                              fit_endpoint_expansion, mellin_1_over_1px)

CFG = DEFAULT_CONFIG

BOTH_ENDS = DomainSpec(points=(SingularPoint(kind="zero"),
                               SingularPoint(kind="infinity")))


def _classical(f):
    v1, _ = quad(f, 0, 1, limit=200, epsabs=1e-12, epsrel=1e-11)
    v2, _ = quad(f, 1, np.inf, limit=200, epsabs=1e-12, epsrel=1e-11)
    return v1 + v2


def test_spec_validation():
    with pytest.raises(ValueError):
        SingularPoint(kind="edge")
    with pytest.raises(ValueError):
        SingularPoint(kind="interior")
    with pytest.raises(ValueError):
        SingularPoint(kind="zero", z0=1.0)
    with pytest.raises(ValueError):
        DomainSpec(points=(SingularPoint(kind="infinity"),
                           SingularPoint(kind="zero")))
    with pytest.raises(ValueError):
        DomainSpec(points=(SingularPoint(kind="interior", z0=3.0),
                           SingularPoint(kind="interior", z0=1.0)))


def test_classical_function_no_declared_points():
    out = cesaro_integral(lambda x: math.exp(-x), DomainSpec(points=()), CFG)
    assert out.value == pytest.approx(1.0, abs=1e-9)
    assert out.cutoff_variables == 1
    assert out.log_flags == ()


def test_classical_function_with_declared_endpoints():
    out = cesaro_integral(lambda x: math.exp(-x), BOTH_ENDS, CFG)
    assert out.value == pytest.approx(1.0, abs=1e-8)
    assert out.log_flags == ()


@pytest.mark.parametrize("seed", range(20))
def test_random_absolutely_integrable_matches_classical(seed):
    rng = np.random.default_rng(1000 + seed)
    a = rng.uniform(0.5, 3.0)
    b = rng.uniform(0.5, 2.0)
    c = rng.uniform(-2.0, 2.0)
    p = rng.uniform(1.6, 3.0)
    d = rng.uniform(-1.0, 1.0)
    w = rng.uniform(0.5, 4.0)

    def f(x):
        return (a * math.exp(-b * x) + c / (1.0 + x) ** p
                + d * math.exp(-x) * math.sin(w * x))

    out = cesaro_integral(f, DomainSpec(points=()), CFG)
    assert out.value == pytest.approx(_classical(f), abs=1e-6)


def test_power_divergence_at_infinity_is_discarded():
    # integral of 1 up to X is X: pure power divergence, finite part 0
    spec = DomainSpec(points=(SingularPoint(kind="infinity",
                                            fit_exponents=(1.0,)),))
    out = cesaro_integral(lambda x: 1.0, spec, CFG)
    assert abs(out.value) < 1e-6
    assert out.per_endpoint and out.per_endpoint[0][1]
    assert out.log_flags == ()


def test_one_over_x_flags_logs_at_both_ends():
    out = cesaro_integral(lambda x: 1.0 / x, BOTH_ENDS, CFG)
    assert is_pole(out.value)
    assert set(out.log_flags) == {"zero", "infinity"}
    # independent cutoffs are forced once logs show up
    assert out.cutoff_variables == 2


def test_log_at_one_end_only():
    spec = DomainSpec(points=(SingularPoint(kind="infinity"),))
    out = cesaro_integral(lambda x: 1.0 / (1.0 + x), spec, CFG)
    assert is_pole(out.value)
    assert out.log_flags == ("infinity",)


def test_endpoint_log_flags_do_not_cancel_by_default():
    # (x-1)/(x(1+x)) has log coefficients -1 at zero and +1 at infinity;
    # per-endpoint analysis must flag both instead of settling on a value
    f = lambda x: (x - 1.0) / (x * (1.0 + x))
    out = cesaro_integral(f, BOTH_ENDS, CFG)
    assert is_pole(out.value)
    assert set(out.log_flags) == {"zero", "infinity"}


def test_strict_mode_raises_on_cancelling_logs():
    f = lambda x: (x - 1.0) / (x * (1.0 + x))
    with pytest.raises(IllegalCancellationError):
        cesaro_integral(f, BOTH_ENDS, CFG, strict_cutoffs=True)


def test_interior_two_sided_log_cancellation_strict():
    spec = DomainSpec(points=(SingularPoint(kind="interior", z0=2.0),))
    f = lambda x: math.exp(-x) / (x - 2.0)
    with pytest.raises(IllegalCancellationError):
        cesaro_integral(f, spec, CFG, strict_cutoffs=True)


def test_interior_integrable_singularity():
    spec = DomainSpec(points=(
        SingularPoint(kind="interior", z0=2.0,
                      fit_exponents=(-0.5, -1.5, -2.5)),))
    f = lambda x: math.exp(-x) / math.sqrt(abs(x - 2.0))
    out = cesaro_integral(f, spec, CFG)
    # oracle via u = sqrt|x-2|, which removes the singularity
    left, _ = quad(lambda u: 2.0 * math.exp(-(2.0 - u * u)), 0,
                   math.sqrt(2.0), limit=200, epsabs=1e-12)
    right, _ = quad(lambda u: 2.0 * math.exp(-(2.0 + u * u)), 0, 8.0,
                    limit=200, epsabs=1e-12)
    assert out.value == pytest.approx(left + right, abs=1e-7)


def test_strict_mode_counts_cutoff_variables():
    spec = DomainSpec(points=(
        SingularPoint(kind="interior", z0=2.0,
                      fit_exponents=(-0.5, -1.5, -2.5)),))
    f = lambda x: math.exp(-x) / math.sqrt(abs(x - 2.0))
    out = cesaro_integral(f, spec, CFG, strict_cutoffs=True)
    assert out.cutoff_variables == 4


def test_analytic_expansion_path():
    # integral_{1/X}^{1} x^{-2} dx = X - 1: declared expansion, finite part -1
    exp = AsymptoticExpansion((ExpansionTerm(1.0, 1.0, variable="X"),),
                              remainder_order=-1, variable="X")
    spec = DomainSpec(points=(SingularPoint(kind="zero", expansion=exp),
                              SingularPoint(kind="infinity")))
    out = cesaro_integral(lambda x: x ** -2.0, spec, CFG)
    # finite parts: -1 from the zero cutoff (anchored at 1) plus 1 from the
    # classical tail integral_1^inf x^-2 = 1
    assert out.value == pytest.approx(0.0, abs=1e-7)


def test_analytic_expansion_must_be_complete():
    exp = AsymptoticExpansion((ExpansionTerm(1.0, 2.0, variable="X"),),
                              remainder_order=-1, variable="X")
    spec = DomainSpec(points=(SingularPoint(kind="zero", expansion=exp),))
    with pytest.raises(FitFailureError):
        cesaro_integral(lambda x: x ** -2.0, spec, CFG)


# -- endpoint expansion fitting --------------------------------------------

def _samples(fn):
    xs = np.geomspace(10.0, 1e4, 16)
    return [(x, fn(x)) for x in xs]


def test_fit_endpoint_constant():
    exp = fit_endpoint_expansion(_samples(lambda X: 3.0 + 1.0 / X), [])
    assert complex(exp.constant).real == pytest.approx(3.0, abs=1e-8)
    # only decay terms may appear for a resolved endpoint
    assert all(complex(t.exponent).real < 0 for t in exp.terms)


def test_fit_endpoint_quadratic_model():
    exp = fit_endpoint_expansion(
        _samples(lambda X: X * X / 2.0 + 7.0), [2])
    assert complex(exp.constant).real == pytest.approx(7.0, abs=1e-6)
    lead = [t for t in exp.terms if complex(t.exponent).real == 2]
    assert lead and complex(lead[0].coeff).real == pytest.approx(0.5,
                                                                 abs=1e-9)


def test_fit_endpoint_rejects_unmodeled_log():
    with pytest.raises(FitFailureError):
        fit_endpoint_expansion(_samples(lambda X: math.log(X) + 1.0), [])


def test_fit_endpoint_input_validation():
    with pytest.raises(ValueError):
        fit_endpoint_expansion(_samples(lambda X: X)[:3], [1, 2])
    close = [(x, 1.0) for x in np.linspace(10, 20, 16)]
    with pytest.raises(ValueError):
        fit_endpoint_expansion(close, [])


# -- Mellin showcase -------------------------------------------------------

def test_mellin_value_at_half():
    v = mellin_1_over_1px(0.5, CFG)
    assert v == pytest.approx(math.pi, abs=1e-6)


def test_mellin_strip_matches_quadrature():
    for s in np.linspace(0.08, 0.92, 10):
        def g(x, s=s):
            return x ** (s - 1.0) / (1.0 + x)
        want = _classical(g)
        got = mellin_1_over_1px(float(s), CFG)
        assert got == pytest.approx(want, abs=1e-6)


def test_mellin_pole_set():
    for s in (-2, -1, 0, 1, 2):
        out = mellin_1_over_1px(float(s), CFG)
        assert isinstance(out, PoleSignal)
        assert out.residue == pytest.approx((-1.0) ** s, abs=1e-6)
    for s in (-1.5, -0.5, 0.5, 1.5):
        out = mellin_1_over_1px(s, CFG)
        assert not is_pole(out)


def test_mellin_reflection():
    for s in (0.3, 0.5, 0.7, 0.5 + 0.2j):
        lhs = complex(mellin_1_over_1px(s + 1, CFG))
        rhs = -complex(mellin_1_over_1px(s, CFG))
        assert lhs == pytest.approx(rhs, abs=1e-4)


def test_mellin_outside_strip_matches_reflection_formula():
    # continuation values agree with pi/sin(pi s) off the integers
    for s in (-1.5, -0.5, 1.5):
        want = math.pi / math.sin(math.pi * s)
        got = complex(mellin_1_over_1px(s, CFG)).real
        assert got == pytest.approx(want, abs=1e-4)
