"""Limit drivers: classical, strong (pure averaging), and generalised.

A generalised limit is the classical limit of q(A)[f] for a regular
polynomial q in the averaging operator.  The drivers here classify
convergence by a scale-free tail-variation test, refine values by the tail
model fit, and record which divergent terms were removed so callers can
distinguish strong from generalised convergence.

The closed-form limit tables for the mixed coordinates k^delta * alpha^r and
x^delta * alpha^r (k the integer part, alpha the fractional part) live here
too, together with the discrete driver built on the running-average
operator and its asymptotic eigensequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .config import DEFAULT_CONFIG, LimitConfig, SNAP_RADIUS
from .errors import NotConvergentError, PoleSignal, is_pole
from .operators import (RegularPolynomial, apply_P, apply_regular_polynomial,
                        build_regular_polynomial)
from .asymptotics import AsymptoticExpansion, synthesize_annihilator
from .seqfun import PiecewiseFn
from .tailfit import (decade_variation, fit_limit, fit_limit_array,
                      fit_limit_nodes, snap_to_rational)

__all__ = [
    "CesaroResult",
    "classical_limit",
    "strong_cesaro_limit",
    "cesaro_limit",
    "clim_k_alpha",
    "clim_x_alpha",
    "cdlim_power",
    "cesaro_limit_discrete",
]

#: snap tolerance used when exact mode promotes a fitted float to a rational
EXACT_SNAP_TOL = 1e-7


@dataclass(frozen=True)
class CesaroResult:
    """Outcome of a limit computation.

    mechanism is "classical", "strong(r)", "generalised", or "pole".
    removed_terms stays empty for classical and strong results: strong
    convergence means no divergences were removed, only pure averaging.
    """

    limit: object
    mechanism: str
    q_used: Optional[RegularPolynomial] = None
    removed_terms: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_pole(self) -> bool:
        return is_pole(self.limit)


def _maybe_snap(value, cfg: LimitConfig):
    if not cfg.exact_mode or is_pole(value):
        return value
    snapped = snap_to_rational(value, tol=EXACT_SNAP_TOL)
    return snapped if snapped is not None else value


def classical_limit(f: PiecewiseFn, cfg: LimitConfig = DEFAULT_CONFIG,
                    extra_exponents: Sequence[complex] = ()):
    """Classical limit at infinity, or NotConvergentError.

    Classification is the decade tail-variation test at detect_tolerance
    (scale free for the power/log divergences arising here); the returned
    value is then refined by the tail-model fit, which removes the known
    residual shapes left behind by averaging.
    """
    variation = decade_variation(f, cfg.horizon)
    if variation > cfg.detect_tolerance:
        raise NotConvergentError(
            "tail variation above threshold",
            diagnostics={"variation": variation, "horizon": cfg.horizon})
    fit = fit_limit(f, cfg.horizon, extra_exponents=extra_exponents)
    return _maybe_snap(fit.limit, cfg)


def _convergence_gate(g, cfg: LimitConfig, extras: Sequence[complex] = ()):
    """Tail-variation test, with the tail-model fit as a second chance.

    Slowly decaying o(1) content (x^rho with -1 < Re(rho) < 0) fails the
    raw variation test yet is amplified, not tamed, by further averaging;
    the fit recognizes it because every model column decays.  A genuine
    divergence is not in the model and leaves a large fit residual.
    """
    variation = decade_variation(g, cfg.horizon)
    fit = fit_limit(g, cfg.horizon, extra_exponents=extras)
    if variation <= cfg.detect_tolerance:
        return True, variation, fit
    scale = max(1.0, abs(complex(fit.limit)))
    if fit.residual_rms > cfg.detect_tolerance * scale:
        return False, variation, fit
    # cell means can stabilize while the function still swings inside each
    # interval (a growing oscillation has constant interval averages), so
    # acceptance additionally requires the raw node samples to fit the
    # same decaying model
    node_fit = fit_limit_nodes(g, cfg.horizon, extra_exponents=extras)
    if node_fit.residual_rms > cfg.detect_tolerance * scale:
        return False, variation, fit
    # the model columns all decay, so a large constant can hide a slowly
    # growing log inside the accepted residual; probe for one explicitly
    probe = fit_limit(g, cfg.horizon, extra_exponents=extras,
                      with_plain_log=True)
    if abs(probe.coefficients["log"]) > cfg.detect_tolerance * scale:
        return False, variation, fit
    return True, variation, fit


def strong_cesaro_limit(f: PiecewiseFn,
                        cfg: LimitConfig = DEFAULT_CONFIG) -> CesaroResult:
    """Escalate pure averaging powers until the result converges classically."""
    g = f
    for r in range(cfg.max_pure_power + 1):
        ok, variation, fit = _convergence_gate(g, cfg)
        if ok:
            mech = "classical" if r == 0 else f"strong({r})"
            return CesaroResult(
                limit=_maybe_snap(fit.limit, cfg), mechanism=mech,
                diagnostics={"horizon": cfg.horizon, "variation": variation,
                             "stderr": fit.stderr, "escalations": r})
        g = apply_P(g)
    raise NotConvergentError(
        f"no classical limit within {cfg.max_pure_power} averagings",
        diagnostics={"horizon": cfg.horizon})


def _residual_ladder(expansion: AsymptoticExpansion) -> list:
    """Decaying exponents expected in the residual after annihilation."""
    extras = []
    for t in expansion.terms:
        e = complex(t.exponent)
        j = 1
        while e.real - j > -3 and j <= 4:
            down = t.exponent - j
            if complex(down).real < -0.05:
                extras.append(down)
            j += 1
    return extras


def cesaro_limit(f: PiecewiseFn,
                 expansion: Optional[AsymptoticExpansion] = None,
                 cfg: LimitConfig = DEFAULT_CONFIG) -> CesaroResult:
    """Generalised limit: annihilate the expansion's divergences, then average.

    With no expansion this is the strong driver.  A pure-log or constant
    eigencomponent in the expansion yields a pole outcome rather than a
    value.  The known constant part of the expansion is genuine limit
    content and is not removed.
    """
    if expansion is None or not expansion.terms:
        return strong_cesaro_limit(f, cfg)
    if expansion.variable == "k":
        from .asymptotics import invert_to_x_expansion
        expansion = invert_to_x_expansion(expansion)
    q = synthesize_annihilator(expansion, 0)
    if is_pole(q):
        return CesaroResult(limit=q, mechanism="pole",
                            removed_terms=expansion.terms)
    g = apply_regular_polynomial(q, f)
    extras = _residual_ladder(expansion)
    for r in range(cfg.max_pure_power + 1):
        ok, variation, fit = _convergence_gate(g, cfg, extras)
        if ok:
            q_final = build_regular_polynomial(q.factors, q.pure_power + r)
            return CesaroResult(
                limit=_maybe_snap(fit.limit, cfg), mechanism="generalised",
                q_used=q_final, removed_terms=expansion.terms,
                diagnostics={"horizon": cfg.horizon, "variation": variation,
                             "stderr": fit.stderr, "escalations": r})
        g = apply_P(g)
    raise NotConvergentError(
        "annihilation plus escalation did not reach classical convergence",
        diagnostics={"horizon": cfg.horizon, "q": q.describe()})


def _near_nonneg_int(value, radius: float = SNAP_RADIUS) -> Optional[int]:
    v = complex(value)
    n = round(v.real)
    if n >= 0 and abs(v - n) <= radius:
        return int(n)
    return None


def clim_k_alpha(delta, r: int):
    """Scaled limit of k^delta * alpha^r: 0 unless delta is a nonnegative
    integer n, where the value is (-1)^n / (n + r + 1)."""
    if r < 0:
        raise ValueError("alpha power must be nonnegative")
    if complex(delta).real < 0:
        raise ValueError("table requires Re(delta) >= 0")
    n = _near_nonneg_int(delta)
    if n is None:
        return 0
    return Fraction((-1) ** n, n + r + 1)


def clim_x_alpha(delta, r: int):
    """Scaled limit of x^delta * alpha^r: 0 unless delta = 0, where the
    alpha moments give 1/(r+1)."""
    if r < 0:
        raise ValueError("alpha power must be nonnegative")
    if complex(delta).real < 0:
        raise ValueError("table requires Re(delta) >= 0")
    if abs(complex(delta)) <= SNAP_RADIUS:
        return Fraction(1, r + 1)
    return 0


def cdlim_power(rho):
    """Discrete limit of {n^rho}: 1 when rho is a nonnegative integer
    (within the snap radius), 0 otherwise."""
    if complex(rho).real < 0:
        raise ValueError("requires Re(rho) >= 0")
    return 1 if _near_nonneg_int(rho) is not None else 0


def _falling_poly_coeffs(rho: int) -> dict:
    """(n-1)(n-2)...(n-rho) as {power: coeff}, the exact integer-exponent
    eigensequence scaled to unit leading coefficient."""
    coeffs = [1]
    for j in range(1, rho + 1):
        nxt = [0] * (len(coeffs) + 1)
        for p, c in enumerate(coeffs):
            nxt[p + 1] += c
            nxt[p] += -j * c
        coeffs = nxt
    return {p: Fraction(c) for p, c in enumerate(coeffs) if c}


def _gamma_ratio_values(rho, ns: np.ndarray) -> np.ndarray:
    """The sequence Gamma(n)/Gamma(n-rho), the exact eigensequence for
    exponent rho: its running average is itself/(rho+1) plus an exact
    boundary term proportional to 1/n (which vanishes at integer rho)."""
    from scipy.special import loggamma, poch
    rc = complex(rho)
    if rc.imag:
        return np.exp(loggamma(ns.astype(complex)) - loggamma(ns - rc))
    return poch(ns - rc.real, rc.real)


def _gamma_ratio_coeffs(rho, depth: Optional[int] = None) -> dict:
    """Asymptotic expansion Gamma(n)/Gamma(n-rho) ~ n^rho sum_j a_j n^-j
    as {j: a_j}, a_0 = 1.

    The ratio of log-gamma asymptotic series collapses to
      g(t) = -rho - (1/t - rho - 1/2) ln(1 - rho t)
             + sum_m B_{2m}/(2m(2m-1)) t^{2m-1} (1 - (1 - rho t)^{1-2m})
    with t = 1/n, and the a_j are the Taylor coefficients of exp(g).
    At integer rho the series terminates in the falling factorial."""
    from .asymptotics import bernoulli
    rc = complex(rho)
    if depth is None:
        depth = min(12, int(math.ceil(max(0.0, rc.real))) + 3)
    D = depth + 1

    def mul(a, b):
        out = np.zeros(D, dtype=complex)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            top = D - i
            out[i:] += ai * b[:top]
        return out

    logc = np.zeros(D + 1, dtype=complex)
    for k in range(1, D + 1):
        logc[k] = -(rc ** k) / k
    g = np.zeros(D, dtype=complex)
    g[0] = -rc
    g[: D] -= logc[1: D + 1]          # (1/t) * ln(1 - rho t), shifted down
    g[1:] += (rc + 0.5) * logc[1:D]
    for m in range(1, D // 2 + 1):
        p = 2 * m - 1
        if p >= D:
            break
        b2m = bernoulli(2 * m)
        if b2m == 0:
            continue
        scale = float(b2m) / (2 * m * (2 * m - 1))
        pw = np.zeros(D, dtype=complex)
        pw[0] = 1.0
        coef = 1.0
        for k in range(1, D):
            coef *= (1 - 2 * m - k + 1) / k
            pw[k] = coef * (-rc) ** k
        term = -pw
        term[0] += 1.0
        g[p:] += scale * term[: D - p]
    out = np.zeros(D, dtype=complex)
    out[0] = 1.0
    acc = out.copy()
    for k in range(1, D + 2):
        acc = mul(acc, g)
        if not acc.any():
            break
        out += acc / math.factorial(k)
    if rc.imag:
        return {j: out[j] for j in range(D) if abs(out[j]) > 1e-13}
    return {j: out[j].real for j in range(D) if abs(out[j]) > 1e-13}


def _discrete_exact(vals, eigendecomposition, cfg: LimitConfig,
                    extra_exponents) -> CesaroResult:
    """Exact-rational ladder for integer-exponent decompositions.

    Float subtraction of the large polynomial content would cancel
    catastrophically; in rational arithmetic the residual closes exactly
    (for polynomial inputs it is a constant at every index).  The horizon
    is capped since exactness does not improve with length.
    """
    n_max = min(len(vals), 4000)
    arr = [Fraction(v) for v in vals[:n_max]]
    pending = [(Fraction(c), int(e)) for c, e in eigendecomposition]
    removed = []
    guard = 0
    while True:
        pending = [(c, e) for c, e in pending if c != 0]
        live = [(c, e) for c, e in pending if e >= 1]
        if not live:
            break
        guard += 1
        if guard > 64:
            raise NotConvergentError("eigensequence ladder did not terminate")
        c, e = max(live, key=lambda p: p[1])
        pending = [p for p in pending if p != (c, e)]
        variant = {e - p: fc for p, fc in _falling_poly_coeffs(e).items()}
        powers = {off: [Fraction(n) ** (e - off) for n in range(1, n_max + 1)]
                  for off in variant}
        for off, vc in variant.items():
            coeff = c * vc
            col = powers[off]
            arr = [v - coeff * p for v, p in zip(arr, col)]
            if off > 0:
                pending.append((-coeff, e - off))
        removed.append((c, e))
    lo = max(1, n_max // 10)
    tail = arr[lo:]
    if all(v == tail[0] for v in tail):
        return CesaroResult(
            limit=tail[0] if cfg.exact_mode else float(tail[0]),
            mechanism="generalised" if removed else "classical",
            removed_terms=tuple(removed),
            diagnostics={"horizon": n_max, "variation": 0.0, "exact": True})
    inner = cesaro_limit_discrete([float(v) for v in arr], [],
                                  cfg.with_(horizon=n_max),
                                  extra_exponents=extra_exponents)
    mech = "generalised" if removed else inner.mechanism
    return CesaroResult(limit=inner.limit, mechanism=mech,
                        q_used=inner.q_used,
                        removed_terms=tuple(removed) + inner.removed_terms,
                        diagnostics=inner.diagnostics)


def cesaro_limit_discrete(a, eigendecomposition: Sequence[tuple],
                          cfg: LimitConfig = DEFAULT_CONFIG,
                          extra_exponents: Sequence[complex] = ()) -> CesaroResult:
    """Discrete generalised limit of a sequence a_1, a_2, ...

    eigendecomposition lists (coeff, rho) for the divergent power content
    of a.  Working top exponent first, the matching eigensequence (exact
    falling-factorial form at integer rho, strip-variant otherwise) is
    subtracted and its lower-order terms are pushed back onto the pending
    ledger, so the bookkeeping is exact.  Degree-zero pending content is
    deliberately left in place: a constant sequence is its own discrete
    limit, which is exactly how the integer-exponent anomalies show up.
    If the residual still fails the classical test, annihilating factors
    over the running-average operator are applied and escalated.
    """
    n_max = cfg.horizon
    if callable(a):
        vals = [a(n) for n in range(1, n_max + 1)]
    else:
        vals = list(a)[:n_max]
        n_max = len(vals)
    if n_max < 100:
        raise ValueError("need at least 100 sequence entries")
    exact = (all(isinstance(v, (int, Fraction)) for v in vals)
             and all(isinstance(c, (int, Fraction))
                     and isinstance(e, (int, Fraction)) and
                     Fraction(e).denominator == 1 and e >= 0
                     for c, e in eigendecomposition))
    if exact:
        return _discrete_exact(vals, eigendecomposition, cfg, extra_exponents)
    dtype = complex if any(isinstance(v, complex) for v in vals) else float
    arr = np.asarray(vals, dtype=dtype)
    ns = np.arange(1, n_max + 1, dtype=float)

    pending = [(c, e) for c, e in eigendecomposition]
    removed = []
    ladder_exponents = []
    guard = 0
    while True:
        merged = []
        for c, e in pending:
            for i, (mc, me) in enumerate(merged):
                if abs(complex(e) - complex(me)) < 1e-12:
                    merged[i] = (mc + c, me)
                    break
            else:
                merged.append((c, e))
        pending = [(c, e) for c, e in merged if abs(complex(c)) > 1e-13]
        live = [(c, e) for c, e in pending
                if complex(e).real >= -SNAP_RADIUS and abs(complex(e)) > SNAP_RADIUS]
        if not live:
            break
        guard += 1
        if guard > 64:
            raise NotConvergentError("eigensequence ladder did not terminate")
        c, e = max(live, key=lambda p: complex(p[1]).real)
        pending = [p for p in pending if p is not None and p != (c, e)]
        n_int = _near_nonneg_int(e)
        if n_int is not None and n_int >= 1:
            variant = {n_int - p: fc for p, fc in _falling_poly_coeffs(n_int).items()}
            for off, vc in variant.items():
                exp = e - off
                coeff = c * vc
                if dtype is complex:
                    arr = arr - complex(coeff) * ns.astype(complex) ** complex(exp)
                else:
                    arr = arr - float(complex(coeff).real) * ns ** float(complex(exp).real)
                if off > 0:
                    # the variant already removed this much content at exp,
                    # so the outstanding amount there drops by coeff
                    pending.append((-coeff, exp))
        else:
            seq = _gamma_ratio_values(e, ns)
            if dtype is complex:
                arr = arr - complex(c) * seq.astype(complex)
            else:
                arr = arr - float(complex(c).real) * np.real(seq)
            for off, vc in _gamma_ratio_coeffs(e).items():
                if off == 0:
                    continue
                # the gamma-ratio carries vc * n^{e-off} below its leading
                # power; that much content was removed along with it
                pending.append((-c * vc, e - off))
        removed.append((c, e))
        ladder_exponents.append(e)

    # decaying content left on the ledger has exactly known coefficients,
    # so subtract it outright: a slowly decaying power like n^{-1/2} is far
    # too collinear with the constant over one decade to be fitted instead
    still = []
    for c, e in pending:
        er = complex(e).real
        if er < -SNAP_RADIUS and er > -6 and abs(complex(c)) > 1e-13:
            if dtype is complex:
                arr = arr - complex(c) * ns.astype(complex) ** complex(e)
            else:
                arr = arr - float(complex(c).real) * ns ** er
        else:
            still.append((c, e))
    pending = still

    extras = []
    for e in extra_exponents:
        if all(abs(complex(e) - complex(d)) > 1e-9 for d in extras):
            extras.append(e)

    def classify(seq):
        lo = max(1, n_max // 10)
        tail = seq[lo:]
        spread = float(np.max(tail.real) - np.min(tail.real))
        if dtype is complex:
            spread = max(spread, float(np.max(tail.imag) - np.min(tail.imag)))
        return spread / max(1.0, float(np.mean(np.abs(tail))))

    def pd(seq):
        return np.cumsum(seq) / np.arange(1, len(seq) + 1)

    work = arr
    q_factors = []
    applied_factors = False
    escalations = 0
    for stage in range(cfg.max_pure_power + 1):
        variation = classify(work)
        lo = max(1, n_max // 10)
        fit = fit_limit_array(ns[lo:], work[lo:], extra_exponents=extras)
        scale = max(1.0, abs(complex(fit.limit)))
        if (variation <= cfg.detect_tolerance
                or fit.residual_rms <= cfg.detect_tolerance * scale):
            limit = _maybe_snap(fit.limit, cfg)
            mech = "generalised" if (removed or applied_factors) else (
                "classical" if escalations == 0 else f"strong({escalations})")
            q_used = (build_regular_polynomial(q_factors, escalations)
                      if (q_factors or escalations) else None)
            return CesaroResult(
                limit=limit, mechanism=mech, q_used=q_used,
                removed_terms=tuple(removed),
                diagnostics={"horizon": n_max, "variation": variation,
                             "stderr": fit.stderr, "escalations": escalations})
        if not applied_factors:
            applied_factors = True
            for e in ladder_exponents:
                if abs(complex(e)) <= SNAP_RADIUS:
                    continue
                lam = 1 / (e + 1)
                if abs(complex(lam) - 1) <= SNAP_RADIUS:
                    continue
                q_factors.append((lam, 1))
                lam_n = complex(lam) if dtype is complex else float(
                    complex(lam).real)
                work = (pd(work) - lam_n * work) / (1 - lam_n)
            if q_factors:
                continue
        work = pd(work)
        escalations += 1
    raise NotConvergentError(
        "discrete escalation exhausted", diagnostics={"horizon": n_max})
