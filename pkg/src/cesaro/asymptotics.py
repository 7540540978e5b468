"""Bernoulli numbers, asymptotic expansions, and annihilator synthesis.

The divergences this package removes are finite sums of c * x^rho * (ln x)^m.
This module builds those sums for the standard sources (partial sums of
power series via Euler-Maclaurin, the x-vs-integer-part rewriting) and turns
a finished expansion into the regular polynomial that annihilates it.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .config import EXPONENT_MERGE_TOL, LAMBDA_EPS, SNAP_RADIUS
from .errors import NonTriangularError, SAtPoleError, PoleSignal
from .operators import RegularPolynomial, build_regular_polynomial

__all__ = [
    "bernoulli",
    "ExpansionTerm",
    "AsymptoticExpansion",
    "euler_maclaurin_psum",
    "zeta_psum_expansion",
    "x_power_expansion",
    "invert_to_x_expansion",
    "synthesize_annihilator",
]

_BERNOULLI_CACHE: list = [Fraction(1)]
_BERNOULLI_MAX = 256


def bernoulli(r: int) -> Fraction:
    """Exact B_r in the convention with B_1 = -1/2.

    Computed from the defining recurrence sum_{j<=r} C(r+1, j) B_j = 0.
    """
    if r < 0:
        raise ValueError("index must be nonnegative")
    if r > _BERNOULLI_MAX:
        raise OverflowError(f"Bernoulli index {r} beyond supported {_BERNOULLI_MAX}")
    while len(_BERNOULLI_CACHE) <= r:
        n = len(_BERNOULLI_CACHE)
        acc = Fraction(0)
        for j, bj in enumerate(_BERNOULLI_CACHE):
            acc += math.comb(n + 1, j) * bj
        _BERNOULLI_CACHE.append(-acc / (n + 1))
    return _BERNOULLI_CACHE[r]


def _snap_scalar(v):
    """Collapse a negligible imaginary part; keep exact types unchanged."""
    if isinstance(v, complex) and abs(v.imag) == 0.0:
        return v.real
    return v


@dataclass(frozen=True)
class ExpansionTerm:
    """One term c * v^exponent * (ln v)^log_power with v the variable tag."""

    coeff: complex
    exponent: complex
    log_power: int = 0
    variable: str = "x"

    def evaluate(self, v):
        out = self.coeff * v ** self.exponent
        if self.log_power:
            out = out * math.log(v) ** self.log_power
        return out

    def to_record(self) -> dict:
        c, e = complex(self.coeff), complex(self.exponent)
        return {"coeff_re": c.real, "coeff_im": c.imag,
                "exponent_re": e.real, "exponent_im": e.imag,
                "log_power": self.log_power, "variable": self.variable}


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Finite divergence model: sum of terms, a known constant, a remainder.

    `constant` collects the known degree-zero contributions; it is kept out
    of `terms` so annihilator synthesis only ever sees genuine divergences.
    The unexpanded remainder is o(v^remainder_order).
    """

    terms: tuple
    remainder_order: float
    constant: complex = 0
    variable: str = "x"

    def __post_init__(self):
        ordered = tuple(sorted(
            (t for t in self.terms if t.coeff != 0),
            key=lambda t: (-complex(t.exponent).real, -t.log_power)))
        object.__setattr__(self, "terms", ordered)

    def evaluate(self, v, include_constant: bool = True):
        acc = self.constant if include_constant else 0
        for t in self.terms:
            acc = acc + t.evaluate(v)
        return acc

    def evaluate_terms_array(self, vs):
        import numpy as np
        acc = np.zeros(len(vs), dtype=complex)
        lv = np.log(vs)
        for t in self.terms:
            acc += complex(t.coeff) * np.asarray(vs, dtype=complex) ** complex(t.exponent) \
                * (lv ** t.log_power if t.log_power else 1.0)
        if acc.imag.any():
            return acc
        return acc.real

    def with_constant(self, c) -> "AsymptoticExpansion":
        return AsymptoticExpansion(self.terms, self.remainder_order, c,
                                   self.variable)

    def to_json(self) -> str:
        return json.dumps({
            "variable": self.variable,
            "constant_re": complex(self.constant).real,
            "constant_im": complex(self.constant).imag,
            "remainder_order": self.remainder_order,
            "terms": [t.to_record() for t in self.terms],
        }, indent=2)


def _merge_terms(raw: Sequence[tuple], variable: str):
    """Combine (coeff, exponent, log_power) triples with colliding keys."""
    bucket: dict = {}
    for c, e, m in raw:
        ec = complex(e)
        key = (round(ec.real / EXPONENT_MERGE_TOL),
               round(ec.imag / EXPONENT_MERGE_TOL), m)
        if key in bucket:
            c0, e0, m0 = bucket[key]
            bucket[key] = (c0 + c, e0, m0)
        else:
            bucket[key] = (c, e, m)
    out = []
    for c, e, m in bucket.values():
        if abs(complex(c)) < 1e-13:
            continue
        out.append(ExpansionTerm(_snap_scalar(c), _snap_scalar(e), m, variable))
    return out


def euler_maclaurin_psum(f, f_derivatives, f_antiderivative, k: int,
                         order: int):
    """Truncated correction formula for sum_{n=1}^{k} f(n).

    Returns (value, last_term_magnitude) where value is
        integral_0^k f  +  f(k)/2  +  sum_{r=2}^{order} (B_r/r!) f^(r-1)(k)
    i.e. the full right-hand side minus the unknown constant, which the
    caller extracts as the limit of (actual sum - value).  The magnitude of
    the last retained correction is the usual error proxy.
    """
    if order >= 2 and len(f_derivatives) < order - 1:
        raise ValueError(
            f"order {order} needs derivatives up to {order - 1}, "
            f"got {len(f_derivatives)}")
    value = f_antiderivative(k) + f(k) / 2
    last = 0.0
    for r in range(2, order + 1):
        br = bernoulli(r)
        if br == 0:
            continue
        term = Fraction(br, math.factorial(r)) * f_derivatives[r - 2](k)
        value = value + term
        last = abs(complex(term))
    return value, last


def _product(s, r: int):
    """s(s+1)...(s+r-2), the r-th correction's falling product; 1 for r=2
    means the single factor s."""
    acc = 1
    for j in range(r - 1):
        acc = acc * (s + j)
    return acc


def zeta_psum_expansion(s, order: Optional[int] = None) -> AsymptoticExpansion:
    """Divergence model of the p-sum of sum n^{-s}, variable k.

    Terms: k^{1-s}/(1-s), k^{-s}/2, and Bernoulli corrections
    (-1)^{r-1}(B_r/r!) s(s+1)...(s+r-2) k^{-s+1-r}.  Degree-zero
    contributions land in the constant slot; the unknown analytic constant
    (the continuation value itself) is the caller's to extract.  order=None
    keeps every exponent with Re >= 0 plus one guard correction.
    """
    sc = complex(s)
    if abs(sc - 1) <= SNAP_RADIUS:
        raise SAtPoleError("the p-sum expansion is singular at s = 1")
    if order is None:
        r_max = max(2, int(math.floor(-sc.real + 1)) + 3)
    else:
        r_max = max(2, order)
    raw = []
    constant = 0
    exact = isinstance(s, (int, Fraction)) or (
        isinstance(s, float) and s == int(s))
    if exact:
        s = Fraction(s)

    def push(c, e):
        nonlocal constant
        if abs(complex(e)) <= SNAP_RADIUS:
            constant = constant + c
        else:
            raw.append((c, e, 0))

    push(1 / (1 - s) if not exact else Fraction(1, 1) / (1 - s), 1 - s)
    push(Fraction(1, 2) if exact else 0.5, -s)
    last_e = complex(-s).real
    for r in range(2, r_max + 1):
        br = bernoulli(r)
        e = 1 - s - r
        last_e = complex(e).real
        if br == 0:
            continue
        c = (-1) ** (r - 1) * Fraction(br, math.factorial(r)) * _product(s, r)
        push(c, e)
    terms = _merge_terms(raw, "k")
    return AsymptoticExpansion(tuple(terms), remainder_order=last_e - 1,
                               constant=constant, variable="k")


def x_power_expansion(gamma, order: int) -> AsymptoticExpansion:
    """Rewrite x^gamma in integer-part powers: variable k, k = floor(x).

    Term r = 0 is k^gamma, r = 1 is (gamma/2) k^{gamma-1}, and for r >= 2
    the coefficient is (B_r/r!) gamma(gamma-1)...(gamma-r+1).  The even-r
    sign is pinned by the exact power-sum polynomials: the partial sums of
    n^2 are k^3/3 + k^2/2 + k/6 and must rewrite to x^3/3 alone, which
    forces x^3 = k^3 + (3/2)k^2 + (1/2)k with a positive B_2 term.  The
    identity holds in the averaged (strong) sense, not pointwise.
    """
    gc = complex(gamma)
    if gc.real < 0:
        raise ValueError("needs Re(gamma) >= 0")
    if order < 1:
        raise ValueError("order must be >= 1")
    exact = isinstance(gamma, (int, Fraction))
    raw = [(Fraction(1) if exact else 1.0, gamma, 0)]
    if order >= 2:
        raw.append((Fraction(gamma, 2) if exact else gc / 2, gamma - 1, 0))
    fall = gamma * (gamma - 1)
    for r in range(2, order):
        br = bernoulli(r)
        if br != 0:
            c = Fraction(br, math.factorial(r)) * fall
            raw.append((c, gamma - r, 0))
        fall = fall * (gamma - r)
    terms = _merge_terms(raw, "k")
    return AsymptoticExpansion(tuple(terms),
                               remainder_order=gc.real - order,
                               variable="k")


def invert_to_x_expansion(exp_k: AsymptoticExpansion) -> AsymptoticExpansion:
    """Rewrite a k-expansion as an x-expansion with a strongly-null error.

    Works top order first: the leading pending k-term c*k^gamma is matched
    by c*x^gamma, whose own k-rewriting is subtracted from the pending
    terms; the ladder terminates once every pending exponent has Re < 0.
    For the p-sum of sum n^{-s} the Bernoulli corrections cancel exactly
    and a single x-term survives.
    """
    if exp_k.variable != "k":
        raise ValueError("input must be a k-expansion")
    if any(t.log_power for t in exp_k.terms):
        raise NonTriangularError("log-carrying k-terms are not invertible here")
    pending = [(t.coeff, t.exponent) for t in exp_k.terms]
    out = []
    constant = exp_k.constant
    guard = 0
    while True:
        pending = [(c, e) for (c, e) in
                   ((c, e) for c, e in pending if abs(complex(c)) > 1e-13)]
        live = [(c, e) for c, e in pending if complex(e).real >= -SNAP_RADIUS]
        if not live:
            break
        guard += 1
        if guard > 64:
            raise NonTriangularError(
                "exponent ladder did not terminate; expansion is not a "
                "descending unit-gap family")
        c, e = max(live, key=lambda p: complex(p[1]).real)
        if abs(complex(e)) <= SNAP_RADIUS:
            # degree-zero content belongs in the constant slot, not in terms
            constant = constant + c
            pending = [p for p in pending if p != (c, e)]
            continue
        out.append((c, e, 0))
        depth = int(math.floor(complex(e).real)) + 2
        ladder = x_power_expansion(e, depth)
        rewrite = [(c * t.coeff, t.exponent) for t in ladder.terms]
        merged = _merge_terms(
            [(cc, ee, 0) for cc, ee in pending] +
            [(-cc, ee, 0) for cc, ee in rewrite], "k")
        pending = [(t.coeff, t.exponent) for t in merged]
    tail = min((complex(e).real for _, e in pending), default=-1.0)
    terms = _merge_terms(out, "x")
    return AsymptoticExpansion(tuple(terms), remainder_order=min(tail, -1e-9),
                               constant=constant, variable="x")


def synthesize_annihilator(exp_x: AsymptoticExpansion,
                           escalation_r: int = 0):
    """Regular polynomial annihilating the expansion's divergent terms.

    Each term c * x^rho (ln x)^m with Re(rho) >= 0 and rho != 0 contributes
    the factor (A - 1/(rho+1)) with multiplicity m+1.  A term with rho = 0
    (within tolerance) is eigenvalue-1 content: constants cannot be told
    apart from the limit and pure logs cannot be annihilated at all, so the
    outcome is a PoleSignal rather than a polynomial.  Terms with
    Re(rho) < 0 vanish classically and need no factor.
    """
    factors = []
    for t in exp_x.terms:
        rho = complex(t.exponent)
        if rho.real < -SNAP_RADIUS:
            continue
        if abs(rho) <= LAMBDA_EPS:
            return PoleSignal(
                origin="log-divergence" if t.log_power else "constant-eigencontent",
                log_power=max(1, t.log_power),
                detail={"coeff": complex(t.coeff)})
        lam = 1 / (t.exponent + 1)
        if abs(complex(lam) - 1) <= LAMBDA_EPS:
            return PoleSignal(origin="eigenvalue-one-factor",
                              detail={"exponent": rho})
        factors.append((_snap_scalar(lam), t.log_power + 1))
    return build_regular_polynomial(factors, pure_power=escalation_r)
