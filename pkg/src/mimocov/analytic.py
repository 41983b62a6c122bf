"""Exact coverage probability via power-series coefficient recursions.

The SIR (or SINR, in the ad hoc case) distribution with a Gamma(M, theta)
signal gain reduces to the first M coefficients of a single power series:

* cellular: the reciprocal of a series C(z) whose entries carry Gauss
  hypergeometric factors; coverage is the sum of the first M coefficients
  of 1/C(z) and does not depend on the transmitter density,
* ad hoc: the exponential of a series A(z) with elementary entries built
  from one interference functional mu; coverage is the sum of the first M
  coefficients of exp(A(z)).

Both reductions are evaluated two independent ways (coefficient recursion
and a triangular Toeplitz solve) so the representations can cross-check
each other in tests.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, linalg

from . import specfun
from .errors import NumericalError, UnsupportedConfigError, ValidationError
from .model import (
    ADHOC,
    CELLULAR,
    METHOD_MATRIX,
    METHOD_RECURSION,
    CoverageEstimate,
    GeneralSignalPdf,
    ScenarioBundle,
    SignalGainSpec,
    _integral_on_half_line,
)
from .series import MAX_ORDER, coeff_sum, series, series_exp, series_reciprocal, toeplitz_exp_nilpotent

_PATHS = (METHOD_RECURSION, METHOD_MATRIX)


@dataclass(frozen=True)
class EntrySequence:
    """First column of the triangular Toeplitz operator for one scenario.

    ``flavor`` records which series the entries describe: "cellular" entries
    feed a series reciprocal, "adhoc" entries feed a series exponential.
    The sign pattern (head positive, tail negative for cellular; head
    negative, tail positive for ad hoc) is structural, so it is asserted at
    construction; a violation means the numerics broke.
    """

    values: np.ndarray
    flavor: str

    def __post_init__(self):
        vals = series(self.values)
        object.__setattr__(self, "values", vals)
        # exact zeros are allowed in the tail: deep entries underflow for
        # extreme thresholds, and that is loss of magnitude, not of sign
        if self.flavor == CELLULAR:
            head_ok = vals[0] > 0.0
            tail_ok = bool(np.all(vals[1:] <= 0.0))
        elif self.flavor == ADHOC:
            head_ok = vals[0] < 0.0
            tail_ok = bool(np.all(vals[1:] >= 0.0))
        else:
            raise ValidationError(f"unknown entry flavor {self.flavor!r}")
        if not (head_ok and tail_ok):
            raise NumericalError(
                f"{self.flavor} entries violate their sign pattern; "
                "the evaluation lost too much precision"
            )

    @property
    def order(self) -> int:
        return self.values.size


def _check_order(order: int) -> int:
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise ValidationError("order must be a positive integer")
    if order > MAX_ORDER:
        raise ValidationError(f"order {order} exceeds the supported maximum {MAX_ORDER}")
    return int(order)


# ---------------------------------------------------------------------------
# cellular entries

def cellular_entries_gamma(bundle: ScenarioBundle, order: int) -> EntrySequence:
    """Entries for a cellular scenario with Gamma(kappa, beta) interferer gains.

    Entry n carries the prefactor Gamma(kappa+n)/(Gamma(kappa) n!) times
    delta/(delta-n) times x^n with x = tau*beta/theta, and a Gauss
    hypergeometric factor 2F1(n+kappa, n-delta; n+1-delta; -x).  The
    prefactor is accumulated in log space so large orders neither overflow
    nor underflow.
    """
    order = _check_order(order)
    sc = bundle.scenario
    kappa, beta = bundle.interferer.kappa, bundle.interferer.beta
    delta = bundle.delta
    x = sc.threshold * beta / bundle.signal.scale

    vals = np.empty(order, dtype=np.float64)
    log_pref = 0.0  # ln of Gamma(kappa+n) / (Gamma(kappa) n!) * x^n
    for n in range(order):
        if n > 0:
            log_pref += math.log((kappa + n - 1.0) / n) + math.log(x)
        sign, log_f = specfun._hyp2f1_sign_log(n + kappa, n - delta, n + 1.0 - delta, -x)
        ratio = delta / (delta - n) if n else 1.0
        vals[n] = ratio * sign * math.exp(log_pref + log_f)
    return EntrySequence(values=vals, flavor=CELLULAR)


def cellular_entries_general(bundle: ScenarioBundle, order: int) -> EntrySequence:
    """Entries for a cellular scenario with an arbitrary interferer gain law.

    Entry n needs the moment E[g^n 1F1(n-delta; n+1-delta; -c g)] with
    c = tau/theta.  When the law supplies ``f11_moment`` it is used
    directly; otherwise the moment is computed by adaptive quadrature
    against the pdf, with the g^n / n! weight folded into the exponent of
    the integrand so large n stays finite.
    """
    order = _check_order(order)
    sc = bundle.scenario
    law = bundle.interferer
    delta = bundle.delta
    c = sc.threshold / bundle.signal.scale

    vals = np.empty(order, dtype=np.float64)
    for n in range(order):
        if law.f11_moment is not None:
            moment = law.f11_moment(n, delta, c)
            scale = math.exp(n * math.log(c) - specfun.ln_gamma(n + 1.0)) if n else 1.0
            weighted = scale * moment
        else:
            def integrand(g, n=n):
                f = specfun.hyp1f1(n - delta, n + 1.0 - delta, -c * g)
                if n == 0:
                    w = 1.0
                else:
                    w = math.exp(n * math.log(c * g) - specfun.ln_gamma(n + 1.0))
                return w * f * law.pdf(g)

            weighted = _integral_on_half_line(integrand, f"cellular entry {n}")
        ratio = delta / (delta - n) if n else 1.0
        vals[n] = ratio * weighted
    return EntrySequence(values=vals, flavor=CELLULAR)


def cellular_entries(bundle: ScenarioBundle, order: int) -> EntrySequence:
    if bundle.interferer.is_gamma:
        return cellular_entries_gamma(bundle, order)
    return cellular_entries_general(bundle, order)


# ---------------------------------------------------------------------------
# ad hoc entries

def adhoc_mu(bundle: ScenarioBundle) -> float:
    """Interference functional mu = pi lambda r0^2 Gamma(1-delta) (tau/theta)^delta E[g^delta].

    This single number carries the whole interference field into the ad hoc
    series; coverage with one antenna and no noise is exactly exp(-mu).
    """
    sc = bundle.scenario
    law = bundle.interferer
    delta = bundle.delta
    if law.is_gamma:
        moment = law.beta**delta * math.exp(
            specfun.ln_gamma(delta + law.kappa) - specfun.ln_gamma(law.kappa)
        )
    elif law.delta_moment is not None:
        moment = law.delta_moment(delta)
    else:
        moment = _integral_on_half_line(lambda g: g**delta * law.pdf(g), "delta moment")
    if not (moment > 0.0 and math.isfinite(moment)):
        raise NumericalError(f"delta moment of the interferer law is {moment!r}")
    return (
        math.pi * sc.lam * sc.r0**2
        * math.gamma(1.0 - delta)
        * (sc.threshold / bundle.signal.scale) ** delta
        * moment
    )


def adhoc_entries(bundle: ScenarioBundle, order: int) -> EntrySequence:
    """Entries of the ad hoc series A(z): elementary in mu, delta, and noise.

    f_n follows the two-term recurrence f_n = f_{n-1} (n-1-delta)/n from
    f_0 = 1, which keeps every entry exact to rounding; the noise term
    s = tau r0^alpha sigma^2 / theta only touches entries 0 and 1.
    """
    order = _check_order(order)
    sc = bundle.scenario
    mu = adhoc_mu(bundle)
    s_noise = sc.threshold * sc.r0**sc.alpha * sc.noise / bundle.signal.scale
    delta = bundle.delta

    vals = np.empty(order, dtype=np.float64)
    f = 1.0
    for n in range(order):
        if n > 0:
            f *= (n - 1.0 - delta) / n
        vals[n] = -mu * f
        if n == 0:
            vals[n] -= s_noise
        elif n == 1:
            vals[n] += s_noise
    return EntrySequence(values=vals, flavor=ADHOC)


# ---------------------------------------------------------------------------
# coverage

def _sum_head(coeffs: np.ndarray, m: int) -> float:
    return coeff_sum(coeffs[:m])


def _toeplitz_reciprocal(c: np.ndarray) -> np.ndarray:
    """Reciprocal coefficients via a lower-triangular Toeplitz solve.

    Independent of the convolution recursion in series.series_reciprocal;
    the two must agree to high precision on any valid entry sequence.
    """
    m = c.size
    first_row = np.zeros(m, dtype=np.float64)
    first_row[0] = c[0]
    t = linalg.toeplitz(c, first_row)
    e0 = np.zeros(m, dtype=np.float64)
    e0[0] = 1.0
    return linalg.solve_triangular(t, e0, lower=True)


def cellular_coverage(bundle: ScenarioBundle, path: str = METHOD_RECURSION) -> CoverageEstimate:
    sc = bundle.scenario
    if sc.kind != CELLULAR:
        raise ValidationError("cellular_coverage needs a cellular scenario")
    if sc.noise > 0.0:
        raise UnsupportedConfigError(
            "cellular coverage with noise has no finite-order series form; "
            "use the Monte Carlo path"
        )
    if path not in _PATHS:
        raise ValidationError(f"path must be one of {_PATHS}, got {path!r}")
    m = bundle.signal.shape
    entries = cellular_entries(bundle, m)
    if path == METHOD_RECURSION:
        recips = series_reciprocal(entries.values)
    else:
        recips = _toeplitz_reciprocal(entries.values)
    return CoverageEstimate(value=_sum_head(recips, m), method=path)


def adhoc_coverage(bundle: ScenarioBundle, path: str = METHOD_RECURSION) -> CoverageEstimate:
    sc = bundle.scenario
    if sc.kind != ADHOC:
        raise ValidationError("adhoc_coverage needs an ad hoc scenario")
    if path not in _PATHS:
        raise ValidationError(f"path must be one of {_PATHS}, got {path!r}")
    m = bundle.signal.shape
    entries = adhoc_entries(bundle, m)
    if path == METHOD_RECURSION:
        probs = series_exp(entries.values)
    else:
        probs = toeplitz_exp_nilpotent(entries.values)
    return CoverageEstimate(value=_sum_head(probs, m), method=path)


def coverage(bundle: ScenarioBundle, path: str = METHOD_RECURSION) -> CoverageEstimate:
    """Exact coverage probability of the bundled scenario.

    ``path`` selects the evaluation route: "finite-sum" uses the
    coefficient recursions, "toeplitz" the matrix formulation.  They agree
    to rounding; both are kept so each can certify the other.
    """
    if bundle.scenario.kind == CELLULAR:
        return cellular_coverage(bundle, path)
    return adhoc_coverage(bundle, path)


def coverage_general_pdf(bundle: ScenarioBundle, signal_pdf: GeneralSignalPdf,
                         path: str = METHOD_RECURSION) -> CoverageEstimate:
    """Coverage when the signal gain follows an exponential-polynomial pdf.

    Each pdf term e^{-phi u} u^q contributes its weight times the coverage
    of a plain Gamma(q+1, 1/phi) signal; the remainder 1 - sum(weights)
    accounts for the difference between the pdf and its gamma envelope.
    For a pdf that is itself Gamma(M, theta) this reduces to the single
    term coverage exactly.
    """
    total = 1.0
    for order_m, scale, weight in signal_pdf.weights():
        sub = dataclasses.replace(bundle, signal=SignalGainSpec(shape=order_m, scale=scale))
        total += weight * (coverage(sub, path).value - 1.0)
    return CoverageEstimate(value=total, method=path)


def coverage_non_poisson(bundle: ScenarioBundle, deployment_gain: float,
                         path: str = METHOD_RECURSION) -> CoverageEstimate:
    """Approximate coverage for a non-Poisson cellular deployment.

    A stationary point process that is more regular (or more clustered)
    than Poisson shifts the SIR distribution horizontally by a gain factor
    G; evaluating the Poisson expression at threshold tau/G captures the
    bulk of the difference.  Only meaningful for cellular scenarios.
    """
    if bundle.scenario.kind != CELLULAR:
        raise UnsupportedConfigError("deployment-gain scaling applies to cellular scenarios only")
    if not (deployment_gain > 0.0 and math.isfinite(deployment_gain)):
        raise ValidationError("deployment gain must be positive")
    shifted = dataclasses.replace(
        bundle,
        scenario=dataclasses.replace(
            bundle.scenario, threshold=bundle.scenario.threshold / deployment_gain
        ),
    )
    return cellular_coverage(shifted, path)
