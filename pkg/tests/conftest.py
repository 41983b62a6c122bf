import math

import pytest

from mimocov import (
    ADHOC,
    CELLULAR,
    InterfererGainSpec,
    NetworkScenario,
    SignalGainSpec,
    validate,
)


@pytest.fixture
def cellular_bundle():
    def make(m=1, tau=1.0, alpha=4.0, lam=1e-3, theta=1.0, kappa=1.0, beta=1.0,
             noise=0.0, interferer=None):
        scenario = NetworkScenario(kind=CELLULAR, lam=lam, alpha=alpha,
                                   threshold=tau, r0=None, noise=noise)
        law = interferer if interferer is not None else InterfererGainSpec(kappa=kappa, beta=beta)
        return validate(scenario, SignalGainSpec(shape=m, scale=theta), law)

    return make


@pytest.fixture
def adhoc_bundle():
    def make(m=1, tau=1.0, alpha=4.0, lam=0.05, r0=1.0, theta=1.0, kappa=1.0,
             beta=1.0, noise=0.0, interferer=None):
        scenario = NetworkScenario(kind=ADHOC, lam=lam, alpha=alpha,
                                   threshold=tau, r0=r0, noise=noise)
        law = interferer if interferer is not None else InterfererGainSpec(kappa=kappa, beta=beta)
        return validate(scenario, SignalGainSpec(shape=m, scale=theta), law)

    return make


@pytest.fixture
def adhoc_for_mu(adhoc_bundle):
    # With alpha = 4, r0 = tau = theta = kappa = beta = 1 the interference
    # functional reduces to mu = pi^2 lam / 2, so lam = 2 mu / pi^2 dials it.
    def make(mu, m=1):
        return adhoc_bundle(m=m, lam=2.0 * mu / math.pi**2)

    return make
