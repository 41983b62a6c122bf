"""Cellular coverage from first principles.

A receiver connects to the nearest transmitter of a Poisson field and is
covered when its signal-to-interference ratio clears a threshold.  This
script walks the basic facts: the single-antenna closed form, the gain
from more antennas, and the density invariance that makes cellular SIR
coverage a pure function of the threshold and the fading laws.
"""

import math

from mimocov import (
    CELLULAR,
    InterfererGainSpec,
    NetworkScenario,
    SignalGainSpec,
    coverage,
    validate,
)


def bundle(m=1, tau=1.0, lam=1e-3):
    scenario = NetworkScenario(kind=CELLULAR, lam=lam, alpha=4.0, threshold=tau)
    return validate(scenario, SignalGainSpec(shape=m),
                    InterfererGainSpec(kappa=1.0, beta=1.0))


print("== single antenna, Rayleigh fading, alpha = 4, tau = 1 ==")
exact = 1.0 / (1.0 + math.pi / 4.0)
got = coverage(bundle()).value
print(f"closed form 1/(1 + pi/4) = {exact:.12f}")
print(f"series evaluation        = {got:.12f}")
print(f"difference               = {abs(got - exact):.2e}")

print()
print("== more antennas help, with diminishing returns ==")
prev = 0.0
for m in (1, 2, 4, 8, 16):
    pc = coverage(bundle(m=m)).value
    print(f"M = {m:2d}: p_c = {pc:.6f}  (gain over previous row {pc - prev:+.6f})")
    prev = pc

print()
print("== the transmitter density cancels out ==")
for lam in (1e-6, 1e-2, 1.0):
    pc = coverage(bundle(m=4, lam=lam)).value
    print(f"lambda = {lam:8.0e}: p_c = {pc!r}")
print("(identical to the last bit: both signal and interference scale together)")

print()
print("== coverage falls as the threshold rises ==")
for tau_db in (-10, -5, 0, 5, 10):
    pc = coverage(bundle(m=4, tau=10.0 ** (tau_db / 10.0))).value
    bar = "#" * round(40 * pc)
    print(f"tau = {tau_db:+3d} dB: p_c = {pc:.4f} {bar}")
