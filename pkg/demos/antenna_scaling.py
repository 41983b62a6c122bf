"""What each extra antenna buys, and how fast the returns fade.

Coverage with M antennas is the partial sum of a positive series, so the
increments tell the whole scaling story.  For cellular networks the
increments eventually shrink geometrically at a computable rate, which
makes outage exponentially small in the antenna count.  For ad hoc
networks the increments can rise before they fall, and the peak location
is bounded by a one-line function of the interference intensity.
"""

import math

import numpy as np

from mimocov import (
    ADHOC,
    CELLULAR,
    InterfererGainSpec,
    NetworkScenario,
    SignalGainSpec,
    adhoc_peak_bound,
    cellular_decay_rate,
    improvement_sequence,
    outage_decay_check,
    validate,
)

law = InterfererGainSpec(kappa=1.0, beta=1.0)

cell = validate(NetworkScenario(kind=CELLULAR, lam=1e-3, alpha=4.0, threshold=1.0),
                SignalGainSpec(shape=1), law)

print("== cellular: increments decay geometrically ==")
rc = cellular_decay_rate(cell)
print(f"decay rate r_c = {rc:.10f}")
print("successive increment ratios approach it:")
ratios = outage_decay_check(cell, order=42).ratios
for n in (0, 2, 5, 10, 20, 40):
    print(f"  p_bar[{n:2d}] / p_bar[{n + 1:2d}] = {ratios[n]:.8f}")

print()
print("== so log outage is linear in the antenna count ==")
seq = improvement_sequence(cell, order=120).values
tail = np.cumsum(seq[::-1])[::-1]  # tail[m] = outage with m antennas
for m in (5, 10, 20, 40, 80):
    print(f"  M = {m:3d}: outage = {tail[m]:.3e}  log10 = {math.log10(tail[m]):8.3f}")
print(f"(slope per antenna: -log10(r_c) = {-math.log10(rc):.5f})")

print()
print("== ad hoc: heavy interference moves the sweet spot outward ==")
for mu in (1.0, 3.0, 6.0):
    lam = 2.0 * mu / math.pi**2
    adhoc = validate(NetworkScenario(kind=ADHOC, lam=lam, alpha=4.0,
                                     threshold=1.0, r0=1.0),
                     SignalGainSpec(shape=1), law)
    info = adhoc_peak_bound(adhoc)
    values = improvement_sequence(adhoc, order=40).values
    peak = int(np.argmax(values))
    shape = "decrease from the start" if info.monotone else f"peak at n = {peak}"
    print(f"  mu = {mu}: increments {shape} (bound says n <= {info.index_bound})")
