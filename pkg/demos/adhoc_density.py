"""How ad hoc coverage responds to the interferer density.

In the dipole model the receiver has a dedicated transmitter at a fixed
distance and every Poisson point interferes.  Coverage then factors into
an explicit function of the density: an exponential times a polynomial.
That profile is monotone decreasing and convex, its derivative comes in
closed form, and scaling the link distance trades exactly against density.
"""

import math

from mimocov import (
    ADHOC,
    InterfererGainSpec,
    NetworkScenario,
    SignalGainSpec,
    coverage,
    density_profile,
    validate,
)


def bundle(m=1, lam=0.05, r0=1.0, tau=1.0):
    scenario = NetworkScenario(kind=ADHOC, lam=lam, alpha=4.0, threshold=tau, r0=r0)
    return validate(scenario, SignalGainSpec(shape=m),
                    InterfererGainSpec(kappa=1.0, beta=1.0))


print("== single antenna: coverage is exp(-mu) ==")
lam = 0.05
mu = math.pi**2 * lam / 2.0  # alpha = 4 and unit parameters collapse mu to this
print(f"lambda = {lam}: mu = {mu:.6f}")
print(f"exp(-mu)   = {math.exp(-mu):.12f}")
print(f"evaluation = {coverage(bundle(lam=lam)).value:.12f}")

print()
print("== the density profile factors coverage as exp(head * lam) * poly(lam) ==")
profile = density_profile(bundle(m=4))
print(f"head coefficient: {profile.head:.6f} (negative: more density, less coverage)")
print(f"polynomial coefficients: {[round(b, 6) for b in profile.betas.tolist()]}")
print()
print(f"{'lambda':>8}  {'coverage':>10}  {'d coverage / d lambda':>22}")
for g in (0.01, 0.05, 0.2, 0.5, 1.0):
    print(f"{g:8.2f}  {profile.coverage_at(g):10.6f}  {profile.derivative_at(g):22.6f}")
print("(decreasing values, negative derivatives flattening out: convex decay)")

print()
print("== link distance and density trade places ==")
# shrinking the link by half and boosting density fourfold changes nothing
a = coverage(bundle(m=3, lam=0.05, r0=1.0)).value
b = coverage(bundle(m=3, lam=0.20, r0=0.5)).value
print(f"lam = 0.05, r0 = 1.0: p_c = {a:.12f}")
print(f"lam = 0.20, r0 = 0.5: p_c = {b:.12f}")
print(f"difference: {abs(a - b):.2e} (lam * r0^2 is all that matters)")
