"""Exact 2D quantum mechanics for an attractive circular well.

The well V(r) = -V0 for r < a (V0 > 0) is a genuine finite-range smearing of
the contact interaction: no separable approximation enters anywhere, which
is what makes it an independent probe of how the generated bound-state scale
depends on the regulator.  The correspondence to the dimensionless contact
coupling equates the spatial integral of the potential with the delta
strength:

    eps = V0 * pi * a^2 / kinetic_constant.

s-wave bound state at energy -E_B (0 < E_B < V0): interior J0(k_in r) with
k_in = sqrt((V0 - E_B)/kappa) matches exterior K0(gamma r) with
gamma = sqrt(E_B/kappa) through equality of logarithmic derivatives at r = a,

    k_in J1(k_in a) / J0(k_in a) = gamma K1(gamma a) / K0(gamma a).

s-wave phase shift at continuum wavenumber k: interior J0(k_in r) with
k_in = sqrt((E + V0)/kappa) matches cos(d) J0(kr) - sin(d) Y0(kr) outside;
the matching is kept in cross-multiplied (cotangent-safe) form so interior
J0 zeros cause no division blowup.  A shallow 2D well always binds, and at
k a << 1 the phase shift runs logarithmically, cot(d) = ln(E/E_B^eff)/pi up
to range corrections, which ties the well back to the renormalized
amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..energy_plane import NATURAL_UNITS, PhysicalScales
from ..errors import DomainError, TransmuteLabError
from ..special import bessel_j0, bessel_j1, bessel_k0, bessel_k1, bessel_y0, bessel_y1

__all__ = [
    "WellParameters",
    "well_from_coupling",
    "coupling_of_well",
    "well_bound_state",
    "well_phase_shift",
    "bound_energy_from_phase",
]

# first zero of J0: the ground state keeps k_in * a below this
_J0_FIRST_ZERO = 2.404825557695773


@dataclass(frozen=True)
class WellParameters:
    """Attractive circular well: value -depth inside r < radius, 0 outside."""

    radius: float
    depth: float

    def __post_init__(self):
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise DomainError(f"well radius must be positive, got {self.radius}")
        if not (self.depth > 0.0 and math.isfinite(self.depth)):
            raise DomainError(f"well depth must be positive, got {self.depth}")


def well_from_coupling(epsilon: float, radius: float, scales: PhysicalScales = NATURAL_UNITS) -> WellParameters:
    """Well with the same spatial integral as a contact coupling eps."""
    if not (epsilon > 0.0):
        raise DomainError(f"coupling must be positive, got {epsilon}")
    depth = epsilon * scales.kinetic_constant / (math.pi * radius**2)
    return WellParameters(radius=radius, depth=depth)


def coupling_of_well(well: WellParameters, scales: PhysicalScales = NATURAL_UNITS) -> float:
    return well.depth * math.pi * well.radius**2 / scales.kinetic_constant


def _matching(well: WellParameters, energy: float, kappa: float) -> float:
    """Bound-state matching function, cross-multiplied so both J0 and K0
    zeros are harmless; positive at E -> 0+, negative at E -> depth-."""
    a = well.radius
    k_in = math.sqrt((well.depth - energy) / kappa)
    gamma = math.sqrt(energy / kappa)
    return k_in * bessel_j1(k_in * a) * bessel_k0(gamma * a) - gamma * bessel_k1(gamma * a) * bessel_j0(k_in * a)


def well_bound_state(well: WellParameters, scales: PhysicalScales = NATURAL_UNITS) -> float:
    """Ground-state binding energy E_B > 0 (pole of the amplitude at -E_B).

    The root of the matching condition is isolated in (0, depth), searched in
    ln E to keep conditioning uniform over the exponentially wide range the
    shallow-well regime produces, and refined by bisection plus secant
    polish.  A 2D attractive well always binds, so failure to bracket is a
    numerical error, not a physics statement.
    """
    kappa = scales.kinetic_constant
    v0 = well.depth
    f = lambda x: _matching(well, math.exp(x), kappa)
    x_hi = math.log(v0) + math.log1p(-1e-12)
    x_lo = math.log(v0) - 650.0
    f_hi = f(x_hi)
    # scan downward from the well depth: the first sign change brackets the
    # ground state (largest E_B; interior solution without nodes)
    n_scan = 500
    x_prev, f_prev = x_hi, f_hi
    bracket = None
    for i in range(1, n_scan + 1):
        x = x_hi + (x_lo - x_hi) * i / n_scan
        fx = f(x)
        if fx == 0.0:
            return math.exp(x)
        if f_prev == 0.0 or (fx > 0.0) != (f_prev > 0.0):
            bracket = (x, fx, x_prev, f_prev)
            break
        x_prev, f_prev = x, fx
    if bracket is None:
        raise TransmuteLabError(
            "well bound-state matching root not bracketed (should be unreachable for valid wells)"
        )
    xa, fa, xb, fb = bracket
    for _ in range(200):
        xm = 0.5 * (xa + xb)
        fm = f(xm)
        if (fm > 0.0) == (fa > 0.0):
            xa, fa = xm, fm
        else:
            xb, fb = xm, fm
        if abs(xb - xa) < 1e-13:
            break
    x_root = 0.5 * (xa + xb)
    for _ in range(4):
        if fb == fa:
            break
        x_sec = xb - fb * (xb - xa) / (fb - fa)
        if not (min(xa, xb) <= x_sec <= max(xa, xb)):
            break
        xa, fa = xb, fb
        xb, fb = x_sec, f(x_sec)
        x_root = xb
    return math.exp(x_root)


def well_phase_shift(well: WellParameters, k: float, scales: PhysicalScales = NATURAL_UNITS) -> float:
    """s-wave phase shift delta0 in (-pi/2, pi/2] at wavenumber k > 0.

    tan(delta0) = [M J0(ka) + k J0in J1(ka)] / [M Y0(ka) + k J0in Y1(ka)]
    with M = -k_in J1(k_in a) and J0in = J0(k_in a): the cross-multiplied
    form of logarithmic-derivative matching at r = a.
    """
    if not (k > 0.0) or not math.isfinite(k):
        raise DomainError(f"phase shift requires k > 0, got {k}")
    kappa = scales.kinetic_constant
    a = well.radius
    energy = kappa * k * k
    k_in = math.sqrt((energy + well.depth) / kappa)
    j0_in = bessel_j0(k_in * a)
    m = -k_in * bessel_j1(k_in * a)
    num = m * bessel_j0(k * a) + k * j0_in * bessel_j1(k * a)
    den = m * bessel_y0(k * a) + k * j0_in * bessel_y1(k * a)
    delta = math.atan2(num, den)
    if delta > 0.5 * math.pi:
        delta -= math.pi
    elif delta <= -0.5 * math.pi:
        delta += math.pi
    return delta


def bound_energy_from_phase(energy: float, delta0: float) -> float:
    """Effective bound-state scale from one continuum phase shift, inverting
    the renormalized running cot(delta0) = ln(E/E_B)/pi."""
    if not (energy > 0.0):
        raise DomainError(f"continuum energy must be positive, got {energy}")
    s = math.sin(delta0)
    if s == 0.0:
        raise DomainError("zero phase shift carries no bound-state scale")
    return energy * math.exp(-math.pi * math.cos(delta0) / s)
