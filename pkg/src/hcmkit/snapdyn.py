"""Snap-through timescale and a single-DOF double-well snap simulator.

The reduced model is a quartic double well in the tip angle psi,

    U(psi) = U_barr * ((psi/psi_eq)^2 - 1)^2,

the minimal smooth potential with two equal wells at +-psi_eq separated by a
barrier U_barr. The tip angle carries an effective rotational inertia I_eff
and linear damping c = 2*zeta*sqrt(I_eff * U''(psi_eq)), with zeta the
medium's damping ratio relative to the small-oscillation well frequency.
Integration is classical fixed-step RK4 so traces are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Material, RibbonGeometry, derive_lengths
from .errors import NoCrossing, NonFinite, StepTooLarge

__all__ = [
    "DoubleWell",
    "SnapTrace",
    "DAMPING_PRESETS",
    "snap_timescale",
    "effective_inertia",
    "simulate_snap",
    "snap_duration",
    "triggered_snap",
]

# Damping ratios per medium, overridable through config. Water is set so the
# triggered-snap water/air duration ratio lands near the measured ~2.9x
# (17 ms in air vs 50 ms in water); 0.5 puts the ratio just under 2.
DAMPING_PRESETS = {"air": 0.05, "water": 0.8}


@dataclass(frozen=True)
class DoubleWell:
    U_barr: float
    psi_eq: float
    I_eff: float
    zeta: float

    def potential(self, psi):
        x = (psi / self.psi_eq) ** 2 - 1.0
        return self.U_barr * x * x

    def dU(self, psi):
        return 4.0 * self.U_barr * psi * (psi * psi - self.psi_eq**2) / self.psi_eq**4

    @property
    def omega_well(self) -> float:
        """Small-oscillation angular frequency about either well."""
        return math.sqrt(8.0 * self.U_barr / (self.I_eff * self.psi_eq**2))


@dataclass(frozen=True)
class SnapTrace:
    time: np.ndarray
    psi: np.ndarray
    psi_dot: np.ndarray
    kinetic: np.ndarray
    potential: np.ndarray


def snap_timescale(geom: RibbonGeometry, mat: Material) -> float:
    """Elastic-wave snap timescale t* = (2l)^2 / (t*sqrt(E/rho))."""
    two_l = derive_lengths(geom)["two_l"]
    return two_l**2 / (geom.t * math.sqrt(mat.E / mat.rho))


def effective_inertia(geom: RibbonGeometry, mat: Material) -> float:
    """Slender-strip inertia about the pinned end: rho*h*t*l^3/3."""
    l = derive_lengths(geom)["l"]
    return mat.rho * geom.h * geom.t * l**3 / 3.0


def simulate_snap(
    well: DoubleWell, psi0: float, psi_dot0: float, dt: float, T: float
) -> SnapTrace:
    """Integrate I_eff*psi'' = -U'(psi) - c*psi_dot from (psi0, psi_dot0).

    Fixed-step RK4; raises StepTooLarge if an undamped run drifts more than
    5% of U_barr in total energy, NonFinite on overflow.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    n = int(round(T / dt))
    if n < 10:
        raise ValueError("T must cover at least 10 steps")
    c = 2.0 * well.zeta * math.sqrt(well.I_eff * 8.0 * well.U_barr / well.psi_eq**2)
    inv_I = 1.0 / well.I_eff

    psi = np.empty(n + 1)
    vel = np.empty(n + 1)
    psi[0] = psi0
    vel[0] = psi_dot0
    p, v = psi0, psi_dot0
    for i in range(n):
        a1 = (-well.dU(p) - c * v) * inv_I
        p2 = p + 0.5 * dt * v
        v2 = v + 0.5 * dt * a1
        a2 = (-well.dU(p2) - c * v2) * inv_I
        p3 = p + 0.5 * dt * v2
        v3 = v + 0.5 * dt * a2
        a3 = (-well.dU(p3) - c * v3) * inv_I
        p4 = p + dt * v3
        v4 = v + dt * a3
        a4 = (-well.dU(p4) - c * v4) * inv_I
        p = p + dt * (v + 2.0 * v2 + 2.0 * v3 + v4) / 6.0
        v = v + dt * (a1 + 2.0 * a2 + 2.0 * a3 + a4) / 6.0
        psi[i + 1] = p
        vel[i + 1] = v

    if not (math.isfinite(p) and math.isfinite(v)):
        raise NonFinite("snap integration overflowed; reduce dt")

    time = dt * np.arange(n + 1)
    kinetic = 0.5 * well.I_eff * vel**2
    potential = well.potential(psi)
    if well.zeta == 0.0:
        drift = np.max(np.abs(kinetic + potential - (kinetic[0] + potential[0])))
        if drift > 0.05 * well.U_barr:
            raise StepTooLarge(
                f"undamped energy drift {drift / well.U_barr:.3g} of U_barr exceeds 5%"
            )
    return SnapTrace(time=time, psi=psi, psi_dot=vel, kinetic=kinetic, potential=potential)


def snap_duration(trace: SnapTrace, psi_eq: float) -> float:
    """10-90% travel time from the trace start to the destination well.

    Travel runs from psi(0) to the well the trace settles in; the duration is
    the time between the first crossings of the 10% and 90% levels, linearly
    interpolated between samples. Raises NoCrossing for traces that end on
    their starting side (never left the starting well).
    """
    psi = trace.psi
    t = trace.time
    # Destination well: side of the last sample well clear of the barrier top
    # (final sample alone can sit mid-oscillation near zero).
    clear = np.nonzero(np.abs(psi) >= 0.5 * psi_eq)[0]
    ref = psi[clear[-1]] if clear.size else psi[-1]
    if math.copysign(1.0, ref) == math.copysign(1.0, psi[0]):
        raise NoCrossing("trace never left the starting well")
    dest = math.copysign(psi_eq, ref)
    travel = dest - psi[0]

    def first_crossing(level: float) -> float:
        s = (psi[:-1] - level) * (psi[1:] - level)
        hits = np.nonzero(s <= 0.0)[0]
        if hits.size == 0:
            raise NoCrossing(f"trace never reached level {level:.6g}")
        j = int(hits[0])
        if psi[j + 1] == psi[j]:
            return t[j]
        return t[j] + (level - psi[j]) / (psi[j + 1] - psi[j]) * (t[j + 1] - t[j])

    t10 = first_crossing(psi[0] + 0.1 * travel)
    t90 = first_crossing(psi[0] + 0.9 * travel)
    return t90 - t10


def triggered_snap(
    well: DoubleWell, steps_per_period: int = 2000, periods: float = 120.0
) -> SnapTrace:
    """Snap trace for a just-triggered transition.

    The actuator is modeled as having pushed the tip quasi-statically to just
    below the barrier top; the trace starts at psi = -1e-3*psi_eq moving
    toward the far well at 1e-2*omega_well*psi_eq (kinetic energy 4e-4*U_barr,
    negligible against the barrier), crosses psi = 0, and falls into +psi_eq.
    """
    period = 2.0 * math.pi / well.omega_well
    dt = period / steps_per_period
    return simulate_snap(
        well,
        psi0=-1e-3 * well.psi_eq,
        psi_dot0=1e-2 * well.omega_well * well.psi_eq,
        dt=dt,
        T=periods * period,
    )
