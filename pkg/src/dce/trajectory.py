"""Prescribed motion of the oscillating cavity mirror.

One wall of a 1D cavity sits at x = 0 forever; the other follows

    L(t) = L0 + a*sin(2*pi*t/l0)   for 0 <= t <= T,
    L(t) = L0                      otherwise.

Units put the speed of light at 1, so a valid law keeps the mirror
subluminal (2*pi*a/l0 < 1) and stops on a half period (2*T/l0 integer),
which makes L(T) = L0 hold exactly rather than approximately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["MirrorLaw", "position", "velocity", "max_velocity"]

# Tolerance for the half-period closure test; laws are rejected, never
# repaired, so this only forgives representation noise in 2*T/l0.
_CLOSURE_TOL = 1e-9


def _sin2pi_scalar(frac: float) -> float:
    frac = frac % 1.0
    sign = 1.0
    if frac >= 0.5:
        sign = -1.0
        frac -= 0.5
    if frac > 0.25:
        frac = 0.5 - frac
    return sign * math.sin((2.0 * math.pi) * frac)


def _sin2pi_array(frac):
    frac = np.mod(frac, 1.0)
    sign = np.where(frac >= 0.5, -1.0, 1.0)
    frac = np.where(frac >= 0.5, frac - 0.5, frac)
    frac = np.where(frac > 0.25, 0.5 - frac, frac)
    return sign * np.sin((2.0 * np.pi) * frac)


@dataclass(frozen=True)
class MirrorLaw:
    """Sinusoidal mirror trajectory with static lead-in and lead-out.

    L0: rest length of the cavity.
    a:  oscillation amplitude; a = 0 is the legitimate static case.
    l0: oscillation period, so the drive frequency is omega0 = 2*pi/l0.
    T:  duration of motion.

    Construction rejects unphysical laws instead of clamping them: the
    mirror must stay subluminal, the cavity must never collapse, and the
    motion must stop exactly at the rest position.
    """

    L0: float
    a: float = 0.0
    l0: float = 1.0
    T: float = 0.0

    def __post_init__(self):
        if not self.L0 > 0.0:
            raise ValueError(f"cavity length must be positive, got L0={self.L0}")
        if self.a < 0.0:
            raise ValueError(f"amplitude must be non-negative, got a={self.a}")
        if not self.l0 > 0.0:
            raise ValueError(f"period must be positive, got l0={self.l0}")
        if self.T < 0.0:
            raise ValueError(f"duration must be non-negative, got T={self.T}")
        if self.a >= self.L0:
            raise ValueError(
                f"amplitude a={self.a} reaches the fixed wall (L0={self.L0})"
            )
        v = 2.0 * math.pi * self.a / self.l0
        if v >= 1.0:
            raise ValueError(f"peak mirror speed 2*pi*a/l0 = {v:.6g} is not below 1")
        half_periods = 2.0 * self.T / self.l0
        if abs(half_periods - round(half_periods)) > _CLOSURE_TOL:
            raise ValueError(
                "motion must stop on a half period so that L(T) = L0; "
                f"got 2*T/l0 = {half_periods!r}"
            )

    @property
    def epsilon(self) -> float:
        """Relative amplitude a/L0."""
        return self.a / self.L0

    @classmethod
    def resonant(cls, L0: float, epsilon: float, T: float) -> "MirrorLaw":
        """Law with l0 = L0, i.e. drive frequency twice the fundamental mode."""
        return cls(L0=L0, a=epsilon * L0, l0=L0, T=T)


def position(law: MirrorLaw, t):
    """Mirror coordinate L(t).  Accepts a scalar or an array of times.

    The oscillation phase is reduced modulo one period and folded onto a
    quarter wave before calling sin, so lattice instants come out exact:
    L(T) = L0 and L(l0/4) = L0 + a, not values a few ulps off.  The exact
    closure matters downstream, where reflections at t slightly above T
    must see a mirror exactly at rest.
    """
    if np.ndim(t) == 0:
        tt = float(t)
        if tt < 0.0 or tt > law.T or law.a == 0.0:
            return law.L0
        return law.L0 + law.a * _sin2pi_scalar(tt / law.l0)
    t = np.asarray(t, dtype=float)
    moving = (t >= 0.0) & (t <= law.T)
    if law.a == 0.0:
        return np.full(t.shape, law.L0)
    disp = law.a * _sin2pi_array(t / law.l0)
    return law.L0 + np.where(moving, disp, 0.0)


def velocity(law: MirrorLaw, t):
    """Mirror speed dL/dt; the kinks at t = 0, T take the interior value."""
    vmax = 2.0 * math.pi * law.a / law.l0
    if np.ndim(t) == 0:
        tt = float(t)
        if tt < 0.0 or tt > law.T:
            return 0.0
        return vmax * _sin2pi_scalar(tt / law.l0 + 0.25)
    t = np.asarray(t, dtype=float)
    moving = (t >= 0.0) & (t <= law.T)
    v = vmax * _sin2pi_array(t / law.l0 + 0.25)
    return np.where(moving, v, 0.0)


def max_velocity(law: MirrorLaw) -> float:
    """Peak mirror speed 2*pi*a/l0 in units of c."""
    return 2.0 * math.pi * law.a / law.l0
