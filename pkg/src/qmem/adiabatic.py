"""Dark/bright (adiabatic) frame of the driven three-level system.

With atomic basis order (g, s, e), coupling g on g-e, drive Omega on s-e
and one-photon detuning Delta on e, the instantaneous eigenvectors are
parametrized by two mixing angles,

    theta = atan(g / Omega),        tan(2 phi) = 2 sqrt(g^2 + Omega^2) / Delta,

as

    dark         = ( cos(theta), -sin(theta),            0 )   energy 0
    bright_plus  = ( sin(theta) cos(phi),  cos(theta) cos(phi), -sin(phi) )
    bright_minus = ( sin(theta) sin(phi),  cos(theta) sin(phi),  cos(phi) )

with eigenenergies E_pm = (Delta +- sqrt(Delta^2 + 4 g^2 + 4 Omega^2)) / 2.
The +/- labels follow the conventional bright-state notation in which both
reduce to (sin(theta), cos(theta), +-1)/sqrt(2) at resonance; note that for
Delta != 0 the vector labeled ``bright_plus`` is the eigenvector of E_minus
and ``bright_minus`` that of E_plus. The energy that controls adiabaticity
is the gap |E_minus|, which closes as Delta grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError
from .integrate import sigmoid_crossing_time

ATOMIC_INDEX = {"g": 0, "s": 1, "e": 2}


def mixing_angles(g: float, omega: float, delta_one_photon: float = 0.0) -> tuple[float, float]:
    """Return (theta, phi) for couplings g, Omega and one-photon detuning."""
    if g == 0.0 and omega == 0.0:
        raise ConfigError("mixing angles are undefined for g = Omega = 0")
    theta = math.atan2(g, omega)
    phi = 0.5 * math.atan2(2.0 * math.hypot(g, omega), delta_one_photon)
    return theta, phi


@dataclass(frozen=True)
class AdiabaticFrame:
    """Instantaneous eigenbasis at one point of the pulse."""

    theta: float
    phi: float
    dark: np.ndarray
    bright_minus: np.ndarray
    bright_plus: np.ndarray
    energies: tuple[float, float, float]  # (E0, E_minus, E_plus)

    def basis_matrix(self) -> np.ndarray:
        """Columns (dark, bright_minus, bright_plus) on the (g, s, e) basis."""
        return np.column_stack([self.dark, self.bright_minus, self.bright_plus])


def adiabatic_basis(g: float, omega: float, delta_one_photon: float = 0.0) -> AdiabaticFrame:
    theta, phi = mixing_angles(g, omega, delta_one_photon)
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    dark = np.array([ct, -st, 0.0], dtype=np.complex128)
    bright_plus = np.array([st * cp, ct * cp, -sp], dtype=np.complex128)
    bright_minus = np.array([st * sp, ct * sp, cp], dtype=np.complex128)
    root = math.sqrt(delta_one_photon ** 2 + 4.0 * (g * g + omega * omega))
    e_minus = 0.5 * (delta_one_photon - root)
    e_plus = 0.5 * (delta_one_photon + root)
    return AdiabaticFrame(theta, phi, dark, bright_minus, bright_plus,
                          (0.0, e_minus, e_plus))


def project_to_adiabatic(i: str, j: str, frame: AdiabaticFrame) -> np.ndarray:
    """|i><j| (atomic labels g/s/e) expressed on (dark, bright_minus, bright_plus).

    The diagonal cases are the pure-dephasing channels; off-diagonal elements
    in the first row/column are the non-adiabatic leaks out of the dark state.
    """
    try:
        a, b = ATOMIC_INDEX[i], ATOMIC_INDEX[j]
    except KeyError as exc:
        raise ConfigError(f"atomic labels must be g, s or e, got ({i!r}, {j!r})") from exc
    proj = np.zeros((3, 3), dtype=np.complex128)
    proj[a, b] = 1.0
    u = frame.basis_matrix()
    return u.conj().T @ proj @ u


# ----------------------------------------------------------------------------
# photon loss restricted to the dark state
# ----------------------------------------------------------------------------

def _decay_exponent(t: float, kappa: float, omega0: float, T: float) -> float:
    """Antiderivative F(t) of the dark-state loss rate kappa cos^2(theta(t)).

    For the falling sigmoid drive with g = 1 the integral is closed-form:

        F(t) = kappa [ A (t - T/2 L(t)) - B atan((e^{t/T} + 1)/omega0) ]

    with A = omega0^2/(1+omega0^2), B = omega0 T/(1+omega0^2) and
    L(t) = log((e^{t/T} + 1)^2 + omega0^2). Large arguments are evaluated in
    a shifted branch so e^{t/T} never overflows.
    """
    x = t / T
    a = omega0 * omega0 / (omega0 * omega0 + 1.0)
    b = omega0 * T / (omega0 * omega0 + 1.0)
    if x > 300.0:  # (e^x + 1)^2 would overflow past x ~ 354
        em = math.exp(-x)
        # t - T/2 * L collapses to -T/2 * log((1 + e^-x)^2 + omega0^2 e^-2x)
        growth = -0.5 * T * math.log((1.0 + em) ** 2 + (omega0 * em) ** 2)
        arctan = 0.5 * math.pi
    else:
        e = math.exp(x)
        growth = t - 0.5 * T * math.log((e + 1.0) ** 2 + omega0 * omega0)
        arctan = math.atan((e + 1.0) / omega0)
    return kappa * (a * growth - b * arctan)


@dataclass(frozen=True)
class DarkStateDecay:
    """Analytic dark-state population under cavity photon loss.

    The dark state loses population at rate kappa cos^2(theta(t)); for the
    sigmoid drive this integrates in closed form. ``c1`` is the integration
    constant fixed by d(t0) = d0.
    """

    kappa: float
    omega0: float
    T: float
    c1: float
    t0: float
    d0: float

    def __call__(self, t: float) -> float:
        return self.d0 * math.exp(
            -(_decay_exponent(t, self.kappa, self.omega0, self.T)
              - _decay_exponent(self.t0, self.kappa, self.omega0, self.T)))

    def vacuum_population(self, t: float, v0: float = 0.0) -> float:
        """Companion population of |g,0>: everything the dark state lost."""
        return self.d0 - self(t) + v0

    def loss_rate(self, t: float) -> float:
        """kappa cos^2(theta(t)) for the sigmoid drive."""
        if self.T <= 0:
            raise ConfigError("T must be positive")
        x = t / self.T
        if x > 0:
            e = math.exp(-x)
            omega = self.omega0 * e / (1.0 + e)
        else:
            omega = self.omega0 / (1.0 + math.exp(x))
        return self.kappa * omega * omega / (omega * omega + 1.0)


def dark_decay_solution(kappa: float, omega0: float, T: float,
                        d0: float = 0.999, t0: float | None = None) -> DarkStateDecay:
    """Closed-form d(t) with d(t0) = d0; t0 defaults to the 0.1% overlap time."""
    if kappa < 0:
        raise ConfigError("kappa must be >= 0")
    if not (omega0 > 1.0):
        raise ConfigError("omega0 must exceed 1 (in units of g) for a transfer drive")
    if T <= 0:
        raise ConfigError("T must be > 0")
    if t0 is None:
        t0 = sigmoid_crossing_time(0.001, omega0, T)
    c1 = d0 * math.exp(_decay_exponent(t0, kappa, omega0, T))
    return DarkStateDecay(kappa, omega0, T, c1, t0, d0)


def asymptotic_dark_population(kappa: float, omega0: float, T: float,
                               d0: float = 0.999) -> float:
    """Dark-state population left once the drive has fully switched off.

    Evaluated at ten characteristic times past the 99.9% transfer point,
    where the loss rate has effectively vanished.
    """
    sol = dark_decay_solution(kappa, omega0, T, d0=d0)
    t_end = sigmoid_crossing_time(0.999, omega0, T) + 10.0 * T
    return sol(t_end)


def dark_decay_ode_rhs(kappa: float, omega0: float, T: float
                       ) -> Callable[[float, np.ndarray], np.ndarray]:
    """RHS of the two-state (dark, vacuum) system, for numerical cross-checks."""
    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        x = t / T
        if x > 0:
            e = math.exp(-x)
            omega = omega0 * e / (1.0 + e)
        else:
            omega = omega0 / (1.0 + math.exp(x))
        rate = kappa * omega * omega / (omega * omega + 1.0)
        return np.array([-rate * y[0], rate * y[0]])
    return rhs
