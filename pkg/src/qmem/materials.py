"""Cavity and pulse design numbers for concrete defect emitters.

Converts material parameters (transition frequency, transition dipole) and a
cavity choice (volume multiplier n with V = n lambda^3, plus a quality
factor or a kappa/g ratio) into the physical quantities a memory needs:
coupling constant, peak control Rabi frequency, pulse duration, signal
bandwidth and required quality factor.

Unit convention: every frequency-like quantity in this module is an ANGULAR
frequency in rad/s, and reported "MHz/GHz/THz" values are rad/s divided by
1e6/1e9/1e12. Only this reading makes the shipped defect data cohere: with
omega_ge = 744.6e12 rad/s, lambda = 2 pi c / omega gives a 2 lambda^3 cavity
of tens of cubic micrometers, and kappa = 0.01 g maps to Q ~ 2.3e8.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .analysis import bandwidth_physical
from .errors import ConfigError

HBAR = 1.054571817e-34        # J s
EPSILON_0 = 8.8541878128e-12  # F/m
SPEED_OF_LIGHT = 299792458.0  # m/s


@dataclass(frozen=True)
class DefectRecord:
    """Material parameters of one emitter candidate.

    ``omega_se`` and ``dipole_se`` describe the control transition; they are
    carried for completeness but no design formula below consumes them.
    """

    name: str
    omega_ge: float   # signal transition, rad/s
    omega_se: float   # control transition, rad/s
    dipole_ge: float  # C m
    dipole_se: float  # C m
    source: str = ""

    def __post_init__(self):
        for field_name in ("omega_ge", "omega_se", "dipole_ge", "dipole_se"):
            if getattr(self, field_name) <= 0:
                raise ConfigError(f"{self.name}: {field_name} must be > 0")


@dataclass(frozen=True)
class CavitySpec:
    """Cavity choice: V = n lambda^3 plus exactly one of Q / kappa_rel."""

    n: float
    Q: float | None = None
    kappa_rel: float | None = None

    def __post_init__(self):
        if self.n <= 0:
            raise ConfigError("volume multiplier n must be > 0")
        if (self.Q is None) == (self.kappa_rel is None):
            raise ConfigError("specify exactly one of Q and kappa_rel")
        if self.Q is not None and self.Q <= 0:
            raise ConfigError("Q must be > 0")
        if self.kappa_rel is not None and self.kappa_rel <= 0:
            raise ConfigError("kappa_rel must be > 0")


@dataclass(frozen=True)
class MemoryDesignReport:
    name: str
    g_phys: float          # rad/s
    wavelength: float      # m
    volume: float          # m^3
    omega0_phys: float     # rad/s
    T_phys: float          # s
    bandwidth: float       # rad/s
    kappa_phys: float      # rad/s
    Q_required: float

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "coupling_rad_s": _sig9(self.g_phys),
            "wavelength_m": _sig9(self.wavelength),
            "volume_m3": _sig9(self.volume),
            "omega0_rad_s": _sig9(self.omega0_phys),
            "T_s": _sig9(self.T_phys),
            "bandwidth_rad_s": _sig9(self.bandwidth),
            "kappa_rad_s": _sig9(self.kappa_phys),
            "quality_factor": _sig9(self.Q_required),
        }


def _sig9(x: float) -> float:
    """Round to 9 significant digits for stable report serialization."""
    return float(f"{x:.9g}")


def coupling_constant(dipole: float, omega: float, volume: float) -> float:
    """Vacuum coupling g = d sqrt(omega / (2 hbar eps0 V)) in rad/s.

    Polarization overlap between the dipole and the cavity field is taken
    as 1 (perfect alignment).
    """
    if dipole <= 0 or omega <= 0 or volume <= 0:
        raise ConfigError("dipole, omega and volume must be positive")
    return dipole * math.sqrt(omega / (2.0 * HBAR * EPSILON_0 * volume))


def resonant_wavelength(omega: float) -> float:
    """lambda = 2 pi c / omega for an angular frequency."""
    if omega <= 0:
        raise ConfigError("omega must be > 0")
    return 2.0 * math.pi * SPEED_OF_LIGHT / omega


def cavity_volume(omega: float, n: float) -> float:
    """V = n lambda^3 for a cavity resonant at omega."""
    if n <= 0:
        raise ConfigError("n must be > 0")
    return n * resonant_wavelength(omega) ** 3


def quality_factor(omega: float, kappa: float) -> float:
    """Q = omega / (2 kappa): field decay convention."""
    if omega <= 0 or kappa <= 0:
        raise ConfigError("omega and kappa must be positive")
    return omega / (2.0 * kappa)


def kappa_from_quality(omega: float, q: float) -> float:
    if omega <= 0 or q <= 0:
        raise ConfigError("omega and Q must be positive")
    return omega / (2.0 * q)


def design_report(defect: DefectRecord, cavity: CavitySpec,
                  omega0_rel: float = 100.0, T_rel: float = 10.0,
                  sigma_delta: float = 10.0,
                  bandwidth_mode: str = "full") -> MemoryDesignReport:
    """Full design chain for one defect.

    ``omega0_rel`` and ``T_rel`` are the control-pulse settings in units of
    g (peak Rabi frequency omega0_rel * g, characteristic time T_rel / g);
    ``sigma_delta`` is the dimensionless absorption half-width feeding the
    bandwidth conversion.
    """
    if omega0_rel <= 0 or T_rel <= 0:
        raise ConfigError("omega0_rel and T_rel must be positive")
    volume = cavity_volume(defect.omega_ge, cavity.n)
    g_phys = coupling_constant(defect.dipole_ge, defect.omega_ge, volume)
    if cavity.kappa_rel is not None:
        kappa_phys = cavity.kappa_rel * g_phys
    else:
        kappa_phys = kappa_from_quality(defect.omega_ge, cavity.Q)
    return MemoryDesignReport(
        name=defect.name,
        g_phys=g_phys,
        wavelength=resonant_wavelength(defect.omega_ge),
        volume=volume,
        omega0_phys=omega0_rel * g_phys,
        T_phys=T_rel / g_phys,
        bandwidth=bandwidth_physical(sigma_delta, g_phys, defect.omega_ge,
                                     mode=bandwidth_mode),
        kappa_phys=kappa_phys,
        Q_required=quality_factor(defect.omega_ge, kappa_phys),
    )


# ----------------------------------------------------------------------------
# defect records on disk
# ----------------------------------------------------------------------------

_REQUIRED_FIELDS = {"name", "omega_ge_rad_s", "omega_se_rad_s",
                    "dipole_ge_Cm", "dipole_se_Cm", "source"}


def parse_defects(doc) -> list[DefectRecord]:
    if not isinstance(doc, list):
        raise ConfigError("defects document must be a JSON array")
    records = []
    for entry in doc:
        if not isinstance(entry, dict):
            raise ConfigError("each defect entry must be a JSON object")
        missing = _REQUIRED_FIELDS - set(entry)
        if missing:
            raise ConfigError(f"defect entry missing fields: {sorted(missing)}")
        unknown = set(entry) - _REQUIRED_FIELDS
        if unknown:
            raise ConfigError(f"defect entry has unknown fields: {sorted(unknown)}")
        records.append(DefectRecord(
            name=str(entry["name"]),
            omega_ge=float(entry["omega_ge_rad_s"]),
            omega_se=float(entry["omega_se_rad_s"]),
            dipole_ge=float(entry["dipole_ge_Cm"]),
            dipole_se=float(entry["dipole_se_Cm"]),
            source=str(entry["source"]),
        ))
    return records


def load_defects(path: str | Path) -> list[DefectRecord]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return parse_defects(doc)


def builtin_defects_path() -> Path:
    """Path of the packaged defect records (hBN bi-vacancy candidates)."""
    return Path(resources.files("qmem").joinpath("data/defects.json"))


def load_builtin_defects() -> list[DefectRecord]:
    return load_defects(builtin_defects_path())
