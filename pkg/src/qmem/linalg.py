"""Dense complex linear algebra for small Hilbert spaces (dim <= 8).

Everything here works on plain ``numpy`` arrays of ``complex128``. Operators
and density matrices are immutable by convention: functions never mutate
their arguments and always return fresh arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-8
POSITIVITY_TOL = 1e-7


def projector(i: int, j: int, dim: int) -> np.ndarray:
    """Return |i><j| as a dim x dim complex matrix."""
    if dim < 2:
        raise ConfigError(f"dim must be >= 2, got {dim}")
    if not (0 <= i < dim and 0 <= j < dim):
        raise ConfigError(f"projector indices ({i},{j}) out of range for dim {dim}")
    out = np.zeros((dim, dim), dtype=np.complex128)
    out[i, j] = 1.0
    return out


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def is_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    return bool(np.max(np.abs(a - dagger(a))) <= tol)


def expectation(rho: np.ndarray, op: np.ndarray) -> complex:
    """Tr(rho op); real up to roundoff whenever op is Hermitian."""
    if rho.shape != op.shape:
        raise ConfigError(f"dimension mismatch: {rho.shape} vs {op.shape}")
    return complex(np.trace(rho @ op))


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a Hermitian operator.

    ``eigenvalues`` are sorted ascending; column k of ``eigenvectors`` is the
    unit eigenvector for eigenvalue k, with a fixed phase: the component of
    largest magnitude is made real and positive. Eigenvalue ties are ordered
    by ascending index of that largest-magnitude component, so repeated runs
    produce identical output.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eigen(a: np.ndarray, tol: float = HERMITICITY_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix with a deterministic phase gauge."""
    dev = float(np.max(np.abs(a - dagger(a))))
    if dev > tol:
        raise ConfigError(f"matrix is not Hermitian: max|A - A^dag| = {dev:.3e}")
    vals, vecs = np.linalg.eigh(a)
    anchors = np.argmax(np.abs(vecs), axis=0)
    for k in range(vals.size):
        pivot = vecs[anchors[k], k]
        mag = abs(pivot)
        if mag > 0.0:
            vecs[:, k] *= pivot.conj() / mag
    order = np.lexsort((anchors, vals))
    return EigenDecomposition(vals[order].copy(), np.ascontiguousarray(vecs[:, order]))


def validate_density_matrix(rho: np.ndarray, where: str = "rho") -> None:
    """Raise if rho is not Hermitian, unit-trace and positive semidefinite."""
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ConfigError(f"{where}: expected a square matrix, got shape {rho.shape}")
    herm = float(np.max(np.abs(rho - dagger(rho))))
    if herm > HERMITICITY_TOL:
        raise ConfigError(f"{where}: not Hermitian, max deviation {herm:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise ConfigError(f"{where}: trace {tr} differs from 1 beyond {TRACE_TOL}")
    lo = float(np.linalg.eigvalsh(rho).min())
    if lo < -POSITIVITY_TOL:
        raise ConfigError(f"{where}: negative eigenvalue {lo:.3e}")


def pure_state_density(ket: np.ndarray) -> np.ndarray:
    """|psi><psi| for a (not necessarily normalized) state vector."""
    v = np.asarray(ket, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())
