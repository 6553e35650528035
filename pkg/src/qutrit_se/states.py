"""Bipartite reference states and their diagnostics.

Werner states of two qubits (d=2) or two qutrits (d=3) interpolate between
the maximally mixed state and the maximally entangled one,

    rho_W = (1 - p)/d^2 I + p |Psi><Psi|,   |Psi> = d^{-1/2} sum_i |ii>.

Correlation matrices use the generator normalization of this package:
C_ij = Tr[rho (sigma_i (x) sigma_j)] for qubits and
C_ij = (3/4) Tr[rho (lambda_i (x) lambda_j)] for qutrits, so the maximally
entangled state gives C = diag(s) resp. C = diag(s)/2 with
s = (1,-1,1) resp. (1,-1,1,1,-1,1,-1,1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import dagger, hermitian_eigenvalues
from .su import generator_basis

__all__ = [
    "max_entangled",
    "werner",
    "correlation_matrix",
    "ValidationReport",
    "validate_density",
]


def _check_dim(d: int) -> None:
    if d not in (2, 3):
        raise ValueError(f"local dimension must be 2 or 3, got {d}")


def max_entangled(d: int) -> np.ndarray:
    """Projector onto d^{-1/2} sum_i |ii>, shape (d^2, d^2)."""
    _check_dim(d)
    psi = np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)
    return np.outer(psi, psi.conj())


def werner(d: int, p: float) -> np.ndarray:
    """Werner state: (1-p)/d^2 identity plus p times the entangled projector."""
    _check_dim(d)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter p={p} outside [0, 1]")
    return (1.0 - p) / d**2 * np.eye(d * d, dtype=complex) + p * max_entangled(d)


def correlation_matrix(rho: np.ndarray, d: int) -> np.ndarray:
    """Generator-generator correlation matrix of a two-qudit state."""
    _check_dim(d)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d * d, d * d):
        raise ValueError(f"expected shape {(d * d, d * d)}, got {rho.shape}")
    g = generator_basis(d).generators
    t = rho.reshape(d, d, d, d)
    # Tr[rho (g_a (x) g_b)] with A as the slow index
    c = np.einsum("ikjl,aji,blk->ab", t, g, g)
    scale = 1.0 if d == 2 else 0.75
    return scale * c.real


@dataclass(frozen=True)
class ValidationReport:
    """Measured density-matrix defects; never raises, only reports."""

    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float

    @property
    def passed(self) -> bool:
        return (
            self.hermiticity_defect <= 1e-10
            and self.trace_defect <= 1e-10
            and self.min_eigenvalue >= -1e-10
        )


def validate_density(rho: np.ndarray) -> ValidationReport:
    """Hermiticity, trace and positivity certificate for a candidate state."""
    rho = np.asarray(rho, dtype=complex)
    herm = float(np.max(np.abs(rho - dagger(rho))))
    tr = float(abs(np.trace(rho) - 1.0))
    # eigensolve the Hermitian part so the report stays total
    eigs = hermitian_eigenvalues((rho + dagger(rho)) / 2.0)
    return ValidationReport(
        hermiticity_defect=herm, trace_defect=tr, min_eigenvalue=float(eigs[0])
    )
