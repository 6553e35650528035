"""Pauli / Gell-Mann generator algebra and Bloch-vector dictionaries.

A qubit state is written rho = (1/2)(I + n . sigma) with n in R^3, a qutrit
state rho = (1/3)(I + sqrt(3) n . lambda) with n in R^8, so the inverse maps
are n_i = Tr(rho sigma_i) and n_i = (sqrt(3)/2) Tr(rho lambda_i).

Generators are normalized to Tr(g_i g_j) = 2 delta_ij. Structure constants are
extracted from traces,

    f_ijk = Tr([g_i, g_j] g_k) / (4i),   d_ijk = Tr({g_i, g_j} g_k) / 4,

not hard-coded tables. The symmetric star product carries a sqrt(3) so that
pure qutrit states satisfy n * n = n together with |n| = 1.

Generator index i = 1..8 in the usual physics labelling corresponds to array
index i-1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import NonHermitianError, dagger

__all__ = [
    "GeneratorBasis",
    "pauli_matrices",
    "gell_mann_matrices",
    "generator_basis",
    "structure_constants",
    "bloch_to_density",
    "density_to_bloch",
    "star_product",
    "is_pure_bloch",
    "atom_vars_to_bloch",
]

_REALNESS_TOL = 1e-12


def pauli_matrices() -> np.ndarray:
    """The three Pauli matrices, shape (3, 2, 2)."""
    return np.array(
        [
            [[0, 1], [1, 0]],
            [[0, -1j], [1j, 0]],
            [[1, 0], [0, -1]],
        ],
        dtype=complex,
    )


def gell_mann_matrices() -> np.ndarray:
    """The eight Gell-Mann matrices, shape (8, 3, 3)."""
    s3 = np.sqrt(3.0)
    g = np.zeros((8, 3, 3), dtype=complex)
    g[0, 0, 1] = g[0, 1, 0] = 1
    g[1, 0, 1] = -1j
    g[1, 1, 0] = 1j
    g[2, 0, 0] = 1
    g[2, 1, 1] = -1
    g[3, 0, 2] = g[3, 2, 0] = 1
    g[4, 0, 2] = -1j
    g[4, 2, 0] = 1j
    g[5, 1, 2] = g[5, 2, 1] = 1
    g[6, 1, 2] = -1j
    g[6, 2, 1] = 1j
    g[7] = np.diag([1, 1, -2]) / s3
    return g


def structure_constants(generators: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Antisymmetric f and symmetric d tensors of an orthonormal basis.

    Requires Tr(g_i g_j) = 2 delta_ij (raises ValueError otherwise); the trace
    formulas then return real tensors, checked to 1e-12.
    """
    g = np.asarray(generators, dtype=complex)
    k = g.shape[0]
    gram = np.einsum("iab,jba->ij", g, g)
    if np.max(np.abs(gram - 2.0 * np.eye(k))) > 1e-10:
        raise ValueError("generator basis is not orthonormal: Tr(g_i g_j) != 2 delta_ij")
    # T[i,j,k] = Tr(g_i g_j g_k)
    t = np.einsum("iab,jbc,kca->ijk", g, g, g)
    f = (t - t.transpose(1, 0, 2)) / 4j
    d = (t + t.transpose(1, 0, 2)) / 4.0
    for name, arr in (("f", f), ("d", d)):
        if np.max(np.abs(arr.imag)) > _REALNESS_TOL:
            raise ValueError(f"structure constants {name} came out non-real")
    return f.real, d.real


@dataclass(frozen=True)
class GeneratorBasis:
    """An orthonormal su(d) generator set with its structure constants.

    ``identity_element`` is the trace-orthogonal completion of the basis
    (sqrt(2/3) I for the qutrit, I for the qubit). ``d`` is identically zero
    for the qubit.
    """

    dim: int
    generators: np.ndarray
    identity_element: np.ndarray
    f: np.ndarray
    d: np.ndarray

    @property
    def n_generators(self) -> int:
        return self.dim * self.dim - 1


@lru_cache(maxsize=None)
def generator_basis(dim: int) -> GeneratorBasis:
    """Shared immutable basis for dim 2 (Pauli) or 3 (Gell-Mann)."""
    if dim == 2:
        g = pauli_matrices()
        ident = np.eye(2, dtype=complex)
    elif dim == 3:
        g = gell_mann_matrices()
        ident = np.sqrt(2.0 / 3.0) * np.eye(3, dtype=complex)
    else:
        raise ValueError(f"only dim 2 and 3 are supported, got {dim}")
    f, d = structure_constants(g)
    for arr in (g, ident, f, d):
        arr.setflags(write=False)
    return GeneratorBasis(dim=dim, generators=g, identity_element=ident, f=f, d=d)


def _dim_for_bloch(n: np.ndarray) -> int:
    if n.shape == (3,):
        return 2
    if n.shape == (8,):
        return 3
    raise ValueError(f"Bloch vector must have length 3 or 8, got shape {n.shape}")


def bloch_to_density(n: np.ndarray) -> np.ndarray:
    """Density matrix of a Bloch vector (length 3 -> qubit, 8 -> qutrit)."""
    n = np.asarray(n, dtype=float)
    dim = _dim_for_bloch(n)
    basis = generator_basis(dim)
    weighted = np.einsum("i,iab->ab", n, basis.generators)
    if dim == 2:
        return (np.eye(2, dtype=complex) + weighted) / 2.0
    return (np.eye(3, dtype=complex) + np.sqrt(3.0) * weighted) / 3.0


def density_to_bloch(rho: np.ndarray) -> np.ndarray:
    """Bloch vector of a unit-trace Hermitian matrix (2x2 or 3x3)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape == (2, 2):
        dim = 2
    elif rho.shape == (3, 3):
        dim = 3
    else:
        raise ValueError(f"expected a 2x2 or 3x3 matrix, got shape {rho.shape}")
    defect = np.max(np.abs(rho - dagger(rho)))
    if defect > 1e-10:
        raise NonHermitianError(f"matrix deviates from Hermitian by {defect:.3e}")
    if abs(np.trace(rho).real - 1.0) > 1e-10:
        raise ValueError(f"matrix trace {np.trace(rho).real!r} is not 1")
    basis = generator_basis(dim)
    coeffs = np.einsum("iab,ba->i", basis.generators, rho)
    scale = 1.0 if dim == 2 else np.sqrt(3.0) / 2.0
    return scale * coeffs.real


def star_product(n: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Symmetric product (n * m)_i = sqrt(3) d_ijk n_j m_k on R^8."""
    n = np.asarray(n, dtype=float)
    m = np.asarray(m, dtype=float)
    if n.shape != (8,) or m.shape != (8,):
        raise ValueError("star product is defined for length-8 Bloch vectors only")
    d = generator_basis(3).d
    return np.sqrt(3.0) * np.einsum("ijk,j,k->i", d, n, m)


def is_pure_bloch(n: np.ndarray, tol: float = 1e-10) -> bool:
    """Purity test: |n|^2 = 1, and for qutrits also n * n = n, within tol."""
    n = np.asarray(n, dtype=float)
    dim = _dim_for_bloch(n)
    if abs(n @ n - 1.0) > tol:
        return False
    if dim == 3:
        if np.max(np.abs(star_product(n, n) - n)) > tol:
            return False
    return True


def atom_vars_to_bloch(
    p2: float, p3: float, d12: complex, d13: complex, d23: complex
) -> np.ndarray:
    """Bloch vector of a three-level state given populations and coherences.

    ``p2``/``p3`` are the two excited-level populations (the ground one is
    1 - p2 - p3); ``dij`` is the (i, j) coherence of the density matrix.
    """
    if p2 < 0 or p3 < 0 or p2 + p3 > 1:
        raise ValueError(f"populations p2={p2}, p3={p3} are not a valid distribution")
    s3 = np.sqrt(3.0)
    return np.array(
        [
            s3 * np.real(d12),
            -s3 * np.imag(d12),
            (s3 / 2.0) * (1.0 - 2.0 * p2 - p3),
            s3 * np.real(d13),
            -s3 * np.imag(d13),
            s3 * np.real(d23),
            -s3 * np.imag(d23),
            0.5 * (1.0 - 3.0 * p3),
        ]
    )
