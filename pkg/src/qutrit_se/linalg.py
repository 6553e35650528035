"""Dense complex linear algebra for small bipartite systems.

Everything here works on plain ``numpy`` arrays (complex128) and is sized for
the matrices this package actually meets: 2x2 ... 9x9. The eigensolver is a
self-contained cyclic Jacobi iteration so that positivity certificates
(partial-transpose spectra, density-matrix validation) do not depend on the
same code paths as the channel constructions they are meant to check.

Index convention for bipartite operators: subsystem A is the slow (outer)
index, i.e. a matrix on A (x) B has row index i*dB + k for A-index i and
B-index k.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "NonHermitianError",
    "NoConvergenceError",
    "dagger",
    "kron",
    "hermitian_eigenvalues",
    "partial_transpose",
    "partial_trace",
    "random_density_matrix",
]

HERMITICITY_TOL = 1e-10


class NonHermitianError(ValueError):
    """Input matrix is not Hermitian within tolerance."""


class NoConvergenceError(RuntimeError):
    """Jacobi sweep limit reached before the off-diagonal norm target."""


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def _square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with A as the slow (outer) factor."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermitian_eigenvalues(a: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi.

    Unitary 2x2 rotations (with the phase of the pivot entry absorbed) are
    applied in row-cyclic order until every off-diagonal magnitude is <= tol.

    Raises
    ------
    NonHermitianError
        if max|a - a^dag| > 1e-10.
    NoConvergenceError
        if the target is not met after 100 full sweeps.
    """
    a = _square(a)
    defect = np.max(np.abs(a - dagger(a))) if a.size else 0.0
    if defect > HERMITICITY_TOL:
        raise NonHermitianError(f"matrix deviates from Hermitian by {defect:.3e}")
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    m = (a + dagger(a)) / 2.0  # kill roundoff drift; also copies

    for _ in range(100):
        off = np.abs(m - np.diag(m.diagonal()))
        if off.max() <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(m[p, q])
                if r < 1e-300:
                    continue
                phase = m[p, q] / r
                theta = (m[q, q].real - m[p, p].real) / (2.0 * r)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = sgn / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # m <- U^dag m U with U[p,p]=c, U[p,q]=s*phase,
                # U[q,p]=-s*conj(phase), U[q,q]=c
                col_p = m[:, p].copy()
                col_q = m[:, q].copy()
                m[:, p] = c * col_p - s * np.conj(phase) * col_q
                m[:, q] = s * phase * col_p + c * col_q
                row_p = m[p, :].copy()
                row_q = m[q, :].copy()
                m[p, :] = c * row_p - s * phase * row_q
                m[q, :] = s * np.conj(phase) * row_p + c * row_q
                m[p, q] = 0.0
                m[q, p] = 0.0
                m[p, p] = m[p, p].real
                m[q, q] = m[q, q].real
    else:
        raise NoConvergenceError("off-diagonal norm not below tol after 100 sweeps")
    return np.sort(m.diagonal().real)


def _bipartite_tensor(rho: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    rho = _square(rho)
    if dim_a < 1 or dim_b < 1:
        raise ValueError("subsystem dimensions must be positive")
    if rho.shape[0] != dim_a * dim_b:
        raise ValueError(
            f"matrix of shape {rho.shape} does not factor as {dim_a}x{dim_b}"
        )
    return rho.reshape(dim_a, dim_b, dim_a, dim_b)


def partial_transpose(
    rho: np.ndarray, dim_a: int, dim_b: int, side: str = "B"
) -> np.ndarray:
    """Transpose one subsystem of a bipartite operator.

    The spectrum of the result is independent of ``side``.
    """
    t = _bipartite_tensor(rho, dim_a, dim_b)
    if side == "A":
        t = t.transpose(2, 1, 0, 3)
    elif side == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return t.reshape(dim_a * dim_b, dim_a * dim_b)


def partial_trace(
    rho: np.ndarray, dim_a: int, dim_b: int, side: str = "B"
) -> np.ndarray:
    """Trace out one subsystem; ``side`` names the subsystem removed."""
    t = _bipartite_tensor(rho, dim_a, dim_b)
    if side == "A":
        return np.trace(t, axis1=0, axis2=2)
    if side == "B":
        return np.trace(t, axis1=1, axis2=3)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random full-rank density matrix (normalized Ginibre G G^dag)."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real
