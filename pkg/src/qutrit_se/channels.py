"""Spontaneous-emission channels for a qubit and a V-configuration qutrit.

The qutrit has one ground level and two excited levels that both decay to it
with Einstein coefficients A2 and A3 (the qubit analogue has a single rate
A1). The same channel is provided in three independent forms that the test
suite cross-checks against each other:

* an affine map n -> D(t) n + T(t) on the 8-dimensional Bloch vector,
* an operator-sum (Kraus) form built from generator combinations,
* a Lindblad master equation integrated with fixed-step RK4.

In the Bloch form D(t) is diagonal except for a single entry coupling the two
diagonal generator directions (array element D[2, 7]), and the shift T(t)
drives every initial state toward the ground state, which is the unique fixed
point at t -> infinity.

Bipartite use: ``bipartite_channel`` lifts a local channel to two qudits,
either one-sided or as the mixture q (channel on A) + (1-q) (channel on B).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .linalg import dagger, kron
from .su import generator_basis

__all__ = [
    "ChannelParams",
    "AffineBlochMap",
    "KrausChannel",
    "se_affine_map",
    "qutrit_kraus_coefficients",
    "se_kraus_qutrit",
    "se_kraus_qubit",
    "apply_kraus",
    "lindblad_jump_ops",
    "lindblad_evolve",
    "bipartite_channel",
]


@dataclass(frozen=True)
class ChannelParams:
    """Decay rates, elapsed time and the two-sided mixing weight q."""

    a1: float = 1.0
    a2: float = 1.0
    a3: float = 1.0
    t: float = 0.0
    q: float = 0.5

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "a3"):
            if getattr(self, name) < 0:
                raise ValueError(f"decay rate {name} must be >= 0")
        if self.t < 0:
            raise ValueError("time t must be >= 0")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("mixing weight q must lie in [0, 1]")

    @property
    def a21(self) -> float:
        return self.a2 / self.a1

    @property
    def a31(self) -> float:
        return self.a3 / self.a1

    def with_time(self, t: float) -> "ChannelParams":
        return dataclasses.replace(self, t=t)


@dataclass(frozen=True)
class AffineBlochMap:
    """Bloch-space action n -> damping @ n + shift at a fixed time."""

    damping: np.ndarray
    shift: np.ndarray
    t: float

    def apply(self, n: np.ndarray) -> np.ndarray:
        return self.damping @ np.asarray(n, dtype=float) + self.shift


@dataclass(frozen=True)
class KrausChannel:
    """Operator-sum form sum_k K_k rho K_k^dag on a dim-level system."""

    dim: int
    operators: tuple
    t: float

    def completeness_defect(self) -> float:
        acc = sum(dagger(k) @ k for k in self.operators)
        return float(np.max(np.abs(acc - np.eye(self.dim))))


def se_affine_map(params: ChannelParams) -> AffineBlochMap:
    """Qutrit emission channel as an affine map on R^8."""
    e2 = np.exp(-params.a2 * params.t)
    e3 = np.exp(-params.a3 * params.t)
    h2 = np.exp(-params.a2 * params.t / 2.0)
    h3 = np.exp(-params.a3 * params.t / 2.0)
    h23 = np.exp(-(params.a2 + params.a3) * params.t / 2.0)
    s3 = np.sqrt(3.0)

    d = np.diag([h2, h2, e2, h3, h3, h23, h23, e3])
    d[2, 7] = (e3 - e2) / s3
    shift = np.zeros(8)
    shift[2] = (3.0 - e3 - 2.0 * e2) / (2.0 * s3)
    shift[7] = (1.0 - e3) / 2.0
    return AffineBlochMap(damping=d, shift=shift, t=params.t)


def qutrit_kraus_coefficients(a2: float, a3: float, t: float) -> dict:
    """Generator-expansion coefficients of the three qutrit Kraus operators."""
    h2 = np.exp(-a2 * t / 2.0)
    h3 = np.exp(-a3 * t / 2.0)
    w2 = np.sqrt(max(0.0, 1.0 - h2 * h2))
    w3 = np.sqrt(max(0.0, 1.0 - h3 * h3))
    s3 = np.sqrt(3.0)
    return {
        "k00": (1.0 + h2 + h3) / 3.0,
        "k03": (1.0 - h2) / 2.0,
        "k08": (1.0 + h2 - 2.0 * h3) / (2.0 * s3),
        "k11": w2 / 2.0,
        "k12": 0.5j * w2,
        "k24": w3 / 2.0,
        "k25": 0.5j * w3,
    }


def se_kraus_qutrit(params: ChannelParams) -> KrausChannel:
    """Qutrit emission channel in operator-sum form (three operators)."""
    g = generator_basis(3).generators
    k = qutrit_kraus_coefficients(params.a2, params.a3, params.t)
    ident = np.eye(3, dtype=complex)
    k0 = k["k00"] * ident + k["k03"] * g[2] + k["k08"] * g[7]
    k1 = k["k11"] * g[0] + k["k12"] * g[1]
    k2 = k["k24"] * g[3] + k["k25"] * g[4]
    return KrausChannel(dim=3, operators=(k0, k1, k2), t=params.t)


def se_kraus_qubit(params: ChannelParams) -> KrausChannel:
    """Qubit emission channel in operator-sum form (two operators)."""
    g = generator_basis(2).generators
    h1 = np.exp(-params.a1 * params.t / 2.0)
    w1 = np.sqrt(max(0.0, 1.0 - h1 * h1))
    ident = np.eye(2, dtype=complex)
    k0 = (1.0 + h1) / 2.0 * ident + (1.0 - h1) / 2.0 * g[2]
    k1 = (w1 / 2.0) * g[0] + (0.5j * w1) * g[1]
    return KrausChannel(dim=2, operators=(k0, k1), t=params.t)


def apply_kraus(rho: np.ndarray, channel: KrausChannel) -> np.ndarray:
    """sum_k K_k rho K_k^dag."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (channel.dim, channel.dim):
        raise ValueError(
            f"state shape {rho.shape} does not match channel dimension {channel.dim}"
        )
    return sum(k @ rho @ dagger(k) for k in channel.operators)


def lindblad_jump_ops(a2: float, a3: float) -> tuple:
    """Jump operators of the qutrit emission generator."""
    g = generator_basis(3).generators
    l1 = (np.sqrt(a2) / 2.0) * (g[0] + 1j * g[1])
    l2 = (np.sqrt(a3) / 2.0) * (g[3] + 1j * g[4])
    return (l1, l2)


def lindblad_evolve(rho0: np.ndarray, params: ChannelParams, steps: int) -> np.ndarray:
    """Integrate the qutrit master equation with classical RK4, h = t/steps.

    drho/dt = sum_k ( L_k rho L_k^dag - (1/2){L_k^dag L_k, rho} )
    """
    rho = np.asarray(rho0, dtype=complex)
    if rho.shape != (3, 3):
        raise ValueError(f"expected a 3x3 state, got shape {rho.shape}")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    jumps = lindblad_jump_ops(params.a2, params.a3)
    gsum = sum(dagger(l) @ l for l in jumps)

    def rhs(r: np.ndarray) -> np.ndarray:
        out = -0.5 * (gsum @ r + r @ gsum)
        for l in jumps:
            out += l @ r @ dagger(l)
        return out

    h = params.t / steps
    for _ in range(steps):
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5 * h * k1)
        k3 = rhs(rho + 0.5 * h * k2)
        k4 = rhs(rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return rho


def bipartite_channel(
    rho: np.ndarray, channel: KrausChannel, mode: str = "symmetric", q: float = 0.5
) -> np.ndarray:
    """Act with a local channel on a two-qudit state.

    mode 'A' or 'B' applies the channel to that subsystem only; 'symmetric'
    returns the mixture q.(on A) + (1-q).(on B).
    """
    rho = np.asarray(rho, dtype=complex)
    dim = channel.dim
    if rho.shape != (dim * dim, dim * dim):
        raise ValueError(
            f"state shape {rho.shape} does not match two systems of dimension {dim}"
        )
    if not 0.0 <= q <= 1.0:
        raise ValueError("mixing weight q must lie in [0, 1]")
    ident = np.eye(dim, dtype=complex)

    def one_sided(side: str) -> np.ndarray:
        out = np.zeros_like(rho)
        for k in channel.operators:
            lifted = kron(k, ident) if side == "A" else kron(ident, k)
            out += lifted @ rho @ dagger(lifted)
        return out

    if mode == "A":
        return one_sided("A")
    if mode == "B":
        return one_sided("B")
    if mode == "symmetric":
        return q * one_sided("A") + (1.0 - q) * one_sided("B")
    raise ValueError(f"mode must be 'A', 'B' or 'symmetric', got {mode!r}")
