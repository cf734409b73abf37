"""Bipartite quantum states: density matrices, canonical families, marginals.

All randomness flows through ``numpy.random.Generator`` seeded with PCG64,
so every ensemble is bit-reproducible from its seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .matcore import DimSplit

TRACE_TOL = 1e-10
PSD_TOL = 1e-10
NORM_TOL = 1e-12

BELL_KINDS = ("phi+", "phi-", "psi+", "psi-")


@dataclass(frozen=True)
class PureState:
    """Normalized state vector on a bipartite system."""

    amps: np.ndarray
    split: DimSplit

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).ravel()
        object.__setattr__(self, "amps", amps)
        if amps.size != self.split.dim:
            raise ValueError(
                f"amplitude vector length {amps.size} != dim {self.split.dim}"
            )
        nrm = float(np.vdot(amps, amps).real)
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector not normalized: |psi|^2 = {nrm!r}")


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian PSD unit-trace matrix tagged with its bipartite split."""

    mat: np.ndarray
    split: DimSplit

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        object.__setattr__(self, "mat", mat)
        problems = self.validate()
        if problems:
            raise ValueError("invalid density matrix: " + "; ".join(problems))

    def validate(self) -> list[str]:
        """Re-check all invariants; returns a list of violation messages."""
        out = []
        n = self.split.dim
        if self.mat.shape != (n, n):
            out.append(f"shape {self.mat.shape} != ({n}, {n})")
            return out
        herm_dev = float(np.max(np.abs(self.mat - self.mat.conj().T)))
        if herm_dev > matcore.HERMITIAN_TOL:
            out.append(f"hermiticity deviation {herm_dev:.3e}")
        tr = complex(np.trace(self.mat))
        if abs(tr.real - 1.0) > TRACE_TOL or abs(tr.imag) > 1e-12:
            out.append(f"trace {tr!r} != 1")
        if herm_dev <= matcore.HERMITIAN_TOL:
            wmin = float(np.linalg.eigvalsh(matcore.hermitize(self.mat))[0])
            if wmin < -PSD_TOL:
                out.append(f"negative eigenvalue {wmin:.3e}")
        return out


def density_from_pure(psi: PureState) -> DensityMatrix:
    """Rank-one density matrix |psi><psi|."""
    return DensityMatrix(np.outer(psi.amps, psi.amps.conj()), psi.split)


def marginals(rho: DensityMatrix) -> tuple[DensityMatrix, DensityMatrix]:
    """Reduced states (rho_A, rho_B) via partial trace."""
    a = matcore.partial_trace(rho.mat, rho.split, over="b")
    b = matcore.partial_trace(rho.mat, rho.split, over="a")
    return (
        DensityMatrix(a, DimSplit(rho.split.dim_a, 1)),
        DensityMatrix(b, DimSplit(1, rho.split.dim_b)),
    )


def pi_map(rho: DensityMatrix) -> DensityMatrix:
    """Product of the marginals, rho |-> rho_A (x) rho_B.

    Idempotent; its fixed points are exactly the product states.
    """
    a, b = marginals(rho)
    return DensityMatrix(matcore.kron(a.mat, b.mat), rho.split)


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2); 1 exactly on pure states, 1/dim on the maximally mixed."""
    return float(np.trace(rho.mat @ rho.mat).real)


def bell_state(kind: str) -> DensityMatrix:
    """One of the four maximally entangled two-qubit states."""
    s = 1.0 / np.sqrt(2.0)
    table = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    if kind not in table:
        raise ValueError(f"unknown Bell state {kind!r}; choose from {BELL_KINDS}")
    return density_from_pure(PureState(np.array(table[kind]), DimSplit(2, 2)))


def werner_state(p: float) -> DensityMatrix:
    """p |phi+><phi+| + (1-p) I/4 for p in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"werner parameter must lie in [0, 1], got {p}")
    phi = bell_state("phi+").mat
    return DensityMatrix(p * phi + (1.0 - p) * np.eye(4) / 4.0, DimSplit(2, 2))


def random_pure(split: DimSplit, seed: int) -> PureState:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(split.dim) + 1j * rng.standard_normal(split.dim)
    return PureState(z / np.linalg.norm(z), split)


def random_mixed(split: DimSplit, rank: int, seed: int) -> DensityMatrix:
    """Random mixed state of rank <= rank via a Ginibre factor G G^dagger."""
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((split.dim, rank)) + 1j * rng.standard_normal(
        (split.dim, rank)
    )
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, split)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-random unitary: QR of a Ginibre matrix with phase fixing."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def state_to_json(state) -> dict:
    """State JSON: density or pure, with the shared matrix payload."""
    if isinstance(state, DensityMatrix):
        return {
            "type": "density",
            "dim_a": state.split.dim_a,
            "dim_b": state.split.dim_b,
            "matrix": matcore.matrix_to_json(state.mat),
        }
    if isinstance(state, PureState):
        return {
            "type": "pure",
            "dim_a": state.split.dim_a,
            "dim_b": state.split.dim_b,
            "amplitudes": matcore.matrix_to_json(state.amps.reshape(-1, 1)),
        }
    raise TypeError(f"cannot serialize {type(state).__name__}")


def state_from_json(obj: dict):
    split = DimSplit(int(obj["dim_a"]), int(obj["dim_b"]))
    if obj.get("type") == "density":
        return DensityMatrix(matcore.matrix_from_json(obj["matrix"]), split)
    if obj.get("type") == "pure":
        return PureState(matcore.matrix_from_json(obj["amplitudes"]).ravel(), split)
    raise ValueError(f"unknown state type {obj.get('type')!r}")
