"""Dense complex linear algebra for small bipartite systems.

Everything here operates on plain ``numpy`` arrays of complex doubles.
Matrices are kept small (side <= 64), so no attempt is made at sparsity
or blocking; robustness and clarity win over speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class DimSplit:
    """Bipartite dimension split (dim_a, dim_b) labelling a composite matrix."""

    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValueError(f"subsystem dimensions must be >= 1, got {self}")

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


def _as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def _check_split(m: np.ndarray, split: DimSplit) -> None:
    n = split.dim
    if m.shape != (n, n):
        raise ValueError(
            f"matrix shape {m.shape} incompatible with split "
            f"{split.dim_a}x{split.dim_b} (expected {n}x{n})"
        )


def kron(a, b) -> np.ndarray:
    """Kronecker product with row-major composite indexing ((i,k),(j,l))."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def partial_trace(m, split: DimSplit, over: str) -> np.ndarray:
    """Trace out one subsystem of a composite matrix.

    Parameters
    ----------
    m : array_like
        Square matrix of side ``split.dim``.
    split : DimSplit
        Bipartite dimensions of the composite index.
    over : {"a", "b"}
        Which subsystem to trace out; the other one is retained.
    """
    m = _as_matrix(m)
    _check_split(m, split)
    t = m.reshape(split.dim_a, split.dim_b, split.dim_a, split.dim_b)
    if over == "b":
        return np.einsum("ikjk->ij", t)
    if over == "a":
        return np.einsum("ikil->kl", t)
    raise ValueError(f"over must be 'a' or 'b', got {over!r}")


def partial_transpose(m, split: DimSplit, on: str = "b") -> np.ndarray:
    """Transpose the composite matrix on one tensor factor only."""
    m = _as_matrix(m)
    _check_split(m, split)
    t = m.reshape(split.dim_a, split.dim_b, split.dim_a, split.dim_b)
    if on == "b":
        t = t.transpose(0, 3, 2, 1)
    elif on == "a":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"on must be 'a' or 'b', got {on!r}")
    return t.reshape(split.dim, split.dim).copy()


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = _as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def hermitize(m) -> np.ndarray:
    """Return the Hermitian part (M + M^dagger)/2."""
    m = _as_matrix(m)
    return (m + m.conj().T) / 2


def hermitian_eig(m, tol: float = HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized before solving to absorb rounding noise from
    upstream products; inputs farther than ``tol`` from Hermitian are
    rejected.

    Returns
    -------
    (w, v) : eigenvalues ascending (real 1-d array), eigenvectors as
        columns of ``v`` (orthonormal).
    """
    m = _as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"eigendecomposition needs a square matrix, got {m.shape}")
    if not is_hermitian(m, tol):
        dev = float(np.max(np.abs(m - m.conj().T)))
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e} > {tol})")
    w, v = np.linalg.eigh(hermitize(m))
    return w, v


def norm(m, kind: str = "frobenius") -> float:
    """Matrix norm.

    kind:
        "frobenius" -- sqrt of the sum of squared entry moduli
        "trace"     -- sum of singular values
        "max_abs"   -- largest entry modulus
    """
    m = _as_matrix(m)
    if kind == "frobenius":
        return float(np.linalg.norm(m))
    if kind == "max_abs":
        return float(np.max(np.abs(m)))
    if kind == "trace":
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"trace norm needs a square matrix, got {m.shape}")
        if is_hermitian(m):
            w, _ = hermitian_eig(m)
            return float(np.sum(np.abs(w)))
        # |m| via eigenvalues of m^dagger m, square-rooted
        w = np.linalg.eigvalsh(m.conj().T @ m)
        return float(np.sum(np.sqrt(np.clip(w, 0.0, None))))
    raise ValueError(f"unknown norm kind {kind!r}")


def matrix_to_json(m) -> dict:
    """Serialize to the shared JSON matrix format (row-major re/im lists)."""
    m = _as_matrix(m)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [float(x) for x in m.real.ravel()],
        "im": [float(x) for x in m.imag.ravel()],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.size != rows * cols or im.size != rows * cols:
        raise ValueError(
            f"matrix payload length {re.size}/{im.size} does not match {rows}x{cols}"
        )
    return (re + 1j * im).reshape(rows, cols)
