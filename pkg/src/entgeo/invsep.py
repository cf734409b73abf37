"""Fixed-point separability machinery and entanglement measures.

The central objects are maps on convex sets of states: marginalization
lifted to polytopes, the product-and-mix hull of two marginal sets, and
their composition, whose fixed points ("convex separable subsets") are
exactly the sets recoverable from their own marginals.  A state is
separable iff it sits inside some such fixed set.

Both backends share one LP engine: density-matrix polytopes are flattened
to real coordinate vectors (re/im interleaved) so GPT and quantum flavors
run through identical convex-geometry code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import comgeo, matcore, qstate
from .comgeo import BilinearState, ComModel, VPolytope
from .matcore import DimSplit
from .qstate import DensityMatrix

CSS_TOL = 1e-8
PPT_TOL = 1e-10


def flatten_matrix(m: np.ndarray) -> np.ndarray:
    """Complex matrix -> real coordinate vector (re/im interleaved)."""
    v = np.asarray(m, dtype=complex).ravel()
    out = np.empty(2 * v.size)
    out[0::2] = v.real
    out[1::2] = v.imag
    return out


def unflatten_matrix(x: np.ndarray, side: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return (x[0::2] + 1j * x[1::2]).reshape(side, side)


@dataclass(frozen=True)
class StatePolytope:
    """Convex set of density matrices on a fixed split, given by vertices."""

    vertices: tuple
    split: DimSplit

    def __post_init__(self):
        if len(self.vertices) == 0:
            raise ValueError("state polytope needs at least one vertex")
        mats = []
        for v in self.vertices:
            rho = v if isinstance(v, DensityMatrix) else DensityMatrix(v, self.split)
            if rho.split.dim != self.split.dim:
                raise ValueError("vertex dimension mismatch")
            mats.append(rho.mat)
        object.__setattr__(self, "vertices", tuple(mats))

    def flat(self) -> np.ndarray:
        return np.array([flatten_matrix(m) for m in self.vertices])


@dataclass(frozen=True)
class Decomposition:
    """Convex combination of product states: terms (p_i, a_i, b_i)."""

    terms: tuple
    split: DimSplit

    def __post_init__(self):
        weights = np.array([t[0] for t in self.terms], dtype=float)
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-10:
            raise ValueError(
                f"weights must be nonnegative and sum to 1, got sum {weights.sum()!r}"
            )

    def state(self) -> DensityMatrix:
        """The decomposed state, sum_i p_i a_i (x) b_i."""
        acc = sum(p * matcore.kron(a, b) for p, a, b in self.terms)
        return DensityMatrix(acc, self.split)


@dataclass(frozen=True)
class MeasureConfig:
    """Knobs of the generalized correlation measure family."""

    f_kind: str = "identity"   # identity | abs | square
    norm_kind: str = "frobenius"  # frobenius | trace | max_abs
    psi_kind: str = "lambda_tilde"
    phi_kind: str = "partial_trace"

    def __post_init__(self):
        if self.f_kind not in ("identity", "abs", "square"):
            raise ValueError(f"unknown f_kind {self.f_kind!r}")
        if self.norm_kind not in ("frobenius", "trace", "max_abs"):
            raise ValueError(f"unknown norm_kind {self.norm_kind!r}")
        if self.psi_kind != "lambda_tilde" or self.phi_kind != "partial_trace":
            raise ValueError("only the lambda_tilde / partial_trace maps are built in")


# ---------------------------------------------------------------------------
# Convex-set maps (quantum flavor)


def _reduce_mats(mats: list, split: DimSplit) -> StatePolytope:
    flat = comgeo.dedup_rows(np.array([flatten_matrix(m) for m in mats]))
    reduced = comgeo.reduce_vertices(VPolytope(flat))
    side = split.dim
    return StatePolytope(
        tuple(unflatten_matrix(x, side) for x in reduced.vertices), split
    )


def tau(c: StatePolytope) -> tuple[StatePolytope, StatePolytope]:
    """Lift of the partial traces to convex sets: vertexwise marginals, reduced."""
    da, db = c.split.dim_a, c.split.dim_b
    marg_a = [matcore.partial_trace(v, c.split, over="b") for v in c.vertices]
    marg_b = [matcore.partial_trace(v, c.split, over="a") for v in c.vertices]
    return (
        _reduce_mats(marg_a, DimSplit(da, 1)),
        _reduce_mats(marg_b, DimSplit(1, db)),
    )


def lambda_map(c1: StatePolytope, c2: StatePolytope) -> StatePolytope:
    """Hull of all pairwise products of the two vertex sets."""
    da = c1.split.dim
    db = c2.split.dim
    prods = [matcore.kron(a, b) for a in c1.vertices for b in c2.vertices]
    return _reduce_mats(prods, DimSplit(da, db))


def lambda_tau(c: StatePolytope) -> StatePolytope:
    """Marginalize, then product-and-mix; idempotent on all inputs."""
    c1, c2 = tau(c)
    return lambda_map(c1, c2)


def polytopes_equal(p: StatePolytope, q: StatePolytope, tol: float) -> bool:
    return comgeo.polytope_equal(VPolytope(p.flat()), VPolytope(q.flat()), tol)


def is_css(c: StatePolytope, tol: float = CSS_TOL) -> bool:
    """Fixed-point test: is the set invariant under marginalize-and-rebuild?"""
    return polytopes_equal(lambda_tau(c), c, tol)


def css_from_decomposition(d: Decomposition) -> StatePolytope:
    """Constructive separability witness from a product decomposition.

    The hull of all cross products a_i (x) b_j is invariant and contains
    the decomposed state.
    """
    prods = [
        matcore.kron(a, b)
        for _, a, _ in d.terms
        for _, _, b in d.terms
    ]
    return _reduce_mats(prods, d.split)


def is_product(rho: DensityMatrix, tol: float = 1e-10) -> bool:
    """True iff rho equals the product of its own marginals."""
    return matcore.norm(qstate.pi_map(rho).mat - rho.mat, "frobenius") <= tol


def ppt_min_eigenvalue(rho: DensityMatrix) -> float:
    """Smallest eigenvalue of the partial transpose."""
    pt = matcore.partial_transpose(rho.mat, rho.split, on="b")
    w, _ = matcore.hermitian_eig(pt)
    return float(w[0])


def ppt_verdict(rho: DensityMatrix) -> str:
    """Partial-transpose criterion; conclusive only on 2x2 and 2x3 splits."""
    if ppt_min_eigenvalue(rho) < -PPT_TOL:
        return "entangled"
    dims = tuple(sorted((rho.split.dim_a, rho.split.dim_b)))
    if dims in ((2, 2), (2, 3), (1, 2), (1, 3), (1, 1)):
        return "separable"
    return "inconclusive"


def psi_preimage_member(
    sigma: DensityMatrix, c1: StatePolytope, c2: StatePolytope, tol: float = CSS_TOL
) -> bool:
    """Membership in the preimage-intersection up-map: both marginals of
    sigma must lie in the respective sets.  Entangled states can pass."""
    ma, mb = qstate.marginals(sigma)
    in_a = comgeo.hull_membership(
        flatten_matrix(ma.mat), VPolytope(c1.flat()), tol
    )
    in_b = comgeo.hull_membership(
        flatten_matrix(mb.mat), VPolytope(c2.flat()), tol
    )
    return in_a and in_b


def g_measure(rho: DensityMatrix, cfg: MeasureConfig = MeasureConfig()) -> float:
    """Correlation measure ||F(product-of-marginals - rho)||.

    Vanishes exactly on product states (for the identity F and any norm).
    """
    delta = qstate.pi_map(rho).mat - rho.mat
    if cfg.f_kind == "abs":
        delta = np.abs(delta)
    elif cfg.f_kind == "square":
        delta = delta.conj().T @ delta
    return matcore.norm(delta, cfg.norm_kind)


# ---------------------------------------------------------------------------
# GPT flavor


def gpt_separable(
    phi: BilinearState, a: ComModel, b: ComModel, tol: float = 1e-9
) -> bool:
    """Separability of a composite GPT state: membership in the hull of
    product states.  Exact for polytopic models via LP."""
    if not comgeo.max_tensor_membership(
        phi, comgeo.max_tensor_constraints(a, b), tol
    ):
        raise ValueError("state is outside the maximal tensor product")
    return comgeo.hull_membership(phi.vector(), comgeo.min_tensor(a, b), tol)


def gpt_lambda_tau(c: VPolytope, a: ComModel, b: ComModel) -> VPolytope:
    """GPT flavor of marginalize-and-rebuild on a composite-state polytope."""
    marg_a, marg_b = [], []
    for x in c.vertices:
        m = BilinearState(x.reshape(a.ambient_dim, b.ambient_dim))
        oa, ob = comgeo.gpt_marginals(m, a, b)
        marg_a.append(oa)
        marg_b.append(ob)
    pa = comgeo.reduce_vertices(VPolytope(comgeo.dedup_rows(np.array(marg_a))))
    pb = comgeo.reduce_vertices(VPolytope(comgeo.dedup_rows(np.array(marg_b))))
    prods = [np.outer(va, vb).ravel() for va in pa.vertices for vb in pb.vertices]
    return comgeo.reduce_vertices(VPolytope(np.array(prods)))


def classical_invariance_check(n_a: int, n_b: int, tol: float = CSS_TOL) -> bool:
    """Whole-state-space invariance for a classical composite.

    Builds the composite simplex of two classical systems, applies the GPT
    marginalize-and-rebuild map, and compares hulls.  True is the expected
    outcome for every classical pair; non-classical models (box-world) fail
    the analogous check on their maximal tensor product.
    """
    if n_a < 2 or n_b < 2:
        raise ValueError("classical factors need n >= 2")
    if n_a * n_b > 32:
        raise ValueError(f"composite size {n_a * n_b} exceeds the cap of 32")
    a, b = comgeo.classical_model(n_a), comgeo.classical_model(n_b)
    omega = comgeo.min_tensor(a, b)
    return comgeo.polytope_equal(gpt_lambda_tau(omega, a, b), omega, tol)


# ---------------------------------------------------------------------------
# Named separable decompositions


def werner_product_decomposition(p: float) -> Decomposition:
    """Explicit product decomposition of the Werner state, valid for p <= 1/3.

    Mixes the three correlated (one anti-correlated) Bloch-axis product
    pairs with the four computational-basis products:
    weights p/2 on each axis pair, (1-3p)/4 on each basis pair.
    """
    if not 0.0 <= p <= 1.0 / 3.0 + 1e-12:
        raise ValueError(f"decomposition exists only for p <= 1/3, got {p}")
    s = 1.0 / np.sqrt(2.0)
    x_plus = np.array([s, s])
    x_minus = np.array([s, -s])
    y_plus = np.array([s, 1j * s])
    y_minus = np.array([s, -1j * s])
    z_plus = np.array([1.0, 0.0])
    z_minus = np.array([0.0, 1.0])

    def proj(v):
        return np.outer(v, v.conj())

    terms = [
        (p / 2, proj(x_plus), proj(x_plus)),
        (p / 2, proj(x_minus), proj(x_minus)),
        (p / 2, proj(y_plus), proj(y_minus)),  # anti-correlated axis
        (p / 2, proj(y_minus), proj(y_plus)),
        (p / 2, proj(z_plus), proj(z_plus)),
        (p / 2, proj(z_minus), proj(z_minus)),
    ]
    w = (1.0 - 3.0 * p) / 4.0
    for va in (z_plus, z_minus):
        for vb in (z_plus, z_minus):
            terms.append((w, proj(va), proj(vb)))
    return Decomposition(tuple(terms), DimSplit(2, 2))


# ---------------------------------------------------------------------------
# JSON


def decomposition_to_json(d: Decomposition) -> dict:
    def one(p, a, b):
        return {
            "p": float(p),
            "a": matcore.matrix_to_json(a),
            "b": matcore.matrix_to_json(b),
        }

    return {
        "dim_a": d.split.dim_a,
        "dim_b": d.split.dim_b,
        "terms": [one(*t) for t in d.terms],
    }


def decomposition_from_json(obj: dict) -> Decomposition:
    split = DimSplit(int(obj["dim_a"]), int(obj["dim_b"]))
    terms = tuple(
        (
            float(t["p"]),
            matcore.matrix_from_json(t["a"]),
            matcore.matrix_from_json(t["b"]),
        )
        for t in obj["terms"]
    )
    return Decomposition(terms, split)


def state_polytope_to_json(c: StatePolytope) -> dict:
    return {
        "type": "state_polytope",
        "dim_a": c.split.dim_a,
        "dim_b": c.split.dim_b,
        "vertices": [matcore.matrix_to_json(v) for v in c.vertices],
    }


def state_polytope_from_json(obj: dict) -> StatePolytope:
    split = DimSplit(int(obj["dim_a"]), int(obj["dim_b"]))
    return StatePolytope(
        tuple(matcore.matrix_from_json(v) for v in obj["vertices"]), split
    )
