"""Convex operational models as finite polytopes.

States of a single model live in a real coordinate space; composite states
of a model pair live in the flattened outer-product space, where a bilinear
functional phi(a, b) on effect pairs evaluates as a^T M b with M the
coordinate matrix.  The LP engine (hull membership / distance) is the
workhorse behind every separability question in this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

EFFECT_TOL = 1e-10
DEDUP_TOL = 1e-8
REDUCE_TOL = 1e-9

# decisions are made at tolerances down to 1e-9, so the LP must resolve
# distances well below the solver's default 1e-7 feasibility tolerance
_LP_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}


@dataclass(frozen=True)
class VPolytope:
    """Convex polytope given by its vertex list (rows of ``vertices``)."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if v.size == 0:
            raise ValueError("polytope needs at least one vertex")
        object.__setattr__(self, "vertices", v)

    @property
    def ambient_dim(self) -> int:
        return self.vertices.shape[1]


@dataclass(frozen=True)
class HPolytope:
    """Half-space form: each inequality row means normal . x >= offset."""

    ambient_dim: int
    ineq_normals: np.ndarray
    ineq_offsets: np.ndarray
    eq_normals: np.ndarray
    eq_values: np.ndarray

    def __post_init__(self):
        if len(self.ineq_normals) == 0 and len(self.eq_normals) == 0:
            raise ValueError("H-polytope needs at least one constraint")


@dataclass(frozen=True)
class ComModel:
    """Finite convex operational model: extreme states, extreme effects, unit."""

    ambient_dim: int
    vertices: np.ndarray
    effects: np.ndarray
    unit: np.ndarray

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        e = np.atleast_2d(np.asarray(self.effects, dtype=float))
        u = np.asarray(self.unit, dtype=float).ravel()
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "effects", e)
        object.__setattr__(self, "unit", u)
        norm_err = float(np.max(np.abs(v @ u - 1.0)))
        if norm_err > EFFECT_TOL:
            raise ValueError(f"unit functional off by {norm_err:.3e} on some vertex")
        vals = v @ e.T
        if vals.min() < -EFFECT_TOL or vals.max() > 1.0 + EFFECT_TOL:
            raise ValueError("an extreme effect leaves [0, 1] on some vertex")


@dataclass(frozen=True)
class BilinearState:
    """Composite GPT state as a coordinate matrix M with phi(a,b) = a^T M b."""

    coord: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coord", np.asarray(self.coord, dtype=float))

    def vector(self) -> np.ndarray:
        return self.coord.ravel()

    def table(self, a: ComModel, b: ComModel) -> np.ndarray:
        """phi evaluated on (effects_A + unit_A) x (effects_B + unit_B)."""
        ea = np.vstack([a.effects, a.unit])
        eb = np.vstack([b.effects, b.unit])
        return ea @ self.coord @ eb.T


def classical_model(n: int) -> ComModel:
    """Classical n-outcome system: the standard simplex with sharp effects."""
    if n < 2:
        raise ValueError(f"classical model needs n >= 2, got {n}")
    eye = np.eye(n)
    ones = np.ones(n)
    effects = np.vstack([eye, ones - eye])
    return ComModel(n, eye, effects, ones)


def gbit_model() -> ComModel:
    """Box-world single system: square state space (x, y, 1) with x, y in [0, 1]."""
    vertices = np.array(
        [[0.0, 0.0, 1.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 1.0]]
    )
    effects = np.array(
        [
            [1.0, 0.0, 0.0],   # first measurement, outcome 1
            [-1.0, 0.0, 1.0],  # complement
            [0.0, 1.0, 0.0],   # second measurement, outcome 1
            [0.0, -1.0, 1.0],  # complement
        ]
    )
    unit = np.array([0.0, 0.0, 1.0])
    return ComModel(3, vertices, effects, unit)


def pr_box() -> BilinearState:
    """Extremal non-signaling state of a gbit pair: uniform marginals,
    perfect correlation on three measurement pairs, anti-correlation on
    the (second, second) pair."""
    return BilinearState(
        np.array([[0.5, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 1.0]])
    )


# ---------------------------------------------------------------------------
# LP engine


def hull_distance(x, vertices) -> tuple[float, np.ndarray]:
    """Chebyshev (infinity-norm) distance from x to the convex hull.

    Solves  min s  s.t.  |V^T lam - x| <= s,  sum lam = 1,  lam >= 0
    and returns (s, lam).  s <= tol means membership; lam is the
    reconstruction certificate.
    """
    v = np.atleast_2d(np.asarray(vertices, dtype=float))
    x = np.asarray(x, dtype=float).ravel()
    n, d = v.shape
    if x.size != d:
        raise ValueError(f"point dim {x.size} != polytope ambient dim {d}")
    c = np.zeros(n + 1)
    c[-1] = 1.0
    a_ub = np.block(
        [[v.T, -np.ones((d, 1))], [-v.T, -np.ones((d, 1))]]
    )
    b_ub = np.concatenate([x, -x])
    a_eq = np.zeros((1, n + 1))
    a_eq[0, :n] = 1.0
    res = linprog(
        c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0], bounds=(0, None),
        method="highs", options=_LP_OPTIONS
    )
    if res.status != 0:
        raise RuntimeError(f"hull-distance LP failed: {res.message}")
    return float(res.fun), res.x[:n]


def hull_membership(x, p: VPolytope, tol: float) -> bool:
    """True iff x is a convex combination of the vertices within tol."""
    dist, _ = hull_distance(x, p.vertices)
    return dist <= tol


def separating_hyperplane(x, p: VPolytope) -> tuple[np.ndarray, float, float]:
    """Infeasibility certificate for a point outside the hull.

    Maximizes h.x - c subject to h.v <= c on every vertex and |h|_inf <= 1.
    Returns (h, c, gap); gap > 0 certifies x is not in the hull.
    """
    v = p.vertices
    x = np.asarray(x, dtype=float).ravel()
    n, d = v.shape
    # variables: h (d entries, in [-1, 1]) and c (free)
    cvec = np.concatenate([-x, [1.0]])
    a_ub = np.hstack([v, -np.ones((n, 1))])
    bounds = [(-1.0, 1.0)] * d + [(None, None)]
    res = linprog(
        cvec, A_ub=a_ub, b_ub=np.zeros(n), bounds=bounds, method="highs",
        options=_LP_OPTIONS,
    )
    if res.status != 0:
        raise RuntimeError(f"separating-hyperplane LP failed: {res.message}")
    h, c = res.x[:d], float(res.x[d])
    return h, c, float(h @ x - c)


def dedup_rows(points: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    """Drop rows that coincide with an earlier row within tol (inf-norm)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    kept: list[np.ndarray] = []
    for row in points:
        if not any(np.max(np.abs(row - k)) <= tol for k in kept):
            kept.append(row)
    return np.array(kept)


def reduce_vertices(p: VPolytope, tol: float = REDUCE_TOL) -> VPolytope:
    """Irredundant vertex list: drop every point inside the hull of the rest."""
    verts = dedup_rows(p.vertices)
    keep = list(range(len(verts)))
    i = 0
    while i < len(keep) and len(keep) > 1:
        others = verts[[j for j in keep if j != keep[i]]]
        dist, _ = hull_distance(verts[keep[i]], others)
        if dist <= tol:
            keep.pop(i)
        else:
            i += 1
    return VPolytope(verts[keep])


def polytope_equal(p: VPolytope, q: VPolytope, tol: float) -> bool:
    """Hull equality by mutual vertex membership."""
    if p.ambient_dim != q.ambient_dim:
        raise ValueError(
            f"ambient dims differ: {p.ambient_dim} vs {q.ambient_dim}"
        )
    return all(hull_membership(v, q, tol) for v in p.vertices) and all(
        hull_membership(v, p, tol) for v in q.vertices
    )


# ---------------------------------------------------------------------------
# Tensor products


def min_tensor(a: ComModel, b: ComModel) -> VPolytope:
    """Minimal tensor product: hull of all product states, as a V-polytope."""
    prods = [np.outer(va, vb).ravel() for va in a.vertices for vb in b.vertices]
    return reduce_vertices(VPolytope(np.array(prods)))


def max_tensor_constraints(a: ComModel, b: ComModel) -> HPolytope:
    """Maximal tensor product in H-form over the flattened bilinear space:
    phi(e_i, f_j) >= 0 on all extreme effect pairs, phi(u_A, u_B) = 1."""
    normals = [np.outer(e, f).ravel() for e in a.effects for f in b.effects]
    return HPolytope(
        ambient_dim=a.ambient_dim * b.ambient_dim,
        ineq_normals=np.array(normals),
        ineq_offsets=np.zeros(len(normals)),
        eq_normals=np.outer(a.unit, b.unit).ravel()[None, :],
        eq_values=np.array([1.0]),
    )


def max_tensor_membership(phi, h: HPolytope, tol: float) -> bool:
    """True iff the bilinear state satisfies every constraint within tol."""
    x = phi.vector() if isinstance(phi, BilinearState) else np.asarray(phi, float)
    if x.size != h.ambient_dim:
        raise ValueError(f"state dim {x.size} != constraint dim {h.ambient_dim}")
    if len(h.ineq_normals) and np.min(h.ineq_normals @ x - h.ineq_offsets) < -tol:
        return False
    if len(h.eq_normals) and np.max(np.abs(h.eq_normals @ x - h.eq_values)) > tol:
        return False
    return True


def gpt_marginals(
    phi: BilinearState, a: ComModel, b: ComModel, tol: float = 1e-9
) -> tuple[np.ndarray, np.ndarray]:
    """Marginal state vectors (omega_A, omega_B) via unit contraction.

    omega_A is defined by omega_A(e) = phi(e, u_B) for every effect e, which
    in coordinates is M u_B; symmetrically for B.
    """
    if not max_tensor_membership(phi, max_tensor_constraints(a, b), tol):
        raise ValueError("state is outside the maximal tensor product")
    omega_a = phi.coord @ b.unit
    omega_b = phi.coord.T @ a.unit
    if not hull_membership(omega_a, VPolytope(a.vertices), tol):
        raise ValueError("A-marginal left the model state space")
    if not hull_membership(omega_b, VPolytope(b.vertices), tol):
        raise ValueError("B-marginal left the model state space")
    return omega_a, omega_b


def enumerate_max_vertices(h: HPolytope, dim_cap: int = 10) -> VPolytope:
    """All extreme points of the H-polytope by basic-solution enumeration.

    Every subset of constraints of size ambient_dim (equalities always
    active) is solved; feasible solutions are kept, deduplicated, and
    reduced.  Exponential in the constraint count, hence the dimension cap.
    """
    d = h.ambient_dim
    if d > dim_cap:
        raise ValueError(f"ambient dim {d} exceeds enumeration cap {dim_cap}")
    n_eq = len(h.eq_normals)
    pick = d - n_eq
    base = np.vstack([h.eq_normals]) if n_eq else np.empty((0, d))
    base_rhs = np.asarray(h.eq_values) if n_eq else np.empty(0)
    points = []
    for idx in itertools.combinations(range(len(h.ineq_normals)), pick):
        a_sys = np.vstack([base, h.ineq_normals[list(idx)]])
        b_sys = np.concatenate([base_rhs, h.ineq_offsets[list(idx)]])
        try:
            x = np.linalg.solve(a_sys, b_sys)
        except np.linalg.LinAlgError:
            continue
        if max_tensor_membership(x, h, 1e-9):
            points.append(x)
    if not points:
        raise ValueError("H-polytope appears empty")
    return reduce_vertices(VPolytope(dedup_rows(np.array(points))))


# ---------------------------------------------------------------------------
# JSON


def model_to_json(m: ComModel) -> dict:
    return {
        "ambient_dim": m.ambient_dim,
        "vertices": m.vertices.tolist(),
        "effects": m.effects.tolist(),
        "unit": m.unit.tolist(),
    }


def model_from_json(obj: dict) -> ComModel:
    return ComModel(
        int(obj["ambient_dim"]),
        np.asarray(obj["vertices"], float),
        np.asarray(obj["effects"], float),
        np.asarray(obj["unit"], float),
    )


def polytope_to_json(p: VPolytope) -> dict:
    return {"ambient_dim": p.ambient_dim, "vertices": p.vertices.tolist()}


def polytope_from_json(obj: dict) -> VPolytope:
    p = VPolytope(np.asarray(obj["vertices"], float))
    if p.ambient_dim != int(obj["ambient_dim"]):
        raise ValueError("ambient_dim does not match vertex width")
    return p
