"""Submodules, orthogonal complements and graph operators over the
finite-dimensional backend.

Everything is reduced to scalar linear algebra: a right submodule of
E = A^k is stored as an orthonormal basis (w.r.t. the Hilbert-Schmidt
inner product) of its scalar-linear span, closed under the right action
of the algebra.  The A-valued orthogonal complement {x : <g,x> = 0 for
all g} is the nullspace of a stacked constraint matrix; graphs of
operators are submodules of E ⊕ E and adjoints come from the unitary
v(x,y) = (-y,x) applied to the complement of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebras import BlockAlgebra
from .config import DEFAULT, Config
from .errors import (
    NotEssentialDomain,
    NotOrthogonallyClosed,
)


def orthonormal_columns(mat: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis of the column space, rank cut at ``tol``."""
    if mat.size == 0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    r = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 1.0)))
    return u[:, :r]


def nullspace(mat: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis of the right nullspace."""
    if mat.shape[0] == 0:
        return np.eye(mat.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    cutoff = tol * max(1.0, s[0] if len(s) else 1.0)
    r = int(np.sum(s > cutoff))
    return vh[r:].conj().T


def subspace_overlap(b1: np.ndarray, b2: np.ndarray) -> float:
    """Largest cosine of a principal angle between two orthonormal spans."""
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return 0.0
    s = np.linalg.svd(b1.conj().T @ b2, compute_uv=False)
    return float(min(s[0], 1.0))


def same_span(b1: np.ndarray, b2: np.ndarray, tol: float) -> bool:
    if b1.shape[1] != b2.shape[1]:
        return False
    if b1.shape[1] == 0:
        return True
    # projection residual of each basis onto the other span
    r1 = np.linalg.norm(b1 - b2 @ (b2.conj().T @ b1), 2)
    r2 = np.linalg.norm(b2 - b1 @ (b1.conj().T @ b2), 2)
    return max(r1, r2) < tol


class Submodule:
    """Right submodule of E = A^ncomp as an orthonormal coordinate basis."""

    def __init__(self, algebra: BlockAlgebra, ncomp: int, basis: np.ndarray):
        self.algebra = algebra
        self.ncomp = ncomp
        self.basis = np.asarray(basis, dtype=complex)
        if self.basis.shape[0] != ncomp * algebra.dim:
            raise ValueError("basis row count does not match the module")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def __repr__(self):
        return f"Submodule(dim={self.dim} of {self.ncomp}x{self.algebra.dim})"

    # -- construction ----------------------------------------------------

    @staticmethod
    def full(algebra: BlockAlgebra, ncomp: int = 1) -> "Submodule":
        return Submodule(algebra, ncomp, np.eye(ncomp * algebra.dim, dtype=complex))

    @staticmethod
    def zero(algebra: BlockAlgebra, ncomp: int = 1) -> "Submodule":
        return Submodule(algebra, ncomp, np.zeros((ncomp * algebra.dim, 0), complex))

    @staticmethod
    def from_vectors(algebra, ncomp, vectors, cfg: Config = DEFAULT) -> "Submodule":
        """Span of coordinate vectors, closed under the right action."""
        if len(vectors) == 0:
            return Submodule.zero(algebra, ncomp)
        v = np.column_stack([np.asarray(x, complex).ravel() for x in vectors])
        basis = orthonormal_columns(v, cfg.subspace_tol)
        rmaps = algebra.right_mult_maps()
        while True:
            images = [basis]
            for r in rmaps:
                big = np.kron(np.eye(ncomp), r)
                images.append(big @ basis)
            new = orthonormal_columns(np.hstack(images), cfg.subspace_tol)
            if new.shape[1] == basis.shape[1]:
                return Submodule(algebra, ncomp, new)
            basis = new

    @staticmethod
    def from_elements(algebra, matrices, cfg: Config = DEFAULT) -> "Submodule":
        """Right submodule of E = A generated by ambient matrices."""
        vecs = [algebra.to_coords(m) for m in matrices]
        return Submodule.from_vectors(algebra, 1, vecs, cfg)

    # -- predicates -------------------------------------------------------

    def right_action_residual(self) -> float:
        """How far v·e leaves the stored span; < tol certifies closure."""
        worst = 0.0
        p = self.basis @ self.basis.conj().T
        for r in self.algebra.right_mult_maps():
            big = np.kron(np.eye(self.ncomp), r)
            img = big @ self.basis
            if img.size:
                worst = max(worst, float(np.linalg.norm(img - p @ img, 2)))
        return worst

    def equals(self, other: "Submodule", cfg: Config = DEFAULT) -> bool:
        return same_span(self.basis, other.basis, cfg.subspace_tol)

    def contains_vector(self, vec: np.ndarray, tol: float) -> bool:
        v = np.asarray(vec, complex).ravel()
        resid = v - self.basis @ (self.basis.conj().T @ v)
        return float(np.linalg.norm(resid)) <= tol * max(1.0, np.linalg.norm(v))

    def is_essential(self, cfg: Config = DEFAULT) -> bool:
        return orthogonal_complement(self, cfg).dim == 0

    def is_orthogonally_closed(self, cfg: Config = DEFAULT) -> bool:
        cc = orthogonal_complement(orthogonal_complement(self, cfg), cfg)
        return self.equals(cc, cfg)


def _constraint_rows(sub: Submodule) -> np.ndarray:
    """Rows of x ↦ Σ_c G_c^* X_c (ambient-valued) for every basis column."""
    alg = sub.algebra
    units = [alg.to_matrix(e) for e in np.eye(alg.dim, dtype=complex)]
    rows = []
    for col in sub.basis.T:
        comps = col.reshape(sub.ncomp, alg.dim)
        gmats = [alg.to_matrix(c).conj().T for c in comps]
        # column k of the map: component c, unit u -> full coords of G_c^* u
        block_cols = []
        for g in gmats:
            block_cols.extend(alg.to_full_coords(g @ u) for u in units)
        rows.append(np.column_stack(block_cols))
    return np.vstack(rows) if rows else np.zeros((0, sub.ncomp * alg.dim), complex)


def orthogonal_complement(sub: Submodule, cfg: Config = DEFAULT) -> Submodule:
    """A-valued complement F^⊥ = {x | <g,x> = 0 for all g in F}.

    The constraints use the full ambient value of <g,x>, so the result
    is exact up to the SVD rank cut and automatically a right submodule.
    """
    if sub.dim == 0:
        return Submodule.full(sub.algebra, sub.ncomp)
    basis = nullspace(_constraint_rows(sub), cfg.subspace_tol)
    return Submodule(sub.algebra, sub.ncomp, basis)


def intersect(a: Submodule, b: Submodule, cfg: Config = DEFAULT) -> Submodule:
    if a.dim == 0 or b.dim == 0:
        return Submodule.zero(a.algebra, a.ncomp)
    null = nullspace(np.hstack([a.basis, -b.basis]), cfg.subspace_tol)
    vecs = a.basis @ null[: a.dim]
    return Submodule(a.algebra, a.ncomp, orthonormal_columns(vecs, cfg.subspace_tol))


def module_sum(a: Submodule, b: Submodule, cfg: Config = DEFAULT) -> Submodule:
    basis = orthonormal_columns(np.hstack([a.basis, b.basis]), cfg.subspace_tol)
    return Submodule(a.algebra, a.ncomp, basis)


# -- projections -----------------------------------------------------------


@dataclass
class Projection:
    """p = p^2 = p^* onto an orthogonally closed submodule, in coordinates."""

    module: Submodule
    matrix: np.ndarray

    def idempotency_residual(self) -> float:
        return float(np.linalg.norm(self.matrix @ self.matrix - self.matrix, 2))

    def selfadjoint_residual(self) -> float:
        return float(np.linalg.norm(self.matrix - self.matrix.conj().T, 2))


def projection_onto(g: Submodule, cfg: Config = DEFAULT) -> Projection:
    """The projection p_G with range G; G must equal G^⊥⊥."""
    comp = orthogonal_complement(g, cfg)
    cc = orthogonal_complement(comp, cfg)
    if not g.equals(cc, cfg):
        raise NotOrthogonallyClosed(
            f"G has dim {g.dim} but G^⊥⊥ has dim {cc.dim} (or spans differ)"
        )
    total = g.dim + comp.dim
    if total != g.basis.shape[0]:
        raise NotOrthogonallyClosed(
            f"G ⊕ G^⊥ has dimension {total} < {g.basis.shape[0]}; not complemented"
        )
    return Projection(g, g.basis @ g.basis.conj().T)


# -- linear relations (graphs) ---------------------------------------------


def compose_relations(r2: np.ndarray, r1: np.ndarray, dims, cfg: Config = DEFAULT):
    """Compose graphs r1 ⊆ E⊕F, r2 ⊆ F⊕G given as stacked column bases."""
    de, df, dg = dims
    x1, y1 = r1[:de], r1[de:]
    x2, y2 = r2[:df], r2[df:]
    if r1.shape[1] == 0 or r2.shape[1] == 0:
        return np.zeros((de + dg, 0), complex)
    pairs = nullspace(np.hstack([y1, -x2]), cfg.subspace_tol)
    alpha, beta = pairs[: r1.shape[1]], pairs[r1.shape[1] :]
    stacked = np.vstack([x1 @ alpha, y2 @ beta])
    return orthonormal_columns(stacked, cfg.subspace_tol)


def relation_range(rel: np.ndarray, de: int, cfg: Config = DEFAULT) -> np.ndarray:
    return orthonormal_columns(rel[de:], cfg.subspace_tol)


def relation_kernel(rel: np.ndarray, de: int, cfg: Config = DEFAULT) -> np.ndarray:
    null = nullspace(rel[de:], cfg.subspace_tol)
    return orthonormal_columns(rel[:de] @ null, cfg.subspace_tol)


def one_plus_relation(rel: np.ndarray, de: int) -> np.ndarray:
    """{(x, x+y) : (x,y) in rel}."""
    return np.vstack([rel[:de], rel[:de] + rel[de:]])


# -- graph operators ---------------------------------------------------------


@dataclass
class RegularityVerdict:
    essentially_defined: bool
    orthogonally_closed: bool
    graph_regular: bool
    regular: bool
    domain_dense: bool
    diagnostics: dict = field(default_factory=dict)


class GraphOperator:
    """Essentially defined operator t: E -> E over a BlockAlgebra,
    represented by (an orthonormal basis of) its graph in E ⊕ E."""

    def __init__(self, algebra: BlockAlgebra, graph: Submodule):
        if graph.ncomp != 2:
            raise ValueError("graph must live in E ⊕ E")
        self.algebra = algebra
        self.graph = graph

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_matrix(algebra, matrix, domain: Submodule | None = None,
                    cfg: Config = DEFAULT) -> "GraphOperator":
        """Graph of left multiplication by an ambient matrix on ``domain``.

        The domain defaults to all of E intersected with the exact
        multiplication domain {x in A : T·x in A}.
        """
        d = algebra.dim
        units = [algebra.to_matrix(e) for e in np.eye(d, dtype=complex)]
        if domain is None:
            # exact multiplication domain: x with T·x supported on the mask
            allowed = np.zeros((algebra.N, algebra.N), dtype=bool)
            for i, j in algebra._entries:
                allowed[i, j] = True
            cons = np.column_stack(
                [np.where(allowed, 0.0, matrix @ u).ravel() for u in units]
            )
            null = nullspace(cons, cfg.subspace_tol)
            domain = Submodule.from_vectors(algebra, 1, null.T, cfg)
        cols = []
        for col in domain.basis.T:
            xmat = algebra.to_matrix(col)
            ymat = matrix @ xmat
            cols.append(np.concatenate([col, algebra.to_coords(ymat)]))
        basis = orthonormal_columns(np.column_stack(cols) if cols else
                                    np.zeros((2 * d, 0), complex), cfg.subspace_tol)
        return GraphOperator(algebra, Submodule(algebra, 2, basis))

    @staticmethod
    def identity(algebra, cfg: Config = DEFAULT) -> "GraphOperator":
        return GraphOperator.from_matrix(algebra, algebra.identity(), cfg=cfg)

    @staticmethod
    def mult_domain(algebra, matrices, cfg: Config = DEFAULT) -> Submodule:
        """Exact domain of the composition x ↦ M_k ··· M_1 x on A.

        Every partial product must stay supported on the algebra mask,
        mirroring how multiplication-operator domains compose; with masks
        modelling vanishing at infinity this reproduces proper domains
        (e.g. Def(t^*t) ⊊ A) that the collapsed graph calculus of a
        finite-dimensional model cannot see.
        """
        allowed = np.zeros((algebra.N, algebra.N), dtype=bool)
        for i, j in algebra._entries:
            allowed[i, j] = True
        units = [algebra.to_matrix(e) for e in np.eye(algebra.dim, dtype=complex)]
        prod = [np.eye(algebra.N, dtype=complex)]
        for m in matrices:
            prod.append(np.asarray(m, complex) @ prod[-1])
        blocks = [
            np.column_stack([np.where(allowed, 0.0, stage @ u).ravel() for u in units])
            for stage in prod[1:]
        ]
        null = nullspace(np.vstack(blocks), cfg.subspace_tol)
        return Submodule.from_vectors(algebra, 1, null.T, cfg)

    # -- structure --------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def domain(self, cfg: Config = DEFAULT) -> Submodule:
        basis = orthonormal_columns(self.graph.basis[: self.dim], cfg.subspace_tol)
        return Submodule(self.algebra, 1, basis)

    def range(self, cfg: Config = DEFAULT) -> Submodule:
        basis = orthonormal_columns(self.graph.basis[self.dim :], cfg.subspace_tol)
        return Submodule(self.algebra, 1, basis)

    def kernel(self, cfg: Config = DEFAULT) -> Submodule:
        basis = relation_kernel(self.graph.basis, self.dim, cfg)
        return Submodule(self.algebra, 1, basis)

    def graph_angle(self) -> float:
        """Smallest principal angle between the graph and 0 ⊕ F."""
        d = self.dim
        y = self.graph.basis[d:]
        if y.size == 0 or self.graph.dim == 0:
            return np.pi / 2
        s = np.linalg.svd(y, compute_uv=False)
        return float(np.arccos(min(1.0, s[0] if len(s) else 0.0)))

    def is_graph(self, cfg: Config = DEFAULT) -> bool:
        return self.graph_angle() > cfg.graph_angle_tol

    def action_matrix(self, cfg: Config = DEFAULT) -> np.ndarray:
        """Scalar matrix T with T x = t(x) on the domain (coordinates)."""
        d = self.dim
        x, y = self.graph.basis[:d], self.graph.basis[d:]
        return y @ np.linalg.pinv(x, rcond=cfg.subspace_tol)

    def apply(self, vec: np.ndarray, cfg: Config = DEFAULT) -> np.ndarray:
        return self.action_matrix(cfg) @ np.asarray(vec, complex)

    # -- adjoints and regularity -------------------------------------------

    def adjoint(self, cfg: Config = DEFAULT) -> "GraphOperator":
        """Graph(t^*) = v·Graph(t)^⊥ with v(x,y) = (-y, x)."""
        dom = self.domain(cfg)
        if not dom.is_essential(cfg):
            raise NotEssentialDomain("Def(t)^⊥ ≠ {0}; adjoint is multivalued")
        comp = orthogonal_complement(self.graph, cfg)
        d = self.dim
        swapped = np.vstack([-comp.basis[d:], comp.basis[:d]])
        adj = GraphOperator(self.algebra, Submodule(self.algebra, 2, swapped))
        return adj

    def regularity(self, cfg: Config = DEFAULT) -> RegularityVerdict:
        """Graph-regularity via Range(1+t^*t) = E and Range(1+tt^*) = F."""
        d = self.dim
        dom = self.domain(cfg)
        essential = bool(dom.is_essential(cfg))
        closed = bool(self.graph.is_orthogonally_closed(cfg))
        diagnostics = {}
        graph_regular = False
        if essential and closed:
            adj = self.adjoint(cfg)
            tstar_t = compose_relations(adj.graph.basis, self.graph.basis,
                                        (d, d, d), cfg)
            t_tstar = compose_relations(self.graph.basis, adj.graph.basis,
                                        (d, d, d), cfg)
            rng1 = relation_range(one_plus_relation(tstar_t, d), d, cfg)
            rng2 = relation_range(one_plus_relation(t_tstar, d), d, cfg)
            diagnostics["rank_one_plus_tstar_t"] = rng1.shape[1]
            diagnostics["rank_one_plus_t_tstar"] = rng2.shape[1]
            graph_regular = rng1.shape[1] == d and rng2.shape[1] == d
        dense = dom.dim == d
        return RegularityVerdict(
            essentially_defined=essential,
            orthogonally_closed=closed,
            graph_regular=graph_regular,
            regular=graph_regular and dense,
            domain_dense=dense,
            diagnostics=diagnostics,
        )


def is_graph_regular(op, cfg: Config = DEFAULT) -> RegularityVerdict:
    """Backend dispatch: finite-dimensional graphs get the rank test on
    Range(1+t*t) and Range(1+tt*); symbols delegate to the singularity
    classifier; quotient pairs are reconstructed first."""
    if isinstance(op, GraphOperator):
        return op.regularity(cfg)
    from .symbols import PiecewiseSymbol, regularity_report

    if isinstance(op, PiecewiseSymbol):
        rep = regularity_report(op, cfg)
        return RegularityVerdict(
            essentially_defined=rep.essentially_defined,
            orthogonally_closed=rep.orthogonally_closed,
            graph_regular=rep.graph_regular,
            regular=rep.regular,
            domain_dense=rep.regular,
            diagnostics={"point_classes": {
                p: vc.declared.cls.value for p, vc in rep.point_classes.items()}},
        )
    from .algebras import matrix_algebra
    from .transforms import QuotientPair

    if isinstance(op, QuotientPair):
        t = op.reconstruct(cfg.kernel_tol)
        alg = matrix_algebra(t.shape[0])
        return GraphOperator.from_matrix(alg, t, cfg=cfg).regularity(cfg)
    raise TypeError(f"unsupported operator representation {type(op)!r}")
