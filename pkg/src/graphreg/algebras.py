"""Finite-dimensional C*-algebras: direct sums of matrix blocks with an
optional entry mask.

A ``BlockAlgebra`` models ⊕_p M_{n_p}(ℂ) cut down to the subspace of
block matrices whose masked-out entries vanish.  Full masks give plain
matrix algebras; the mask mechanism realizes algebras such as 2x2
function matrices over a finite grid where one grid point plays the role
of the point at infinity (entries in C_0 must vanish there, a unitized
corner need not).

Elements are stored as dense block-diagonal "ambient" matrices; the
algebra is the set of those supported on the mask.  The ambient product
of two masked elements is assumed to stay on the mask (true for every
algebra constructed here; ``closed_under_product`` lets tests verify it).
"""

from __future__ import annotations

import numpy as np

from .errors import DescriptorMismatch


class BlockAlgebra:
    """⊕_p M_{n_p}(ℂ) restricted to an entry mask.

    sizes  -- block dimensions n_p (all >= 1)
    masks  -- optional list of boolean n_p x n_p arrays, True = entry allowed;
              None means every entry of every block is allowed.
    """

    def __init__(self, sizes, masks=None, label=""):
        sizes = tuple(int(n) for n in sizes)
        if not sizes or any(n < 1 for n in sizes):
            raise ValueError("block sizes must be positive")
        self.sizes = sizes
        self.label = label
        self.N = sum(sizes)
        self.offsets = tuple(np.cumsum((0,) + sizes[:-1]).tolist())
        if masks is None:
            masks = [np.ones((n, n), dtype=bool) for n in sizes]
        self.masks = [np.array(m, dtype=bool) for m in masks]
        if len(self.masks) != len(sizes) or any(
            m.shape != (n, n) for m, n in zip(self.masks, sizes)
        ):
            raise ValueError("mask shapes must match block sizes")
        # coordinate order: blockwise row-major over allowed entries
        entries = []
        for p, (n, off) in enumerate(zip(sizes, self.offsets)):
            for i in range(n):
                for j in range(n):
                    if self.masks[p][i, j]:
                        entries.append((off + i, off + j))
        self._entries = tuple(entries)
        self.dim = len(entries)
        # all block-diagonal entries, for ambient-valued constraint maps
        full = []
        for n, off in zip(sizes, self.offsets):
            for i in range(n):
                for j in range(n):
                    full.append((off + i, off + j))
        self._full_entries = tuple(full)
        self.full_dim = len(full)

    def __eq__(self, other):
        return (
            isinstance(other, BlockAlgebra)
            and self.sizes == other.sizes
            and all((a == b).all() for a, b in zip(self.masks, other.masks))
        )

    def __hash__(self):
        return hash((self.sizes, tuple(m.tobytes() for m in self.masks)))

    def __repr__(self):
        tag = self.label or "x".join(map(str, self.sizes))
        return f"BlockAlgebra({tag}, dim={self.dim})"

    # -- coordinates ----------------------------------------------------

    def to_matrix(self, coords) -> np.ndarray:
        m = np.zeros((self.N, self.N), dtype=complex)
        for v, (i, j) in zip(np.asarray(coords, dtype=complex), self._entries):
            m[i, j] = v
        return m

    def to_coords(self, matrix) -> np.ndarray:
        matrix = np.asarray(matrix, dtype=complex)
        return np.array([matrix[i, j] for i, j in self._entries])

    def to_full_coords(self, matrix) -> np.ndarray:
        matrix = np.asarray(matrix, dtype=complex)
        return np.array([matrix[i, j] for i, j in self._full_entries])

    def basis_matrices(self):
        """Matrix units spanning the algebra, in coordinate order."""
        for i, j in self._entries:
            m = np.zeros((self.N, self.N), dtype=complex)
            m[i, j] = 1.0
            yield m

    def identity(self) -> np.ndarray:
        return np.eye(self.N, dtype=complex)

    # -- membership -----------------------------------------------------

    def offmask_residual(self, matrix) -> float:
        """Largest |entry| of ``matrix`` outside the mask (incl. off-block)."""
        m = np.asarray(matrix, dtype=complex)
        allowed = np.zeros((self.N, self.N), dtype=bool)
        for i, j in self._entries:
            allowed[i, j] = True
        bad = np.abs(np.where(allowed, 0.0, m))
        return float(bad.max()) if bad.size else 0.0

    def contains(self, matrix, tol=1e-10) -> bool:
        return self.offmask_residual(matrix) <= tol

    def is_left_multiplier(self, matrix, tol=1e-10) -> bool:
        """T with T·A ⊆ A, tested on the matrix-unit basis."""
        return all(self.contains(matrix @ e, tol) for e in self.basis_matrices())

    def is_multiplier(self, matrix, tol=1e-10) -> bool:
        """T with T·A ⊆ A and A·T ⊆ A."""
        return self.is_left_multiplier(matrix, tol) and all(
            self.contains(e @ matrix, tol) for e in self.basis_matrices()
        )

    def closed_under_product(self, tol=1e-12) -> bool:
        units = list(self.basis_matrices())
        return all(self.contains(e @ f, tol) for e in units for f in units)

    # -- operators as scalar-linear maps on coordinates -----------------

    def left_mult_map(self, matrix) -> np.ndarray:
        """dim x dim matrix of x ↦ T·x in algebra coordinates.

        Requires T·A ⊆ A; entries that leave the mask are dropped by the
        coordinate projection, so callers should check multiplier
        membership first when it matters.
        """
        cols = [self.to_coords(matrix @ e) for e in self.basis_matrices()]
        return np.column_stack(cols) if cols else np.zeros((0, 0), complex)

    def right_mult_maps(self):
        """Coordinate matrices of x ↦ x·e for every basis unit e."""
        maps = []
        for e in self.basis_matrices():
            cols = [self.to_coords(f @ e) for f in self.basis_matrices()]
            maps.append(np.column_stack(cols))
        return maps


def matrix_algebra(n: int) -> BlockAlgebra:
    """The full matrix algebra M_n(ℂ) as a Hilbert module over itself."""
    return BlockAlgebra((n,), label=f"M{n}")


def grid_model(npts: int = 3):
    """2x2 function matrices over an ``npts``-point model of the line.

    The last grid point stands for the point at infinity: entries of
    class C_0 vanish there, the unitized (2,2) corner does not.  Returns
    the algebra A = (C0 C0; C0 C0~), the ideal A0 (all entries C0) and
    the multiplier pattern M(A) = (Cb C0; C0 C0~), each as a
    BlockAlgebra over the same ambient blocks.
    """
    if npts < 2:
        raise ValueError("need at least two grid points")
    full = np.ones((2, 2), dtype=bool)
    a_inf = np.array([[False, False], [False, True]])
    a0_inf = np.zeros((2, 2), dtype=bool)
    ma_inf = np.array([[True, False], [False, True]])
    sizes = (2,) * npts
    algebra = BlockAlgebra(sizes, [full] * (npts - 1) + [a_inf], label="grid:A")
    ideal = BlockAlgebra(sizes, [full] * (npts - 1) + [a0_inf], label="grid:A0")
    mult = BlockAlgebra(sizes, [full] * (npts - 1) + [ma_inf], label="grid:M(A)")
    return algebra, ideal, mult


def constant_matrix(algebra: BlockAlgebra, block: np.ndarray) -> np.ndarray:
    """Ambient matrix acting as the same small block at every grid point."""
    block = np.asarray(block, dtype=complex)
    n = block.shape[0]
    if any(s != n for s in algebra.sizes):
        raise ValueError("constant block must match every block size")
    out = np.zeros((algebra.N, algebra.N), dtype=complex)
    for off in algebra.offsets:
        out[off : off + n, off : off + n] = block
    return out


class ModuleElement:
    """Element of the Hilbert module E = A (ambient block matrix payload)."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: BlockAlgebra, matrix):
        self.algebra = algebra
        self.matrix = np.asarray(matrix, dtype=complex)
        if self.matrix.shape != (algebra.N, algebra.N):
            raise ValueError("payload shape does not match the algebra")

    def coords(self) -> np.ndarray:
        return self.algebra.to_coords(self.matrix)

    def norm(self) -> float:
        """Module norm ||x|| = ||<x,x>||^(1/2) = largest singular value."""
        return float(np.linalg.norm(self.matrix, 2))

    def __repr__(self):
        return f"ModuleElement({self.algebra!r})"


def inner_product(x: ModuleElement, y: ModuleElement) -> np.ndarray:
    """A-valued scalar product <x,y> = x*·y."""
    if x.algebra != y.algebra:
        raise DescriptorMismatch("elements live over different algebras")
    return x.matrix.conj().T @ y.matrix
