"""Exact linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries reduced mod p.  Subspaces are
kept in reduced row echelon form, which makes them canonical: two subspaces
are equal as sets iff their basis arrays are equal entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DimensionMismatch(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def as_matrix(rows, cols: int, p: int) -> np.ndarray:
    m = np.asarray(rows, dtype=np.int64).reshape(-1, cols)
    return np.mod(m, p)


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p.  Returns (nonzero rows, pivot columns)."""
    a = np.mod(np.asarray(mat, dtype=np.int64), p).copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * inv_mod(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        rows_to_fix = np.nonzero(col)[0]
        if rows_to_fix.size:
            a[rows_to_fix] = (a[rows_to_fix] - np.outer(col[rows_to_fix], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def matrank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return rref(mat, p)[0].shape[0]


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n given by an RREF basis (rows of `basis`)."""

    ambient_dim: int
    p: int
    basis: np.ndarray  # (dim, ambient_dim), in RREF
    pivots: tuple[int, ...] = field(default=())

    @staticmethod
    def from_rows(rows, ambient_dim: int, p: int) -> "Subspace":
        check_prime(p)
        m = as_matrix(rows, ambient_dim, p) if len(rows) else np.zeros((0, ambient_dim), dtype=np.int64)
        b, piv = rref(m, p)
        return Subspace(ambient_dim, p, b, tuple(piv))

    @staticmethod
    def zero(ambient_dim: int, p: int) -> "Subspace":
        return Subspace(ambient_dim, p, np.zeros((0, ambient_dim), dtype=np.int64), ())

    @staticmethod
    def full(ambient_dim: int, p: int) -> "Subspace":
        return Subspace(ambient_dim, p, np.eye(ambient_dim, dtype=np.int64),
                        tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.p == other.p
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __hash__(self):
        return hash((self.ambient_dim, self.p, self.basis.tobytes()))

    def contains(self, vec) -> bool:
        v = np.mod(np.asarray(vec, dtype=np.int64), self.p)
        return self.coords(v) is not None

    def coords(self, vec) -> np.ndarray | None:
        """Coordinates of vec in the RREF basis, or None if not a member."""
        v = np.mod(np.asarray(vec, dtype=np.int64), self.p).copy()
        cs = np.array([v[c] for c in self.pivots], dtype=np.int64)
        if self.dim:
            v = (v - cs @ self.basis) % self.p
        if np.any(v):
            return None
        return cs

    def contains_space(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains(row) for row in other.basis)

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise DimensionMismatch(
                f"ambient mismatch: ({self.ambient_dim},p={self.p}) vs "
                f"({other.ambient_dim},p={other.p})")

    def add(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        rows = np.vstack([self.basis, other.basis])
        return Subspace.from_rows(rows, self.ambient_dim, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of [A^T | B^T] stacking (Zassenhaus-free)."""
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        # x = a.basis^T u = b.basis^T v  <=>  (u, v) in kernel of [A^T, -B^T]
        m = np.hstack([self.basis.T, (-other.basis.T) % self.p])
        ker = kernel(m, self.p)
        rows = (ker.basis[:, : self.dim] @ self.basis) % self.p
        return Subspace.from_rows(rows, self.ambient_dim, self.p)

    def vectors(self):
        """Iterate over all vectors of the subspace (small fields/dims only)."""
        from itertools import product

        for cs in product(range(self.p), repeat=self.dim):
            yield (np.array(cs, dtype=np.int64) @ self.basis) % self.p if self.dim \
                else np.zeros(self.ambient_dim, dtype=np.int64)


def kernel(mat: np.ndarray, p: int) -> Subspace:
    """Null space {x : mat @ x = 0} of an (m, n) matrix, as a subspace of F_p^n."""
    a = np.mod(np.asarray(mat, dtype=np.int64), p)
    nrows, ncols = a.shape
    red, piv = rref(a, p)
    free = [c for c in range(ncols) if c not in piv]
    rows = np.zeros((len(free), ncols), dtype=np.int64)
    for i, c in enumerate(free):
        rows[i, c] = 1
        for r, pc in enumerate(piv):
            rows[i, pc] = (-red[r, c]) % p
    return Subspace.from_rows(rows, ncols, p)


def preimage(mat: np.ndarray, target: Subspace) -> Subspace:
    """{x : mat @ x in target}, for mat mapping F_p^n -> F_p^m with target in F_p^m."""
    a = np.mod(np.asarray(mat, dtype=np.int64), target.p)
    m, n = a.shape
    if m != target.ambient_dim:
        raise DimensionMismatch(f"map has codomain dim {m}, target ambient {target.ambient_dim}")
    # mat @ x in target  <=>  q(mat @ x) = 0 for q the projection killing target.
    comp = complement_projection(target)
    if comp.shape[0] == 0:
        return Subspace.full(n, target.p)
    return kernel((comp @ a) % target.p, target.p)


def complement_projection(v: Subspace) -> np.ndarray:
    """Rows spanning functionals vanishing exactly on v (kernel-of-rows form)."""
    ker = kernel(v.basis, v.p) if v.dim else Subspace.full(v.ambient_dim, v.p)
    # functionals on F^n vanishing on v = kernel of v.basis acting on the right
    return ker.basis


def solve(mat: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of mat @ x = rhs, or None if inconsistent."""
    a = np.mod(np.asarray(mat, dtype=np.int64), p)
    b = np.mod(np.asarray(rhs, dtype=np.int64), p).reshape(-1)
    aug = np.hstack([a, b[:, None]])
    red, piv = rref(aug, p)
    n = a.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = red[r, n]
    return x


def solvable(mat: np.ndarray, rhs: np.ndarray, p: int) -> bool:
    return solve(mat, rhs, p) is not None


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact a @ b mod p, routed through BLAS for large operands.

    Entries lie in [0, p); the float64 products stay below 2^53 whenever
    p^2 * inner_dim does, which holds for every desk-scale system here.
    """
    inner = a.shape[1]
    if inner * a.shape[0] * b.shape[1] < 1 << 17 or (p - 1) ** 2 * inner >= 1 << 53:
        return (a @ b) % p
    return np.mod((a.astype(np.float64) @ b.astype(np.float64)).round(),
                  p).astype(np.int64)


class IncrementalRREF:
    """Row-space accumulator for systems too large to materialize at once.

    Rows are fed in blocks; each block is reduced against the pivots found so
    far using one matrix multiply, so feeding m rows costs O(m * rank * ncols)
    arithmetic instead of a full dense elimination.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = check_prime(p)
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return self.rows.shape[0]

    def add_rows(self, block: np.ndarray):
        b = np.mod(np.asarray(block, dtype=np.int64).reshape(-1, self.ncols), self.p)
        if self.rank:
            coeff = np.mod(-b[:, self.pivots], self.p)
            b = (b + matmul_mod(coeff, self.rows, self.p)) % self.p
        b = b[np.any(b, axis=1)]
        if b.shape[0] == 0:
            return
        extra, piv_extra = rref(b, self.p)
        if extra.shape[0] == 0:
            return
        # reduce old rows against the new pivots, then merge and re-sort
        if self.rank:
            coeff = np.mod(-self.rows[:, piv_extra], self.p)
            self.rows = (self.rows + matmul_mod(coeff, extra, self.p)) % self.p
        merged = np.vstack([self.rows, extra])
        order = np.argsort(self.pivots + piv_extra, kind="stable")
        self.rows = merged[order]
        self.pivots = sorted(self.pivots + piv_extra)

    def reduce(self, block: np.ndarray) -> np.ndarray:
        """Residue of the given rows modulo the accumulated row space."""
        b = np.mod(np.asarray(block, dtype=np.int64).reshape(-1, self.ncols), self.p)
        if self.rank:
            coeff = np.mod(-b[:, self.pivots], self.p)
            b = (b + matmul_mod(coeff, self.rows, self.p)) % self.p
        return b
