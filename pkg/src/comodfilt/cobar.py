"""Cobar complexes of finite-dimensional sub-coalgebras and injectivity tests.

CH^n(C, M) = M (x) C^(x n) with differential d^n = sum_{i=0}^{n+1} (-1)^i d_i:
d_0 inserts the coaction, d_i (1 <= i <= n) applies Delta_C to the i-th
tensor factor, and d_{n+1} appends the unit.  Cohomology dimensions come from
exact ranks.  Injectivity of a C-comodule M is decided by solvability of the
retraction system for the canonical embedding M -> M^{triv} (x) C, solved in
two stages: first the space of comodule maps C -> M, then the normalization
sum_a S^a F^a = I inside that space.
"""

from __future__ import annotations

import numpy as np

from .comodules import Comodule, StreamModule
from .config import Limits, ResourceLimitError, check_limit
from .coordalg import Group, UnsupportedOperation
from .filtration import (CanonicalLevel, ExplicitSubspace, InternalInvariantError,
                         coalgebra_closure, restrict)
from .linalg import IncrementalRREF, Subspace, kernel, matrank, solvable


class NotACComoduleError(ValueError):
    pass


class SubCoalgebra:
    """A finite-dimensional sub-coalgebra C of O(G), with structure constants.

    Stores the coproduct as lambda[k] giving Delta(b_k) = sum lambda^k_{ab}
    b_a (x) b_b, and the coordinates of the unit 1 in the basis.
    """

    def __init__(self, group: Group, monos, space: Subspace,
                 limits: Limits | None = None):
        limits = limits or Limits()
        self.group = group
        self.monos = list(monos)
        self.space = space
        self.index = {m: i for i, m in enumerate(self.monos)}
        s = space.dim
        check_limit(s, limits.max_coalgebra_dim, "sub-coalgebra dimension")
        self.dim = s
        p = group.p
        # ambient extension for stray coproduct legs
        span_l = list(self.monos)
        span_r = list(self.monos)
        idx_l = dict(self.index)
        idx_r = dict(self.index)
        cops = {m: group.coproduct_mono(m) for m in self.monos}
        for cop in cops.values():
            for (a, b) in cop:
                if a not in idx_l:
                    idx_l[a] = len(span_l)
                    span_l.append(a)
                if b not in idx_r:
                    idx_r[b] = len(span_r)
                    span_r.append(b)
        S = len(self.monos)
        db = np.zeros((s, len(span_r)), dtype=np.int64)
        db[:, :S] = space.basis
        pivots = list(space.pivots)
        # delta_matrix: (s*s, s) with Delta(b_k) = sum_{a,b} D[a*s+b, k] b_a (x) b_b
        self.delta_matrix = np.zeros((s * s, s), dtype=np.int64)
        for k in range(s):
            row = space.basis[k]
            t = np.zeros((len(span_l), len(span_r)), dtype=np.int64)
            for col in np.nonzero(row)[0]:
                for (a, b), c in cops[self.monos[int(col)]].items():
                    t[idx_l[a], idx_r[b]] = (t[idx_l[a], idx_r[b]]
                                             + int(row[col]) * c) % p
            alpha = t[:, pivots]
            if np.any((t - alpha @ db) % p) or np.any(alpha[S:, :]):
                raise ValueError("the given subspace is not a sub-coalgebra")
            for b in range(s):
                coords = space.coords(alpha[:S, b])
                if coords is None:
                    raise ValueError("the given subspace is not a sub-coalgebra")
                self.delta_matrix[[a * s + b for a in range(s)], k] = coords
        one = group.one_mono()
        if one not in self.index:
            raise UnsupportedOperation("sub-coalgebra does not contain the unit")
        unit_vec = np.zeros(S, dtype=np.int64)
        unit_vec[self.index[one]] = 1
        coords = space.coords(unit_vec)
        if coords is None:
            raise UnsupportedOperation("sub-coalgebra does not contain the unit")
        self.unit = coords

    @staticmethod
    def canonical(group: Group, d: int, limits: Limits | None = None) -> "SubCoalgebra":
        monos = group.filtration_basis(d)
        return SubCoalgebra(group, monos, Subspace.full(len(monos), group.p),
                            limits=limits)

    @staticmethod
    def from_explicit(x: ExplicitSubspace, limits: Limits | None = None) -> "SubCoalgebra":
        return SubCoalgebra(x.group, x.monos, x.space, limits=limits)

    def coefficient_blocks(self, m: Comodule) -> list[np.ndarray]:
        """F^a matrices with Delta_M(m_i) = sum_{j,a} F^a[j,i] m_j (x) b_a."""
        p = self.group.p
        mm = m.dim
        blocks = [np.zeros((mm, mm), dtype=np.int64) for _ in range(self.dim)]
        for (j, i), f in m.coeffs.items():
            vec = np.zeros(len(self.monos), dtype=np.int64)
            for mono, c in f.coeffs.items():
                if mono not in self.index:
                    raise NotACComoduleError(
                        f"coefficient f[{j},{i}] = {f} is not in the sub-coalgebra "
                        f"(monomial {self.group.mono_str(mono)} outside the span)")
                vec[self.index[mono]] = c % p
            coords = self.space.coords(vec)
            if coords is None:
                raise NotACComoduleError(
                    f"coefficient f[{j},{i}] = {f} is not in the sub-coalgebra")
            for a in np.nonzero(coords)[0]:
                blocks[int(a)][j, i] = int(coords[a])
        return blocks


class ChainComplex:
    """Degrees 0..n_max with differentials d^n: CH^n -> CH^(n+1)."""

    def __init__(self, p: int, dims: list[int], diffs: list[np.ndarray]):
        self.p = p
        self.dims = dims          # dims of CH^0 .. CH^(n_max)
        self.diffs = diffs        # d^0 .. d^(n_max)
        self.n_max = len(dims) - 1
        for n in range(len(diffs) - 1):
            if np.any((diffs[n + 1] @ diffs[n]) % p):
                raise InternalInvariantError(f"d^{n + 1} after d^{n} is nonzero")


def cobar_complex(c: SubCoalgebra, m: Comodule, n_max: int,
                  limits: Limits | None = None) -> ChainComplex:
    """Build CH^0..CH^(n_max) with all differentials (including d^(n_max))."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    limits = limits or Limits()
    p = c.group.p
    s = c.dim
    mm = m.dim
    blocks = c.coefficient_blocks(m)
    check_limit(mm * s ** (n_max + 1), limits.max_chain_dim, "chain-group dimension")
    # F_op: M -> M (x) C, shape (mm*s, mm)
    f_op = np.zeros((mm * s, mm), dtype=np.int64)
    for a, blk in enumerate(blocks):
        f_op[a::s, :] = blk  # row (j, a) = j*s + a
    unit_col = c.unit.reshape(s, 1)
    dims = [mm * s ** n for n in range(n_max + 2)]
    diffs = []
    for n in range(n_max + 1):
        d = np.kron(f_op, np.eye(s ** n, dtype=np.int64))
        sign = -1
        for i in range(1, n + 1):
            term = np.kron(np.kron(np.eye(mm * s ** (i - 1), dtype=np.int64),
                                   c.delta_matrix),
                           np.eye(s ** (n - i), dtype=np.int64))
            d = d + sign * term
            sign = -sign
        d = d + sign * np.kron(np.eye(mm * s ** n, dtype=np.int64), unit_col)
        diffs.append(d % p)
    return ChainComplex(p, dims[: n_max + 1], diffs)


def cohomology_dims(cx: ChainComplex) -> list[int]:
    """dim H^n for n = 0..n_max (exact: d^(n_max) is materialized)."""
    out = []
    prev_rank = 0
    for n in range(cx.n_max + 1):
        rank = matrank(cx.diffs[n], cx.p)
        out.append(cx.dims[n] - rank - prev_rank)
        prev_rank = rank
    return out


def injective_test(c: SubCoalgebra, m: Comodule,
                   limits: Limits | None = None) -> bool:
    """Does the embedding Delta_M: M -> M^triv (x) C split by a comodule map?"""
    limits = limits or Limits()
    p = c.group.p
    s = c.dim
    mm = m.dim
    if mm == 0:
        return True
    check_limit(s * mm, limits.max_solver_unknowns, "retraction system unknowns")
    blocks = c.coefficient_blocks(m)
    lam = c.delta_matrix  # (s*s, s): lambda^k_{ab} = lam[a*s+b, k]
    # stage 1: the space W of comodule maps phi: C -> M,
    # phi(b_k) = v^k with F^c v^k = sum_a lambda^k_{ac} v^a for all c, k
    acc = IncrementalRREF(s * mm, p)
    for cc in range(s):
        rows = []
        for k in range(s):
            block = np.zeros((mm, s * mm), dtype=np.int64)
            block[:, k * mm:(k + 1) * mm] += blocks[cc]
            for a in range(s):
                coef = int(lam[a * s + cc, k])
                if coef:
                    block[:, a * mm:(a + 1) * mm] -= coef * np.eye(mm, dtype=np.int64)
            rows.append(block % p)
        acc.add_rows(np.vstack(rows))
    w = kernel(acc.rows, p) if acc.rank else Subspace.full(s * mm, p)
    t = w.dim
    if t == 0:
        return False
    check_limit(t * mm, limits.max_solver_unknowns, "retraction system unknowns")
    # stage 2: columns of the retraction are combinations of W's basis maps;
    # solve sum_a S^a F^a = I for the combination coefficients
    mat = np.zeros((mm * mm, t * mm), dtype=np.int64)
    for u in range(t):
        wu = w.basis[u].reshape(s, mm)  # wu[a] = phi_u(b_a) in M
        pu = np.zeros((mm, mm, mm), dtype=np.int64)  # pu[r, j, i]
        for a in range(s):
            pu += wu[a][:, None, None] * blocks[a][None, :, :]
        pu %= p
        # equation (r, i), unknown (u, j): coefficient pu[r, j, i]
        mat[:, u * mm:(u + 1) * mm] = pu.transpose(0, 2, 1).reshape(mm * mm, mm)
    rhs = np.eye(mm, dtype=np.int64).reshape(-1)
    return solvable(mat, rhs, p)


def injectivity_profile(g: Group, m, d_max: int,
                        limits: Limits | None = None) -> list[bool]:
    """Levelwise injectivity of M_X over the closure of X = O(G)_{<=d}."""
    limits = limits or Limits()
    out = []
    for d in range(d_max + 1):
        closure = coalgebra_closure(g, CanonicalLevel(g, d))
        c = SubCoalgebra.from_explicit(closure.subspace, limits=limits)
        target = m.generate(m.sufficiency(d)) if isinstance(m, StreamModule) else m
        level = restrict(target, CanonicalLevel(g, d)).comodule
        out.append(injective_test(c, level, limits=limits))
    return out
