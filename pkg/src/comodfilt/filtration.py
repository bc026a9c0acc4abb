"""The filtration functor M -> M_X and the coalgebra closure O(G)_X.

M_X is the greatest subspace V of M with Delta(V) <= V (x) X, computed by a
greatest-fixed-point iteration on the coefficient matrices of the coaction:
one matrix B_h per monomial h appearing in the coefficients, with h either
inside X (preimage constraint B_h V <= V) or outside (kernel constraint
B_h V = 0, after projecting along X).  The same iteration run inside the
coordinate algebra itself yields the largest sub-coalgebra contained in a
finite-dimensional subspace X.
"""

from __future__ import annotations

import warnings

import numpy as np

from .coordalg import Element, Group
from .comodules import Comodule, StreamModule, tensor
from .linalg import Subspace, kernel, preimage


class InternalInvariantError(AssertionError):
    pass


class CanonicalLevel:
    """X = O(G)_{<=d}, never materialized: membership is a degree test."""

    def __init__(self, group: Group, d: int):
        if d < 0:
            raise ValueError("filtration level must be >= 0")
        self.group = group
        self.d = d

    def __repr__(self):
        return f"O({self.group.spec()})_<= {self.d}"


class ExplicitSubspace:
    """X as a Subspace of the span of an ordered monomial list."""

    def __init__(self, group: Group, monos, space: Subspace):
        self.group = group
        self.monos = list(monos)
        if space.ambient_dim != len(self.monos):
            raise ValueError("subspace ambient does not match the monomial span")
        self.space = space

    @staticmethod
    def from_elements(group: Group, elements) -> "ExplicitSubspace":
        monos = sorted({m for f in elements for m in f.coeffs}, key=group.mono_key)
        index = {m: i for i, m in enumerate(monos)}
        rows = [[0] * len(monos) for _ in elements]
        for r, f in enumerate(elements):
            for m, c in f.coeffs.items():
                rows[r][index[m]] = c
        return ExplicitSubspace(group, monos,
                                Subspace.from_rows(rows, len(monos), group.p))

    @staticmethod
    def canonical(group: Group, d: int) -> "ExplicitSubspace":
        monos = group.filtration_basis(d)
        return ExplicitSubspace(group, monos,
                                Subspace.full(len(monos), group.p))

    def elements(self) -> list[Element]:
        return [Element(self.group, {self.monos[i]: int(c)
                                     for i, c in enumerate(row) if c})
                for row in self.space.basis]

    def contains_unit(self) -> bool:
        one = self.group.one_mono()
        if one not in self.monos:
            return False
        vec = np.zeros(len(self.monos), dtype=np.int64)
        vec[self.monos.index(one)] = 1
        return self.space.contains(vec)


def coefficient_matrices(m: Comodule) -> dict:
    """One dim x dim matrix per support monomial h: B_h[j,i] = coeff of h in f_{ji}."""
    mats: dict = {}
    for (j, i), f in m.coeffs.items():
        for mono, c in f.coeffs.items():
            if mono not in mats:
                mats[mono] = np.zeros((m.dim, m.dim), dtype=np.int64)
            mats[mono][j, i] = c
    return mats


class RestrictResult:
    def __init__(self, subspace: Subspace, comodule: Comodule, iterations: int):
        self.subspace = subspace
        self.comodule = comodule
        self.iterations = iterations

    @property
    def dim(self) -> int:
        return self.subspace.dim


def restrict(m: Comodule, x) -> RestrictResult:
    """The greatest subcomodule M_X with coaction landing in M_X (x) X."""
    g = m.group
    p = g.p
    mats = coefficient_matrices(m)
    if isinstance(x, CanonicalLevel):
        if x.group != g:
            raise ValueError("filtration level group does not match the comodule")
        inside = [b for h, b in mats.items() if g.degree(h) <= x.d]
        outside = [b for h, b in mats.items() if g.degree(h) > x.d]
    elif isinstance(x, ExplicitSubspace):
        if x.group != g:
            raise ValueError("subspace group does not match the comodule")
        if not x.contains_unit():
            warnings.warn("X does not contain the unit; M_X will be 0",
                          stacklevel=2)
        inside, outside = _split_against_subspace(g, mats, x)
    else:
        raise TypeError(f"not a filtration level: {x!r}")

    v = Subspace.full(m.dim, p)
    if outside:
        v = v.intersect(kernel(np.vstack(outside), p))
    iterations = 0
    while True:
        iterations += 1
        nxt = v
        for b in inside:
            nxt = nxt.intersect(preimage(b, nxt))
        if nxt == v:
            break
        v = nxt
    sub = _induced_comodule(m, v, mats)
    return RestrictResult(v, sub, iterations)


def _split_against_subspace(g: Group, mats: dict, x: ExplicitSubspace):
    """Rewrite the coefficient matrices in a basis of X plus a complement.

    Returns (inside, outside): 'inside' are the matrices paired with X's
    basis vectors; 'outside' rows must annihilate any X-comodule vector.
    Support monomials absent from X's span extend the ambient automatically.
    """
    p = g.p
    span = list(x.monos)
    index = {m: i for i, m in enumerate(span)}
    extra = sorted((h for h in mats if h not in index), key=g.mono_key)
    for h in extra:
        index[h] = len(span)
        span.append(h)
    S = len(span)
    dim = next(iter(mats.values())).shape[0] if mats else 0
    xb = np.zeros((x.space.dim, S), dtype=np.int64)
    xb[:, : len(x.monos)] = x.space.basis
    pivots = list(x.space.pivots)

    def bmat(c: int) -> np.ndarray:
        h = span[c]
        return mats.get(h, np.zeros((dim, dim), dtype=np.int64))

    piv_mats = [bmat(c) for c in pivots]
    inside = list(piv_mats)
    outside = []
    pivset = set(pivots)
    for c in range(S):
        if c in pivset:
            continue
        resid = bmat(c).astype(np.int64)
        for s, c_piv in enumerate(pivots):
            coef = int(xb[s, c])
            if coef:
                resid = (resid - coef * piv_mats[s]) % p
        if np.any(resid % p):
            outside.append(resid % p)
    return inside, outside


def _induced_comodule(m: Comodule, v: Subspace, mats: dict) -> Comodule:
    """Express the coaction on the basis of V and re-validate it."""
    g = m.group
    labels = [f"v{a + 1}" for a in range(v.dim)]
    coaction = []
    for a in range(v.dim):
        vec = v.basis[a]
        col: dict = {}
        for h, b in mats.items():
            w = (b @ vec) % g.p
            cs = v.coords(w)
            if cs is None:
                raise InternalInvariantError(
                    "induced coaction escapes the fixed-point subspace")
            for bidx in np.nonzero(cs)[0]:
                j = int(bidx)
                col[j] = col.get(j, g.zero()) + g.element({h: int(cs[bidx])})
        coaction.append(col)
    sub = Comodule(g, labels, coaction)
    report = sub.validate()
    if not report.ok:
        raise InternalInvariantError(
            f"induced coaction fails validation: {report.failures[0]}")
    return sub


class FiltrationResult:
    """Dimension ladder of M_{O(G)_{<=d}} for d = 0..d_max."""

    def __init__(self, dims: list[int], stabilized_at):
        self.dims = dims
        self.stabilized_at = stabilized_at  # first d with M_{<=d} = M, or None

    def __repr__(self):
        return f"FiltrationResult(dims={self.dims}, stabilized_at={self.stabilized_at})"


def filtration_dims(m, d_max: int) -> FiltrationResult:
    """dim M_{O(G)_{<=d}} for d = 0..d_max, for a comodule or a stream."""
    if d_max < 0:
        raise ValueError("d_max must be >= 0")
    dims = []
    stabilized = None
    if isinstance(m, StreamModule):
        for d in range(d_max + 1):
            gen = m.generate(m.sufficiency(d))
            dims.append(restrict(gen, CanonicalLevel(m.group, d)).dim)
    else:
        for d in range(d_max + 1):
            dim = restrict(m, CanonicalLevel(m.group, d)).dim
            dims.append(dim)
            if stabilized is None and dim == m.dim:
                stabilized = d
    return FiltrationResult(dims, stabilized)


class ClosureResult:
    def __init__(self, subspace: ExplicitSubspace, is_subcoalgebra: bool):
        self.subspace = subspace
        self.is_subcoalgebra = is_subcoalgebra

    @property
    def dim(self) -> int:
        return self.subspace.space.dim


def coalgebra_closure(g: Group, x) -> ClosureResult:
    """O(G)_X: the greatest D <= X with Delta(D) <= D (x) X.

    The greatest fixed point of this iteration is automatically a
    sub-coalgebra contained in X; the sub-coalgebra property
    Delta(D) <= D (x) D is verified independently and reported.
    """
    if isinstance(x, CanonicalLevel):
        x = ExplicitSubspace.canonical(x.group, x.d)
    if x.group != g:
        raise ValueError("subspace group does not match")
    p = g.p
    span_r = list(x.monos)  # right-leg ambient (compared against X)
    span_l = list(x.monos)  # left-leg ambient (compared against D)
    idx_r = {m: i for i, m in enumerate(span_r)}
    idx_l = {m: i for i, m in enumerate(span_l)}
    cops = {m: g.coproduct_mono(m) for m in x.monos}
    for cop in cops.values():
        for (a, b) in cop:
            if a not in idx_l:
                idx_l[a] = len(span_l)
                span_l.append(a)
            if b not in idx_r:
                idx_r[b] = len(span_r)
                span_r.append(b)
    SL_, SR = len(span_l), len(span_r)
    S = len(x.monos)
    # B_c: for each right mono index c, the (SL_, S) matrix of left legs
    bmats = {c: np.zeros((SL_, S), dtype=np.int64) for c in range(SR)}
    for col, m in enumerate(x.monos):
        for (a, b), coeff in cops[m].items():
            bmats[idx_r[b]][idx_l[a], col] = coeff % p
    xb = np.zeros((x.space.dim, SR), dtype=np.int64)
    xb[:, :S] = x.space.basis
    pivots = list(x.space.pivots)
    piv_mats = [bmats[c] for c in pivots]
    # kernel constraints: right legs transverse to X, and left legs outside span(D)
    constraint_rows = []
    pivset = set(pivots)
    for c in range(SR):
        if c in pivset:
            continue
        resid = bmats[c].copy()
        for s, c_piv in enumerate(pivots):
            coef = int(xb[s, c])
            if coef:
                resid = (resid - coef * piv_mats[s]) % p
        if np.any(resid % p):
            constraint_rows.append(resid % p)
    for bm in piv_mats:
        if SL_ > S and np.any(bm[S:]):
            constraint_rows.append(bm[S:])
    v = x.space
    if constraint_rows:
        v = v.intersect(kernel(np.vstack(constraint_rows), p))
    while True:
        nxt = v
        for bm in piv_mats:
            nxt = nxt.intersect(preimage(bm[:S], nxt))
        if nxt == v:
            break
        v = nxt
    closed = ExplicitSubspace(g, x.monos, v)
    return ClosureResult(closed, _check_subcoalgebra(g, closed))


def _check_subcoalgebra(g: Group, d: ExplicitSubspace) -> bool:
    """Verify Delta(D) <= D (x) D for every basis vector of D."""
    p = g.p
    monos = d.monos
    space = d.space
    if space.dim == 0:
        return True
    # shared ambient extension for stray coproduct legs
    span_l = list(monos)
    span_r = list(monos)
    idx_l = {m: i for i, m in enumerate(span_l)}
    idx_r = {m: i for i, m in enumerate(span_r)}
    cops = {m: g.coproduct_mono(m) for m in monos}
    for cop in cops.values():
        for (a, b) in cop:
            if a not in idx_l:
                idx_l[a] = len(span_l)
                span_l.append(a)
            if b not in idx_r:
                idx_r[b] = len(span_r)
                span_r.append(b)
    S = len(monos)
    db = np.zeros((space.dim, len(span_r)), dtype=np.int64)
    db[:, :S] = space.basis
    pivots = list(space.pivots)
    for row in space.basis:
        t = np.zeros((len(span_l), len(span_r)), dtype=np.int64)
        for col in np.nonzero(row)[0]:
            for (a, b), c in cops[monos[int(col)]].items():
                t[idx_l[a], idx_r[b]] = (t[idx_l[a], idx_r[b]]
                                         + int(row[col]) * c) % p
        # decompose against D's RREF basis on the right leg
        alpha = t[:, pivots]
        resid = (t - alpha @ db) % p
        if np.any(resid):
            return False
        # each right-pivot component must itself lie in D (left leg)
        if np.any(alpha[S:, :]):
            return False
        if any(not space.contains(alpha[:S, s]) for s in range(space.dim)):
            return False
    return True


def subspace_tensor(u: Subspace, v: Subspace) -> Subspace:
    """u (x) v inside F^(mu*mv) with index (i, j) -> i*mv + j."""
    if u.p != v.p:
        raise ValueError("field mismatch")
    amb = u.ambient_dim * v.ambient_dim
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(amb, u.p)
    rows = [np.kron(a, b) % u.p for a in u.basis for b in v.basis]
    return Subspace.from_rows(np.array(rows), amb, u.p)


def tensor_containment(m: Comodule, n: Comodule, x) -> dict:
    """Compare (M (x) N)_X with M_X (x) N_X; the containment can fail for
    determinant-power pairs at small X, which is reported rather than hidden."""
    mn = tensor(m, n)
    lhs = restrict(mn, x).subspace
    rhs = subspace_tensor(restrict(m, x).subspace, restrict(n, x).subspace)
    return {
        "lhs_dim": lhs.dim,
        "rhs_dim": rhs.dim,
        "contained": rhs.contains_space(lhs),
    }
