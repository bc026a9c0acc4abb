"""Coordinate Hopf algebras of the catalog groups, with exact structure maps.

Catalog: additive group Ga, multiplicative group Gm, GL(N), SL(N), the
unitriangular group U(N), and the matrix monoid M(N), all over a prime field
F_p.  Elements are sparse dicts {monomial: coefficient}; monomials are small
hashable tuples whose shape depends on the group:

    Ga     int a >= 0                       (power of t)
    Gm     int n  (signed)                  (power of t)
    M(N)   tuple of N*N exponents           (row-major x_{i,j})
    U(N)   tuple of N(N-1)/2 exponents      (x_{i,j}, i<j, row-major)
    GL(N)  (tuple of N*N exponents, j>=0)   (x-part times det(x)^{-j})
    SL(N)  tuple of N*N exponents           (normal form modulo det-1)

GL(N) elements are kept in reduced form: when the det-inverse power is
positive, the polynomial part lies in a fixed monomial complement of
det * O(M).  SL(N) elements are reduced degreewise modulo (det - 1) by exact
row reduction, with pivots chosen by graded-lex order; no Groebner machinery.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from math import comb

import numpy as np

from .linalg import check_prime, inv_mod, is_prime, rref


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero when the top argument is negative."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


class UnsupportedOperation(ValueError):
    pass


class GroupSpecError(ValueError):
    pass


# ---------------------------------------------------------------------------
# elements

class Element:
    """Sparse algebra element: dict monomial -> coefficient in [1, p)."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: "Group", coeffs: dict):
        self.group = group
        self.coeffs = {m: c % group.p for m, c in coeffs.items() if c % group.p}

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Element) and self.group == other.group
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.group), tuple(sorted(self.coeffs.items(), key=lambda kv: self.group.mono_key(kv[0])))))

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return Element(self.group, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) - c
        return Element(self.group, out)

    def scale(self, a: int) -> "Element":
        return Element(self.group, {m: c * a for m, c in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        return self.group.product(self, other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not defined on generic elements")
        result = self.group.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def degree(self) -> int:
        """Filtration degree: max monomial degree (0 for the zero element)."""
        g = self.group
        return max((g.degree(m) for m in self.coeffs), default=0)

    def __repr__(self):
        g = self.group
        if not self.coeffs:
            return "0"
        terms = sorted(self.coeffs.items(), key=lambda kv: g.mono_key(kv[0]))
        return " + ".join(f"{c}*{g.mono_str(m)}" if c != 1 or g.degree(m) == 0 and m == g.one_mono()
                          else g.mono_str(m) for m, c in terms)


class TensorElement:
    """Sparse element of O(G) tensor O(G): dict (mono, mono) -> coefficient."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: "Group", coeffs: dict):
        self.group = group
        self.coeffs = {mm: c % group.p for mm, c in coeffs.items() if c % group.p}

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.group == other.group
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for mm, c in other.coeffs.items():
            out[mm] = out.get(mm, 0) + c
        return TensorElement(self.group, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for mm, c in other.coeffs.items():
            out[mm] = out.get(mm, 0) - c
        return TensorElement(self.group, out)

    def __mul__(self, other):
        g = self.group
        acc: dict = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                left = g.product(Element(g, {a1: 1}), Element(g, {a2: 1}))
                right = g.product(Element(g, {b1: 1}), Element(g, {b2: 1}))
                for ml, cl in left.coeffs.items():
                    for mr, cr in right.coeffs.items():
                        key = (ml, mr)
                        acc[key] = acc.get(key, 0) + c1 * c2 * cl * cr
        return TensorElement(g, acc)

    def __repr__(self):
        g = self.group
        if not self.coeffs:
            return "0"
        terms = sorted(self.coeffs.items(), key=lambda kv: (g.mono_key(kv[0][0]), g.mono_key(kv[0][1])))
        return " + ".join(f"{c}*{g.mono_str(a)}(x){g.mono_str(b)}" for (a, b), c in terms)


# ---------------------------------------------------------------------------
# the group catalog

class Group:
    """A catalog coordinate algebra O(G) over F_p."""

    kind = "?"
    has_antipode = True

    def __init__(self, p: int, N: int = 1):
        self.p = check_prime(p)
        self.N = N

    # --- monomial protocol, overridden per group -------------------------
    def one_mono(self):
        raise NotImplementedError

    def degree(self, mono) -> int:
        raise NotImplementedError

    def mono_key(self, mono):
        """Total order: (filtration degree, graded-lex tiebreak)."""
        raise NotImplementedError

    def mono_str(self, mono) -> str:
        raise NotImplementedError

    def _mono_product(self, m1, m2) -> dict:
        """Product of two canonical monomials as a canonical element dict."""
        raise NotImplementedError

    def coproduct_mono(self, mono) -> dict:
        """Delta of a canonical monomial: dict (mono, mono) -> coeff, legs canonical."""
        raise NotImplementedError

    def counit_mono(self, mono) -> int:
        raise NotImplementedError

    def antipode_mono(self, mono) -> dict:
        raise NotImplementedError

    def filtration_monomials(self, d: int) -> list:
        """Canonical ordered basis of O(G)_{<=d}."""
        raise NotImplementedError

    def filtration_dim(self, d: int) -> int:
        """dim O(G)_{<=d} by closed formula; cross-checked against enumeration."""
        raise NotImplementedError

    # --- generic element-level operations --------------------------------
    def one(self) -> Element:
        return Element(self, {self.one_mono(): 1})

    def zero(self) -> Element:
        return Element(self, {})

    def element(self, coeffs: dict) -> Element:
        return Element(self, coeffs)

    def product(self, f1: Element, f2: Element) -> Element:
        acc: dict = {}
        for m1, c1 in f1.coeffs.items():
            for m2, c2 in f2.coeffs.items():
                for m, c in self._mono_product(m1, m2).items():
                    acc[m] = acc.get(m, 0) + c1 * c2 * c
        return Element(self, acc)

    def coproduct(self, f: Element) -> TensorElement:
        acc: dict = {}
        for m, c in f.coeffs.items():
            for mm, cc in self.coproduct_mono(m).items():
                acc[mm] = acc.get(mm, 0) + c * cc
        return TensorElement(self, acc)

    def counit(self, f: Element) -> int:
        return sum(c * self.counit_mono(m) for m, c in f.coeffs.items()) % self.p

    def antipode(self, f: Element) -> Element:
        if not self.has_antipode:
            raise UnsupportedOperation(f"{self.kind} is a monoid, no antipode")
        acc: dict = {}
        for m, c in f.coeffs.items():
            for m2, c2 in self.antipode_mono(m).items():
                acc[m2] = acc.get(m2, 0) + c * c2
        return Element(self, acc)

    def filtration_basis(self, d: int) -> list:
        if d < 0:
            raise ValueError("filtration level must be >= 0")
        monos = self.filtration_monomials(d)
        return sorted(monos, key=self.mono_key)

    def spec(self) -> str:
        if self.kind in ("Ga", "Gm"):
            return f"{self.kind}@p={self.p}"
        return f"{self.kind}:{self.N}@p={self.p}"

    def __repr__(self):
        return f"Group({self.spec()})"

    def __eq__(self, other):
        return isinstance(other, Group) and self.spec() == other.spec()

    def __hash__(self):
        return hash(self.spec())


class Ga(Group):
    """Additive group: O(Ga) = k[t], t primitive, degree 1 (unitriangular coordinate)."""

    kind = "Ga"

    def one_mono(self):
        return 0

    def degree(self, mono):
        return mono

    def mono_key(self, mono):
        return (mono, mono)

    def mono_str(self, mono):
        return "1" if mono == 0 else f"t^{mono}"

    def _mono_product(self, m1, m2):
        return {m1 + m2: 1}

    def coproduct_mono(self, mono):
        # (t(x)1 + 1(x)t)^a
        return {(i, mono - i): binom(mono, i) % self.p for i in range(mono + 1)
                if binom(mono, i) % self.p}

    def counit_mono(self, mono):
        return 1 if mono == 0 else 0

    def antipode_mono(self, mono):
        return {mono: (-1) ** mono % self.p}

    def filtration_monomials(self, d):
        return list(range(d + 1))

    def filtration_dim(self, d):
        return d + 1


class Gm(Group):
    """Multiplicative group: O(Gm) = k[t, t^-1], grouplike t, realized as GL(1)."""

    kind = "Gm"

    def one_mono(self):
        return 0

    def degree(self, mono):
        return abs(mono)

    def mono_key(self, mono):
        return (abs(mono), -mono)

    def mono_str(self, mono):
        return "1" if mono == 0 else f"t^{mono}"

    def _mono_product(self, m1, m2):
        return {m1 + m2: 1}

    def coproduct_mono(self, mono):
        return {(mono, mono): 1}

    def counit_mono(self, mono):
        return 1

    def antipode_mono(self, mono):
        return {-mono: 1}

    def filtration_monomials(self, d):
        return list(range(-d, d + 1))

    def filtration_dim(self, d):
        return 2 * d + 1


def _exp_tuples(nvars: int, total: int):
    """All exponent tuples of the given total degree."""
    if nvars == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exp_tuples(nvars - 1, total - first):
            yield (first,) + rest


class MatMonoid(Group):
    """The monoid of N x N matrices: polynomial coordinates, no antipode."""

    kind = "M"
    has_antipode = False

    def __init__(self, p, N):
        super().__init__(p, N)
        self.nvars = N * N

    def one_mono(self):
        return (0,) * self.nvars

    def degree(self, mono):
        return sum(mono)

    def mono_key(self, mono):
        return (sum(mono), mono)

    def mono_str(self, mono):
        N = self.N
        parts = [f"x{i + 1}{j + 1}^{e}" if e > 1 else f"x{i + 1}{j + 1}"
                 for (i, j), e in zip(itertools.product(range(N), range(N)), mono) if e]
        return "*".join(parts) if parts else "1"

    def gen_mono(self, i, j):
        m = [0] * self.nvars
        m[i * self.N + j] = 1
        return tuple(m)

    def _mono_product(self, m1, m2):
        return {tuple(a + b for a, b in zip(m1, m2)): 1}

    def coproduct_gen(self, i, j) -> dict:
        return {(self.gen_mono(i, ell), self.gen_mono(ell, j)): 1 for ell in range(self.N)}

    def coproduct_mono(self, mono):
        acc = {(self.one_mono(), self.one_mono()): 1}
        for idx, e in enumerate(mono):
            if not e:
                continue
            i, j = divmod(idx, self.N)
            gen_cop = self.coproduct_gen(i, j)
            for _ in range(e):
                nxt: dict = {}
                for (a, b), c in acc.items():
                    for (ga, gb), gc in gen_cop.items():
                        key = (tuple(x + y for x, y in zip(a, ga)),
                               tuple(x + y for x, y in zip(b, gb)))
                        nxt[key] = (nxt.get(key, 0) + c * gc) % self.p
                acc = {k: v for k, v in nxt.items() if v}
        return acc

    def counit_mono(self, mono):
        # epsilon(x_{i,j}) = delta_{i,j}
        for idx, e in enumerate(mono):
            i, j = divmod(idx, self.N)
            if e and i != j:
                return 0
        return 1

    def filtration_monomials(self, d):
        return [m for deg in range(d + 1) for m in _exp_tuples(self.nvars, deg)]

    def filtration_dim(self, d):
        return binom(d + self.nvars, self.nvars)

    def det_element(self) -> Element:
        coeffs: dict = {}
        for perm in itertools.permutations(range(self.N)):
            sign = _perm_sign(perm)
            m = [0] * self.nvars
            for i, j in enumerate(perm):
                m[i * self.N + j] += 1
            coeffs[tuple(m)] = coeffs.get(tuple(m), 0) + sign
        return Element(self, coeffs)

    def minor_element(self, drop_row: int, drop_col: int) -> Element:
        """Determinant of the submatrix omitting the given row and column."""
        rows = [i for i in range(self.N) if i != drop_row]
        cols = [j for j in range(self.N) if j != drop_col]
        coeffs: dict = {}
        if not rows:
            return self.one()
        for perm in itertools.permutations(range(len(cols))):
            sign = _perm_sign(perm)
            m = [0] * self.nvars
            for a, b in enumerate(perm):
                m[rows[a] * self.N + cols[b]] += 1
            coeffs[tuple(m)] = coeffs.get(tuple(m), 0) + sign
        return Element(self, coeffs)


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


class Unitriangular(Group):
    """Upper unitriangular group U(N): coordinates x_{i,j}, i<j, each of degree 1."""

    kind = "U"

    def __init__(self, p, N):
        if N < 2:
            raise GroupSpecError("U(N) requires N >= 2")
        super().__init__(p, N)
        self.pairs = [(i, j) for i in range(N) for j in range(i + 1, N)]
        self.pair_index = {pr: k for k, pr in enumerate(self.pairs)}
        self.nvars = len(self.pairs)

    def one_mono(self):
        return (0,) * self.nvars

    def degree(self, mono):
        return sum(mono)

    def mono_key(self, mono):
        return (sum(mono), mono)

    def mono_str(self, mono):
        parts = [f"x{i + 1}{j + 1}^{e}" if e > 1 else f"x{i + 1}{j + 1}"
                 for (i, j), e in zip(self.pairs, mono) if e]
        return "*".join(parts) if parts else "1"

    def gen_mono(self, i, j):
        m = [0] * self.nvars
        m[self.pair_index[(i, j)]] = 1
        return tuple(m)

    def _mono_product(self, m1, m2):
        return {tuple(a + b for a, b in zip(m1, m2)): 1}

    def coproduct_gen(self, i, j) -> dict:
        cop = {(self.gen_mono(i, j), self.one_mono()): 1,
               (self.one_mono(), self.gen_mono(i, j)): 1}
        for ell in range(i + 1, j):
            cop[(self.gen_mono(i, ell), self.gen_mono(ell, j))] = 1
        return cop

    def coproduct_mono(self, mono):
        acc = {(self.one_mono(), self.one_mono()): 1}
        for idx, e in enumerate(mono):
            if not e:
                continue
            i, j = self.pairs[idx]
            gen_cop = self.coproduct_gen(i, j)
            for _ in range(e):
                nxt: dict = {}
                for (a, b), c in acc.items():
                    for (ga, gb), gc in gen_cop.items():
                        key = (tuple(x + y for x, y in zip(a, ga)),
                               tuple(x + y for x, y in zip(b, gb)))
                        nxt[key] = (nxt.get(key, 0) + c * gc) % self.p
                acc = {k: v for k, v in nxt.items() if v}
        return acc

    def counit_mono(self, mono):
        return 1 if not any(mono) else 0

    @lru_cache(maxsize=None)
    def _antipode_gen_cache(self):
        # inverse of I + E for E the strict upper triangle of generators:
        # (I+E)^{-1} = sum_k (-E)^k, nilpotent sum
        N = self.N
        E = [[self.element({self.gen_mono(i, j): 1}) if i < j else self.zero()
              for j in range(N)] for i in range(N)]
        total = [[self.one() if i == j else self.zero() for j in range(N)] for i in range(N)]
        powk = E
        sign = -1
        for _ in range(1, N):
            for i in range(N):
                for j in range(N):
                    total[i][j] = total[i][j] + powk[i][j].scale(sign)
            nxt = [[self.zero() for _ in range(N)] for _ in range(N)]
            for i in range(N):
                for j in range(N):
                    s = self.zero()
                    for ell in range(N):
                        s = s + powk[i][ell] * E[ell][j]
                    nxt[i][j] = s
            powk = nxt
            sign = -sign
        return {(i, j): total[i][j] for i, j in self.pairs}

    def antipode_mono(self, mono):
        result = self.one()
        sigma = self._antipode_gen_cache()
        for idx, e in enumerate(mono):
            if not e:
                continue
            result = result * (sigma[self.pairs[idx]] ** e)
        return result.coeffs

    def filtration_monomials(self, d):
        return [m for deg in range(d + 1) for m in _exp_tuples(self.nvars, deg)]

    def filtration_dim(self, d):
        return binom(d + self.nvars, self.nvars)


class _HomogeneousDetReducer:
    """Row-reduced image of det * O(M)_{deg-N} inside O(M)_deg.

    Columns are the degree-deg monomials in descending graded-lex order, so the
    pivot monomials are the largest ones; the complement (non-pivot) monomials
    give the canonical polynomial parts that may sit over a det-inverse power.
    Quotients are tracked so an element can be rewritten p = det*q + r exactly.
    """

    def __init__(self, mat: "MatMonoid", deg: int):
        self.mat = mat
        self.deg = deg
        p = mat.p
        self.monos = sorted(_exp_tuples(mat.nvars, deg), key=lambda m: m, reverse=True)
        self.index = {m: i for i, m in enumerate(self.monos)}
        qdeg = deg - mat.N
        self.qmonos = sorted(_exp_tuples(mat.nvars, qdeg), reverse=True) if qdeg >= 0 else []
        n, q = len(self.monos), len(self.qmonos)
        if q == 0:
            self.rows = np.zeros((0, n), dtype=np.int64)
            self.qrows = np.zeros((0, 0), dtype=np.int64)
            self.pivots = []
            self.complement = list(self.monos)
            return
        det = mat.det_element()
        w = np.zeros((q, n + q), dtype=np.int64)
        for r, qm in enumerate(self.qmonos):
            for dm, dc in det.coeffs.items():
                prod = tuple(a + b for a, b in zip(dm, qm))
                w[r, self.index[prod]] = dc % p
            w[r, n + r] = 1
        red, piv = rref(w, p)
        # rows of det*monomial are independent, so all pivots land in the first block
        assert all(c < n for c in piv) and len(piv) == q
        self.rows = red[:, :n]
        self.qrows = red[:, n:]
        self.pivots = piv
        pivset = set(piv)
        self.complement = [m for i, m in enumerate(self.monos) if i not in pivset]

    def split(self, vec: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """vec = det*q + r with r supported on complement monomials; returns (r, q)."""
        p = self.mat.p
        if not self.pivots:
            return vec % p, np.zeros(0, dtype=np.int64)
        c = vec[self.pivots] % p
        residue = (vec - c @ self.rows) % p
        quotient = (c @ self.qrows) % p
        return residue, quotient


class GL(Group):
    """General linear group GL(N): O(M)[det^{-1}] with det^{-1} of degree N."""

    kind = "GL"

    def __init__(self, p, N):
        super().__init__(p, N)
        self.mat = MatMonoid(p, N)
        self.nvars = N * N
        self._reducers: dict[int, _HomogeneousDetReducer] = {}

    def _reducer(self, deg: int) -> _HomogeneousDetReducer:
        if deg not in self._reducers:
            self._reducers[deg] = _HomogeneousDetReducer(self.mat, deg)
        return self._reducers[deg]

    def one_mono(self):
        return ((0,) * self.nvars, 0)

    def degree(self, mono):
        e, j = mono
        return sum(e) + self.N * j

    def mono_key(self, mono):
        e, j = mono
        return (self.degree(mono), e + (j,))

    def mono_str(self, mono):
        e, j = mono
        s = self.mat.mono_str(e)
        if j:
            s = f"{s}*det^-{j}" if s != "1" else f"det^-{j}"
        return s

    def gen_mono(self, i, j):
        return (self.mat.gen_mono(i, j), 0)

    def detinv_mono(self):
        return ((0,) * self.nvars, 1)

    def reduce_dict(self, coeffs: dict) -> dict:
        """Push the element into reduced form: polynomial parts over det^{-j},
        j >= 1, lie in the fixed monomial complement of det * O(M)."""
        p = self.p
        buckets: dict[int, dict] = {}
        for (e, j), c in coeffs.items():
            buckets.setdefault(j, {})[e] = (buckets.setdefault(j, {}).get(e, 0) + c) % p
        out: dict = {}
        if not buckets:
            return {}
        for j in range(max(buckets), -1, -1):
            poly = {e: c for e, c in buckets.get(j, {}).items() if c}
            if j == 0:
                for e, c in poly.items():
                    out[(e, 0)] = (out.get((e, 0), 0) + c) % p
                continue
            by_deg: dict[int, dict] = {}
            for e, c in poly.items():
                by_deg.setdefault(sum(e), {})[e] = c
            for deg, homog in by_deg.items():
                red = self._reducer(deg)
                vec = np.zeros(len(red.monos), dtype=np.int64)
                for e, c in homog.items():
                    vec[red.index[e]] = c
                residue, quotient = red.split(vec)
                for i in np.nonzero(residue)[0]:
                    key = (red.monos[i], j)
                    out[key] = (out.get(key, 0) + int(residue[i])) % p
                for i in np.nonzero(quotient)[0]:
                    e2 = red.qmonos[i]
                    buckets.setdefault(j - 1, {})[e2] = \
                        (buckets.setdefault(j - 1, {}).get(e2, 0) + int(quotient[i])) % p
        return {m: c for m, c in out.items() if c % p}

    def _mono_product(self, m1, m2):
        (e1, j1), (e2, j2) = m1, m2
        raw = (tuple(a + b for a, b in zip(e1, e2)), j1 + j2)
        return self.reduce_dict({raw: 1})

    def coproduct_mono(self, mono):
        e, j = mono
        acc: dict = {}
        for (a, b), c in self.mat.coproduct_mono(e).items():
            acc[((a, j), (b, j))] = c
        return self._reduce_tensor(acc)

    def _reduce_tensor(self, acc: dict) -> dict:
        # reduce left legs, then right legs
        by_right: dict = {}
        for (a, b), c in acc.items():
            by_right.setdefault(b, {})[a] = (by_right.setdefault(b, {}).get(a, 0) + c) % self.p
        mid: dict = {}
        for b, poly in by_right.items():
            for a, c in self.reduce_dict(poly).items():
                mid[(a, b)] = (mid.get((a, b), 0) + c) % self.p
        by_left: dict = {}
        for (a, b), c in mid.items():
            by_left.setdefault(a, {})[b] = (by_left.setdefault(a, {}).get(b, 0) + c) % self.p
        out: dict = {}
        for a, poly in by_left.items():
            for b, c in self.reduce_dict(poly).items():
                out[(a, b)] = (out.get((a, b), 0) + c) % self.p
        return {k: v for k, v in out.items() if v}

    def counit_mono(self, mono):
        e, j = mono
        return self.mat.counit_mono(e)

    @lru_cache(maxsize=None)
    def _antipode_gens(self):
        # Cramer's rule: sigma(x_{i,j}) = (-1)^{i+j} * minor_{j,i}(x) * det^{-1}
        sig = {}
        for i in range(self.N):
            for j in range(self.N):
                minor = self.mat.minor_element(j, i)
                sign = (-1) ** (i + j)
                sig[(i, j)] = Element(self, {(m, 1): sign * c for m, c in minor.coeffs.items()})
        return sig

    def det_element(self) -> Element:
        return Element(self, {(m, 0): c for m, c in self.mat.det_element().coeffs.items()})

    def antipode_mono(self, mono):
        e, j = mono
        sig = self._antipode_gens()
        result = self.det_element() ** j  # sigma(det^-1) = det
        for idx, exp in enumerate(e):
            if not exp:
                continue
            i, jj = divmod(idx, self.N)
            result = result * (sig[(i, jj)] ** exp)
        return result.coeffs

    def filtration_monomials(self, d):
        monos = [(e, 0) for deg in range(d + 1) for e in _exp_tuples(self.nvars, deg)]
        for j in range(1, d // self.N + 1):
            for deg in range(d - j * self.N + 1):
                monos.extend((e, j) for e in self._reducer(deg).complement)
        return monos

    def filtration_dim(self, d):
        n2 = self.nvars
        return binom(d + n2, n2) + binom(d - self.N + n2, n2)


class _SLReducer:
    """Row-reduced image of (det - 1) * O(M)_{<=d-N} inside O(M)_{<=d}.

    Columns in descending (degree, lex) order; reduction by these rows is the
    degreewise normal form modulo (det - 1), stable under enlarging d.
    """

    def __init__(self, mat: "MatMonoid", d: int):
        self.mat = mat
        self.d = d
        p = mat.p
        self.monos = sorted((m for deg in range(d + 1) for m in _exp_tuples(mat.nvars, deg)),
                            key=lambda m: (sum(m), m), reverse=True)
        self.index = {m: i for i, m in enumerate(self.monos)}
        qmonos = [m for deg in range(d - mat.N + 1) for m in _exp_tuples(mat.nvars, deg)] \
            if d >= mat.N else []
        n = len(self.monos)
        det = mat.det_element()
        w = np.zeros((len(qmonos), n), dtype=np.int64)
        for r, qm in enumerate(qmonos):
            for dm, dc in det.coeffs.items():
                prod = tuple(a + b for a, b in zip(dm, qm))
                w[r, self.index[prod]] = dc % p
            w[r, self.index[qm]] = (w[r, self.index[qm]] - 1) % p
        red, piv = rref(w, p)
        self.rows = red
        self.pivots = piv
        pivset = set(piv)
        self.complement = [m for i, m in enumerate(self.monos) if i not in pivset]

    def reduce_vec(self, vec: np.ndarray) -> np.ndarray:
        p = self.mat.p
        if not self.pivots:
            return vec % p
        c = vec[self.pivots] % p
        return (vec - c @ self.rows) % p


class SL(Group):
    """Special linear group SL(N): O(M)/(det - 1) in degreewise normal form."""

    kind = "SL"

    def __init__(self, p, N):
        super().__init__(p, N)
        self.mat = MatMonoid(p, N)
        self.nvars = N * N
        self._reducers: dict[int, _SLReducer] = {}

    def _reducer(self, d: int) -> _SLReducer:
        if d not in self._reducers:
            self._reducers[d] = _SLReducer(self.mat, d)
        return self._reducers[d]

    def one_mono(self):
        return (0,) * self.nvars

    def degree(self, mono):
        return sum(mono)

    def mono_key(self, mono):
        return (sum(mono), mono)

    def mono_str(self, mono):
        return self.mat.mono_str(mono)

    def gen_mono(self, i, j):
        return self.mat.gen_mono(i, j)

    def reduce_dict(self, coeffs: dict) -> dict:
        if not coeffs:
            return {}
        d = max(sum(m) for m in coeffs)
        red = self._reducer(d)
        vec = np.zeros(len(red.monos), dtype=np.int64)
        for m, c in coeffs.items():
            vec[red.index[m]] = (vec[red.index[m]] + c) % self.p
        out_vec = red.reduce_vec(vec)
        return {red.monos[i]: int(out_vec[i]) for i in np.nonzero(out_vec)[0]}

    def _mono_product(self, m1, m2):
        raw = tuple(a + b for a, b in zip(m1, m2))
        return self.reduce_dict({raw: 1})

    def coproduct_mono(self, mono):
        acc = self.mat.coproduct_mono(mono)
        return self._reduce_tensor(acc)

    def _reduce_tensor(self, acc: dict) -> dict:
        by_right: dict = {}
        for (a, b), c in acc.items():
            by_right.setdefault(b, {})[a] = (by_right.setdefault(b, {}).get(a, 0) + c) % self.p
        mid: dict = {}
        for b, poly in by_right.items():
            for a, c in self.reduce_dict(poly).items():
                mid[(a, b)] = (mid.get((a, b), 0) + c) % self.p
        by_left: dict = {}
        for (a, b), c in mid.items():
            by_left.setdefault(a, {})[b] = (by_left.setdefault(a, {}).get(b, 0) + c) % self.p
        out: dict = {}
        for a, poly in by_left.items():
            for b, c in self.reduce_dict(poly).items():
                out[(a, b)] = (out.get((a, b), 0) + c) % self.p
        return {k: v for k, v in out.items() if v}

    def counit_mono(self, mono):
        return self.mat.counit_mono(mono)

    @lru_cache(maxsize=None)
    def _antipode_gens(self):
        sig = {}
        for i in range(self.N):
            for j in range(self.N):
                minor = self.mat.minor_element(j, i)
                sign = (-1) ** (i + j)
                sig[(i, j)] = Element(self, self.reduce_dict(
                    {m: sign * c for m, c in minor.coeffs.items()}))
        return sig

    def antipode_mono(self, mono):
        sig = self._antipode_gens()
        result = self.one()
        for idx, exp in enumerate(mono):
            if not exp:
                continue
            i, jj = divmod(idx, self.N)
            result = result * (sig[(i, jj)] ** exp)
        return result.coeffs

    def filtration_monomials(self, d):
        red = self._reducer(d)
        return list(red.complement)

    def filtration_dim(self, d):
        n2 = self.nvars
        return binom(d + n2, n2) - binom(d - self.N + n2, n2)


# ---------------------------------------------------------------------------
# group specification grammar: Ga@p=2, Gm@p=3, GL:2@p=5, SL:3@p=2, U:2@p=3, M:2@p=5

_SPEC_RE = re.compile(r"^\s*(Ga|Gm|GL|SL|U|M)(?::(\d+))?\s*@\s*p\s*=\s*(\d+)\s*$")

_KINDS = {"Ga": Ga, "Gm": Gm, "GL": GL, "SL": SL, "U": Unitriangular, "M": MatMonoid}

_group_cache: dict[str, Group] = {}


def group_from_spec(spec: str) -> Group:
    m = _SPEC_RE.match(spec)
    if not m:
        raise GroupSpecError(
            f"bad group spec {spec!r}; expected e.g. Ga@p=2, GL:2@p=5, U:3@p=3")
    kind, n_str, p_str = m.groups()
    p = int(p_str)
    if not is_prime(p):
        raise GroupSpecError(f"p={p} is not prime in spec {spec!r}")
    if kind in ("Ga", "Gm"):
        if n_str is not None:
            raise GroupSpecError(f"{kind} takes no size parameter (got {spec!r})")
        key = f"{kind}@p={p}"
        if key not in _group_cache:
            _group_cache[key] = _KINDS[kind](p)
        return _group_cache[key]
    if n_str is None:
        raise GroupSpecError(f"{kind} needs a size, e.g. {kind}:2@p={p}")
    n = int(n_str)
    if n < 1:
        raise GroupSpecError(f"N must be >= 1 in {spec!r}")
    key = f"{kind}:{n}@p={p}"
    if key not in _group_cache:
        _group_cache[key] = _KINDS[kind](p, n)
    return _group_cache[key]


# ---------------------------------------------------------------------------
# truncated exponential degree bound

def truncated_exponential_degree(N: int, p: int) -> int:
    """Max t-degree over the entries of I + tY + ... + t^{p-1} Y^{p-1}/(p-1)!
    for a generic N x N matrix Y over F_p.  Division by k! is exact mod p."""
    check_prime(p)
    mat = MatMonoid(p, N)
    # entries of Y^k as elements of O(M); start with Y^0 = I
    power = [[mat.one() if i == j else mat.zero() for j in range(N)] for i in range(N)]
    Y = [[mat.element({mat.gen_mono(i, j): 1}) for j in range(N)] for i in range(N)]
    max_tdeg = 0
    fact = 1
    for k in range(1, p):
        nxt = [[mat.zero() for _ in range(N)] for _ in range(N)]
        for i in range(N):
            for j in range(N):
                s = mat.zero()
                for ell in range(N):
                    s = s + power[i][ell] * Y[ell][j]
                nxt[i][j] = s
        power = nxt
        fact = (fact * k) % p
        coeff = inv_mod(fact, p)
        if any(power[i][j].scale(coeff) for i in range(N) for j in range(N)):
            max_tdeg = k
    return max_tdeg
