"""Finite-dimensional comodules, the module-expression language, and streams.

A Comodule stores a coaction Delta(m_i) = sum_j m_j (x) f_{ji} as a sparse
dict of coordinate-algebra elements.  The expression language builds the
catalog modules (trivial, natural, determinant powers, regular truncations)
and combines them by tensor, sum, dual, Frobenius twist, and symmetric
powers.  Stream constructors produce nested finite truncations of infinite
comodules together with a sufficiency bound n(d) guaranteeing that the
filtration at level d is already computed correctly at generation n(d).
"""

from __future__ import annotations

import itertools
import re

from .coordalg import (GL, SL, Element, Ga, Gm, Group, MatMonoid, TensorElement,
                       Unitriangular, UnsupportedOperation, binom)


class ModuleExprError(ValueError):
    """Parse or compatibility error in a module expression, with byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def tensor_pair(g: Group, a: Element, b: Element) -> TensorElement:
    """a (x) b as a TensorElement, without multiplying the legs."""
    return TensorElement(g, {(ma, mb): ca * cb
                             for ma, ca in a.coeffs.items()
                             for mb, cb in b.coeffs.items()})


def frobenius_element(f: Element, r: int) -> Element:
    """f^(p^r) for f in a commutative algebra over F_p: monomialwise power."""
    g = f.group
    if r == 0:
        return f
    q = g.p ** r
    acc: dict = {}
    for m, c in f.coeffs.items():
        # c^q = c in F_p; the monomial power may need normal-form reduction
        if isinstance(g, GL):
            raw = {(tuple(e * q for e in m[0]), m[1] * q): 1}
            red = g.reduce_dict(raw)
        elif isinstance(g, SL):
            red = g.reduce_dict({tuple(e * q for e in m): 1})
        elif isinstance(g, (MatMonoid, Unitriangular)):
            red = {tuple(e * q for e in m): 1}
        else:  # Ga, Gm: integer exponent
            red = {m * q: 1}
        for m2, c2 in red.items():
            acc[m2] = acc.get(m2, 0) + c * c2
    return Element(g, acc)


class ValidationReport:
    """Outcome of the comodule axiom checks."""

    def __init__(self, ok: bool, failures: list[str]):
        self.ok = ok
        self.failures = failures

    def __repr__(self):
        return "valid" if self.ok else f"invalid: {self.failures[0]}"


class Comodule:
    """Right O(G)-comodule: Delta(m_i) = sum_j m_j (x) coefficient(j, i)."""

    def __init__(self, group: Group, basis_labels, coaction):
        self.group = group
        self.basis_labels = list(basis_labels)
        # coaction: per column i, a dict {j: Element} (or list of pairs)
        self.coeffs: dict = {}
        for i, entries in enumerate(coaction):
            items = entries.items() if isinstance(entries, dict) else entries
            for j, el in items:
                if el:
                    cur = self.coeffs.get((j, i))
                    self.coeffs[(j, i)] = el if cur is None else cur + el
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def coefficient(self, j: int, i: int) -> Element:
        return self.coeffs.get((j, i), self.group.zero())

    def column(self, i: int) -> dict:
        return {j: f for (j, i2), f in self.coeffs.items() if i2 == i}

    def support_monomials(self) -> list:
        monos = {m for f in self.coeffs.values() for m in f.coeffs}
        return sorted(monos, key=self.group.mono_key)

    def __eq__(self, other):
        return (isinstance(other, Comodule) and self.group == other.group
                and self.basis_labels == other.basis_labels
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"Comodule({self.group.spec()}, dim={self.dim})"

    def validate(self) -> ValidationReport:
        """Check the counit and coassociativity axioms; report first failures."""
        g = self.group
        failures = []
        for i in range(self.dim):
            for j in range(self.dim):
                want = 1 if i == j else 0
                if g.counit(self.coefficient(j, i)) != want:
                    failures.append(f"counit axiom at basis index {i} "
                                    f"(epsilon(f[{j},{i}]) != {want})")
                    break
            if failures:
                break
        for i in range(self.dim):
            col = self.column(i)
            for ell in range(self.dim):
                lhs = TensorElement(g, {})
                for j, fji in col.items():
                    felj = self.coefficient(ell, j)
                    if felj:
                        lhs = lhs + TensorElement(
                            g, {(ma, mb): ca * cb
                                for ma, ca in felj.coeffs.items()
                                for mb, cb in fji.coeffs.items()})
                rhs = g.coproduct(self.coefficient(ell, i))
                if lhs != rhs:
                    failures.append(f"coassociativity at basis index {i} (row {ell})")
                    break
            if failures and "coassoc" in failures[-1]:
                break
        return ValidationReport(not failures, failures)


# ---------------------------------------------------------------------------
# constructors

def trivial(g: Group) -> Comodule:
    return Comodule(g, ["1"], [{0: g.one()}])


def natural(g: Group) -> Comodule:
    """The defining N-dimensional representation of GL/SL/M/U."""
    if not isinstance(g, (GL, SL, MatMonoid, Unitriangular)):
        raise UnsupportedOperation(f"natural is not defined over {g.spec()}")
    N = g.N
    labels = [f"e{j + 1}" for j in range(N)]
    coaction = []
    for j in range(N):
        col: dict = {}
        if isinstance(g, Unitriangular):
            col[j] = g.one()
            for i in range(j):
                col[i] = g.element({g.gen_mono(i, j): 1})
        else:
            for i in range(N):
                col[i] = g.element({g.gen_mono(i, j): 1})
        coaction.append(col)
    return Comodule(g, labels, coaction)


def detpow(g: Group, s: int) -> Comodule:
    """One-dimensional determinant-power module over GL(N)."""
    if not isinstance(g, GL):
        raise UnsupportedOperation(f"detpow is not defined over {g.spec()}")
    if s >= 0:
        f = g.det_element() ** s
    else:
        f = g.element({((0,) * g.nvars, -s): 1})
    return Comodule(g, [f"det^{s}"], [{0: f}])


def regular(g: Group, n: int) -> Comodule:
    """The right regular comodule truncated to O(G)_{<=n}, coaction Delta."""
    if n < 0:
        raise ValueError("regular truncation level must be >= 0")
    basis = g.filtration_basis(n)
    index = {m: i for i, m in enumerate(basis)}
    coaction = []
    for m in basis:
        col: dict = {}
        for (a, b), c in g.coproduct_mono(m).items():
            if a not in index:
                raise AssertionError(
                    f"filtration level {n} of {g.spec()} is not a sub-coalgebra "
                    f"(left leg {g.mono_str(a)} escapes)")
            j = index[a]
            col[j] = col.get(j, g.zero()) + g.element({b: c})
        coaction.append(col)
    return Comodule(g, [g.mono_str(m) for m in basis], coaction)


def tensor(m: Comodule, n: Comodule) -> Comodule:
    if m.group != n.group:
        raise ValueError("tensor factors live over different groups")
    g = m.group
    labels = [f"{a}*{b}" for a in m.basis_labels for b in n.basis_labels]
    coaction = []
    for i1 in range(m.dim):
        col1 = m.column(i1)
        for i2 in range(n.dim):
            col2 = n.column(i2)
            col: dict = {}
            for j1, f1 in col1.items():
                for j2, f2 in col2.items():
                    j = j1 * n.dim + j2
                    prod = f1 * f2
                    if prod:
                        col[j] = col.get(j, g.zero()) + prod
            coaction.append(col)
    return Comodule(g, labels, coaction)


def direct_sum(m: Comodule, n: Comodule) -> Comodule:
    if m.group != n.group:
        raise ValueError("summands live over different groups")
    g = m.group
    labels = m.basis_labels + n.basis_labels
    coaction = [dict(m.column(i)) for i in range(m.dim)]
    for i in range(n.dim):
        coaction.append({j + m.dim: f for j, f in n.column(i).items()})
    return Comodule(g, labels, coaction)


def dual(m: Comodule) -> Comodule:
    """Dual comodule: Delta(m^i) = sum_j m^j (x) antipode(f_{ij})."""
    g = m.group
    labels = [f"{a}^*" for a in m.basis_labels]
    coaction = []
    for i in range(m.dim):
        col: dict = {}
        for j in range(m.dim):
            f = m.coefficient(i, j)
            if f:
                col[j] = g.antipode(f)
        coaction.append(col)
    return Comodule(g, labels, coaction)


def frobenius_twist(m: Comodule, r: int) -> Comodule:
    """Raise every coaction coefficient to the p^r power."""
    if r < 0:
        raise ValueError("twist order must be >= 0")
    if r == 0:
        return m
    g = m.group
    labels = [f"{a}({r})" for a in m.basis_labels]
    coaction = [{j: frobenius_element(f, r) for j, f in m.column(i).items()}
                for i in range(m.dim)]
    return Comodule(g, labels, coaction)


def sym_power(n: int, m: Comodule) -> Comodule:
    """Quotient symmetric power S^n(M): basis = degree-n monomials in the basis."""
    if n < 0:
        raise ValueError("symmetric power must be >= 0")
    g = m.group
    combos = list(itertools.combinations_with_replacement(range(m.dim), n))
    index = {c: i for i, c in enumerate(combos)}
    labels = ["*".join(m.basis_labels[i] for i in c) if c else "1" for c in combos]
    coaction = []
    for combo in combos:
        # expand prod_k (sum_j m_j (x) f_{j, combo_k}) and collect by multiset
        acc: dict = {(): g.one()}
        for i in combo:
            col = m.column(i)
            nxt: dict = {}
            for part, f in acc.items():
                for j, fji in col.items():
                    key = tuple(sorted(part + (j,)))
                    prod = f * fji
                    if prod:
                        nxt[key] = nxt.get(key, g.zero()) + prod
            acc = {k: v for k, v in nxt.items() if v}
        coaction.append({index[part]: f for part, f in acc.items()})
    return Comodule(g, labels, coaction)


# ---------------------------------------------------------------------------
# streams

class StreamModule:
    """Nested truncations M(0) <= M(1) <= ... with a filtration sufficiency bound."""

    def __init__(self, group: Group, name: str, generate_fn, sufficiency_fn):
        self.group = group
        self.name = name
        self._generate = generate_fn
        self._sufficiency = sufficiency_fn
        self._cache: dict[int, Comodule] = {}

    def generate(self, n: int) -> Comodule:
        if n < 0:
            raise ValueError("generation index must be >= 0")
        if n not in self._cache:
            self._cache[n] = self._generate(n)
        return self._cache[n]

    def sufficiency(self, d: int) -> int:
        """Smallest generation whose filtration at level d is already exact."""
        return self._sufficiency(d)

    def __repr__(self):
        return f"StreamModule({self.name} over {self.group.spec()})"


def _log_floor(base: int, d: int) -> int:
    r = 0
    while base ** (r + 1) <= d:
        r += 1
    return r


def polyaffine(g: Group, m: int) -> StreamModule:
    """Functions on affine m-space with Ga translating every coordinate."""
    if not isinstance(g, Ga):
        raise UnsupportedOperation("polyaffine is only defined over Ga")
    if m < 1:
        raise ValueError("polyaffine needs at least one coordinate")

    def gen(n: int) -> Comodule:
        basis = [e for deg in range(n + 1)
                 for e in _exp_tuples_upto(m, deg)]
        index = {e: i for i, e in enumerate(basis)}
        labels = [_poly_label(e) for e in basis]
        coaction = []
        for alpha in basis:
            col: dict = {}
            for beta in itertools.product(*[range(a + 1) for a in alpha]):
                c = 1
                for a, b in zip(alpha, beta):
                    c = c * binom(a, b) % g.p
                if not c:
                    continue
                j = index[tuple(beta)]
                t_exp = sum(alpha) - sum(beta)
                col[j] = col.get(j, g.zero()) + g.element({t_exp: c})
            coaction.append(col)
        return Comodule(g, labels, coaction)

    return StreamModule(g, f"polyaffine({m})", gen, lambda d: d)


def _exp_tuples_upto(nvars: int, total: int):
    if nvars == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exp_tuples_upto(nvars - 1, total - first):
            yield (first,) + rest


def _poly_label(e) -> str:
    parts = [f"x{i + 1}^{a}" if a > 1 else f"x{i + 1}" for i, a in enumerate(e) if a]
    return "*".join(parts) if parts else "1"


def primitives(g: Group) -> StreamModule:
    """The span of 1 and the higher primitives t^(p^i), i >= 1, inside k[t].

    The subspace of primitive elements alone is not closed under the
    coaction (Delta(t^(p^i)) has the leg 1 (x) t^(p^i)); adjoining the unit
    gives the smallest subcomodule containing them, whose filtration
    dimensions are exactly floor(log_p d) + 1 for d >= 1.
    """
    if not isinstance(g, Ga):
        raise UnsupportedOperation("primitives is only defined over Ga")

    def gen(n: int) -> Comodule:
        labels = ["1"] + [f"t^{g.p ** i}" for i in range(1, n + 1)]
        coaction = [{0: g.one()}]
        for i in range(1, n + 1):
            coaction.append({i: g.one(), 0: g.element({g.p ** i: 1})})
        return Comodule(g, labels, coaction)

    return StreamModule(g, "primitives", gen, lambda d: _log_floor(g.p, max(d, 1)))


def translationinvariants(g: Group) -> StreamModule:
    """The translation-invariant functions k[u], u = t^p - t, inside k[t]."""
    if not isinstance(g, Ga):
        raise UnsupportedOperation("translationinvariants is only defined over Ga")
    u = g.element({g.p: 1, 1: -1})

    def gen(n: int) -> Comodule:
        labels = [f"u^{j}" if j else "1" for j in range(n + 1)]
        upow = [g.one()]
        for _ in range(n):
            upow.append(upow[-1] * u)
        coaction = []
        for j in range(n + 1):
            # u is primitive, so Delta(u^j) = sum_i C(j,i) u^i (x) u^(j-i)
            col: dict = {}
            for i in range(j + 1):
                c = binom(j, i) % g.p
                if c:
                    col[i] = upow[j - i].scale(c)
            coaction.append(col)
        return Comodule(g, labels, coaction)

    return StreamModule(g, "translationinvariants", gen, lambda d: d // g.p)


def twiststream(g: Group, e: int) -> StreamModule:
    """sum_r (natural twisted r times)^(p^(r^e)) over GL(N)."""
    if not isinstance(g, GL):
        raise UnsupportedOperation("twiststream is only defined over GL")
    if e < 1:
        raise ValueError("twiststream exponent must be >= 1")
    nat = natural(g)

    def gen(n: int) -> Comodule:
        total = None
        for r in range(n + 1):
            block = frobenius_twist(nat, r)
            for _ in range(g.p ** (r ** e)):
                total = block if total is None else direct_sum(total, block)
        return total

    return StreamModule(g, f"twiststream({e})", gen, lambda d: _log_floor(g.p, max(d, 1)))


def regular_stream(g: Group) -> StreamModule:
    """The full right regular comodule as a stream of filtration truncations."""
    return StreamModule(g, "regular", lambda n: regular(g, n), lambda d: d)


# ---------------------------------------------------------------------------
# the module-expression language

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[a-z]+)|(?P<int>-?\d+)|(?P<sym>[(),]))")

_ARITIES = {
    "triv": (), "natural": (), "primitives": (), "translationinvariants": (),
    "detpow": ("int",), "regular": ("int",), "polyaffine": ("int",),
    "twiststream": ("int",),
    "dual": ("expr",), "twist": ("int", "expr"), "sym": ("int", "expr"),
    "tensor": ("expr", "expr"), "sum": ("expr", "expr"),
}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            off = len(text) - len(stripped)
            raise ModuleExprError(f"unexpected character {stripped[0]!r}", off)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_module_expr(text: str):
    """Parse a module expression into a nested tuple AST."""
    tokens = _tokenize(text)
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None, len(text))

    def expect(kind, what):
        nonlocal idx
        tk, val, off = peek()
        if tk != kind:
            raise ModuleExprError(f"expected {what}, found {val!r}" if tk
                                  else f"expected {what}, found end of input", off)
        idx += 1
        return val, off

    def expr():
        nonlocal idx
        name, off = expect("name", "a constructor name")
        if name not in _ARITIES:
            raise ModuleExprError(f"unknown constructor {name!r}", off)
        arity = _ARITIES[name]
        args = []
        if arity:
            expect("sym", "'('")
            for k, want in enumerate(arity):
                if k:
                    tk, val, off2 = peek()
                    if (tk, val) != ("sym", ","):
                        raise ModuleExprError("expected ','", off2)
                    idx += 1
                if want == "int":
                    val, _ = expect("int", "an integer")
                    args.append(int(val))
                else:
                    args.append(expr())
            tk, val, off2 = peek()
            if (tk, val) != ("sym", ")"):
                raise ModuleExprError("expected ')'", off2)
            idx += 1
        return (name, *args)

    tree = expr()
    tk, val, off = peek()
    if tk is not None:
        raise ModuleExprError(f"trailing input {val!r}", off)
    return tree


def build_module(expr, g: Group):
    """Build a Comodule or StreamModule from an expression text or AST."""
    if isinstance(expr, str):
        expr = parse_module_expr(expr)
    head, *args = expr
    try:
        if head == "triv":
            return trivial(g)
        if head == "natural":
            return natural(g)
        if head == "detpow":
            return detpow(g, args[0])
        if head == "regular":
            return regular(g, args[0])
        if head == "polyaffine":
            return polyaffine(g, args[0])
        if head == "primitives":
            return primitives(g)
        if head == "translationinvariants":
            return translationinvariants(g)
        if head == "twiststream":
            return twiststream(g, args[0])
        if head == "dual":
            return dual(_finite(build_module(args[0], g), head))
        if head == "twist":
            return frobenius_twist(_finite(build_module(args[1], g), head), args[0])
        if head == "sym":
            return sym_power(args[0], _finite(build_module(args[1], g), head))
        if head == "tensor":
            return tensor(_finite(build_module(args[0], g), head),
                          _finite(build_module(args[1], g), head))
        if head == "sum":
            return direct_sum(_finite(build_module(args[0], g), head),
                              _finite(build_module(args[1], g), head))
    except UnsupportedOperation as exc:
        raise ModuleExprError(str(exc), 0) from exc
    raise ModuleExprError(f"unknown constructor {head!r}", 0)


def _finite(m, ctor: str) -> Comodule:
    if isinstance(m, StreamModule):
        raise ModuleExprError(f"{ctor} cannot be applied to a stream module", 0)
    return m
