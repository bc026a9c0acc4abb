"""Comodule constructors, streams, and the module-expression language."""

import pytest

from comodfilt.comodules import (Comodule, ModuleExprError, StreamModule,
                                 build_module, detpow, direct_sum, dual,
                                 frobenius_twist, natural, parse_module_expr,
                                 polyaffine, primitives, regular,
                                 regular_stream, sym_power, tensor,
                                 translationinvariants, trivial, twiststream)
from comodfilt.coordalg import UnsupportedOperation, group_from_spec

GA2 = group_from_spec("Ga@p=2")
GM3 = group_from_spec("Gm@p=3")
GL2 = group_from_spec("GL:2@p=2")
SL2 = group_from_spec("SL:2@p=3")


# ---------------------------------------------------------------------------
# constructors

def test_trivial_and_natural():
    t = trivial(GA2)
    assert t.dim == 1 and t.coefficient(0, 0) == GA2.one()
    nat = natural(GL2)
    assert nat.dim == 2
    assert nat.coefficient(0, 1) == GL2.element({GL2.gen_mono(0, 1): 1})
    assert nat.validate().ok
    with pytest.raises(UnsupportedOperation):
        natural(GA2)


def test_natural_unitriangular():
    g = group_from_spec("U:3@p=2")
    nat = natural(g)
    assert nat.dim == 3
    assert nat.coefficient(1, 1) == g.one()
    assert nat.coefficient(2, 0) == g.zero()
    assert nat.coefficient(0, 2) == g.element({g.gen_mono(0, 2): 1})
    assert nat.validate().ok


def test_detpow():
    pos = detpow(GL2, 2)
    neg = detpow(GL2, -1)
    assert pos.dim == neg.dim == 1
    assert neg.coefficient(0, 0) == GL2.element({GL2.detinv_mono(): 1})
    assert pos.validate().ok and neg.validate().ok
    with pytest.raises(UnsupportedOperation):
        detpow(SL2, 1)


def test_regular_truncations():
    for g, n, want in [(GA2, 3, 4), (GM3, 2, 5), (GL2, 1, 5), (SL2, 1, 5)]:
        m = regular(g, n)
        assert m.dim == want == g.filtration_dim(n)
        assert m.validate().ok
    with pytest.raises(ValueError):
        regular(GA2, -1)


def test_tensor_sum_dims_and_validity():
    a, b = regular(GM3, 1), regular(GM3, 2)
    t = tensor(a, b)
    s = direct_sum(a, b)
    assert t.dim == a.dim * b.dim and s.dim == a.dim + b.dim
    assert t.validate().ok and s.validate().ok
    with pytest.raises(ValueError):
        tensor(a, regular(GA2, 1))


def test_dual_and_double_dual():
    v = dual(regular(GA2, 2))
    assert v.dim == 3 and v.validate().ok
    assert dual(dual(v)).coeffs == v.coeffs  # sigma is an involution
    with pytest.raises(UnsupportedOperation):
        dual(natural(group_from_spec("M:2@p=5")))


def test_frobenius_twist():
    m = regular(GA2, 1)
    tw = frobenius_twist(m, 1)
    # Delta(t) = t (x) 1 + 1 (x) t becomes t (x) 1 + 1 (x) t^2
    assert tw.coefficient(0, 1) == GA2.element({2: 1})
    assert tw.coefficient(1, 1) == GA2.one()
    assert tw.validate().ok
    assert frobenius_twist(m, 0) is m
    tw_gl = frobenius_twist(natural(GL2), 1)
    assert tw_gl.coefficient(0, 0) == GL2.element({(GL2.mat.gen_mono(0, 0), 0): 1}) ** 2
    assert tw_gl.validate().ok


def test_sym_power():
    s2 = sym_power(2, natural(GL2))
    assert s2.dim == 3 and s2.validate().ok
    s3 = sym_power(3, natural(SL2))
    assert s3.dim == 4 and s3.validate().ok
    assert sym_power(0, natural(GL2)).dim == 1


def test_validate_reports_failures():
    g = GA2
    broken = Comodule(g, ["a", "b"], [{0: g.one()},
                                      {1: g.one(), 0: g.element({3: 1})}])
    report = broken.validate()
    assert not report.ok and "coassociativity" in report.failures[0]
    broken2 = Comodule(g, ["a"], [{0: g.element({1: 1})}])
    assert "counit" in broken2.validate().failures[0]


# ---------------------------------------------------------------------------
# streams

def test_polyaffine_generations():
    from math import comb
    st = polyaffine(GA2, 2)
    for n in range(4):
        gen = st.generate(n)
        assert gen.dim == comb(2 + n, 2)
        assert gen.validate().ok
    assert st.sufficiency(7) == 7
    assert st.generate(2) is st.generate(2)  # memoized


def test_primitives_generations():
    st = primitives(GA2)
    g1 = st.generate(2)
    assert g1.basis_labels == ["1", "t^2", "t^4"]
    assert g1.validate().ok
    assert [st.sufficiency(d) for d in [1, 2, 3, 4, 8]] == [0, 1, 1, 2, 3]


def test_translationinvariants_generations():
    st = translationinvariants(GA2)
    gen = st.generate(2)
    assert gen.dim == 3 and gen.validate().ok
    # u = t^2 - t is primitive: Delta(u) = u (x) 1 + 1 (x) u
    assert gen.coefficient(0, 1) == GA2.element({2: 1, 1: -1})
    assert st.sufficiency(7) == 3


def test_twiststream_generations():
    st = twiststream(GL2, 1)
    assert st.generate(0).dim == 2          # natural, multiplicity p^0
    assert st.generate(1).dim == 2 + 4      # plus twisted natural, multiplicity p
    assert st.generate(2).dim == 2 + 4 + 8
    assert st.generate(1).validate().ok
    with pytest.raises(UnsupportedOperation):
        twiststream(SL2, 1)


def test_stream_generations_are_nested():
    for st in [polyaffine(GA2, 1), primitives(GA2),
               translationinvariants(GA2), regular_stream(GM3)]:
        small, big = st.generate(2), st.generate(3)
        for (j, i), f in small.coeffs.items():
            assert big.coefficient(j, i) == f


# ---------------------------------------------------------------------------
# the expression language

def test_parse_module_expr():
    assert parse_module_expr("triv") == ("triv",)
    assert parse_module_expr("detpow(-2)") == ("detpow", -2)
    assert parse_module_expr(" tensor( natural , sum(triv, regular(3)) ) ") == \
        ("tensor", ("natural",), ("sum", ("triv",), ("regular", 3)))
    assert parse_module_expr("twist(1,sym(2,natural))") == \
        ("twist", 1, ("sym", 2, ("natural",)))


def test_parse_errors_carry_offsets():
    with pytest.raises(ModuleExprError) as e:
        parse_module_expr("tensor(natural,spam)")
    assert e.value.offset == 15 and "unknown constructor" in str(e.value)
    with pytest.raises(ModuleExprError) as e:
        parse_module_expr("sum(triv triv)")
    assert e.value.offset == 9
    with pytest.raises(ModuleExprError) as e:
        parse_module_expr("regular(2) junk")
    assert "trailing input" in str(e.value)
    with pytest.raises(ModuleExprError):
        parse_module_expr("regular(two)")
    with pytest.raises(ModuleExprError) as e:
        parse_module_expr("triv + triv")
    assert "unexpected character" in str(e.value)


def test_build_module_from_text():
    m = build_module("tensor(natural,detpow(-1))", GL2)
    assert isinstance(m, Comodule) and m.dim == 2 and m.validate().ok
    st = build_module("polyaffine(3)", GA2)
    assert isinstance(st, StreamModule)
    # deterministic: same text, same group, same coaction
    again = build_module("tensor(natural,detpow(-1))", GL2)
    assert again.coeffs == m.coeffs and again.basis_labels == m.basis_labels


def test_build_module_compatibility_errors():
    with pytest.raises(ModuleExprError):
        build_module("natural", GA2)
    with pytest.raises(ModuleExprError):
        build_module("detpow(1)", SL2)
    with pytest.raises(ModuleExprError):
        build_module("primitives", GL2)
    # streams cannot be fed to finite combinators
    for text in ["dual(primitives)", "tensor(triv,polyaffine(1))",
                 "sym(2,translationinvariants)"]:
        with pytest.raises(ModuleExprError):
            build_module(text, GA2)
