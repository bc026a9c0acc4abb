"""Coordinate Hopf algebras: normal forms, structure maps, and Hopf axioms."""

import random
from math import comb

import pytest

from comodfilt.coordalg import (Element, GroupSpecError, UnsupportedOperation,
                                group_from_spec, truncated_exponential_degree)

# (spec, max monomial degree for the random axiom sweeps, antipode degree cap)
# The antipode cap is lower for the 3x3 general-linear groups: sigma multiplies
# degrees by up to 2N-1, and reducing the resulting degree-9 polynomials in 9
# variables would materialize gigabyte-sized normal-form matrices.
SWEEP_GROUPS = [
    ("Ga@p=2", 6, 6), ("Ga@p=5", 6, 6), ("Gm@p=3", 6, 6),
    ("U:2@p=2", 5, 5), ("U:3@p=3", 4, 4),
    ("M:2@p=5", 4, 0), ("M:3@p=2", 3, 0),
    ("SL:2@p=3", 4, 4), ("SL:3@p=2", 3, 2),
    ("GL:2@p=2", 4, 4), ("GL:3@p=2", 3, 2),
]


def random_monomial(rng, g, dmax):
    return rng.choice(g.filtration_basis(rng.randrange(dmax + 1)))


# ---------------------------------------------------------------------------
# group spec grammar

def test_group_from_spec_grammar():
    assert group_from_spec("Ga@p=2").spec() == "Ga@p=2"
    assert group_from_spec(" GL:2 @ p = 5 ").spec() == "GL:2@p=5"
    assert group_from_spec("Gm@p=3") is group_from_spec("Gm@p=3")  # cached
    for bad in ["Ga@p=4", "GL@p=5", "Ga:2@p=3", "SO:3@p=2", "GL:0@p=2", "Ga"]:
        with pytest.raises(GroupSpecError):
            group_from_spec(bad)


# ---------------------------------------------------------------------------
# filtration dimensions: closed formulas against basis enumeration

def test_filtration_dims_small_groups():
    ga, gm = group_from_spec("Ga@p=2"), group_from_spec("Gm@p=3")
    for d in range(8):
        assert ga.filtration_dim(d) == d + 1 == len(ga.filtration_basis(d))
        assert gm.filtration_dim(d) == 2 * d + 1 == len(gm.filtration_basis(d))
    u3 = group_from_spec("U:3@p=2")
    m2 = group_from_spec("M:2@p=5")
    for d in range(5):
        assert u3.filtration_dim(d) == comb(d + 3, 3) == len(u3.filtration_basis(d))
        assert m2.filtration_dim(d) == comb(d + 4, 4) == len(m2.filtration_basis(d))


def test_filtration_dims_gl_sl():
    gl2 = group_from_spec("GL:2@p=2")
    sl2 = group_from_spec("SL:2@p=3")
    assert gl2.filtration_dim(2) == 16
    assert gl2.filtration_dim(3) == 40
    assert sl2.filtration_dim(3) == 30
    for d in range(5):
        assert gl2.filtration_dim(d) == len(gl2.filtration_basis(d))
        assert sl2.filtration_dim(d) == len(sl2.filtration_basis(d))
    # filtration degree counts det-inverse powers with weight N
    assert gl2.degree(gl2.detinv_mono()) == 2


def test_filtration_basis_is_nested():
    for spec in ["Gm@p=3", "GL:2@p=2", "SL:2@p=3"]:
        g = group_from_spec(spec)
        for d in range(4):
            smaller = set(g.filtration_basis(d))
            assert smaller <= set(g.filtration_basis(d + 1))


# ---------------------------------------------------------------------------
# structure-map spot checks

def test_ga_coproduct_binomials():
    g = group_from_spec("Ga@p=2")
    # t^2 is primitive in characteristic 2
    assert g.coproduct_mono(2) == {(2, 0): 1, (0, 2): 1}
    g5 = group_from_spec("Ga@p=5")
    assert g5.coproduct_mono(2) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert g.antipode(g.element({1: 1})) == g.element({1: -1})


def test_gm_grouplike():
    g = group_from_spec("Gm@p=3")
    assert g.coproduct_mono(4) == {(4, 4): 1}
    assert g.antipode(g.element({2: 1})) == g.element({-2: 1})
    assert g.counit(g.element({5: 1})) == 1


def test_matrix_coproduct_generator():
    g = group_from_spec("M:2@p=5")
    x = g.gen_mono
    assert g.coproduct_mono(x(0, 1)) == {(x(0, 0), x(0, 1)): 1,
                                         (x(0, 1), x(1, 1)): 1}
    with pytest.raises(UnsupportedOperation):
        g.antipode(g.one())


def test_unitriangular_coproduct_and_antipode():
    g = group_from_spec("U:3@p=2")
    x = g.gen_mono
    assert g.coproduct_mono(x(0, 2)) == {(x(0, 2), g.one_mono()): 1,
                                         (g.one_mono(), x(0, 2)): 1,
                                         (x(0, 1), x(1, 2)): 1}
    # sigma(x13) = -x13 + x12*x23
    sig = g.antipode(g.element({x(0, 2): 1}))
    prod = tuple(a + b for a, b in zip(x(0, 1), x(1, 2)))
    assert sig == g.element({x(0, 2): -1, prod: 1})


def test_gl_det_inverse_cancels():
    g = group_from_spec("GL:2@p=5")
    det = g.det_element()
    detinv = g.element({g.detinv_mono(): 1})
    assert det * detinv == g.one()
    assert (det * det) * (detinv * detinv) == g.one()
    # sigma(x11) = x22 * det^-1
    sig = g.antipode(g.element({g.gen_mono(0, 0): 1}))
    assert sig == g.element({(g.mat.gen_mono(1, 1), 1): 1})


def test_sl_det_is_one():
    g = group_from_spec("SL:2@p=3")
    x = g.gen_mono
    det = (g.element({x(0, 0): 1}) * g.element({x(1, 1): 1})
           - g.element({x(0, 1): 1}) * g.element({x(1, 0): 1}))
    assert det == g.one()


# ---------------------------------------------------------------------------
# Hopf-algebra axioms on seeded random monomials

def coassoc_sides(g, mono):
    left, right = {}, {}
    for (a, b), c in g.coproduct_mono(mono).items():
        for (a1, a2), c1 in g.coproduct_mono(a).items():
            key = (a1, a2, b)
            left[key] = (left.get(key, 0) + c * c1) % g.p
        for (b1, b2), c2 in g.coproduct_mono(b).items():
            key = (a, b1, b2)
            right[key] = (right.get(key, 0) + c * c2) % g.p
    return ({k: v for k, v in left.items() if v},
            {k: v for k, v in right.items() if v})


def counit_collapse(g, mono):
    acc = {}
    for (a, b), c in g.coproduct_mono(mono).items():
        c = c * g.counit_mono(a)
        if c % g.p:
            acc[b] = (acc.get(b, 0) + c) % g.p
    return Element(g, acc)


def antipode_collapse(g, mono):
    acc = g.zero()
    for (a, b), c in g.coproduct_mono(mono).items():
        acc = acc + (g.antipode(g.element({a: c})) * g.element({b: 1}))
    return acc


@pytest.mark.parametrize("spec,dmax,sigma_dmax", SWEEP_GROUPS)
def test_hopf_axioms_random_sweep(spec, dmax, sigma_dmax):
    g = group_from_spec(spec)
    rng = random.Random(sum(map(ord, spec)))
    for _ in range(200):
        m = random_monomial(rng, g, dmax)
        assert counit_collapse(g, m) == g.element({m: 1})
        lhs, rhs = coassoc_sides(g, m)
        assert lhs == rhs
        if g.has_antipode and g.degree(m) <= sigma_dmax:
            want = g.one().scale(g.counit_mono(m))
            assert antipode_collapse(g, m) == want


@pytest.mark.parametrize("spec,dmax,sigma_dmax", SWEEP_GROUPS)
def test_product_degree_additivity(spec, dmax, sigma_dmax):
    g = group_from_spec(spec)
    rng = random.Random(1 + sum(map(ord, spec)))
    for _ in range(60):
        m1 = random_monomial(rng, g, dmax)
        m2 = random_monomial(rng, g, dmax)
        prod = g.element({m1: 1}) * g.element({m2: 1})
        if prod:
            assert prod.degree() <= g.degree(m1) + g.degree(m2)


def test_coproduct_is_an_algebra_map():
    rng = random.Random(23)
    for spec in ["Ga@p=3", "GL:2@p=2", "SL:2@p=3", "U:3@p=2"]:
        g = group_from_spec(spec)
        for _ in range(20):
            f1 = g.element({random_monomial(rng, g, 3): rng.randrange(1, g.p)})
            f2 = g.element({random_monomial(rng, g, 3): rng.randrange(1, g.p)})
            assert g.coproduct(f1 * f2) == g.coproduct(f1) * g.coproduct(f2)


def test_truncated_exponential_degree():
    assert truncated_exponential_degree(2, 3) == 2
    assert truncated_exponential_degree(2, 5) == 4
    assert truncated_exponential_degree(3, 5) == 4
