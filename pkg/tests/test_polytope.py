from fractions import Fraction

import pytest

from maxbond.errors import InvalidParameter, SizeCapExceeded
from maxbond.graphs import (
    K33,
    K5_MINUS_E,
    PRISM,
    Cycle,
    Wagner,
    Wheel,
    build_graph,
    fixture,
    generate,
)
from maxbond.polytope import (
    LinearInequality,
    affine_dim,
    bond_vectors,
    check_inequality,
    cn_description,
    contraction_polytope_check,
    cut_vectors,
    cycle_homog,
    cycle_sum,
    edge_upper,
    facet_enumeration,
    gen_cycle_sum,
    minor_free_description,
    switch,
    verify_description,
    wheel_description,
)


def test_normalization():
    a = LinearInequality.make([Fraction(1, 2), Fraction(3, 2)], 1)
    assert a.coeffs == (1, 3) and a.rhs == 2
    b = LinearInequality.make([2, 6], 4)
    assert a.same_as(b)
    with pytest.raises(InvalidParameter):
        LinearInequality.make([0, 0], 1)


def test_vectors_and_dimension():
    g = generate(Cycle(4))
    bv = bond_vectors(g)
    assert len(bv) == 7
    assert len(cut_vectors(g)) == 8
    assert affine_dim(bv) == 4
    assert affine_dim(bond_vectors(generate(PRISM))) == 9


@pytest.mark.parametrize("n,count", [(3, 4), (4, 9), (5, 11), (8, 17)])
def test_cycle_facet_counts(n, count):
    assert len(cn_description(n)) == count
    g = generate(Cycle(n))
    assert len(facet_enumeration(g)) == count
    equal, missing, extra = verify_description(g, cn_description(n))
    assert equal, (missing, extra)


@pytest.mark.parametrize("n,count", [(3, 16), (4, 21), (5, 26)])
def test_wheel_facet_counts(n, count):
    assert len(wheel_description(n)) == count
    equal, missing, extra = verify_description(generate(Wheel(n)),
                                               wheel_description(n))
    assert equal, (missing, extra)


def test_prism_description():
    g = generate(PRISM)
    desc = minor_free_description(g)
    assert len(desc) == 26
    equal, _, _ = verify_description(g, desc)
    assert equal


def test_k5_minus_e_special_facet():
    g = generate(K5_MINUS_E)
    ineq = LinearInequality.make([1, 1, 0, 1, 1, 0, 1, -1, -1], 2)
    rep = check_inequality(g, ineq)
    assert rep.valid and rep.tight and rep.facet_defining
    assert any(f.same_as(ineq) for f in facet_enumeration(g))


def test_check_inequality_reports():
    c6 = generate(Cycle(6))
    rep = check_inequality(c6, gen_cycle_sum(c6, tuple(range(6)), 2))
    assert rep.valid and not rep.tight and not rep.facet_defining
    rep = check_inequality(c6, cycle_sum(c6, tuple(range(6))))
    assert rep.facet_defining and rep.face_dim == 5

    f2e = fixture("fig2g+e")
    rep = check_inequality(f2e, cycle_sum(f2e, tuple(range(6))))
    assert not rep.valid
    bond = rep.violating_bond
    assert bond is not None
    assert sum(1 for e in bond.edge_set
               if e in set(range(6))) > 2


def test_gen_cycle_sum_minimal_k():
    g = generate(K33)
    outer = tuple(range(6))
    assert check_inequality(g, gen_cycle_sum(g, outer, 2)).facet_defining
    assert not check_inequality(g, gen_cycle_sum(g, outer, 1)).valid


def test_cycle_homog_facets():
    g = generate(Cycle(5))
    for e in range(5):
        rep = check_inequality(g, cycle_homog(g, tuple(range(5)), e))
        assert rep.facet_defining


def test_edge_upper_on_wagner():
    g = generate(Wagner(8))
    for e in range(g.edge_count):
        assert check_inequality(g, edge_upper(g, e)).facet_defining


def test_hull_edge_cap():
    g = generate(Wagner(8))  # 12 edges, at the cap
    with pytest.raises(SizeCapExceeded):
        facet_enumeration(fixture("fig2g"))
    assert len(facet_enumeration(g)) > 0


def test_switch_involution():
    g = generate(Cycle(5))
    ineq = cycle_sum(g, tuple(range(5)))
    flipped = switch(g, ineq, [0])
    assert flipped.rhs == 0
    back = switch(g, flipped, [0])
    assert back.coeffs == ineq.coeffs and back.rhs == ineq.rhs
    # switching preserves validity over cuts, not over bonds
    rep = check_inequality(g, flipped)
    assert not rep.valid and rep.violating_bond is not None


def test_contraction_slice():
    for tag in (Cycle(5), Wheel(4)):
        g = generate(tag)
        for e in range(g.edge_count):
            assert contraction_polytope_check(g, e)
    k4 = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert all(contraction_polytope_check(k4, e) for e in range(6))
