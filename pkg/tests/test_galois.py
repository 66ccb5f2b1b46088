from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from quadtors.errors import InvalidArgument, NotFound
from quadtors.galois import (APPENDIX_LABELS, F3_LATTICE, appendix_elements, apply, catalog_names,
                             conjugate, conjugate_in, contains_split_torus_conjugate,
                             cyclic_subgroups, det, fixed_vectors, generate, gl2, index2_subgroups,
                             inv, mat, mul, named_subgroup, quadratic_growth_analysis,
                             sl2_membership, split_torus, vector_stabilizer)

GL_ORDER = {2: 6, 3: 48, 5: 480, 7: 2016}
APPENDIX_ORDERS = {"5B.1.4": 20, "5B.4.1": 40, "7B.1.6": 42, "7B.6.1": 84}


def _ell(label):
    return int(label[0])


def _closed(G):
    s = set(G.elements)
    return all(mul(G.ell, a, b) in s for a in G.elements for b in G.elements)


def _index2_oracle(G):
    """Subgroups of index 2 found by closing every pair of elements."""
    if G.order % 2:
        return []
    half = G.order // 2
    found = set()
    for a, b in combinations_with_replacement(G.elements, 2):
        H = generate(G.ell, [a, b])
        if H.order == half:
            found.add(H.elements)
    return sorted(found)


# --- basic operations -------------------------------------------------------

def test_generate_examples():
    assert generate(2, [[[1, 1], [1, 0]]]).order == 3
    assert named_subgroup(5, "5B.4.1").order == 40
    assert named_subgroup(7, "7B.6.1").order == 84


def test_generate_rejects_singular():
    with pytest.raises(InvalidArgument):
        generate(5, [(1, 2, 2, 4)])
    with pytest.raises(InvalidArgument):
        inv(3, (1, 1, 1, 1))
    with pytest.raises(InvalidArgument):
        generate(11, [(1, 0, 0, 1)])


@st.composite
def gen_sets(draw):
    ell = draw(st.sampled_from([2, 3, 5, 7]))
    entry = st.integers(0, ell - 1)
    m = st.tuples(entry, entry, entry, entry).filter(lambda x: det(ell, x) != 0)
    return ell, draw(st.lists(m, min_size=0, max_size=3))


@given(gen_sets())
def test_generated_groups_are_subgroups(data):
    ell, gens = data
    G = generate(ell, gens)
    assert (1, 0, 0, 1) in G
    assert all(g in G for g in gens)
    assert GL_ORDER[ell] % G.order == 0
    assert all(inv(ell, a) in G for a in G.elements)
    if G.order <= 84:
        assert _closed(G)
    assert list(G.elements) == sorted(set(G.elements))


@given(gen_sets())
def test_fixed_vectors_definition(data):
    ell, gens = data
    G = generate(ell, gens)
    fv = fixed_vectors(G)
    for x in range(ell):
        for y in range(ell):
            if (x, y) == (0, 0):
                continue
            fixed = all(apply(ell, g, (x, y)) == (x, y) for g in gens)
            assert ((x, y) in fv) == fixed


def test_fixed_vectors_examples():
    assert fixed_vectors(named_subgroup(3, "H11")) == {(1, 0), (2, 0)}
    assert fixed_vectors(named_subgroup(3, "B")) == frozenset()
    assert len(fixed_vectors(named_subgroup(3, "id"))) == 8


def test_sl2_membership_examples():
    assert sl2_membership(named_subgroup(3, "C6"))
    assert sl2_membership(named_subgroup(3, "-id"))
    assert not sl2_membership(named_subgroup(3, "B"))


# --- index-2 subgroups ------------------------------------------------------

def test_index2_of_gl2_f2_is_g3():
    G3 = named_subgroup(2, "G3")
    assert index2_subgroups(gl2(2)) == [G3]
    assert index2_subgroups(named_subgroup(2, "G1")) == []


@pytest.mark.parametrize("name", F3_LATTICE)
def test_index2_against_pair_closure(name):
    G = named_subgroup(3, name)
    got = index2_subgroups(G)
    assert [H.elements for H in got] == _index2_oracle(G)
    for H in got:
        assert H.order * 2 == G.order and H.issubset(G) and _closed(H)


@pytest.mark.parametrize("ell", [5, 7])
def test_h3_has_no_growth(ell):
    H3 = named_subgroup(ell, "H3")
    assert H3.order == ell * (ell - 1)
    assert not fixed_vectors(H3)
    subs = index2_subgroups(H3)
    assert subs
    assert all(not fixed_vectors(H) for H in subs)
    assert quadratic_growth_analysis(H3) == []


def test_f2_growth_analysis():
    found = {n: quadratic_growth_analysis(named_subgroup(2, n)) for n in ("G1", "G2", "G3", "G4")}
    assert [n for n, v in found.items() if v] == ["G2"]
    (cand,) = found["G2"]
    assert cand.subgroup == named_subgroup(2, "G1")
    # the trivial subgroup fixes all of E[2]
    assert fixed_vectors(cand.subgroup) == {(0, 1), (1, 0), (1, 1)}


def test_f3_growth_analysis():
    (b,) = quadratic_growth_analysis(named_subgroup(3, "B"))
    assert b.subgroup.order == 6 and not b.in_sl2
    assert conjugate_in(b.subgroup, named_subgroup(3, "H31")) is not None

    cs = quadratic_growth_analysis(named_subgroup(3, "C_s"))
    assert cs
    H11 = named_subgroup(3, "H11")
    assert all(conjugate_in(c.subgroup, H11) is not None for c in cs)

    assert quadratic_growth_analysis(named_subgroup(3, "N_ns")) == []


def test_growth_candidates_gain_vectors():
    for name in F3_LATTICE:
        G = named_subgroup(3, name)
        for c in quadratic_growth_analysis(G):
            assert c.new_fixed and c.new_fixed.isdisjoint(fixed_vectors(G))
            assert c.in_sl2 == sl2_membership(c.subgroup)


# --- catalogue and element listings----------------------------------------------

def test_catalogue_orders():
    assert named_subgroup(3, "C_ns").order == 8
    assert named_subgroup(3, "N_ns").order == 16
    assert len(F3_LATTICE) == 16
    assert all(n in catalog_names(3) for n in F3_LATTICE)


def test_unknown_names():
    with pytest.raises(NotFound):
        named_subgroup(5, "7B.1.6")
    with pytest.raises(NotFound):
        appendix_elements("5B.9.9")
    with pytest.raises(InvalidArgument):
        named_subgroup(5, "nonsplit_cartan", eps=4)


@pytest.mark.parametrize("label", APPENDIX_LABELS)
def test_appendix_matches_generators(label):
    listed = appendix_elements(label)
    assert len(listed) == APPENDIX_ORDERS[label] == len(set(listed))
    G = named_subgroup(_ell(label), label)
    assert set(G.elements) == set(listed)


def test_f3_fixed_point_table():
    with_fixed = {n for n in F3_LATTICE if fixed_vectors(named_subgroup(3, n))}
    assert with_fixed == {"H31", "C3", "H11", "id"}
    for n in ("H31", "C3", "H11"):
        assert fixed_vectors(named_subgroup(3, n)) == {(1, 0), (2, 0)}


@pytest.mark.parametrize("ell,eps,order", [(5, 2, 24), (7, 3, 48), (5, None, 24), (7, None, 48)])
def test_nonsplit_cartan_fixed_point_free(ell, eps, order):
    G = named_subgroup(ell, "nonsplit_cartan", eps=eps)
    assert G.order == order == ell * ell - 1
    for g in G.elements:
        if g != (1, 0, 0, 1):
            assert not fixed_vectors(generate(ell, [g]))
    assert all(not fixed_vectors(H) for H in index2_subgroups(G))


# --- inertia and conjugacy --------------------------------------------------

def test_split_torus_search():
    C = contains_split_torus_conjugate(named_subgroup(5, "5B.4.1"), 5)
    assert C == generate(5, [(1, 0, 0, 2)])
    assert contains_split_torus_conjugate(named_subgroup(5, "5Cs.1.3"), 5) is None
    assert contains_split_torus_conjugate(named_subgroup(7, "7B.1.6"), 7) is None
    with pytest.raises(InvalidArgument):
        contains_split_torus_conjugate(named_subgroup(3, "B"), 3)


@pytest.mark.parametrize("label,n", [("5B.4.1", 4), ("7B.6.1", 6)])
def test_fixing_cyclic_subgroups_are_conjugate(label, n):
    ell = _ell(label)
    G = named_subgroup(ell, label)
    fixing = [C for C in cyclic_subgroups(G, n) if fixed_vectors(C)]
    assert len(fixing) == ell
    # the diagonal one, diag(1, a)
    D = generate(ell, [(1, 0, 0, 3)])
    assert D in fixing
    assert conjugate_in(D, split_torus(ell)) is not None
    assert all(conjugate_in(D, C, ambient=G) is not None for C in fixing)


@pytest.mark.parametrize("label,order", [("5B.4.1", 20), ("7B.6.1", 42)])
def test_vector_stabilizer_is_upper_left_one(label, order):
    ell = _ell(label)
    G = named_subgroup(ell, label)
    S = vector_stabilizer(G, (1, 0))
    assert S.order == order
    assert set(S.elements) == {m for m in G.elements if m[0] == 1}


@pytest.mark.parametrize("g,h,out", [
    ((1, 1, 0, 1), (1, 0, 0, 2), (1, 1, 0, 2)),
    ((1, 1, 0, 2), (1, 0, 0, 3), (1, 1, 0, 3)),
    ((1, 2, 0, 1), (1, 0, 0, 2), (1, 2, 0, 2)),
    ((1, 3, 0, 2), (1, 0, 0, 3), (1, 3, 0, 3)),
])
def test_conjugation_displays(g, h, out):
    assert mul(5, mul(5, g, h), inv(5, g)) == out
    # and the generated cyclic groups correspond under the same conjugation
    assert conjugate(5, g, generate(5, [h])) == set(generate(5, [out]).elements)


def test_conjugate_in_examples():
    G = named_subgroup(5, "5B.4.1")
    assert conjugate_in(G, G) is not None
    H = split_torus(5)
    assert conjugate_in(H, H) == (1, 0, 0, 1)
    cs41 = named_subgroup(5, "5Cs.4.1")
    free = [C for C in cyclic_subgroups(cs41, 4) if not fixed_vectors(C)]
    assert free
    assert all(conjugate_in(H, C, ambient=cs41) is None for C in free)


@given(gen_sets(), st.data())
def test_conjugate_in_returns_witness(data, draw):
    ell, gens = data
    A = generate(ell, gens)
    if A.order > 60:
        return
    g = draw.draw(st.sampled_from(gl2(ell).elements))
    B = generate(ell, [mul(ell, mul(ell, g, a), inv(ell, g)) for a in A.elements])
    w = conjugate_in(A, B)
    assert w is not None
    assert conjugate(ell, w, A) == set(B.elements)


def test_mat_accepts_rows():
    assert mat(5, [[6, -1], [0, 7]]) == (1, 4, 0, 2)
