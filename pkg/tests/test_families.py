import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomescu.canon import is_isomorphic
from tomescu.colorings import chromatic_number, count_colorings, count_colorings_bruteforce
from tomescu.connectivity import is_connected, is_l_connected, vertex_connectivity
from tomescu.families import (
    FamilyError,
    Signature,
    check_type_conditions,
    default_signature,
    k4_lconn_signature,
    lconn_signature,
    make_clique,
    make_complete_bipartite,
    make_cycle,
    make_G1,
    make_G_nk,
    make_Gstar_lconn,
    make_Gstar_mindeg,
    make_k4_lconn_graph,
    make_path,
    make_type_graph,
)
from tomescu.decomposition import decompose, p_series


def test_building_blocks():
    assert make_cycle(3) == make_clique(3)
    star = make_complete_bipartite(1, 3)
    assert star.m == 3 and sorted(star.degrees()) == [1, 1, 1, 3]
    assert make_path(2) == make_clique(2)
    with pytest.raises(Exception):
        make_cycle(2)
    with pytest.raises(Exception):
        make_clique(0)


def test_G_nk():
    for k in (3, 4, 5):
        g = make_G_nk(k + 1, k)
        assert g.degrees()[k] == 2 and g.n == k + 1
        assert g.induced_subgraph(range(k)) == make_clique(k)
    assert count_colorings_bruteforce(make_G_nk(6, 4), 4) == 168
    assert vertex_connectivity(make_G_nk(8, 4)) == 2
    assert make_G_nk(4, 4) == make_clique(4)
    with pytest.raises(FamilyError):
        make_G_nk(3, 4)


def test_G1():
    g = make_G1(10, 4, 3)
    assert count_colorings_bruteforce(g, 4) == 24 * 3 ** 4 == count_colorings(g, 4)
    assert chromatic_number(g) == 4
    assert make_G1(12, 5, 3).min_degree() == 3
    with pytest.raises(FamilyError):
        make_G1(6, 4, 3)


def test_type_graph_examples():
    g = make_type_graph(3, 12, 4, 3, Signature.of(3, [{0}]))
    d = decompose(g, 4)
    assert d.type_tag == 3
    assert p_series(g, d, 4).term(2) * 2 ** len(d.z_set) == 24 * 3 * 9 * 2 ** 5
    # every S_i = {0} with k - 1 < delta leaves X-vertices short of degree delta
    with pytest.raises(FamilyError, match="minimum degree"):
        make_type_graph(1, 12, 4, 4, Signature.of(4, [{0}] * 3))
    g = make_type_graph(4, 13, 5, 3, Signature.of(3, [{1, 2}]))
    assert g.n == 13 and chromatic_number(g) == 5
    with pytest.raises(FamilyError, match="Type 2"):
        make_type_graph(2, 12, 4, 2)
    with pytest.raises(FamilyError, match="complete to X"):
        check_type_conditions(1, 4, 3, Signature.of(3, [{0}, {1}, {2}]))


def test_gstar_mindeg():
    g = make_Gstar_mindeg(14, 4, 3)
    assert is_connected(g) and g.min_degree() == 3
    assert vertex_connectivity(g) == 1
    # the maximum Type 4 graph, built from its own signature
    assert is_isomorphic(g, make_type_graph(4, 14, 4, 3, default_signature(4, 4, 3)))
    with pytest.raises(FamilyError):
        make_Gstar_mindeg(14, 4, 4)


def test_gstar_lconn():
    assert is_l_connected(make_Gstar_lconn(12, 4, 3), 3)
    g = make_Gstar_lconn(14, 5, 4, check_flow=True)
    assert is_l_connected(g, 4) and chromatic_number(g) == 5
    assert lconn_signature(4, 7)[0] == "d"
    with pytest.raises(FamilyError):
        make_Gstar_lconn(20, 5, 6)


def test_k4_lconn_graphs():
    for l in (5, 6):
        g = make_k4_lconn_graph(l, 2 * l + 4)
        assert is_l_connected(g, l) and chromatic_number(g) == 4 and g.min_degree() == l
        assert len(k4_lconn_signature(l).sets) == 3
    with pytest.raises(FamilyError):
        make_k4_lconn_graph(4, 14)


@settings(max_examples=20)
@given(st.integers(7, 16), st.integers(4, 5), st.integers(3, 4))
def test_constructors_are_nkd(n, k, delta):
    try:
        g = make_G1(n, k, delta)
    except FamilyError:
        return
    assert g.n == n and g.min_degree() == delta and chromatic_number(g) == k and is_connected(g)
