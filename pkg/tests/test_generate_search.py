import json
from itertools import combinations, permutations
from math import factorial

import networkx as nx
import pytest

import tomescu.search as search_mod
from conftest import to_nx
from tomescu.bounds import P_n_formula
from tomescu.canon import _pynauty, certificate
from tomescu.colorings import count_colorings_bruteforce
from tomescu.connectivity import edge_disjoint_path_count, l_core
from tomescu.families import make_clique, make_cycle, make_G_nk
from tomescu.generate import InHouseBackend, NautyBackend, enumerate_graphs, level
from tomescu.graph import CapacityError, Graph
from tomescu.graph6 import from_graph6
from tomescu.search import SearchError, SearchTask, enumerate_k_critical, run_task


def burnside_count(n):
    """Unlabelled graphs on n vertices: average of 2^(pair cycles) over S_n."""
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    total = 0
    for perm in permutations(range(n)):
        seen = [False] * len(pairs)
        cycles = 0
        for i in range(len(pairs)):
            if seen[i]:
                continue
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                a, b = pairs[j]
                j = index[tuple(sorted((perm[a], perm[b])))]
        total += 2 ** cycles
    return total // factorial(n)


def collect(n, **kw):
    out = []
    enumerate_graphs(n, out.append, **kw)
    return out


def test_small_counts():
    assert enumerate_graphs(1) == 1
    assert enumerate_graphs(4) == 11
    assert enumerate_graphs(5) == 34
    assert [enumerate_graphs(n) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_counts_match_burnside(n):
    assert enumerate_graphs(n) == burnside_count(n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_pairwise_non_isomorphic_networkx(n):
    gs = [to_nx(g) for g in collect(n)]
    for a, b in combinations(gs, 2):
        assert not nx.is_isomorphic(a, b)


def test_pairwise_non_isomorphic_n6():
    certs = [certificate(g) for g in collect(6)]
    assert len(set(certs)) == len(certs) == 156


def test_cap():
    with pytest.raises(CapacityError):
        enumerate_graphs(11)
    with pytest.raises(CapacityError):
        level(12, allow_large=True)


@pytest.mark.skipif(_pynauty is None, reason="pynauty not installed")
def test_backends_agree():
    a = {certificate(Graph._raw(7, c)) for c in level(7, InHouseBackend)}
    b = {certificate(Graph._raw(7, c)) for c in level(7, NautyBackend)}
    assert a == b and len(a) == 1044


# -- run_task ----------------------------------------------------------------


def test_two_connected_n7():
    out = run_task(SearchTask(n=7, k=4, objective="two-connected"))
    assert out.verdict == "holds"
    assert out.max_value == P_n_formula(7, 4)
    assert [certificate(from_graph6(w)) for w in out.equality_witnesses] == [certificate(make_G_nk(7, 4))]


def test_connected_equality_class_n6():
    out = run_task(SearchTask(n=6, k=4, objective="connected"))
    assert out.verdict == "holds" and out.equality_witnesses
    for w in out.equality_witnesses:
        core = l_core(from_graph6(w), 2)
        assert core.n == 4 and core.m == 6
    # two tree vertices hang off K4 as a path, a cherry, or two separate leaves
    assert len(out.equality_witnesses) == 3


def test_three_chromatic_unique_c7():
    out = run_task(SearchTask(n=7, k=4, objective="three-chromatic"))
    assert out.verdict == "holds"
    assert [certificate(from_graph6(w)) for w in out.equality_witnesses] == [certificate(make_cycle(7))]


def test_counterexample_path_is_oracle_checked():
    # at k = 3 the bound for ear-clique graphs is 18 but C5 has 30 colourings
    out = run_task(SearchTask(n=5, k=3, objective="two-connected", mode="find-counterexample"))
    assert out.verdict == "counterexample"
    g = from_graph6(out.counterexample)
    assert count_colorings_bruteforce(g, 3) > P_n_formula(5, 3)


def test_recheck_catches_disagreement(monkeypatch):
    monkeypatch.setattr(search_mod, "count_colorings", lambda g, k: 10**6)
    with pytest.raises(SearchError, match="disagree"):
        run_task(SearchTask(n=5, k=4, objective="two-connected"))


def test_filter_order_does_not_matter():
    fs = ["chi", "min-degree-at-least", "connected", "theta"]
    base = run_task(SearchTask(n=6, k=3, filters=fs, delta=2, reorder=False)).survivors
    for order in (fs[::-1], fs[1:] + fs[:1]):
        assert run_task(SearchTask(n=6, k=3, filters=order, delta=2, reorder=False)).survivors == base
    assert base


def test_jobs_parity():
    t = SearchTask(n=7, k=4, objective="two-connected")
    one = run_task(t, jobs=1, chunk=16).to_json()
    two = run_task(t, jobs=2, chunk=16).to_json()
    assert one == two


def test_checkpoint_resume(tmp_path, monkeypatch):
    t = SearchTask(n=7, k=4, filters=["connected"], objective="count")
    ref = run_task(t, chunk=8).to_json()
    path = str(tmp_path / "ck.json")
    real = search_mod._run_chunk
    calls = {"n": 0}

    def flaky(args):
        calls["n"] += 1
        if calls["n"] == 5:
            raise KeyboardInterrupt
        return real(args)

    monkeypatch.setattr(search_mod, "_run_chunk", flaky)
    with pytest.raises(KeyboardInterrupt):
        run_task(t, checkpoint=path, chunk=8)
    monkeypatch.setattr(search_mod, "_run_chunk", real)
    saved = json.load(open(path))
    assert saved["version"] == 1 and saved["parents_done"] == 32
    resumed = run_task(t, checkpoint=path, resume=True, chunk=8).to_json()
    assert resumed == ref
    with pytest.raises(SearchError, match="different task"):
        run_task(SearchTask(n=7, k=3), checkpoint=path, resume=True)


def test_task_validation():
    with pytest.raises(SearchError):
        run_task(SearchTask(n=5, filters=["bogus"]))
    with pytest.raises(SearchError):
        run_task(SearchTask(n=5, objective="bogus"))
    with pytest.raises(CapacityError):
        run_task(SearchTask(n=11))


# -- critical graphs ---------------------------------------------------------


def test_critical_examples():
    got = []
    assert enumerate_k_critical(4, 4, got.append) == 1 and got[0] == make_clique(4)
    got = []
    assert enumerate_k_critical(5, 3, got.append) == 1
    assert certificate(got[0]) == certificate(make_cycle(5))
    got = []
    enumerate_k_critical(7, 4, got.append)
    for g in got:
        assert g.min_degree() >= 3
        assert all(edge_disjoint_path_count(g, u, v) >= 3 for u, v in combinations(range(g.n), 2))


def test_critical_three_are_odd_cycles():
    for n in range(3, 8):
        want = 1 if n % 2 else 0
        assert enumerate_k_critical(n, 3) == want
