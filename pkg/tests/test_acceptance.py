"""Acceptance criteria, one test (or group) per criterion.

Each test records a ``ACnn PASS|FAIL ...`` line; the lines are printed as they
happen and again in the terminal summary.
"""

import os
import random
import time
from itertools import combinations

import networkx as nx
import pytest

from conftest import ACCEPTANCE_LINES, to_nx
from tomescu import bounds as B
from tomescu.canon import certificate
from tomescu.colorings import (
    cache_clear,
    chromatic_number,
    chromatic_polynomial,
    count_colorings,
    count_colorings_bruteforce,
    equal_color_probability_exceeds,
)
from tomescu.decomposition import decompose, p_series
from tomescu.families import (
    FamilyError,
    Signature,
    default_signature,
    lconn_signature,
    make_G1,
    make_G_nk,
    make_Gstar_lconn,
    make_Gstar_mindeg,
    make_k4_lconn_graph,
    make_type_graph,
)
from tomescu.generate import enumerate_graphs
from tomescu.graph import Graph, components
from tomescu.graph6 import from_graph6
from tomescu.search import SearchTask, run_task


def record(tag, ok, text):
    line = f"{tag} {'PASS' if ok else 'FAIL'} {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


# -- 1 -------------------------------------------------------------------------


def test_ac01_formula_agreement():
    cache_clear()
    t0 = time.perf_counter()
    bad = []
    for k in (4, 5):
        for n in range(k, k + 6):
            g = make_G_nk(n, k)
            want = B.P_n_formula(n, k)
            if not count_colorings(g, k) == want == count_colorings_bruteforce(g, k):
                bad.append((n, k))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    assert record("AC01", ok, f"G_nk engine = formula = oracle for k in 4,5 and n = k..k+5 ({dt:.2f}s, bad={bad})")


# -- 2 -------------------------------------------------------------------------


def test_ac02_g1_agreement():
    from math import factorial

    t0 = time.perf_counter()
    bad, checked = [], 0
    for k, delta in [(4, 3), (5, 3), (5, 4)]:
        for n in range(k + delta, delta + k + 6):
            g = make_G1(n, k, delta)
            checked += 1
            if count_colorings(g, k) != factorial(k) * (k - 1) ** (n - delta - k + 1):
                bad.append((n, k, delta))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    assert record("AC02", ok, f"G1 count = k!(k-1)^(n-delta-k+1) on {checked} instances ({dt:.2f}s)")


# -- 3 -------------------------------------------------------------------------


def _brute_classes(n):
    """Isomorphism classes of all 2^C(n,2) labelled graphs, by networkx."""
    pairs = list(combinations(range(n), 2))
    reps = {}
    for mask in range(1 << len(pairs)):
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(p for i, p in enumerate(pairs) if mask >> i & 1)
        key = (h.number_of_edges(), tuple(sorted(d for _, d in h.degree())))
        bucket = reps.setdefault(key, [])
        if not any(nx.is_isomorphic(h, r) for r in bucket):
            bucket.append(h)
    return sum(len(b) for b in reps.values())


def test_ac03_oracle_equivalence():
    t0 = time.perf_counter()
    counts_ok = all(enumerate_graphs(n) == _brute_classes(n) for n in range(1, 7))
    total, bad = 0, []
    for n in range(1, 9):
        gs = []
        enumerate_graphs(n, gs.append)
        total += len(gs)
        for g in gs:
            p = chromatic_polynomial(g)
            for k in (3, 4):
                if p(k) != count_colorings_bruteforce(g, k):
                    bad.append((g, k))
    dt = time.perf_counter() - t0
    ok = counts_ok and not bad and total == 1 + 2 + 4 + 11 + 34 + 156 + 1044 + 12346 and dt < 300
    assert record("AC03", ok, f"polynomial = oracle at k=3,4 on all {total} classes with n <= 8; "
                              f"class counts match brute force for n <= 6 ({dt:.0f}s)")


# -- 4 -------------------------------------------------------------------------


def _ear_clique_check(n):
    out = run_task(SearchTask(n=n, k=4, objective="two-connected", keep_survivors=False))
    eq = [certificate(from_graph6(w)) for w in out.equality_witnesses]
    ok = (
        out.verdict == "holds"
        and out.max_value == B.P_n_formula(n, 4)
        and eq == [certificate(make_G_nk(n, 4))]
    )
    return ok, out


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_ac04_two_connected_maximum(n):
    t0 = time.perf_counter()
    ok, out = _ear_clique_check(n)
    dt = time.perf_counter() - t0
    assert record(f"AC04 n={n}", ok,
                  f"2-connected 4-chromatic: {out.survivor_count} survivors, max {out.max_value} "
                  f"= P_n(4), equality only at G_(n,4) ({dt:.1f}s)")


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("TOMESCU_LONG"), reason="set TOMESCU_LONG=1 for the n = 10 run")
def test_ac04_two_connected_maximum_n10():
    ok, out = _ear_clique_check(10)
    assert record("AC04 n=10", ok, f"2-connected 4-chromatic at n=10: {out.survivor_count} survivors")


# -- 5 -------------------------------------------------------------------------


@pytest.mark.parametrize("n", [5, 6, 7])
def test_ac05_connected_maximum(n):
    out = run_task(SearchTask(n=n, k=4, objective="connected", keep_survivors=False))
    got = {certificate(from_graph6(w)) for w in out.equality_witnesses}
    # independent: every connected graph whose 2-core (by networkx) is K4
    want = set()

    def take(g):
        h = to_nx(g)
        if nx.is_connected(h):
            core = nx.k_core(h, 2)
            if core.number_of_nodes() == 4 and core.number_of_edges() == 6:
                want.add(certificate(g))

    enumerate_graphs(n, take)
    ok = out.verdict == "holds" and out.max_value == B.tomescu_bound(n, 4) and got == want and want
    assert record(f"AC05 n={n}", ok, f"connected 4-chromatic maximizers are the {len(want)} graphs with 2-core K4")


# -- 6 -------------------------------------------------------------------------


def _series_instances():
    out = []
    for t, n, k, d in [
        (1, 9, 4, 3), (1, 11, 4, 3), (1, 13, 4, 4), (1, 12, 5, 3), (1, 14, 5, 4), (1, 15, 5, 5),
        (2, 10, 4, 3), (2, 12, 4, 4), (2, 14, 4, 5), (2, 14, 5, 4), (2, 15, 5, 5),
        (3, 10, 4, 3), (3, 13, 4, 3), (3, 12, 5, 3), (3, 14, 5, 4),
        (4, 12, 4, 3), (4, 14, 4, 3), (4, 13, 5, 3), (4, 15, 5, 4),
    ]:
        out.append((f"type{t}({n},{k},{d})", make_type_graph(t, n, k, d, default_signature(t, k, d)), k))
    for n, k, d in [(10, 4, 3), (12, 5, 4), (9, 4, 3)]:
        out.append((f"G1({n},{k},{d})", make_G1(n, k, d), k))
    for n, k, d in [(12, 4, 3), (14, 4, 3), (15, 5, 4)]:
        out.append((f"Gstar-mindeg({n},{k},{d})", make_Gstar_mindeg(n, k, d), k))
    for n, k, l in [(12, 4, 3), (14, 5, 4), (18, 4, 7)]:
        out.append((f"Gstar-lconn({n},{k},{l})", make_Gstar_lconn(n, k, l), k))
    for l, n in [(5, 12), (6, 14)]:
        out.append((f"k4-lconn({l},{n})", make_k4_lconn_graph(l, n), 4))
    return out


def test_ac06_series_identity():
    insts = _series_instances()
    bad = []
    for name, g, k in insts:
        d = decompose(g, k)
        if d is None or len(d.z_set) > 8 or p_series(g, d, k).total() != count_colorings(g, k):
            bad.append(name)
    ok = len(insts) >= 30 and not bad
    assert record("AC06", ok, f"sum P^(i)(k-i)^|Z| = P_G(k) on {len(insts)} family instances (bad={bad})")


# -- 7 -------------------------------------------------------------------------


def _smallest_instance(t, k, delta):
    for n in range(k + delta, 40):
        try:
            return n, make_type_graph(t, n, k, delta, default_signature(t, k, delta))
        except FamilyError:
            continue
    raise AssertionError("no valid size")


def test_ac07_second_order():
    rows = []
    ok = True
    for t, k, delta in [(1, 4, 3), (2, 4, 3), (3, 4, 3), (4, 4, 3)]:
        n, g = _smallest_instance(t, k, delta)
        ps = p_series(g, decompose(g, k), k)
        want = B.second_order_term(t, n, k, delta)
        ok &= ps.order_term(2) == want
        rows.append(f"type{t}@n={n}:{want}")
    g = make_Gstar_mindeg(13, 4, 3)
    gstar = p_series(g, decompose(g, 4), 4).order_term(2)
    ok &= gstar == B.second_order_term(4, 13, 4, 3) == 48384
    assert record("AC07", ok, f"P^(2)(k-2)^|Z| = second_order_term ({', '.join(rows)}); Type 4 (13,4,3) = {gstar}")


# -- 8 -------------------------------------------------------------------------


def _p3_over_24(g, delta):
    return p_series(g, decompose(g, 4, delta), 4).term(3) // 24


def test_ac08_delta4_maxima():
    t1 = B.third_order_signature(default_signature(1, 4, 4), 4, 4)
    g1 = make_type_graph(1, 12, 4, 4, default_signature(1, 4, 4))
    g2 = make_type_graph(2, 12, 4, 4, default_signature(2, 4, 4))
    d1, d2 = _p3_over_24(g1, 4), _p3_over_24(g2, 4)
    ok = t1 == d1 == 15 and d2 == 18
    assert record("AC08a", ok, f"delta = k = 4: Type 1 P^(3)/4! = {d1} (formula {t1}), Type 2 = {d2}")


def test_ac08_large_l():
    g = make_Gstar_lconn(20, 4, 7)
    got = _p3_over_24(g, 7)
    ok = got == 27 == B.lconn_third_order_constant_d(4)
    assert record("AC08d", ok, f"l = 7 disjoint-blocks construction: P^(3)/4! = {got}")


@pytest.mark.xfail(strict=True, reason="direct count of the l = 5 Type 2 graph is 25, not 35")
def test_ac08_l5():
    got = _p3_over_24(make_k4_lconn_graph(5, 12), 5)
    assert record("AC08b", got == 35, f"l = 5 Type 2 graph: P^(3)/4! = {got}, expected 35")


@pytest.mark.xfail(strict=True, reason="direct count of the l = 6 Type 2 graph is 28, not 27")
def test_ac08_l6():
    got = _p3_over_24(make_k4_lconn_graph(6, 14), 6)
    assert record("AC08c", got == 27, f"l = 6 Type 2 graph: P^(3)/4! = {got}, expected 27")


# -- 9 -------------------------------------------------------------------------


def test_ac09_analytic_ranges():
    t0 = time.perf_counter()
    a = all(B.critical_Ck_bound(n, 4) < B.P_n_formula(n, 4) for n in range(18, 41))
    b = all(B.critical_Ck_bound(n, 5) < B.P_n_formula(n, 5) for n in range(11, 21))
    c = all(B.four_critical_bound(n) < 6 * (3 ** (n - 3) + (-1) ** (n - 4)) for n in range(11, 18))
    dt = time.perf_counter() - t0
    ok = a and b and c and dt < 1.0
    assert record("AC09", ok, f"C_k bound < P_n(k) for k=4 n=18..40 ({a}) and k=5 n=11..20 ({b}); "
                              f"4-critical bound < 3!(3^(n-3)+(-1)^(n-4)) for n=11..17 ({c}) ({dt:.3f}s)")


# -- 10 ------------------------------------------------------------------------


def test_ac10_c_max_blocks():
    t0 = time.perf_counter()
    k, delta = 4, 7
    val, wit = B.c_max(k - 1, delta - 1, delta - k + 1)
    _, sig = lconn_signature(k, delta)
    common = frozenset.intersection(*sig.sets)
    blocks = [sorted(s - common) for s in sig.sets]
    match = B.same_up_to_symmetry(wit, blocks, delta - 1)
    dt = time.perf_counter() - t0
    ok = match and val == B.c_value(blocks, delta - 1) and dt < 60
    assert record("AC10", ok, f"c_max(3,6,4) = {val}, witness {wit} matches the disjoint-blocks system ({dt:.2f}s)")


# -- 11 ------------------------------------------------------------------------


def _random_graph(rng, lo=3, hi=8, p=None):
    n = rng.randint(lo, hi)
    p = rng.uniform(0.25, 0.75) if p is None else p
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def _sub(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _glue(g1, g2):
    """Identify vertex 0 of g2 with vertex 0 of g1."""
    shift = {0: 0, **{v: v + g1.n - 1 for v in range(1, g2.n)}}
    return Graph.from_edges(g1.n + g2.n - 1, list(g1.edges()) + [(shift[u], shift[v]) for u, v in g2.edges()])


def _connected(rng, lo, hi):
    while True:
        g = _random_graph(rng, lo, hi)
        if len(components(g)) == 1:
            return g


def test_ac11_property_suite():
    rng = random.Random(20261015)
    fails = {"deletion-contraction": 0, "block product": 0, "k!-divisibility": 0, "C_k vs oracle": 0}
    done = dict.fromkeys(fails, 0)

    while done["deletion-contraction"] < 100:
        g = _random_graph(rng)
        if not g.m:
            continue
        u, v = rng.choice(sorted(g.edges()))
        lhs = list(chromatic_polynomial(g).coeffs)
        rhs = _sub(chromatic_polynomial(g.delete_edge(u, v)).coeffs, chromatic_polynomial(g.contract(u, v)).coeffs)
        fails["deletion-contraction"] += lhs != rhs
        done["deletion-contraction"] += 1

    while done["block product"] < 100:
        g1, g2 = _connected(rng, 2, 5), _connected(rng, 2, 5)
        g = _glue(g1, g2)
        for k in range(1, 6):
            if count_colorings_bruteforce(g, k) * k != count_colorings_bruteforce(g1, k) * count_colorings_bruteforce(g2, k):
                fails["block product"] += 1
                break
        done["block product"] += 1

    from math import factorial

    while done["k!-divisibility"] < 100:
        g = _random_graph(rng, 2, 9)
        k = chromatic_number(g)
        fails["k!-divisibility"] += count_colorings(g, k) % factorial(k) != 0
        done["k!-divisibility"] += 1

    while done["C_k vs oracle"] < 100:
        g = _random_graph(rng, 4, 8)
        non = [(u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)]
        if not non:
            continue
        k = chromatic_number(g)
        u, v = rng.choice(non)
        total = count_colorings_bruteforce(g, k)
        same = total - count_colorings_bruteforce(g.add_edge(u, v), k)
        fails["C_k vs oracle"] += equal_color_probability_exceeds(g, k, u, v) != ((k - 1) * same >= total)
        done["C_k vs oracle"] += 1

    ok = not any(fails.values())
    summary = ", ".join(f"{name} {done[name]} graphs/{fails[name]} failures" for name in fails)
    assert record("AC11", ok, summary)
