"""Static registry of executable checks.

Each entry names a statement, its default (smallest) parameters and a
checker.  A checker takes a parameter dict and returns a :class:`Report`;
``verdict`` is "holds" or "fails".  Every integer in a report is kept as a
decimal string so the JSON form never carries floats.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from . import __version__, bounds
from .canon import backend_name, is_isomorphic
from .colorings import cache_info, count_colorings, count_colorings_bruteforce
from .connectivity import edge_disjoint_path_count, is_l_connected
from .decomposition import decompose, p_series
from .families import (
    Signature,
    k4_lconn_signature,
    default_signature,
    lconn_signature,
    make_k4_lconn_graph,
    make_G1,
    make_G_nk,
    make_Gstar_lconn,
    make_Gstar_mindeg,
    make_type_graph,
)
from .graph6 import to_graph6
from .search import SearchTask, enumerate_k_critical, run_task


@dataclass
class Report:
    claim_id: str
    params: dict
    verdict: str = "holds"
    witnesses: list = field(default_factory=list)
    values: dict = field(default_factory=dict)
    runtime: str = "0"
    engine: str = ""
    cache: dict = field(default_factory=dict)
    note: str = ""

    def check(self, ok: bool, name: str | None = None):
        if not ok:
            self.verdict = "fails"
            if name:
                self.note = (self.note + "; " if self.note else "") + f"{name} failed"
        return ok

    def to_json(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "params": {k: str(v) for k, v in self.params.items()},
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "values": {k: _dec(v) for k, v in self.values.items()},
            "runtime_ms": self.runtime,
            "engine": self.engine,
            "cache": {k: str(v) for k, v in self.cache.items()},
            "note": self.note,
        }


def _dec(v):
    if isinstance(v, (list, tuple)):
        return [_dec(x) for x in v]
    if hasattr(v, "numerator") and getattr(v, "denominator", 1) != 1:
        return f"{v.numerator}/{v.denominator}"
    return str(v)


@dataclass(frozen=True)
class ClaimEntry:
    claim_id: str
    statement: str
    defaults: dict
    checker: Callable


# -- family builder shared with the CLI --------------------------------------


def build_family(name: str, p: dict):
    name = name.lower()
    n, k = p.get("n"), p.get("k")
    if name in ("gnk", "g_nk"):
        return make_G_nk(n, k)
    if name == "g1":
        return make_G1(n, k, p["delta"])
    if name == "type":
        return make_type_graph(p["type"], n, k, p["delta"])
    if name in ("gstar-mindeg", "gstar"):
        return make_Gstar_mindeg(n, k, p["delta"])
    if name == "gstar-lconn":
        return make_Gstar_lconn(n, k, p["ell"], check_flow=p.get("check_flow", False))
    if name in ("k4-lconn", "lconn-type2"):
        return make_k4_lconn_graph(p["ell"], n)
    raise KeyError(f"unknown family {name!r}")


# -- checkers ----------------------------------------------------------------


def _search_claim(objective):
    def run(r: Report, p):
        out = run_task(SearchTask(n=p["n"], k=p["k"], objective=objective, keep_survivors=False), jobs=p.get("jobs", 1))
        r.values.update(examined=out.graphs_examined, survivors=out.survivor_count, max=out.max_value)
        r.witnesses = out.equality_witnesses or out.max_witnesses
        if out.verdict != "holds":
            r.witnesses = [out.counterexample]
        r.check(out.verdict == "holds", "search")

    return run


def _ear_clique_count(r, p):
    n, k = p["n"], p["k"]
    g = make_G_nk(n, k)
    vals = (count_colorings(g, k), count_colorings_bruteforce(g, k), bounds.P_n_formula(n, k))
    r.values.update(engine=vals[0], oracle=vals[1], formula=vals[2])
    r.witnesses = [to_graph6(g)]
    r.check(len(set(vals)) == 1)


def _g1_count(r, p):
    n, k, d = p["n"], p["k"], p["delta"]
    g = make_G1(n, k, d)
    got, want = count_colorings(g, k), factorial(k) * (k - 1) ** (n - d - k + 1)
    r.values.update(engine=got, formula=want)
    r.check(got == want)


def _series(r, p):
    g = build_family(p["family"], p)
    k = p["k"]
    d = decompose(g, k, p.get("delta"))
    if d is None:
        r.check(False, "decomposition")
        return
    ps = p_series(g, d, k)
    got = count_colorings(g, k)
    r.values.update(terms=list(ps.terms), z=ps.z_size, series_total=ps.total(), engine=got)
    r.witnesses = [to_graph6(g)]
    r.check(ps.total() == got)


def _second_order(r, p):
    t, n, k, d = p["type"], p["n"], p["k"], p["delta"]
    g = make_Gstar_mindeg(n, k, d) if t == 4 else make_type_graph(t, n, k, d)
    dec = decompose(g, k, d)
    got = p_series(g, dec, k).order_term(2)
    want = bounds.second_order_term(t, n, k, d)
    r.values.update(engine=got, closed_form=want)
    r.witnesses = [to_graph6(g)]
    r.check(got == want)


def _mindeg_order(r, p):
    # with k - 1 >= delta the Type 4 second-order term beats the other types
    n, k, d = p["n"], p["k"], p["delta"]
    terms = {t: bounds.second_order_term(t, n, k, d) for t in (1, 3, 4)}
    r.values.update({f"type{t}": v for t, v in terms.items()})
    r.check(terms[4] > max(terms[1], terms[3]))
    g = make_Gstar_mindeg(n, k, d)
    got = p_series(g, decompose(g, k, d), k).order_term(2)
    r.values["gstar_engine"] = got
    r.check(got == terms[4], "engine")


def _third_order_sig(r, p):
    k, d, trials = p["k"], p["delta"], p.get("trials", 5)
    rng = random.Random(p.get("seed", 0))
    size = d - k + 2
    done = 0
    while done < trials:
        common = rng.randrange(d)
        rest = [y for y in range(d) if y != common]
        sets = [{common, *rng.sample(rest, size - 1)} for _ in range(k - 1)]
        sig = Signature.of(d, sets)
        n = k - 1 + d + d
        try:
            g = make_type_graph(1, n, k, d, sig)
        except Exception:
            continue
        got = p_series(g, decompose(g, k, d), k).term(3)
        want = factorial(k) * bounds.third_order_signature(sig, k, d)
        r.values[f"trial{done}"] = [got, want]
        r.check(got == want, f"trial {done}")
        done += 1


def _k4_delta4(r, p):
    n = p["n"]
    for t, want in ((1, 15), (2, 18)):
        g = make_type_graph(t, n, 4, 4)
        got = p_series(g, decompose(g, 4, 4), 4).term(3) // 24
        r.values[f"type{t}"] = got
        r.check(got == want, f"type {t}")


def _lconn_orders(r, p):
    n, k, l = p["n"], p["k"], p["ell"]
    g = make_Gstar_lconn(n, k, l, check_flow=True)
    _, sig = lconn_signature(k, l)
    ps = p_series(g, decompose(g, k, l), k)
    f = factorial(k)
    r.values.update(p2=ps.term(2) // f, p3=ps.term(3) // f)
    r.values.update(eq_p2=bounds.lconn_second_order_sum(sig), eq_p3=bounds.lconn_third_order_sum(sig))
    r.check(ps.term(2) == f * bounds.lconn_second_order_sum(sig), "second order")
    r.check(ps.term(3) == f * bounds.lconn_third_order_sum(sig), "third order")
    r.check(bounds.lconn_second_order_sum(sig) == bounds.lconn_second_order_constant(k, l), "constant")
    r.witnesses = [to_graph6(g)]


def _lconn_blocks(r, p):
    n, k, l = p["n"], p["k"], p["ell"]
    g = make_Gstar_lconn(n, k, l, check_flow=True)
    ps = p_series(g, decompose(g, k, l), k)
    f = factorial(k)
    want = bounds.lconn_third_order_constant_d(k)
    r.values.update(p3=ps.term(3) // f, closed_form=want)
    r.check(ps.term(3) == f * want)


def _k4_small_l(r, p):
    l = p["ell"]
    n = 3 + l + 3
    g = make_Gstar_lconn(n, 4, l, check_flow=True)
    ps = p_series(g, decompose(g, 4, l), 4)
    got = ps.term(3) // 24
    r.values.update(p3=got, closed_form=bounds.k4_third_order_small_l(l))
    r.check(got == bounds.k4_third_order_small_l(l))


def _k4_type2(r, p):
    """Direct P^(3)/4! of the stated l = 5 / l = 6 Type 2 extremal graphs."""
    l, n = p["ell"], p["n"]
    g = make_k4_lconn_graph(l, n)
    r.check(is_l_connected(g, l), "connectivity")
    ps = p_series(g, decompose(g, 4, l), 4)
    got = ps.term(3) // 24
    stated = bounds.K4_THIRD_ORDER_STATED[l]
    r.values.update(
        p2=ps.term(2) // 24,
        p3=got,
        stated=stated,
        pairwise_formula=bounds.lconn_third_order_sum(k4_lconn_signature(l)),
    )
    r.witnesses = [to_graph6(g)]
    r.check(got == stated, "stated P^(3)")


def _c_max_blocks(r, p):
    k, d = p["k"], p["delta"]
    val, wit = bounds.c_max(k - 1, d - 1, d - k + 1, jobs=p.get("jobs", 1))
    s = d - 1
    blocks = [set(range(s)) - set(range(i * (k - 2), (i + 1) * (k - 2))) for i in range(k - 1)]
    r.values.update(c_max=val, blocks=bounds.c_value(blocks, s))
    r.witnesses = [repr(wit)]
    r.check(val == bounds.c_value(blocks, s), "value")
    r.check(bounds.same_up_to_symmetry(wit, blocks, s), "witness")


def _mindeg_third(r, p):
    # c_max witness plus a common vertex gives a Type 1 signature whose
    # direct P^(3) equals the closed form
    k, d = p["k"], p["delta"]
    val, wit = bounds.c_max(k - 1, d - 1, d - k + 1)
    sig = Signature.of(d, [{0} | {y + 1 for y in s} for s in wit])
    closed = val - (k - 1) * (k - 2) * 2 ** (k - 2) + (k - 1) * (k - 2) // 2
    g = make_type_graph(1, k - 1 + 2 * d, k, d, sig)
    got = p_series(g, decompose(g, k, d), k).term(3) // factorial(k)
    r.values.update(closed_form=closed, engine=got)
    r.check(got == closed)


def _critical_range(r, p):
    k, lo, hi = p["k"], p["lo"], p["hi"]
    bad = [n for n in range(lo, hi + 1) if not bounds.critical_Ck_bound(n, k) < bounds.P_n_formula(n, k)]
    r.values["failing_n"] = bad
    r.check(not bad)


def _four_critical_range(r, p):
    lo, hi = p["lo"], p["hi"]
    bad = [n for n in range(lo, hi + 1) if not bounds.four_critical_bound(n) < 6 * (3 ** (n - 3) + (-1) ** (n - 4))]
    r.values["failing_n"] = bad
    r.check(not bad)


def _four_critical_small(r, p):
    n = p["n"]
    found = []
    enumerate_k_critical(n, 4, found.append)
    bound = bounds.four_critical_bound(n)
    for g in found:
        r.check(bound > count_colorings(g, 4), to_graph6(g))
    r.values["critical_graphs"] = len(found)
    r.witnesses = [to_graph6(g) for g in found]


def _critical_props(r, p):
    n, k = p["n"], p["k"]
    found = []
    enumerate_k_critical(n, k, found.append)
    for g in found:
        r.check(g.min_degree() >= k - 1, "min degree")
        ok = all(edge_disjoint_path_count(g, u, v) >= k - 1 for u in range(n) for v in range(u + 1, n))
        r.check(ok, "edge connectivity")
    r.values["critical_graphs"] = len(found)


def _ear_unique(r, p):
    # adding any edge to G_{n,k} loses colorings
    n, k = p["n"], p["k"]
    g = make_G_nk(n, k)
    base = count_colorings(g, k)
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v):
                r.check(count_colorings(g.add_edge(u, v), k) < base, f"edge {u}{v}")
    r.values["base"] = base


def _gstar_unique(r, p):
    # the constructed Type 4 graph is the default-signature Type 4 graph
    n, k, d = p["n"], p["k"], p["delta"]
    a = make_Gstar_mindeg(n, k, d)
    b = make_type_graph(4, n, k, d, default_signature(4, k, d))
    r.check(is_isomorphic(a, b))


CLAIMS: tuple[ClaimEntry, ...] = (
    ClaimEntry("connected-max", "connected k-chromatic graphs: P <= k!(k-1)^(n-k), equality iff 2-core is K_k",
               {"n": 6, "k": 4}, _search_claim("connected")),
    ClaimEntry("two-connected-max", "2-connected k-chromatic graphs: P <= P_n(k), equality only at G_{n,k}",
               {"n": 7, "k": 4}, _search_claim("two-connected")),
    ClaimEntry("ear-clique-count", "P(G_{n,k}) equals the closed form", {"n": 6, "k": 4}, _ear_clique_count),
    ClaimEntry("ear-clique-saturated", "adding any edge to G_{n,k} lowers P", {"n": 7, "k": 4}, _ear_unique),
    ClaimEntry("cycle-max", "2-connected graphs: P <= (k-1)^n + (-1)^n (k-1), equality at C_n",
               {"n": 6, "k": 4}, _search_claim("cycle")),
    ClaimEntry("three-chromatic-max", "connected chi >= 3: cycle (odd n) or cycle plus pendant (even n) is extremal",
               {"n": 7, "k": 4}, _search_claim("three-chromatic")),
    ClaimEntry("theta-bound", "connected graphs containing a theta obey the theta bound",
               {"n": 6, "k": 4}, _search_claim("theta")),
    ClaimEntry("critical-bound-range", "critical C_k bound < P_n(k) over a range of n",
               {"k": 4, "lo": 18, "hi": 40}, _critical_range),
    ClaimEntry("four-critical-range", "4-critical bound < 3!(3^(n-3) + (-1)^(n-4)) over a range of n",
               {"lo": 11, "hi": 17}, _four_critical_range),
    ClaimEntry("four-critical-small", "4-critical bound exceeds P of every 4-critical graph on n vertices",
               {"n": 6}, _four_critical_small),
    ClaimEntry("critical-properties", "k-critical graphs: min degree >= k-1 and (k-1) edge-disjoint paths",
               {"n": 7, "k": 4}, _critical_props),
    ClaimEntry("g1-count", "P(G1) = k!(k-1)^(n-delta-k+1)", {"n": 8, "k": 4, "delta": 3}, _g1_count),
    ClaimEntry("xyz-series", "sum_i P^(i) (k-i)^|Z| equals P", {"family": "g1", "n": 10, "k": 4, "delta": 3}, _series),
    ClaimEntry("second-order", "engine P^(2)(k-2)^|Z| equals the closed form of the type",
               {"type": 4, "n": 13, "k": 4, "delta": 3}, _second_order),
    ClaimEntry("mindeg-type-order", "Type 4 has the largest second-order term when k-1 >= delta",
               {"n": 13, "k": 4, "delta": 3}, _mindeg_order),
    ClaimEntry("gstar-mindeg-shape", "the minimum-degree extremal graph is the Type 4 default",
               {"n": 12, "k": 4, "delta": 3}, _gstar_unique),
    ClaimEntry("third-order-signature", "c(sig) - (k-1)(k-2)2^(k-2) + C(k-1,2) equals direct P^(3)/k!",
               {"k": 5, "delta": 5, "trials": 5}, _third_order_sig),
    ClaimEntry("third-order-k4-delta4", "delta = k = 4 maxima: P^(3)/4! is 15 (Type 1) and 18 (Type 2)",
               {"n": 12}, _k4_delta4),
    ClaimEntry("mindeg-third-order", "c(k-1, delta-1, delta-k+1) gives the Type 1 third-order constant",
               {"k": 5, "delta": 5}, _mindeg_third),
    ClaimEntry("lconn-orders", "second/third order sums match direct counts on the l-connected construction",
               {"n": 11, "k": 5, "ell": 4}, _lconn_orders),
    ClaimEntry("lconn-blocks", "disjoint-blocks construction has P^(3)/k! = C(k-1,2)(2^(2k-4) - 2^(k-1) + 1)",
               {"n": 20, "k": 4, "ell": 7}, _lconn_blocks),
    ClaimEntry("k4-lconn-small", "k = 4, l in {3,4}: P^(3)/4! closed form", {"ell": 3}, _k4_small_l),
    ClaimEntry("k4-lconn-l5", "k = 4, l = 5 Type 2 graph has P^(3)/4! = 35", {"ell": 5, "n": 12}, _k4_type2),
    ClaimEntry("k4-lconn-l6", "k = 4, l = 6 Type 2 graph has P^(3)/4! = 27", {"ell": 6, "n": 14}, _k4_type2),
    ClaimEntry("c-max-blocks", "c(k-1, delta-1, delta-k+1) maximizer is the disjoint-blocks system",
               {"k": 4, "delta": 7}, _c_max_blocks),
)

REGISTRY = {c.claim_id: c for c in CLAIMS}

# statements that must each be backed by at least one registry entry
COVERAGE = {
    "connected k-chromatic maximum": ["connected-max"],
    "2-connected k-chromatic maximum": ["two-connected-max", "ear-clique-count", "ear-clique-saturated"],
    "2-connected maximum (cycle)": ["cycle-max"],
    "theta bound": ["theta-bound"],
    "chromatic number >= 3 maximum": ["three-chromatic-max"],
    "critical graph structure": ["critical-properties"],
    "critical C_k bound ranges": ["critical-bound-range"],
    "4-critical C_4 bound": ["four-critical-range", "four-critical-small"],
    "G1 colorings": ["g1-count"],
    "P^(i) series": ["xyz-series"],
    "second-order terms by type": ["second-order", "mindeg-type-order"],
    "minimum-degree extremal graph": ["gstar-mindeg-shape", "mindeg-type-order"],
    "third-order via signature": ["third-order-signature", "third-order-k4-delta4"],
    "minimum-degree third order": ["mindeg-third-order"],
    "l-connected second/third order": ["lconn-orders"],
    "l-connected large-l construction": ["lconn-blocks", "c-max-blocks"],
    "k = 4 l-connected constants": ["k4-lconn-small", "k4-lconn-l5", "k4-lconn-l6", "lconn-blocks"],
}


def run_claim(claim_id: str, params: dict | None = None) -> Report:
    entry = REGISTRY[claim_id]
    p = dict(entry.defaults)
    p.update({k: v for k, v in (params or {}).items() if v is not None})
    r = Report(claim_id, p, engine=f"tomescu {__version__} ({backend_name()})")
    t0 = time.perf_counter()
    entry.checker(r, p)
    r.runtime = str(int((time.perf_counter() - t0) * 1000))
    r.cache = cache_info()
    return r
