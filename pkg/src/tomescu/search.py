"""Exhaustive small-graph searches: filter pipelines, objectives, verdicts.

A task streams one representative per isomorphism class through an ordered
filter list and scores each survivor with an objective.  Work is sharded
over the parents of the last augmentation level, which also serves as the
checkpoint unit: a checkpoint records how many parents are finished.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, field, replace
from typing import Callable

from . import bounds
from .canon import certificate
from .colorings import (
    count_colorings,
    count_colorings_bruteforce,
    is_k_colorable,
    is_k_critical,
    satisfies_property_Ck,
)
from .connectivity import contains_theta, is_2_connected, is_connected, is_l_connected, l_core
from .families import make_cycle, make_G_nk
from .generate import check_cap, children, default_backend, enumerate_graphs, level
from .graph import Graph, GraphError
from .graph6 import from_graph6, to_graph6

log = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1


class SearchError(GraphError):
    pass


# -- filters -----------------------------------------------------------------
# name -> (cost rank, predicate(g, task))


def _chi_is(g, t):
    return is_k_colorable(g, t.k) and not is_k_colorable(g, t.k - 1)


def _min_degree_is(g, t):
    return g.min_degree() == t.delta


def _min_degree_at_least(g, t):
    return g.min_degree() >= t.delta


FILTERS: dict[str, tuple[int, Callable]] = {
    "min-degree": (0, _min_degree_is),
    "min-degree-at-least": (0, _min_degree_at_least),
    "connected": (1, lambda g, t: is_connected(g)),
    "2-connected": (2, lambda g, t: is_2_connected(g)),
    "l-connected": (3, lambda g, t: is_l_connected(g, t.ell)),
    "theta": (3, lambda g, t: contains_theta(g)),
    "non-bipartite": (4, lambda g, t: not is_k_colorable(g, 2)),
    "chi": (5, _chi_is),
    "k-critical": (6, lambda g, t: is_k_critical(g, t.k)),
    "property-Ck": (7, lambda g, t: satisfies_property_Ck(g, t.k)),
}


# -- objectives --------------------------------------------------------------
# name -> bound(n, k).  A survivor above the bound, or meeting it outside
# the stated extremal class, is a counterexample.  "count" has no bound and
# only tracks the maximum.


def _cert(g):
    return certificate(g)


def _extremal_certs(name, n, k):
    if name == "two-connected":
        return {_cert(make_G_nk(n, k))}
    if name == "cycle":
        return {_cert(make_cycle(n))}
    if name == "three-chromatic":
        if n % 2:
            return {_cert(make_cycle(n))}
        c = make_cycle(n - 1)
        return {_cert(Graph.from_edges(n, list(c.edges()) + [(0, n - 1)]))}
    return None


def _two_core_is_clique(g, k):
    core = l_core(g, 2)
    return core.n == k and core.m == k * (k - 1) // 2


OBJECTIVES = {
    "two-connected": lambda n, k: bounds.P_n_formula(n, k),
    "connected": lambda n, k: bounds.tomescu_bound(n, k),
    "cycle": lambda n, k: bounds.two_connected_bound(n, k),
    "three-chromatic": lambda n, k: bounds.three_chromatic_bound(n, k),
    "theta": lambda n, k: bounds.theta_bound(n, k),
    "count": lambda n, k: None,
}

# filters each objective needs for its claim to be meaningful
OBJECTIVE_FILTERS = {
    "two-connected": ["2-connected", "chi"],
    "connected": ["connected", "chi"],
    "cycle": ["2-connected"],
    "three-chromatic": ["connected", "non-bipartite"],
    "theta": ["connected", "theta"],
    "count": [],
}

MODES = ("verify-all", "find-max", "find-counterexample")


@dataclass
class SearchTask:
    n: int
    k: int = 4
    filters: list[str] = field(default_factory=list)
    objective: str = "count"
    mode: str = "verify-all"
    ell: int = 2
    delta: int = 0
    reorder: bool = True  # sort filters cheapest-first
    allow_large: bool = False
    keep_survivors: bool = True

    def validate(self):
        if self.mode not in MODES:
            raise SearchError(f"unknown mode {self.mode!r}; choose from {MODES}")
        if self.objective not in OBJECTIVES:
            raise SearchError(f"unknown objective {self.objective!r}; choose from {sorted(OBJECTIVES)}")
        for f in self.filters:
            if f not in FILTERS:
                raise SearchError(f"unknown filter {f!r}; choose from {sorted(FILTERS)}")
        check_cap(self.n, self.allow_large)

    def pipeline(self):
        names = list(dict.fromkeys(self.filters))
        if self.reorder:
            names.sort(key=lambda f: FILTERS[f][0])
        return names


@dataclass
class SearchOutcome:
    graphs_examined: int = 0
    survivors: list = field(default_factory=list)  # (graph6, value)
    verdict: str = "holds"
    counterexample: str | None = None
    max_value: int | None = None
    max_witnesses: list = field(default_factory=list)
    equality_witnesses: list = field(default_factory=list)
    survivor_count: int = 0

    def canonical(self):
        """Sort lists so sharded and serial runs compare equal."""
        self.survivors.sort()
        self.max_witnesses.sort()
        self.equality_witnesses.sort()
        return self

    def to_json(self) -> dict:
        d = asdict(self)
        d["survivors"] = [[g6, str(v)] for g6, v in self.survivors]
        d["max_value"] = None if self.max_value is None else str(self.max_value)
        d["graphs_examined"] = str(self.graphs_examined)
        d["survivor_count"] = str(self.survivor_count)
        return d


class _Scorer:
    def __init__(self, task: SearchTask):
        self.task = task
        self.preds = [FILTERS[f][1] for f in task.pipeline()]
        self.bound = OBJECTIVES[task.objective](task.n, task.k)
        self.ext = _extremal_certs(task.objective, task.n, task.k)

    def passes(self, g):
        t = self.task
        return all(p(g, t) for p in self.preds)

    def equality_ok(self, g):
        if self.task.objective == "connected":
            return _two_core_is_clique(g, self.task.k)
        if self.ext is None:
            return True
        return _cert(g) in self.ext

    def score(self, g, out: SearchOutcome):
        """Process one graph; return False to request a stop."""
        t = self.task
        out.graphs_examined += 1
        if not self.passes(g):
            return True
        try:
            p = count_colorings(g, t.k)
        except Exception as e:  # pragma: no cover - defensive
            raise SearchError(f"objective failed on {to_graph6(g)}: {e}") from e
        g6 = to_graph6(g)
        out.survivor_count += 1
        if t.keep_survivors:
            out.survivors.append((g6, p))
        if out.max_value is None or p > out.max_value:
            out.max_value = p
            out.max_witnesses = [g6]
        elif p == out.max_value:
            out.max_witnesses.append(g6)
        if self.bound is None:
            return True
        bad = p > self.bound
        if p == self.bound:
            out.equality_witnesses.append(g6)
            bad = not self.equality_ok(g)
        if bad and out.verdict == "holds":
            out.verdict = "counterexample"
            out.counterexample = g6
            if t.mode == "find-counterexample":
                return False
        return True


def _merge(a: SearchOutcome, b: SearchOutcome) -> SearchOutcome:
    a.graphs_examined += b.graphs_examined
    a.survivor_count += b.survivor_count
    a.survivors.extend(b.survivors)
    a.equality_witnesses.extend(b.equality_witnesses)
    if b.max_value is not None:
        if a.max_value is None or b.max_value > a.max_value:
            a.max_value, a.max_witnesses = b.max_value, list(b.max_witnesses)
        elif b.max_value == a.max_value:
            a.max_witnesses.extend(b.max_witnesses)
    if b.verdict != "holds" and a.verdict == "holds":
        a.verdict, a.counterexample = b.verdict, b.counterexample
    return a


def _run_chunk(args):
    task, parents = args
    scorer = _Scorer(task)
    out = SearchOutcome()
    backend = default_backend()
    for rows in parents:
        for c in children(task.n - 1, rows, backend):
            if not scorer.score(Graph._raw(task.n, c), out):
                return out
    return out


def _outcome_from_json(d) -> SearchOutcome:
    out = SearchOutcome(**{k: v for k, v in d.items()})
    out.graphs_examined = int(d["graphs_examined"])
    out.survivor_count = int(d["survivor_count"])
    out.max_value = None if d["max_value"] is None else int(d["max_value"])
    out.survivors = [(g6, int(v)) for g6, v in d["survivors"]]
    return out


def _save_checkpoint(path, task, done, out):
    payload = {"version": CHECKPOINT_VERSION, "task": asdict(task), "parents_done": done, "outcome": out.to_json()}
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def _load_checkpoint(path, task):
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("version") != CHECKPOINT_VERSION:
        raise SearchError(f"checkpoint version {payload.get('version')} != {CHECKPOINT_VERSION}")
    if payload["task"] != asdict(task):
        raise SearchError("checkpoint belongs to a different task")
    return payload["parents_done"], _outcome_from_json(payload["outcome"])


def _recheck(task: SearchTask, out: SearchOutcome, scorer: _Scorer):
    """Confirm a reported counterexample with the brute-force oracle."""
    g = from_graph6(out.counterexample)
    p = count_colorings_bruteforce(g, task.k)
    bound = scorer.bound
    if p > bound or (p == bound and not scorer.equality_ok(g)):
        return
    raise SearchError(f"engine and oracle disagree on {out.counterexample}: oracle gives {p}")


def run_task(
    task: SearchTask,
    jobs: int = 1,
    checkpoint: str | None = None,
    resume: bool = False,
    chunk: int = 64,
) -> SearchOutcome:
    """Run a search task; see the module docstring for sharding and resume."""
    task.validate()
    extra = [f for f in OBJECTIVE_FILTERS[task.objective] if f not in task.filters]
    task = replace(task, filters=list(task.filters) + extra)
    scorer = _Scorer(task)
    out = SearchOutcome()
    if task.n == 1:
        scorer.score(Graph(1), out)
        return out.canonical()
    parents = level(task.n - 1, allow_large=task.allow_large)
    start = 0
    if checkpoint and resume and os.path.exists(checkpoint):
        start, out = _load_checkpoint(checkpoint, task)
        log.info("resuming at parent %d of %d", start, len(parents))
    chunks = [(i, parents[i : i + chunk]) for i in range(start, len(parents), chunk)]
    stop = task.mode == "find-counterexample"

    def absorb(i, part):
        _merge(out, part)
        if checkpoint:
            _save_checkpoint(checkpoint, task, i, out)

    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            results = pool.imap(_run_chunk, [(task, c) for _, c in chunks])
            for (i, c), part in zip(chunks, results):
                absorb(i + len(c), part)
                if stop and out.verdict != "holds":
                    pool.terminate()
                    break
    else:
        for i, c in chunks:
            absorb(i + len(c), _run_chunk((task, c)))
            if stop and out.verdict != "holds":
                break
    if out.verdict != "holds":
        _recheck(task, out, scorer)
    return out.canonical()


def enumerate_k_critical(n: int, k: int, sink=None, allow_large: bool = False) -> int:
    """Emit one representative per class of k-critical graphs on n vertices.

    Critical graphs have minimum degree at least k - 1, which is checked
    first and prunes most classes before the colorability tests.
    """
    check_cap(n, allow_large)
    count = 0

    def take(g):
        nonlocal count
        if g.min_degree() >= k - 1 and is_k_critical(g, k):
            count += 1
            if sink is not None:
                sink(g)

    enumerate_graphs(n, take, allow_large=allow_large)
    return count
