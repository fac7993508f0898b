"""Closed-form bounds and extremal constants, all in exact arithmetic.

Integers stay integers.  The two non-integer critical-graph bounds are
:class:`fractions.Fraction`.  The 4-critical bound has fractional exponents
of 2 and 3, so it is carried as its 12th power (an integer) and compared
by raising the other side to the 12th power too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial
from typing import Sequence

from .graph import GraphError

C_MAX_BUDGET = 5_000_000


class BoundRangeError(GraphError):
    """Parameters outside the range where the expression is stated."""


class BudgetError(GraphError):
    pass


class ExclusionError(GraphError):
    """The closed form is known not to apply; use the direct P^(i) count."""


@dataclass(frozen=True)
class BoundResult:
    name: str
    params: dict = field(default_factory=dict)
    value: int | Fraction | "RadicalBound" = 0

    def as_json(self) -> dict:
        v = self.value
        if isinstance(v, RadicalBound):
            val = {"twelfth_power": str(v.twelfth_power)}
        elif isinstance(v, Fraction):
            val = {"numerator": str(v.numerator), "denominator": str(v.denominator)}
        else:
            val = str(v)
        return {"name": self.name, "params": {k: str(x) for k, x in self.params.items()}, "value": val}


def _need(cond, msg):
    if not cond:
        raise BoundRangeError(msg)


# -- first-order bounds ------------------------------------------------------


def tomescu_bound(n: int, k: int) -> int:
    """Max k-colorings of a connected k-chromatic graph: k!(k-1)^(n-k)."""
    _need(n >= k >= 4, f"needs n >= k >= 4, got n={n}, k={k}")
    return factorial(k) * (k - 1) ** (n - k)


def P_n_formula(n: int, k: int) -> int:
    """k-colorings of G_{n,k}: (k-1)!((k-1)^(n-k+1) + (-1)^(n-k))."""
    _need(n >= k >= 3, f"needs n >= k >= 3, got n={n}, k={k}")
    return factorial(k - 1) * ((k - 1) ** (n - k + 1) + (-1) ** (n - k))


def two_connected_bound(n: int, k: int) -> int:
    """k-colorings of C_n, the 2-connected maximum."""
    _need(n >= 3 and k >= 3, f"needs n >= 3 and k >= 3, got n={n}, k={k}")
    return (k - 1) ** n + (-1) ** n * (k - 1)


def theta_bound(n: int, k: int) -> Fraction:
    _need(k >= 2, "needs k >= 2")
    q = Fraction(k - 1)
    return q ** (n + 1) / k * (1 + 3 / q**3 + 1 / q**4)


def three_chromatic_bound(n: int, k: int) -> int:
    """Max k-colorings of a connected graph with chromatic number >= 3."""
    _need(n >= 3, "needs n >= 3")
    return (k - 1) ** n - ((k - 1) if n % 2 else (k - 1) ** 2)


def critical_Ck_bound(n: int, k: int) -> Fraction:
    """Upper bound for k-critical graphs with property C_k (split at n = k^2 - k)."""
    _need(n > k >= 4, f"needs n > k >= 4, got n={n}, k={k}")
    if n <= k * k - k:
        base = Fraction(7 * k + 5, 12) + Fraction(n * (k - 2), 12 * (n - k))
    else:
        base = Fraction(k + 1, 2) + Fraction(n * (k - 2), 6 * (n - k))
    return factorial(k) * base ** (n - k)


@dataclass(frozen=True)
class RadicalBound:
    """A positive real stored as its exact 12th power."""

    twelfth_power: int

    def __lt__(self, other):
        q = Fraction(other)
        if q <= 0:
            return False
        return self.twelfth_power * q.denominator**12 < q.numerator**12

    def __gt__(self, other):
        q = Fraction(other)
        if q <= 0:
            return True
        return self.twelfth_power * q.denominator**12 > q.numerator**12

    def decimal(self, digits: int = 50) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            d = (Decimal(self.twelfth_power).ln() / 12).exp()
            ctx.prec = digits
            return +d


def four_critical_bound(n: int) -> RadicalBound:
    """4! * 2^((11n-54)/12) * 3^((2n-3)/6), held as its 12th power."""
    _need(n >= 6, "needs n >= 6")
    return RadicalBound(24**12 * 2 ** (11 * n - 54) * 3 ** (4 * n - 6))


# -- minimum-degree second-order terms ---------------------------------------


def second_order_term(type_: int, n: int, k: int, delta: int) -> int:
    """P^(2)(k-2)^|Z| for a maximum graph of the given type."""
    _need(k >= 4 and delta >= 3, "needs k >= 4 and delta >= 3")
    f = factorial(k)
    if type_ == 1:
        e = n - delta - k + 1
        _need(e >= 0, "n too small")
        return f * (2 ** min(k - 2, delta - 1) - 1) * (k - 1) * (k - 2) ** e
    if type_ == 2:
        _need(k - 1 <= delta, "Type 2 needs k - 1 <= delta")
        e = n - delta - k + 1
        _need(e >= 0, "n too small")
        return f * (2 ** min(k - 2, delta - k + 2) - 1) * (k - 1) * (k - 2) ** e
    if type_ in (3, 4):
        _need(k - 1 >= delta, f"Type {type_} needs k - 1 >= delta")
        e = n - delta - k
        _need(e >= (1 if type_ == 4 else 0), "n too small")
        val = f * (2 ** (delta - 1) - 1) * (k - 1) ** 2 * (k - 2) ** e
        if type_ == 4:
            val += f * (k - 1) ** 2 * (k - 2) ** (e - 1)
        return val
    raise BoundRangeError(f"unknown type {type_}")


# -- the set-system optimisation c(r, s, t) ----------------------------------


def _pair(a: frozenset, b: frozenset, s: int) -> int:
    return 3 ** (s - len(a | b)) * 2 ** len(a ^ b)


def c_value(sets: Sequence, s: int) -> int:
    """sum over i < j of 3^(s - |Si u Sj|) * 2^|Si xor Sj|, sets inside range(s)."""
    fs = [frozenset(x) for x in sets]
    if len({len(x) for x in fs}) > 1:
        raise BoundRangeError("all sets must have the same size")
    for x in fs:
        if any(not 0 <= e < s for e in x):
            raise BoundRangeError(f"set {sorted(x)} leaves range({s})")
    return sum(_pair(a, b, s) for a, b in combinations(fs, 2))


def _c_max_shard(args):
    s, first, pool, i2, r = args
    pairs = {}
    best = None
    second = pool[i2]
    for rest in combinations_with_replacement(range(i2, len(pool)), r - 2):
        chosen = [first, second] + [pool[j] for j in rest]
        total = 0
        for a, b in combinations(chosen, 2):
            key = (a, b)
            v = pairs.get(key)
            if v is None:
                v = pairs[key] = _pair(a, b, s)
            total += v
        wit = tuple(tuple(sorted(x)) for x in chosen)
        if best is None or total > best[0] or (total == best[0] and wit < best[1]):
            best = (total, wit)
    return best


def c_max_candidates(r: int, s: int, t: int) -> int:
    """Number of sequences searched once S1 is pinned and order is ignored."""
    return comb(comb(s, t) + r - 2, r - 1) if r >= 2 else 1


def c_max(r: int, s: int, t: int, budget: int = C_MAX_BUDGET, jobs: int = 1):
    """Exact c(r, s, t) and the lexicographically least maximizing witness.

    S1 is pinned to {0..t-1}: every t-set is a relabelling of it.  The value
    is symmetric in the order of the sets, so the rest run over multisets.
    Sets are reported as sorted tuples over range(s).
    """
    if not (r >= 1 and s >= t >= 1):
        raise BoundRangeError("needs r >= 1 and s >= t >= 1")
    first = frozenset(range(t))
    if r == 1:
        return 0, (tuple(range(t)),)
    work = c_max_candidates(r, s, t)
    if work > budget:
        raise BudgetError(
            f"c_max({r},{s},{t}) needs {work} candidates > budget {budget}; "
            "raise the budget or add further symmetry reduction"
        )
    pool = [frozenset(c) for c in combinations(range(s), t)]
    tasks = [(s, first, pool, i2, r) for i2 in range(len(pool))]
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as p:
            results = p.map(_c_max_shard, tasks)
    else:
        results = [_c_max_shard(x) for x in tasks]
    best = None
    for res in results:
        if best is None or res[0] > best[0] or (res[0] == best[0] and res[1] < best[1]):
            best = res
    return best


def same_up_to_symmetry(a: Sequence, b: Sequence, s: int) -> bool:
    """True if a relabelling of range(s) maps the multiset a onto b."""
    from itertools import permutations

    ka = sorted(tuple(sorted(x)) for x in b)
    if len(a) != len(b):
        return False
    for p in permutations(range(s)):
        img = sorted(tuple(sorted(p[e] for e in x)) for x in a)
        if img == ka:
            return True
    return False


# -- third-order constants ---------------------------------------------------


def _sig_sets(sig):
    sets = getattr(sig, "sets", sig)
    return [frozenset(x) for x in sets]


def _has_common(sets):
    return bool(frozenset.intersection(*sets)) if sets else False


def third_order_signature(sig, k: int, delta: int) -> int:
    """P^(3) of a Type 1/2 graph whose X-vertices all have degree delta.

    Counts 3-colour patterns on Y under the premise that the colour missing
    from X shows up on Y.  That premise fails for k = 4 graphs whose
    signature has no vertex of Y common to all of X, so those raise.
    """
    sets = _sig_sets(sig)
    _need(len(sets) == k - 1, f"expected {k - 1} sets")
    _need(delta >= k >= 4, "needs delta >= k >= 4")
    want = delta - k + 2
    if any(len(x) != want for x in sets):
        raise BoundRangeError(f"every set needs size delta - k + 2 = {want}")
    if k == 4 and not _has_common(sets):
        raise ExclusionError("k = 4 Type 2 signature: count P^(3) directly with decomposition.p_series")
    return c_value(sets, delta) - (k - 1) * (k - 2) * 2 ** (k - 2) + comb(k - 1, 2)


def lconn_second_order_sum(sig) -> int:
    """sum over X of 2^(l - |N_Y(x)|) - 1; P^(2)/k! for a Type 1/2 graph."""
    sets = _sig_sets(sig)
    l = sig.delta
    if any(not x for x in sets):
        raise BoundRangeError("every X-vertex needs a neighbour in Y")
    return sum(2 ** (l - len(x)) - 1 for x in sets)


def lconn_third_order_sum(sig) -> int:
    """Pairwise inclusion-exclusion for P^(3)/k!, assuming the free colour
    appears on Y."""
    sets = _sig_sets(sig)
    l = sig.delta
    return sum(
        _pair(a, b, l) - 2 ** (l - len(a)) - 2 ** (l - len(b)) + 1 for a, b in combinations(sets, 2)
    )


# -- l-connected extremal constants ------------------------------------------


def lconn_second_order_constant(k: int, l: int) -> int:
    """Best P^(2)/k! among k-chromatic l-connected graphs (k >= l or k < l)."""
    _need(k >= 4 and l >= 3, "needs k >= 4 and l >= 3")
    if k >= l:
        return 2 ** (l - 2) * (2 * k - l - 1) - k + 1
    return (k - 1) * (2 ** (k - 2) - 1)


def lconn_third_order_constant_d(k: int) -> int:
    """P^(3)/k! of the disjoint-blocks construction (l >= (k-1)(k-2) + 1)."""
    _need(k >= 4, "needs k >= 4")
    return comb(k - 1, 2) * (2 ** (2 * k - 4) - 2 ** (k - 1) + 1)


def k4_third_order_small_l(l: int) -> int:
    """Closed form of P^(3)/4! for k = 4 and l in {3, 4}."""
    _need(l in (3, 4), "stated for l in {3, 4}")
    return (
        3 * (3 ** (l - 1) - 2**l + 1)
        - comb(l - 1, 2) * (5 * 3 ** (l - 3) - 2 ** (l - 1))
        + (l - 1) * (l - 4) * (3 ** (l - 2) - 2 ** (l - 2))
    )


K4_THIRD_ORDER_STATED = {5: 35, 6: 27}


def k4_lconn_constants(l: int) -> dict:
    """Stated (P^(2), P^(3)) constants, divided by 4!, for 4-chromatic l-connected maxima.

    ``p2_closed_form`` is the single constant 5 quoted for every l; the
    general formula gives 5 at l = 3 and 9 for l >= 4.  Both are returned.
    """
    _need(l >= 3, "needs l >= 3")
    if l <= 4:
        p3 = k4_third_order_small_l(l)
    elif l <= 6:
        p3 = K4_THIRD_ORDER_STATED[l]
    else:
        p3 = lconn_third_order_constant_d(4)
    return {"p2_closed_form": 5, "p2_general": lconn_second_order_constant(4, l), "p3": p3}
