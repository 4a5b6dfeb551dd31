"""Capacity bounds over the subgroup lattice.

Provides the classical product bound t, the lattice index cutoff N, the
order-relaxed pair bound delta, the core-refined bound h, an exact pruned
search for the best subgroup-triple capacity beta_g, exclusion flags against
the cubic character-degree sum, and a solver for the induced exponent bound.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from . import errors
from .chars import CharacterDegrees, character_degrees, d_sum_int, d_sum_real
from .groups import Group
from .lattice import SubgroupLattice, enumerate_subgroups, normal_cores
from .tpp import satisfies_tpp


def neumann_admissible(group_order: int, a: int, b: int, c: int) -> bool:
    """Size test a*(b+c-1) <= group_order for sorted sizes a >= b >= c >= 1."""
    if not (a >= b >= c >= 1):
        raise errors.UnsortedSizes(f"sizes must satisfy a >= b >= c >= 1, got ({a}, {b}, {c})")
    return a * (b + c - 1) <= group_order


def compute_t(G: Group, lattice: SubgroupLattice) -> int:
    """Best product a*b*c over admissible triples of pairwise-distinct proper
    nontrivial subgroups, by order multiset; floor at |G| when none exists."""
    n = G.order
    counts = Counter(len(s) for s in lattice.items if 1 < len(s) < n)
    sizes = sorted(counts, reverse=True)
    best = n
    for ai, a in enumerate(sizes):
        for bi in range(ai, len(sizes)):
            b = sizes[bi]
            for ci in range(bi, len(sizes)):
                c = sizes[ci]
                mult = Counter((a, b, c))
                if any(counts[v] < m for v, m in mult.items()):
                    continue
                if a * (b + c - 1) <= n:
                    best = max(best, a * b * c)
    return best


def compute_N(G: Group, lattice: SubgroupLattice) -> int:
    """Largest 1-based index i with |S_i|*(|S_2|+|S_3|-1) <= |G|.

    Returns 0 when even the trivial subgroup fails the test and 1 when the
    lattice has fewer than three members.
    """
    items = lattice.items
    if len(items) < 3:
        return 1
    m = len(items[1]) + len(items[2]) - 1
    best = 0
    for idx, s in enumerate(items, start=1):
        if len(s) * m > G.order:
            break
        best = idx
    return best


def compute_delta(G: Group, lattice: SubgroupLattice, i: int):
    """Best |A|*|B| over distinct nontrivial subgroups A != B, both distinct
    from S_i, with |B| <= |A| <= |S_i| and the size test passing; None when
    no pair qualifies.  Relaxes position to order so the value is independent
    of how equal-order subgroups are arranged."""
    items = lattice.items
    if not 1 <= i <= len(items):
        raise errors.IndexOutOfRange(f"lattice index {i} outside 1..{len(items)}")
    si = len(items[i - 1])
    counts = Counter(len(s) for s in items)
    counts[si] -= 1
    n = G.order
    avail = sorted((v for v in counts if 2 <= v <= si and counts[v] >= 1), reverse=True)
    best = None
    for xi, x in enumerate(avail):
        for y in avail[xi:]:
            if x == y and counts[x] < 2:
                continue
            if si * (x + y - 1) <= n and (best is None or x * y > best):
                best = x * y
    return best


def delta_index_based(orders, i: int, group_order: int):
    """Audit variant of compute_delta using strict positions 1 < k < j < i
    over an explicit ascending-by-order arrangement; None when empty."""
    si = orders[i - 1]
    best = None
    for j in range(3, i):
        for k in range(2, j):
            a, b = orders[j - 1], orders[k - 1]
            if si * (a + b - 1) <= group_order:
                if best is None or a * b > best:
                    best = a * b
    return best


@dataclass(frozen=True)
class HCandidate:
    """One evaluated lattice index in the core-refined bound."""

    index: int
    order: int
    core_size: int
    delta: int | None
    left: int
    right: int | None
    minimum: int | None


@dataclass(frozen=True)
class HBound:
    b: int | None
    h: int
    candidates: list[HCandidate]


def compute_h(G: Group, lattice: SubgroupLattice, cores) -> HBound:
    """Core-refined bound h = max(b, |G|) where b maximises, over candidate
    indices 4..N, the minimum of |G|*|S_i|/|core(S_i)| and |S_i|*delta(S_i).

    `cores` is the normal-core list aligned with the lattice.  Candidates
    whose delta is absent contribute nothing.
    """
    n = G.order
    n_cap = compute_N(G, lattice)
    rows = []
    b = None
    for i in range(4, n_cap + 1):
        si = len(lattice[i])
        core = len(cores[i - 1])
        left = (n * si) // core
        delta = compute_delta(G, lattice, i)
        right = si * delta if delta is not None else None
        minimum = min(left, right) if right is not None else None
        rows.append(HCandidate(i, si, core, delta, left, right, minimum))
        if minimum is not None and (b is None or minimum > b):
            b = minimum
    h = n if b is None else max(b, n)
    return HBound(b=b, h=h, candidates=rows)


@dataclass(frozen=True)
class BetaResult:
    """Outcome of the exact triple search.

    `witness` is an ascending 1-based lattice index triple; when several
    triples attain the value the lexicographically smallest is kept.  `exact`
    is False when the check budget ran out, making `value` a lower bound.
    """

    value: int
    witness: tuple[int, int, int]
    exact: bool
    checks: int


def _class_ranges(orders):
    ranges = []
    lo = 0
    while lo < len(orders):
        hi = lo
        while hi < len(orders) and orders[hi] == orders[lo]:
            hi += 1
        ranges.append((orders[lo], lo, hi))
        lo = hi
    return ranges


def _concrete_triples(by_size, a, b, c):
    """Ascending index triples (i, j, k) with orders (c, b, a).

    Equal nontrivial orders draw distinct lattice members; the trivial
    subgroup is the only one allowed to repeat.
    """
    if a == b == c:
        start, stop = by_size[a]
        if a == 1:
            yield (start, start, start)
        else:
            yield from itertools.combinations(range(start, stop), 3)
    elif a == b:
        pairs = list(itertools.combinations(range(*by_size[a]), 2))
        for i in range(*by_size[c]):
            for j, k in pairs:
                yield (i, j, k)
    elif b == c:
        astart, astop = by_size[a]
        if b == 1:
            t = by_size[1][0]
            for k in range(astart, astop):
                yield (t, t, k)
        else:
            for i, j in itertools.combinations(range(*by_size[b]), 2):
                for k in range(astart, astop):
                    yield (i, j, k)
    else:
        for i in range(*by_size[c]):
            for j in range(*by_size[b]):
                for k in range(*by_size[a]):
                    yield (i, j, k)


def search_beta_g(G: Group, lattice: SubgroupLattice, budget: int | None = None, cores=None) -> BetaResult:
    """Exact best capacity |S||T||U| over valid subgroup triples.

    Enumerates order profiles in descending product, pruning with the size
    test and with normal-core product limits, and checks survivors with the
    full verifier.  The whole-group seed (1, 1, count) guarantees |G|.
    """
    items = lattice.items
    count = len(items)
    n = G.order
    if cores is None:
        cores = normal_cores(G, lattice)
    core_size = [len(s) for s in cores]
    orders = [len(s) for s in items]
    ranges = _class_ranges(orders)
    by_size = {size: (lo, hi) for size, lo, hi in ranges}
    cnt = {size: hi - lo for size, lo, hi in ranges}
    min_core = {size: min(core_size[lo:hi]) for size, lo, hi in ranges}

    checks = 1
    if not satisfies_tpp(G, items[0], items[0], items[-1]).holds:
        raise errors.InvariantViolation(
            "whole-group seed", "triple (G, 1, 1) failed verification"
        )
    seed = (1, 1, count)
    best = n
    witnesses = {seed}

    profiles = []
    sizes = sorted(cnt, reverse=True)
    for ai, a in enumerate(sizes):
        for bi in range(ai, len(sizes)):
            b = sizes[bi]
            for ci in range(bi, len(sizes)):
                c = sizes[ci]
                product = a * b * c
                if product < n:
                    continue
                if a * (b + c - 1) > n:
                    continue
                mult = Counter((a, b, c))
                if any(v > 1 and cnt[v] < m for v, m in mult.items()):
                    continue
                if any(
                    min_core[v] > 1 and (product // v) * min_core[v] > n for v in mult
                ):
                    continue
                profiles.append((a, b, c, product))
    profiles.sort(key=lambda r: (-r[3], r[:3]))

    for a, b, c, product in profiles:
        if product < best:
            break
        if product == best == n:
            # Any other triple of this product starts at index pair (1, 2)
            # or later, so the seed witness is already lexicographically
            # minimal and equal-product checks cannot change the result.
            continue
        for i, j, k in _concrete_triples(by_size, a, b, c):
            if any(
                core_size[x] > 1 and (product // orders[x]) * core_size[x] > n
                for x in (i, j, k)
            ):
                continue
            if budget is not None and checks >= budget:
                return BetaResult(best, min(witnesses), False, checks)
            checks += 1
            if satisfies_tpp(G, items[i], items[j], items[k]).holds:
                found = (i + 1, j + 1, k + 1)
                if product > best:
                    best = product
                    witnesses = {found}
                else:
                    witnesses.add(found)
    return BetaResult(best, min(witnesses), True, checks)


@dataclass(frozen=True)
class ExclusionFlags:
    t_le_d3: bool
    h_le_d3: bool
    beta_le_d3: bool | None


def exclusion_flags(t: int, h: int, beta_g: int | None, d3: int) -> ExclusionFlags:
    return ExclusionFlags(
        t_le_d3=t <= d3,
        h_le_d3=h <= d3,
        beta_le_d3=None if beta_g is None else beta_g <= d3,
    )


def solve_omega_bound(beta: int, degrees: CharacterDegrees, grid_step: float = 1e-4, tol: float = 1e-9):
    """Largest x in [2, 3] with sum(d_i**x) == beta**(x/3).

    Returns None when beta <= the cubic sum (no constraint), and raises
    NoRootInRange when beta exceeds it but no crossing lies in the interval.
    The crossing is bracketed on a descending grid of pitch `grid_step`,
    then bisected to width `tol`.
    """
    d3 = d_sum_int(degrees, 3)
    if beta <= d3:
        return None

    def gap(x: float) -> float:
        return d_sum_real(degrees, x) - beta ** (x / 3.0)

    steps = int(round(1.0 / grid_step))
    hi = 3.0
    bracket = None
    for k in range(1, steps + 1):
        lo = 2.0 if k == steps else 3.0 - k * grid_step
        if gap(lo) >= 0.0:
            bracket = (lo, hi)
            break
        hi = lo
    if bracket is None:
        raise errors.NoRootInRange(
            f"no crossing in [2, 3] for beta={beta} against {degrees.degrees}"
        )
    lo, hi = bracket
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gap(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class BoundsReport:
    group_name: str
    order: int
    subgroup_count: int
    N: int
    t: int
    b: int | None
    h: int
    d3: int
    beta_g: int | None
    beta_witness: tuple[int, int, int] | None
    beta_exact: bool | None
    flags: ExclusionFlags
    candidates: list[HCandidate]


def bounds_report(
    G: Group,
    lattice: SubgroupLattice | None = None,
    cores=None,
    degrees: CharacterDegrees | None = None,
    group_name: str = "",
    exact_beta: bool = False,
    beta_budget: int | None = None,
) -> BoundsReport:
    """Evaluate every bound for one group and bundle the results."""
    if lattice is None:
        lattice = enumerate_subgroups(G)
    if cores is None:
        cores = normal_cores(G, lattice)
    if degrees is None:
        degrees = character_degrees(G)
    t = compute_t(G, lattice)
    hb = compute_h(G, lattice, cores)
    d3 = d_sum_int(degrees, 3)
    beta_g = beta_witness = beta_exact = None
    if exact_beta:
        res = search_beta_g(G, lattice, budget=beta_budget, cores=cores)
        beta_exact = res.exact
        if res.exact:
            beta_g = res.value
            beta_witness = res.witness
    return BoundsReport(
        group_name=group_name,
        order=G.order,
        subgroup_count=lattice.count,
        N=compute_N(G, lattice),
        t=t,
        b=hb.b,
        h=hb.h,
        d3=d3,
        beta_g=beta_g,
        beta_witness=beta_witness,
        beta_exact=beta_exact,
        flags=exclusion_flags(t, hb.h, beta_g, d3),
        candidates=hb.candidates,
    )
