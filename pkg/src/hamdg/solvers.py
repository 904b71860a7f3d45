"""Exact Hamiltonicity solvers, counters and certificate search.

Every search returns a checkable certificate (or ``None``), never a bare
boolean.  Searches are deterministic: paths extend from the lowest-index
endpoint and neighbours are tried in ascending order, so the first
certificate found is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Optional, Sequence

from .core import (
    CycleFactor,
    Digraph,
    HamiltonCycle,
    Matching,
    bits,
    contract_matching,
    is_oriented,
    is_strongly_connected,
    popcount,
)
from .errors import BadParams, BudgetExceeded

import os

DEFAULT_BUDGET = int(os.environ.get("HAMDG_BUDGET", 10**8))


class _Budget:
    __slots__ = ("left",)

    def __init__(self, nodes: int):
        self.left = nodes

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("search node budget exhausted")


# --- one-factors via bipartite matching ----------------------------------


def _bipartite_matching(n_left: int, adj: Sequence[int]) -> Optional[list[int]]:
    """Perfect matching in a bipartite graph given as left->right bit rows.

    Returns ``match[l] = r`` or ``None`` if no perfect matching exists.
    """
    match_l = [-1] * n_left
    match_r: dict[int, int] = {}

    def augment(l: int, seen: set[int]) -> bool:
        for r in bits(adj[l]):
            if r in seen:
                continue
            seen.add(r)
            if r not in match_r or augment(match_r[r], seen):
                match_l[l] = r
                match_r[r] = l
                return True
        return False

    for l in range(n_left):
        if not augment(l, set()):
            return None
    return match_l


def one_factor(g: Digraph) -> Optional[CycleFactor]:
    """Spanning set of vertex-disjoint cycles, via a perfect matching in the
    bipartite double cover (out-copies vs in-copies)."""
    if g.n == 0:
        return CycleFactor(())
    succ = _bipartite_matching(g.n, g.out)
    if succ is None:
        return None
    seen = [False] * g.n
    cycles = []
    for v in range(g.n):
        if seen[v]:
            continue
        cyc = []
        x = v
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = succ[x]
        cycles.append(tuple(cyc))
    return CycleFactor(tuple(cycles))


# --- Hamilton cycle search ----------------------------------------------


def _ham_path_feasible(g: Digraph, visited: int, end: int, start: int) -> bool:
    """Cheap pruning: every unvisited vertex needs an available in-arc and
    out-arc, and the remainder must be weakly reachable."""
    n = g.n
    full = (1 << n) - 1
    un = full & ~visited
    if un == 0:
        return True
    avail_out = un | (1 << start)  # targets still usable
    avail_in = un | (1 << end)  # sources still usable
    for v in bits(un):
        if g.out[v] & (avail_out & ~(1 << v)) == 0:
            return False
        if g.inn[v] & (avail_in & ~(1 << v)) == 0:
            return False
    # endpoint must be able to move somewhere
    if g.out[end] & un == 0 and un:
        return False
    # reachability: all unvisited vertices must be reachable from `end`
    # inside un plus the closing vertex
    reach = 1 << end
    frontier = reach
    target = un | (1 << end)
    while frontier:
        new = 0
        for v in bits(frontier):
            new |= g.out[v] & target
        frontier = new & ~reach
        reach |= frontier
    return reach & un == un


def find_hamilton_cycle(
    g: Digraph, *, budget: int = DEFAULT_BUDGET
) -> Optional[HamiltonCycle]:
    """Pruned backtracking search for a Hamilton cycle."""
    n = g.n
    if n > 64:
        raise BadParams("exact solver capped at n <= 64")
    if n == 0:
        return None
    if n == 1:
        return None  # no self-loops, so no cycle on one vertex
    if not is_strongly_connected(g):
        return None
    if one_factor(g) is None:
        return None
    b = _Budget(budget)
    full = (1 << n) - 1
    path = [0]

    def extend(visited: int, end: int) -> bool:
        b.tick()
        if visited == full:
            return g.has_arc(end, 0)
        if not _ham_path_feasible(g, visited, end, 0):
            return False
        for v in bits(g.out[end] & ~visited):
            path.append(v)
            if extend(visited | (1 << v), v):
                return True
            path.pop()
        return False

    if extend(1, 0):
        return HamiltonCycle(tuple(path))
    return None


def enumerate_hamilton_cycles(
    g: Digraph, *, budget: int = DEFAULT_BUDGET
) -> Iterator[HamiltonCycle]:
    """All Hamilton cycles, anchored at vertex 0, lexicographic path order."""
    n = g.n
    if n < 2:
        return
    b = _Budget(budget)
    full = (1 << n) - 1
    path = [0]

    def extend(visited: int, end: int) -> Iterator[HamiltonCycle]:
        b.tick()
        if visited == full:
            if g.has_arc(end, 0):
                yield HamiltonCycle(tuple(path))
            return
        if not _ham_path_feasible(g, visited, end, 0):
            return
        for v in bits(g.out[end] & ~visited):
            path.append(v)
            yield from extend(visited | (1 << v), v)
            path.pop()

    yield from extend(1, 0)


def hamilton_cycle_through(
    g: Digraph, matching: Matching, *, budget: int = DEFAULT_BUDGET
) -> Optional[HamiltonCycle]:
    """Hamilton cycle containing every matching arc: contract, solve, lift."""
    if not matching.arcs:
        return find_hamilton_cycle(g, budget=budget)
    contracted, lift = contract_matching(g, matching)
    h = find_hamilton_cycle(contracted, budget=budget)
    if h is None:
        return None
    lifted = lift(h)
    return lifted.canonical()


# --- counting ------------------------------------------------------------


@dataclass(frozen=True)
class CountReport:
    hamilton_paths: int
    hamilton_cycles: int
    random_mean_paths: Fraction  # n!/2^(n-1)
    random_mean_cycles: Fraction  # (n-1)!/2^n


def count_hamilton(g: Digraph, *, cap: int = 24) -> CountReport:
    """Exact Hamilton path and cycle counts by subset DP over
    (visited set, endpoint).  Cycles are anchored at vertex 0, so each
    cyclic arc set is counted exactly once."""
    n = g.n
    if n > cap:
        raise BudgetExceeded(f"counting capped at n <= {cap}")
    if n == 0:
        return CountReport(0, 0, Fraction(0), Fraction(0))
    full = (1 << n) - 1
    paths = 0
    cycles = 0
    # iterate masks by popcount so transitions see finished predecessors
    by_size: list[list[int]] = [[] for _ in range(n + 1)]
    for mask in range(1, full + 1):
        by_size[popcount(mask)].append(mask)
    table: dict[tuple[int, int], int] = {}
    for v in range(n):
        table[(1 << v, v)] = 1
    for size in range(1, n):
        for mask in by_size[size]:
            for v in bits(mask):
                c = table.get((mask, v))
                if not c:
                    continue
                for w in bits(g.out[v] & ~mask):
                    key = (mask | (1 << w), w)
                    table[key] = table.get(key, 0) + c
    for v in range(n):
        paths += table.get((full, v), 0)
    # Hamilton cycles: anchored paths starting at 0 that close back to 0.
    anchored: dict[tuple[int, int], int] = {(1, 0): 1}
    for size in range(1, n):
        for mask in by_size[size]:
            if not mask & 1:
                continue
            for v in bits(mask):
                c = anchored.get((mask, v))
                if not c:
                    continue
                for w in bits(g.out[v] & ~mask):
                    key = (mask | (1 << w), w)
                    anchored[key] = anchored.get(key, 0) + c
    if n >= 2:
        for v in range(1, n):
            if g.has_arc(v, 0):
                cycles += anchored.get((full, v), 0)
    return CountReport(
        paths,
        cycles,
        Fraction(factorial(n), 2 ** (n - 1)),
        Fraction(factorial(n - 1), 2**n),
    )


def count_hamilton_naive(g: Digraph) -> tuple[int, int]:
    """Permutation-enumeration oracle for small n (independent of the DP)."""
    import itertools

    n = g.n
    paths = 0
    cycles = 0
    for perm in itertools.permutations(range(n)):
        if all(g.has_arc(perm[i], perm[i + 1]) for i in range(n - 1)):
            paths += 1
            if n >= 2 and perm[0] == 0 and g.has_arc(perm[-1], perm[0]):
                cycles += 1
    return paths, cycles


# --- pancyclicity and fixed-length cycles --------------------------------


def find_cycle_of_length(
    g: Digraph, length: int, *, budget: int = DEFAULT_BUDGET
) -> Optional[tuple[int, ...]]:
    """A directed cycle of exactly ``length`` vertices, or ``None``.

    Anchored enumeration: the smallest vertex of the cycle is tried in
    ascending order, and only larger vertices may appear after it.
    """
    if length < 2 or length > g.n:
        return None
    b = _Budget(budget)
    path: list[int] = []

    def extend(anchor: int, visited: int, end: int, depth: int) -> bool:
        b.tick()
        if depth == length:
            return g.has_arc(end, anchor)
        allowed = g.out[end] & ~visited
        allowed &= ~((1 << (anchor + 1)) - 1)  # only vertices > anchor
        for v in bits(allowed):
            path.append(v)
            if extend(anchor, visited | (1 << v), v, depth + 1):
                return True
            path.pop()
        return False

    for anchor in range(g.n - length + 1):
        path[:] = [anchor]
        if extend(anchor, 1 << anchor, anchor, 1):
            return tuple(path)
    return None


@dataclass(frozen=True)
class PancyclicReport:
    holds: bool
    min_length: int
    cycles: dict[int, tuple[int, ...]]
    missing: Optional[int]  # first missing length when not pancyclic


def is_pancyclic(
    g: Digraph, *, budget: int = DEFAULT_BUDGET, cap: int = 20
) -> PancyclicReport:
    """Cycle of every length from the class minimum (2 for digraphs, 3 for
    oriented graphs and tournaments) up to n."""
    if g.n > cap:
        raise BudgetExceeded(f"pancyclicity capped at n <= {cap}")
    lmin = 3 if is_oriented(g) else 2
    found: dict[int, tuple[int, ...]] = {}
    for length in range(lmin, g.n + 1):
        cyc = find_cycle_of_length(g, length, budget=budget)
        if cyc is None:
            return PancyclicReport(False, lmin, found, length)
        found[length] = cyc
    return PancyclicReport(True, lmin, found, None)


# --- powers of Hamilton cycles -------------------------------------------


def kth_power_hamilton(
    g: Digraph, k: int, *, budget: int = DEFAULT_BUDGET
) -> Optional[HamiltonCycle]:
    """Cyclic order where every vertex sends an arc to each of the next k."""
    if k < 1:
        raise BadParams("k >= 1 required")
    if k == 1:
        return find_hamilton_cycle(g, budget=budget)
    n = g.n
    if n > 16:
        raise BudgetExceeded("kth power search capped at n <= 16 for k >= 2")
    if n < k + 1:
        return None
    b = _Budget(budget)
    full = (1 << n) - 1
    order = [0]

    def extend(visited: int) -> bool:
        b.tick()
        pos = len(order)
        if visited == full:
            # wrap-around constraints for the last k positions
            for i in range(n - k, n):
                for j in range(1, k + 1):
                    if i + j >= n and not g.has_arc(order[i], order[(i + j) % n]):
                        return False
            return True
        # candidates must receive arcs from each of the previous min(pos,k)
        cand = full & ~visited
        for back in range(1, min(pos, k) + 1):
            cand &= g.out[order[pos - back]]
        for v in bits(cand):
            order.append(v)
            if extend(visited | (1 << v)):
                return True
            order.pop()
        return False

    # anchor at vertex 0: cyclic symmetry makes other starts redundant
    if extend(1):
        return HamiltonCycle(tuple(order))
    return None


def validate_kth_power(g: Digraph, h: HamiltonCycle, k: int) -> bool:
    n = len(h.order)
    return sorted(h.order) == list(range(g.n)) and all(
        g.has_arc(h.order[i], h.order[(i + j) % n])
        for i in range(n)
        for j in range(1, k + 1)
    )


# --- k-ordered Hamilton cycles -------------------------------------------


def k_ordered_hamilton(
    g: Digraph, sequence: Sequence[int], *, budget: int = DEFAULT_BUDGET
) -> Optional[HamiltonCycle]:
    """Hamilton cycle visiting ``sequence`` in the given cyclic order."""
    seq = list(sequence)
    if len(set(seq)) != len(seq):
        raise BadParams("sequence vertices must be distinct")
    if not seq:
        return find_hamilton_cycle(g, budget=budget)
    n = g.n
    b = _Budget(budget)
    full = (1 << n) - 1
    in_seq = {v: i for i, v in enumerate(seq)}
    path = [seq[0]]

    def extend(visited: int, end: int, next_idx: int) -> bool:
        b.tick()
        if visited == full:
            return next_idx == len(seq) and g.has_arc(end, seq[0])
        for v in bits(g.out[end] & ~visited):
            idx = in_seq.get(v)
            if idx is not None and idx != next_idx:
                continue
            path.append(v)
            if extend(visited | (1 << v), v, next_idx + (idx is not None)):
                return True
            path.pop()
        return False

    if extend(1 << seq[0], seq[0], 1):
        return HamiltonCycle(tuple(path))
    return None


# --- arbitrarily oriented Hamilton cycles and paths ----------------------


@dataclass(frozen=True)
class OrientationPattern:
    """Sign sequence over {+1 forward, -1 backward}; one sign per step."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise BadParams("signs must be +-1")

    @classmethod
    def forward(cls, n: int) -> "OrientationPattern":
        return cls((1,) * n)

    @classmethod
    def antidirected(cls, n: int) -> "OrientationPattern":
        if n % 2:
            raise BadParams("antidirected cycle patterns need even length")
        return cls(tuple(1 if i % 2 == 0 else -1 for i in range(n)))

    @classmethod
    def from_bits(cls, value: int, n: int) -> "OrientationPattern":
        return cls(tuple(1 if value >> i & 1 else -1 for i in range(n)))


def _pattern_search(
    g: Digraph, signs: Sequence[int], closed: bool, budget: int
) -> Optional[tuple[int, ...]]:
    n = g.n
    length = n if closed else n  # vertices in the order
    if closed and len(signs) != n:
        raise BadParams("cycle pattern length must equal n")
    if not closed and len(signs) != n - 1:
        raise BadParams("path pattern length must equal n-1")
    b = _Budget(budget)
    full = (1 << n) - 1
    order: list[int] = []

    def step_mask(cur: int, sign: int) -> int:
        return g.out[cur] if sign == 1 else g.inn[cur]

    def extend(visited: int, pos: int) -> bool:
        b.tick()
        if visited == full:
            if not closed:
                return True
            s = signs[n - 1]
            u, v = order[-1], order[0]
            return g.has_arc(u, v) if s == 1 else g.has_arc(v, u)
        cand = step_mask(order[-1], signs[pos - 1]) & ~visited
        for v in bits(cand):
            order.append(v)
            if extend(visited | (1 << v), pos + 1):
                return True
            order.pop()
        return False

    for start in range(n):
        order[:] = [start]
        if extend(1 << start, 1):
            return tuple(order)
    return None


def oriented_hamilton(
    g: Digraph, pattern: OrientationPattern, *, budget: int = DEFAULT_BUDGET
) -> Optional[tuple[int, ...]]:
    """Cyclic vertex order realizing the sign pattern: sign i applies to the
    step from position i to i+1 (mod n)."""
    if g.n > 18:
        raise BudgetExceeded("oriented Hamilton search capped at n <= 18")
    return _pattern_search(g, pattern.signs, True, budget)


def oriented_hamilton_path(
    g: Digraph, pattern: OrientationPattern, *, budget: int = DEFAULT_BUDGET
) -> Optional[tuple[int, ...]]:
    """Vertex order realizing a path orientation pattern of length n-1."""
    if g.n > 18:
        raise BudgetExceeded("oriented Hamilton search capped at n <= 18")
    return _pattern_search(g, pattern.signs, False, budget)


def validate_oriented(
    g: Digraph, order: Sequence[int], pattern: OrientationPattern, closed: bool
) -> bool:
    n = len(order)
    if sorted(order) != list(range(g.n)):
        return False
    steps = n if closed else n - 1
    for i in range(steps):
        u, v = order[i], order[(i + 1) % n]
        s = pattern.signs[i]
        if s == 1 and not g.has_arc(u, v):
            return False
        if s == -1 and not g.has_arc(v, u):
            return False
    return True


# --- cycle factors with prescribed lengths -------------------------------


def disjoint_cycle_factor(
    g: Digraph, lengths: Sequence[int], *, budget: int = DEFAULT_BUDGET
) -> Optional[CycleFactor]:
    """Vertex-disjoint cycles with exactly the prescribed length multiset."""
    lmin = 3 if is_oriented(g) else 2
    if sum(lengths) != g.n:
        raise BadParams("lengths must sum to n")
    if any(l < lmin for l in lengths):
        raise BadParams(f"cycle lengths must be >= {lmin} for this class")
    b = _Budget(budget)
    full = (1 << g.n) - 1

    def cycles_through(
        anchor: int, length: int, avail: int
    ) -> Iterator[tuple[int, ...]]:
        # cycles of given length with smallest vertex = anchor, inside avail
        path = [anchor]

        def extend(visited: int, end: int, depth: int) -> Iterator[tuple[int, ...]]:
            b.tick()
            if depth == length:
                if g.has_arc(end, anchor):
                    yield tuple(path)
                return
            allowed = g.out[end] & avail & ~visited
            allowed &= ~((1 << (anchor + 1)) - 1)
            for v in bits(allowed):
                path.append(v)
                yield from extend(visited | (1 << v), v, depth + 1)
                path.pop()

        yield from extend(1 << anchor, anchor, 1)

    chosen: list[tuple[int, ...]] = []

    def solve(avail: int, remaining: tuple[int, ...]) -> bool:
        if avail == 0:
            return not remaining
        anchor = (avail & -avail).bit_length() - 1
        tried = set()
        for i, length in enumerate(remaining):
            if length in tried:
                continue
            tried.add(length)
            rest = remaining[:i] + remaining[i + 1 :]
            for cyc in cycles_through(anchor, length, avail):
                mask = 0
                for v in cyc:
                    mask |= 1 << v
                chosen.append(cyc)
                if solve(avail & ~mask, rest):
                    return True
                chosen.pop()
        return False

    if solve(full, tuple(sorted(lengths))):
        return CycleFactor(tuple(chosen))
    return None


# --- oriented tree embedding ---------------------------------------------


def embed_tree(
    host: Digraph, tree: Digraph, *, budget: int = DEFAULT_BUDGET
) -> Optional[dict[int, int]]:
    """Injective arc-preserving embedding of an oriented tree into a host.

    ``tree`` must be an orientation of an undirected tree.
    """
    k = tree.n
    if k > host.n:
        return None
    und_deg = [popcount(tree.out[v] | tree.inn[v]) for v in range(k)]
    if tree.m != k - 1 or (k > 1 and not _tree_connected(tree)):
        raise BadParams("tree argument is not an oriented tree")
    # BFS order from vertex 0; each later vertex has exactly one earlier
    # neighbour (its parent) since the underlying graph is a tree.
    order = [0]
    seen = {0}
    idx = 0
    while idx < len(order):
        v = order[idx]
        idx += 1
        for w in bits(tree.out[v] | tree.inn[v]):
            if w not in seen:
                seen.add(w)
                order.append(w)
    parent: dict[int, tuple[int, bool]] = {}
    for v in order[1:]:
        for w in bits(tree.out[v] | tree.inn[v]):
            if w in parent or w == order[0]:
                parent[v] = (w, tree.has_arc(w, v))  # True: parent -> child
                break
    b = _Budget(budget)
    assign: dict[int, int] = {}
    used = 0

    def place(i: int) -> bool:
        nonlocal used
        b.tick()
        if i == len(order):
            return True
        v = order[i]
        if i == 0:
            cand = (1 << host.n) - 1
        else:
            p, down = parent[v]
            hp = assign[p]
            cand = (host.out[hp] if down else host.inn[hp]) & ~used
        for hv in bits(cand):
            assign[v] = hv
            used |= 1 << hv
            if place(i + 1):
                return True
            used &= ~(1 << hv)
            del assign[v]
        return False

    if place(0):
        return dict(assign)
    return None


def _tree_connected(tree: Digraph) -> bool:
    und = [tree.out[v] | tree.inn[v] for v in range(tree.n)]
    seen = 1
    frontier = 1
    while frontier:
        new = 0
        for v in bits(frontier):
            new |= und[v]
        frontier = new & ~seen
        seen |= frontier
    return seen == (1 << tree.n) - 1


# --- rotation-extension heuristic ----------------------------------------


def rotation_extension(
    g: Digraph,
    start: Optional[CycleFactor] = None,
    *,
    max_restarts: Optional[int] = None,
) -> Optional[HamiltonCycle]:
    """Heuristic Hamilton cycle search for dense digraphs.

    Starts from a 1-factor, opens one cycle into a path, then alternates
    absorption of other cycles with chord-based re-splitting.  May fail on
    graphs where the exact solver succeeds; failure is returned as ``None``.
    """
    n = g.n
    if n < 2:
        return None
    factor = start if start is not None else one_factor(g)
    if factor is None:
        return None
    if len(factor.cycles) == 1:
        h = HamiltonCycle(factor.cycles[0])
        return h if h.is_valid(g) else None
    if max_restarts is None:
        max_restarts = n * n
    cycles = [list(c) for c in factor.cycles]
    # open the first cycle into a path
    path = cycles.pop(0)
    steps = 0
    limit = max_restarts * n
    while steps < limit:
        steps += 1
        if not cycles:
            if g.has_arc(path[-1], path[0]):
                return HamiltonCycle(tuple(path))
            # re-split: chord from the endpoint back into the path
            moved = False
            for i in range(len(path) - 2, 0, -1):
                if g.has_arc(path[-1], path[i]):
                    cycles.append(path[i:])
                    path = path[:i]
                    moved = True
                    break
            if not moved:
                return None
            continue
        # extend forward: endpoint out-neighbour on another cycle
        extended = False
        for ci, cyc in enumerate(cycles):
            hit = next((j for j, v in enumerate(cyc) if g.has_arc(path[-1], v)), None)
            if hit is not None:
                path = path + cyc[hit:] + cyc[:hit]
                cycles.pop(ci)
                extended = True
                break
        if extended:
            continue
        # extend backward: start in-neighbour on another cycle
        for ci, cyc in enumerate(cycles):
            hit = next(
                (j for j, v in enumerate(cyc) if g.has_arc(v, path[0])), None
            )
            if hit is not None:
                path = cyc[hit + 1 :] + cyc[: hit + 1] + path
                cycles.pop(ci)
                extended = True
                break
        if extended:
            continue
        # rotate: close a suffix of the path into a cycle and retry
        moved = False
        for i in range(len(path) - 2, 0, -1):
            if g.has_arc(path[-1], path[i]):
                cycles.append(path[i:])
                path = path[:i]
                moved = True
                break
        if not moved:
            return None
    return None
