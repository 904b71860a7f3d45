"""Digraph representation and structural primitives.

Vertices are dense 0-indexed integers.  Adjacency is stored as per-vertex
bit rows (Python ints used as bit vectors), which keeps membership tests,
neighbourhood intersections and subset scans cheap.  Everything here is
immutable after construction; operations are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import ArcMissing, BadParams, BudgetExceeded, NotAMatching

EXACT_SOLVER_CAP = 64
INDEPENDENCE_CAP = 30


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def popcount(mask: int) -> int:
    return mask.bit_count()


class Digraph:
    """A loopless digraph; 2-cycles allowed (opposite arcs between a pair)."""

    __slots__ = ("n", "out", "inn")

    def __init__(self, n: int, arcs: Sequence[tuple[int, int]] = ()):
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise BadParams(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise BadParams(f"self-loop at {u}")
            out[u] |= 1 << v
        self.n = n
        self.out = tuple(out)
        self.inn = self._derive_in(n, self.out)

    @staticmethod
    def _derive_in(n: int, out: Sequence[int]) -> tuple[int, ...]:
        inn = [0] * n
        for u in range(n):
            m = out[u]
            while m:
                b = m & -m
                inn[b.bit_length() - 1] |= 1 << u
                m ^= b
        return tuple(inn)

    @classmethod
    def from_out_masks(cls, masks: Sequence[int]) -> "Digraph":
        g = cls.__new__(cls)
        g.n = len(masks)
        for v, m in enumerate(masks):
            if m >> g.n:
                raise BadParams("mask exceeds vertex range")
            if m & (1 << v):
                raise BadParams(f"self-loop at {v}")
        g.out = tuple(masks)
        g.inn = cls._derive_in(g.n, g.out)
        return g

    # --- queries ---------------------------------------------------------

    @property
    def m(self) -> int:
        return sum(popcount(row) for row in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs in ascending lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.out[u])]

    def out_deg(self, v: int) -> int:
        return popcount(self.out[v])

    def in_deg(self, v: int) -> int:
        return popcount(self.inn[v])

    def total_deg(self, v: int) -> int:
        return self.out_deg(v) + self.in_deg(v)

    # --- derived graphs --------------------------------------------------

    def with_arcs(self, arcs: Sequence[tuple[int, int]]) -> "Digraph":
        out = list(self.out)
        for u, v in arcs:
            if u == v:
                raise BadParams(f"self-loop at {u}")
            out[u] |= 1 << v
        return Digraph.from_out_masks(out)

    def without_arcs(self, arcs: Sequence[tuple[int, int]]) -> "Digraph":
        out = list(self.out)
        for u, v in arcs:
            out[u] &= ~(1 << v)
        return Digraph.from_out_masks(out)

    def reverse(self) -> "Digraph":
        return Digraph.from_out_masks(self.inn)

    def symmetrize(self) -> "Digraph":
        """Underlying graph as a symmetric digraph."""
        return Digraph.from_out_masks([o | i for o, i in zip(self.out, self.inn)])

    def is_symmetric(self) -> bool:
        return self.out == self.inn

    def undirected_edges(self) -> list[tuple[int, int]]:
        """Unordered adjacent pairs {u,v} with u < v."""
        return [
            (u, v)
            for u in range(self.n)
            for v in bits((self.out[u] | self.inn[u]) >> (u + 1))
            for v in [v + u + 1]
        ]

    def __eq__(self, other) -> bool:
        return isinstance(other, Digraph) and self.out == other.out

    def __hash__(self) -> int:
        return hash(self.out)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


# --- certificate objects -------------------------------------------------


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint arcs."""

    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.arcs:
            if u in seen or v in seen or u == v:
                raise NotAMatching(f"shared endpoint in {self.arcs}")
            seen.add(u)
            seen.add(v)

    def vertices(self) -> set[int]:
        return {x for a in self.arcs for x in a}

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class HamiltonCycle:
    """Cyclic order on all vertices of the host; validate against the host."""

    order: tuple[int, ...]

    def arcs(self) -> list[tuple[int, int]]:
        o = self.order
        return [(o[i], o[(i + 1) % len(o)]) for i in range(len(o))]

    def is_valid(self, g: Digraph) -> bool:
        if sorted(self.order) != list(range(g.n)):
            return False
        return all(g.has_arc(u, v) for u, v in self.arcs())

    def canonical(self) -> "HamiltonCycle":
        """Rotate so the smallest vertex comes first."""
        i = self.order.index(min(self.order))
        return HamiltonCycle(self.order[i:] + self.order[:i])


@dataclass(frozen=True)
class CycleFactor:
    """Vertex-disjoint directed cycles covering all vertices."""

    cycles: tuple[tuple[int, ...], ...]

    def is_valid(self, g: Digraph, min_len: int = 2) -> bool:
        seen: set[int] = set()
        for cyc in self.cycles:
            if len(cyc) < min_len:
                return False
            for i, u in enumerate(cyc):
                v = cyc[(i + 1) % len(cyc)]
                if u in seen or not g.has_arc(u, v):
                    return False
                seen.add(u)
        return seen == set(range(g.n))

    def arcs(self) -> list[tuple[int, int]]:
        return [
            (c[i], c[(i + 1) % len(c)]) for c in self.cycles for i in range(len(c))
        ]


# --- degrees and classes -------------------------------------------------


def semidegrees(g: Digraph) -> tuple[int, int, int]:
    """(min outdegree, min indegree, min semidegree)."""
    dplus = min((g.out_deg(v) for v in range(g.n)), default=0)
    dminus = min((g.in_deg(v) for v in range(g.n)), default=0)
    return dplus, dminus, min(dplus, dminus)


@dataclass(frozen=True)
class DegreeSequencePair:
    out_seq: tuple[int, ...]
    in_seq: tuple[int, ...]


def degree_sequences(g: Digraph) -> DegreeSequencePair:
    """Out- and in-degree sequences, each sorted ascending (decoupled)."""
    return DegreeSequencePair(
        tuple(sorted(g.out_deg(v) for v in range(g.n))),
        tuple(sorted(g.in_deg(v) for v in range(g.n))),
    )


def classify(g: Digraph) -> str:
    """One of 'undirected', 'tournament', 'oriented', 'digraph'."""
    if g.n >= 2 and g.is_symmetric() and g.m > 0:
        return "undirected"
    two_cycles = any(g.out[v] & g.inn[v] for v in range(g.n))
    if two_cycles:
        return "undirected" if g.is_symmetric() else "digraph"
    full = (1 << g.n) - 1
    if all(g.out[v] | g.inn[v] == full ^ (1 << v) for v in range(g.n)):
        return "tournament"
    return "oriented"


def is_oriented(g: Digraph) -> bool:
    return not any(g.out[v] & g.inn[v] for v in range(g.n))


def is_tournament(g: Digraph) -> bool:
    full = (1 << g.n) - 1
    return is_oriented(g) and all(
        g.out[v] | g.inn[v] == full ^ (1 << v) for v in range(g.n)
    )


# --- connectivity --------------------------------------------------------


def _reach(adj: Sequence[int], start_mask: int) -> int:
    seen = start_mask
    frontier = start_mask
    while frontier:
        new = 0
        for v in bits(frontier):
            new |= adj[v]
        frontier = new & ~seen
        seen |= frontier
    return seen


def is_strongly_connected(g: Digraph) -> bool:
    if g.n == 0:
        raise BadParams("empty digraph")
    full = (1 << g.n) - 1
    return _reach(g.out, 1) == full and _reach(g.inn, 1) == full


def strongly_connected_within(g: Digraph, mask: int) -> bool:
    """Is the sub-digraph induced on ``mask`` strongly connected?"""
    if mask == 0:
        return True
    start = mask & -mask
    adj = [g.out[v] & mask for v in range(g.n)]
    radj = [g.inn[v] & mask for v in range(g.n)]
    return _reach(adj, start) == mask and _reach(radj, start) == mask


def _max_vertex_disjoint_paths(g: Digraph, s: int, t: int) -> int:
    # Unit-capacity max flow on the vertex-split network; n <= 64 keeps
    # Edmonds-Karp comfortable.
    n = g.n
    # node ids: v_in = v, v_out = v + n
    cap: dict[tuple[int, int], int] = {}
    for v in range(n):
        cap[(v, v + n)] = 1 if v not in (s, t) else n
    for u in range(n):
        for v in bits(g.out[u]):
            cap[(u + n, v)] = n
    src, sink = s + n, t
    flow = 0
    while True:
        parent: dict[int, int] = {src: src}
        queue = [src]
        while queue and sink not in parent:
            x = queue.pop(0)
            for (a, b), c in cap.items():
                if a == x and c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow
        x = sink
        while x != src:
            p = parent[x]
            cap[(p, x)] -= 1
            cap[(x, p)] = cap.get((x, p), 0) + 1
            x = p
        flow += 1


def vertex_connectivity(g: Digraph, *, brute_cap: int = 10) -> int:
    """Size of the smallest vertex set whose removal leaves a non-strongly
    connected digraph or a single vertex."""
    if g.n < 2:
        raise BadParams("need n >= 2")
    if g.n <= brute_cap:
        return _vertex_connectivity_brute(g)
    best = g.n - 1
    for s in range(g.n):
        for t in range(g.n):
            if s != t and not g.has_arc(s, t):
                best = min(best, _max_vertex_disjoint_paths(g, s, t))
    return best


def _vertex_connectivity_brute(g: Digraph) -> int:
    full = (1 << g.n) - 1
    for k in range(g.n):
        for removed in itertools.combinations(range(g.n), k):
            mask = full
            for v in removed:
                mask &= ~(1 << v)
            if popcount(mask) == 1 or not strongly_connected_within(g, mask):
                return k
    return g.n - 1


# --- independence --------------------------------------------------------


def _max_independent_set(n: int, adj: Sequence[int]) -> tuple[int, int]:
    """(size, mask) of a maximum independent set; branch and bound."""
    best = 0
    best_mask = 0

    def grow(mask: int, chosen: int, size: int) -> None:
        nonlocal best, best_mask
        if size + popcount(mask) <= best:
            return
        if mask == 0:
            if size > best:
                best, best_mask = size, chosen
            return
        # pivot on the max-degree vertex inside mask
        v = max(bits(mask), key=lambda x: popcount(adj[x] & mask))
        grow(mask & ~(1 << v) & ~adj[v], chosen | (1 << v), size + 1)
        grow(mask & ~(1 << v), chosen, size)

    # greedy initial bound
    mask = (1 << n) - 1
    greedy = 0
    while mask:
        v = min(bits(mask), key=lambda x: popcount(adj[x] & mask))
        greedy |= 1 << v
        mask &= ~(1 << v) & ~adj[v]
    best, best_mask = popcount(greedy), greedy
    grow((1 << n) - 1, 0, 0)
    return best, best_mask


def independence_numbers(
    g: Digraph, *, cap: int = INDEPENDENCE_CAP
) -> tuple[int, int]:
    """(alpha_0, alpha_2): largest arc-free set / largest 2-cycle-free set."""
    if g.n > cap:
        raise BudgetExceeded(f"n={g.n} above independence cap {cap}")
    any_adj = [g.out[v] | g.inn[v] for v in range(g.n)]
    two_adj = [g.out[v] & g.inn[v] for v in range(g.n)]
    a0, _ = _max_independent_set(g.n, any_adj)
    a2, _ = _max_independent_set(g.n, two_adj)
    return a0, a2


def max_arcfree_set(g: Digraph, *, cap: int = INDEPENDENCE_CAP) -> set[int]:
    if g.n > cap:
        raise BudgetExceeded(f"n={g.n} above independence cap {cap}")
    any_adj = [g.out[v] | g.inn[v] for v in range(g.n)]
    _, mask = _max_independent_set(g.n, any_adj)
    return set(bits(mask))


def dominated_pairs(g: Digraph) -> list[tuple[int, int]]:
    """Unordered pairs with a common in-neighbour, ascending order."""
    found: set[tuple[int, int]] = set()
    for v in range(g.n):
        outs = list(bits(g.out[v]))
        for i, x in enumerate(outs):
            for y in outs[i + 1 :]:
                found.add((x, y))
    return sorted(found)


# --- transformations -----------------------------------------------------


def contract_matching(
    g: Digraph, matching: Matching
) -> tuple[Digraph, Callable[[HamiltonCycle], HamiltonCycle]]:
    """Contract each matching arc x->y into a vertex with x's in-set and
    y's out-set.  Returns the contraction plus a lift from Hamilton cycles
    of the contraction to Hamilton cycles of ``g`` containing the matching.
    """
    for u, v in matching.arcs:
        if not g.has_arc(u, v):
            raise ArcMissing(f"({u},{v}) not in host")
    tails = {u for u, _ in matching.arcs}
    heads = {v for _, v in matching.arcs}
    keep = [v for v in range(g.n) if v not in tails and v not in heads]
    # new vertex order: untouched vertices first, then one per matching arc
    expansion: list[tuple[int, ...]] = [(v,) for v in keep]
    for u, v in matching.arcs:
        expansion.append((u, v))
    nn = len(expansion)

    # Arcs into the contraction target exist iff they entered x;
    # arcs out exist iff they left y.  Arcs at the discarded side vanish.
    in_target = {exp[0]: i for i, exp in enumerate(expansion)}
    out_source = {exp[-1]: i for i, exp in enumerate(expansion)}
    arcs = []
    for u, v in g.arcs():
        if u in out_source and v in in_target:
            a, b = out_source[u], in_target[v]
            if a != b:
                arcs.append((a, b))
    contracted = Digraph(nn, sorted(set(arcs)))

    def lift(h: HamiltonCycle) -> HamiltonCycle:
        order: list[int] = []
        for w in h.order:
            order.extend(expansion[w])
        return HamiltonCycle(tuple(order))

    return contracted, lift


def blow_up(
    g: Digraph,
    sizes: Sequence[int],
    rule: str | Callable[[int, int, int, int], bool] = "complete",
) -> tuple[Digraph, list[list[int]]]:
    """Replace each vertex by an independent set; insert one-way bipartite
    arc sets along every original arc.

    ``rule`` is either ``'complete'`` or a predicate
    ``rule(u, i, v, j)`` deciding whether copy i of u sends to copy j of v.
    Returns the blow-up and the per-original-vertex part map.
    """
    if len(sizes) != g.n or any(s <= 0 for s in sizes):
        raise BadParams("sizes must be positive, one per vertex")
    parts: list[list[int]] = []
    nxt = 0
    for s in sizes:
        parts.append(list(range(nxt, nxt + s)))
        nxt += s
    arcs = []
    for u, v in g.arcs():
        for i, a in enumerate(parts[u]):
            for j, b in enumerate(parts[v]):
                if rule == "complete" or (callable(rule) and rule(u, i, v, j)):
                    arcs.append((a, b))
    return Digraph(nxt, arcs), parts
