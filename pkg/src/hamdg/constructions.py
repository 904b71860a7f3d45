"""Deterministic generators for extremal examples and tournament corpora.

Every generator returns the digraph plus a part map (name -> vertex list)
so structural claims can be asserted without recomputation.  Identical
(family, params, seed) always yields bit-identical output.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .core import Digraph
from .errors import BadParams

PartMap = dict[str, list[int]]


# --- classic graphs ------------------------------------------------------


def complete_digraph(n: int) -> Digraph:
    if n < 1:
        raise BadParams("n >= 1")
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def complete_graph(n: int) -> Digraph:
    """Complete undirected graph as a symmetric digraph."""
    return complete_digraph(n)


def complete_bipartite_digraph(a: int, b: int) -> Digraph:
    if a < 1 or b < 1:
        raise BadParams("class sizes >= 1")
    arcs = []
    for u in range(a):
        for v in range(a, a + b):
            arcs.append((u, v))
            arcs.append((v, u))
    return Digraph(a + b, arcs)


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise BadParams("n >= 2")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_classic(kind: str, *params: int) -> Digraph:
    table = {
        "complete_digraph": complete_digraph,
        "complete_graph": complete_graph,
        "complete_bipartite_digraph": complete_bipartite_digraph,
        "directed_cycle": directed_cycle,
    }
    if kind not in table:
        raise BadParams(f"unknown classic kind {kind!r}")
    return table[kind](*params)


# --- tournaments ---------------------------------------------------------


def circulant_tournament(n: int, shifts: Optional[Sequence[int]] = None) -> Digraph:
    """Tournament with arcs i -> i+s (mod n) for each shift s.

    Odd n gives the rotational (regular) tournament.  For even n the n/2
    difference class pairs with itself, so those arcs run from the lower
    half to the upper half; the result is near-regular rather than
    regular.
    """
    if n < 1:
        raise BadParams("need n >= 1")
    if shifts is None:
        shifts = range(1, (n - 1) // 2 + 1)
    shifts = sorted(set(shifts))
    chosen = set(shifts)
    if n % 2 == 0 and n // 2 in chosen:
        raise BadParams("the n/2 shift is handled implicitly for even n")
    for d in range(1, n):
        if d == n - d:
            continue
        if (d in chosen) == (n - d in chosen):
            raise BadParams("shifts must pick exactly one of d, n-d for each d")
    arcs = [(i, (i + s) % n) for i in range(n) for s in shifts]
    if n % 2 == 0:
        arcs += [(i, i + n // 2) for i in range(n // 2)]
    return Digraph(n, arcs)


def transitive_tournament(n: int) -> Digraph:
    return Digraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_tournament(n: int, seed: int) -> Digraph:
    """Each pair oriented by an independent fair coin (counter-based RNG)."""
    rng = np.random.Generator(np.random.Philox(seed))
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.integers(0, 2):
                arcs.append((i, j))
            else:
                arcs.append((j, i))
    return Digraph(n, arcs)


def random_regular_tournament(n: int, seed: int, *, steps: Optional[int] = None) -> Digraph:
    """Seeded regular tournament: circulant start, then triangle-reversal
    switchings (reverse a directed 3-cycle), which preserve all semidegrees."""
    if n % 2 == 0:
        raise BadParams("regular tournaments need odd n")
    g = circulant_tournament(n)
    out = list(g.out)
    rng = np.random.Generator(np.random.Philox(seed))
    if steps is None:
        steps = 50 * n * n
    for _ in range(steps):
        a, b, c = rng.choice(n, size=3, replace=False)
        a, b, c = int(a), int(b), int(c)
        if out[a] >> b & 1 and out[b] >> c & 1 and out[c] >> a & 1:
            out[a] &= ~(1 << b)
            out[b] &= ~(1 << c)
            out[c] &= ~(1 << a)
            out[b] |= 1 << a
            out[c] |= 1 << b
            out[a] |= 1 << c
    return Digraph.from_out_masks(out)


def gen_tournament(n: int, kind: str, *, seed: int = 0, shifts=None) -> Digraph:
    if kind == "circulant":
        return circulant_tournament(n, shifts)
    if kind == "random":
        return random_tournament(n, seed)
    if kind == "random_regular":
        return random_regular_tournament(n, seed)
    if kind == "transitive":
        return transitive_tournament(n)
    raise BadParams(f"unknown tournament kind {kind!r}")


def random_digraph(n: int, arc_prob: float, seed: int) -> Digraph:
    """Each ordered pair gets an arc independently with probability arc_prob."""
    rng = np.random.Generator(np.random.Philox(seed))
    sample = rng.random((n, n))
    arcs = [
        (u, v) for u in range(n) for v in range(n) if u != v and sample[u, v] < arc_prob
    ]
    return Digraph(n, arcs)


def random_regular_graph(n: int, d: int, seed: int, *, steps: Optional[int] = None) -> Digraph:
    """Seeded d-regular undirected graph (as symmetric digraph).

    Starts from a circulant base and applies double-edge switchings.
    """
    if n * d % 2 or d >= n:
        raise BadParams("need d < n and n*d even")
    edges: set[tuple[int, int]] = set()

    def add(u, v):
        edges.add((min(u, v), max(u, v)))

    k = d // 2
    for s in range(1, k + 1):
        for i in range(n):
            add(i, (i + s) % n)
    if d % 2:
        if n % 2:
            raise BadParams("odd degree needs even n")
        for i in range(n // 2):
            add(i, i + n // 2)
    rng = np.random.Generator(np.random.Philox(seed))
    if steps is None:
        steps = 30 * n * d
    elist = sorted(edges)
    for _ in range(steps):
        i, j = rng.integers(0, len(elist), size=2)
        (a, b), (c, e) = elist[int(i)], elist[int(j)]
        if len({a, b, c, e}) < 4:
            continue
        # swap to (a,c),(b,e) keeping degrees
        n1, n2 = (min(a, c), max(a, c)), (min(b, e), max(b, e))
        if n1 in edges or n2 in edges:
            continue
        edges.remove((a, b))
        edges.remove((c, e))
        edges.add(n1)
        edges.add(n2)
        elist = sorted(edges)
    return Digraph(n, [(u, v) for u, v in edges] + [(v, u) for u, v in edges])


# --- balanced bipartite orientation --------------------------------------


def _bipartite_tournament_arcs(
    left: Sequence[int], right: Sequence[int]
) -> list[tuple[int, int]]:
    """Orient the complete bipartite graph as regularly as possible:
    left[i] -> right[j] iff (i + j) even, else the reverse.  Per-vertex
    in/out imbalance is at most 1."""
    arcs = []
    for i, u in enumerate(left):
        for j, v in enumerate(right):
            if (i + j) % 2 == 0:
                arcs.append((u, v))
            else:
                arcs.append((v, u))
    return arcs


def _regular_tournament_arcs(part: Sequence[int]) -> list[tuple[int, int]]:
    """Circulant regular tournament on the given (odd-sized) vertex list."""
    k = len(part)
    if k % 2 == 0:
        raise BadParams("regular tournament part needs odd size")
    return [
        (part[i], part[(i + s) % k])
        for i in range(k)
        for s in range(1, (k - 1) // 2 + 1)
    ]


# --- extremal families ---------------------------------------------------


def fig1(s: int) -> tuple[Digraph, PartMap]:
    """(3s-1)-regular 2-connected undirected graph on 9s+2 vertices with no
    Hamilton cycle: three cliques opened along removed matchings, plus two
    connector vertices wired to the A-sides and B-sides."""
    if s < 2:
        raise BadParams("s >= 2")
    parts: PartMap = {}
    arcs = []
    a_sizes = [s, s, s - 1]
    base = 0
    for i in range(3):
        clique = list(range(base, base + 3 * s))
        base += 3 * s
        parts[f"K{i+1}"] = clique
        ai = clique[: a_sizes[i]]
        bi = clique[a_sizes[i] : 2 * a_sizes[i]]
        parts[f"A{i+1}"] = ai
        parts[f"B{i+1}"] = bi
        removed = set(zip(ai, bi))
        for x in range(len(clique)):
            for y in range(x + 1, len(clique)):
                u, v = clique[x], clique[y]
                if (u, v) in removed:
                    continue
                arcs.append((u, v))
                arcs.append((v, u))
    a, b = base, base + 1
    parts["a"] = [a]
    parts["b"] = [b]
    for i in range(3):
        for v in parts[f"A{i+1}"]:
            arcs += [(a, v), (v, a)]
        for v in parts[f"B{i+1}"]:
            arcs += [(b, v), (v, b)]
    return Digraph(base + 2, arcs), parts


def fig2(n: int) -> tuple[Digraph, PartMap]:
    """Non-Hamiltonian strongly connected digraph whose only non-adjacent
    (dominated) pairs {z,u}, u in the big complete part, sit exactly at
    total degree sum 2n-2."""
    if n < 5:
        raise BadParams("n >= 5")
    k = list(range(n - 3))
    x, y, z = n - 3, n - 2, n - 1
    arcs = []
    for u in k:
        for v in k:
            if u != v:
                arcs.append((u, v))
    # complete digraph on {x,y,z} minus the arc x -> z
    for u in (x, y, z):
        for v in (x, y, z):
            if u != v and not (u == x and v == z):
                arcs.append((u, v))
    for u in k:
        arcs += [(x, u), (u, x), (y, u)]
    return Digraph(n, arcs), {"K": k, "x": [x], "y": [y], "z": [z]}


def fig3_haggkvist(m: int) -> tuple[Digraph, PartMap]:
    """Oriented graph on n=4m+3 (m odd) with minimum semidegree one below
    the Hamiltonicity threshold and no 1-factor: parts A,B,C,D with
    A->B->C->D->A complete and B,D joined by a balanced bipartite
    tournament."""
    if m < 1 or m % 2 == 0:
        raise BadParams("m must be odd and >= 1")
    sizes = {"A": m, "B": m + 1, "C": m, "D": m + 2}
    parts: PartMap = {}
    base = 0
    for name in "ABCD":
        parts[name] = list(range(base, base + sizes[name]))
        base += sizes[name]
    arcs = []
    arcs += _regular_tournament_arcs(parts["A"])
    arcs += _regular_tournament_arcs(parts["C"])
    arcs += _bipartite_tournament_arcs(parts["B"], parts["D"])
    for src, dst in (("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")):
        for u in parts[src]:
            for v in parts[dst]:
                arcs.append((u, v))
    return Digraph(base, arcs), parts


def fig4_square(m: int) -> tuple[Digraph, PartMap]:
    """Oriented graph with no square of a Hamilton cycle.

    Sizes |A|=m, |B|=m-1, |C|=2m+1, |D|=m-1, |E|=m+1 (m even).  B, C, D
    induce regular tournaments; A and E are independent.  One-way complete
    orientations: A->C, B->C, C->D, C->E, D->A, D->B, E->A, E->D; balanced
    two-way bipartite orientations between A,B and between B,E.  Any squared
    Hamilton cycle would need a B-vertex between consecutive E-visits, and
    |B| < |E|.
    """
    if m < 2 or m % 2:
        raise BadParams("m must be even and >= 2")
    sizes = {"A": m, "B": m - 1, "C": 2 * m + 1, "D": m - 1, "E": m + 1}
    parts: PartMap = {}
    base = 0
    for name in "ABCDE":
        parts[name] = list(range(base, base + sizes[name]))
        base += sizes[name]
    arcs = []
    for name in "BCD":
        arcs += _regular_tournament_arcs(parts[name])
    one_way = [
        ("A", "C"),
        ("B", "C"),
        ("C", "D"),
        ("C", "E"),
        ("D", "A"),
        ("D", "B"),
        ("E", "A"),
        ("E", "D"),
    ]
    for src, dst in one_way:
        for u in parts[src]:
            for v in parts[dst]:
                arcs.append((u, v))
    arcs += _bipartite_tournament_arcs(parts["A"], parts["B"])
    arcs += _bipartite_tournament_arcs(parts["B"], parts["E"])
    return Digraph(base, arcs), parts


def nw_extremal(n: int, k: int) -> tuple[Digraph, PartMap]:
    """Strongly connected non-Hamiltonian digraph with out- and in-degree
    sequence (k,...,k, n-1-k,...,n-1-k, n-1,...,n-1): independent set I of
    size k fully joined (both ways) to a k-subset X of a complete digraph."""
    if not 0 < k < n / 2:
        raise BadParams("need 0 < k < n/2")
    i_part = list(range(k))
    k_part = list(range(k, n))
    x_part = k_part[:k]
    arcs = []
    for u in k_part:
        for v in k_part:
            if u != v:
                arcs.append((u, v))
    for u in i_part:
        for v in x_part:
            arcs += [(u, v), (v, u)]
    return Digraph(n, arcs), {"I": i_part, "K": k_part, "X": x_part}


def two_regular_tournaments(d: int) -> tuple[Digraph, PartMap]:
    """Disjoint union of two regular tournaments on 2d+1 vertices: a
    d-regular oriented graph on 4d+2 vertices with no cycle cover across
    the parts (tightness for the regular-oriented degree conjecture)."""
    if d < 1:
        raise BadParams("d >= 1")
    n_half = 2 * d + 1
    g1 = circulant_tournament(n_half)
    arcs = list(g1.arcs())
    arcs += [(u + n_half, v + n_half) for u, v in g1.arcs()]
    return (
        Digraph(2 * n_half, arcs),
        {"T1": list(range(n_half)), "T2": list(range(n_half, 2 * n_half))},
    )


def pancyclic_bipartite(n: int) -> tuple[Digraph, PartMap]:
    """Complete bipartite digraph with classes as equal as possible."""
    a = (n + 1) // 2
    g = complete_bipartite_digraph(a, n - a)
    return g, {"A": list(range(a)), "B": list(range(a, n))}


def cycle_blowup(k: int, sizes: Sequence[int]) -> tuple[Digraph, PartMap]:
    """Blow-up of a directed k-cycle with the given part sizes."""
    from .core import blow_up

    g, parts = blow_up(directed_cycle(k), sizes)
    return g, {f"V{i}": p for i, p in enumerate(parts)}


def generate_extremal(family: str, *params) -> tuple[Digraph, PartMap]:
    table = {
        "fig1": fig1,
        "fig2": fig2,
        "fig3_haggkvist": fig3_haggkvist,
        "fig4_square": fig4_square,
        "nw_extremal": nw_extremal,
        "two_regular_tournaments": two_regular_tournaments,
        "pancyclic_bipartite": pancyclic_bipartite,
        "cycle_blowup": cycle_blowup,
    }
    if family not in table:
        raise BadParams(f"unknown extremal family {family!r}")
    return table[family](*params)
