"""Maximum independent sets of A(n,k,k) and the families that attain them.

The search works on the complement graph: a maximum independent set is a
maximum clique of the complement, found by branch and bound with a greedy
coloring bound; full enumeration uses maximal-clique enumeration with
pivoting, filtered to maximum size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .config import Config, DEFAULT_CONFIG
from .errors import ValidationError
from .graphs import Graph, rank_tuple

SIZE_ONLY = "size_only"
ENUMERATE_ALL = "enumerate_all"


def delta_set(n: int, k: int, i: int, j: int) -> frozenset[int]:
    """Vertex indexes of A(n,k,*) whose tuples have entry j equal to i and
    avoid i in every other position. i and j are 0-based here; 1-based only
    in serialized labels."""
    if not (0 <= i < n and 0 <= j < k and k <= n):
        raise ValidationError(f"delta set parameters out of range: n={n} k={k} i={i} j={j}")
    out = []

    def rec(pos: int, t: list[int], used: set[int]):
        if pos == k:
            out.append(rank_tuple(t, n, k))
            return
        if pos == j:
            rec(pos + 1, t + [i], used)
            return
        for x in range(n):
            if x != i and x not in used:
                rec(pos + 1, t + [x], used | {x})

    rec(0, [], set())
    return frozenset(out)


def delta_family(n: int, k: int) -> list[tuple[tuple[int, int], frozenset[int]]]:
    """All delta sets in (i, j)-lexicographic order."""
    return [((i, j), delta_set(n, k, i, j)) for i in range(n) for j in range(k)]


def _complement(graph: Graph) -> list[int]:
    nv = graph.vertex_count
    full = (1 << nv) - 1
    return [(full & ~graph.adjacency[v]) & ~(1 << v) for v in range(nv)]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _max_clique(adj: list[int], nv: int) -> list[int]:
    """Exact maximum clique, branch and bound with greedy coloring bound."""
    best: list[int] = []

    def color_order(p_mask: int) -> list[tuple[int, int]]:
        order = []
        color = 0
        rest = p_mask
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append((v, color))
                rest &= ~(1 << v)
                avail &= ~(adj[v] | (1 << v))
        return order

    def expand(current: list[int], p_mask: int) -> None:
        nonlocal best
        order = color_order(p_mask)
        for v, color in reversed(order):
            if len(current) + color <= len(best):
                return
            current.append(v)
            nxt = p_mask & adj[v]
            if nxt:
                expand(current, nxt)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            p_mask &= ~(1 << v)

    expand([], (1 << nv) - 1)
    return sorted(best)


def _maximal_cliques(adj: list[int], nv: int):
    """Maximal-clique enumeration with pivoting (Bron-Kerbosch)."""

    def rec(r: list[int], p: int, x: int):
        if p == 0 and x == 0:
            yield sorted(r)
            return
        # pivot: vertex of p|x with most neighbors inside p
        pivot = max(_bits(p | x), key=lambda u: (adj[u] & p).bit_count())
        for v in _bits(p & ~adj[pivot]):
            r.append(v)
            yield from rec(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    yield from rec([], (1 << nv) - 1, 0)


def is_independent(graph: Graph, vertices) -> bool:
    m = 0
    for v in vertices:
        m |= 1 << v
    return all(graph.adjacency[v] & m == 0 for v in _bits(m))


def is_maximal_independent(graph: Graph, vertices) -> bool:
    if not is_independent(graph, vertices):
        return False
    m = 0
    for v in vertices:
        m |= 1 << v
    for w in range(graph.vertex_count):
        if not m >> w & 1 and graph.adjacency[w] & m == 0:
            return False
    return True


def max_independent_sets(graph: Graph, mode: str = SIZE_ONLY,
                         config: Config = DEFAULT_CONFIG
                         ) -> tuple[int, Optional[list[list[int]]]]:
    """Exact independence number; in enumerate_all mode also the complete,
    deterministically sorted list of maximum independent sets."""
    if graph.vertex_count < 1:
        raise ValidationError("need at least one vertex")
    if mode not in (SIZE_ONLY, ENUMERATE_ALL):
        raise ValidationError(f"unknown mode {mode!r}")
    cadj = _complement(graph)
    nv = graph.vertex_count
    if mode == SIZE_ONLY:
        clique = _max_clique(cadj, nv)
        assert is_maximal_independent(graph, clique)
        return len(clique), None
    if nv > config.enumerate_all_guard:
        raise ValidationError(
            f"enumerate_all limited to {config.enumerate_all_guard} vertices, graph has {nv}")
    alpha = 0
    sets: list[list[int]] = []
    for clique in _maximal_cliques(cadj, nv):
        if len(clique) > alpha:
            alpha = len(clique)
            sets = [clique]
        elif len(clique) == alpha:
            sets.append(clique)
    sets.sort()
    for s in sets:
        assert is_maximal_independent(graph, s)
    return alpha, sets


def independence_number_oracle(graph: Graph) -> int:
    """Independent oracle: exhaustive subset scan, graphs up to 20 vertices."""
    nv = graph.vertex_count
    if nv > 20:
        raise ValidationError("oracle limited to 20 vertices")
    adj = graph.adjacency
    best = 0
    # DP over subsets: a set is independent iff (set minus its lowest vertex)
    # is independent and that vertex has no neighbor inside
    indep = bytearray(1 << nv)
    indep[0] = 1
    for m in range(1, 1 << nv):
        v = (m & -m).bit_length() - 1
        rest = m & (m - 1)
        if indep[rest] and adj[v] & rest == 0:
            indep[m] = 1
            c = m.bit_count()
            if c > best:
                best = c
    return best


@dataclass
class MISReport:
    """Outcome of checking the maximum-independent-set characterization of
    A(n,k,k) against the delta family."""

    n: int
    k: int
    vertex_count: int
    size_found: int
    size_expected: int
    count_found: Optional[int]
    count_expected: int
    full_enumeration: bool
    sets_match_family: Optional[bool]
    family_members_maximum: bool
    passed: bool = field(init=False)

    def __post_init__(self):
        ok = self.size_found == self.size_expected and self.family_members_maximum
        if self.full_enumeration:
            ok = ok and self.count_found == self.count_expected and bool(self.sets_match_family)
        self.passed = ok


def verify_mis_characterization(n: int, k: int,
                                config: Config = DEFAULT_CONFIG,
                                graph: Optional[Graph] = None) -> MISReport:
    """Check that the maximum independent sets of A(n,k,k) are exactly the
    delta sets: independence number (n-1)!/(n-k)!, count n*k, and (when the
    graph is small enough to enumerate) setwise equality."""
    if n <= 2:
        raise ValidationError(f"the characterization requires n > 2, got n={n}")
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= n, got k={k} n={n}")
    if graph is None:
        from .graphs import build_arrangement_graph
        graph = build_arrangement_graph(n, k, k, config)
    nv = graph.vertex_count
    size_expected = math.factorial(n - 1) // math.factorial(n - k)
    count_expected = n * k
    family = delta_family(n, k)
    family_sets = sorted(sorted(s) for _, s in family)

    if nv <= config.enumerate_all_guard:
        size, sets = max_independent_sets(graph, ENUMERATE_ALL, config)
        return MISReport(
            n=n, k=k, vertex_count=nv,
            size_found=size, size_expected=size_expected,
            count_found=len(sets), count_expected=count_expected,
            full_enumeration=True,
            sets_match_family=(sets == family_sets),
            family_members_maximum=all(
                len(s) == size and is_maximal_independent(graph, s) for s in family_sets),
        )
    size, _ = max_independent_sets(graph, SIZE_ONLY, config)
    return MISReport(
        n=n, k=k, vertex_count=nv,
        size_found=size, size_expected=size_expected,
        count_found=None, count_expected=count_expected,
        full_enumeration=False,
        sets_match_family=None,
        family_members_maximum=all(
            len(s) == size and is_maximal_independent(graph, s) for s in family_sets),
    )
