"""Graph automorphism groups, canonical certificates, and isomorphism.

Individualization-refinement search: refine an ordered partition to its
coarsest equitable refinement, branch on the vertices of the first smallest
non-singleton cell, and prune branches equivalent under automorphisms
discovered so far. Leaves are discrete partitions, i.e. vertex labelings;
two leaves with the same relabeled adjacency matrix differ by an
automorphism, and the lexicographically smallest relabeled matrix over all
leaves is the canonical form.

The search is fully deterministic: target cell = first non-singleton cell
of smallest size, branching in ascending vertex index.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .config import Config, DEFAULT_CONFIG
from .errors import BudgetError, ValidationError
from .graphs import Graph, is_automorphism
from .perms import Permutation, StabilizerChain, build_stabilizer_chain

OrderedPartition = list[list[int]]


def unit_partition(graph: Graph) -> OrderedPartition:
    return [list(range(graph.vertex_count))]


def _validate_partition(graph: Graph, cells: Sequence[Sequence[int]]) -> None:
    flat = [v for c in cells for v in c]
    if sorted(flat) != list(range(graph.vertex_count)):
        raise ValidationError("cells do not partition the vertex set")


def equitable_refinement(graph: Graph, partition: Sequence[Sequence[int]]) -> OrderedPartition:
    """Coarsest equitable refinement of an ordered partition.

    Splits every cell by neighbor counts into every (current) cell until
    stable; fragments of a split cell replace it in place, ordered by
    ascending neighbor count. Deterministic given the cell order, and
    idempotent.
    """
    _validate_partition(graph, partition)
    return _refine(graph.adjacency, [sorted(c) for c in partition])


def _mask(cell: Iterable[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _refine(adj: list[int], cells: OrderedPartition) -> OrderedPartition:
    queue = [_mask(c) for c in cells]
    qi = 0
    while qi < len(queue):
        splitter = queue[qi]
        qi += 1
        newcells: OrderedPartition = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                newcells.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & splitter).bit_count(), []).append(v)
            if len(groups) == 1:
                newcells.append(cell)
                continue
            changed = True
            for count in sorted(groups):
                frag = groups[count]
                newcells.append(frag)
                queue.append(_mask(frag))
        if changed:
            cells = newcells
    return cells


@dataclass
class AutResult:
    """Automorphism generators, exact group order, and a canonical
    certificate (equal certificates iff isomorphic graphs)."""

    generators: list[Permutation]
    chain: StabilizerChain
    order: int
    certificate: bytes
    # canonical_labeling maps original vertex index -> canonical position
    canonical_labeling: Permutation

    def certificate_hex(self) -> str:
        return self.certificate.hex()


class _IRSearch:
    def __init__(self, graph: Graph, config: Config):
        self.graph = graph
        self.adj = graph.adjacency
        self.n = graph.vertex_count
        self.config = config
        self.nodes = 0
        self.gens: list[Permutation] = []
        self.first: Optional[tuple[bytes, list[int]]] = None
        self.best: Optional[tuple[bytes, list[int]]] = None

    def run(self) -> None:
        if self.n == 0:
            self.best = (b"", [])
            return
        self._node(_refine(self.adj, [list(range(self.n))]), [])

    # -- search tree

    def _node(self, cells: OrderedPartition, prefix: list[int]) -> None:
        self.nodes += 1
        if self.nodes > self.config.node_budget:
            raise BudgetError(
                f"IR search exceeded node budget {self.config.node_budget}")
        target = -1
        smallest = self.n + 1
        for i, cell in enumerate(cells):
            if 1 < len(cell) < smallest:
                target = i
                smallest = len(cell)
        if target < 0:
            self._leaf([c[0] for c in cells])
            return
        explored: list[int] = []
        for v in sorted(cells[target]):
            if explored and self._in_explored_orbit(v, explored, prefix):
                continue
            explored.append(v)
            child = (cells[:target]
                     + [[v], [u for u in cells[target] if u != v]]
                     + cells[target + 1:])
            self._node(_refine(self.adj, child), prefix + [v])

    def _in_explored_orbit(self, v: int, explored: list[int], prefix: list[int]) -> bool:
        """Orbit pruning: skip v if some discovered automorphism fixing the
        individualized prefix pointwise maps an already-explored sibling
        into v's orbit."""
        fixing = [g for g in self.gens if all(g(p) == p for p in prefix)]
        if not fixing:
            return False
        orbit = set(explored)
        frontier = list(explored)
        while frontier:
            x = frontier.pop()
            for g in fixing:
                y = g(x)
                if y == v:
                    return True
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return False

    # -- leaves

    def _leaf_cert(self, lab: list[int]) -> bytes:
        # adjacency matrix of the relabeled graph, row-major bits
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        nbytes = (self.n + 7) // 8
        out = bytearray()
        for v in lab:
            row = self.adj[v]
            r = 0
            while row:
                low = row & -row
                r |= 1 << pos[low.bit_length() - 1]
                row ^= low
            out += r.to_bytes(nbytes, "little")
        return bytes(out)

    def _leaf(self, lab: list[int]) -> None:
        cert = self._leaf_cert(lab)
        if self.first is None:
            self.first = self.best = (cert, lab)
            return
        if cert == self.first[0]:
            self._record_automorphism(self.first[1], lab)
        if cert < self.best[0]:
            self.best = (cert, lab)
        elif cert == self.best[0] and self.best is not self.first:
            self._record_automorphism(self.best[1], lab)

    def _record_automorphism(self, lab1: list[int], lab2: list[int]) -> None:
        imgs = [0] * self.n
        for a, b in zip(lab1, lab2):
            imgs[a] = b
        g = Permutation(imgs)
        if g.is_identity() or g in self.gens:
            return
        if not is_automorphism(self.graph, g):
            raise AssertionError("IR search produced a non-automorphism")
        self.gens.append(g)


def automorphism_group(graph: Graph, config: Config = DEFAULT_CONFIG) -> AutResult:
    """Full automorphism group plus canonical certificate of a graph."""
    if graph.vertex_count < 1:
        raise ValidationError("automorphism search needs at least one vertex")
    search = _IRSearch(graph, config)
    search.run()
    chain = build_stabilizer_chain(search.gens, degree=graph.vertex_count)
    cert_bits, lab = search.best
    pos = [0] * graph.vertex_count
    for i, v in enumerate(lab):
        pos[v] = i
    return AutResult(
        generators=search.gens,
        chain=chain,
        order=chain.order(),
        certificate=zlib.compress(cert_bits, 6),
        canonical_labeling=Permutation(pos),
    )


def canonical_certificate(graph: Graph, config: Config = DEFAULT_CONFIG) -> bytes:
    return automorphism_group(graph, config).certificate


def are_isomorphic(g1: Graph, g2: Graph,
                   config: Config = DEFAULT_CONFIG
                   ) -> tuple[bool, Optional[Permutation]]:
    """Certificate equality; on success also returns a verified witness
    bijection mapping vertices of g1 to vertices of g2."""
    if g1.vertex_count != g2.vertex_count or g1.edge_count() != g2.edge_count():
        return False, None
    r1 = automorphism_group(g1, config)
    r2 = automorphism_group(g2, config)
    if r1.certificate != r2.certificate:
        return False, None
    witness = r1.canonical_labeling.compose(r2.canonical_labeling.inverse())
    for u, v in g1.edges():
        if not g2.has_edge(witness(u), witness(v)):
            raise AssertionError("isomorphism witness failed an edge check")
    if g1.edge_count() != g2.edge_count():
        raise AssertionError("isomorphism witness failed the edge count check")
    return True, witness


def common_neighborhood(graph: Graph, vertices: Iterable[int]) -> set[int]:
    """Intersection of the open neighborhoods; the whole vertex set for an
    empty input."""
    vertices = list(vertices)
    if any(not 0 <= v < graph.vertex_count for v in vertices):
        raise ValidationError("vertex index out of range")
    acc = (1 << graph.vertex_count) - 1
    for v in vertices:
        acc &= graph.adjacency[v]
    out = set()
    while acc:
        low = acc & -acc
        out.add(low.bit_length() - 1)
        acc ^= low
    return out


def brute_force_automorphism_count(graph: Graph, limit: int = 8) -> int:
    """Independent oracle: count automorphisms by trying every vertex
    bijection. Only for graphs with at most `limit` vertices."""
    import itertools

    if graph.vertex_count > limit:
        raise ValidationError(f"brute force limited to {limit} vertices")
    count = 0
    for images in itertools.permutations(range(graph.vertex_count)):
        if is_automorphism(graph, Permutation(images)):
            count += 1
    return count
