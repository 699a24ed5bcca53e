"""Finitely generated subgroups with folded-graph membership.

A subgroup is stored as the folded core graph of the wedge of its
generator loops. Folding merges vertices until no vertex carries two
equally labeled edges in the same direction, after which membership is a
deterministic walk from the base vertex.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .words import Word


class StallingsGraph:
    """Folded labeled graph; vertex 0 is the base.

    ``table[v]`` holds the neighbor reached from v by each letter code
    (a, a^-1, b, b^-1), or -1 when there is no such edge.
    """

    __slots__ = ("table",)

    def __init__(self, table: Sequence[Tuple[int, int, int, int]]):
        self.table = tuple(table)

    @property
    def vertex_count(self) -> int:
        return len(self.table)

    def trace(self, data: bytes, start: int = 0) -> int:
        """Follow a letter string from a vertex; -1 once the walk dies."""
        v = start
        for c in data:
            v = self.table[v][c]
            if v < 0:
                return -1
        return v

    def __repr__(self) -> str:
        return "StallingsGraph(%d vertices)" % len(self.table)


class Subgroup:
    __slots__ = ("generators", "folded_graph")

    def __init__(self, generators: Tuple[Word, ...], folded_graph: StallingsGraph):
        self.generators = generators
        self.folded_graph = folded_graph

    def __repr__(self) -> str:
        return "Subgroup(<%s>)" % ", ".join(g.render() for g in self.generators)


def build(generators: Sequence[Word]) -> Subgroup:
    """Fold the wedge of generator loops into a subgroup value."""
    gens = tuple(generators)
    if not gens:
        raise ValueError("a subgroup needs at least one generator word")

    # adjacency as four neighbor lists per vertex, indexed by letter code
    adj: List[Tuple[list, list, list, list]] = [([], [], [], [])]

    def new_vertex() -> int:
        adj.append(([], [], [], []))
        return len(adj) - 1

    def add_edge(v: int, c: int, w: int) -> None:
        adj[v][c].append(w)
        adj[w][c ^ 1].append(v)

    for g in gens:
        data = g.data
        if not data:
            continue
        prev = 0
        for i, c in enumerate(data):
            nxt = 0 if i == len(data) - 1 else new_vertex()
            add_edge(prev, c, nxt)
            prev = nxt

    parent = list(range(len(adj)))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    # Merge until folded; the smaller creation index survives a merge.
    pending = list(range(len(adj)))
    while pending:
        v = find(pending.pop())
        merged = None
        for c in range(4):
            heads = sorted({find(x) for x in adj[v][c]})
            if len(heads) >= 2:
                keep, drop = heads[0], heads[1]
                parent[drop] = keep
                for d in range(4):
                    adj[keep][d].extend(adj[drop][d])
                    adj[drop][d].clear()
                merged = (keep, v)
                break
        if merged:
            keep, at = merged
            pending.append(at)
            pending.append(keep)

    # Compact to a contiguous table, renumbered by walk order from the base.
    order = [find(0)]
    number = {order[0]: 0}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for c in range(4):
            for x in adj[v][c]:
                r = find(x)
                if r not in number:
                    number[r] = len(order)
                    order.append(r)
    table = []
    for v in order:
        row = []
        for c in range(4):
            heads = {find(x) for x in adj[v][c]}
            row.append(number[heads.pop()] if heads else -1)
        table.append(tuple(row))
    return Subgroup(gens, StallingsGraph(table))


def contains(H: Subgroup, w: Word) -> bool:
    """True iff the word traces a closed path at the base vertex."""
    return H.folded_graph.trace(w.data) == 0


def subgroup_norm(H: Subgroup) -> int:
    """Largest reduced length among the stored generators."""
    return max(len(g) for g in H.generators)
