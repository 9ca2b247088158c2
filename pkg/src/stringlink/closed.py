"""Closed oriented link diagrams.

Each crossing is stored as ``(ui, uo, oi, oo, sign)``: the incoming and
outgoing edge labels of the under-strand and of the over-strand, plus the
crossing sign.  Every edge label occurs exactly once as an incoming and once
as an outgoing port.  Together with the sign this fixes the cyclic order of
ports around the crossing, so the tuple list is a full planar diagram code.

Counter-clockwise port order:

* positive crossing: ``ui, oo, uo, oi``
* negative crossing: ``ui, oi, uo, oo``

``loops`` counts crossing-free unknotted components.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

__all__ = ["Crossing", "ClosedDiagram", "switch_crossing", "smooth_crossing", "mirror", "connected_sum"]


class Crossing(NamedTuple):
    ui: int
    uo: int
    oi: int
    oo: int
    sign: int


def _ccw(c: Crossing) -> tuple[int, int, int, int]:
    # ports as (edge, is_outgoing); encoded as 2*edge + is_outgoing
    if c.sign > 0:
        return (2 * c.ui, 2 * c.oo + 1, 2 * c.uo + 1, 2 * c.oi)
    return (2 * c.ui, 2 * c.oi, 2 * c.uo + 1, 2 * c.oo + 1)


@dataclass(frozen=True)
class ClosedDiagram:
    crossings: tuple[Crossing, ...] = ()
    loops: int = 0
    tags: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(Crossing(*c) for c in self.crossings))

    # -- structure ----------------------------------------------------------
    def edges(self) -> set[int]:
        return {e for c in self.crossings for e in c[:4]}

    def validate(self) -> None:
        """Raise ``ValueError`` unless every edge has exactly one in/out port."""
        ins = Counter(e for c in self.crossings for e in (c.ui, c.oi))
        outs = Counter(e for c in self.crossings for e in (c.uo, c.oo))
        if any(v != 1 for v in ins.values()) or any(v != 1 for v in outs.values()):
            raise ValueError("edge used by more than one in- or out-port")
        if set(ins) != set(outs):
            raise ValueError("dangling edge")
        if any(c.sign not in (1, -1) for c in self.crossings):
            raise ValueError("crossing sign must be +1 or -1")
        if self.loops < 0:
            raise ValueError("negative loop count")

    def _heads(self) -> dict[int, tuple[int, bool]]:
        out = {}
        for idx, c in enumerate(self.crossings):
            out[c.ui] = (idx, False)
            out[c.oi] = (idx, True)
        return out

    def component_cycles(self) -> list[list[int]]:
        """Edge cycles of the components with crossings, min-edge first."""
        heads = self._heads()
        seen: set[int] = set()
        cycles = []
        for e in sorted(heads):
            if e in seen:
                continue
            cyc = []
            while e not in seen:
                seen.add(e)
                cyc.append(e)
                idx, over = heads[e]
                c = self.crossings[idx]
                e = c.oo if over else c.uo
            cycles.append(cyc)
        return cycles

    @property
    def component_count(self) -> int:
        return len(self.component_cycles()) + self.loops

    def edge_components(self) -> dict[int, int]:
        return {e: k for k, cyc in enumerate(self.component_cycles()) for e in cyc}

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def linking_number(self, a: int, b: int) -> int:
        """Linking number between component cycles ``a`` and ``b``."""
        comp = self.edge_components()
        s = sum(c.sign for c in self.crossings if {comp[c.ui], comp[c.oi]} == {a, b})
        if s % 2:
            raise ValueError("odd mixed signed crossing count")
        return s // 2

    def faces(self) -> list[list[int]]:
        """Faces as lists of ports, traced with the rotation system."""
        nxt = {}
        where = {}
        for idx, c in enumerate(self.crossings):
            ring = _ccw(c)
            for j, port in enumerate(ring):
                nxt[port] = ring[(j + 1) % 4]
                where[port] = idx
        seen = set()
        faces = []
        for start in nxt:
            if start in seen:
                continue
            face = []
            port = start
            while port not in seen:
                seen.add(port)
                face.append(port)
                port = nxt[port ^ 1]  # walk the edge, then turn at the far end
            faces.append(face)
        return faces

    def __len__(self) -> int:
        return len(self.crossings)

    # -- rewriting ----------------------------------------------------------
    def without(self, drop: Iterable[int], joins: Iterable[tuple[int, int]]) -> ClosedDiagram:
        """Delete crossings ``drop`` and glue edges pairwise along ``joins``.

        Edge classes that are no longer referenced by any crossing become
        free loops.
        """
        drop = set(drop)
        parent: dict[int, int] = {}

        def find(e: int) -> int:
            root = e
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(e, e) != root:
                parent[e], e = root, parent[e]
            return root

        touched = set()
        for a, b in joins:
            touched.update((a, b))
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        kept = []
        tags = []
        for idx, c in enumerate(self.crossings):
            if idx in drop:
                continue
            kept.append(Crossing(find(c.ui), find(c.uo), find(c.oi), find(c.oo), c.sign))
            if self.tags:
                tags.append(self.tags[idx])
        used = {e for c in kept for e in c[:4]}
        new_loops = len({find(e) for e in touched} - used)
        return ClosedDiagram(tuple(kept), self.loops + new_loops, tuple(tags))

    def canonical(self) -> ClosedDiagram:
        """Relabel edges 0.. along components in traversal order."""
        cycles = self.component_cycles()
        relabel = {}
        for cyc in cycles:
            for e in cyc:
                relabel[e] = len(relabel)
        xs = sorted(
            Crossing(relabel[c.ui], relabel[c.uo], relabel[c.oi], relabel[c.oo], c.sign)
            for c in self.crossings
        )
        return ClosedDiagram(tuple(xs), self.loops)


def switch_crossing(D: ClosedDiagram, c: int) -> ClosedDiagram:
    """Exchange over and under at crossing ``c``; its sign flips."""
    if not 0 <= c < len(D.crossings):
        raise IndexError(f"no crossing {c}")
    x = D.crossings[c]
    xs = list(D.crossings)
    xs[c] = Crossing(x.oi, x.oo, x.ui, x.uo, -x.sign)
    return ClosedDiagram(tuple(xs), D.loops, D.tags)


def smooth_crossing(D: ClosedDiagram, c: int) -> ClosedDiagram:
    """Oriented smoothing: each incoming edge continues into the adjacent outgoing one."""
    if not 0 <= c < len(D.crossings):
        raise IndexError(f"no crossing {c}")
    x = D.crossings[c]
    return D.without([c], [(x.ui, x.oo), (x.oi, x.uo)])


def mirror(D: ClosedDiagram) -> ClosedDiagram:
    xs = tuple(Crossing(x.oi, x.oo, x.ui, x.uo, -x.sign) for x in D.crossings)
    return ClosedDiagram(xs, D.loops, D.tags)


def connected_sum(K1: ClosedDiagram, K2: ClosedDiagram) -> ClosedDiagram:
    """Band-sum two knot diagrams along their lowest edges.

    Cutting one edge of each diagram in the outer region and reconnecting
    needs no new crossings; the edge is chosen on the boundary of a face,
    which is always available since every edge bounds two faces.
    """
    for K in (K1, K2):
        if K.component_count != 1:
            raise ValueError("connected sum is defined here for knot diagrams")
    if not K1.crossings:
        return K2
    if not K2.crossings:
        return K1
    off = max(K1.edges()) + 1
    xs2 = [Crossing(c.ui + off, c.uo + off, c.oi + off, c.oo + off, c.sign) for c in K2.crossings]
    a = min(K1.edges())
    b = min(e + off for e in K2.edges())
    # edge a (K1) now runs into the head of b, edge b into the head of a
    fresh = b
    xs1 = list(K1.crossings)
    xs1 = [_rename_in(c, a, fresh) for c in xs1]
    xs2 = [_rename_in(c, b, a) for c in xs2]
    return ClosedDiagram(tuple(xs1 + xs2), 0)


def _rename_in(c: Crossing, old: int, new: int) -> Crossing:
    ui = new if c.ui == old else c.ui
    oi = new if c.oi == old else c.oi
    return Crossing(ui, c.uo, oi, c.oo, c.sign)
