"""Linking numbers and Milnor mu-invariants of string links.

The Wirtinger arcs of strand ``i`` are numbered ``0, 1, ...`` from its bottom
endpoint; a new arc starts after every undercrossing.  Arc ``0`` of strand
``i`` carries the Magnus image ``1 + X_i``.  Passing under an arc ``w`` at a
crossing of sign ``e`` conjugates: ``M(next) = M(w)^-e M(prev) M(w)^e``.
The remaining arcs are solved for by sweeping these relations until
nothing changes, which takes at most ``q`` sweeps in degree ``<= q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from stringlink.laurent import TruncatedSeries
from stringlink.tangle import DiagramError, MultiIndex, TangleDiagram

__all__ = [
    "Undercrossing",
    "WirtingerData",
    "ConvergenceError",
    "wirtinger",
    "linking_number",
    "meridian_fixpoint",
    "longitude",
    "mu",
    "distinct_sequences",
]


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Undercrossing:
    crossing: int
    strand: int
    arc_before: int
    over_strand: int
    over_arc: int
    sign: int


@dataclass(frozen=True)
class WirtingerData:
    n: int
    arc_counts: tuple[int, ...]
    relations: tuple[Undercrossing, ...]  # sorted by (strand, arc_before)
    self_writhe: tuple[int, ...]


def wirtinger(sigma: TangleDiagram) -> WirtingerData:
    sigma.require_string_link()
    info = sigma.crossing_info
    arc_at: dict[tuple[int, int], int] = {}
    counts = []
    for s in range(1, sigma.n + 1):
        arc = 0
        for p in sigma.visits(s):
            arc_at[(s, p.step)] = arc
            if not p.over:
                arc += 1
        counts.append(arc + 1)
    rels = []
    writhe = [0] * sigma.n
    for k, (over, under, sign) in info.items():
        rels.append(
            Undercrossing(
                k,
                under.strand,
                arc_at[(under.strand, under.step)],
                over.strand,
                arc_at[(over.strand, over.step)],
                sign,
            )
        )
        if over.strand == under.strand:
            writhe[over.strand - 1] += sign
    rels.sort(key=lambda r: (r.strand, r.arc_before))
    return WirtingerData(sigma.n, tuple(counts), tuple(rels), tuple(writhe))


def linking_number(sigma: TangleDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between strands ``i`` and ``j``."""
    if i == j:
        raise DiagramError("linking number needs two different strands")
    for s in (i, j):
        if not 1 <= s <= sigma.n:
            raise DiagramError(f"strand {s} outside 1..{sigma.n}")
    total = sigma.writhe(i, j)
    if total % 2:
        raise DiagramError(f"odd signed crossing count {total} between strands {i} and {j}")
    return total // 2


def meridian_fixpoint(
    sigma: TangleDiagram, q: int, data: WirtingerData | None = None
) -> dict[tuple[int, int], TruncatedSeries]:
    """Magnus images of all Wirtinger arcs, exact modulo degree ``q + 1``."""
    if q < 1:
        raise ValueError("truncation degree must be at least 1")
    data = data or wirtinger(sigma)
    n = data.n
    M = {
        (s, a): TruncatedSeries.generator(n, q, s)
        for s in range(1, n + 1)
        for a in range(data.arc_counts[s - 1])
    }
    for _ in range(q + 1):
        changed = False
        for r in data.relations:
            w = M[(r.over_strand, r.over_arc)]
            new = M[(r.strand, r.arc_before)].conjugate(w, r.sign)
            key = (r.strand, r.arc_before + 1)
            if new != M[key]:
                M[key] = new
                changed = True
        if not changed:
            return M
    raise ConvergenceError(f"Wirtinger sweep did not settle within {q + 1} passes")


def longitude(
    sigma: TangleDiagram,
    j: int,
    q: int,
    meridians: dict | None = None,
    data: WirtingerData | None = None,
    framing: bool = True,
) -> TruncatedSeries:
    """Magnus expansion of the zero-framed longitude of strand ``j``."""
    data = data or wirtinger(sigma)
    M = meridians or meridian_fixpoint(sigma, q, data)
    out = TruncatedSeries.one(data.n, q)
    for r in data.relations:
        if r.strand == j:
            out = out * (M[(r.over_strand, r.over_arc)] ** r.sign)
    if framing and data.self_writhe[j - 1]:
        out = out * (TruncatedSeries.generator(data.n, q, j) ** -data.self_writhe[j - 1])
    return out


def mu(sigma: TangleDiagram, I, q: int | None = None, framing: bool = True) -> int:
    """``mu(i_1 ... i_k j)``: coefficient of ``X_i1 ... X_ik`` in longitude ``j``."""
    I = MultiIndex(I)
    if len(I) < 2:
        raise DiagramError("mu needs a sequence of length at least 2")
    if max(I) > sigma.n:
        raise DiagramError(f"index {max(I)} outside 1..{sigma.n}")
    q = len(I) - 1 if q is None else q
    if q < len(I) - 1:
        raise ValueError(f"truncation {q} too low for length {len(I)}")
    return longitude(sigma, I[-1], q, framing=framing)[tuple(I[:-1])]


def mu_table(sigma: TangleDiagram, length: int) -> dict[MultiIndex, int]:
    """All distinct-index mu of the given length from one fixpoint."""
    q = length - 1
    data = wirtinger(sigma)
    M = meridian_fixpoint(sigma, q, data)
    longs = {j: longitude(sigma, j, q, M, data) for j in range(1, sigma.n + 1)}
    return {I: longs[I[-1]][tuple(I[:-1])] for I in distinct_sequences(sigma.n, length)}


def distinct_sequences(n: int, length: int) -> list[MultiIndex]:
    return [MultiIndex(p) for p in permutations(range(1, n + 1), length)]
