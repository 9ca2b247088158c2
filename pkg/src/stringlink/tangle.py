"""String-link diagrams as Morse words.

A :class:`TangleDiagram` is a bottom-to-top sequence of elementary slices
acting on a row of active strand positions (1-based, left to right):

* ``Cross(p, over)`` swaps the strands at positions ``p`` and ``p+1``;
  ``over`` names which *incoming* strand (the one at ``p`` or ``p+1`` below
  the slice) passes over.
* ``Cup(p)`` opens a local minimum, inserting two new positions ``p, p+1``.
* ``Cap(p)`` closes a local maximum, joining positions ``p`` and ``p+1``.

Strands are numbered by their bottom endpoint and oriented away from it.
Depth is the only geometric data besides the plane: "over" means closer to
the viewer.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence, Union

from stringlink.closed import ClosedDiagram, Crossing

__all__ = [
    "Over",
    "Cross",
    "Cup",
    "Cap",
    "MorseEvent",
    "DiagramError",
    "TangleDiagram",
    "MultiIndex",
    "trivial",
    "from_braid",
    "braid_bI",
    "stack",
    "delete_strand",
    "trivialize",
    "close",
    "sigma_IJ_knot",
    "subsequences",
    "parse_tangle",
    "serialize",
]


class DiagramError(ValueError):
    """Malformed diagram or invalid diagram operation."""


class Over(enum.Enum):
    LOWER = "O"
    HIGHER = "U"

    def flipped(self) -> Over:
        return Over.HIGHER if self is Over.LOWER else Over.LOWER


@dataclass(frozen=True)
class Cross:
    p: int
    over: Over

    def __str__(self) -> str:
        return f"{self.over.value} {self.p}"


@dataclass(frozen=True)
class Cup:
    p: int

    def __str__(self) -> str:
        return f"cup {self.p}"


@dataclass(frozen=True)
class Cap:
    p: int

    def __str__(self) -> str:
        return f"cap {self.p}"


MorseEvent = Union[Cross, Cup, Cap]


@dataclass(frozen=True)
class Passage:
    """One strand passing through one crossing."""

    crossing: int  # event index
    strand: int
    step: int  # position in the strand's visit order
    up: bool
    over: bool
    left: bool  # travels the BL-TR diagonal


class _Trace:
    """Wire graph of a Morse word, traversed strand by strand."""

    def __init__(self, n: int, events: Sequence[MorseEvent]):
        self.levels: list[tuple[int, ...]] = []
        self.start: list[tuple] = []
        self.end: list[tuple] = []
        self.ports: dict[int, dict[str, int]] = {}
        self.turns: dict[tuple, tuple[int, int]] = {}

        def new(node) -> int:
            self.start.append(node)
            self.end.append(None)
            return len(self.start) - 1

        cur = [new(("b", i + 1)) for i in range(n)]
        self.levels.append(tuple(cur))
        for k, ev in enumerate(events):
            w = len(cur)
            if isinstance(ev, Cross):
                if not 1 <= ev.p < w:
                    raise DiagramError(f"event {k} ({ev}): crossing needs positions {ev.p},{ev.p + 1} in width {w}")
                bl, br = cur[ev.p - 1], cur[ev.p]
                self.end[bl] = ("x", k, "BL")
                self.end[br] = ("x", k, "BR")
                tl, tr = new(("x", k, "TL")), new(("x", k, "TR"))
                cur[ev.p - 1], cur[ev.p] = tl, tr
                self.ports[k] = {"BL": bl, "BR": br, "TL": tl, "TR": tr}
            elif isinstance(ev, Cup):
                if not 1 <= ev.p <= w + 1:
                    raise DiagramError(f"event {k} ({ev}): cup position out of range for width {w}")
                a, b = new(("cup", k, 0)), new(("cup", k, 1))
                cur[ev.p - 1:ev.p - 1] = [a, b]
                self.turns[("cup", k)] = (a, b)
            elif isinstance(ev, Cap):
                if not 1 <= ev.p < w:
                    raise DiagramError(f"event {k} ({ev}): cap needs positions {ev.p},{ev.p + 1} in width {w}")
                a, b = cur[ev.p - 1], cur[ev.p]
                self.end[a] = ("cap", k, 0)
                self.end[b] = ("cap", k, 1)
                del cur[ev.p - 1:ev.p + 1]
                self.turns[("cap", k)] = (a, b)
            else:
                raise DiagramError(f"unknown event {ev!r}")
            self.levels.append(tuple(cur))
        if len(cur) != n:
            raise DiagramError(f"diagram ends with width {len(cur)}, expected {n}")
        for i, wire in enumerate(cur):
            self.end[wire] = ("t", i + 1)

        self.label = [0] * len(self.start)
        self.paths: list[list[tuple[int, bool]]] = []
        self.perm: list[int] = []
        self.passages: dict[int, list[Passage]] = {k: [] for k in self.ports}
        self.visits: list[list[Passage]] = []
        seen = [False] * len(self.start)
        for i in range(1, n + 1):
            self._walk(i, self.levels[0][i - 1], events, seen)
        if not all(seen):
            raise DiagramError("diagram contains a closed component not attached to any strand")

    def _walk(self, strand: int, wire: int, events, seen) -> None:
        up = True
        path: list[tuple[int, bool]] = []
        visits: list[Passage] = []
        while True:
            if seen[wire]:
                raise DiagramError(f"strand {strand} revisits a wire")
            seen[wire] = True
            self.label[wire] = strand
            path.append((wire, up))
            node = self.end[wire] if up else self.start[wire]
            kind = node[0]
            if kind == "t":
                if not up:
                    raise DiagramError("inconsistent orientation at top endpoint")
                self.perm.append(node[1])
                break
            if kind == "b":
                raise DiagramError(f"strand {strand} returns to the bottom boundary")
            if kind == "x":
                k, port = node[1], node[2]
                ev = events[k]
                left = port in ("BL", "TR")
                over = (ev.over is Over.LOWER) == left
                p = Passage(k, strand, len(visits), up, over, left)
                visits.append(p)
                self.passages[k].append(p)
                other = {"BL": "TR", "TR": "BL", "BR": "TL", "TL": "BR"}[port]
                wire = self.ports[k][other]
                continue
            # cup: arrive going down, leave going up; cap: the reverse
            a, b = self.turns[(kind, node[1])]
            wire = b if node[2] == 0 else a
            up = kind == "cup"
        self.paths.append(path)
        self.visits.append(visits)


def _crossing_sign(ev: Cross, left: Passage, right: Passage) -> int:
    # left strand joins BL-TR, right strand joins BR-TL (x = position, y = height)
    lv = (1, 1) if left.up else (-1, -1)
    rv = (-1, 1) if right.up else (1, -1)
    o, u = (lv, rv) if ev.over is Over.LOWER else (rv, lv)
    return 1 if o[0] * u[1] - o[1] * u[0] > 0 else -1


@dataclass(frozen=True)
class TangleDiagram:
    """An n-strand tangle given as a Morse word, validated on construction."""

    n: int
    events: tuple[MorseEvent, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise DiagramError("strand count must be non-negative")
        object.__setattr__(self, "events", tuple(self.events))
        self._trace  # noqa: B018  (validate eagerly)

    @cached_property
    def _trace(self) -> _Trace:
        return _Trace(self.n, self.events)

    @property
    def permutation(self) -> tuple[int, ...]:
        """``permutation[i-1]`` is the top endpoint reached from bottom ``i``."""
        return tuple(self._trace.perm)

    @property
    def is_string_link(self) -> bool:
        return self.permutation == tuple(range(1, self.n + 1))

    def require_string_link(self) -> None:
        if not self.is_string_link:
            raise DiagramError(f"not a string link: endpoint permutation {self.permutation}")

    def strand_labels(self, level: int) -> tuple[int, ...]:
        """Strand occupying each position just above event ``level - 1``."""
        tr = self._trace
        return tuple(tr.label[w] for w in tr.levels[level])

    def visits(self, strand: int) -> list[Passage]:
        """Crossing passages of ``strand`` in order from its bottom endpoint."""
        return list(self._trace.visits[strand - 1])

    @cached_property
    def crossing_info(self) -> dict[int, tuple[Passage, Passage, int]]:
        """Map event index -> (over passage, under passage, sign)."""
        out = {}
        for k, (pa, pb) in self._trace.passages.items():
            ev = self.events[k]
            left, right = (pa, pb) if pa.left else (pb, pa)
            sign = _crossing_sign(ev, left, right)
            over, under = (pa, pb) if pa.over else (pb, pa)
            out[k] = (over, under, sign)
        return out

    def crossing_signs(self) -> dict[int, int]:
        return {k: v[2] for k, v in self.crossing_info.items()}

    def writhe(self, i: int | None = None, j: int | None = None) -> int:
        """Signed crossing count, restricted to strands ``i`` (and ``j``)."""
        total = 0
        for over, under, sign in self.crossing_info.values():
            pair = {over.strand, under.strand}
            if i is not None and j is None and pair != {i}:
                continue
            if i is not None and j is not None and pair != {i, j}:
                continue
            total += sign
        return total

    @property
    def crossing_count(self) -> int:
        return sum(isinstance(e, Cross) for e in self.events)

    def __str__(self) -> str:
        return serialize(self)


def trivial(n: int) -> TangleDiagram:
    return TangleDiagram(n, ())


def from_braid(n: int, word: Iterable[int]) -> TangleDiagram:
    """Braid word: ``k > 0`` is a crossing at ``k`` with the lower strand over."""
    events = []
    for k in word:
        if k == 0 or abs(k) >= n:
            raise DiagramError(f"braid letter {k} invalid for {n} strands")
        events.append(Cross(abs(k), Over.LOWER if k > 0 else Over.HIGHER))
    return TangleDiagram(n, tuple(events))


class MultiIndex(tuple):
    """Sequence of distinct 1-based strand indices."""

    def __new__(cls, entries: Iterable[int] | str = ()):
        if isinstance(entries, str):
            entries = entries.split(",") if "," in entries else list(entries.strip())
        try:
            entries = tuple(int(e) for e in entries)
        except ValueError:
            raise DiagramError(f"index sequence {entries!r} is not made of integers") from None
        if len(set(entries)) != len(entries):
            raise DiagramError(f"index sequence {entries} has repeated entries")
        if any(e < 1 for e in entries):
            raise DiagramError(f"index sequence {entries} has non-positive entries")
        return super().__new__(cls, entries)

    def is_permutation(self, n: int) -> bool:
        return sorted(self) == list(range(1, n + 1))

    def is_subsequence_of(self, other: Sequence[int]) -> bool:
        it = iter(other)
        return all(e in it for e in self)

    def __str__(self) -> str:
        return "".join(map(str, self)) if all(e < 10 for e in self) else ",".join(map(str, self))


def subsequences(I: Sequence[int]) -> list[MultiIndex]:
    """All ``2^len(I)`` subsequences, ordered by size then by position."""
    out = []
    for r in range(len(I) + 1):
        for pos in combinations(range(len(I)), r):
            out.append(MultiIndex(I[p] for p in pos))
    return out


def braid_bI(I: Sequence[int]) -> TangleDiagram:
    """Layered n-cycle braid carrying bottom ``i_m`` to top ``i_{m+1}``.

    String ``m`` lies below every string ``m' > m``; the last string is on
    top.
    """
    I = MultiIndex(I)
    n = len(I)
    if not I.is_permutation(n):
        raise DiagramError(f"{tuple(I)} is not a permutation of 1..{n}")
    target = {}
    layer = {}
    row = [0] * n
    for m in range(n):
        row[I[m] - 1] = m
        target[m] = I[(m + 1) % n]
        layer[m] = m
    events = []
    changed = True
    while changed:
        changed = False
        for p in range(n - 1):
            a, b = row[p], row[p + 1]
            if target[a] > target[b]:
                over = Over.LOWER if layer[a] > layer[b] else Over.HIGHER
                events.append(Cross(p + 1, over))
                row[p], row[p + 1] = b, a
                changed = True
    return TangleDiagram(n, tuple(events))


def stack(sigma: TangleDiagram, sigma2: TangleDiagram) -> TangleDiagram:
    """Product ``sigma . sigma2``: ``sigma2`` placed on top of ``sigma``."""
    if sigma.n != sigma2.n:
        raise DiagramError(f"cannot stack {sigma.n}-strand and {sigma2.n}-strand diagrams")
    return TangleDiagram(sigma.n, sigma.events + sigma2.events)


def delete_strand(sigma: TangleDiagram, i: int) -> TangleDiagram:
    """Erase strand ``i``; remaining strands are renumbered in order."""
    if not 1 <= i <= sigma.n:
        raise DiagramError(f"strand {i} outside 1..{sigma.n}")
    events = []
    for k, ev in enumerate(sigma.events):
        before = sigma.strand_labels(k)
        if isinstance(ev, Cross):
            if i in (before[ev.p - 1], before[ev.p]):
                continue
        elif isinstance(ev, Cup):
            if sigma.strand_labels(k + 1)[ev.p - 1] == i:
                continue
        elif before[ev.p - 1] == i:
            continue
        shift = sum(1 for s in before[:ev.p - 1] if s == i)
        events.append(type(ev)(ev.p - shift, *([ev.over] if isinstance(ev, Cross) else [])))
    return TangleDiagram(sigma.n - 1, tuple(events))


def _reinsert_under(sigma: TangleDiagram, i: int) -> TangleDiagram:
    # new strand i enters at slot i, ducks left under everything, waits in
    # lane 1 while sigma happens, then ducks back to slot i
    enter = [Cross(p, Over.LOWER) for p in range(i - 1, 0, -1)]
    body = [_shifted(ev, 1) for ev in sigma.events]
    leave = [Cross(p, Over.HIGHER) for p in range(1, i)]
    return TangleDiagram(sigma.n + 1, tuple(enter + body + leave))


def _shifted(ev: MorseEvent, d: int) -> MorseEvent:
    if isinstance(ev, Cross):
        return Cross(ev.p + d, ev.over)
    return type(ev)(ev.p + d)


def trivialize(sigma: TangleDiagram, J: Iterable[int]) -> TangleDiagram:
    """Replace each strand not in ``J`` by a trivial strand under everything."""
    keep = set(J)
    bad = [j for j in keep if not 1 <= j <= sigma.n]
    if bad:
        raise DiagramError(f"indices {bad} outside 1..{sigma.n}")
    out = sigma
    for i in range(1, sigma.n + 1):
        if i not in keep:
            out = _reinsert_under(delete_strand(out, i), i)
    return out


def close(sigma: TangleDiagram) -> ClosedDiagram:
    """Trace closure: top ``k`` joined to bottom ``k`` by crossing-free arcs."""
    perm = sigma.permutation
    info = sigma.crossing_info
    cycles: list[list[int]] = []
    seen: set[int] = set()
    for s in range(1, sigma.n + 1):
        if s in seen:
            continue
        cyc = []
        while s not in seen:
            seen.add(s)
            cyc.append(s)
            s = perm[s - 1]
        cycles.append(cyc)

    loops = 0
    ports: dict[int, dict[str, int]] = {k: {} for k in info}
    tags = {}
    comp_of_edge = []
    edge = 0
    for ci, cyc in enumerate(cycles):
        seq = [p for s in cyc for p in sigma.visits(s)]
        if not seq:
            loops += 1
            continue
        first = edge
        for idx, p in enumerate(seq):
            role = "o" if p.over else "u"
            incoming = first + (idx - 1) % len(seq)
            outgoing = first + idx
            ports[p.crossing][role + "i"] = incoming
            ports[p.crossing][role + "o"] = outgoing
            comp_of_edge.append(ci)
        edge += len(seq)
    order = sorted(info)
    crossings = []
    for k in order:
        over, under, sign = info[k]
        pk = ports[k]
        crossings.append(Crossing(pk["ui"], pk["uo"], pk["oi"], pk["oo"], sign))
        tags[k] = (over.strand, under.strand)
    return ClosedDiagram(tuple(crossings), loops, tuple(tags[k] for k in order))


def sigma_IJ_knot(sigma: TangleDiagram, I: Sequence[int], J: Sequence[int]) -> ClosedDiagram:
    """Knot diagram obtained by closing ``b_I . sigma_J``."""
    I, J = MultiIndex(I), MultiIndex(J)
    if not I.is_permutation(sigma.n):
        raise DiagramError(f"{tuple(I)} is not a permutation of 1..{sigma.n}")
    if not J.is_subsequence_of(I):
        raise DiagramError(f"{tuple(J)} is not a subsequence of {tuple(I)}")
    return close(stack(braid_bI(I), trivialize(sigma, J)))


# -- text format --------------------------------------------------------------

_BRAID = re.compile(r"^\s*braid\s+(\d+)\s*:(.*)$", re.S)


def parse_tangle(text: str) -> TangleDiagram:
    """Parse the ``strands n`` event grammar or the ``braid n: ...`` shorthand."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    m = _BRAID.match(body)
    if m:
        n = int(m.group(1))
        word = []
        for tok in m.group(2).split():
            try:
                word.append(int(tok))
            except ValueError:
                raise DiagramError(f"braid letter {tok!r} is not an integer") from None
        return from_braid(n, word)

    tokens = []
    for lineno, line in enumerate(body.splitlines(), 1):
        for mt in re.finditer(r"\S+", line):
            tokens.append((mt.group(), lineno, mt.start() + 1))
    if len(tokens) < 2 or tokens[0][0] != "strands":
        where = f"line {tokens[0][1]}, column {tokens[0][2]}" if tokens else "start of input"
        raise DiagramError(f"{where}: expected header 'strands n' or 'braid n: ...'")
    try:
        n = int(tokens[1][0])
    except ValueError:
        raise DiagramError(f"line {tokens[1][1]}, column {tokens[1][2]}: bad strand count {tokens[1][0]!r}") from None
    events = []
    it = iter(tokens[2:])
    for tok, line, col in it:
        kind = {"O": "O", "U": "U", "cup": "cup", "cap": "cap"}.get(tok)
        if kind is None:
            raise DiagramError(f"line {line}, column {col}: unknown event {tok!r}")
        nxt = next(it, None)
        if nxt is None:
            raise DiagramError(f"line {line}, column {col}: event {tok!r} missing its position")
        try:
            p = int(nxt[0])
        except ValueError:
            raise DiagramError(f"line {nxt[1]}, column {nxt[2]}: bad position {nxt[0]!r}") from None
        if kind == "O":
            events.append(Cross(p, Over.LOWER))
        elif kind == "U":
            events.append(Cross(p, Over.HIGHER))
        elif kind == "cup":
            events.append(Cup(p))
        else:
            events.append(Cap(p))
    try:
        return TangleDiagram(n, tuple(events))
    except DiagramError as exc:
        raise DiagramError(f"invalid diagram: {exc}") from None


def serialize(sigma: TangleDiagram) -> str:
    lines = [f"strands {sigma.n}"] + [str(ev) for ev in sigma.events]
    return "\n".join(lines) + "\n"
