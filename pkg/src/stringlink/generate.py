"""Seeded random string links.

Building blocks, all given as Morse-event lists on ``n`` strands:

* ``band(i, j)`` -- the pure braid generator ``A_ij``: strand ``j`` ducks
  left under the strands between, clasps strand ``i`` with two positive
  crossings, and ducks back.
* ``clasp(i, j)`` -- like ``band`` but strand ``j`` passes over the strands
  between, so every other strand runs underneath the clasp.
* ``hook(p)`` -- strand at ``p+1`` threads through a fold of the strand at
  ``p``; isotopic to a single braid crossing, but with cups, caps and
  downward-oriented crossings.
* ``local_knot(p)`` -- the strand at ``p`` is tied into a knotted arc (the
  partial closure of a short random braid).
* ``fold(p)`` -- a random cup/cap excursion interacting with neighbours.

Invertible blocks (braid letters, bands, hooks, commutators of these) have
their inverse given by :func:`reflect`.
"""

from __future__ import annotations

import random
from typing import Sequence

from stringlink.tangle import Cap, Cross, Cup, DiagramError, MorseEvent, Over, TangleDiagram

__all__ = [
    "CONSTRAINTS",
    "letter",
    "band",
    "clasp",
    "hook",
    "local_knot",
    "reflect",
    "commutator",
    "conjugate",
    "sort_back",
    "gen_string_link",
]

CONSTRAINTS = ("none", "zero-linking", "commutator-built")

Word = list[MorseEvent]


def letter(k: int) -> Word:
    """Braid letter ``sigma_|k|`` (``k > 0``: lower strand over)."""
    return [Cross(abs(k), Over.LOWER if k > 0 else Over.HIGHER)]


def band(i: int, j: int, sign: int = 1) -> Word:
    if not i < j:
        i, j = j, i
    w = [Cross(p, Over.LOWER) for p in range(j - 1, i, -1)]
    w += [Cross(i, Over.LOWER), Cross(i, Over.LOWER)]
    w += [Cross(p, Over.HIGHER) for p in range(i + 1, j)]
    return w if sign > 0 else reflect(w)


def clasp(i: int, j: int, sign: int = 1) -> Word:
    if not i < j:
        i, j = j, i
    w = [Cross(p, Over.HIGHER) for p in range(j - 1, i, -1)]
    w += [Cross(i, Over.LOWER), Cross(i, Over.LOWER)]
    w += [Cross(p, Over.LOWER) for p in range(i + 1, j)]
    return w if sign > 0 else reflect(w)


def hook(p: int, overs: Sequence[Over]) -> Word:
    """Strand at ``p+1`` passes the three layers of a fold in the strand at ``p``."""
    o1, o2, o3 = overs
    return [Cup(p + 1), Cross(p + 2, o1), Cross(p + 1, o2), Cross(p, o3), Cap(p + 1)]


def reflect(word: Sequence[MorseEvent]) -> Word:
    """Mirror in a horizontal plane: the inverse of any braid-like word."""
    out: Word = []
    for ev in reversed(word):
        if isinstance(ev, Cross):
            out.append(Cross(ev.p, ev.over.flipped()))
        elif isinstance(ev, Cup):
            out.append(Cap(ev.p))
        else:
            out.append(Cup(ev.p))
    return out


def commutator(x: Sequence[MorseEvent], y: Sequence[MorseEvent]) -> Word:
    return list(x) + list(y) + reflect(x) + reflect(y)


def conjugate(c: Sequence[MorseEvent], x: Sequence[MorseEvent]) -> Word:
    return list(x) + list(c) + reflect(x)


def _over(rng: random.Random) -> Over:
    return rng.choice((Over.LOWER, Over.HIGHER))


def local_knot(p: int, rng: random.Random) -> Word:
    """Knotted arc on the strand at ``p``: close off two strands of a 3-braid.

    After ``Cup(p+1)`` the strand and the two cup arcs occupy ``p..p+2``;
    a random braid on those positions is capped at ``p+1``.  Words whose
    cap would seal off a closed loop are redrawn.
    """
    while True:
        k = rng.choice((3, 3, 4, 5))
        word = [Cross(p + rng.randint(0, 1), _over(rng)) for _ in range(k)]
        # position bookkeeping: labels 0 = strand, 1/2 = cup arcs
        row = [0, 1, 2]
        for ev in word:
            i = ev.p - p
            row[i], row[i + 1] = row[i + 1], row[i]
        # capping p+1,p+2 must join the strand to a cup arc, and leave a cup
        # arc running on at p
        if row[0] != 0 and 0 in row[1:]:
            return [Cup(p + 1)] + word + [Cap(p + 1)]


def _fold(p: int, width: int, rng: random.Random) -> Word:
    lo, hi = max(1, p - 1), min(width + 1, p + 3)
    word: Word = [Cup(p + 1)]
    for _ in range(rng.randint(1, 4)):
        word.append(Cross(rng.randint(lo, hi), _over(rng)))
    word.append(Cap(rng.randint(lo, hi)))
    return word


def _perm_rows(n: int, events: Sequence[MorseEvent]) -> tuple[int, ...]:
    return TangleDiagram(n, tuple(events)).strand_labels(len(events))


def sort_back(row: Sequence[int], rng: random.Random) -> Word:
    """Braid word with random over/unders returning ``row`` to ``1..n``."""
    row = list(row)
    out: Word = []
    changed = True
    while changed:
        changed = False
        for p in range(len(row) - 1):
            if row[p] > row[p + 1]:
                out.append(Cross(p + 1, _over(rng)))
                row[p], row[p + 1] = row[p + 1], row[p]
                changed = True
    return out


def _crossings(word: Sequence[MorseEvent]) -> int:
    return sum(isinstance(e, Cross) for e in word)


def _inversions(row: Sequence[int]) -> int:
    return sum(1 for a in range(len(row)) for b in range(a + 1, len(row)) if row[a] > row[b])


def _conjugator(n: int, rng: random.Random, size: int) -> Word:
    word: Word = []
    for _ in range(size):
        if n >= 2 and rng.random() < 0.3:
            word += hook(rng.randint(1, n - 1), [_over(rng) for _ in range(3)])
        elif n >= 2:
            word += letter(rng.choice((1, -1)) * rng.randint(1, n - 1))
    return word


def _random_band(n: int, rng: random.Random) -> Word:
    i, j = sorted(rng.sample(range(1, n + 1), 2))
    return band(i, j, rng.choice((1, -1)))


def _nested(n: int, rng: random.Random, depth: int) -> Word:
    if depth == 0:
        return _random_band(n, rng)
    return commutator(_nested(n, rng, depth - 1), _random_band(n, rng))


def _free_block(n: int, events: Word, rng: random.Random) -> Word:
    width = n
    roll = rng.random()
    if n < 2 or roll < 0.2:
        return local_knot(rng.randint(1, n), rng)
    if roll < 0.45:
        return _random_band(n, rng)
    if roll < 0.6:
        return hook(rng.randint(1, n - 1), [_over(rng) for _ in range(3)])
    if roll < 0.8:
        return _fold(rng.randint(1, n), width, rng)
    return letter(rng.choice((1, -1)) * rng.randint(1, n - 1))


def gen_string_link(n: int, length: int = 14, seed: int | str = 0, constraint: str = "none") -> TangleDiagram:
    """Deterministic random ``n``-string link with at most ``length`` crossings.

    ``none`` mixes every block type and restores the identity permutation
    with a random sorting braid.  ``zero-linking`` multiplies conjugated
    commutators of band generators and local knots.  ``commutator-built``
    multiplies conjugated, possibly nested, commutators of band generators.
    The last two have all pairwise linking numbers zero by construction.
    """
    if constraint not in CONSTRAINTS:
        raise ValueError(f"constraint must be one of {CONSTRAINTS}")
    if n < 1:
        raise ValueError("need at least one strand")
    rng = random.Random(f"{seed}:{n}:{length}:{constraint}")
    events: Word = []
    if n == 1 and constraint != "none":
        return TangleDiagram(1, ())
    misses = 0
    while misses < 8:
        if constraint == "none":
            block = _free_block(n, events, rng)
        elif constraint == "zero-linking":
            if rng.random() < 0.3:
                block = local_knot(rng.randint(1, n), rng)
            else:
                block = conjugate(
                    commutator(_random_band(n, rng), _random_band(n, rng)),
                    _conjugator(n, rng, rng.randint(0, 1)),
                )
        else:
            block = conjugate(_nested(n, rng, rng.choice((1, 1, 2))), _conjugator(n, rng, rng.randint(0, 1)))
        trial = events + block
        try:
            row = _perm_rows(n, trial)
        except DiagramError:
            misses += 1
            continue
        cost = _crossings(trial) + (_inversions(row) if constraint == "none" else 0)
        if cost > length:
            misses += 1
            continue
        events = trial
    if constraint == "none":
        events += sort_back(_perm_rows(n, events), rng)
    sigma = TangleDiagram(n, tuple(events))
    sigma.require_string_link()
    return sigma
