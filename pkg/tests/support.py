"""Random diagrams and mutations shared by the test modules."""

from __future__ import annotations

import random

from stringlink.closed import ClosedDiagram
from stringlink.generate import reflect
from stringlink.tangle import Cross, Over, TangleDiagram, close, from_braid, stack

# criterion number -> one-line verdict, printed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[k] = line
    print(line)


def random_braid_word(rng: random.Random, n: int, length: int) -> list[int]:
    return [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)]


def random_knot(rng: random.Random, max_crossings: int = 16) -> ClosedDiagram:
    """Closure of a random braid word whose closure has one component."""
    while True:
        n = rng.randint(2, 4)
        word = random_braid_word(rng, n, rng.randint(2, max_crossings))
        K = close(from_braid(n, word))
        if K.component_count == 1:
            return K


def random_link(rng: random.Random, max_crossings: int = 12) -> ClosedDiagram:
    n = rng.randint(2, 4)
    return close(from_braid(n, random_braid_word(rng, n, rng.randint(1, max_crossings))))


def width_at(sigma: TangleDiagram, level: int) -> int:
    return len(sigma.strand_labels(level))


def insert_canceling_pair(sigma: TangleDiagram, rng: random.Random) -> TangleDiagram:
    """Insert ``X X^-1`` (a Reidemeister II pair) at a random level."""
    candidates = [k for k in range(len(sigma.events) + 1) if width_at(sigma, k) >= 2]
    k = rng.choice(candidates)
    p = rng.randint(1, width_at(sigma, k) - 1)
    over = rng.choice(list(Over))
    events = list(sigma.events)
    events[k:k] = [Cross(p, over), Cross(p, over.flipped())]
    return TangleDiagram(sigma.n, tuple(events))


def conjugate_by_braid(sigma: TangleDiagram, rng: random.Random) -> TangleDiagram:
    gamma = from_braid(sigma.n, random_braid_word(rng, sigma.n, rng.randint(1, 3)))
    inverse = TangleDiagram(sigma.n, tuple(reflect(gamma.events)))
    return stack(stack(gamma, sigma), inverse)


def switch_event(sigma: TangleDiagram, k: int) -> TangleDiagram:
    events = list(sigma.events)
    events[k] = Cross(events[k].p, events[k].over.flipped())
    return TangleDiagram(sigma.n, tuple(events))


def self_crossings(sigma: TangleDiagram) -> list[int]:
    return [k for k, (o, u, _) in sigma.crossing_info.items() if o.strand == u.strand]


# -- naive skein oracle: no memo, no Reidemeister moves, no truncation ------------

def naive_homfly(D: ClosedDiagram):
    from stringlink.laurent import LaurentPoly2

    t, z = LaurentPoly2.t(), LaurentPoly2.z()
    delta = (t**-1 - t) * z**-1
    xs = list(D.crossings)
    # traverse each component from its smallest edge, components by smallest edge
    head = {}
    for idx, c in enumerate(xs):
        head[c.ui] = (idx, False)
        head[c.oi] = (idx, True)
    seen_edges: set[int] = set()
    met: set[int] = set()
    components = D.loops
    target = None
    for start in sorted(head):
        if start in seen_edges:
            continue
        components += 1
        e = start
        while e not in seen_edges:
            seen_edges.add(e)
            idx, over = head[e]
            if target is None and idx not in met and not over:
                target = idx
            met.add(idx)
            e = xs[idx].oo if over else xs[idx].uo
    if target is None:
        out = LaurentPoly2.const(1)
        for _ in range(components - 1):
            out = out * delta
        return out
    from stringlink.closed import smooth_crossing, switch_crossing

    s = xs[target].sign
    a = naive_homfly(switch_crossing(D, target))
    b = naive_homfly(smooth_crossing(D, target))
    return t ** (2 * s) * a + s * t**s * z * b


def mirror_substitute(P):
    """``P(t^-1, -z)``: the polynomial of the mirror image."""
    from stringlink.laurent import LaurentPoly2

    return LaurentPoly2({(-a, b): c * (-1) ** b for (a, b), c in P.items()})
