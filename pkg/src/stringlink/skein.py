"""HOMFLYPT and Conway polynomials by skein recursion.

Conventions: ``P(unknot) = 1`` and ``t^-1 P(L+) - t P(L-) = z P(L0)``.
Solved for the crossing being resolved this gives

* positive crossing: ``P(D) = t^2 P(D_switched) + t z P(D_smoothed)``
* negative crossing: ``P(D) = t^-2 P(D_switched) - t^-1 z P(D_smoothed)``

The recursion walks components from their lowest edge in order of lowest
edge, and resolves the first crossing met on its under-strand before its
over-strand.  A diagram with no such crossing is a descending diagram of
the unlink.  Kinks and bigons (Reidemeister I/II) are removed before each
step and split diagrams are evaluated piece by piece; both preserve the
link type, so they only prune the tree.

Callers that need only low powers of ``z`` pass ``zmax``: a ``c``-component
link has no HOMFLYPT terms below ``z^(1-c)`` and no Conway terms below
``z^(c-1)``, which cuts off most smoothing branches.
"""

from __future__ import annotations

import sys
from math import comb

from stringlink.closed import ClosedDiagram, Crossing
from stringlink.laurent import LaurentPoly2

__all__ = [
    "SkeinBudgetExceeded",
    "SkeinEngine",
    "DEFAULT_BUDGET",
    "homfly",
    "conway",
    "a2",
    "p0",
    "p0_deriv",
    "unlink_value",
    "simplify",
    "clear_cache",
]

DEFAULT_BUDGET = 2**24

_ONE = LaurentPoly2.const(1)
_ZERO = LaurentPoly2()
_DELTA = LaurentPoly2({(-1, -1): 1, (1, -1): -1})  # (t^-1 - t) z^-1


class SkeinBudgetExceeded(RuntimeError):
    """The skein tree grew past the configured node budget."""


def unlink_value(c: int) -> LaurentPoly2:
    """HOMFLYPT polynomial of the ``c``-component unlink."""
    return _DELTA ** (c - 1) if c >= 1 else _ONE


# -- diagram reductions ------------------------------------------------------------

def _edge_roles(D: ClosedDiagram) -> tuple[dict, dict]:
    tail, head = {}, {}
    for idx, c in enumerate(D.crossings):
        head[c.ui] = (idx, False)
        head[c.oi] = (idx, True)
        tail[c.uo] = (idx, False)
        tail[c.oo] = (idx, True)
    return tail, head


def _straight(c: Crossing) -> list[tuple[int, int]]:
    return [(c.ui, c.uo), (c.oi, c.oo)]


def _find_bigon(D: ClosedDiagram) -> tuple[int, int] | None:
    tail, head = _edge_roles(D)
    for face in D.faces():
        if len(face) != 2:
            continue
        e1, e2 = face[0] >> 1, face[1] >> 1
        t1, h1 = tail[e1], head[e1]
        t2, h2 = tail[e2], head[e2]
        if t1[0] == h1[0] or t2[0] == h2[0]:
            continue
        kinds = {(t1[1], h1[1]), (t2[1], h2[1])}
        if kinds == {(True, True), (False, False)}:
            a, b = {t1[0], h1[0]}
            if D.crossings[a].sign != D.crossings[b].sign:
                return a, b
    return None


def simplify(D: ClosedDiagram) -> ClosedDiagram:
    """Remove Reidemeister I kinks and Reidemeister II bigons until none remain."""
    while True:
        for idx, c in enumerate(D.crossings):
            if c.oo == c.ui or c.uo == c.oi:
                D = D.without([idx], _straight(c))
                break
        else:
            pair = _find_bigon(D)
            if pair is None:
                return D
            a, b = pair
            D = D.without(pair, _straight(D.crossings[a]) + _straight(D.crossings[b]))


def _pieces(D: ClosedDiagram) -> list[ClosedDiagram]:
    """Split the crossings into diagram-connected pieces (loops excluded)."""
    parent = list(range(len(D.crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    tail, head = _edge_roles(D)
    for e, (a, _) in tail.items():
        b = head[e][0]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[Crossing]] = {}
    for idx, c in enumerate(D.crossings):
        groups.setdefault(find(idx), []).append(c)
    return [ClosedDiagram(tuple(g), 0) for g in groups.values()]


def _first_ascending(D: ClosedDiagram) -> int | None:
    heads = D._heads()
    seen = set()
    for cyc in D.component_cycles():
        for e in cyc:
            idx, over = heads[e]
            if idx in seen:
                continue
            if not over:
                return idx
            seen.add(idx)
    return None


# -- engine ---------------------------------------------------------------------

class SkeinEngine:
    """Memoizing skein evaluator with a hard node budget.

    The memo is a pure function cache keyed by the canonical labeling of a
    diagram, the evaluation mode and the ``z`` cutoff; it is cleared when it
    exceeds ``memo_size`` entries.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET, memo_size: int = 500_000):
        self.budget = budget
        self.memo_size = memo_size
        self._memo: dict = {}
        self.nodes = 0

    def clear(self) -> None:
        self._memo.clear()

    # public entry points reset the per-call node counter
    def homfly(self, D: ClosedDiagram, zmax: int | None = None) -> LaurentPoly2:
        self.nodes = 0
        return self._run(D, "P", zmax)

    def conway(self, D: ClosedDiagram, zmax: int | None = None) -> LaurentPoly2:
        self.nodes = 0
        return self._run(D, "C", zmax)

    def _run(self, D, mode, zmax):
        # recursion depth grows with the crossing count
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 8 * len(D.crossings) + 200))
        try:
            return self._eval(D, mode, zmax)
        finally:
            sys.setrecursionlimit(old)

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SkeinBudgetExceeded(f"skein tree exceeded {self.budget} nodes")

    def _eval(self, D: ClosedDiagram, mode: str, zmax: int | None) -> LaurentPoly2:
        self._tick()
        D = simplify(D)
        pieces = _pieces(D) if D.crossings else []
        m = len(pieces) + D.loops
        if mode == "C":
            if m > 1:
                return _ZERO
            if not pieces:
                return _ONE.truncate_z(zmax)
            return self._connected(pieces[0], mode, zmax)

        if not pieces:
            return unlink_value(m).truncate_z(zmax)
        comps = [p.component_count for p in pieces]
        floor = sum(1 - c for c in comps) - (m - 1)
        if zmax is not None and zmax < floor:
            return _ZERO
        out = _DELTA ** (m - 1)
        for k, piece in enumerate(pieces):
            sub = None if zmax is None else zmax - (floor - (1 - comps[k]))
            out = out * self._connected(piece, mode, sub)
            if not out:
                return _ZERO
        return out.truncate_z(zmax)

    def _connected(self, D: ClosedDiagram, mode: str, zmax: int | None) -> LaurentPoly2:
        D = D.canonical()
        c = D.component_count
        if zmax is not None:
            if mode == "P" and zmax < 1 - c:
                return _ZERO
            if mode == "C" and zmax < c - 1:
                return _ZERO
        key = (mode, zmax, D.crossings)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        idx = _first_ascending(D)
        if idx is None:
            if mode == "C":
                res = _ONE if c == 1 else _ZERO
            else:
                res = unlink_value(c).truncate_z(zmax)
        else:
            x = D.crossings[idx]
            xs = list(D.crossings)
            xs[idx] = Crossing(x.oi, x.oo, x.ui, x.uo, -x.sign)
            switched = ClosedDiagram(tuple(xs), D.loops)
            smoothed = D.without([idx], [(x.ui, x.oo), (x.oi, x.uo)])
            sub = None if zmax is None else zmax - 1
            a = self._eval(switched, mode, zmax)
            b = self._eval(smoothed, mode, sub)
            s = x.sign
            if mode == "C":
                res = a + b.shift(ez=1, c=s)
            else:
                res = a.shift(et=2 * s) + b.shift(et=s, ez=1, c=s)
            res = res.truncate_z(zmax)
        if len(self._memo) >= self.memo_size:
            self._memo.clear()
        self._memo[key] = res
        return res


_default = SkeinEngine()


def clear_cache() -> None:
    """Drop the shared memo; budgets then count a full evaluation again."""
    _default.clear()


def _engine(budget: int | None) -> SkeinEngine:
    if budget is None or budget == _default.budget:
        return _default
    eng = SkeinEngine(budget)
    eng._memo = _default._memo
    return eng


def homfly(D: ClosedDiagram, budget: int | None = None, zmax: int | None = None) -> LaurentPoly2:
    """HOMFLYPT polynomial ``P(D; t, z)``; with ``zmax`` only terms up to ``z^zmax``."""
    return _engine(budget).homfly(D, zmax)


def conway(D: ClosedDiagram, budget: int | None = None, zmax: int | None = None) -> LaurentPoly2:
    """Conway polynomial (only ``t^0`` terms), by the ``t = 1`` recursion."""
    return _engine(budget).conway(D, zmax)


def _require_knot(D: ClosedDiagram) -> None:
    if D.component_count != 1:
        raise ValueError(f"expected a knot diagram, got {D.component_count} components")


def a2(D: ClosedDiagram, budget: int | None = None) -> int:
    """Coefficient of ``z^2`` in the Conway polynomial of a knot."""
    _require_knot(D)
    return conway(D, budget, zmax=2).coeff(0, 2)


def p0(D: ClosedDiagram, budget: int | None = None) -> LaurentPoly2:
    """Zeroth coefficient polynomial ``P_0(K; t)`` of a knot."""
    _require_knot(D)
    return homfly(D, budget, zmax=0).coeff_z(0)


def p0_deriv(D: ClosedDiagram, m: int, budget: int | None = None) -> int:
    """``m``-th ``t``-derivative of ``P_0(K; t)`` at ``t = 1``."""
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    return sum(c for _, c in p0(D, budget).derivative_t(m).items())


def leibniz_p0(d1: list[int], d2: list[int], m: int) -> int:
    """``m``-th derivative at 1 of a product from the factors' derivatives."""
    return sum(comb(m, k) * d1[k] * d2[m - k] for k in range(m + 1))
