"""Both sides of the mu/HOMFLYPT identities, evaluated exactly.

For a string link ``sigma``, a permutation ``I`` of its strands and a
subsequence ``J`` of ``I``, the knot ``sigma_IJ`` is the closure of
``b_I . sigma_J`` (see :func:`stringlink.tangle.sigma_IJ_knot`).

* length 3, no hypothesis::

      mu(I) = -sum_J (-1)^|J| a2(sigma_IJ) - lk(i1 i2) lk(i2 i3) + A_I

  with ``A_I = lk(i1 i2)`` for ``I = 312``, ``-lk(i1 i2)`` for ``I = 132``,
  and ``0`` otherwise.
* length ``n >= 4``, when every mu of length ``<= n - 2`` vanishes::

      mu(I) = (-1)^(n-1) / (2^(n-1) (n-1)!) * sum_J (-1)^|J| P0^(n-1)(sigma_IJ; 1)

Sequences shorter than the strand count are handled on the sub-string-link
of the strands they mention.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from math import factorial

from stringlink import milnor, skein
from stringlink.tangle import (
    DiagramError,
    MultiIndex,
    TangleDiagram,
    delete_strand,
    serialize,
    sigma_IJ_knot,
    subsequences,
)

__all__ = [
    "DivisibilityError",
    "VerificationReport",
    "TermRow",
    "thm2_A_term",
    "thm2_rhs",
    "thm1_rhs",
    "check_vanishing",
    "sub_string_link",
    "verify",
]


class DivisibilityError(ArithmeticError):
    """The alternating P0-derivative sum is not a multiple of ``2^(n-1) (n-1)!``."""

    def __init__(self, total: int, divisor: int):
        super().__init__(f"signed sum {total} is not divisible by {divisor}")
        self.total = total
        self.divisor = divisor


@dataclass
class TermRow:
    J: str
    crossings: int
    value: int


@dataclass
class VerificationReport:
    theorem: int
    sigma: str
    I: str
    left: int | None = None
    right: int | None = None
    terms: list[TermRow] = field(default_factory=list)
    passed: bool = False
    status: str = "pending"
    seconds: float = 0.0

    def to_json(self) -> dict:
        d = asdict(self)
        for key in ("left", "right"):
            d[key] = None if d[key] is None else str(d[key])
        d["terms"] = [{"J": r["J"], "crossings": str(r["crossings"]), "value": str(r["value"])} for r in d["terms"]]
        d["pass"] = d.pop("passed")
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _I(I) -> MultiIndex:
    return MultiIndex(I)


def thm2_A_term(I, lk12: int) -> int:
    I = _I(I)
    if not I.is_permutation(3):
        raise DiagramError(f"{tuple(I)} is not a permutation of 123")
    return {(3, 1, 2): lk12, (1, 3, 2): -lk12}.get(tuple(I), 0)


def _label(J) -> str:
    return "".join(map(str, J)) or "()"


def _alternating(sigma, I, invariant, rows) -> int:
    total = 0
    for J in subsequences(I):
        K = sigma_IJ_knot(sigma, I, J)
        v = invariant(K)
        if rows is not None:
            rows.append(TermRow(_label(J), len(K.crossings), v))
        total += (-1) ** len(J) * v
    return total


def thm2_rhs(sigma: TangleDiagram, I, budget: int | None = None, rows: list | None = None) -> int:
    I = _I(I)
    if sigma.n != 3:
        raise DiagramError(f"length-3 formula needs a 3-string link, got {sigma.n} strands")
    if not I.is_permutation(3):
        raise DiagramError(f"{tuple(I)} is not a permutation of 123")
    i1, i2, i3 = I
    lk12 = milnor.linking_number(sigma, i1, i2)
    lk23 = milnor.linking_number(sigma, i2, i3)
    s = _alternating(sigma, I, lambda K: skein.a2(K, budget), rows)
    return -s - lk12 * lk23 + thm2_A_term(I, lk12)


def thm1_rhs(sigma: TangleDiagram, I, budget: int | None = None, rows: list | None = None) -> int:
    I = _I(I)
    n = sigma.n
    if n < 4:
        raise DiagramError("the P0-derivative formula needs at least 4 strands")
    if not I.is_permutation(n):
        raise DiagramError(f"{tuple(I)} is not a permutation of 1..{n}")
    s = _alternating(sigma, I, lambda K: skein.p0_deriv(K, n - 1, budget), rows)
    s *= (-1) ** (n - 1)
    d = 2 ** (n - 1) * factorial(n - 1)
    if s % d:
        raise DivisibilityError(s, d)
    return s // d


def check_vanishing(sigma: TangleDiagram, maxlen: int) -> bool:
    """True iff every distinct-index mu of length ``2..maxlen`` is zero."""
    if maxlen < 2:
        raise ValueError("maxlen must be at least 2")
    n = sigma.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if milnor.linking_number(sigma, i, j):
                return False
    for length in range(3, min(maxlen, n) + 1):
        if any(milnor.mu_table(sigma, length).values()):
            return False
    return True


def sub_string_link(sigma: TangleDiagram, keep) -> tuple[TangleDiagram, dict[int, int]]:
    """Delete the strands not in ``keep``; returns the diagram and old->new labels."""
    keep = set(keep)
    out = sigma
    for i in sorted(set(range(1, sigma.n + 1)) - keep, reverse=True):
        out = delete_strand(out, i)
    relabel = {old: new for new, old in enumerate(sorted(keep), 1)}
    return out, relabel


def verify(sigma: TangleDiagram, I, theorem: int, budget: int | None = None, description: str | None = None) -> VerificationReport:
    """Compare ``mu(sigma, I)`` with the HOMFLYPT side of the chosen identity.

    ``status`` is one of ``pass``, ``fail``, ``hypothesis-violated``,
    ``indivisible`` (the P0 sum failed the divisibility check), or
    ``budget-exceeded``.
    """
    I = _I(I)
    sigma.require_string_link()
    start = time.perf_counter()
    report = VerificationReport(theorem, description or serialize(sigma), str(I))
    if theorem not in (1, 2):
        raise ValueError("theorem must be 1 or 2")
    if max(I) > sigma.n:
        raise DiagramError(f"index {max(I)} outside 1..{sigma.n}")
    if theorem == 2 and len(I) != 3:
        raise DiagramError("theorem 2 takes a sequence of length 3")
    if theorem == 1 and len(I) < 4:
        raise DiagramError("theorem 1 takes a sequence of length at least 4")

    sub, relabel = sub_string_link(sigma, I)
    Isub = MultiIndex(relabel[i] for i in I)
    try:
        report.left = milnor.mu(sigma, I)
        if theorem == 1 and not check_vanishing(sub, len(I) - 2):
            report.status = "hypothesis-violated"
            return report
        rhs = thm1_rhs if theorem == 1 else thm2_rhs
        report.right = rhs(sub, Isub, budget, report.terms)
        back = {new: old for old, new in relabel.items()}
        for row in report.terms:
            if row.J != "()":
                row.J = "".join(str(back[int(ch)]) for ch in row.J)
    except DivisibilityError:
        report.status = "indivisible"
        return report
    except skein.SkeinBudgetExceeded:
        report.status = "budget-exceeded"
        return report
    finally:
        report.seconds = round(time.perf_counter() - start, 6)
    report.passed = report.left == report.right
    report.status = "pass" if report.passed else "fail"
    return report
