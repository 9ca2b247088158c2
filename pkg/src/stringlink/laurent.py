"""Exact Laurent polynomials in ``t, z`` and truncated Magnus series.

Both types are immutable sparse maps with Python ``int`` coefficients, so
every computation is exact regardless of coefficient size.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = ["LaurentPoly2", "TruncatedSeries"]


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v}


class LaurentPoly2:
    """Sparse element of ``Z[t, t^-1, z, z^-1]``.

    Terms are keyed by exponent pairs ``(e_t, e_z)``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self._terms = _clean(terms or {})
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: int) -> LaurentPoly2:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: int = 1, et: int = 0, ez: int = 0) -> LaurentPoly2:
        return cls({(et, ez): c})

    @classmethod
    def t(cls, e: int = 1) -> LaurentPoly2:
        return cls({(e, 0): 1})

    @classmethod
    def z(cls, e: int = 1) -> LaurentPoly2:
        return cls({(0, e): 1})

    @classmethod
    def _coerce(cls, other) -> LaurentPoly2:
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, int):
            return cls.const(other)
        return NotImplemented

    # -- mapping-ish access -------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, et: int, ez: int) -> int:
        return self._terms.get((et, ez), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def z_degrees(self) -> tuple[int, int]:
        """Return ``(min, max)`` exponent of ``z``; raises on zero."""
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        ez = [k[1] for k in self._terms]
        return min(ez), max(ez)

    # -- ring operations ----------------------------------------------------
    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly2:
        return LaurentPoly2({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly2({k: v * other for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentPoly2:
        if e < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((a, b), c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly2({(a * e, b * e): c ** -e})
        out = LaurentPoly2.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, et: int = 0, ez: int = 0, c: int = 1) -> LaurentPoly2:
        """Multiply by the monomial ``c * t^et * z^ez``."""
        return LaurentPoly2({(a + et, b + ez): v * c for (a, b), v in self._terms.items()})

    def truncate_z(self, zmax: int | None) -> LaurentPoly2:
        if zmax is None:
            return self
        return LaurentPoly2({k: v for k, v in self._terms.items() if k[1] <= zmax})

    # -- calculus -----------------------------------------------------------
    def derivative_t(self, m: int = 1) -> LaurentPoly2:
        """Formal ``m``-th derivative in ``t``."""
        out = self._terms
        for _ in range(m):
            out = {(a - 1, b): v * a for (a, b), v in out.items() if a}
        return LaurentPoly2(out)

    def eval_t1(self) -> LaurentPoly2:
        """Substitute ``t = 1``; the result has only ``t^0`` terms."""
        out: dict[tuple[int, int], int] = {}
        for (_, b), v in self._terms.items():
            out[(0, b)] = out.get((0, b), 0) + v
        return LaurentPoly2(out)

    def coeff_z(self, k: int) -> LaurentPoly2:
        """Coefficient of ``z^k`` as a Laurent polynomial in ``t``."""
        return LaurentPoly2({(a, 0): v for (a, b), v in self._terms.items() if b == k})

    def constant(self) -> int:
        """Integer value of a polynomial with only a ``t^0 z^0`` term."""
        if any(k != (0, 0) for k in self._terms):
            raise ValueError(f"not a constant: {self}")
        return self._terms.get((0, 0), 0)

    def __int__(self) -> int:
        return self.constant()

    # -- text form ----------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        keys = sorted(self._terms, key=lambda k: (k[1], -k[0]))
        parts = []
        for i, (a, b) in enumerate(keys):
            c = self._terms[(a, b)]
            mono = []
            if a:
                mono.append("t" if a == 1 else f"t^{a}")
            if b:
                mono.append("z" if b == 1 else f"z^{b}")
            body = "*".join([str(abs(c))] + mono)
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly2({str(self)!r})"

    _TERM = re.compile(r"^(\d+)?((?:\*?[tz](?:\^-?\d+)?)*)$")
    _VAR = re.compile(r"([tz])(?:\^(-?\d+))?")

    @classmethod
    def parse(cls, text: str) -> LaurentPoly2:
        """Parse the canonical text form (and lenient variants of it)."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        # split on +/- that are not exponent signs
        pieces = re.findall(r"([+-]?)((?:[^+-]|(?<=\^)-)+)", s)
        if "".join(sg + body for sg, body in pieces) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        out: dict[tuple[int, int], int] = {}
        for sign, body in pieces:
            m = cls._TERM.match(body)
            if not m or not body:
                raise ValueError(f"bad term {body!r} in {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            if not m.group(1) and not m.group(2):
                raise ValueError(f"bad term {body!r}")
            a = b = 0
            for var, exp in cls._VAR.findall(m.group(2)):
                e = int(exp) if exp else 1
                if var == "t":
                    a += e
                else:
                    b += e
            c = -c if sign == "-" else c
            out[(a, b)] = out.get((a, b), 0) + c
        return cls(out)


Word = tuple[int, ...]


class TruncatedSeries:
    """Noncommutative power series in ``X_1..X_n`` modulo words longer than ``q``.

    Words are tuples of 1-based letter indices; the empty tuple is the
    constant term.
    """

    __slots__ = ("n", "q", "_terms")

    def __init__(self, n: int, q: int, terms: Mapping[Word, int] | None = None):
        self.n = n
        self.q = q
        self._terms = {w: c for w, c in (terms or {}).items() if c and len(w) <= q}

    @classmethod
    def one(cls, n: int, q: int) -> TruncatedSeries:
        return cls(n, q, {(): 1})

    @classmethod
    def generator(cls, n: int, q: int, i: int) -> TruncatedSeries:
        """Magnus image ``1 + X_i`` of the i-th free generator."""
        if not 1 <= i <= n:
            raise ValueError(f"letter {i} outside 1..{n}")
        return cls(n, q, {(): 1, (i,): 1})

    def _check(self, other: TruncatedSeries) -> None:
        if (self.n, self.q) != (other.n, other.q):
            raise ValueError("series live in different truncated algebras")

    def __getitem__(self, word: Iterable[int]) -> int:
        return self._terms.get(tuple(word), 0)

    coeff = __getitem__

    def items(self):
        return self._terms.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.n, self.q, self._terms) == (other.n, other.q, other._terms)

    def __hash__(self) -> int:
        return hash((self.n, self.q, frozenset(self._terms.items())))

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return TruncatedSeries(self.n, self.q, out)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.n, self.q, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        q = self.q
        out: dict[Word, int] = {}
        right = sorted(other._terms.items(), key=lambda wc: len(wc[0]))
        for w1, c1 in self._terms.items():
            room = q - len(w1)
            for w2, c2 in right:
                if len(w2) > room:
                    break
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return TruncatedSeries(self.n, q, out)

    def inverse(self) -> TruncatedSeries:
        """Two-sided inverse; needs constant term 1."""
        if self[()] != 1:
            raise ValueError("only series with constant term 1 are invertible here")
        h = self - TruncatedSeries.one(self.n, self.q)
        out = TruncatedSeries.one(self.n, self.q)
        power = TruncatedSeries.one(self.n, self.q)
        for k in range(1, self.q + 1):
            power = power * h
            if not power._terms:
                break
            out = out + power if k % 2 == 0 else out - power
        return out

    def __pow__(self, e: int) -> TruncatedSeries:
        base = self if e >= 0 else self.inverse()
        out = TruncatedSeries.one(self.n, self.q)
        for _ in range(abs(e)):
            out = out * base
        return out

    def conjugate(self, w: TruncatedSeries, eps: int = 1) -> TruncatedSeries:
        """Return ``w^-eps * self * w^eps``."""
        return (w ** -eps) * self * (w ** eps)

    def __repr__(self) -> str:
        body = ", ".join(f"{''.join(map(str, w)) or '1'}:{c}" for w, c in sorted(self._terms.items()))
        return f"TruncatedSeries(n={self.n}, q={self.q}, {{{body}}})"
