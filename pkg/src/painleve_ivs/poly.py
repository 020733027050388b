"""Sparse exact multivariate polynomials over the rationals.

A monomial is a tuple of ``(symbol_index, exponent)`` pairs, sorted by
symbol index, with every exponent positive; the empty tuple is the
constant monomial.  A polynomial is an immutable mapping from monomials
to nonzero ``Fraction`` coefficients.  The canonical form of a
polynomial is its list of ``(monomial, coefficient)`` pairs sorted in
descending graded lexicographic order (total degree first, then
lexicographic with lower symbol index more significant); two
polynomials are equal exactly when their canonical forms coincide,
which for the dict representation is plain dict equality.

Division is exact or nothing: ``exact_divide`` returns the quotient
when the divisor divides exactly and ``None`` otherwise.  No generic
multivariate gcd is ever computed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Mapping, Union

from .symbols import UNIVERSE

__all__ = [
    "Monomial",
    "Scalar",
    "Poly",
    "mono_mul",
    "mono_div",
    "mono_degree",
    "mono_cmp",
    "exact_divide",
]

Monomial = tuple  # tuple[tuple[int, int], ...]
Scalar = Union[Fraction, int]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Product of two monomials (merge of sorted exponent vectors)."""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        sa, ea = a[i]
        sb, eb = b[j]
        if sa == sb:
            out.append((sa, ea + eb))
            i += 1
            j += 1
        elif sa < sb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """Quotient a/b, or None when b does not divide a."""
    if not b:
        return a
    quot = []
    i = j = 0
    na, nb = len(a), len(b)
    while j < nb:
        if i >= na:
            return None
        sa, ea = a[i]
        sb, eb = b[j]
        if sa < sb:
            quot.append(a[i])
            i += 1
        elif sa > sb:
            return None
        else:
            if ea < eb:
                return None
            if ea > eb:
                quot.append((sa, ea - eb))
            i += 1
            j += 1
    quot.extend(a[i:])
    return tuple(quot)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_cmp(a: Monomial, b: Monomial) -> int:
    """Graded-lex comparison: returns 1 if a > b, -1 if a < b, 0 if equal."""
    da, db = mono_degree(a), mono_degree(b)
    if da != db:
        return 1 if da > db else -1
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        sa, ea = a[i]
        sb, eb = b[j]
        if sa != sb:
            # The monomial with a positive exponent at the smaller index
            # is lexicographically larger.
            return 1 if sa < sb else -1
        if ea != eb:
            return 1 if ea > eb else -1
        i += 1
        j += 1
    if i < na:
        return 1
    if j < nb:
        return -1
    return 0


_MONO_KEY = cmp_to_key(mono_cmp)


class Poly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        # Internal constructor; zero coefficients are dropped.
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = c if isinstance(c, Fraction) else Fraction(c)
        self._t = t
        self._hash = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return _POLY_ZERO

    @staticmethod
    def const(c: Scalar) -> "Poly":
        c = Fraction(c)
        if not c:
            return _POLY_ZERO
        return Poly({(): c})

    @staticmethod
    def var(idx: int, exp: int = 1) -> "Poly":
        if exp == 0:
            return Poly.const(1)
        return Poly({((idx, exp),): _ONE})

    # -- basic queries -----------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def is_const(self) -> bool:
        return not self._t or (len(self._t) == 1 and () in self._t)

    def const_value(self) -> Fraction:
        """Value of a constant polynomial (raises if non-constant)."""
        if not self._t:
            return _ZERO
        if len(self._t) == 1 and () in self._t:
            return self._t[()]
        raise ValueError("polynomial is not constant")

    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._t

    def __len__(self) -> int:
        return len(self._t)

    def total_degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        if not self._t:
            return -1
        return max(mono_degree(m) for m in self._t)

    def degree_in(self, sym: int) -> int:
        """Degree in one symbol (0 if absent, -1 for zero polynomial)."""
        if not self._t:
            return -1
        best = 0
        for m in self._t:
            for s, e in m:
                if s == sym and e > best:
                    best = e
        return best

    def symbols(self) -> set:
        out = set()
        for m in self._t:
            for s, _ in m:
                out.add(s)
        return out

    def sorted_terms(self) -> list:
        """Canonical form: (monomial, coeff) pairs, graded-lex descending."""
        return [(m, self._t[m]) for m in sorted(self._t, key=_MONO_KEY, reverse=True)]

    def leading(self) -> tuple:
        """Leading (monomial, coefficient) under graded-lex (zero poly raises)."""
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._t, key=_MONO_KEY)
        return m, self._t[m]

    def monic(self) -> tuple:
        """(leading coefficient, self / leading coefficient)."""
        _, lc = self.leading()
        if lc == 1:
            return lc, self
        return lc, self * (1 / lc)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for m, c in other._t.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        p = Poly.__new__(Poly)
        p._t = t
        p._hash = None
        return p

    def __neg__(self) -> "Poly":
        p = Poly.__new__(Poly)
        p._t = {m: -c for m, c in self._t.items()}
        p._hash = None
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return _POLY_ZERO
            p = Poly.__new__(Poly)
            p._t = {m: v * c for m, v in self._t.items()}
            p._hash = None
            return p
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._t or not other._t:
            return _POLY_ZERO
        # Convolve the smaller factor over the larger.
        a, b = self._t, other._t
        if len(a) > len(b):
            a, b = b, a
        if len(a) * len(b) >= 512:
            return self._mul_big(a, b)
        t: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                c = ca * cb
                s = t.get(m)
                if s is None:
                    t[m] = c
                else:
                    s = s + c
                    if s:
                        t[m] = s
                    else:
                        del t[m]
        p = Poly.__new__(Poly)
        p._t = t
        p._hash = None
        return p

    @staticmethod
    def _mul_big(a: Mapping, b: Mapping) -> "Poly":
        """Large convolution over integer-scaled coefficients.

        Clearing denominators first replaces per-term Fraction
        arithmetic (gcd-heavy) with plain integer arithmetic; the
        common denominator is divided back out once at the end.
        """
        from math import lcm

        da = lcm(*(c.denominator for c in a.values())) if len(a) > 1 else next(iter(a.values())).denominator
        db = lcm(*(c.denominator for c in b.values())) if len(b) > 1 else next(iter(b.values())).denominator
        ia = {m: int(c * da) for m, c in a.items()}
        ib = {m: int(c * db) for m, c in b.items()}
        t: dict = {}
        get = t.get
        for ma, ca in ia.items():
            for mb, cb in ib.items():
                m = mono_mul(ma, mb)
                s = get(m)
                t[m] = ca * cb if s is None else s + ca * cb
        scale = da * db
        out = {m: Fraction(c, scale) for m, c in t.items() if c}
        p = Poly.__new__(Poly)
        p._t = out
        p._hash = None
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == Poly.const(other)._t
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- calculus and evaluation --------------------------------------

    def diff(self, sym: int) -> "Poly":
        """Partial derivative with respect to one symbol."""
        t: dict = {}
        for m, c in self._t.items():
            for k, (s, e) in enumerate(m):
                if s == sym:
                    if e == 1:
                        dm = m[:k] + m[k + 1:]
                    else:
                        dm = m[:k] + ((s, e - 1),) + m[k + 1:]
                    prev = t.get(dm)
                    t[dm] = (prev or _ZERO) + c * e
                    break
        return Poly(t)

    def substitute(self, images: Mapping[int, "Poly"]) -> "Poly":
        """Substitute polynomials for symbols (symbols absent stay put)."""
        if not self._t:
            return self
        relevant = {s for s in self.symbols() if s in images}
        if not relevant:
            return self
        cache: dict = {}

        def power(s: int, e: int) -> Poly:
            key = (s, e)
            got = cache.get(key)
            if got is None:
                got = images[s] ** e
                cache[key] = got
            return got

        total = _POLY_ZERO
        for m, c in self._t.items():
            term = Poly.const(c)
            for s, e in m:
                if s in relevant:
                    term = term * power(s, e)
                else:
                    term = term * Poly.var(s, e)
            total = total + term
        return total

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        """Exact evaluation; every symbol of the polynomial must be given."""
        total = _ZERO
        for m, c in self._t.items():
            v = c
            for s, e in m:
                v = v * point[s] ** e
            total += v
        return total

    def evaluate_complex(self, point: Mapping[int, complex]) -> complex:
        total = 0j
        for m, c in self._t.items():
            v = complex(c)
            for s, e in m:
                v = v * point[s] ** e
            total += v
        return total

    def as_univariate(self, sym: int) -> dict:
        """Coefficients by power of one symbol: {exp: Poly without sym}."""
        out: dict = {}
        for m, c in self._t.items():
            e_sym = 0
            rest = []
            for s, e in m:
                if s == sym:
                    e_sym = e
                else:
                    rest.append((s, e))
            bucket = out.setdefault(e_sym, {})
            rm = tuple(rest)
            bucket[rm] = bucket.get(rm, _ZERO) + c
        return {e: Poly(t) for e, t in out.items()}

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        from .parsing import poly_to_text

        return f"Poly({poly_to_text(self)})"


_POLY_ZERO = Poly()


# Deterministic specialization values for the divisibility pre-check.
_SPEC_VALUES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def might_divide(num: Poly, den: Poly) -> bool:
    """Cheap necessary condition for den | num (False is definitive).

    If den divides num as multivariate polynomials, the same holds
    after specializing every symbol but one to fixed integers.  The
    specialized quotient is a univariate exact division, so a nonzero
    univariate remainder proves indivisibility.  A True return is only
    a hint; the caller still performs the exact division.
    """
    if num.is_zero():
        return True
    if den.total_degree() > num.total_degree():
        return False
    den_syms = den.symbols()
    for s in den_syms:
        if den.degree_in(s) > num.degree_in(s):
            return False
    if not den_syms:
        return True
    pivot = max(den_syms, key=den.degree_in)
    values = {
        s: _SPEC_VALUES[s % len(_SPEC_VALUES)]
        for s in (num.symbols() | den_syms)
        if s != pivot
    }

    def specialize(p: Poly) -> list:
        out: dict = {}
        powers: dict = {}
        for m, c in p.terms().items():
            e_piv = 0
            v = c
            for s, e in m:
                if s == pivot:
                    e_piv = e
                else:
                    key = (s, e)
                    w = powers.get(key)
                    if w is None:
                        w = values[s] ** e
                        powers[key] = w
                    v = v * w
            out[e_piv] = out.get(e_piv, _ZERO) + v
        if not out:
            return []
        dense = [_ZERO] * (max(out) + 1)
        for e, c in out.items():
            dense[e] = c
        while dense and not dense[-1]:
            dense.pop()
        return dense

    u_den = specialize(den)
    if not u_den:
        return True  # collision: denominator specialized to zero
    u_num = specialize(num)
    if not u_num:
        return True
    if len(u_num) < len(u_den):
        return False
    # Synthetic exact division of the specialized univariates.
    rem = list(u_num)
    lead = u_den[-1]
    for k in range(len(rem) - len(u_den), -1, -1):
        c = rem[k + len(u_den) - 1]
        if not c:
            continue
        q = c / lead
        for i, dc in enumerate(u_den):
            rem[k + i] -= q * dc
    return not any(rem[: len(u_den) - 1])


def exact_divide(num: Poly, den: Poly) -> Poly | None:
    """Exact polynomial quotient num/den, or None if den does not divide num.

    Leading-term division under graded-lex: if the division is exact the
    loop terminates with remainder zero; the first failed leading-term
    division proves indivisibility.  The running remainder keeps its
    leading term in a lazy max-heap so each step costs O(|den| log n)
    instead of a full scan.
    """
    import heapq

    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return num
    dm, dc = den.leading()
    syms = sorted(num.symbols() | den.symbols())
    pos = {s: i for i, s in enumerate(syms)}
    width = len(syms)

    def heapkey(m: Monomial) -> tuple:
        # Negated graded-lex key: heapq is a min-heap, we need the max.
        exps = [0] * width
        deg = 0
        for s, e in m:
            exps[pos[s]] = -e
            deg += e
        return (-deg, tuple(exps))

    rem = dict(num.terms())
    heap = [(heapkey(m), m) for m in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = rem.get(m)
        if c is None:
            continue  # stale entry, monomial already cancelled
        qm = mono_div(m, dm)
        if qm is None:
            return None
        qc = c / dc
        quot[qm] = quot.get(qm, _ZERO) + qc
        # rem -= qc * qm * den  (cancels the leading term of rem)
        for m2, c2 in den.terms().items():
            mm = mono_mul(qm, m2)
            s = rem.get(mm)
            if s is None:
                rem[mm] = -qc * c2
                heapq.heappush(heap, (heapkey(mm), mm))
            else:
                s = s - qc * c2
                if s:
                    rem[mm] = s
                else:
                    del rem[mm]
    return Poly(quot) if not rem else None
