"""Exact rational functions with factored denominators.

A rational function is stored as ``num / prod(f_i ** m_i)`` where the
``f_i`` are monic polynomials kept as separate factors (never expanded
into one product) and the numerator is an arbitrary polynomial.
Reduction happens only by trial exact division of the numerator by each
denominator factor; no multivariate gcd is computed.  Consequently the
representation of a given rational function need not be unique —
equality is decided semantically, by subtracting and testing the
numerator for zero.

The zero function is canonically ``(0, no factors)``.  Denominator
factors record where an expression may blow up, so most verification
routines report them as the genericity assumptions of a computation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .poly import Poly, exact_divide, might_divide
from .symbols import ALPHA

__all__ = ["RatFn", "rat", "clear_denominators"]

Scalar = Union[Fraction, int]


def _factor_sort_key(item: tuple) -> tuple:
    f, m = item
    return (f.total_degree(), f.sorted_terms(), m)


class RatFn:
    """Immutable rational function: Poly numerator / factored denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Iterable[tuple] = ()):
        """Build and normalize.  ``den`` is an iterable of (Poly, mult).

        Factors are made monic (scale absorbed into the numerator),
        merged, and trial-divided into the numerator where possible.
        """
        merged: dict = {}
        scale = Fraction(1)
        for f, m in den:
            if m == 0:
                continue
            if m < 0:
                raise ValueError("denominator multiplicities must be positive")
            if f.is_zero():
                raise ZeroDivisionError("zero denominator factor")
            if f.is_const():
                scale *= f.const_value() ** m
                continue
            lc, monic = f.monic()
            if lc != 1:
                scale *= lc ** m
            merged[monic] = merged.get(monic, 0) + m
        if scale != 1:
            num = num * (1 / scale)
        if num.is_zero():
            self.num = num
            self.den = ()
            return
        # Trial-divide the numerator by each factor.
        if merged:
            for f in list(merged):
                while merged.get(f, 0) > 0:
                    if not might_divide(num, f):
                        break
                    q = exact_divide(num, f)
                    if q is None:
                        break
                    num = q
                    merged[f] -= 1
                if merged.get(f) == 0:
                    del merged[f]
        self.num = num
        self.den = tuple(sorted(merged.items(), key=_factor_sort_key))

    # -- constructors --------------------------------------------------

    @staticmethod
    def from_poly(p: Poly) -> "RatFn":
        r = RatFn.__new__(RatFn)
        r.num = p
        r.den = ()
        return r

    @staticmethod
    def const(c: Scalar) -> "RatFn":
        return RatFn.from_poly(Poly.const(c))

    @staticmethod
    def var(idx: int) -> "RatFn":
        return RatFn.from_poly(Poly.var(idx))

    @staticmethod
    def quotient(num: Poly, den: Poly, mult: int = 1) -> "RatFn":
        return RatFn(num, [(den, mult)])

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def as_poly(self) -> Poly:
        if self.den:
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    def is_const(self) -> bool:
        return not self.den and self.num.is_const()

    def const_value(self) -> Fraction:
        return self.as_poly().const_value()

    def symbols(self) -> set:
        out = self.num.symbols()
        for f, _ in self.den:
            out |= f.symbols()
        return out

    def den_poly(self) -> Poly:
        """The denominator, expanded into a single polynomial."""
        p = Poly.const(1)
        for f, m in self.den:
            p = p * f ** m
        return p

    def denominator_factors(self) -> tuple:
        return self.den

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "RatFn":
        other = rat(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        d1 = dict(self.den)
        d2 = dict(other.den)
        common = dict(d1)
        for f, m in d2.items():
            if common.get(f, 0) < m:
                common[f] = m
        n1 = self.num
        for f, m in common.items():
            extra = m - d1.get(f, 0)
            if extra:
                n1 = n1 * f ** extra
        n2 = other.num
        for f, m in common.items():
            extra = m - d2.get(f, 0)
            if extra:
                n2 = n2 * f ** extra
        return RatFn(n1 + n2, common.items())

    def __radd__(self, other) -> "RatFn":
        return self.__add__(other)

    def __neg__(self) -> "RatFn":
        r = RatFn.__new__(RatFn)
        r.num = -self.num
        r.den = self.den
        return r

    def __sub__(self, other) -> "RatFn":
        return self + (-rat(other))

    def __rsub__(self, other) -> "RatFn":
        return rat(other) + (-self)

    def __mul__(self, other) -> "RatFn":
        other = rat(other)
        if self.is_zero() or other.is_zero():
            return _RAT_ZERO
        den: dict = dict(self.den)
        for f, m in other.den:
            den[f] = den.get(f, 0) + m
        return RatFn(self.num * other.num, den.items())

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFn":
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        num = Poly.const(1)
        for f, m in self.den:
            num = num * f ** m
        return RatFn(num, [(self.num, 1)])

    def __truediv__(self, other) -> "RatFn":
        other = rat(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        if other.is_const():
            return self * RatFn.const(1 / other.const_value())
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "RatFn":
        return rat(other) / self

    def __pow__(self, n: int) -> "RatFn":
        if n < 0:
            return self.reciprocal() ** (-n)
        result = RatFn.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = rat(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return (self - other).is_zero()

    # -- calculus, substitution, evaluation ---------------------------------

    def diff(self, sym: int) -> "RatFn":
        """Partial derivative (factored quotient rule, one reduction)."""
        if not self.den:
            return RatFn.from_poly(self.num.diff(sym))
        distinct = [f for f, _ in self.den]
        prod_all = Poly.const(1)
        for f in distinct:
            prod_all = prod_all * f
        numerator = self.num.diff(sym) * prod_all
        for i, (f, m) in enumerate(self.den):
            df = f.diff(sym)
            if df.is_zero():
                continue
            partial = Poly.const(m)
            for j, g in enumerate(distinct):
                if j != i:
                    partial = partial * g
            numerator = numerator - self.num * df * partial
        den = [(f, m + 1) for f, m in self.den]
        return RatFn(numerator, den)

    def substitute(self, images: Mapping[int, "RatFn"]) -> "RatFn":
        """Substitute rational functions for symbols, exactly."""
        relevant = {s for s in self.symbols() if s in images}
        if not relevant:
            return self
        cache: dict = {}
        result = _subst_poly(self.num, images, cache)
        for f, m in self.den:
            result = result / _subst_poly(f, images, cache) ** m
        return result

    def substitute_poly(self, images: Mapping[int, Poly]) -> "RatFn":
        """Substitute polynomials for symbols (cheaper than general case)."""
        relevant = {s for s in self.symbols() if s in images}
        if not relevant:
            return self
        num = self.num.substitute(images)
        den = [(f.substitute(images), m) for f, m in self.den]
        return RatFn(num, den)

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        """Exact evaluation; raises ZeroDivisionError on a vanishing factor."""
        v = self.num.evaluate(point)
        for f, m in self.den:
            fv = f.evaluate(point)
            if fv == 0:
                raise ZeroDivisionError("denominator factor vanishes at point")
            v = v / fv ** m
        return v

    def evaluate_complex(self, point: Mapping[int, complex]) -> complex:
        v = self.num.evaluate_complex(point)
        for f, m in self.den:
            v = v / f.evaluate_complex(point) ** m
        return v

    # -- relation-aware equality --------------------------------------------

    def eq_mod_relation(self, other) -> bool:
        """Equality modulo the parameter normalization a0+...+a5 = 1.

        The relation is imposed by eliminating a0 := 1 - a1 - ... - a5
        in the numerator of the difference; it never enters ordinary
        arithmetic.
        """
        diff = self - rat(other)
        if diff.is_zero():
            return True
        images = {ALPHA[0]: _A0_ELIMINATED}
        return diff.num.substitute(images).is_zero()

    def normalized(self) -> "RatFn":
        """Canonical representative modulo a0 + ... + a5 = 1.

        Eliminates a0 := 1 - a1 - ... - a5 from numerator and
        denominator, letting cancellations that hold only on the
        normalized parameter space become visible to the reduction.
        Structural questions (polynomiality, pole orders) must be asked
        of this representative.
        """
        a0 = ALPHA[0]
        if a0 not in self.num.symbols() and all(
            a0 not in f.symbols() for f, _ in self.den
        ):
            return self
        images = {a0: _A0_ELIMINATED}
        num = self.num.substitute(images)
        den = [(f.substitute(images), m) for f, m in self.den]
        return RatFn(num, den)

    def __hash__(self):
        raise TypeError("RatFn is not hashable (representation is not unique)")

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        from .parsing import ratfn_to_text

        return f"RatFn({ratfn_to_text(self)})"


def rat(x) -> RatFn:
    """Coerce int/Fraction/Poly/RatFn to RatFn."""
    if isinstance(x, RatFn):
        return x
    if isinstance(x, Poly):
        return RatFn.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return RatFn.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RatFn")


_RAT_ZERO = RatFn.from_poly(Poly.zero())

# 1 - a1 - a2 - a3 - a4 - a5, used to eliminate a0 at equality-test time.
_A0_ELIMINATED = Poly.const(1)
for _i in range(1, 6):
    _A0_ELIMINATED = _A0_ELIMINATED - Poly.var(ALPHA[_i])


def _subst_poly(p: Poly, images: Mapping[int, RatFn], cache: dict) -> RatFn:
    """Substitute rational images into a polynomial.

    Terms are accumulated over a shared running denominator and reduced
    once at the end, which avoids quadratic re-reduction.
    """
    relevant = {s for s in p.symbols() if s in images}
    if not relevant:
        return RatFn.from_poly(p)

    def power(s: int, e: int) -> RatFn:
        key = (s, e)
        got = cache.get(key)
        if got is None:
            base = images[s]
            got = base ** e
            cache[key] = got
        return got

    # Accumulate numerator over a running common denominator.
    acc_num = Poly.zero()
    acc_den: dict = {}
    for m, c in p.terms().items():
        term = RatFn.const(c)
        for s, e in m:
            if s in relevant:
                term = term * power(s, e)
            else:
                term = term * RatFn.from_poly(Poly.var(s, e))
        t_den = dict(term.den)
        # Lift both to the union denominator.
        new_den = dict(acc_den)
        for f, mm in t_den.items():
            if new_den.get(f, 0) < mm:
                new_den[f] = mm
        lift_acc = Poly.const(1)
        for f, mm in new_den.items():
            extra = mm - acc_den.get(f, 0)
            if extra:
                lift_acc = lift_acc * f ** extra
        lift_term = Poly.const(1)
        for f, mm in new_den.items():
            extra = mm - t_den.get(f, 0)
            if extra:
                lift_term = lift_term * f ** extra
        acc_num = acc_num * lift_acc + term.num * lift_term
        acc_den = new_den
    return RatFn(acc_num, acc_den.items())


def clear_denominators(components: Mapping, extra: Sequence[Poly] = ()) -> tuple:
    """Common denominator for a family of rational functions.

    Returns ``(factors, numerators)`` where ``factors`` is a list of
    (Poly, mult) pairs and ``numerators`` maps each key of
    ``components`` to the polynomial ``value * prod(factors)``.
    ``extra`` factors are forced into the common denominator even if no
    component needs them.
    """
    common: dict = {}
    for v in components.values():
        for f, m in v.den:
            if common.get(f, 0) < m:
                common[f] = m
    for f in extra:
        lc, monic = f.monic()
        if monic not in common:
            common[monic] = max(common.get(monic, 0), 1)
    numerators = {}
    for k, v in components.items():
        n = v.num
        for f, m in common.items():
            extra_m = m - dict(v.den).get(f, 0)
            if extra_m:
                n = n * f ** extra_m
        numerators[k] = n
    return (sorted(common.items(), key=_factor_sort_key), numerators)
