"""Exact Laurent polynomials in one variable with half-integer exponents.

Exponents are stored doubled (``2e`` as an ``int``) so that all arithmetic
stays in machine-friendly integers; coefficients are Python ints.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping


class NotDivisible(ArithmeticError):
    pass


class InvalidArgs(ValueError):
    pass


def _half(e) -> int:
    """Doubled exponent for ``e``; raises if ``e`` is not in (1/2)Z."""
    f = Fraction(e) * 2
    if f.denominator != 1:
        raise InvalidArgs(f"exponent {e} is not a half-integer")
    return int(f)


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, terms: Mapping | None = None):
        c = {}
        if terms:
            for e, v in terms.items():
                if v:
                    k = _half(e)
                    c[k] = c.get(k, 0) + int(v)
        self._c = {k: v for k, v in c.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, coeff: int = 1, exp=0) -> "LaurentPoly":
        if not coeff:
            return ZERO
        return cls._raw({_half(exp): int(coeff)})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.monomial(c, 0)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[Fraction, int]:
        return {Fraction(k, 2): v for k, v in self._c.items()}

    def is_zero(self) -> bool:
        return not self._c

    def min_exp(self) -> Fraction:
        return Fraction(min(self._c), 2)

    def max_exp(self) -> Fraction:
        return Fraction(max(self._c), 2)

    def coeff(self, e) -> int:
        return self._c.get(_half(e), 0)

    def at_one(self) -> int:
        return sum(self._c.values())

    def is_integral(self) -> bool:
        """True if every exponent is an integer."""
        return all(k % 2 == 0 for k in self._c)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._c:
            return self
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        c: dict[int, int] = {}
        for kb, vb in b.items():
            for ka, va in a.items():
                k = ka + kb
                c[k] = c.get(k, 0) + va * vb
        return LaurentPoly._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise InvalidArgs("negative power of a non-monomial")
            (k, v), = self._c.items()
            if v not in (1, -1):
                raise InvalidArgs("negative power needs a unit coefficient")
            return LaurentPoly._raw({k * n: v ** n})
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, e) -> "LaurentPoly":
        """Multiply by t^e."""
        k = _half(e)
        return LaurentPoly._raw({a + k: v for a, v in self._c.items()})

    def subs_power(self, s) -> "LaurentPoly":
        """Substitute t -> t^s for a rational ``s``."""
        s = Fraction(s)
        c: dict[int, int] = {}
        for k, v in self._c.items():
            nk = _half(Fraction(k, 2) * s)
            c[nk] = c.get(nk, 0) + v
        return LaurentPoly._raw({k: v for k, v in c.items() if v})

    def invert_var(self) -> "LaurentPoly":
        return LaurentPoly._raw({-k: v for k, v in self._c.items()})

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        return render(self)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
T = LaurentPoly._raw({2: 1})
TINV = LaurentPoly._raw({-2: 1})


def t_pow(e) -> LaurentPoly:
    return LaurentPoly._raw({_half(e): 1})


# -- text form -----------------------------------------------------------------

def _render_exp(e: Fraction) -> str:
    if e == 1:
        return "t"
    if e.denominator == 1:
        return f"t^{e.numerator}"
    return f"t^({e.numerator}/{e.denominator})"


def render(p: LaurentPoly) -> str:
    if not p._c:
        return "0"
    out = []
    for k in sorted(p._c):
        v = p._c[k]
        e = Fraction(k, 2)
        mag = abs(v)
        if e == 0:
            body = str(mag)
        elif mag == 1:
            body = _render_exp(e)
        else:
            body = f"{mag}*{_render_exp(e)}"
        if not out:
            out.append(("-" if v < 0 else "") + body)
        else:
            out.append((" - " if v < 0 else " + ") + body)
    return "".join(out)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+)\s*(?:\*\s*(?P<var1>t(?:\s*\^\s*(?P<exp1>\(\s*-?\d+(?:\s*/\s*\d+)?\s*\)|-?\d+))?))?
          |
          (?P<var2>t(?:\s*\^\s*(?P<exp2>\(\s*-?\d+(?:\s*/\s*\d+)?\s*\)|-?\d+))?)
        )\s*""",
    re.X,
)


def parse(text: str) -> LaurentPoly:
    """Inverse of :func:`render`; also accepts ``t^(-1)`` and ``c*t`` forms."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    pos, terms, first = 0, {}, True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            coef = int(m.group("coef"))
            var, exp = m.group("var1"), m.group("exp1")
        else:
            coef = 1
            var, exp = m.group("var2"), m.group("exp2")
        if var is None:
            e = Fraction(0)
        elif exp is None:
            e = Fraction(1)
        else:
            e = Fraction(exp.strip("() ").replace(" ", ""))
        terms[e] = terms.get(e, 0) + sign * coef
        pos = m.end()
    return LaurentPoly(terms)


# -- division / units ------------------------------------------------------------

def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``c`` with ``a == b * c``; raise :class:`NotDivisible` otherwise."""
    if not b._c:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = dict(a._c)
    bk = max(b._c)
    bv = b._c[bk]
    blo = min(b._c)
    quot: dict[int, int] = {}
    while rem:
        k = max(rem)
        v = rem[k]
        q, r = divmod(v, bv)
        if r:
            raise NotDivisible(f"leading coefficient {v} not divisible by {bv}")
        shift = k - bk
        if shift < (min(a._c) - blo):
            raise NotDivisible("remainder below the quotient range")
        quot[shift] = q
        for kk, vv in b._c.items():
            nk = kk + shift
            nv = rem.get(nk, 0) - q * vv
            if nv:
                rem[nk] = nv
            else:
                rem.pop(nk, None)
    return LaurentPoly._raw(quot)


def equal_up_to_unit(a: LaurentPoly, b: LaurentPoly) -> tuple[int, Fraction] | None:
    """Find ``(eps, k)`` with ``a == eps * t^k * b``."""
    if not a._c or not b._c:
        return (1, Fraction(0)) if a._c == b._c else None
    if len(a._c) != len(b._c):
        return None
    ka, kb = min(a._c), min(b._c)
    shift = ka - kb
    ratio = Fraction(a._c[ka], b._c[kb])
    if ratio not in (1, -1):
        return None
    eps = int(ratio)
    for k, v in b._c.items():
        if a._c.get(k + shift) != eps * v:
            return None
    return eps, Fraction(shift, 2)


# -- quantum integers ------------------------------------------------------------

@lru_cache(maxsize=None)
def qint(m: int, sign: int = 1) -> LaurentPoly:
    """(m)_q = 1 + q + ... + q^(m-1); sign -1 evaluates at q^(-1)."""
    if m < 0:
        raise InvalidArgs("quantum integer of a negative number")
    if sign not in (1, -1):
        raise InvalidArgs("sign must be +1 or -1")
    return LaurentPoly._raw({2 * sign * i: 1 for i in range(m)})


@lru_cache(maxsize=None)
def qfactorial(m: int, sign: int = 1) -> LaurentPoly:
    out = ONE
    for i in range(1, m + 1):
        out = out * qint(i, sign)
    return out


@lru_cache(maxsize=None)
def qbinom(m: int, k: int, sign: int = 1) -> LaurentPoly:
    if m < 0 or k < 0 or k > m:
        raise InvalidArgs(f"qbinom({m}, {k}) out of range")
    if sign not in (1, -1):
        raise InvalidArgs("sign must be +1 or -1")
    if k == 0 or k == m:
        return ONE
    # q-Pascal: [m,k] = [m-1,k-1] + q^k [m-1,k]
    return qbinom(m - 1, k - 1, sign) + qbinom(m - 1, k, sign).shift(sign * k)


def multinomial(parts: Iterable[int]) -> int:
    parts = list(parts)
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


# -- truncated power series in h ---------------------------------------------------

class TruncatedSeries:
    """Power series in ``h`` with exact rational coefficients, modulo h^(D+1)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: "TruncatedSeries"):
        if other.order != self.order:
            raise InvalidArgs("series orders differ")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __mul__(self, other):
        self._check(other)
        D = self.order
        out = [Fraction(0)] * (D + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(D + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out)

    def inverse(self) -> "TruncatedSeries":
        a = self.coeffs
        if a[0] == 0:
            raise InvalidArgs("series with zero constant term is not invertible")
        D = self.order
        out = [Fraction(0)] * (D + 1)
        out[0] = 1 / a[0]
        for j in range(1, D + 1):
            s = sum(a[i] * out[j - i] for i in range(1, j + 1))
            out[j] = -s / a[0]
        return TruncatedSeries(out)

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"


def exp_substitute(p: LaurentPoly, scale, D: int) -> TruncatedSeries:
    """Series of p(e^(scale*h)) truncated after h^D."""
    if D < 0:
        raise InvalidArgs("order must be non-negative")
    scale = Fraction(scale)
    out = [Fraction(0)] * (D + 1)
    for k, v in p._c.items():
        x = scale * Fraction(k, 2)
        term = Fraction(v)
        for j in range(D + 1):
            out[j] += term
            term = term * x / (j + 1)
    return TruncatedSeries(out)


def binomial(m: int, k: int) -> int:
    return comb(m, k)
