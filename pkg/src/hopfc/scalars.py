"""Exact scalars: rationals and cyclotomic field elements.

A scalar is an element of Q (``order == 1``) or of Q(zeta_m) for m >= 2,
stored as a coefficient vector over Q of length deg(Phi_m), reduced modulo
the m-th cyclotomic polynomial Phi_m.  Reduction modulo Phi_m (rather than
x^m - 1) makes the representation canonical, so equality of scalars is
equality of representations and all downstream comparisons are exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

__all__ = ["Scalar", "zeta", "one", "zero", "from_fraction", "parse_scalar"]


def _poly_div_int(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-to-high coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1]:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, low-to-high, computed via x^m - 1 = prod Phi_d."""
    if m < 1:
        raise ValueError("cyclotomic order must be >= 1")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_div_int(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi_degree(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def _reduce(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    """Remainder of a polynomial modulo Phi_m, padded to deg(Phi_m)."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    cs = list(coeffs)
    for k in range(len(cs) - 1, deg - 1, -1):
        c = cs[k]
        if c:
            for i in range(deg + 1):
                cs[k - deg + i] -= c * phi[i]
    cs = cs[:deg] + [Fraction(0)] * (deg - len(cs))
    return tuple(Fraction(c) for c in cs[:deg])


class Scalar:
    """Immutable element of Q or Q(zeta_m), canonically reduced."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        self.order = order
        cs = [Fraction(c) for c in coeffs]
        deg = _phi_degree(order)
        if len(cs) != deg:
            cs = list(_reduce(cs, order))
        self.coeffs = tuple(cs)
        self._hash = hash((order, self.coeffs))

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_fraction(q, order: int = 1) -> "Scalar":
        q = Fraction(q)
        deg = _phi_degree(order)
        return Scalar(order, (q,) + (Fraction(0),) * (deg - 1))

    @staticmethod
    def zeta(order: int, power: int = 1) -> "Scalar":
        """zeta_order ** power."""
        if order == 1:
            return Scalar(1, (Fraction(1),))
        k = power % order
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return Scalar(order, _reduce(coeffs, order))

    # -- coercion ----------------------------------------------------------

    def _promote(self, order: int) -> "Scalar":
        if self.order == order:
            return self
        if self.order == 1:
            return Scalar.from_fraction(self.coeffs[0], order)
        raise ValueError(f"cannot mix Q(zeta_{self.order}) with Q(zeta_{order})")

    @staticmethod
    def _pair(a: "Scalar", b: "Scalar") -> tuple["Scalar", "Scalar"]:
        if a.order == b.order:
            return a, b
        if a.order == 1:
            return a._promote(b.order), b
        if b.order == 1:
            return a, b._promote(a.order)
        raise ValueError(f"cannot mix Q(zeta_{a.order}) with Q(zeta_{b.order})")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        a, b = Scalar._pair(self, other)
        return Scalar(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other: "Scalar") -> "Scalar":
        a, b = Scalar._pair(self, other)
        return Scalar(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __neg__(self) -> "Scalar":
        return Scalar(self.order, tuple(-x for x in self.coeffs))

    def __mul__(self, other: "Scalar") -> "Scalar":
        a, b = Scalar._pair(self, other)
        n, m = len(a.coeffs), len(b.coeffs)
        prod = [Fraction(0)] * (n + m - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
        return Scalar(a.order, _reduce(prod, a.order))

    def inverse(self) -> "Scalar":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("scalar is zero")
        if self.order == 1:
            return Scalar(1, (Fraction(1) / self.coeffs[0],))
        phi = [Fraction(c) for c in cyclotomic_poly(self.order)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant gcd
        lead = next(c for c in r0 if c)
        inv = [c / lead for c in s0]
        return Scalar(self.order, _reduce(inv, self.order))

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        acc = Scalar.from_fraction(1, self.order)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        a, b = Scalar._pair(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return self._hash

    # -- printing / serialization --------------------------------------------

    def __str__(self) -> str:
        if self.order == 1:
            return _frac_str(self.coeffs[0])
        return "[" + ", ".join(_frac_str(c) for c in self.coeffs) + f"]@zeta{self.order}"

    def __repr__(self) -> str:
        return f"Scalar({self.order}, {list(map(str, self.coeffs))})"

    def to_json(self):
        """'a/b' string for rationals, list of 'a/b' strings otherwise."""
        if self.order == 1:
            return _frac_str(self.coeffs[0])
        return [_frac_str(c) for c in self.coeffs]


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while num and not num[-1]:
        num.pop()
    d = list(den)
    while d and not d[-1]:
        d.pop()
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(num) - len(d) + 1)
    while len(num) >= len(d) and any(num):
        while num and not num[-1]:
            num.pop()
        if len(num) < len(d):
            break
        c = num[-1] / d[-1]
        k = len(num) - len(d)
        q[k] = c
        for i, x in enumerate(d):
            num[k + i] -= c * x
        num.pop()
    return q, num


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def zeta(order: int, power: int = 1) -> Scalar:
    return Scalar.zeta(order, power)


def one(order: int = 1) -> Scalar:
    return Scalar.from_fraction(1, order)


def zero(order: int = 1) -> Scalar:
    return Scalar.from_fraction(0, order)


def from_fraction(q, order: int = 1) -> Scalar:
    return Scalar.from_fraction(q, order)


def parse_scalar(data, order: int = 1) -> Scalar:
    """Parse the JSON form: 'a/b' string, int, or list of those (cyclotomic)."""
    if isinstance(data, str):
        return Scalar.from_fraction(Fraction(data), order)
    if isinstance(data, int):
        return Scalar.from_fraction(data, order)
    if isinstance(data, list):
        if order == 1:
            raise ValueError("coefficient list requires a cyclotomic field")
        coeffs = [Fraction(c) if not isinstance(c, list) else _bad(c) for c in data]
        deg = _phi_degree(order)
        if len(coeffs) > deg:
            coeffs = list(_reduce(coeffs, order))
        coeffs += [Fraction(0)] * (deg - len(coeffs))
        return Scalar(order, coeffs)
    raise ValueError(f"cannot parse scalar from {data!r}")


def _bad(c):
    raise ValueError("nested lists are not valid scalar coefficients")
