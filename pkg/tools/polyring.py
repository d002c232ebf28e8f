"""
Polynomial rings over finite fields.

    UPoly    univariate polynomials F_q[t], numpy-backed
    RatFunc  reduced fractions of UPoly, the field F_q(t)
    BiPoly   bivariate polynomials F_q[t][z], z the main variable
    ExtPoly  univariate polynomials over an extension field F_{q^N}

On top of these the module implements subresultant gcd and resultant in
F_q[t][z], exact and pseudo division, distinct-root counting, Bezout
cofactors with a common polynomial denominator, and seeded random
combinations over extensions of F_q.

The degree of the zero polynomial is DEG_ZERO (-1), standing for -infinity.
"""
import logging
from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple, Union

import numpy as np

from tools.base_field import BaseField, get_base_field, subfield_embedding
from tools.errors import (
    AlgebraError,
    DegenerateInputError,
    FieldMismatchError,
    NotCoprimeError,
    ZeroDivisionAlgebraError,
)

if TYPE_CHECKING:
    from tools.ffield import ExtFieldElem, FieldCtx

logger = logging.getLogger(__name__)

DEG_ZERO = -1


def _strip(coeffs: Sequence, is_zero) -> tuple:
    n = len(coeffs)
    while n and is_zero(coeffs[n - 1]):
        n -= 1
    return tuple(coeffs[:n])


def _monomial_text(coef: str, var: str, exp: int) -> str:
    if exp == 0:
        return coef
    power = var if exp == 1 else f"{var}^{exp}"
    return power if coef == "1" else f"{coef}*{power}"


# ---------------------------------------------------------------------------
# F_q[t]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UPoly:
    """Element of F_q[t]: integer codes of the coefficients, low degree first."""

    field: BaseField
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", _strip(tuple(int(c) for c in self.coeffs), lambda c: c == 0)
        )

    @classmethod
    def zero(cls, field: BaseField) -> "UPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: BaseField) -> "UPoly":
        return cls(field, (1,))

    @classmethod
    def constant(cls, field: BaseField, c: int) -> "UPoly":
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: BaseField, c: int, k: int) -> "UPoly":
        return cls(field, (0,) * k + (c,))

    @classmethod
    def t(cls, field: BaseField) -> "UPoly":
        return cls(field, (0, 1))

    @classmethod
    def from_array(cls, field: BaseField, arr: np.ndarray) -> "UPoly":
        return cls(field, tuple(arr.tolist()))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.lc == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def _check(self, other: "UPoly"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} and {other.field} polynomials do not mix")

    def __add__(self, other: "UPoly") -> "UPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return UPoly(self.field, a)
        x = np.array(a, dtype=np.int64)
        x[:len(b)] = self.field.vadd(x[:len(b)], np.array(b, dtype=np.int64))
        return UPoly.from_array(self.field, x)

    def __neg__(self) -> "UPoly":
        if self.is_zero:
            return self
        return UPoly.from_array(self.field, self.field.vneg(self.array()))

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        if not isinstance(other, UPoly):
            return NotImplemented
        self._check(other)
        if self.is_zero or other.is_zero:
            return UPoly.zero(self.field)
        return UPoly.from_array(self.field, self.field.convolve(self.array(), other.array()))

    def scale(self, c: int) -> "UPoly":
        if c == 0 or self.is_zero:
            return UPoly.zero(self.field)
        if c == 1:
            return self
        return UPoly.from_array(self.field, self.field.vscale(c, self.array()))

    def shift(self, k: int) -> "UPoly":
        """Multiply by t^k."""
        if self.is_zero or k == 0:
            return self
        return UPoly(self.field, (0,) * k + self.coeffs)

    def __divmod__(self, other: "UPoly") -> Tuple["UPoly", "UPoly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionAlgebraError("division by the zero polynomial")
        f = self.field
        if self.degree < other.degree:
            return UPoly.zero(f), self
        r = self.array()
        d = other.array()
        n = len(d)
        neg_d = f.vneg(d)
        inv_lc = f.inv(other.lc)
        quo = np.zeros(len(r) - n + 1, dtype=np.int64)
        for k in range(len(r) - n, -1, -1):
            c = int(r[k + n - 1])
            if c:
                c = f.mul(c, inv_lc)
                quo[k] = c
                r[k:k + n] = f.vadd(r[k:k + n], f.vscale(c, neg_d))
        return UPoly.from_array(f, quo), UPoly.from_array(f, r[:n - 1])

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UPoly") -> "UPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "UPoly") -> "UPoly":
        quo, rem = divmod(self, other)
        if not rem.is_zero:
            raise ZeroDivisionAlgebraError(f"{other} does not divide {self}")
        return quo

    def divides(self, other: "UPoly") -> bool:
        return (other % self).is_zero

    def monic(self) -> "UPoly":
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.lc))

    def gcd(self, other: "UPoly") -> "UPoly":
        """Monic gcd; gcd(0, 0) = 0."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "UPoly") -> Tuple["UPoly", "UPoly", "UPoly"]:
        """Return (g, s, u) with s*self + u*other = g, g monic."""
        f = self.field
        r0, r1 = self, other
        s0, s1 = UPoly.one(f), UPoly.zero(f)
        u0, u1 = UPoly.zero(f), UPoly.one(f)
        while not r1.is_zero:
            quo, rem = divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - quo * s1
            u0, u1 = u1, u0 - quo * u1
        if r0.is_zero:
            return r0, s0, u0
        c = f.inv(r0.lc)
        return r0.scale(c), s0.scale(c), u0.scale(c)

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise DegenerateInputError("negative powers are not polynomials")
        result = UPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow_mod(self, n: int, modulus: "UPoly") -> "UPoly":
        result = UPoly.one(self.field) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            n >>= 1
            if n:
                base = (base * base) % modulus
        return result

    def derivative(self) -> "UPoly":
        f = self.field
        return UPoly(f, [f.mul(f.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def frobenius(self, k: int = 1) -> "UPoly":
        """f^(q^k), which over F_q equals f(t^(q^k))."""
        if k == 0 or self.degree <= 0:
            return self
        step = self.field.q ** k
        arr = np.zeros(self.degree * step + 1, dtype=np.int64)
        arr[::step] = self.coeffs
        return UPoly.from_array(self.field, arr)

    def evaluate(self, x: "ExtFieldElem") -> "ExtFieldElem":
        """Value at a point of an extension F_{q^N}."""
        ctx = x.ctx
        if ctx.base != self.field:
            raise FieldMismatchError(f"cannot evaluate a {self.field} polynomial in {ctx}")
        acc = ctx.zero
        for a in reversed(self.coeffs):
            acc = acc * x + ctx.from_base(a)
        return acc

    def canonical(self) -> List[int]:
        return list(self.coeffs)

    def to_text(self, var: str = "t") -> str:
        if self.is_zero:
            return "0"
        terms = [
            _monomial_text(str(c), var, i)
            for i, c in reversed(list(enumerate(self.coeffs))) if c
        ]
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.to_text()


def upoly_gcd(polys: Sequence[UPoly], field: BaseField) -> UPoly:
    return reduce(lambda a, b: a.gcd(b), polys, UPoly.zero(field))


# ---------------------------------------------------------------------------
# F_q(t)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatFunc:
    """Reduced fraction num/den with den monic."""

    num: UPoly
    den: UPoly

    def __post_init__(self):
        num, den = self.num, self.den
        num._check(den)
        if den.is_zero:
            raise ZeroDivisionAlgebraError("rational function with zero denominator")
        if num.is_zero:
            den = UPoly.one(num.field)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            c = num.field.inv(den.lc)
            num, den = num.scale(c), den.scale(c)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_upoly(cls, f: UPoly) -> "RatFunc":
        return cls(f, UPoly.one(f.field))

    @classmethod
    def zero(cls, field: BaseField) -> "RatFunc":
        return cls(UPoly.zero(field), UPoly.one(field))

    @property
    def field(self) -> BaseField:
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @property
    def degree(self) -> int:
        """max(deg num, deg den), the quantity bounded by D."""
        return max(self.num.degree, self.den.degree)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: Union["RatFunc", UPoly]) -> "RatFunc":
        if isinstance(other, UPoly):
            other = RatFunc.from_upoly(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def inverse(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionAlgebraError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def evaluate(self, x: "ExtFieldElem") -> Optional["ExtFieldElem"]:
        """Value at x, or None where the denominator vanishes."""
        d = self.den.evaluate(x)
        if d.is_zero:
            return None
        return self.num.evaluate(x) / d

    def to_text(self, var: str = "t") -> str:
        if self.den.degree == 0:
            return self.num.to_text(var)
        return f"({self.num.to_text(var)})/({self.den.to_text(var)})"

    def __str__(self) -> str:
        return self.to_text()


# ---------------------------------------------------------------------------
# F_q[t][z]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BiPoly:
    """Element of F_q[t][z]: coeffs[i] is the F_q[t] coefficient of z^i."""

    field: BaseField
    coeffs: Tuple[UPoly, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(tuple(self.coeffs), lambda c: c.is_zero))

    @classmethod
    def zero(cls, field: BaseField) -> "BiPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: BaseField) -> "BiPoly":
        return cls(field, (UPoly.one(field),))

    @classmethod
    def z(cls, field: BaseField) -> "BiPoly":
        return cls(field, (UPoly.zero(field), UPoly.one(field)))

    @classmethod
    def from_upoly(cls, c: UPoly) -> "BiPoly":
        return cls(c.field, (c,))

    @classmethod
    def from_terms(cls, field: BaseField, terms: dict) -> "BiPoly":
        """Build from {z-exponent: UPoly}."""
        if not terms:
            return cls.zero(field)
        coeffs = [UPoly.zero(field)] * (max(terms) + 1)
        for i, c in terms.items():
            coeffs[i] = coeffs[i] + c
        return cls(field, coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> UPoly:
        return self.coeffs[-1] if self.coeffs else UPoly.zero(self.field)

    @property
    def height(self) -> int:
        """Largest t-degree of a coefficient."""
        if self.is_zero:
            raise DegenerateInputError("the zero polynomial has no height")
        return max(c.degree for c in self.coeffs)

    def coeff(self, i: int) -> UPoly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else UPoly.zero(self.field)

    def _check(self, other: "BiPoly"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} and {other.field} polynomials do not mix")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return BiPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: Union["BiPoly", UPoly]) -> "BiPoly":
        if isinstance(other, UPoly):
            return self.scale(other)
        self._check(other)
        if self.is_zero or other.is_zero:
            return BiPoly.zero(self.field)
        out = [UPoly.zero(self.field)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return BiPoly(self.field, out)

    def __pow__(self, n: int) -> "BiPoly":
        result = BiPoly.one(self.field)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: UPoly) -> "BiPoly":
        return BiPoly(self.field, [a * c for a in self.coeffs])

    def shift(self, k: int) -> "BiPoly":
        """Multiply by z^k."""
        if self.is_zero or k == 0:
            return self
        return BiPoly(self.field, (UPoly.zero(self.field),) * k + self.coeffs)

    def exact_div_upoly(self, c: UPoly) -> "BiPoly":
        return BiPoly(self.field, [a.exact_div(c) for a in self.coeffs])

    def exact_div(self, other: "BiPoly") -> "BiPoly":
        """Quotient self/other, which must be exact in F_q[t][z]."""
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionAlgebraError("division by the zero polynomial")
        terms = {}
        r = self
        while not r.is_zero and r.degree >= other.degree:
            c = r.lc.exact_div(other.lc)
            k = r.degree - other.degree
            terms[k] = c
            r = r - other.scale(c).shift(k)
        if not r.is_zero:
            raise ZeroDivisionAlgebraError("inexact division in F_q[t][z]")
        return BiPoly.from_terms(self.field, terms)

    def prem(self, other: "BiPoly") -> "BiPoly":
        """Pseudo-remainder: lc(other)^(deg self - deg other + 1) * self mod other."""
        if other.is_zero:
            raise ZeroDivisionAlgebraError("pseudo-division by the zero polynomial")
        lb = other.lc
        r = self
        e = self.degree - other.degree + 1
        while not r.is_zero and r.degree >= other.degree:
            r = r.scale(lb) - other.scale(r.lc).shift(r.degree - other.degree)
            e -= 1
        return r.scale(lb ** max(e, 0))

    def derivative(self) -> "BiPoly":
        """d/dz."""
        f = self.field
        return BiPoly(f, [c.scale(f.from_int(i)) for i, c in enumerate(self.coeffs)][1:])

    def deflate(self) -> "BiPoly":
        """g with g(z^p) = self; requires every z-exponent divisible by p."""
        p = self.field.p
        if any(not c.is_zero for i, c in enumerate(self.coeffs) if i % p):
            raise DegenerateInputError("polynomial is not a polynomial in z^p")
        return BiPoly(self.field, self.coeffs[::p])

    def frobenius(self, k: int = 1) -> "BiPoly":
        """self^(q^k): every coefficient raised and every z-exponent multiplied by q^k."""
        if k == 0 or self.is_zero:
            return self
        step = self.field.q ** k
        zero = UPoly.zero(self.field)
        out = [zero] * (self.degree * step + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = c.frobenius(k)
        return BiPoly(self.field, out)

    def gcd(self, other: "BiPoly") -> "BiPoly":
        return gcd_primitive(self, other)

    def specialize(self, tau: "ExtFieldElem") -> "ExtPoly":
        """Substitute t = tau, giving a polynomial in z over tau's field."""
        return ExtPoly(tau.ctx, [c.evaluate(tau) for c in self.coeffs])

    def evaluate(self, tau: "ExtFieldElem", lam: "ExtFieldElem") -> "ExtFieldElem":
        return self.specialize(tau).evaluate(lam)

    def canonical(self) -> List[list]:
        return [[i, c.canonical()] for i, c in enumerate(self.coeffs) if not c.is_zero]

    def to_text(self, t_var: str = "t", z_var: str = "z") -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            coef = c.to_text(t_var)
            if i and sum(1 for a in c.coeffs if a) > 1:
                coef = f"({coef})"
            if i and coef != "1":
                terms.append(f"{coef}*{_monomial_text('1', z_var, i)}")
            else:
                terms.append(_monomial_text(coef, z_var, i))
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.to_text()


def content_primitive(f: BiPoly) -> Tuple[UPoly, BiPoly]:
    """Split f into its monic content in F_q[t] and primitive part."""
    if f.is_zero:
        raise DegenerateInputError("the zero polynomial has no content")
    c = upoly_gcd(f.coeffs, f.field)
    return c, f.exact_div_upoly(c)


def primitive_part(f: BiPoly) -> BiPoly:
    return content_primitive(f)[1]


def _normalize_lc(f: BiPoly) -> BiPoly:
    return f.scale(UPoly.constant(f.field, f.field.inv(f.lc.lc)))


def gcd_primitive(f: BiPoly, g: BiPoly) -> BiPoly:
    """Primitive gcd of f and g in F_q[t][z], leading coefficient monic in t.

    Subresultant pseudo-remainder sequence on the primitive parts.
    """
    f._check(g)
    if f.is_zero and g.is_zero:
        raise DegenerateInputError("gcd of two zero polynomials")
    if f.is_zero:
        return _normalize_lc(primitive_part(g))
    if g.is_zero:
        return _normalize_lc(primitive_part(f))

    one = UPoly.one(f.field)
    a, b = primitive_part(f), primitive_part(g)
    if a.degree < b.degree:
        a, b = b, a
    if b.degree == 0:
        return BiPoly.one(f.field)

    lg, lh = one, one
    while True:
        delta = a.degree - b.degree
        r = a.prem(b)
        if r.is_zero:
            return _normalize_lc(primitive_part(b))
        if r.degree == 0:
            return BiPoly.one(f.field)
        a, b = b, r.exact_div_upoly(lg * lh ** delta)
        lg = a.lc
        if delta:
            lh = (lg ** delta).exact_div(lh ** (delta - 1))


def resultant_x(f: BiPoly, g: BiPoly) -> UPoly:
    """Res_z(f, g) in F_q[t] by the subresultant algorithm.

    Res(f, c) = c^deg f for c constant in z. Zero iff f, g share a factor
    of positive z-degree.
    """
    f._check(g)
    field = f.field
    if f.is_zero or g.is_zero:
        return UPoly.zero(field)
    if f.degree == 0 and g.degree == 0:
        raise DegenerateInputError("resultant of two polynomials constant in z")
    if g.degree == 0:
        return g.lc ** f.degree
    if f.degree == 0:
        return f.lc ** g.degree

    ca, a = content_primitive(f)
    cb, b = content_primitive(g)
    scale = ca ** b.degree * cb ** a.degree
    negate = False
    if a.degree < b.degree:
        a, b = b, a
        negate = bool(a.degree % 2 and b.degree % 2)

    one = UPoly.one(field)
    lg, lh = one, one
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            negate = not negate
        r = a.prem(b)
        a, b = b, r.exact_div_upoly(lg * lh ** delta)
        lg = a.lc
        if delta:
            lh = (lg ** delta).exact_div(lh ** (delta - 1))
        if b.degree <= 0:
            break

    if b.is_zero:
        return UPoly.zero(field)
    da = a.degree
    res = (b.lc ** da).exact_div(lh ** (da - 1)) if da > 1 else b.lc ** da
    res = res * scale
    return -res if negate else res


# ---------------------------------------------------------------------------
# F_{q^N}[x]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtPoly:
    """Polynomial over an extension field, coefficients low degree first."""

    ctx: "FieldCtx"
    coeffs: Tuple["ExtFieldElem", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(tuple(self.coeffs), lambda c: c.is_zero))

    @classmethod
    def zero(cls, ctx: "FieldCtx") -> "ExtPoly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: "FieldCtx") -> "ExtPoly":
        return cls(ctx, (ctx.one,))

    @classmethod
    def x(cls, ctx: "FieldCtx") -> "ExtPoly":
        return cls(ctx, (ctx.zero, ctx.one))

    @classmethod
    def from_upoly(cls, f: UPoly, ctx: "FieldCtx") -> "ExtPoly":
        if f.field != ctx.base:
            raise FieldMismatchError(f"cannot lift a {f.field} polynomial into {ctx}")
        return cls(ctx, [ctx.from_base(c) for c in f.coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> "ExtFieldElem":
        return self.coeffs[-1] if self.coeffs else self.ctx.zero

    def coeff(self, i: int) -> "ExtFieldElem":
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ctx.zero

    def __add__(self, other: "ExtPoly") -> "ExtPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return ExtPoly(self.ctx, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> "ExtPoly":
        return ExtPoly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other: "ExtPoly") -> "ExtPoly":
        return self + (-other)

    def __mul__(self, other: "ExtPoly") -> "ExtPoly":
        if self.is_zero or other.is_zero:
            return ExtPoly.zero(self.ctx)
        out = [self.ctx.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return ExtPoly(self.ctx, out)

    def scale(self, c: "ExtFieldElem") -> "ExtPoly":
        return ExtPoly(self.ctx, [a * c for a in self.coeffs])

    def shift(self, k: int) -> "ExtPoly":
        if self.is_zero or k == 0:
            return self
        return ExtPoly(self.ctx, (self.ctx.zero,) * k + self.coeffs)

    def __divmod__(self, other: "ExtPoly") -> Tuple["ExtPoly", "ExtPoly"]:
        if other.is_zero:
            raise ZeroDivisionAlgebraError("division by the zero polynomial")
        if self.degree < other.degree:
            return ExtPoly.zero(self.ctx), self
        inv_lc = other.lc.inverse()
        r = list(self.coeffs)
        n = len(other.coeffs)
        quo = [self.ctx.zero] * (len(r) - n + 1)
        for k in range(len(r) - n, -1, -1):
            c = r[k + n - 1]
            if c.is_zero:
                continue
            c = c * inv_lc
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                r[k + j] = r[k + j] - c * b
        return ExtPoly(self.ctx, quo), ExtPoly(self.ctx, r[:n - 1])

    def __mod__(self, other: "ExtPoly") -> "ExtPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "ExtPoly") -> "ExtPoly":
        quo, rem = divmod(self, other)
        if not rem.is_zero:
            raise ZeroDivisionAlgebraError("inexact division")
        return quo

    def monic(self) -> "ExtPoly":
        if self.is_zero:
            return self
        return self.scale(self.lc.inverse())

    def gcd(self, other: "ExtPoly") -> "ExtPoly":
        """Monic gcd."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def pow_mod(self, n: int, modulus: "ExtPoly") -> "ExtPoly":
        result = ExtPoly.one(self.ctx) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            n >>= 1
            if n:
                base = (base * base) % modulus
        return result

    def derivative(self) -> "ExtPoly":
        ctx = self.ctx
        return ExtPoly(
            ctx,
            [c.scale(ctx.base.from_int(i)) for i, c in enumerate(self.coeffs)][1:],
        )

    def deflate(self) -> "ExtPoly":
        p = self.ctx.base.p
        if any(not c.is_zero for i, c in enumerate(self.coeffs) if i % p):
            raise DegenerateInputError("polynomial is not a polynomial in x^p")
        return ExtPoly(self.ctx, self.coeffs[::p])

    def evaluate(self, x: "ExtFieldElem") -> "ExtFieldElem":
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def canonical(self) -> List[List[int]]:
        return [list(c.coords) for c in self.coeffs]


# ---------------------------------------------------------------------------
# Distinct roots
# ---------------------------------------------------------------------------

Poly = Union[BiPoly, ExtPoly]


def squarefree_pieces(f: Poly) -> List[Tuple[Poly, int]]:
    """Separable squarefree pieces (w, level) of f.

    The roots of f in an algebraic closure are exactly the p^level-th powers
    of the roots of the pieces w, and distinct pieces share no roots. Each w
    is squarefree with non-zero derivative.
    """
    if f.is_zero:
        raise DegenerateInputError("the zero polynomial has infinitely many roots")
    pieces = []
    level = 0
    while f.degree > 0:
        d = f.derivative()
        if d.is_zero:
            f = f.deflate()
            level += 1
            continue
        g = f.gcd(d)
        w = f.exact_div(g)
        h = g
        c = h.gcd(w)
        while c.degree > 0:
            h = h.exact_div(c)
            c = h.gcd(w)
        if w.degree > 0:
            pieces.append((w, level))
        f = h
    return pieces


def distinct_root_count(f: Poly) -> int:
    """Number of distinct roots of f in an algebraic closure of its coefficient field."""
    return sum(w.degree for w, _ in squarefree_pieces(f))


def separable_squarefree_part(f: Poly) -> Poly:
    """Product of the separable squarefree pieces of f."""
    one = BiPoly.one(f.field) if isinstance(f, BiPoly) else ExtPoly.one(f.ctx)
    return reduce(lambda acc, piece: acc * piece[0], squarefree_pieces(f), one)


# ---------------------------------------------------------------------------
# Linear algebra over F_q(t)
# ---------------------------------------------------------------------------

def bareiss_det(matrix: Sequence[Sequence[UPoly]], field: BaseField) -> UPoly:
    """Fraction-free determinant of a square matrix over F_q[t]."""
    n = len(matrix)
    if n == 0:
        return UPoly.one(field)
    m = [list(row) for row in matrix]
    negate = False
    prev = UPoly.one(field)
    for k in range(n - 1):
        if m[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if swap is None:
                return UPoly.zero(field)
            m[k], m[swap] = m[swap], m[k]
            negate = not negate
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if negate else det


def solve_fraction_field(
    matrix: Sequence[Sequence[UPoly]], rhs: Sequence[UPoly], field: BaseField
) -> Optional[Tuple[List[RatFunc], List[int], List[int]]]:
    """Gauss-Jordan over F_q(t); free variables are set to zero.

    Returns (solution, pivot rows, pivot columns), or None when the system
    is inconsistent.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    m = [
        [RatFunc.from_upoly(a) for a in row] + [RatFunc.from_upoly(b)]
        for row, b in zip(matrix, rhs)
    ]
    order = list(range(nrows))
    pivots: List[Tuple[int, int]] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not m[i][col].is_zero), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        order[r], order[piv] = order[piv], order[r]
        inv = m[r][col].inverse()
        m[r] = [a * inv for a in m[r]]
        for i in range(nrows):
            if i != r and not m[i][col].is_zero:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append((order[r], col))
        r += 1

    if any(not m[i][-1].is_zero for i in range(r, nrows)):
        return None
    solution = [RatFunc.zero(field)] * ncols
    for k, (_, col) in enumerate(pivots):
        solution[col] = m[k][-1]
    return solution, [row for row, _ in pivots], [col for _, col in pivots]


@dataclass(frozen=True)
class BezoutCofactors:
    """Cofactors c_i and denominator delta with sum(c_i * f_i) = delta."""

    numerators: Tuple[BiPoly, ...]
    denominator: UPoly


def _stacked_system(
    polys: Sequence[BiPoly], bounds: Sequence[int], rhs_value: UPoly
) -> Tuple[List[List[UPoly]], List[UPoly]]:
    field = polys[0].field
    nrows = max(f.degree + b for f, b in zip(polys, bounds)) + 1
    ncols = sum(b + 1 for b in bounds)
    zero = UPoly.zero(field)
    matrix = [[zero] * ncols for _ in range(nrows)]
    offset = 0
    for f, b in zip(polys, bounds):
        for k in range(b + 1):
            for i, c in enumerate(f.coeffs):
                matrix[i + k][offset + k] = c
        offset += b + 1
    rhs = [rhs_value] + [zero] * (nrows - 1)
    return matrix, rhs


def _assemble(
    solution: Sequence[RatFunc], bounds: Sequence[int], scale: UPoly, field: BaseField
) -> List[BiPoly]:
    out = []
    offset = 0
    for b in bounds:
        coeffs = []
        for k in range(b + 1):
            value = solution[offset + k] * scale
            if not value.is_polynomial:
                raise AlgebraError("cofactor solution is not polynomial after clearing")
            coeffs.append(value.num)
        out.append(BiPoly(field, coeffs))
        offset += b + 1
    return out


def bezout_cofactors(fs: Sequence[BiPoly], degree_bound: Optional[int] = None) -> BezoutCofactors:
    """Cofactors c_i in F_q[t][z] and monic delta with sum(c_i f_i) = delta.

    The unknown coefficients of cofactors of z-degree at most `degree_bound`
    (default: the largest z-degree of the inputs) are solved over F_q(t);
    delta is the determinant of the pivot block, which clears every
    denominator of the solution.
    """
    fs = list(fs)
    if len(fs) < 2:
        raise DegenerateInputError("Bezout cofactors need at least two polynomials")
    if any(f.is_zero for f in fs):
        raise DegenerateInputError("Bezout cofactors of a zero polynomial")
    field = fs[0].field
    common = reduce(gcd_primitive, fs)
    if common.degree > 0:
        raise NotCoprimeError(f"inputs share the factor {common}", witness=common)

    bound = max(f.degree for f in fs) if degree_bound is None else degree_bound
    bound = max(bound, 0)
    bounds = [bound] * len(fs)
    matrix, rhs = _stacked_system(fs, bounds, UPoly.one(field))
    solved = solve_fraction_field(matrix, rhs, field)
    if solved is None:
        raise AlgebraError(f"no Bezout identity with cofactor z-degree <= {bound}")
    solution, rows, cols = solved
    delta = bareiss_det([[matrix[i][j] for j in cols] for i in rows], field)
    numerators = _assemble(solution, bounds, delta, field)
    unit = UPoly.constant(field, field.inv(delta.lc))
    logger.debug("Bezout system solved with %d pivots, deg delta = %d", len(cols), delta.degree)
    return BezoutCofactors(tuple(c.scale(unit) for c in numerators), delta.scale(unit.lc))


def resultant_cofactors(f: BiPoly, g: BiPoly) -> Tuple[BiPoly, BiPoly, UPoly]:
    """(u, v, res) with u*f + v*g = res = Res_z(f, g), deg u < deg g, deg v < deg f."""
    res = resultant_x(f, g)
    if res.is_zero:
        raise NotCoprimeError("resultant vanishes", witness=gcd_primitive(f, g))
    field = f.field
    m, n = f.degree, g.degree
    if n == 0:
        return BiPoly.zero(field), BiPoly.from_upoly(g.lc ** (m - 1)), res
    if m == 0:
        return BiPoly.from_upoly(f.lc ** (n - 1)), BiPoly.zero(field), res
    bounds = [n - 1, m - 1]
    matrix, rhs = _stacked_system([f, g], bounds, res)
    solved = solve_fraction_field(matrix, rhs, field)
    if solved is None:
        raise AlgebraError("Sylvester system is inconsistent")
    u, v = _assemble(solved[0], bounds, UPoly.one(field), field)
    return u, v, res


# ---------------------------------------------------------------------------
# Random combinations over F_{q^k}
# ---------------------------------------------------------------------------

def lift_bipoly(f: BiPoly, k: int) -> BiPoly:
    """Image of f over F_{q^k} (as a base field) under the fixed embedding."""
    if k == 1:
        return f
    small = f.field
    big = get_base_field(small.p, small.e * k)
    table = subfield_embedding(small, big)
    return BiPoly(big, [UPoly(big, [table[c] for c in a.coeffs]) for a in f.coeffs])


def trace_to_subfield(f: UPoly, small: BaseField) -> UPoly:
    """Coefficient-wise trace from F_{q^k} down to F_q."""
    big = f.field
    k = big.e // small.e
    back = {code: i for i, code in enumerate(subfield_embedding(small, big))}
    coeffs = []
    for c in f.coeffs:
        acc, conj = 0, c
        for _ in range(k):
            acc = big.add(acc, conj)
            conj = big.pow(conj, small.q)
        coeffs.append(back[acc])
    return UPoly(small, coeffs)


def descend_to_subfield(f: UPoly, small: BaseField) -> UPoly:
    """First non-zero Tr(beta * f) over the basis codes beta = p^i.

    If f lies in an ideal defined over F_q, so does the result, and its
    degree is at most deg f.
    """
    if f.field == small:
        return f
    if f.is_zero:
        raise DegenerateInputError("the zero polynomial has no non-zero trace")
    big = f.field
    for i in range(big.e):
        g = trace_to_subfield(f.scale(big.p ** i), small)
        if not g.is_zero:
            return g
    raise DegenerateInputError("trace form vanished on a basis")


@dataclass(frozen=True)
class RandomCombination:
    """f0 = f_2 + sum(alpha_i * f_i, i >= 3) over F_{q^k}."""

    f0: BiPoly
    alphas: Tuple[int, ...]
    sample_degree: int
    seed: int


def random_combine(fs: Sequence[BiPoly], sample_degree: int, seed: int) -> RandomCombination:
    """Seeded combination of f_2..f_s with coefficients drawn from F_{q^k}.

    For most draws gcd(f_1, f0) has the degree of gcd(f_1, ..., f_s); the
    caller checks and redraws.
    """
    if len(fs) < 2:
        raise DegenerateInputError("random combination needs at least two polynomials")
    if sample_degree < 1:
        raise DegenerateInputError("sample degree must be positive")
    lifted = [lift_bipoly(f, sample_degree) for f in fs]
    field = lifted[0].field
    rng = np.random.default_rng(seed)
    alphas = tuple(int(a) for a in rng.integers(0, field.q, size=len(fs) - 2))
    f0 = lifted[1]
    for alpha, f in zip(alphas, lifted[2:]):
        f0 = f0 + f.scale(UPoly.constant(field, alpha))
    return RandomCombination(f0, alphas, sample_degree, seed)
