"""
Drinfeld modules of rank r over finite fields.

A module is fixed by phi_T = tau + lam*F + F^r, F the q-power Frobenius,
with tau and lam in one extension F_{q^N}. phi_P for P in F_q[T] follows by
F_q-linearity and composition. The torsion order of a point c is the monic
generator of its annihilator in F_q[T].

The generic side works over F_q(t): for a generic point a = a1/a2 the
cleared iterates g_n(t, z) satisfy
    a2^(q^(rn)) * phi_{T^n}(a)  =  g_n(tau, lam)   at t = tau, z = lam,
and g_a,P and the products g~_a,M built from them have, as z-roots, exactly
the lam for which the order of a(tau) divides P (resp. has degree <= M).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

from tools.errors import (
    DegenerateInputError,
    FieldMismatchError,
    LinearDependenceError,
    SizeCapExceededError,
)
from tools.ffield import (
    ExtFieldElem,
    FieldCtx,
    embed,
    first_linear_dependence,
    monic_polynomials,
)
from tools.polyring import BiPoly, RatFunc, UPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DrinfeldParams:
    """phi_T = tau + lam*F + F^r over tau's field."""

    r: int
    tau: ExtFieldElem
    lam: ExtFieldElem

    def __post_init__(self):
        if self.r < 2:
            raise DegenerateInputError(f"rank must be at least 2, got {self.r}")
        if self.tau.ctx != self.lam.ctx:
            raise FieldMismatchError("tau and lambda must live in one common field")

    @property
    def ctx(self) -> FieldCtx:
        return self.tau.ctx

    def phi_t(self, c: ExtFieldElem) -> ExtFieldElem:
        return self.tau * c + self.lam * c.frobenius(1) + c.frobenius(self.r)

    def coerce(self, c: ExtFieldElem) -> ExtFieldElem:
        return c if c.ctx == self.ctx else embed(c, self.ctx)


def _iterates(params: DrinfeldParams, c: ExtFieldElem) -> Iterator[ExtFieldElem]:
    v = c
    while True:
        yield v
        v = params.phi_t(v)


def phi_apply(params: DrinfeldParams, poly: UPoly, c: ExtFieldElem) -> ExtFieldElem:
    """phi_P(c) = sum(p_i * phi_T^i(c))."""
    if poly.field != params.ctx.base:
        raise FieldMismatchError(f"operator polynomial over {poly.field}, module over {params.ctx.base}")
    c = params.coerce(c)
    acc = params.ctx.zero
    for p_i, v in zip(poly.coeffs, _iterates(params, c)):
        if p_i:
            acc = acc + v.scale(p_i)
    return acc


@dataclass(frozen=True)
class AdditivePoly:
    """sum(coeffs[i] * F^i), an F_q-linear polynomial over ctx."""

    ctx: FieldCtx
    coeffs: Tuple[ExtFieldElem, ...]

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "AdditivePoly":
        return cls(ctx, (ctx.one,))

    @property
    def q_degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> ExtFieldElem:
        return self.coeffs[i] if i < len(self.coeffs) else self.ctx.zero

    def __add__(self, other: "AdditivePoly") -> "AdditivePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return AdditivePoly(self.ctx, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def scale(self, c: int) -> "AdditivePoly":
        return AdditivePoly(self.ctx, tuple(a.scale(c) for a in self.coeffs))

    def compose(self, other: "AdditivePoly") -> "AdditivePoly":
        """self o other: (a F^i) o (b F^j) = a * b^(q^i) * F^(i+j)."""
        out = [self.ctx.zero] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b.frobenius(i)
        return AdditivePoly(self.ctx, tuple(out))

    def evaluate(self, c: ExtFieldElem) -> ExtFieldElem:
        acc = self.ctx.zero
        for i, a in enumerate(self.coeffs):
            acc = acc + a * c.frobenius(i)
        return acc


def phi_operator(params: DrinfeldParams, poly: UPoly) -> AdditivePoly:
    """phi_P as an additive polynomial of q-degree r * deg P."""
    ctx = params.ctx
    coeffs = [ctx.zero] * (params.r + 1)
    coeffs[0], coeffs[1] = params.tau, params.lam
    coeffs[params.r] = coeffs[params.r] + ctx.one
    phi_t = AdditivePoly(ctx, tuple(coeffs))

    acc = AdditivePoly(ctx, ())
    power = AdditivePoly.identity(ctx)
    for i, p_i in enumerate(poly.coeffs):
        if i:
            power = phi_t.compose(power)
        if p_i:
            acc = acc + power.scale(p_i)
    return acc


def torsion_order(params: DrinfeldParams, c: ExtFieldElem) -> UPoly:
    """Monic P of least degree with phi_P(c) = 0.

    The iterates c, phi_T(c), phi_T^2(c), ... span an F_q-space of
    dimension at most N; the first linear relation among them is the order.
    """
    c = params.coerce(c)
    order = first_linear_dependence(params.ctx.base, (v.coords for v in _iterates(params, c)))
    logger.debug("torsion order of %s has degree %d", c, order.degree)
    return order


# ---------------------------------------------------------------------------
# Generic side over F_q(t)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenericFamily:
    """The family phi_T = t + z*F + F^r with the generic point a = a1/a2."""

    r: int
    a: RatFunc

    def __post_init__(self):
        if self.r < 2:
            raise DegenerateInputError(f"rank must be at least 2, got {self.r}")
        if self.a.is_zero:
            raise DegenerateInputError("the generic point must be non-zero")

    @property
    def field(self):
        return self.a.field

    @property
    def q(self) -> int:
        return self.a.field.q

    @property
    def a1(self) -> UPoly:
        return self.a.num

    @property
    def a2(self) -> UPoly:
        return self.a.den

    @property
    def D(self) -> int:
        return self.a.degree

    def a2_power(self, m: int, k: int) -> UPoly:
        """a2^(q^k * (q^m - 1))."""
        return (self.a2 ** (self.q ** m - 1)).frobenius(k)


@lru_cache(maxsize=64)
def cleared_iterates(family: GenericFamily, n: int) -> Tuple[BiPoly, ...]:
    """g_0..g_n, with g_{k+1} = g_k^(q^r) + a2^(..)*z*g_k^q + t*a2^(..)*g_k."""
    if n < 0:
        raise DegenerateInputError("iterate index must be non-negative")
    if n == 0:
        return (BiPoly.from_upoly(family.a1),)
    prev = cleared_iterates(family, n - 1)
    g = prev[-1]
    k = n - 1
    r = family.r
    t = UPoly.t(family.field)
    nxt = (
        g.frobenius(r)
        + g.frobenius(1).scale(family.a2_power(r - 1, 1 + r * k)).shift(1)
        + g.scale(t * family.a2_power(r, r * k))
    )
    return prev + (nxt,)


def g_poly(family: GenericFamily, poly: UPoly) -> BiPoly:
    """g_a,P = sum(p_i * a2^(q^(rd) - q^(ri)) * g_i), d = deg P >= 1."""
    if poly.field != family.field:
        raise FieldMismatchError("operator polynomial and family over different fields")
    d = poly.degree
    if d < 1:
        raise DegenerateInputError("g_a,P needs deg P >= 1")
    iterates = cleared_iterates(family, d)
    r = family.r
    acc = BiPoly.zero(family.field)
    for i, p_i in enumerate(poly.coeffs):
        if p_i:
            weight = family.a2_power(r * (d - i), r * i).scale(p_i)
            acc = acc + iterates[i].scale(weight)
    return acc


def predicted_g_tilde_degree(q: int, r: int, m: int) -> int:
    """sum(q^s * q^(r(s-1)), s = 1..M), the z-degree of g~_a,M."""
    return sum(q ** s * q ** (r * (s - 1)) for s in range(1, m + 1))


def g_tilde_height_bound(q: int, r: int, d: int, m: int) -> int:
    """sum(q^s * (2+D)^(q^(rs)), s = 1..M)."""
    return sum(q ** s * (2 + d) ** (q ** (r * s)) for s in range(1, m + 1))


def iterate_height_bound(q: int, r: int, d: int, n: int) -> int:
    return (2 + d) ** (q ** (r * n))


def g_tilde(family: GenericFamily, m: int, cap: int) -> BiPoly:
    """Product of g_a,R over monic R with 1 <= deg R <= M."""
    if m < 1:
        raise DegenerateInputError("g~ needs M >= 1")
    predicted = predicted_g_tilde_degree(family.q, family.r, m)
    if predicted > cap:
        raise SizeCapExceededError(predicted, cap)
    acc = BiPoly.one(family.field)
    for s in range(1, m + 1):
        for poly in monic_polynomials(family.field, s):
            acc = acc * g_poly(family, poly)
    logger.debug("g~ for M=%d has z-degree %d", m, acc.degree)
    return acc


def dependence_witness(a: RatFunc, b: RatFunc) -> Optional[int]:
    """zeta in F_q with b = zeta*a when a, b are F_q-dependent, else None.

    A pair containing a zero point is always dependent and reports zeta = 0.
    """
    if a.field != b.field:
        raise FieldMismatchError("points over different fields")
    u = a.num * b.den
    v = b.num * a.den
    if u.is_zero or v.is_zero:
        return 0
    zeta = a.field.div(v.lc, u.lc)
    return zeta if u.scale(zeta) == v else None


def check_linear_independence(a: RatFunc, b: RatFunc) -> bool:
    """True iff a1*b2 and b1*a2 are F_q-linearly independent."""
    return dependence_witness(a, b) is None


def require_independent(a: RatFunc, b: RatFunc):
    zeta = dependence_witness(a, b)
    if zeta is not None:
        raise LinearDependenceError(f"points {a} and {b} are F_q-dependent", zeta=zeta)


def g_tilde_pair(a: RatFunc, b: RatFunc, r: int, m: int, cap: int) -> List[BiPoly]:
    """[g~_a,M, g~_b,M] for two independent points."""
    require_independent(a, b)
    return [g_tilde(GenericFamily(r, a), m, cap), g_tilde(GenericFamily(r, b), m, cap)]
