"""
Finite field extensions F_{q^N} of a base field F_q.

An extension is F_q[x]/(m) for the lexicographically least monic
irreducible m of degree N, so every (p, e, N) names exactly one
representation. Elements are coordinate tuples over F_q (lowest power of x
first) and their integer index sum(c_i * q^i) orders and enumerates them.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from tools.base_field import BaseField, get_base_field
from tools.errors import (
    AlgebraError,
    DegenerateInputError,
    FieldMismatchError,
    ZeroDivisionAlgebraError,
)
from tools.polyring import ExtPoly, UPoly

logger = logging.getLogger(__name__)


def _prime_factors(n: int) -> List[int]:
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def is_irreducible(f: UPoly) -> bool:
    """Distinct-degree test: gcd(f, t^(q^i) - t) = 1 for i <= deg/2 and f | t^(q^deg) - t."""
    if f.is_zero:
        raise DegenerateInputError("irreducibility of the zero polynomial")
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    q = f.field.q
    t = UPoly.t(f.field)
    h = t
    for _ in range(n // 2):
        h = h.pow_mod(q, f)
        if f.gcd(h - t).degree > 0:
            return False
    for _ in range(n - n // 2):
        h = h.pow_mod(q, f)
    return ((h - t) % f).is_zero


def monic_polynomials(field: BaseField, degree: int) -> Iterator[UPoly]:
    """Monic polynomials of the given degree, lexicographic on coefficients.

    Higher-degree coefficients are more significant, so the order agrees
    with the integer value of the lower coefficient vector.
    """
    for digits in product(range(field.q), repeat=degree):
        yield UPoly(field, tuple(reversed(digits)) + (1,))


def find_irreducible(field: BaseField, degree: int) -> UPoly:
    """Lexicographically least monic irreducible of the given degree."""
    if degree < 1:
        raise DegenerateInputError(f"irreducible of degree {degree} requested")
    for f in monic_polynomials(field, degree):
        if is_irreducible(f):
            return f
    raise AlgebraError(f"no irreducible polynomial of degree {degree} over {field}")


class FieldCtx:
    """F_{q^N} = F_q[x]/(modulus).

    Attributes:
        base: The base field F_q
        modulus: Defining polynomial over F_q
        degree: N
        order: q^N
    """

    def __init__(self, base: BaseField, modulus: UPoly):
        if modulus.field != base:
            raise FieldMismatchError(f"modulus over {modulus.field} for base {base}")
        self.base = base
        self.modulus = modulus
        self.degree = modulus.degree
        self.order = base.q ** self.degree

        n = self.degree
        # Rows x^k mod modulus for k = N .. 2N-2, as coordinates.
        top = [base.neg(c) for c in modulus.coeffs[:n]]
        rows = []
        row = top
        for _ in range(max(n - 1, 0)):
            rows.append(tuple(row))
            carry = row[-1]
            row = [0] + row[:-1]
            if carry:
                row = [base.add(a, base.mul(carry, b)) for a, b in zip(row, top)]
        self._reduction = rows
        self._frobenius_rows: Optional[List[Tuple[int, ...]]] = None

        self.zero = ExtFieldElem(self, (0,) * n)
        self.one = ExtFieldElem(self, (1,) + (0,) * (n - 1))

    # Coordinate arithmetic

    def _mul_coords(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        add, mul = self.base._add, self.base._mul
        n = self.degree
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                row = mul[ai]
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = add[prod[i + j]][row[bj]]
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                row = mul[c]
                for m, r in enumerate(self._reduction[k - n]):
                    if r:
                        out[m] = add[out[m]][row[r]]
        return tuple(out)

    def _frobenius_coords(self, a: Sequence[int]) -> Tuple[int, ...]:
        if self._frobenius_rows is None:
            xq = self.gen ** self.base.q
            rows = [self.one.coords]
            for _ in range(self.degree - 1):
                rows.append(self._mul_coords(rows[-1], xq.coords))
            self._frobenius_rows = rows
        add, mul = self.base._add, self.base._mul
        out = [0] * self.degree
        for ai, row in zip(a, self._frobenius_rows):
            if ai:
                scaled = mul[ai]
                for m, r in enumerate(row):
                    if r:
                        out[m] = add[out[m]][scaled[r]]
        return tuple(out)

    # Elements

    @property
    def gen(self) -> "ExtFieldElem":
        """The class of x."""
        if self.degree == 1:
            return self.from_base(self.base.neg(self.modulus.coeffs[0]) if self.modulus.coeffs else 0)
        return ExtFieldElem(self, (0, 1) + (0,) * (self.degree - 2))

    def from_base(self, c: int) -> "ExtFieldElem":
        return ExtFieldElem(self, (c,) + (0,) * (self.degree - 1))

    def from_coords(self, coords: Sequence[int]) -> "ExtFieldElem":
        coords = [int(c) for c in coords]
        if len(coords) > self.degree:
            if any(coords[self.degree:]):
                raise DegenerateInputError(f"{len(coords)} coordinates for {self}")
            coords = coords[:self.degree]
        if any(c < 0 or c >= self.base.q for c in coords):
            raise DegenerateInputError(f"coordinate out of range for {self.base}")
        return ExtFieldElem(self, tuple(coords) + (0,) * (self.degree - len(coords)))

    def element(self, index: int) -> "ExtFieldElem":
        if not 0 <= index < self.order:
            raise DegenerateInputError(f"index {index} out of range for {self}")
        q = self.base.q
        return ExtFieldElem(self, tuple((index // q ** i) % q for i in range(self.degree)))

    def elements(self) -> Iterator["ExtFieldElem"]:
        for index in range(self.order):
            yield self.element(index)

    def subfield_elements(self, d: int) -> Iterator["ExtFieldElem"]:
        """Elements of the subfield F_{q^d}, i.e. fixed by the q^d-power map."""
        if d < 1 or self.degree % d:
            raise DegenerateInputError(f"F_q^{d} is not a subfield of {self}")
        for a in self.elements():
            if a.frobenius(d) == a:
                yield a

    def generators(self) -> Iterator["ExtFieldElem"]:
        """Elements generating F_{q^N} over F_q, in index order."""
        for a in self.elements():
            if is_generator(a):
                yield a

    def __reduce__(self):
        return (get_field_ctx, (self.base.p, self.base.e, self.degree))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and self.base == other.base
            and self.modulus.coeffs == other.modulus.coeffs
        )

    def __hash__(self) -> int:
        return hash(("FieldCtx", self.base, self.modulus.coeffs))

    def __repr__(self) -> str:
        return f"GF({self.base.q}^{self.degree})"


@dataclass(frozen=True)
class ExtFieldElem:
    """Element of F_{q^N}: coordinates over F_q, lowest power of x first."""

    ctx: FieldCtx
    coords: Tuple[int, ...]

    def _check(self, other: "ExtFieldElem"):
        if self.ctx != other.ctx:
            raise FieldMismatchError(f"elements of {self.ctx} and {other.ctx} do not mix")

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def index(self) -> int:
        q = self.ctx.base.q
        return sum(c * q ** i for i, c in enumerate(self.coords))

    def __add__(self, other: "ExtFieldElem") -> "ExtFieldElem":
        self._check(other)
        add = self.ctx.base._add
        return ExtFieldElem(self.ctx, tuple(add[a][b] for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ExtFieldElem") -> "ExtFieldElem":
        self._check(other)
        sub = self.ctx.base._sub
        return ExtFieldElem(self.ctx, tuple(sub[a][b] for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ExtFieldElem":
        neg = self.ctx.base._neg
        return ExtFieldElem(self.ctx, tuple(neg[a] for a in self.coords))

    def __mul__(self, other: "ExtFieldElem") -> "ExtFieldElem":
        self._check(other)
        return ExtFieldElem(self.ctx, self.ctx._mul_coords(self.coords, other.coords))

    def scale(self, c: int) -> "ExtFieldElem":
        """Multiply by an element of the base field."""
        row = self.ctx.base._mul[c]
        return ExtFieldElem(self.ctx, tuple(row[a] for a in self.coords))

    def __pow__(self, n: int) -> "ExtFieldElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "ExtFieldElem":
        if self.is_zero:
            raise ZeroDivisionAlgebraError(f"inverse of zero in {self.ctx}")
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other: "ExtFieldElem") -> "ExtFieldElem":
        return self * other.inverse()

    def frobenius(self, k: int = 1) -> "ExtFieldElem":
        """self^(q^k)."""
        coords = self.coords
        for _ in range(k % self.ctx.degree):
            coords = self.ctx._frobenius_coords(coords)
        return ExtFieldElem(self.ctx, coords)

    def canonical(self) -> List[int]:
        return list(self.coords)

    def __repr__(self) -> str:
        return f"{self.ctx}{list(self.coords)}"


@lru_cache(maxsize=None)
def get_field_ctx(p: int, e: int, n: int) -> FieldCtx:
    """The shared FieldCtx for F_{(p^e)^n}."""
    if n < 1:
        raise DegenerateInputError(f"extension degree must be positive, got {n}")
    base = get_base_field(p, e)
    ctx = FieldCtx(base, find_irreducible(base, n))
    logger.debug("Constructed %s with modulus %s", ctx, ctx.modulus.to_text("x"))
    return ctx


def extension_ctx(ctx: FieldCtx, k: int) -> FieldCtx:
    """F_{q^(N*k)} as a FieldCtx over the same base."""
    return get_field_ctx(ctx.base.p, ctx.base.e, ctx.degree * k)


def first_linear_dependence(base: BaseField, vectors: Iterable[Sequence[int]]) -> UPoly:
    """Monic relation for the first vector that depends on its predecessors.

    Returns c_0 + c_1 X + ... + X^k with sum(c_i v_i) = 0, where v_k is the
    first vector in the span of v_0..v_{k-1}. Elimination is incremental, so
    the vectors may be produced lazily.
    """
    rows: List[Tuple[int, np.ndarray, np.ndarray]] = []
    for k, vec in enumerate(vectors):
        v = np.array(vec, dtype=np.int64)
        combo = np.zeros(k + 1, dtype=np.int64)
        combo[k] = 1
        for pivot, row, row_combo in rows:
            c = int(v[pivot])
            if c:
                nc = base.neg(c)
                v = base.vadd(v, base.vscale(nc, row))
                n = len(row_combo)
                combo[:n] = base.vadd(combo[:n], base.vscale(nc, row_combo))
        nonzero = np.flatnonzero(v)
        if nonzero.size == 0:
            return UPoly.from_array(base, combo)
        pivot = int(nonzero[0])
        inv = base.inv(int(v[pivot]))
        rows.append((pivot, base.vscale(inv, v), base.vscale(inv, combo)))
    raise AlgebraError("vector sequence ended before becoming dependent")


def _powers(a: ExtFieldElem) -> Iterator[Tuple[int, ...]]:
    x = a.ctx.one
    while True:
        yield x.coords
        x = x * a


def minimal_polynomial(a: ExtFieldElem) -> UPoly:
    """Monic minimal polynomial of a over F_q."""
    return first_linear_dependence(a.ctx.base, _powers(a))


def is_generator(a: ExtFieldElem) -> bool:
    """True iff a generates F_{q^N} over F_q, i.e. deg minimal_polynomial(a) = N.

    Checked through the Frobenius orbit: a lies in a proper subfield iff
    a^(q^(N/r)) = a for some prime r dividing N.
    """
    n = a.ctx.degree
    return all(a.frobenius(n // r) != a for r in _prime_factors(n))


def _trace_poly(delta: ExtFieldElem, g: ExtPoly) -> ExtPoly:
    """sum((delta*x)^(p^i) mod g, i < log_p |F|), the absolute trace of delta*x."""
    ctx = g.ctx
    p = ctx.base.p
    steps = ctx.base.e * ctx.degree
    y = ExtPoly(ctx, (ctx.zero, delta)) % g
    acc = y
    for _ in range(steps - 1):
        y = y.pow_mod(p, g)
        acc = acc + y
    return acc


def _split_roots(g: ExtPoly) -> List[ExtFieldElem]:
    """Roots of a monic g that splits into distinct linear factors."""
    if g.degree <= 0:
        return []
    if g.degree == 1:
        return [-(g.coeffs[0] / g.coeffs[1])]
    ctx = g.ctx
    for delta in ctx.elements():
        if delta.is_zero:
            continue
        tr = _trace_poly(delta, g)
        for c in range(ctx.base.p):
            d = g.gcd(tr - ExtPoly(ctx, (ctx.from_base(c),)))
            if 0 < d.degree < g.degree:
                return _split_roots(d) + _split_roots(g.exact_div(d))
    raise AlgebraError("trace splitting failed to separate roots")


def roots_in(f: UPoly, target: FieldCtx) -> List[ExtFieldElem]:
    """Distinct roots of f in target, sorted by index."""
    if f.is_zero:
        raise DegenerateInputError("the zero polynomial vanishes everywhere")
    g = ExtPoly.from_upoly(f, target).monic()
    if g.degree <= 0:
        return []
    x = ExtPoly.x(target)
    split = g.gcd(x.pow_mod(target.order, g) - x)
    return sorted(_split_roots(split), key=lambda r: r.index)


@lru_cache(maxsize=None)
def _embedding_image(source: FieldCtx, target: FieldCtx) -> ExtFieldElem:
    if source.base != target.base or target.degree % source.degree:
        raise FieldMismatchError(f"{source} does not embed in {target}")
    roots = roots_in(source.modulus, target)
    if not roots:
        raise AlgebraError(f"modulus of {source} has no root in {target}")
    return roots[0]


def embed(a: ExtFieldElem, target: FieldCtx) -> ExtFieldElem:
    """Image of a under the fixed embedding F_{q^N} -> F_{q^M}.

    The generator x of the source is sent to the least root (by index) of the
    source modulus in the target, which fixes one ring homomorphism per pair
    of fields.
    """
    source = a.ctx
    if source == target:
        return a
    image = _embedding_image(source, target)
    acc = target.zero
    power = target.one
    for c in a.coords:
        if c:
            acc = acc + power.scale(c)
        power = power * image
    return acc
