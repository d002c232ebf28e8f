"""
Base Field tables for F_q = F_p^e.

F_q is represented over F_p by the smallest monic irreducible polynomial of
degree e. An element is an integer code 0..q-1 whose base-p digits are its
coordinates over F_p, lowest degree first. Addition, multiplication,
negation and inversion are numpy lookup tables built once per (p, e) and
shared by every polynomial living over the field.
"""
import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from tools.errors import DegenerateInputError, ZeroDivisionAlgebraError

logger = logging.getLogger(__name__)

# Largest field order for which full q x q tables are built.
MAX_TABLE_ORDER = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class BaseField:
    """Arithmetic tables for F_p^e.

    Attributes:
        p: Characteristic
        e: Degree over F_p
        q: Field order p^e
        modulus: Coefficients over F_p of the defining polynomial, low first
        add_table, sub_table, mul_table: q x q numpy tables
        neg_table, inv_table: length-q numpy tables (inv_table[0] is unused)
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = tuple(int(c) for c in modulus)

        q = self.q
        weights = p ** np.arange(e, dtype=np.int64)
        digits = (np.arange(q, dtype=np.int64)[:, None] // weights) % p

        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg_table = ((-digits) % p) @ weights
        self.sub_table = self.add_table[:, self.neg_table]
        self.mul_table = self._build_mul_table(digits, weights)

        inv = np.argmax(self.mul_table == 1, axis=1)
        inv[0] = 0
        self.inv_table = inv.astype(np.int64)

        # Plain-list views for scalar lookups in tight Python loops.
        self._add: List[List[int]] = self.add_table.tolist()
        self._sub: List[List[int]] = self.sub_table.tolist()
        self._mul: List[List[int]] = self.mul_table.tolist()
        self._neg: List[int] = self.neg_table.tolist()
        self._inv: List[int] = self.inv_table.tolist()

        logger.debug("Built arithmetic tables for GF(%d^%d)", p, e)

    def _build_mul_table(self, digits: np.ndarray, weights: np.ndarray) -> np.ndarray:
        p, e, q = self.p, self.e, self.q
        if e == 1:
            codes = np.arange(q, dtype=np.int64)
            return np.outer(codes, codes) % p

        table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            prod = np.zeros((q, 2 * e - 1), dtype=np.int64)
            for i in range(e):
                if digits[a, i]:
                    prod[:, i:i + e] += digits[a, i] * digits
            prod %= p
            # x^e = -sum(modulus[m] x^m)
            for k in range(2 * e - 2, e - 1, -1):
                c = prod[:, k]
                for m in range(e):
                    if self.modulus[m]:
                        prod[:, k - e + m] -= c * self.modulus[m]
                prod[:, k] = 0
                prod %= p
            table[a] = prod[:, :e] @ weights
        return table

    # Scalar arithmetic

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionAlgebraError(f"inverse of zero in {self}")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self._mul[result][a]
            a = self._mul[a][a]
            n >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # Vectorized arithmetic on numpy code arrays

    def vadd(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.add_table[x, y]

    def vsub(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.sub_table[x, y]

    def vneg(self, x: np.ndarray) -> np.ndarray:
        return self.neg_table[x]

    def vscale(self, c: int, x: np.ndarray) -> np.ndarray:
        return self.mul_table[c, x]

    def convolve(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Coefficient array of the product of two polynomials."""
        if self.e == 1:
            return np.convolve(x, y) % self.p
        if len(x) > len(y):
            x, y = y, x
        out = np.zeros(len(x) + len(y) - 1, dtype=np.int64)
        n = len(y)
        for i, c in enumerate(x.tolist()):
            if c:
                out[i:i + n] = self.add_table[out[i:i + n], self.mul_table[c, y]]
        return out

    def __reduce__(self):
        return (get_base_field, (self.p, self.e))

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash(("BaseField", self.p, self.e))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"


@lru_cache(maxsize=None)
def get_base_field(p: int, e: int = 1) -> BaseField:
    """Return the shared BaseField for F_p^e."""
    if not is_prime(p):
        raise DegenerateInputError(f"characteristic {p} is not prime")
    if e < 1:
        raise DegenerateInputError(f"field degree must be positive, got {e}")
    if p ** e > MAX_TABLE_ORDER:
        raise DegenerateInputError(
            f"GF({p}^{e}) exceeds the table limit of {MAX_TABLE_ORDER} elements"
        )
    if e == 1:
        return BaseField(p, 1, (0, 1))

    from tools.ffield import find_irreducible

    modulus = find_irreducible(get_base_field(p, 1), e)
    return BaseField(p, e, modulus.coeffs)


@lru_cache(maxsize=None)
def subfield_embedding(small: BaseField, big: BaseField) -> Tuple[int, ...]:
    """Codes of the images of every element of `small` inside `big`.

    The embedding sends the generator of `small` to the smallest root (by
    code) of its defining polynomial in `big`.
    """
    if small.p != big.p or big.e % small.e != 0:
        raise DegenerateInputError(f"{small} does not embed in {big}")
    if small.e == 1 or small == big:
        return tuple(range(small.q))

    root = None
    for x in range(big.q):
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, x), c)
        if acc == 0:
            root = x
            break
    if root is None:
        raise DegenerateInputError(f"no root of the {small} modulus in {big}")

    powers = [1]
    for _ in range(small.e - 1):
        powers.append(big.mul(powers[-1], root))

    images = []
    for code in range(small.q):
        acc = 0
        for i in range(small.e):
            digit = (code // small.p ** i) % small.p
            if digit:
                acc = big.add(acc, big.mul(digit, powers[i]))
        images.append(acc)
    return tuple(images)
