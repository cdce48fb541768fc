"""Finite fields GF(p^k), table-driven, for q = p^k <= 1024.

Elements are integers in range(q) read as base-p digit vectors, low digit =
coefficient of x^0 in the polynomial representation modulo a fixed irreducible.
The modulus for each (p, k) is the lexicographically smallest monic irreducible
(low-degree-first coefficient order); shipping them as constants keeps every run
and every serialization bit-identical. Construction re-verifies irreducibility by
trial division, so a corrupted table cannot produce a silent non-field.

Multiplication/inverse go through exp/log tables on a primitive element; addition
is digitwise mod p (plain XOR when p = 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (FieldTooLarge, InvalidInput, LengthMismatch,
                     NonPrime)

MAX_Q = 1024

# (p, k) -> monic irreducible of degree k, low-degree-first, length k+1.
# Lex-smallest over the coefficient vector (c0, c1, ..., c_{k-1}).
_IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 1, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
    (5, 4): (2, 0, 0, 0, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (2, 0, 0, 1),
    (11, 2): (1, 0, 1),
    (13, 2): (2, 0, 1),
    (17, 2): (3, 0, 1),
    (19, 2): (1, 0, 1),
    (23, 2): (1, 0, 1),
    (29, 2): (2, 0, 1),
    (31, 2): (1, 0, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _poly_divides(divisor, poly, p):
    # remainder of poly / divisor over GF(p); both low-degree-first, divisor monic
    r = list(poly)
    db = len(divisor) - 1
    while len(r) - 1 >= db and any(r):
        while len(r) > 1 and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        coef = r[-1]
        shift = len(r) - 1 - db
        for i, bi in enumerate(divisor):
            r[shift + i] = (r[shift + i] - coef * bi) % p
        while len(r) > 1 and r[-1] == 0:
            r.pop()
    return all(c == 0 for c in r)


def _verify_irreducible(coeffs, p):
    k = len(coeffs) - 1
    if coeffs[-1] != 1:
        raise InvalidInput("modulus must be monic")
    for deg in range(1, k // 2 + 1):
        for idx in range(p**deg):
            low, t = [], idx
            for _ in range(deg):
                low.append(t % p)
                t //= p
            if _poly_divides(low + [1], coeffs, p):
                raise InvalidInput(f"modulus {coeffs} reducible over GF({p})")


class FieldSpec:
    """GF(p^k) with precomputed operation tables.

    Public attributes: p, k, q, modulus. Elements are plain ints in range(q).
    """

    def __init__(self, p: int, k: int):
        if not _is_prime(p):
            raise NonPrime(f"p={p} is not prime")
        if k < 1:
            raise InvalidInput(f"k={k} must be >= 1")
        q = p**k
        if q > MAX_Q:
            raise FieldTooLarge(f"q={q} exceeds table cap {MAX_Q}")
        self.p = p
        self.k = k
        self.q = q
        if k == 1:
            self.modulus = (0, 1)  # formal x - 0; unused for prime fields
        else:
            self.modulus = _IRREDUCIBLE[(p, k)]
            _verify_irreducible(self.modulus, p)
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _mul_poly(self, a: int, b: int) -> int:
        # schoolbook product of digit vectors, reduced by the modulus
        p, k = self.p, self.k
        da = self.coords(a)
        db = self.coords(b)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce: x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
        m = self.modulus
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for j in range(k):
                    prod[deg - k + j] = (prod[deg - k + j] - c * m[j]) % p
        return self.from_coords(prod[:k])

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            self._mul_table = None
            self.exp = [1]
            g = self._find_primitive_prime()
            e = 1
            for _ in range(q - 2):
                e = (e * g) % p
                self.exp.append(e)
        else:
            # exp/log over a primitive element found by order test
            self.exp = None
            for g in range(2, q):
                seen = [False] * q
                e, order = 1, 0
                while True:
                    e = self._mul_poly(e, g)
                    order += 1
                    if e == 1:
                        break
                    if seen[e]:  # cycle without returning to 1: impossible, guard
                        order = 0
                        break
                    seen[e] = True
                if order == q - 1:
                    powers = [1]
                    e = 1
                    for _ in range(q - 2):
                        e = self._mul_poly(e, g)
                        powers.append(e)
                    self.exp = powers
                    break
            if self.exp is None:
                raise InvalidInput(f"no primitive element found for GF({q})")
        self.log = [0] * q
        for i, e in enumerate(self.exp):
            self.log[e] = i
        self._neg = [self._neg_digitwise(a) for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            self._inv[a] = self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def _find_primitive_prime(self) -> int:
        p = self.p
        if p == 2:
            return 1
        for g in range(2, p):
            e, order = 1, 0
            while True:
                e = (e * g) % p
                order += 1
                if e == 1:
                    break
            if order == p - 1:
                return g
        raise InvalidInput(f"no primitive root mod {p}")

    def _neg_digitwise(self, a: int) -> int:
        p = self.p
        out, mult = 0, 1
        while a:
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    # -- element ops -------------------------------------------------------

    def check(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.q:
            raise InvalidInput(f"element {a!r} not in range(q={self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out, mult = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise InvalidInput("inverse of 0")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise InvalidInput("0 to a negative power")
            return 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def scalar_mul(self, c: int, a: int) -> int:
        """Multiply by a prime-subfield scalar c in range(p)."""
        if not 0 <= c < self.p:
            raise InvalidInput(f"scalar {c} not in range(p={self.p})")
        return self.mul(c, a)

    # -- coordinates -------------------------------------------------------

    def coords(self, a: int) -> tuple:
        """Base-p digits of a, low-degree-first, length k."""
        self.check(a)
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coords(self, digits) -> int:
        if len(digits) != self.k:
            raise LengthMismatch(f"need {self.k} digits, got {len(digits)}")
        out, mult = 0, 1
        for d in digits:
            if not 0 <= d < self.p:
                raise InvalidInput(f"digit {d} not in range(p={self.p})")
            out += d * mult
            mult *= self.p
        return out

    def elements(self):
        return range(self.q)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec) and self.p == other.p and self.k == other.k
        )

    def __hash__(self):
        return hash((self.p, self.k))


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> FieldSpec:
    """Construct (and cache) GF(p^k). q = p^k must not exceed 1024."""
    return FieldSpec(p, k)


def field_from_order(q: int) -> FieldSpec:
    """GF(q) from the field order alone (factors q as a prime power)."""
    if q < 2:
        raise InvalidInput(f"q={q} must be >= 2")
    p = next(c for c in range(2, q + 1) if q % c == 0)
    k, t = 0, q
    while t % p == 0:
        t //= p
        k += 1
    if t != 1:
        raise InvalidInput(f"q={q} is not a prime power")
    return field_make(p, k)


def field_from_json(obj: dict) -> FieldSpec:
    f = field_make(int(obj["p"]), int(obj["k"]))
    if "modulus" in obj and tuple(obj["modulus"]) != f.modulus:
        raise InvalidInput(
            f"modulus {obj['modulus']} differs from the fixed one {list(f.modulus)}"
        )
    return f


@dataclass(frozen=True)
class ExtSymbol:
    """One symbol of the degree-d extension alphabet, held as a GF(q)^d vector.

    No extension-field arithmetic is ever done on these; the alphabet only needs
    equality and a zero test, so a symbol is just its coordinate vector.
    """

    field: FieldSpec
    coords: tuple

    @property
    def d(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def ext_pack(field: FieldSpec, v, d: int) -> ExtSymbol:
    """Pack a length-d GF(q) vector into one extension-alphabet symbol."""
    v = tuple(v)
    if len(v) != d:
        raise LengthMismatch(f"vector length {len(v)} != d={d}")
    for c in v:
        field.check(c)
    return ExtSymbol(field, v)


def ext_unpack(sym: ExtSymbol) -> tuple:
    return sym.coords
