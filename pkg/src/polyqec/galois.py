"""Exact arithmetic in the finite fields GF(q) for prime powers q <= 29.

Elements of GF(p^m) are indexed by integers in [0, q).  For prime fields the
index is the residue mod p.  For extension fields the index encodes the
coefficient vector of the residue polynomial in base p: the element
c_0 + c_1*a + ... + c_{m-1}*a^{m-1} (a = class of x modulo the field modulus)
has index c_0 + c_1*p + ... + c_{m-1}*p^{m-1}.

Every field carries full q x q addition/multiplication lookup tables, so all
vectorised operations (numpy fancy indexing) work uniformly across prime and
extension fields.

The extension-field moduli are fixed once and for all as the lexicographically
least monic irreducible of the right degree (coefficient tuples in ascending
powers, compared as base-p numbers).  This yields:

    GF(4):  x^2 + x + 1        GF(8):  x^3 + x + 1       GF(9):  x^2 + 1
    GF(16): x^4 + x + 1        GF(25): x^2 + 2           GF(27): x^3 + 2x + 1

Single-character symbols for table I/O: '0'-'9' for 0-9 and 'A'-'H' for
10-17.  Fields with q > 18 have no single-character alphabet and fall back to
comma-separated decimal indices at the polynomial-formatting level.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29)

SYMBOLS = "0123456789ABCDEFGH"
MAX_SYMBOL_ORDER = len(SYMBOLS)  # 18


class UnsupportedFieldError(ValueError):
    """Requested field order is not a prime power <= 29."""


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


class SymbolError(ValueError):
    """Character is not a valid coefficient symbol for the field."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# modulus selection (plain integer-list polynomial arithmetic over GF(p);
# self-contained so FieldSpec construction does not depend on polyring)

def _gfp_polymul(f: list[int], g: list[int], p: int) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return out


def _gfp_polymod(f: list[int], g: list[int], p: int) -> list[int]:
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg and any(f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) - 1 < dg:
            break
        c = (f[-1] * inv_lead) % p
        shift = len(f) - 1 - dg
        for j, b in enumerate(g):
            f[shift + j] = (f[shift + j] - c * b) % p
        while f and f[-1] == 0:
            f.pop()
    return f


def _gfp_is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _gfp_polymod(f, g, p):
                return False
    return True


def _least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree m over GF(p)."""
    if m == 1:
        return (0, 1)
    # scan coefficient tuples (c_0, ..., c_{m-1}) in ascending base-p order,
    # most significant digit last
    for code in range(p**m):
        tail = []
        v = code
        for _ in range(m):
            v, r = divmod(v, p)
            tail.append(r)
        cand = tail + [1]
        if _gfp_is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible of degree {m} over GF({p})")


class FieldSpec:
    """A finite field GF(p^m), q = p^m <= 29, with precomputed op tables.

    Instances are interned per (p, m) through :func:`make_field`, so identity
    comparison is the field-equality check used throughout the package.
    """

    __slots__ = (
        "p", "m", "q", "modulus",
        "add_table", "sub_table", "mul_table", "neg_table", "inv_table",
    )

    def __init__(self, p: int, m: int):
        if not _is_prime(p):
            raise UnsupportedFieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise UnsupportedFieldError(f"extension degree {m} must be >= 1")
        q = p**m
        if q not in SUPPORTED_ORDERS:
            raise UnsupportedFieldError(
                f"GF({q}) is outside the supported range (prime powers <= 29)"
            )
        self.p = p
        self.m = m
        self.q = q
        self.modulus: tuple[int, ...] = _least_irreducible(p, m)
        self._build_tables()

    # -- construction of the element tables --------------------------------

    def _idx_to_vec(self, i: int) -> list[int]:
        vec = []
        for _ in range(self.m):
            i, r = divmod(i, self.p)
            vec.append(r)
        return vec

    def _vec_to_idx(self, vec: list[int]) -> int:
        i = 0
        for c in reversed(vec):
            i = i * self.p + c
        return i

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        add = np.zeros((q, q), dtype=np.uint8)
        mul = np.zeros((q, q), dtype=np.uint8)
        if m == 1:
            for a in range(q):
                for b in range(q):
                    add[a, b] = (a + b) % p
                    mul[a, b] = (a * b) % p
        else:
            mod = list(self.modulus)
            for a in range(q):
                va = self._idx_to_vec(a)
                for b in range(q):
                    vb = self._idx_to_vec(b)
                    vsum = [(x + y) % p for x, y in zip(va, vb)]
                    add[a, b] = self._vec_to_idx(vsum)
                    prod = _gfp_polymod(_gfp_polymul(va, vb, p), mod, p)
                    prod += [0] * (m - len(prod))
                    mul[a, b] = self._vec_to_idx(prod)
        neg = np.zeros(q, dtype=np.uint8)
        for a in range(q):
            row = np.where(add[a] == 0)[0]
            neg[a] = row[0]
        sub = add[:, neg]  # sub[a, b] = add[a, neg[b]]
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            inv[a] = int(np.where(mul[a] == 1)[0][0])
        self.add_table = add
        self.sub_table = sub
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv

    # -- scalar operations on element indices -------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    # -- vectorised operations on index arrays ------------------------------

    def vadd(self, x, y):
        return self.add_table[x, y]

    def vsub(self, x, y):
        return self.sub_table[x, y]

    def vneg(self, x):
        return self.neg_table[x]

    def vscale(self, c: int, x):
        return self.mul_table[c][x]

    # -- elements ------------------------------------------------------------

    def element(self, i: int) -> "FieldElement":
        if not 0 <= i < self.q:
            raise ValueError(f"index {i} out of range for {self!r}")
        return FieldElement(int(i), self)

    def from_int(self, value: int) -> "FieldElement":
        """Reduce an arbitrary integer into the field (prime fields only)."""
        if self.m == 1:
            return FieldElement(value % self.p, self)
        if 0 <= value < self.q:
            return FieldElement(value, self)
        raise ValueError(
            f"integer {value} is not a valid element index for {self!r}"
        )

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self):
        return (FieldElement(i, self) for i in range(self.q))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldSpec:
    """Construct (and intern) the field GF(p^m); errors if p^m is unsupported."""
    return FieldSpec(p, m)


@functools.lru_cache(maxsize=None)
def field_of_order(q: int) -> FieldSpec:
    """Look up GF(q) by its order."""
    if q not in SUPPORTED_ORDERS:
        raise UnsupportedFieldError(
            f"GF({q}) unsupported; supported orders: {SUPPORTED_ORDERS}"
        )
    for base in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29):
        e, t = 0, q
        while t % base == 0:
            t //= base
            e += 1
        if t == 1:
            return make_field(base, e)
    raise UnsupportedFieldError(f"GF({q}) is not a prime power")


@dataclass(frozen=True)
class FieldElement:
    """An element of a specific FieldSpec, identified by its canonical index."""

    index: int
    field: FieldSpec

    def _check(self, other: "FieldElement") -> None:
        if self.field is not other.field and self.field != other.field:
            raise FieldMismatchError(
                f"cannot combine elements of {self.field!r} and {other.field!r}"
            )

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.add(self.index, other.index), self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.sub(self.index, other.index), self.field)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field.mul(self.index, other.index), self.field)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(
            self.field.mul(self.index, self.field.inv(other.index)), self.field
        )

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field.neg(self.index), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.index), self.field)

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field.pow(self.index, e), self.field)

    def __bool__(self) -> bool:
        return self.index != 0

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"{self.index}@{self.field!r}"


def symbol_encode(e: FieldElement | int, field: FieldSpec | None = None) -> str:
    """Single-character symbol of an element (fields with q <= 18 only)."""
    if isinstance(e, FieldElement):
        field = e.field
        idx = e.index
    else:
        if field is None:
            raise TypeError("field required when encoding a bare index")
        idx = int(e)
    if field.q > MAX_SYMBOL_ORDER:
        raise SymbolError(
            f"{field!r} has no single-character alphabet (q > {MAX_SYMBOL_ORDER}); "
            "use comma-separated decimal formatting"
        )
    if not 0 <= idx < field.q:
        raise SymbolError(f"index {idx} out of range for {field!r}")
    return SYMBOLS[idx]


def symbol_decode(c: str, field: FieldSpec) -> FieldElement:
    """Decode a single coefficient symbol for the given field."""
    v = SYMBOLS.find(c.upper())
    if v < 0 or v >= field.q:
        raise SymbolError(f"symbol {c!r} is not an element of {field!r}")
    return field.element(v)
