"""Dense univariate polynomials over GF(q): arithmetic, factorization into
irreducibles, divisor enumeration, and the trinomial/multinomial constructors
used by the code searches.

Coefficients are stored in ascending powers of x.  String formatting follows
the same convention: the entry "79F1" over GF(17) is 7 + 9x + 15x^2 + x^3,
leading coefficient at the right.  Fields with q > 18 use comma-separated
decimal indices instead of the single-character alphabet.

Factorization is squarefree decomposition, then distinct-degree splitting,
then seeded Cantor-Zassenhaus equal-degree splitting; deterministic for a
given seed.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .galois import (
    FieldElement,
    FieldMismatchError,
    FieldSpec,
    SymbolError,
    symbol_decode,
    symbol_encode,
)


class ZeroPolynomialError(ZeroDivisionError):
    """Operation undefined for the zero polynomial."""


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


class Poly:
    """Immutable dense polynomial over a FieldSpec.

    ``coeffs[i]`` is the index of the coefficient of x^i; trailing zeros are
    trimmed so the representation is canonical.  ``degree`` of the zero
    polynomial is the sentinel -1.
    """

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, coeffs, field: FieldSpec):
        arr = np.asarray(coeffs)
        if arr.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if arr.dtype != np.uint8:
            wide = arr.astype(np.int64) if len(arr) else arr
            if len(wide) and (wide.min() < 0 or wide.max() >= field.q):
                raise ValueError(f"coefficient index out of range for {field!r}")
            arr = arr.astype(np.uint8)
        elif len(arr) and arr.max() >= field.q:
            raise ValueError(f"coefficient index out of range for {field!r}")
        self.field = field
        self.coeffs = _trim(arr)
        self.coeffs.setflags(write=False)
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec) -> "Poly":
        return cls([], field)

    @classmethod
    def one(cls, field: FieldSpec) -> "Poly":
        return cls([1], field)

    @classmethod
    def x(cls, field: FieldSpec) -> "Poly":
        return cls([0, 1], field)

    @classmethod
    def constant(cls, c: int | FieldElement, field: FieldSpec) -> "Poly":
        return cls([int(c)], field)

    @classmethod
    def monomial(cls, degree: int, field: FieldSpec, c: int = 1) -> "Poly":
        coeffs = np.zeros(degree + 1, dtype=np.uint8)
        coeffs[degree] = c
        return cls(coeffs, field)

    # -- basic structure ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def lc(self) -> int:
        """Leading coefficient index (0 for the zero polynomial)."""
        return int(self.coeffs[-1]) if len(self.coeffs) else 0

    def is_monic(self) -> bool:
        return self.lc == 1

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroPolynomialError("zero polynomial has no monic associate")
        if self.lc == 1:
            return self
        inv = self.field.inv(self.lc)
        return Poly(self.field.vscale(inv, self.coeffs), self.field)

    def coefficient(self, i: int) -> int:
        return int(self.coeffs[i]) if 0 <= i <= self.degree else 0

    def _check(self, other: "Poly") -> None:
        if self.field is not other.field and self.field != other.field:
            raise FieldMismatchError("polynomials over different fields")

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] = self.field.vadd(out[: len(b)], b)
        return Poly(out, self.field)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=np.uint8)
        a[: len(self.coeffs)] = self.coeffs
        b = np.zeros(n, dtype=np.uint8)
        b[: len(other.coeffs)] = other.coeffs
        return Poly(self.field.vsub(a, b), self.field)

    def __neg__(self) -> "Poly":
        return Poly(self.field.vneg(self.coeffs), self.field)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        f = self.field
        if f.m == 1:
            prod = np.convolve(
                self.coeffs.astype(np.int64), other.coeffs.astype(np.int64)
            ) % f.p
            return Poly(prod.astype(np.uint8), f)
        out = np.zeros(self.degree + other.degree + 1, dtype=np.uint8)
        a = self.coeffs
        for j, cj in enumerate(other.coeffs):
            if cj:
                out[j : j + len(a)] = f.vadd(out[j : j + len(a)], f.vscale(cj, a))
        return Poly(out, f)

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return Poly.zero(self.field)
        return Poly(self.field.vscale(c, self.coeffs), self.field)

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero() or k == 0:
            return self
        out = np.zeros(len(self.coeffs) + k, dtype=np.uint8)
        out[k:] = self.coeffs
        return Poly(out, self.field)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        r = Poly.one(self.field)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __floordiv__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[1]

    def __call__(self, point: int | FieldElement) -> int:
        """Evaluate at a field element (Horner), returning an element index."""
        f = self.field
        x = int(point)
        acc = 0
        for c in self.coeffs[::-1]:
            acc = f.add(f.mul(acc, x), int(c))
        return acc

    def derivative(self) -> "Poly":
        if self.degree < 1:
            return Poly.zero(self.field)
        f = self.field
        out = np.zeros(self.degree, dtype=np.uint8)
        for i in range(1, self.degree + 1):
            out[i - 1] = f.mul(int(self.coeffs[i]), i % f.p)
        return Poly(out, f)

    # -- comparisons -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and len(self.coeffs) == len(other.coeffs)
            and bool(np.all(self.coeffs == other.coeffs))
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, bytes(self.coeffs.tobytes())))
        return self._hash

    def key(self) -> tuple:
        """Deterministic sort key: (degree, coefficient tuple)."""
        return (self.degree, tuple(int(c) for c in self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({poly_format(self)!r}, {self.field!r})"


# ---------------------------------------------------------------------------
# division, gcd

def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder with deg r < deg g."""
    f._check(g)
    if g.is_zero():
        raise ZeroPolynomialError("polynomial division by zero")
    F = f.field
    if f.degree < g.degree:
        return Poly.zero(F), f
    r = f.coeffs.copy()
    q = np.zeros(f.degree - g.degree + 1, dtype=np.uint8)
    gc = g.coeffs
    dg = g.degree
    inv_lead = F.inv(int(gc[-1]))
    for i in range(len(r) - 1, dg - 1, -1):
        c = int(r[i])
        if c == 0:
            continue
        qc = F.mul(c, inv_lead)
        q[i - dg] = qc
        r[i - dg : i + 1] = F.vsub(r[i - dg : i + 1], F.vscale(qc, gc))
    return Poly(q, F), Poly(r, F)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor; gcd(f, 0) = monic(f)."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_mulmod(a: Poly, b: Poly, mod: Poly) -> Poly:
    return (a * b) % mod


def poly_powmod(base: Poly, e: int, mod: Poly) -> Poly:
    """base^e mod `mod` by square-and-multiply (e may be a big integer)."""
    r = Poly.one(base.field)
    b = base % mod
    while e:
        if e & 1:
            r = poly_mulmod(r, b, mod)
        b = poly_mulmod(b, b, mod)
        e >>= 1
    return r


# ---------------------------------------------------------------------------
# factorization

@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor^multiplicity); factors are monic irreducibles,
    sorted by (degree, coefficient tuple)."""

    unit: int
    factors: tuple[tuple[Poly, int], ...]
    field: FieldSpec

    def product(self) -> Poly:
        out = Poly.constant(self.unit, self.field)
        for g, mult in self.factors:
            out = out * g**mult
        return out

    def divisor_count(self) -> int:
        n = 1
        for _, mult in self.factors:
            n *= mult + 1
        return n

    def __iter__(self):
        return iter(self.factors)


def _pth_root(f: Poly) -> Poly:
    """Inverse Frobenius: g with g(x)^p = f(x), for f of the form h(x^p)."""
    F = f.field
    p = F.p
    root_exp = F.q // p  # c -> c^(q/p) inverts c -> c^p
    out = np.zeros(f.degree // p + 1, dtype=np.uint8)
    for i in range(0, f.degree + 1, p):
        out[i // p] = F.pow(int(f.coeffs[i]), root_exp)
    return Poly(out, F)


def _squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun-style decomposition valid in characteristic p; f monic."""
    F = f.field
    out: list[tuple[Poly, int]] = []
    df = f.derivative()
    if df.is_zero():
        inner = _squarefree_decomposition(_pth_root(f))
        return [(g, m * F.p) for g, m in inner]
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        inner = _squarefree_decomposition(_pth_root(c))
        out.extend((g, m * F.p) for g, m in inner)
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split monic squarefree f into products of irreducibles of equal degree.

    Returns (product, degree) pairs.
    """
    F = f.field
    out = []
    h = Poly.x(F) % f
    x = Poly.x(F)
    d = 0
    while f.degree > 2 * (d + 1) - 1 and f.degree > 0:
        d += 1
        h = poly_powmod(h, F.q, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> Poly:
    """Find a proper monic factor of f (product of >= 2 irreducibles of
    degree d) by Cantor-Zassenhaus."""
    F = f.field
    n = f.degree
    while True:
        a = Poly([rng.randrange(F.q) for _ in range(n)], F)
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < n:
            return g
        if F.p == 2:
            # trace map to GF(2): sum of 2^i-th powers
            t = a % f
            acc = t
            for _ in range(F.m * d - 1):
                t = poly_mulmod(t, t, f)
                acc = acc + t
            b = acc
        else:
            e = (F.q**d - 1) // 2
            b = poly_powmod(a, e, f) - Poly.one(F)
        if b.is_zero():
            continue
        g = poly_gcd(b, f)
        if 0 < g.degree < n:
            return g


def _equal_degree_factor(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.degree == d:
        return [f.monic()]
    g = _equal_degree_split(f, d, rng)
    return _equal_degree_factor(g, d, rng) + _equal_degree_factor(f // g, d, rng)


def poly_factor(f: Poly, seed: int = 0) -> Factorization:
    """Complete factorization into monic irreducibles with multiplicities.

    The equal-degree stage is randomized; `seed` makes it deterministic.
    """
    if f.is_zero():
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    unit = f.lc
    work = f.monic()
    rng = random.Random(f"{seed}|{f.field.q}|{f.coeffs.tobytes().hex()}")
    found: dict[Poly, int] = {}
    if work.degree == 0:
        return Factorization(unit, (), f.field)
    for sqfree, mult in _squarefree_decomposition(work):
        for prod, d in _distinct_degree(sqfree):
            for irr in _equal_degree_factor(prod, d, rng):
                found[irr] = found.get(irr, 0) + mult
    factors = tuple(sorted(found.items(), key=lambda kv: kv[0].key()))
    return Factorization(unit, factors, f.field)


def is_irreducible(f: Poly, seed: int = 0) -> bool:
    """Rabin irreducibility test."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    F = f.field
    n = f.degree
    x = Poly.x(F)
    # x^(q^n) == x mod f, and x^(q^(n/l)) - x coprime to f for prime l | n
    primes = []
    t = n
    d = 2
    while d * d <= t:
        if t % d == 0:
            primes.append(d)
            while t % d == 0:
                t //= d
        d += 1
    if t > 1:
        primes.append(t)
    for ell in primes:
        h = poly_powmod(x, F.q ** (n // ell), f)
        g = h - x
        if g.is_zero() or poly_gcd(g, f).degree > 0:
            return False
    h = poly_powmod(x, F.q**n, f)
    return (h - (x % f)).is_zero()


# ---------------------------------------------------------------------------
# divisor enumeration

def enumerate_divisors(
    fact: Factorization,
    min_degree: int = 0,
    max_degree: int | None = None,
) -> Iterator[Poly]:
    """Yield every monic divisor exactly once, in nondecreasing degree order.

    Lazy: a heap over exponent vectors, where each vector's unique
    predecessor decrements its lowest nonzero position, so nothing is
    produced twice.  Degrees only grow along successor edges, which lets the
    degree window prune whole subtrees.
    """
    factors = [g for g, _ in fact.factors]
    mults = [m for _, m in fact.factors]
    degs = [g.degree for g in factors]
    L = len(factors)
    start = (0,) * L
    heap: list[tuple[int, tuple[int, ...]]] = [(0, start)]
    seen = {start}
    while heap:
        deg, expv = heapq.heappop(heap)
        if max_degree is not None and deg > max_degree:
            continue  # successors only grow; drop the subtree
        if deg >= min_degree:
            div = Poly.one(fact.field)
            for g, e in zip(factors, expv):
                if e:
                    div = div * g**e
            yield div
        limit = next((i for i, e in enumerate(expv) if e), L)
        for i in range(min(limit + 1, L)):
            if expv[i] < mults[i]:
                nxt = expv[:i] + (expv[i] + 1,) + expv[i + 1 :]
                if nxt not in seen:
                    seen.add(nxt)
                    heapq.heappush(heap, (deg + degs[i], nxt))


# ---------------------------------------------------------------------------
# trinomials and multinomials

def make_trinomial(
    field: FieldSpec, n: int, i: int, a: int | FieldElement, b: int | FieldElement
) -> Poly:
    """x^n - a*x^i - b with a, b nonzero and 0 < i < n."""
    a, b = int(a), int(b)
    if not 0 < i < n:
        raise ValueError(f"trinomial requires 0 < i < n, got i={i}, n={n}")
    if a == 0 or b == 0:
        raise ValueError("trinomial coefficients a, b must be nonzero")
    coeffs = np.zeros(n + 1, dtype=np.uint8)
    coeffs[n] = 1
    coeffs[i] = field.neg(a)
    coeffs[0] = field.neg(b)
    return Poly(coeffs, field)


def make_multinomial(n: int, v: Poly) -> Poly:
    """x^n - v(x) with deg v < n."""
    if v.degree >= n:
        raise ValueError(f"deg v = {v.degree} must be < n = {n}")
    coeffs = np.zeros(n + 1, dtype=np.uint8)
    coeffs[n] = 1
    out = Poly(coeffs, v.field)
    return out - v


def associate_vector(modulus: Poly) -> Poly:
    """v(x) = x^n - modulus for a monic modulus of degree n."""
    if not modulus.is_monic():
        raise ValueError("modulus must be monic")
    n = modulus.degree
    lead = Poly.monomial(n, modulus.field)
    return lead - modulus


# ---------------------------------------------------------------------------
# string I/O

def poly_parse(s: str, field: FieldSpec) -> Poly:
    """Parse a coefficient string, ascending powers, leading at the right.

    Single-character symbols for q <= 18, comma-separated decimal indices
    otherwise (also accepted for small fields).
    """
    s = s.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if not s:
        raise SymbolError("empty polynomial string")
    if "," in s:
        try:
            vals = [int(tok) for tok in s.split(",")]
        except ValueError as exc:
            raise SymbolError(f"bad decimal coefficient list {s!r}") from exc
        if any(v < 0 or v >= field.q for v in vals):
            raise SymbolError(f"coefficient out of range for {field!r} in {s!r}")
        return Poly(vals, field)
    if field.q > 18:
        raise SymbolError(
            f"{field!r} requires comma-separated decimal coefficients"
        )
    return Poly([symbol_decode(c, field).index for c in s], field)


def poly_format(p: Poly) -> str:
    """Canonical coefficient string (inverse of poly_parse)."""
    if p.is_zero():
        return "0"
    if p.field.q <= 18:
        return "".join(symbol_encode(int(c), p.field) for c in p.coeffs)
    return ",".join(str(int(c)) for c in p.coeffs)


def poly_parse_ambiguous(s: str, field: FieldSpec, limit: int = 64) -> list[Poly]:
    """All readings of a digit string where "10" may denote the element ten.

    Some published tables over GF(11) print ten as the two characters "10";
    this returns every tokenization (capped at `limit`), single-symbol
    reading first.
    """
    out: list[Poly] = []
    seen: set[tuple[int, ...]] = set()

    def walk(pos: int, acc: list[int]):
        if len(out) >= limit:
            return
        if pos == len(s):
            key = tuple(acc)
            if key not in seen:
                seen.add(key)
                out.append(Poly(acc, field))
            return
        c = s[pos]
        v = "0123456789".find(c)
        if v >= 0 and v < field.q:
            walk(pos + 1, acc + [v])
        if (
            field.q > 10
            and c == "1"
            and pos + 1 < len(s)
            and s[pos + 1] == "0"
        ):
            walk(pos + 2, acc + [10])

    if any(ch not in "0123456789" for ch in s):
        return [poly_parse(s, field)]
    walk(0, [])
    return out


_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def poly_pretty(p: Poly) -> str:
    """Human-readable form like 'x^11 + 12x + 10'."""
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coefficient(i)
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            coef = "" if c == 1 else str(c)
            xpow = "x" if i == 1 else f"x^{i}"
            terms.append(f"{coef}{xpow}")
    return " + ".join(terms)


def poly_from_expr(expr: str, field: FieldSpec) -> Poly:
    """Parse symbolic notation like "x^11-x-3" or "2x^3 + x - 5".

    Integer coefficients are reduced mod p for prime fields; for extension
    fields they must already be valid element indices.
    """
    s = expr.replace(" ", "").replace("**", "^").replace("*", "")
    if not s:
        raise SymbolError("empty polynomial expression")
    # split into signed terms
    terms: list[tuple[int, str]] = []
    sign = 1
    cur = ""
    for ch in s:
        if ch in "+-" and cur:
            terms.append((sign, cur))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif ch in "+-" and not cur:
            sign = sign if ch == "+" else -sign
        else:
            cur += ch
    if not cur:
        raise SymbolError(f"dangling sign in {expr!r}")
    terms.append((sign, cur))

    def elem(vtxt: str) -> int:
        v = int(vtxt)
        if field.m == 1:
            return v % field.p
        if not 0 <= v < field.q:
            raise SymbolError(
                f"coefficient {v} is not an element index of {field!r}"
            )
        return v

    result = Poly.zero(field)
    for sign, body in terms:
        if "x" in body:
            coef_txt, _, pow_txt = body.partition("x")
            c = elem(coef_txt) if coef_txt else 1
            if pow_txt.startswith("^"):
                k = int(pow_txt[1:])
            elif pow_txt == "":
                k = 1
            else:
                raise SymbolError(f"cannot parse term {body!r} in {expr!r}")
        else:
            c = elem(body)
            k = 0
        if sign < 0:
            c = field.neg(c)
        if c:
            result = result + Poly.monomial(k, field, c)
    return result
