"""Polycyclic ambient rings GF(q)[x]/<x^n - v(x)> and their codes.

Two constructions feed the CSS searches:

* ``ideal_code(g, ring)`` -- the ideal generated by a divisor g of the
  modulus; shift-closed, dimension n - deg g.
* ``span_code(h, ring)`` -- the row space of h, x*h, ..., x^(n-deg h-1)*h
  without reduction mod the modulus.  Not shift-closed in general; used for
  the random-second-factor construction where h = g*f need not divide the
  modulus.  When h does divide, span and ideal coincide.

With v = (1,0,...,0) the ideal codes are the classical cyclic codes; with
v = (-1,0,...,0) the negacyclic codes.
"""

from __future__ import annotations

import numpy as np

from .galois import FieldSpec
from .lincode import LinearCode, code_from_rows, contains
from .polyring import Poly, associate_vector, make_multinomial, poly_divmod


class NotADivisorError(ValueError):
    """Generator does not divide the ring modulus."""


class AmbientRing:
    """GF(q)[x]/<x^n - v(x)> with deg v < n."""

    __slots__ = ("field", "n", "v", "modulus")

    def __init__(self, field: FieldSpec, n: int, v: Poly):
        if v.degree >= n:
            raise ValueError(f"associate polynomial degree {v.degree} must be < {n}")
        self.field = field
        self.n = n
        self.v = v
        self.modulus = make_multinomial(n, v)

    @classmethod
    def from_modulus(cls, modulus: Poly) -> "AmbientRing":
        """Ring for a monic modulus f = x^n - v(x) of degree n."""
        if modulus.is_zero() or not modulus.is_monic():
            raise ValueError("ring modulus must be monic of positive degree")
        return cls(modulus.field, modulus.degree, associate_vector(modulus))

    @classmethod
    def cyclic(cls, field: FieldSpec, n: int) -> "AmbientRing":
        return cls(field, n, Poly.one(field))

    def __repr__(self) -> str:
        return f"{self.field!r}[x]/<x^{self.n} - v>"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AmbientRing)
            and self.field == other.field
            and self.n == other.n
            and self.v == other.v
        )


def _v_vector(v: Poly, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.uint8)
    out[: len(v.coeffs)] = v.coeffs
    return out


def polycyclic_shift(word, v: Poly | np.ndarray) -> np.ndarray:
    """Right polycyclic shift: (0, c_0, ..., c_{n-2}) + c_{n-1} * v."""
    w = np.asarray(word, dtype=np.uint8)
    n = len(w)
    if isinstance(v, Poly):
        field = v.field
        vv = _v_vector(v, n)
    else:
        raise TypeError("v must be a Poly carrying its field")
    if len(vv) != n:
        raise ValueError("vector length does not match code length")
    out = np.zeros(n, dtype=np.uint8)
    out[1:] = w[:-1]
    tail = int(w[-1])
    if tail:
        out = field.add_table[out, field.mul_table[tail][vv]]
    return out


def _shift_rows(h: Poly, n: int) -> np.ndarray:
    """Rows x^j * h for j = 0 .. n - deg h - 1 (coefficient vectors)."""
    count = n - h.degree
    rows = np.zeros((count, n), dtype=np.uint8)
    for j in range(count):
        rows[j, j : j + len(h.coeffs)] = h.coeffs
    return rows


def ideal_code(g: Poly, ring: AmbientRing) -> LinearCode:
    """Polycyclic code <g> for a monic divisor g of the ring modulus."""
    if g.is_zero() or not g.is_monic():
        raise NotADivisorError("ideal generator must be monic and nonzero")
    if not poly_divmod(ring.modulus, g)[1].is_zero():
        raise NotADivisorError(
            f"{g!r} does not divide the modulus of {ring!r}"
        )
    if g.degree == ring.n:
        return code_from_rows(np.zeros((0, ring.n), dtype=np.uint8),
                              ring.field, n=ring.n)
    return code_from_rows(_shift_rows(g, ring.n), ring.field)


def span_code(h: Poly, ring: AmbientRing) -> LinearCode:
    """Row space of the plain shifts of h (no reduction mod the modulus)."""
    if h.is_zero():
        raise ValueError("span generator must be nonzero")
    if h.degree >= ring.n:
        raise ValueError(
            f"span generator degree {h.degree} must be < length {ring.n}"
        )
    return code_from_rows(_shift_rows(h, ring.n), ring.field)


def is_shift_closed(c: LinearCode, v: Poly) -> bool:
    """True iff the polycyclic shift of every generator row stays in c."""
    if c.k == 0:
        return True
    shifted = np.array([polycyclic_shift(row, v) for row in c.matrix])
    return contains(c, code_from_rows(shifted, c.field, n=c.n))
