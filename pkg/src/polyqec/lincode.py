"""Classical linear codes over GF(q): canonical generator matrices, Euclidean
duals, containment tests, and exact minimum distances via exhaustive weight
enumeration and the MacWilliams transform.

Generator matrices are kept in reduced row echelon form, so two codes are
equal iff their matrices are equal.  Weight enumeration traverses all q^k
codewords in vectorised blocks; when q^k is out of budget but q^(n-k) is not,
the dual is enumerated instead and transformed back exactly.
"""

from __future__ import annotations

import math
import random
from typing import Iterable, NamedTuple

import numpy as np

from .galois import FieldMismatchError, FieldSpec

DEFAULT_BUDGET = 10**8

# cap on rows of a precomputed combination block (memory + cache friendliness)
_BLOCK_ELEMS = 1 << 26


class BudgetExceededError(Exception):
    """Enumeration would visit more codewords than the budget allows."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"enumeration needs {required} word-visits, budget is {budget}"
        )
        self.required = required
        self.budget = budget


class DistanceResult(NamedTuple):
    d: int
    exact: bool


class WeightEnumerator:
    """Hamming weight distribution A_0..A_n of an [n, k] code."""

    __slots__ = ("counts",)

    def __init__(self, counts: Iterable[int]):
        counts = tuple(int(c) for c in counts)
        if not counts or counts[0] != 1:
            raise ValueError("weight enumerator must start with A_0 = 1")
        if any(c < 0 for c in counts):
            raise ValueError("weight enumerator has negative counts")
        self.counts = counts

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def total(self) -> int:
        return sum(self.counts)

    def min_positive_weight(self) -> int | None:
        for w in range(1, self.n + 1):
            if self.counts[w]:
                return w
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightEnumerator) and self.counts == other.counts

    def __getitem__(self, w: int) -> int:
        return self.counts[w]

    def __repr__(self) -> str:
        return f"WeightEnumerator({list(self.counts)})"


class LinearCode:
    """An [n, k] linear code with an RREF-canonical generator matrix."""

    __slots__ = ("field", "n", "k", "matrix", "_pivots", "_we", "_dual")

    def __init__(self, matrix: np.ndarray, field: FieldSpec, n: int | None = None):
        matrix = np.asarray(matrix, dtype=np.uint8)
        if matrix.ndim != 2:
            if matrix.size == 0 and n is not None:
                matrix = matrix.reshape(0, n)
            else:
                raise ValueError("generator matrix must be two-dimensional")
        rref, pivots = _rref(matrix, field)
        self.field = field
        self.n = matrix.shape[1]
        self.k = rref.shape[0]
        self.matrix = rref
        self.matrix.setflags(write=False)
        self._pivots = pivots
        self._we: WeightEnumerator | None = None
        self._dual: "LinearCode | None" = None

    def params(self) -> tuple[int, int]:
        return (self.n, self.k)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.n == other.n
            and self.k == other.k
            and bool(np.array_equal(self.matrix, other.matrix))
        )

    def __repr__(self) -> str:
        return f"[{self.n},{self.k}] code over {self.field!r}"


def _rref(mat: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over GF(q); returns (matrix, pivot columns)."""
    work = np.array(mat, dtype=np.uint8)
    rows, cols = work.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(work[r:, c])[0]
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            work[[r, pr]] = work[[pr, r]]
        lead = int(work[r, c])
        if lead != 1:
            work[r] = field.vscale(field.inv(lead), work[r])
        col = work[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            prods = field.mul_table[col[hit][:, None], work[r][None, :]]
            work[hit] = field.sub_table[work[hit], prods]
        pivots.append(c)
        r += 1
    return work[:r].copy(), tuple(pivots)


def code_from_rows(rows, field: FieldSpec, n: int | None = None) -> LinearCode:
    """Build a code from spanning rows; dependent/zero rows are discarded."""
    arr = np.asarray(rows, dtype=np.uint8)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.size == 0:
        if n is None:
            raise ValueError("empty row set needs an explicit length")
        arr = arr.reshape(0, n)
    return LinearCode(arr, field, n=n)


def zero_code(field: FieldSpec, n: int) -> LinearCode:
    return code_from_rows(np.zeros((0, n), dtype=np.uint8), field, n=n)


def full_code(field: FieldSpec, n: int) -> LinearCode:
    return code_from_rows(np.eye(n, dtype=np.uint8), field)


def dual(c: LinearCode) -> LinearCode:
    """Euclidean dual; cached so repeated calls share weight enumerators."""
    if c._dual is not None:
        return c._dual
    field = c.field
    n, k = c.n, c.k
    pivots = list(c._pivots)
    free = [j for j in range(n) if j not in set(pivots)]
    h = np.zeros((n - k, n), dtype=np.uint8)
    for row, j in enumerate(free):
        h[row, j] = 1
        for r, pc in enumerate(pivots):
            h[row, pc] = field.neg(int(c.matrix[r, j]))
    d = LinearCode(h, field, n=n)
    c._dual = d
    d._dual = c
    return d


def contains(outer: LinearCode, inner: LinearCode) -> bool:
    """True iff every generator of `inner` lies in the row space of `outer`."""
    if outer.field != inner.field or outer.n != inner.n:
        raise FieldMismatchError("containment needs same field and length")
    if inner.k == 0:
        return True
    if inner.k > outer.k:
        return False
    field = outer.field
    rows = np.array(inner.matrix, dtype=np.uint8)
    for r, c in enumerate(outer._pivots):
        coefs = rows[:, c].copy()
        hit = np.nonzero(coefs)[0]
        if len(hit):
            prods = field.mul_table[coefs[hit][:, None], outer.matrix[r][None, :]]
            rows[hit] = field.sub_table[rows[hit], prods]
    return not rows.any()


# ---------------------------------------------------------------------------
# exhaustive weight enumeration

def _combination_block(gen: np.ndarray, field: FieldSpec) -> np.ndarray:
    """All linear combinations of the given generator rows, one per row."""
    n = gen.shape[1]
    block = np.zeros((1, n), dtype=np.uint8)
    for row in gen:
        scaled = [block]
        for s in range(1, field.q):
            shifted = field.add_table[block, field.mul_table[s][row][None, :]]
            scaled.append(shifted)
        block = np.concatenate(scaled, axis=0)
    return block


def _exhaustive_counts(c: LinearCode) -> np.ndarray:
    """Weight histogram over all q^k codewords, in vectorised blocks."""
    field, n, k = c.field, c.n, c.k
    q = field.q
    counts = np.zeros(n + 1, dtype=np.int64)
    if k == 0:
        counts[0] = 1
        return counts
    # split generators: block over the first t rows, outer loop over the rest
    t = k
    while t > 0 and q**t * n > _BLOCK_ELEMS:
        t -= 1
    t = max(t, 1)
    block = _combination_block(c.matrix[:t], field)
    rest = c.matrix[t:]
    prime = field.m == 1
    p = field.p
    outer = np.zeros(n, dtype=np.uint8)
    work = np.empty_like(block)
    for combo in _mixed_radix(q, k - t):
        if rest.shape[0]:
            outer[:] = 0
            for s, row in zip(combo, rest):
                if s:
                    outer = field.add_table[outer, field.mul_table[s][row]]
        if prime:
            np.add(block, outer[None, :], out=work)
            work[work >= p] -= p
        else:
            work = field.add_table[block, outer[None, :]]
        weights = np.count_nonzero(work, axis=1)
        counts += np.bincount(weights, minlength=n + 1)
    return counts


def _mixed_radix(q: int, length: int):
    """All tuples in {0..q-1}^length, counting from zero."""
    if length == 0:
        yield ()
        return
    combo = [0] * length
    while True:
        yield tuple(combo)
        i = length - 1
        while i >= 0:
            combo[i] += 1
            if combo[i] < q:
                break
            combo[i] = 0
            i -= 1
        if i < 0:
            return


def weight_enumerator(c: LinearCode, budget: int = DEFAULT_BUDGET) -> WeightEnumerator:
    """Exact weight distribution by exhaustive traversal of all q^k words."""
    if c._we is not None:
        return c._we
    required = c.field.q**c.k
    if required > budget:
        raise BudgetExceededError(required, budget)
    we = WeightEnumerator(_exhaustive_counts(c))
    c._we = we
    return we


def macwilliams(we: WeightEnumerator, q: int, n: int, k: int) -> WeightEnumerator:
    """Exact dual weight enumerator via the MacWilliams identity.

    W_dual(x, y) = q^-k W(x + (q-1)y, x - y); raises if the transform does
    not produce nonnegative integers (corrupted input enumerator).
    """
    if we.n != n:
        raise ValueError(f"enumerator length {we.n} does not match n={n}")
    if we.total() != q**k:
        raise ValueError("enumerator total does not equal q^k")
    # coefficient of y^j in (x + (q-1)y)^(n-w) (x - y)^w, with x-degree n-j
    acc = [0] * (n + 1)
    for w, a_w in enumerate(we.counts):
        if a_w == 0:
            continue
        left = [math.comb(n - w, s) * (q - 1) ** s for s in range(n - w + 1)]
        right = [math.comb(w, s) * (-1) ** s for s in range(w + 1)]
        for i, li in enumerate(left):
            if li:
                for j, rj in enumerate(right):
                    acc[i + j] += a_w * li * rj
    scale = q**k
    out = []
    for v in acc:
        if v < 0 or v % scale:
            raise ValueError("MacWilliams transform produced a non-code spectrum")
        out.append(v // scale)
    return WeightEnumerator(out)


def full_weight_enumerator(
    c: LinearCode, budget: int = DEFAULT_BUDGET
) -> WeightEnumerator:
    """Weight enumerator via the cheaper of direct or dual enumeration."""
    if c._we is not None:
        return c._we
    q = c.field.q
    direct_cost = q**c.k
    dual_cost = q ** (c.n - c.k)
    if direct_cost <= min(dual_cost, budget):
        return weight_enumerator(c, budget)
    if dual_cost <= budget:
        dwe = weight_enumerator(dual(c), budget)
        we = macwilliams(dwe, q, c.n, c.n - c.k)
        c._we = we
        return we
    raise BudgetExceededError(min(direct_cost, dual_cost), budget)


def min_distance(c: LinearCode, budget: int = DEFAULT_BUDGET) -> DistanceResult:
    """Exact minimum distance when q^k or q^(n-k) fits the budget, else a
    (trivial) lower bound flagged exact=False."""
    if c.k == 0:
        raise ValueError("minimum distance of the zero code is undefined")
    try:
        we = full_weight_enumerator(c, budget)
    except BudgetExceededError:
        return DistanceResult(1, False)
    return DistanceResult(we.min_positive_weight(), True)


def relative_min_weight(
    outer: LinearCode, inner: LinearCode, budget: int = DEFAULT_BUDGET
) -> DistanceResult:
    """Minimum weight over outer \\ inner: the smallest w > 0 where the two
    weight distributions differ."""
    if not contains(outer, inner):
        raise ValueError("inner code is not contained in outer code")
    if outer.k <= inner.k:
        raise ValueError("outer code must have strictly larger dimension")
    owe = full_weight_enumerator(outer, budget)
    iwe = full_weight_enumerator(inner, budget)
    for w in range(1, outer.n + 1):
        if owe[w] > iwe[w]:
            return DistanceResult(w, True)
    raise AssertionError("containment with equal spectra but unequal dimension")


def direct_sum_classical(a: LinearCode, b: LinearCode) -> LinearCode:
    """Block-diagonal [n_a + n_b, k_a + k_b] code."""
    if a.field != b.field:
        raise FieldMismatchError("direct sum needs a common field")
    g = np.zeros((a.k + b.k, a.n + b.n), dtype=np.uint8)
    g[: a.k, : a.n] = a.matrix
    g[a.k :, a.n :] = b.matrix
    return LinearCode(g, a.field, n=a.n + b.n)


def sampled_weight_upper_bound(
    c: LinearCode, trials: int = 2000, seed: int = 0
) -> int | None:
    """Upper bound on min distance from random nonzero codeword samples."""
    if c.k == 0:
        return None
    rng = random.Random(seed)
    field = c.field
    best = None
    for _ in range(trials):
        coefs = np.array(
            [rng.randrange(field.q) for _ in range(c.k)], dtype=np.uint8
        )
        if not coefs.any():
            coefs[rng.randrange(c.k)] = 1 + rng.randrange(field.q - 1)
        word = np.zeros(c.n, dtype=np.uint8)
        for s, row in zip(coefs, c.matrix):
            if s:
                word = field.add_table[word, field.mul_table[s][row]]
        w = int(np.count_nonzero(word))
        if w and (best is None or w < best):
            best = w
    return best
