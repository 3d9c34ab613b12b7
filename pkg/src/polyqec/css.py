"""CSS quantum codes from nested classical codes, parameter-propagation
rules, Singleton/MDS classification, and verification of published
generator-polynomial rows.

A CSS pair is (C1, C2perp) with C2perp a proper subcode of C1.  The quantum
code has n = length, k = dim C1 - dim C2perp, and exact distance

    d = min( relwt(C1 \\ C2perp), relwt(C2 \\ C1perp) ),  C2 = dual(C2perp).

When the weight enumerations exceed the budget, the construction falls back
to the classical lower bound min(d(C1), d(C2)) with d_exact = False.

Published rows pair a modulus t with two generator strings.  Two reading
conventions occur in practice and both are checked:

* ``c2perp`` -- the second polynomial generates C2perp itself (the
  random-second-factor tables; C2perp = span of the shifts of the second).
* ``c2`` -- the second polynomial names C2 through its complementary
  divisor: C2perp = <t / second>, so dim C2 = n - deg(second) and
  k = dim C1 + dim C2 - n.  (Under the literal "second generates C2perp"
  reading these rows would give k = 0.)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .galois import FieldSpec
from .lincode import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    LinearCode,
    contains,
    dual,
    min_distance,
    relative_min_weight,
)
from .polycyclic import AmbientRing, ideal_code, span_code
from .polyring import Poly, poly_divmod, poly_format


class CssConstructionError(ValueError):
    """The classical pair does not satisfy the CSS preconditions."""


class InvalidParamsError(ValueError):
    """Parameter set violates the quantum Singleton bound or basic ranges."""


@dataclass(frozen=True)
class QuantumParams:
    """An [[n, k, d]] parameter record with provenance.

    `label` is the alphabet tag as printed in the source tables (the q^2
    convention); all classical computation happens over GF(q_base).
    """

    q_base: int
    n: int
    k: int
    d: int
    d_exact: bool = True
    label: str = ""
    construction: dict | None = None
    reference: str | None = None

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise InvalidParamsError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        if self.d < 1:
            raise InvalidParamsError(f"distance must be positive, got {self.d}")
        if self.k > self.n - 2 * (self.d - 1):
            raise InvalidParamsError(
                f"[[{self.n},{self.k},{self.d}]] violates the quantum "
                f"Singleton bound k <= n - 2(d-1)"
            )
        if not self.label:
            object.__setattr__(self, "label", f"{self.q_base}^2")

    def triple(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.d)

    def __str__(self) -> str:
        tag = "" if self.d_exact else ">="
        return f"[[{self.n},{self.k},{tag}{self.d}]]_{self.label}"


def singleton_defect(p: QuantumParams) -> int:
    """n - k - 2(d - 1); zero exactly for MDS codes."""
    defect = p.n - p.k - 2 * (p.d - 1)
    if defect < 0:
        raise InvalidParamsError(f"{p} violates the quantum Singleton bound")
    return defect


def is_mds(p: QuantumParams) -> bool:
    return singleton_defect(p) == 0


# ---------------------------------------------------------------------------
# the CSS construction

def css_construct(
    c1: LinearCode,
    c2perp: LinearCode,
    budget: int = DEFAULT_BUDGET,
    construction: dict | None = None,
    reference: str | None = None,
) -> QuantumParams:
    """Quantum parameters from a nested pair C2perp < C1."""
    if c1.field != c2perp.field or c1.n != c2perp.n:
        raise CssConstructionError("codes must share field and length")
    if not contains(c1, c2perp):
        raise CssConstructionError("C2perp is not contained in C1")
    k = c1.k - c2perp.k
    if k <= 0:
        raise CssConstructionError(
            "dim C1 must exceed dim C2perp (degenerate k = 0 pair)"
        )
    c2 = dual(c2perp)
    c1perp = dual(c1)
    try:
        side_a = relative_min_weight(c1, c2perp, budget)
        side_b = relative_min_weight(c2, c1perp, budget)
        d, exact = min(side_a.d, side_b.d), True
    except BudgetExceededError:
        bound_a = min_distance(c1, budget)
        bound_b = min_distance(c2, budget)
        d, exact = min(bound_a.d, bound_b.d), False
    return QuantumParams(
        q_base=c1.field.q,
        n=c1.n,
        k=k,
        d=d,
        d_exact=exact,
        construction=construction,
        reference=reference,
    )


def combine_theorem2(p1: QuantumParams, p2: QuantumParams) -> QuantumParams:
    """[[n1, k1, d1]] + [[n2, k2, d2]] -> [[n1 + n2 - k2, k1, d]] with
    d = min(d1, d1 + d2 - k2), a lower bound."""
    if p1.q_base != p2.q_base:
        raise InvalidParamsError("combination requires a common base field")
    if p2.k > p1.n:
        raise InvalidParamsError(f"need k2 <= n1, got k2={p2.k}, n1={p1.n}")
    d = min(p1.d, p1.d + p2.d - p2.k)
    if d < 1:
        raise InvalidParamsError(
            "combination gives no positive distance guarantee "
            f"(min({p1.d}, {p1.d + p2.d - p2.k}) < 1)"
        )
    return QuantumParams(
        q_base=p1.q_base,
        n=p1.n + p2.n - p2.k,
        k=p1.k,
        d=d,
        d_exact=False,
        construction={"rule": "combine", "from": [p1.triple(), p2.triple()]},
    )


# ---------------------------------------------------------------------------
# parameter-propagation rules (existence-level; outputs are lower bounds)

def propagate_extend(p: QuantumParams, steps: int = 1) -> QuantumParams:
    """Lengthen: [[n + m, k, d]]."""
    if steps < 1:
        raise ValueError("extension needs at least one step")
    return QuantumParams(
        q_base=p.q_base, n=p.n + steps, k=p.k, d=p.d, d_exact=False,
        construction={"rule": "E", "steps": steps, "from": [p.triple()]},
    )


def propagate_puncture(p: QuantumParams) -> QuantumParams:
    """Puncture one coordinate: [[n - 1, k, d - 1]]."""
    if p.n < 2 or p.d < 2:
        raise ValueError(f"cannot puncture {p}: need n >= 2 and d >= 2")
    return QuantumParams(
        q_base=p.q_base, n=p.n - 1, k=p.k, d=p.d - 1, d_exact=False,
        construction={"rule": "P", "from": [p.triple()]},
    )


def propagate_subcode(p: QuantumParams) -> QuantumParams:
    """Drop one logical dimension: [[n, k - 1, d]]."""
    if p.k < 1:
        raise ValueError(f"cannot take a subcode of {p}: need k >= 1")
    return QuantumParams(
        q_base=p.q_base, n=p.n, k=p.k - 1, d=p.d, d_exact=False,
        construction={"rule": "subcode", "from": [p.triple()]},
    )


def direct_sum_quantum(p1: QuantumParams, p2: QuantumParams) -> QuantumParams:
    """[[n1 + n2, k1 + k2, min(d1, d2)]]."""
    if p1.q_base != p2.q_base:
        raise InvalidParamsError("direct sum requires a common base field")
    return QuantumParams(
        q_base=p1.q_base, n=p1.n + p2.n, k=p1.k + p2.k, d=min(p1.d, p2.d),
        d_exact=False,
        construction={"rule": "DS", "from": [p1.triple(), p2.triple()]},
    )


# ---------------------------------------------------------------------------
# verification of published rows

class Convention(str, enum.Enum):
    """How the second printed polynomial determines C2perp."""

    SECOND_GENERATES_C2 = "c2"
    SECOND_GENERATES_C2PERP = "c2perp"


@dataclass
class ConventionReport:
    """Outcome of reconstructing one row under one reading convention."""

    convention: Convention
    applicable: bool = True
    note: str = ""
    g1_divides_modulus: bool | None = None
    second_divides_modulus: bool | None = None
    containment: bool | None = None
    dim_c1: int | None = None
    dim_c2perp: int | None = None
    k: int | None = None
    d: int | None = None
    d_exact: bool | None = None
    k_matches: bool | None = None
    d_matches: bool | None = None

    def exact_match(self, claimed_k: int | None, claimed_d: int | None) -> bool:
        if not self.applicable or not self.containment:
            return False
        ok = True
        if claimed_k is not None:
            ok = ok and self.k == claimed_k
        if claimed_d is not None:
            ok = ok and bool(self.d_exact) and self.d == claimed_d
        return ok


@dataclass
class RowVerification:
    """Per-field match report for one published table row."""

    q: int
    n: int
    modulus: str
    g1: str
    second: str
    claimed_n: int | None
    claimed_k: int | None
    claimed_d: int | None
    length_matches: bool
    reports: list[ConventionReport] = dc_field(default_factory=list)
    note: str = ""

    @property
    def verified(self) -> bool:
        """Some convention reproduces every claimed field exactly."""
        return self.length_matches and any(
            r.exact_match(self.claimed_k, self.claimed_d) for r in self.reports
        )

    @property
    def contradicted(self) -> bool:
        """No convention is even consistent with the claim (a mismatch, as
        opposed to merely unverified within budget)."""
        if not self.length_matches:
            return True
        for r in self.reports:
            if not r.applicable or not r.containment:
                continue
            if self.claimed_k is not None and r.k != self.claimed_k:
                continue
            if (
                self.claimed_d is not None
                and r.d is not None
                and ((r.d_exact and r.d != self.claimed_d) or r.d > self.claimed_d)
            ):
                continue
            return False
        return True

    def best_report(self) -> ConventionReport | None:
        for r in self.reports:
            if r.exact_match(self.claimed_k, self.claimed_d):
                return r
        for r in self.reports:
            if r.applicable and r.containment and r.k == self.claimed_k:
                return r
        return None

    def to_lines(self) -> list[str]:
        def show(v):
            return "?" if v is None else str(v)

        claim = f"[[{show(self.claimed_n)},{show(self.claimed_k)},{show(self.claimed_d)}]]_{self.q}^2"
        out = [f"row {claim}  t=[{self.modulus}]  g1=[{self.g1}]  second=[{self.second}]"]
        if self.note:
            out.append(f"  note: {self.note}")
        if not self.length_matches:
            out.append("  length mismatch: modulus degree differs from claimed n")
        for r in self.reports:
            if not r.applicable:
                out.append(f"  convention {r.convention.value}: inapplicable ({r.note})")
                continue
            bits = [
                f"  convention {r.convention.value}:",
                f"k={r.k}",
                f"containment={'yes' if r.containment else 'NO'}",
            ]
            if r.d is not None:
                bits.append(f"d{'=' if r.d_exact else '>='}{r.d}")
            if r.k_matches is not None:
                bits.append(f"k_match={'yes' if r.k_matches else 'NO'}")
            if r.d_matches is not None:
                bits.append(
                    f"d_match={'yes' if r.d_matches else ('NO' if r.d_exact else 'unverified')}"
                )
            out.append(" ".join(bits))
        out.append(f"  verdict: {'verified' if self.verified else ('MISMATCH' if self.contradicted else 'unverified within budget')}")
        return out

    def to_text(self) -> str:
        return "\n".join(self.to_lines())


def _build_c2perp(
    modulus: Poly, second: Poly, convention: Convention, ring: AmbientRing
) -> tuple[LinearCode | None, ConventionReport]:
    rep = ConventionReport(convention=convention)
    divides = poly_divmod(modulus, second)[1].is_zero() if second.is_monic() else False
    rep.second_divides_modulus = divides
    if convention is Convention.SECOND_GENERATES_C2:
        if not divides:
            rep.applicable = False
            rep.note = "second polynomial does not divide the modulus"
            return None, rep
        comp = modulus // second
        if comp.degree == 0:
            rep.applicable = False
            rep.note = "complementary divisor is trivial"
            return None, rep
        return ideal_code(comp, ring), rep
    if second.degree >= ring.n:
        rep.applicable = False
        rep.note = "second polynomial degree reaches the code length"
        return None, rep
    return span_code(second, ring), rep


def verify_table_row(
    field: FieldSpec,
    modulus: Poly,
    g1: Poly,
    second: Poly,
    claimed: tuple[int | None, int | None, int | None],
    convention: Convention | None = None,
    budget: int = DEFAULT_BUDGET,
) -> RowVerification:
    """Reconstruct a published row and report per-field match/mismatch.

    `claimed` is the printed (n, k, d); any entry may be None to skip its
    check.  With `convention=None` both reading conventions are tried.
    Mismatches are report content, not exceptions.
    """
    claimed_n, claimed_k, claimed_d = claimed
    if not modulus.is_monic():
        modulus = modulus.monic()  # unit scaling keeps the ideal lattice
    if not g1.is_zero() and not g1.is_monic():
        g1 = g1.monic()
    if not second.is_zero() and not second.is_monic():
        second = second.monic()
    result = RowVerification(
        q=field.q,
        n=modulus.degree,
        modulus=poly_format(modulus),
        g1=poly_format(g1),
        second=poly_format(second),
        claimed_n=claimed_n,
        claimed_k=claimed_k,
        claimed_d=claimed_d,
        length_matches=(claimed_n is None or modulus.degree == claimed_n),
    )
    if not result.length_matches:
        result.note = (
            f"modulus has degree {modulus.degree} but the row claims length "
            f"{claimed_n}; row is not verifiable as printed"
        )
        return result
    if g1.degree < 1 or g1.degree >= modulus.degree:
        result.note = f"g1 degree {g1.degree} leaves no code to build"
        result.length_matches = False
        return result

    ring = AmbientRing.from_modulus(modulus)
    conventions = (
        [convention]
        if convention is not None
        else [Convention.SECOND_GENERATES_C2, Convention.SECOND_GENERATES_C2PERP]
    )
    g1_divides = poly_divmod(modulus, g1)[1].is_zero()
    c1 = ideal_code(g1, ring) if g1_divides else span_code(g1, ring)

    for conv in conventions:
        c2perp, rep = _build_c2perp(modulus, second, conv, ring)
        rep.g1_divides_modulus = g1_divides
        if c2perp is None:
            result.reports.append(rep)
            continue
        rep.dim_c1 = c1.k
        rep.dim_c2perp = c2perp.k
        rep.k = c1.k - c2perp.k
        rep.containment = contains(c1, c2perp)
        if claimed_k is not None:
            rep.k_matches = rep.k == claimed_k
        if rep.containment and rep.k > 0:
            try:
                params = css_construct(c1, c2perp, budget)
                rep.d = params.d
                rep.d_exact = params.d_exact
            except BudgetExceededError:  # pragma: no cover - css falls back itself
                rep.d = None
            if claimed_d is not None and rep.d is not None:
                if rep.d_exact:
                    rep.d_matches = rep.d == claimed_d
                elif rep.d > claimed_d:
                    rep.d_matches = False  # even the lower bound beats the claim
        result.reports.append(rep)
    return result


def params_from_report(
    rv: RowVerification, reference: str | None = None
) -> QuantumParams | None:
    """QuantumParams from the best matching convention of a verified row."""
    rep = rv.best_report()
    if rep is None or not rep.containment or rep.k is None or rep.k <= 0:
        return None
    if rep.d is None:
        return None
    return QuantumParams(
        q_base=rv.q,
        n=rv.n,
        k=rep.k,
        d=rep.d,
        d_exact=bool(rep.d_exact),
        construction={
            "modulus": rv.modulus,
            "g1": rv.g1,
            "second": rv.second,
            "convention": rep.convention.value,
        },
        reference=reference,
    )
