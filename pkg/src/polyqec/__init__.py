"""CSS quantum codes from polycyclic codes over small fields.

Exact GF(q) arithmetic (q a prime power <= 29), polynomial factorization and
divisor enumeration, classical linear-code distance machinery, the CSS
construction with verification of published generator-polynomial rows,
seeded code searches, and a best-known-parameters catalog.
"""

from .galois import (
    FieldElement,
    FieldMismatchError,
    FieldSpec,
    SUPPORTED_ORDERS,
    SymbolError,
    UnsupportedFieldError,
    field_of_order,
    make_field,
    symbol_decode,
    symbol_encode,
)
from .polyring import (
    Factorization,
    Poly,
    ZeroPolynomialError,
    enumerate_divisors,
    is_irreducible,
    make_multinomial,
    make_trinomial,
    poly_divmod,
    poly_factor,
    poly_format,
    poly_from_expr,
    poly_gcd,
    poly_parse,
    poly_parse_ambiguous,
)
from .lincode import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    DistanceResult,
    LinearCode,
    WeightEnumerator,
    code_from_rows,
    contains,
    direct_sum_classical,
    dual,
    full_weight_enumerator,
    macwilliams,
    min_distance,
    relative_min_weight,
    weight_enumerator,
    zero_code,
)
from .polycyclic import (
    AmbientRing,
    NotADivisorError,
    ideal_code,
    is_shift_closed,
    polycyclic_shift,
    span_code,
)
from .css import (
    Convention,
    CssConstructionError,
    InvalidParamsError,
    QuantumParams,
    RowVerification,
    combine_theorem2,
    css_construct,
    direct_sum_quantum,
    is_mds,
    propagate_extend,
    propagate_puncture,
    propagate_subcode,
    singleton_defect,
    verify_table_row,
)
from .catalog import (
    Catalog,
    CatalogRecord,
    Verdict,
    load_seed_records,
    seed_catalog,
)
from .search import (
    SearchConfig,
    SearchHit,
    derive_closure,
    hit_to_json,
    hits_to_table,
    search_multinomial,
    search_target,
    search_trinomial_pairs,
)

__version__ = "0.1.0"
