from .mp_numeric import (
    BigComplex,
    BigReal,
    PrecisionContext,
    bessel,
    constant,
    elem,
    from_decimal_string,
    relative_difference,
    resolve_context,
    to_decimal_string,
)
