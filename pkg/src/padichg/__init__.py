"""p-adic hypergeometric functions over truncated arithmetic."""

from .padic import (
    CNotOneModP,
    DenominatorDivisibleByP,
    DworkChain,
    NotDivisible,
    Padic,
    PadicError,
    PrecisionExhausted,
    binomial,
    braced_product,
    braced_table,
    c_power,
    c_power_frac,
    dwork_chain,
    embed_rational,
    iwasawa_log,
    padic_binomial,
    parse_rational,
    pochhammer,
    vp,
)
from .series import (
    LaurentPoly,
    NonUnitConstantTerm,
    NonzeroConstantTerm,
    TruncSeries,
    frobenius_substitute,
    laurent_reverse,
    log_integral,
)
from .hyper import (
    SIGMA,
    SIGMA_HAT,
    CoeffTable,
    FrobeniusSpec,
    HGParams,
    NoPeriod,
    b0_constant,
    b_coefficients,
    bhat_coefficients,
    compute_h,
    dwork_truncation_pair,
    hat_series,
    hg_coefficients,
    hg_series,
    log_type_series,
    twist_pair,
)
from .interp import InterpPoint, beta_at, ratio_identity_check, witness_for
from .verify import (
    CheckReport,
    NoUnitCoefficient,
    PreconditionViolated,
    check_beta_pairing,
    check_braced_congruence,
    check_congruence_relation,
    check_dwork_transformation,
    check_integrality,
    check_main_congruence,
    check_ratio_interpolation,
    check_section_congruence,
    main_congruence_laurent,
    sweep_beta_pairing,
    sweep_braced,
    sweep_ratio,
    sweep_section,
)

__version__ = "0.1.0"
