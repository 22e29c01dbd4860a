# region 数论模块导出
from .arith import (
    Residue,
    as_int,
    crt_pair,
    jacobi,
    legendre,
    mod_inverse,
    mod_pow,
    sqrt_mod_prime,
)
from .blum import (
    MIN_MODULUS_BITS,
    BlumModulus,
    factor_from_roots,
    four_square_roots,
    gen_blum,
    gen_modulus,
    is_qr,
    sample_nonresidue_jacobi1,
    sample_unit,
)
from .errors import NotCoprimeError, NotResidueError, TrivialRootsError
from .field import (
    MIN_FIELD_BITS,
    DlpPublicParams,
    FieldContext,
    gen_field,
    group_order_factors,
    hash_to_group,
    is_generator,
    public_dlp_params,
)
from .primes import DETERMINISTIC_BOUND, is_probable_prime, random_prime

__all__ = [
    "DETERMINISTIC_BOUND",
    "MIN_FIELD_BITS",
    "MIN_MODULUS_BITS",
    "BlumModulus",
    "DlpPublicParams",
    "FieldContext",
    "NotCoprimeError",
    "NotResidueError",
    "Residue",
    "TrivialRootsError",
    "as_int",
    "crt_pair",
    "factor_from_roots",
    "four_square_roots",
    "gen_blum",
    "gen_field",
    "gen_modulus",
    "group_order_factors",
    "hash_to_group",
    "is_generator",
    "is_probable_prime",
    "is_qr",
    "jacobi",
    "legendre",
    "mod_inverse",
    "mod_pow",
    "random_prime",
    "sample_nonresidue_jacobi1",
    "sample_unit",
    "sqrt_mod_prime",
]
# endregion
