# region 不经意传输导出
from . import tags
from .cheats import (
    dlp_structure_cheat,
    graph_ot_bad_isomorphism,
    rabin_nonroot,
    sale_invalid_solution,
)
from .composed import composed_receiver, composed_sender, make_ot_from_two_1of2
from .dlp import (
    DEFAULT_SECRET_BITS,
    TwoSecrets,
    check_mask_width,
    dlp_ot_receiver,
    dlp_ot_sender,
    field_bits_for,
    make_dlp_1of2_ot,
)
from .graph_1of2 import (
    gen_sale_instances,
    make_graph_1of2_ot,
    make_secret_sale,
    map_solution,
    pull_back,
    sale_receiver,
    sale_sender,
    serve,
)
from .graph_ot import (
    OtSecretIsomorphism,
    graph_ot_challenge,
    graph_ot_receiver,
    graph_ot_respond,
    graph_ot_sender,
    make_graph_ot,
    read_graph_pair,
    recover_secret,
)
from .rabin import (
    OtSecretFactorization,
    make_rabin_ot,
    rabin_challenge,
    rabin_receiver,
    rabin_receiver_outcome,
    rabin_respond,
    rabin_sender,
    read_rabin_modulus,
)

__all__ = [
    "DEFAULT_SECRET_BITS",
    "OtSecretFactorization",
    "OtSecretIsomorphism",
    "TwoSecrets",
    "check_mask_width",
    "composed_receiver",
    "composed_sender",
    "dlp_ot_receiver",
    "dlp_ot_sender",
    "dlp_structure_cheat",
    "field_bits_for",
    "gen_sale_instances",
    "graph_ot_bad_isomorphism",
    "graph_ot_challenge",
    "graph_ot_receiver",
    "graph_ot_respond",
    "graph_ot_sender",
    "make_dlp_1of2_ot",
    "make_graph_1of2_ot",
    "make_graph_ot",
    "make_ot_from_two_1of2",
    "make_rabin_ot",
    "make_secret_sale",
    "map_solution",
    "pull_back",
    "rabin_nonroot",
    "rabin_challenge",
    "rabin_receiver",
    "rabin_receiver_outcome",
    "rabin_respond",
    "rabin_sender",
    "read_graph_pair",
    "read_rabin_modulus",
    "recover_secret",
    "sale_invalid_solution",
    "sale_receiver",
    "sale_sender",
    "serve",
    "tags",
]
# endregion
