# region 不经意传输消息类型（0x10–0x2F）
from ..session.message import register_tag

FAMILY = "oblivious"

RABIN_MODULUS = 0x10
RABIN_SQUARE = 0x11
RABIN_ROOT = 0x12

GRAPH_OT_PAIR = 0x14
GRAPH_OT_COPY = 0x15
GRAPH_OT_ISOMORPHISM = 0x16

DLP_OT_BETAS = 0x18
DLP_OT_TRANSFERS = 0x19

SALE_GRAPHS = 0x1C
SALE_COPIES = 0x1D
SALE_SOLUTION = 0x1E

COMPOSED_GRAPHS = 0x20
COMPOSED_INTERMEDIATE = 0x21

DESCRIPTIONS = {
    RABIN_MODULUS: ("rabin-modulus", "A→B 合数模 N"),
    RABIN_SQUARE: ("rabin-square", "B→A x² mod N"),
    RABIN_ROOT: ("rabin-root", "A→B x² 的四个平方根之一"),
    GRAPH_OT_PAIR: ("graph-ot-pair", "A→B 公开图对 G1, G2"),
    GRAPH_OT_COPY: ("graph-ot-copy", "B→A 其中一图的同构副本 H"),
    GRAPH_OT_ISOMORPHISM: ("graph-ot-isomorphism", "A→B 随机 j 与同构 H→G_j"),
    DLP_OT_BETAS: ("dlp-ot-betas", "B→A β0, β1，满足 β0·β1 ≡ c"),
    DLP_OT_TRANSFERS: ("dlp-ot-transfers", "A→B (α_j, s_j ⊕ γ_j) j=0,1"),
    SALE_GRAPHS: ("sale-graphs", "A→B 公开的 n 个带解图"),
    SALE_COPIES: ("sale-copies", "B→A 打乱顺序的同构副本与指针"),
    SALE_SOLUTION: ("sale-solution", "A→B 指针所指副本中的解"),
    COMPOSED_GRAPHS: ("composed-graphs", "B→A 同构图对 G1, G2"),
    COMPOSED_INTERMEDIATE: ("composed-intermediate", "A→B 与两图都同构的中间图 H"),
}

for _tag, (_name, _description) in DESCRIPTIONS.items():
    register_tag(_tag, _name, FAMILY, _description)


def describe(*tags: int) -> dict[int, str]:
    return {tag: DESCRIPTIONS[tag][1] for tag in tags}


# endregion
