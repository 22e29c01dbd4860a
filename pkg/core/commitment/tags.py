# region 比特承诺消息类型（0x50–0x5F）
from ..session.message import register_tag

FAMILY = "commitment"

COMMIT_PARAMS = 0x50
COMMIT_WITNESS = 0x51
COMMIT_ACK = 0x52
COMMIT_OPENING = 0x53

DESCRIPTIONS = {
    COMMIT_PARAMS: ("commit-params", "A→B 公开参数（(N, y) / (p, g) / (G, H)）"),
    COMMIT_WITNESS: ("commit-witness", "A→B 承诺值（c / g^x / 同构副本）"),
    COMMIT_ACK: ("commit-ack", "B→A 已收到承诺"),
    COMMIT_OPENING: ("commit-opening", "A→B 打开：承诺的值与随机性"),
}

for _tag, (_name, _description) in DESCRIPTIONS.items():
    register_tag(_tag, _name, FAMILY, _description)


def describe(*tags: int) -> dict[int, str]:
    return {tag: DESCRIPTIONS[tag][1] for tag in tags}


# endregion
