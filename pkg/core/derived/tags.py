# region 派生协议消息类型（0x30–0x4F）
from ..session.message import register_tag

FAMILY = "derived"

COIN_QRP_PUZZLE = 0x30
COIN_BET = 0x31
COIN_QRP_REVEAL = 0x32
COIN_GENERAL_COMMIT = 0x33
COIN_GENERAL_REVEAL = 0x34
COIN_OT_CLAIM = 0x35

CONTRACT_PUBLIC = 0x38
CONTRACT_STATUS = 0x39

TSCP_SETUP = 0x40
TSCP_SUM = 0x41
MILLIONAIRES_SETUP = 0x42

DESCRIPTIONS = {
    COIN_QRP_PUZZLE: ("coin-qrp-puzzle", "A→B Blum 模数 N 与 z ≡ y²"),
    COIN_BET: ("coin-bet", "B→A 猜测比特（0 偶 / 1 奇）"),
    COIN_QRP_REVEAL: ("coin-qrp-reveal", "A→B 公开 x, y, p, q"),
    COIN_GENERAL_COMMIT: ("coin-general-commit", "A→B 素数域 (p, g) 与 y = g^x"),
    COIN_GENERAL_REVEAL: ("coin-general-reveal", "A→B 公开 x"),
    COIN_OT_CLAIM: ("coin-ot-claim", "B→A Rabin 传输中自己所取的 x"),
    CONTRACT_PUBLIC: ("contract-public", "双方交换签约秘密的公开部分（N 或图对）"),
    CONTRACT_STATUS: ("contract-status", "每轮结束时声明是否已得到对方秘密"),
    TSCP_SETUP: ("tscp-setup", "双方交换 (n, k)"),
    TSCP_SUM: ("tscp-sum", "双方交换 k 位累加和"),
    MILLIONAIRES_SETUP: ("millionaires-setup", "双方交换 (位宽, k)"),
}

for _tag, (_name, _description) in DESCRIPTIONS.items():
    register_tag(_tag, _name, FAMILY, _description)


def describe(*tags: int) -> dict[int, str]:
    return {tag: DESCRIPTIONS[tag][1] for tag in tags}


# endregion
