# region 零知识证明消息类型（0x60–0x6F）
from ..session.message import register_tag

FAMILY = "zkproof"

ZK_SETUP = 0x60
ZK_COMMITMENT = 0x61
ZK_CHALLENGE = 0x62
ZK_RESPONSE = 0x63
ZK_VERDICT = 0x64
ZK_QNR_QUERY = 0x65
ZK_QNR_ANSWER = 0x66

DESCRIPTIONS = {
    ZK_SETUP: ("zk-setup", "证明方→验证方 公开实例与轮数 m"),
    ZK_COMMITMENT: ("zk-commitment", "证明方→验证方 轮号 + 本轮承诺（a 或 G'）"),
    ZK_CHALLENGE: ("zk-challenge", "验证方→证明方 轮号 + 挑战比特"),
    ZK_RESPONSE: ("zk-response", "证明方→验证方 轮号 + 应答"),
    ZK_VERDICT: ("zk-verdict", "验证方→证明方 接受/拒绝与失败轮号"),
    ZK_QNR_QUERY: ("zk-qnr-query", "验证方→证明方 轮号 + w = r²·y^b"),
    ZK_QNR_ANSWER: ("zk-qnr-answer", "证明方→验证方 轮号 + 对 b 的判断"),
}

for _tag, (_name, _description) in DESCRIPTIONS.items():
    register_tag(_tag, _name, FAMILY, _description)


def describe(*tags: int) -> dict[int, str]:
    return {tag: DESCRIPTIONS[tag][1] for tag in tags}


# endregion
