# region 导入
import argparse
import asyncio
import logging
import secrets
import sys
from collections import Counter
from pathlib import Path

import msgspec

from core.catalog import (
    CATALOG,
    RunConfig,
    StatsSummary,
    build_run_config,
    check_trials,
    get_entry,
    prepare_session,
    resolve_protocol_id,
    summarize,
)
from core.common import (
    ParameterError,
    coerce_choice,
    coerce_positive_int,
    get_config_value,
    get_stats_path,
    get_transcript_path,
    load_config_file,
    logger,
)
from core.common.rng import SEED_BITS, derive_seed
from core.session import (
    TRANSPORTS,
    FramingError,
    TranscriptHeader,
    check_correctness,
    make_session_id,
    read_log,
    replay_transcript,
    run_session,
    write_log,
)

# endregion

# region 运行时常量
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFICATION = 3
EXIT_FRAMING = 4
EXIT_DEADLOCK = 5
ABORT_EXIT_CODES = {
    "verification": EXIT_VERIFICATION,
    "framing": EXIT_FRAMING,
    "deadlock": EXIT_DEADLOCK,
}
STRING_K_PROTOCOLS = ("string-verification", "millionaires")
TSCP_K_PROTOCOLS = ("tscp-general", "dlp-1of2-ot")
# endregion


# region TwoPartyHarness 类
class TwoPartyHarness:
    """命令行背后的运行器：持有配置，负责 run / stats / verify / catalog。"""

    def __init__(self, config: dict | None = None):
        self.config = config or {}
        self._refresh_config()

    # region 配置
    def _get_config_value(self, key: str, default):
        return get_config_value(self.config, key, default)

    def _refresh_config(self) -> None:
        # 通用配置
        self.default_bits = coerce_positive_int(
            self._get_config_value("general_settings.default_bits", 32), 32
        )
        self.transport = coerce_choice(
            self._get_config_value("general_settings.transport", "inproc"),
            TRANSPORTS,
            "inproc",
        )
        self.graph_vertices = coerce_positive_int(
            self._get_config_value("general_settings.graph_vertices", 8), 8
        )

        # 比较协议配置
        self.tscp_k = coerce_positive_int(self._get_config_value("tscp_settings.k", 16), 16)
        self.string_k = coerce_positive_int(
            self._get_config_value("tscp_settings.string_k", 32), 32
        )
        self.bit_width = coerce_positive_int(
            self._get_config_value("tscp_settings.bit_width", 8), 8
        )

        # 零知识证明配置
        self.zkp_rounds = coerce_positive_int(
            self._get_config_value("zkp_settings.rounds", 20), 20
        )

        # 统计配置
        self.stats_workers = coerce_positive_int(
            self._get_config_value("stats_settings.workers", 4), 4
        )
        try:
            confidence = float(self._get_config_value("stats_settings.confidence", 0.95))
        except (TypeError, ValueError):
            confidence = 0.95
        self.stats_confidence = confidence if 0 < confidence < 1 else 0.95

        # 输出配置
        transcript_dir = str(
            self._get_config_value("output_settings.transcript_dir", "")
        ).strip()
        self.transcript_dir = Path(transcript_dir).expanduser() if transcript_dir else None

        logger.info(
            "⚙️ 配置: 位数=%d, 传输=%s, 图顶点=%d, k=%d/%d, 位宽=%d, 轮数=%d, 并发=%d, 置信度=%.2f",
            self.default_bits,
            self.transport,
            self.graph_vertices,
            self.tscp_k,
            self.string_k,
            self.bit_width,
            self.zkp_rounds,
            self.stats_workers,
            self.stats_confidence,
        )

    def _default_k(self, protocol_id: str) -> int | None:
        if protocol_id in STRING_K_PROTOCOLS:
            return self.string_k
        if protocol_id in TSCP_K_PROTOCOLS:
            return self.tscp_k
        return None

    def make_run_config(self, args: argparse.Namespace) -> RunConfig:
        """命令行参数覆盖配置文件，其余取默认值。"""
        protocol_id = resolve_protocol_id(args.protocol)
        get_entry(protocol_id)
        seed_a, seed_b = args.seed_a, args.seed_b
        if args.seed_from_entropy:
            seed_a = secrets.randbits(SEED_BITS) if seed_a is None else seed_a
            seed_b = secrets.randbits(SEED_BITS) if seed_b is None else seed_b
            print(f"seed_a={seed_a}")
            print(f"seed_b={seed_b}")
        if seed_a is None or seed_b is None:
            raise ParameterError("必须给出 --seed-a 与 --seed-b（或使用 --seed-from-entropy）")

        values = {
            "protocol": protocol_id,
            "seed_a": seed_a,
            "seed_b": seed_b,
            "bits": args.bits or self.default_bits,
            "n": args.n or self.graph_vertices,
            "k": args.k or self._default_k(protocol_id),
            "m": args.m if args.m is not None else self.zkp_rounds,
            "bit_width": args.bit_width or self.bit_width,
            "transport": args.transport or self.transport,
        }
        optional = {
            "rounds": args.rounds,
            "count": args.count,
            "noise": args.noise,
            "output": args.out,
            "secret_a": args.secret_a,
            "secret_b": args.secret_b,
            "choice": args.choice,
            "contract": args.contract,
        }
        values.update({key: value for key, value in optional.items() if value is not None})
        return build_run_config(values)

    # endregion

    # region run
    def _transcript_target(self, config: RunConfig) -> Path:
        if config.output:
            return Path(config.output).expanduser()
        directory = self.transcript_dir or get_transcript_path()
        return directory / f"{config.protocol}-{config.seed_a}-{config.seed_b}.log"

    def cmd_run(self, config: RunConfig) -> int:
        protocol, input_a, input_b = prepare_session(config)
        result = run_session(
            protocol, input_a, input_b, config.seed_a, config.seed_b, transport=config.transport
        )
        header = TranscriptHeader(
            protocol=protocol.name,
            seed_a=config.seed_a,
            seed_b=config.seed_b,
            records=len(result.transcript),
            session_id=result.session_id.hex(),
            run=msgspec.to_builtins(config),
        )
        path = write_log(self._transcript_target(config), header, result.transcript)
        print(f"transcript={path}")

        if result.abort is not None:
            abort = result.abort
            print(f"abort={abort.kind}")
            print(f"abort_step={abort.step}")
            print(f"abort_party={abort.party}")
            print(f"abort_reason={abort.reason}")
            return ABORT_EXIT_CODES.get(abort.kind, EXIT_VERIFICATION)

        output_a, output_b = result.outputs
        print(f"output_a={output_a!r}")
        print(f"output_b={output_b!r}")
        if protocol.expected is not None:
            check = check_correctness(result, protocol)
            if not check:
                for line in check.diagnostics:
                    logger.warning("⚠️ 输出与函数定义不符: %s", line)
        return EXIT_OK

    # endregion

    # region stats
    def _trial(self, config: RunConfig, index: int) -> dict[str, float] | str:
        trial_config = msgspec.structs.replace(
            config,
            seed_a=derive_seed(config.seed_a, f"trial{index}/A"),
            seed_b=derive_seed(config.seed_b, f"trial{index}/B"),
        )
        protocol, input_a, input_b = prepare_session(trial_config)
        result = run_session(
            protocol,
            input_a,
            input_b,
            trial_config.seed_a,
            trial_config.seed_b,
            transport=trial_config.transport,
        )
        if result.abort is not None:
            return result.abort.kind
        return get_entry(config.protocol).metrics((input_a, input_b), result.outputs)

    async def _collect(self, config: RunConfig, trials: int, workers: int) -> list:
        semaphore = asyncio.Semaphore(workers)

        async def one(index: int):
            async with semaphore:
                return await asyncio.to_thread(self._trial, config, index)

        return await asyncio.gather(*(one(i) for i in range(trials)))

    def run_stats(self, config: RunConfig, trials: int, workers: int | None = None) -> StatsSummary:
        check_trials(trials)
        workers = workers or self.stats_workers
        logger.info("📊 %s: %d 次试验, 并发 %d", config.protocol, trials, workers)
        results = asyncio.run(self._collect(config, trials, workers))
        aborts = Counter(r for r in results if isinstance(r, str))
        samples = [r for r in results if not isinstance(r, str)]
        summary = summarize(config.protocol, trials, samples, aborts, self.stats_confidence)
        logger.info("📊 %s: 完成 %d / %d", config.protocol, summary.completed, trials)
        return summary

    def cmd_stats(
        self,
        config: RunConfig,
        trials: int,
        workers: int | None = None,
        json_path: str | None = None,
    ) -> int:
        summary = self.run_stats(config, trials, workers)
        for line in summary.key_values():
            print(line)
        print()
        print(summary.table())
        if json_path is not None:
            target = (
                Path(json_path).expanduser()
                if json_path
                else get_stats_path() / f"{config.protocol}-{config.seed_a}-{config.seed_b}.json"
            )
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(msgspec.json.encode(summary))
            print(f"summary={target}")
        return EXIT_OK

    # endregion

    # region verify / catalog
    def cmd_verify(self, path: Path) -> int:
        try:
            header, transcript = read_log(path)
        except FramingError as exc:
            print(f"abort=framing\nabort_step={exc.step}\nabort_reason={exc.reason}")
            return EXIT_FRAMING
        except FileNotFoundError:
            raise ParameterError(f"会话记录不存在: {path}") from None

        config = build_run_config(header.run)
        protocol, input_a, input_b = prepare_session(config)
        if protocol.name != header.protocol:
            print(f"abort=framing\nabort_step=header\nabort_reason=协议 {header.protocol} 与参数不符")
            return EXIT_FRAMING
        session_id = make_session_id(header.protocol, header.seed_a, header.seed_b).hex()
        if (header.seed_a, header.seed_b) != (config.seed_a, config.seed_b) or header.session_id != session_id:
            print("abort=framing\nabort_step=header\nabort_reason=会话 id 与种子不符")
            return EXIT_FRAMING
        issues = replay_transcript(
            protocol, input_a, input_b, header.seed_a, header.seed_b, transcript
        )
        if not issues:
            print(f"verified={path}")
            return EXIT_OK
        first = issues[0]
        print(f"abort={first.kind}")
        print(f"abort_step={first.step}")
        print(f"abort_party={first.party}")
        print(f"abort_reason={first.reason}")
        return ABORT_EXIT_CODES.get(first.kind, EXIT_VERIFICATION)

    def cmd_catalog(self) -> int:
        for protocol_id, entry in CATALOG.items():
            print(f"{protocol_id:<24}{entry.family:<12}{entry.summary}")
        return EXIT_OK

    # endregion


# endregion


# region 命令行
def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("protocol", help="协议标识（见 catalog）")
    parser.add_argument("--seed-a", type=int, dest="seed_a")
    parser.add_argument("--seed-b", type=int, dest="seed_b")
    parser.add_argument("--seed-from-entropy", action="store_true", dest="seed_from_entropy")
    parser.add_argument("--bits", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--rounds", type=int, help="合同签署的最大轮数")
    parser.add_argument("--bit-width", type=int, dest="bit_width")
    parser.add_argument("--count", type=int, help="秘密出售的图个数")
    parser.add_argument("--noise", type=int, help="哈密顿图中回路以外的边数")
    parser.add_argument("--transport", choices=TRANSPORTS)
    parser.add_argument("--out", help="会话记录输出路径")
    parser.add_argument("--secret-a", dest="secret_a")
    parser.add_argument("--secret-b", dest="secret_b")
    parser.add_argument("--choice", type=int)
    parser.add_argument("--contract")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twoparty", description="双方密码协议运行与统计")
    parser.add_argument("--config", help="TOML 配置文件")
    parser.add_argument("--verbose", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    _add_run_arguments(commands.add_parser("run", help="运行一次会话并写出会话记录"))

    stats = commands.add_parser("stats", help="多次运行并报告经验比率")
    _add_run_arguments(stats)
    stats.add_argument("--trials", type=int, default=1000)
    stats.add_argument("--workers", type=int)
    stats.add_argument("--json", nargs="?", const="", default=None, dest="json_path")

    verify = commands.add_parser("verify", help="离线重放会话记录")
    verify.add_argument("path", type=Path)

    commands.add_parser("catalog", help="列出全部协议")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(message)s",
    )
    try:
        harness = TwoPartyHarness(load_config_file(args.config))
        if args.command == "catalog":
            return harness.cmd_catalog()
        if args.command == "verify":
            return harness.cmd_verify(args.path)
        config = harness.make_run_config(args)
        if args.command == "stats":
            return harness.cmd_stats(config, args.trials, args.workers, args.json_path)
        return harness.cmd_run(config)
    except ValueError as exc:
        # ParameterError 也是 ValueError
        logger.error("❌ %s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
# endregion
