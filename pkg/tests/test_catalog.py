# ruff: noqa: E402
"""Tests for the protocol catalog, run parameters, statistics and the command line.

Run from the repository root:
    python tests/test_catalog.py -v
"""

from __future__ import annotations

import io
import json
import os
import sys
import tempfile
import unittest
from collections import Counter
from contextlib import redirect_stdout
from pathlib import Path

import msgspec

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

import main as cli
from core.catalog import (
    CATALOG,
    build_run_config,
    check_trials,
    get_entry,
    prepare_session,
    resolve_protocol_id,
    summarize,
)
from core.common import ParameterError, RandomStream
from core.common.paths import DATA_DIR_ENV, reset_data_dir
from core.session import (
    Message,
    Transcript,
    TranscriptHeader,
    TranscriptRecord,
    check_correctness,
    format_log,
    parse_log,
    replay_party,
    run_session,
)

SMALL_RUN = {"bits": 16, "n": 8, "m": 4, "rounds": 16, "bit_width": 3, "noise": 4}


def small_config(protocol: str, seed_a: int = 3, seed_b: int = 4, **extra):
    return build_run_config({"protocol": protocol, "seed_a": seed_a, "seed_b": seed_b, **SMALL_RUN, **extra})


def run_cli(*argv: str) -> tuple[int, dict[str, str]]:
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = cli.main(list(argv))
    lines = {}
    for line in buffer.getvalue().splitlines():
        key, sep, value = line.partition("=")
        if sep:
            lines.setdefault(key, value)
    return code, lines


def flip_one_bit(
    header: TranscriptHeader, transcript: Transcript, rng: RandomStream
) -> tuple[TranscriptHeader, Transcript]:
    """在头部或某条记录（负载、标签、步骤名、方向）中翻转一个比特。"""
    kind = rng.randbelow(6)
    if kind == 0:
        name = rng.choice(("seed_a", "seed_b"))
        flipped = getattr(header, name) ^ (1 << rng.randbelow(64))
        return msgspec.structs.replace(header, **{name: flipped}), transcript
    if kind == 1:
        return msgspec.structs.replace(header, records=header.records ^ (1 << rng.randbelow(8))), transcript
    if kind == 2:
        session_id = bytearray.fromhex(header.session_id)
        session_id[rng.randbelow(len(session_id))] ^= 1 << rng.randbelow(8)
        return msgspec.structs.replace(header, session_id=session_id.hex()), transcript

    records = list(transcript)
    index = rng.randbelow(len(records))
    record = records[index]
    tag, payload = record.message.tag, bytearray(record.message.payload)
    label, direction = record.label, record.direction
    if kind == 3 and payload:
        payload[rng.randbelow(len(payload))] ^= 1 << rng.randbelow(8)
    elif kind == 5:
        on_label = rng.bit()
        text = label if on_label else direction
        at = rng.randbelow(len(text))
        text = text[:at] + chr(ord(text[at]) ^ (1 << rng.randbelow(7))) + text[at + 1 :]
        if on_label:
            label = text
        else:
            direction = text
    else:
        tag ^= 1 << rng.randbelow(8)
    records[index] = TranscriptRecord(direction, label, Message(tag, bytes(payload)))
    return header, Transcript(records)


class TestRunConfig(unittest.TestCase):
    def test_defaults_and_validation(self):
        config = build_run_config({"protocol": "rabin-ot", "seed_a": 1, "seed_b": 2})
        self.assertEqual((config.bits, config.transport, config.k), (32, "inproc", None))

        bad = [
            {"seed_a": -1},
            {"seed_a": 1 << 64},
            {"transport": "pigeon"},
            {"bits": 0},
            {"rounds": -1},
            {"k": 0},
            {"bits": "many"},
        ]
        for override in bad:
            with self.subTest(override=override):
                with self.assertRaises(ParameterError):
                    build_run_config({"protocol": "rabin-ot", "seed_a": 1, "seed_b": 2, **override})

    def test_missing_seed_is_rejected(self):
        with self.assertRaises(ParameterError):
            build_run_config({"protocol": "rabin-ot", "seed_a": 1})


class TestCatalogEntries(unittest.TestCase):
    def test_aliases(self):
        self.assertEqual(resolve_protocol_id("sv"), "string-verification")
        self.assertEqual(resolve_protocol_id("mp"), "millionaires")
        self.assertEqual(resolve_protocol_id("rabin-ot"), "rabin-ot")
        self.assertIs(get_entry("ba"), CATALOG["byzantine-agreement"])

    def test_unknown_protocol(self):
        with self.assertRaises(ParameterError):
            get_entry("quantum-ot")

    def test_inputs_depend_only_on_config(self):
        config = small_config("contract-sign")
        _, a1, b1 = prepare_session(config)
        _, a2, b2 = prepare_session(config)
        _, a3, _ = prepare_session(small_config("contract-sign", seed_a=5))

        self.assertEqual((a1, b1), (a2, b2))
        self.assertNotEqual(a1, a3)

    def test_explicit_secrets(self):
        _, a, b = prepare_session(small_config("mp", secret_a="5", secret_b="0x3"))
        self.assertEqual((a, b), (5, 3))
        with self.assertRaises(ParameterError):
            prepare_session(small_config("mp", secret_a="9"))
        with self.assertRaises(ParameterError):
            prepare_session(small_config("ba", secret_a="2"))
        with self.assertRaises(ParameterError):
            prepare_session(small_config("dlp-1of2-ot", choice=2))

    def test_every_entry_runs(self):
        for protocol_id, entry in CATALOG.items():
            with self.subTest(protocol=protocol_id):
                config = small_config(protocol_id)
                protocol, input_a, input_b = prepare_session(config)
                result = run_session(protocol, input_a, input_b, config.seed_a, config.seed_b)
                if result.ok:
                    # 只凭本方视图重跑脚本即可重现私有输出
                    self.assertEqual(replay_party(protocol, result.outcome_a), result.outputs[0])
                    self.assertEqual(replay_party(protocol, result.outcome_b), result.outputs[1])
                if protocol_id.endswith("-cheat"):
                    self.assertTrue(result.ok or result.abort.kind == "verification")
                    continue

                self.assertTrue(result.ok, result.abort)
                self.assertTrue(check_correctness(result, protocol))
                metrics = entry.metrics((input_a, input_b), result.outputs)
                self.assertTrue(metrics)
                for name, value in metrics.items():
                    if name.endswith("_rate"):
                        self.assertIn(value, (0.0, 1.0), name)


class TestStats(unittest.TestCase):
    def test_trial_floor(self):
        check_trials(100)
        with self.assertRaises(ParameterError):
            check_trials(99)

    def test_summary_intervals(self):
        samples = [{"success_rate": float(i % 2), "rounds_mean": 2.0 + i % 3} for i in range(100)]
        summary = summarize("rabin-ot", 110, samples, Counter({"verification": 10}))
        metrics = {metric.name: metric for metric in summary.metrics}

        self.assertEqual(summary.completed, 100)
        self.assertEqual(metrics["success_rate"].value, 0.5)
        self.assertLess(metrics["success_rate"].low, 0.5)
        self.assertGreater(metrics["success_rate"].high, 0.5)
        self.assertAlmostEqual(metrics["rounds_mean"].value, 2.99)
        self.assertIn("abort_verification=10", summary.key_values())
        self.assertIn("abort_rate=0.090909", summary.key_values())


class TestCommandLine(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self._old = os.environ.get(DATA_DIR_ENV)
        os.environ[DATA_DIR_ENV] = self.tmp.name
        reset_data_dir()

    def tearDown(self):
        if self._old is None:
            os.environ.pop(DATA_DIR_ENV, None)
        else:
            os.environ[DATA_DIR_ENV] = self._old
        reset_data_dir()

    def test_run_then_verify(self):
        code, out = run_cli("run", "rabin-ot", "--seed-a", "11", "--seed-b", "22", "--bits", "24")
        self.assertEqual(code, 0)
        path = Path(out["transcript"])
        self.assertTrue(path.is_file())
        self.assertEqual(path.parent, Path(self.tmp.name) / "transcripts")

        code, out = run_cli("verify", str(path))
        self.assertEqual(code, 0)
        self.assertEqual(out["verified"], str(path))

    def test_verify_detects_tampering(self):
        target = Path(self.tmp.name) / "mp.log"
        code, _ = run_cli(
            "run", "mp", "--seed-a", "1", "--seed-b", "2", "--bit-width", "3", "--k", "8",
            "--secret-a", "5", "--secret-b", "3", "--out", str(target),
        )
        self.assertEqual(code, 0)

        lines = target.read_text(encoding="utf-8").splitlines()
        fields = lines[-1].split("\t")
        payload = bytearray.fromhex(fields[-1])
        payload[-1] ^= 1
        fields[-1] = payload.hex()
        target.write_text("\n".join([*lines[:-1], "\t".join(fields)]) + "\n", encoding="utf-8")

        code, out = run_cli("verify", str(target))
        self.assertIn(code, (3, 4))
        self.assertIn(out["abort"], ("verification", "framing"))

    def test_single_bit_tampering_is_always_detected(self):
        rng = RandomStream(2026)
        cases = 0
        for protocol, extra in (
            ("rabin-ot", ("--bits", "24")),
            ("mp", ("--bit-width", "3", "--k", "8", "--secret-a", "5", "--secret-b", "3")),
        ):
            source = Path(self.tmp.name) / f"{protocol}.log"
            code, _ = run_cli("run", protocol, "--seed-a", "7", "--seed-b", "8", *extra, "--out", str(source))
            self.assertEqual(code, 0)
            header, transcript = parse_log(source.read_text(encoding="utf-8"))

            target = Path(self.tmp.name) / f"{protocol}-tampered.log"
            for _ in range(500):
                tampered_header, tampered = flip_one_bit(header, transcript, rng)
                target.write_text(format_log(tampered_header, tampered), encoding="utf-8")
                code, out = run_cli("verify", str(target))
                with self.subTest(case=cases):
                    self.assertIn(code, (3, 4), out)
                cases += 1

        self.assertEqual(cases, 1000)

    def test_run_reports_abort_exit_code(self):
        code, out = run_cli(
            "run", "sv", "--seed-a", "1", "--seed-b", "2", "--n", "4",
            "--secret-a", "1010", "--secret-b", "10101",
        )
        self.assertEqual(code, 3)
        self.assertEqual(out["abort"], "verification")
        self.assertEqual(out["abort_step"], "Set-up/A")

    def test_usage_errors(self):
        self.assertEqual(run_cli("run", "rabin-ot", "--seed-a", "1")[0], 2)
        self.assertEqual(run_cli("run", "nope", "--seed-a", "1", "--seed-b", "2")[0], 2)
        self.assertEqual(run_cli("verify", str(Path(self.tmp.name) / "missing.log"))[0], 2)
        self.assertEqual(
            run_cli("stats", "rabin-ot", "--seed-a", "1", "--seed-b", "2", "--trials", "10")[0], 2
        )

    def test_malformed_log_is_framing(self):
        target = Path(self.tmp.name) / "bad.log"
        target.write_text("not a transcript\n", encoding="utf-8")

        code, out = run_cli("verify", str(target))
        self.assertEqual(code, 4)
        self.assertEqual(out["abort"], "framing")

    def test_catalog_lists_all_protocols(self):
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            self.assertEqual(cli.main(["catalog"]), 0)
        listed = [line.split()[0] for line in buffer.getvalue().splitlines() if line.strip()]
        self.assertEqual(listed, list(CATALOG))

    def test_stats_json_summary(self):
        code, out = run_cli(
            "stats", "coin-flip-commit", "--seed-a", "1", "--seed-b", "2", "--bits", "16",
            "--trials", "100", "--workers", "4", "--json",
        )
        self.assertEqual(code, 0)
        self.assertEqual(out["trials"], "100")
        summary = json.loads(Path(out["summary"]).read_text(encoding="utf-8"))
        names = {metric["name"] for metric in summary["metrics"]}
        self.assertEqual(names, {"agree_rate", "b_win_rate"})
        self.assertEqual(summary["completed"], 100)


if __name__ == "__main__":
    unittest.main(verbosity=2)
