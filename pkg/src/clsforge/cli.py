"""Command-line front end: ``demo``, ``attack``, ``verify-transcript``, ``keygen``.

The backend comes from ``CLSFORGE_BACKEND`` (default ``mock101``); ``--q``
overrides the prime.  Exit status is 0 exactly when the command's
cryptographic claim holds.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from typing import Optional

from . import karati, kumar
from .errors import ClsError, ConfigError, ReplayMismatch, SchemaError
from .fixtures import FIXTURE_Q, FIXTURES
from .game import SCRIPTS, run_scripted_adversary
from .keyfile import dump_key_file
from .pairing import MockSuite, suite_from_backend
from .transcript import verify_transcript_file

DEFAULT_BACKEND = "mock101"


@dataclass(frozen=True)
class RunConfig:
    command: str
    scheme: Optional[str] = None
    seed: int = 0
    q: Optional[int] = None
    pinned_hash: bool = False
    out: Optional[str] = None
    backend: str = DEFAULT_BACKEND

    def suite(self) -> MockSuite:
        if not self.backend.startswith("mock"):
            raise ConfigError(f"backend {self.backend!r} is not available (only mock<q>)")
        try:
            if self.q is not None:
                return MockSuite(self.q)
            return suite_from_backend(self.backend)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def validate(self):
        suite = self.suite()
        if self.pinned_hash and suite.q != FIXTURE_Q:
            raise ConfigError(f"--pinned-hash fixtures are defined for q={FIXTURE_Q} only")
        if self.seed < 0 or self.seed >= 2 ** 64:
            raise ConfigError("--seed must be an unsigned 64-bit integer")
        return suite


def _write(path: Optional[str], text: str):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _print_report(report: dict, prefix=""):
    for key, value in report.items():
        if isinstance(value, dict):
            _print_report(value, f"{prefix}{key}.")
        else:
            print(f"{prefix}{key}: {value}")


def _all_valid(report: dict) -> bool:
    results = []

    def walk(d):
        for k, v in d.items():
            if isinstance(v, dict):
                walk(v)
            elif k == "result":
                results.append(v)
    walk(report)
    return bool(results) and all(r == "VALID" for r in results)


def demo_report(scheme: str, suite, seed: int, identity="alice", message="hello world",
                delta="state-0", raw_message=False) -> dict:
    rng = random.Random(seed)
    if scheme == "karati":
        m = int(message) if raw_message else message.encode()
        params, msk = karati.karati_setup(suite, rng)
        partial = karati.karati_extract_partial_key(params, msk, identity, rng)
        sk = karati.karati_set_private_key(partial, rng)
        pk = karati.karati_set_public_key(params, partial, sk)
        sig = karati.karati_sign(params, identity, sk, m, rng)
        lhs, rhs = karati.verification_sides(params, identity, pk, m, sig)
        genuine = karati.karati_verify_partial_key(params, identity, partial)
    else:
        if raw_message:
            raise ConfigError("--raw-message applies to karati only")
        m = message.encode()
        params, msk = kumar.kumar_setup(suite, rng)
        partial = kumar.kumar_extract_partial_key(params, msk, identity)
        sk = kumar.kumar_set_private_key(partial, rng)
        pk = kumar.kumar_set_public_key(params, sk)
        sig = kumar.kumar_sign(params, identity, pk, sk, delta, m, rng)
        lhs, rhs = kumar.verification_sides(params, identity, pk, delta, m, sig)
        genuine = kumar.kumar_verify_partial_key(params, identity, partial)
    return {
        "scheme": scheme,
        "suite": suite.id,
        "seed": seed,
        "id": identity,
        "params": params.to_json(),
        "partial_key": partial.to_json(),
        "partial_key_genuine": genuine,
        "private_key": sk.to_json(),
        "public_key": pk.to_json(),
        "signature": sig.to_json(),
        "verify": {"lhs": lhs.encode(), "rhs": rhs.encode(), "result": "VALID" if lhs == rhs else "INVALID"},
    }


def cmd_demo(cfg: RunConfig, args) -> int:
    suite = cfg.validate()
    if cfg.pinned_hash:
        report = FIXTURES[cfg.scheme]()
    else:
        report = demo_report(cfg.scheme, suite, cfg.seed, args.id, args.message, args.delta,
                             args.raw_message)
    _print_report(report)
    _write(cfg.out, json.dumps(report, indent=2) + "\n")
    ok = _all_valid(report)
    print("VALID" if ok else "INVALID")
    return 0 if ok else 1


def cmd_attack(cfg: RunConfig, args) -> int:
    suite = cfg.validate()
    transcript = run_scripted_adversary(args.script, cfg.seed, suite)
    text = transcript.dumps()
    if cfg.out:
        _write(cfg.out, text)
    else:
        sys.stdout.write(text)
    calls = ", ".join(f"{c.kind.value}({c.identity})" for c in transcript.calls) or "none"
    print(f"{args.script} seed={cfg.seed}: calls [{calls}] -> {transcript.verdict}", file=sys.stderr)
    return 0 if transcript.verdict.win else 1


def cmd_verify_transcript(cfg: RunConfig, args) -> int:
    try:
        transcript = verify_transcript_file(args.path)
    except SchemaError as exc:
        print(f"SchemaError: {exc}", file=sys.stderr)
        return 2
    except ReplayMismatch as exc:
        print(f"ReplayMismatch: {exc}", file=sys.stderr)
        return 3
    print(f"replay OK: game {transcript.game} {transcript.scheme} -> {transcript.verdict}")
    return 0


def cmd_keygen(cfg: RunConfig, args) -> int:
    suite = cfg.validate()
    rng = random.Random(cfg.seed)
    ident = args.id
    if cfg.scheme == "karati":
        params, msk = karati.karati_setup(suite, rng)
        partial = karati.karati_extract_partial_key(params, msk, ident, rng)
        sk = karati.karati_set_private_key(partial, rng)
        pk = karati.karati_set_public_key(params, partial, sk)
    else:
        params, msk = kumar.kumar_setup(suite, rng)
        partial = kumar.kumar_extract_partial_key(params, msk, ident)
        sk = kumar.kumar_set_private_key(partial, rng)
        pk = kumar.kumar_set_public_key(params, sk)
    user = dump_key_file(cfg.scheme, suite, "user", ident, params=params, partial_key=partial,
                         private_key=sk, public_key=pk)
    if cfg.out:
        _write(cfg.out, user)
    else:
        sys.stdout.write(user)
    if args.kgc_out:
        _write(args.kgc_out, dump_key_file(cfg.scheme, suite, "kgc", None, params=params,
                                           master_secret=msk))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clsforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scheme=True):
        if scheme:
            p.add_argument("--scheme", choices=["karati", "kumar"], required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--q", type=int, default=None, help="prime group order (overrides the backend)")
        p.add_argument("--out", default=None)

    p = sub.add_parser("demo", help="setup -> extract -> keys -> sign -> verify")
    common(p)
    p.add_argument("--pinned-hash", action="store_true", help="replay fixture F1/F2 at q=101")
    p.add_argument("--id", default="alice")
    p.add_argument("--message", default="hello world")
    p.add_argument("--delta", default="state-0", help="kumar state information")
    p.add_argument("--raw-message", action="store_true",
                   help="karati: treat --message as an integer taken mod q")

    p = sub.add_parser("attack", help="run a scripted adversary inside its game")
    p.add_argument("script", choices=sorted(SCRIPTS))
    common(p, scheme=False)

    p = sub.add_parser("verify-transcript", help="replay a transcript byte-for-byte")
    p.add_argument("path")

    p = sub.add_parser("keygen", help="write a user key file")
    common(p)
    p.add_argument("--id", default="alice")
    p.add_argument("--kgc-out", default=None, help="also write the KGC key file here")
    return parser


COMMANDS = {
    "demo": cmd_demo,
    "attack": cmd_attack,
    "verify-transcript": cmd_verify_transcript,
    "keygen": cmd_keygen,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        scheme=getattr(args, "scheme", None),
        seed=getattr(args, "seed", 0),
        q=getattr(args, "q", None),
        pinned_hash=getattr(args, "pinned_hash", False),
        out=getattr(args, "out", None),
        backend=os.environ.get("CLSFORGE_BACKEND", DEFAULT_BACKEND),
    )
    try:
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ClsError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
