"""Transcript files: schema validation, decoding and byte-exact replay."""
from __future__ import annotations

import binascii
import json

import jsonschema

from .errors import ClsError, MalformedEncoding, ReplayMismatch, RoleViolation, SchemaError
from .game import (
    OPS,
    SCRIPTS,
    Challenger,
    Forgery,
    GameTranscript,
    OracleKind,
    run_scripted_adversary,
)
from .kumar import b64decode_strict
from .pairing import MockSuite, suite_from_backend

_ELEMENTS = {"type": "object", "additionalProperties": {"type": "string"}}

TRANSCRIPT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["game", "scheme", "adversary", "script", "suite", "digest", "seed",
                 "calls", "forgery", "verdict"],
    "properties": {
        "game": {"enum": [1, 2]},
        "scheme": {"enum": sorted(OPS)},
        "adversary": {"enum": ["A1", "A2"]},
        "script": {"type": ["string", "null"]},
        "suite": {"type": "string"},
        "digest": {"type": "string"},
        "seed": {"type": "integer", "minimum": 0},
        "calls": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["seq", "kind", "id", "payload", "response"],
                "properties": {
                    "seq": {"type": "integer"},
                    "kind": {"enum": [k.value for k in OracleKind]},
                    "id": {"type": "string"},
                    "payload": {"type": "object"},
                    "response": {"type": "object"},
                },
            },
        },
        "forgery": {
            "type": "object",
            "additionalProperties": False,
            "required": ["id", "message", "signature", "public_key"],
            "properties": {
                "id": {"type": "string"},
                "message": {"type": "string"},
                "signature": _ELEMENTS,
                "public_key": _ELEMENTS,
                "delta": {"type": "string"},
            },
        },
        "verdict": {
            "type": "object",
            "additionalProperties": False,
            "required": ["result"],
            "properties": {
                "result": {"enum": ["WIN", "LOSE"]},
                "reason": {"type": "string"},
            },
        },
    },
}


_VALIDATOR = jsonschema.Draft202012Validator(TRANSCRIPT_SCHEMA)


def parse_transcript(text) -> dict:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"transcript is not UTF-8: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"transcript is not valid JSON: {exc}") from exc
    try:
        _VALIDATOR.validate(doc)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"transcript schema violation: {exc.message}") from exc
    for i, call in enumerate(doc["calls"]):
        if call["seq"] != i:
            raise SchemaError(f"call {i} carries seq {call['seq']}")
    if (doc["game"] == 1) != (doc["adversary"] == "A1"):
        raise SchemaError("game 1 is played by A1 and game 2 by A2")
    if doc["script"] is not None:
        entry = SCRIPTS.get(doc["script"])
        if entry is None:
            raise SchemaError(f"unknown script {doc['script']!r}")
        if (entry.scheme, entry.adversary, entry.game) != (doc["scheme"], doc["adversary"], doc["game"]):
            raise SchemaError(f"script {doc['script']!r} does not match the game header")
    if ("delta" in doc["forgery"]) != (doc["scheme"] == "kumar"):
        raise SchemaError("forgery.delta is required for kumar and forbidden for karati")
    return doc


def _b64(text: str) -> bytes:
    try:
        return b64decode_strict(text)
    except (ValueError, binascii.Error) as exc:
        raise SchemaError(f"bad base64 field {text!r}") from exc


def _suite_for(doc) -> MockSuite:
    try:
        suite = suite_from_backend(doc["suite"])
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    if doc["digest"] != suite.digest:
        raise SchemaError(f"digest {doc['digest']!r} does not match {suite.digest!r}")
    return suite


def _decode_payload(ops, suite, kind: OracleKind, payload: dict) -> dict:
    try:
        if kind == OracleKind.REPLACE_KEY:
            return {"public_key": ops.PublicKey.from_json(suite, payload["public_key"])}
        if kind == OracleKind.SIGN:
            out = {"message": _b64(payload["message"])}
            if "delta" in payload:
                out["delta"] = _b64(payload["delta"])
            return out
        return {}
    except (KeyError, TypeError, MalformedEncoding) as exc:
        raise SchemaError(f"bad {kind.value} payload: {exc}") from exc


def _decode_forgery(ops, suite, f: dict) -> Forgery:
    try:
        sig = ops.Signature.from_json(suite, f["signature"])
        pk = ops.PublicKey.from_json(suite, f["public_key"])
    except (KeyError, TypeError, ValueError, MalformedEncoding) as exc:
        raise SchemaError(f"bad forgery: {exc}") from exc
    delta = _b64(f["delta"]) if "delta" in f else None
    if delta is not None and sig.delta != delta:
        raise SchemaError("forgery.delta disagrees with the delta carried in the signature")
    return Forgery(f["id"], _b64(f["message"]), sig, delta, pk)


def replay(text) -> GameTranscript:
    """Re-run a transcript against a fresh challenger and demand byte equality.

    Raises :class:`SchemaError` for unparsable or ill-formed input and
    :class:`ReplayMismatch` naming the first point of divergence otherwise.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"transcript is not UTF-8: {exc}") from exc
    raw = text
    doc = parse_transcript(raw)
    suite = _suite_for(doc)
    ops = OPS[doc["scheme"]]
    ch = Challenger(doc["scheme"], doc["adversary"], doc["seed"], suite)

    for call in doc["calls"]:
        kind = OracleKind(call["kind"])
        payload = _decode_payload(ops, suite, kind, call["payload"])
        try:
            ch.query(kind, call["id"], payload)
        except (RoleViolation, ClsError, ValueError) as exc:
            raise ReplayMismatch(f"call {call['seq']} ({kind.value}) rejected on replay: {exc}") from exc
        fresh = ch.calls[-1].to_json()
        if fresh != call:
            raise ReplayMismatch(f"call {call['seq']} ({kind.value} {call['id']}) diverges on replay")

    claimed = _decode_forgery(ops, suite, doc["forgery"])
    rebuilt = ch.finish(claimed, doc["game"], doc["script"])
    if rebuilt.forgery.public_key != claimed.public_key:
        raise ReplayMismatch("forgery.public_key is not the key in effect for the target")
    if rebuilt.verdict.to_json() != doc["verdict"]:
        raise ReplayMismatch(f"verdict re-derives as {rebuilt.verdict}, transcript claims "
                             f"{doc['verdict']}")
    if rebuilt.dumps() != raw:
        raise ReplayMismatch("transcript bytes differ from the canonical encoding of its replay")
    if doc["script"] is not None:
        regenerated = run_scripted_adversary(doc["script"], doc["seed"], suite)
        if regenerated.dumps() != raw:
            raise ReplayMismatch(f"re-running {doc['script']} with seed {doc['seed']} "
                                 "does not reproduce the transcript")
    return rebuilt


def verify_transcript_file(path) -> GameTranscript:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    return replay(data)
