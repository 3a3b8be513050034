"""JSON key files: ``{scheme, suite, role, id, elements}`` with pairing-core encodings."""
from __future__ import annotations

import json

from . import karati, kumar
from .errors import MalformedEncoding, SchemaError
from .pairing import PairingSuite, suite_from_backend

_TYPES = {
    "karati": {
        "params": karati.KaratiParams,
        "master_secret": karati.KaratiMasterSecret,
        "partial_key": karati.KaratiPartialKey,
        "private_key": karati.KaratiPrivateKey,
        "public_key": karati.KaratiPublicKey,
    },
    "kumar": {
        "params": kumar.KumarParams,
        "master_secret": kumar.KumarMasterSecret,
        "partial_key": kumar.KumarPartialKey,
        "private_key": kumar.KumarPrivateKey,
        "public_key": kumar.KumarPublicKey,
    },
}

ROLES = {
    "kgc": ("params", "master_secret"),
    "user": ("params", "partial_key", "private_key", "public_key"),
    "public": ("params", "public_key"),
}


def dump_key_file(scheme: str, suite: PairingSuite, role: str, identity, **elements) -> str:
    if set(elements) != set(ROLES[role]):
        raise ValueError(f"role {role!r} needs exactly {ROLES[role]}")
    doc = {
        "scheme": scheme,
        "suite": suite.id,
        "role": role,
        "id": identity,
        "elements": {name: elements[name].to_json() for name in ROLES[role]},
    }
    return json.dumps(doc, indent=2) + "\n"


def load_key_file(text: str, suite: PairingSuite = None) -> dict:
    """Decode a key file into ``{"scheme", "role", "id", "suite", <element objects>}``."""
    try:
        doc = json.loads(text)
        scheme, role = doc["scheme"], doc["role"]
        types = _TYPES[scheme]
        names = ROLES[role]
        suite = suite or suite_from_backend(doc["suite"])
        if suite.id != doc["suite"]:
            raise SchemaError(f"key file suite {doc['suite']!r} does not match {suite.id!r}")
        out = {"scheme": scheme, "role": role, "id": doc["id"], "suite": suite}
        for name in names:
            out[name] = types[name].from_json(suite, doc["elements"][name])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, MalformedEncoding) as exc:
        raise SchemaError(f"bad key file: {exc}") from exc
    return out
