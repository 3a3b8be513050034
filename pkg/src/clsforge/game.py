"""Game 1 / Game 2 challenger, oracles, judges and scripted adversaries.

A :class:`Challenger` owns the scheme state for one game.  Identities get
their keys lazily, the first time any oracle touches them, so a run is a
deterministic function of the seed and the ordered list of queries.  Every
answered query is appended to the challenger's call log, which becomes the
``calls`` list of the final :class:`GameTranscript`.
"""
from __future__ import annotations

import base64
import enum
import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from . import karati, kumar
from .errors import QueryLimitExceeded, RoleViolation
from .karati_attack import karati_forge_signature
from .kumar_attack import kumar_forge_type1, kumar_forge_type2, kumar_recover_delta_key
from .pairing import MockSuite, PairingSuite

DEFAULT_MAX_QUERIES = 2 ** 16
SCHEMES = ("karati", "kumar")


class OracleKind(str, enum.Enum):
    PARTIAL_KEY = "PartialKey"
    SECRET_VALUE = "SecretValue"
    PUBLIC_KEY = "PublicKey"
    REPLACE_KEY = "ReplaceKey"
    SIGN = "Sign"


def b64(data: bytes) -> str:
    return base64.b64encode(data).decode("ascii")


# Scheme adapters: a uniform face over the two schemes for the challenger.

class _KaratiOps:
    name = "karati"
    PublicKey = karati.KaratiPublicKey
    Signature = karati.KaratiSignature

    def setup(self, suite, rng):
        return karati.karati_setup(suite, rng)

    def new_user(self, params, msk, identity, rng):
        partial = karati.karati_extract_partial_key(params, msk, identity, rng)
        sk = karati.karati_set_private_key(partial, rng)
        return partial, sk, karati.karati_set_public_key(params, partial, sk)

    def secret_value(self, sk):
        return (sk.c_i, sk.x_i)

    def secret_json(self, secret):
        c, x = secret
        return {"c": c.encode(), "x": x.encode()}

    def sign(self, params, identity, pk, sk, message, delta, rng):
        return karati.karati_sign(params, identity, sk, message, rng)

    def verify(self, params, identity, pk, message, delta, sig):
        return karati.karati_verify(params, identity, pk, message, sig)

    def disclose_msk(self, msk):
        return msk.to_json()


class _KumarOps:
    name = "kumar"
    PublicKey = kumar.KumarPublicKey
    Signature = kumar.KumarSignature

    def setup(self, suite, rng):
        return kumar.kumar_setup(suite, rng)

    def new_user(self, params, msk, identity, rng):
        partial = kumar.kumar_extract_partial_key(params, msk, identity)
        sk = kumar.kumar_set_private_key(partial, rng)
        return partial, sk, kumar.kumar_set_public_key(params, sk)

    def secret_value(self, sk):
        return sk.x_i

    def secret_json(self, secret):
        return {"x": secret.encode()}

    def sign(self, params, identity, pk, sk, message, delta, rng):
        return kumar.kumar_sign(params, identity, pk, sk, delta, message, rng)

    def verify(self, params, identity, pk, message, delta, sig):
        return kumar.kumar_verify(params, identity, pk, delta, message, sig)

    def disclose_msk(self, msk):
        return msk.to_json()


OPS = {"karati": _KaratiOps(), "kumar": _KumarOps()}


@dataclass
class UserRecord:
    partial_key: Any
    private_key: Any
    public_key: Any
    original_public_key: Any
    replaced: bool = False


@dataclass(frozen=True)
class OracleCall:
    seq: int
    kind: OracleKind
    identity: str
    payload: dict
    response: dict

    def to_json(self) -> dict:
        return {"seq": self.seq, "kind": self.kind.value, "id": self.identity,
                "payload": self.payload, "response": self.response}


@dataclass(frozen=True)
class Forgery:
    identity: str
    message: bytes
    signature: Any
    delta: Optional[bytes] = None
    public_key: Any = None

    def to_json(self) -> dict:
        out = {"id": self.identity, "message": b64(self.message),
               "signature": self.signature.to_json(),
               "public_key": self.public_key.to_json() if self.public_key is not None else None}
        if self.delta is not None:
            out["delta"] = b64(self.delta)
        return out


@dataclass(frozen=True)
class Verdict:
    result: str
    reason: Optional[str] = None

    @property
    def win(self) -> bool:
        return self.result == "WIN"

    def to_json(self) -> dict:
        return {"result": self.result} if self.reason is None else {"result": self.result, "reason": self.reason}

    def __str__(self):
        return self.result if self.reason is None else f"{self.result}({self.reason})"


WIN = Verdict("WIN")


@dataclass
class GameTranscript:
    game: int
    scheme: str
    adversary: str
    seed: int
    suite: str
    digest: str
    calls: list
    forgery: Forgery
    verdict: Optional[Verdict] = None
    script: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "game": self.game,
            "scheme": self.scheme,
            "adversary": self.adversary,
            "script": self.script,
            "suite": self.suite,
            "digest": self.digest,
            "seed": self.seed,
            "calls": [c.to_json() for c in self.calls],
            "forgery": self.forgery.to_json(),
            "verdict": self.verdict.to_json() if self.verdict else None,
        }

    def dumps(self) -> str:
        """Canonical byte-stable serialization."""
        return json.dumps(self.to_json(), indent=2, ensure_ascii=True) + "\n"

    def count(self, kind: OracleKind, identity: Optional[str] = None) -> int:
        return sum(1 for c in self.calls
                   if c.kind == kind and (identity is None or c.identity == identity))


class Challenger:
    """Single-owner game state.  Use one instance per game."""

    def __init__(self, scheme: str, adversary: str, seed: int,
                 suite: Optional[PairingSuite] = None, max_queries: int = DEFAULT_MAX_QUERIES):
        if scheme not in OPS:
            raise ValueError(f"unknown scheme {scheme!r}")
        if adversary not in ("A1", "A2"):
            raise ValueError(f"adversary must be A1 or A2, not {adversary!r}")
        self.scheme = scheme
        self.ops = OPS[scheme]
        self.adversary = adversary
        self.seed = seed
        self.suite = suite or MockSuite(101)
        self.max_queries = max_queries
        self.rng = random.Random(seed)
        self.params, self._msk = self.ops.setup(self.suite, self.rng)
        self.registry: dict[str, UserRecord] = {}
        self.calls: list[OracleCall] = []

    def disclosure(self) -> dict:
        """What the adversary receives at setup: params always, MSK only for A2."""
        out = {"params": self.params}
        if self.adversary == "A2":
            out["msk"] = self._msk
        return out

    def _user(self, identity: str) -> UserRecord:
        rec = self.registry.get(identity)
        if rec is None:
            partial, sk, pk = self.ops.new_user(self.params, self._msk, identity, self.rng)
            rec = UserRecord(partial, sk, pk, pk)
            self.registry[identity] = rec
        return rec

    def public_key_in_effect(self, identity: str):
        return self._user(identity).public_key

    def original_public_key(self, identity: str):
        return self._user(identity).original_public_key

    def query(self, kind: OracleKind, identity: str, payload: Optional[dict] = None):
        """Answer one oracle query; returns the decoded response object."""
        kind = OracleKind(kind)
        payload = payload or {}
        if len(self.calls) >= self.max_queries:
            raise QueryLimitExceeded(f"query cap {self.max_queries} reached")
        if kind == OracleKind.REPLACE_KEY and self.adversary == "A2":
            raise RoleViolation("A2 is not allowed to replace public keys")
        rec = self._user(identity)

        if kind == OracleKind.PARTIAL_KEY:
            answer, wire = rec.partial_key, rec.partial_key.to_json()
            payload_json = {}
        elif kind == OracleKind.SECRET_VALUE:
            answer = self.ops.secret_value(rec.private_key)
            wire, payload_json = self.ops.secret_json(answer), {}
        elif kind == OracleKind.PUBLIC_KEY:
            answer, wire, payload_json = rec.public_key, rec.public_key.to_json(), {}
        elif kind == OracleKind.REPLACE_KEY:
            new_pk = payload["public_key"]
            if not isinstance(new_pk, self.ops.PublicKey):
                raise TypeError(f"ReplaceKey needs a {self.ops.PublicKey.__name__}")
            rec.public_key = new_pk
            rec.replaced = True
            answer = new_pk
            payload_json = {"public_key": new_pk.to_json()}
            wire = {"public_key": new_pk.to_json()}
        else:
            message = karati.as_bytes(payload["message"])
            delta = payload.get("delta")
            payload_json = {"message": b64(message)}
            if self.scheme == "kumar":
                if delta is None:
                    raise ValueError("kumar Sign queries need a delta")
                delta = karati.as_bytes(delta)
                payload_json["delta"] = b64(delta)
            # Signs with the honest key; reports the key it verifies under.
            sig = self.ops.sign(self.params, identity, rec.original_public_key, rec.private_key,
                                message, delta, self.rng)
            answer = sig
            wire = {"signature": sig.to_json(), "public_key": rec.original_public_key.to_json()}

        self.calls.append(OracleCall(len(self.calls), kind, identity, payload_json, wire))
        return answer

    # Named oracle wrappers, one per query type.

    def request_partial_private_key(self, identity):
        return self.query(OracleKind.PARTIAL_KEY, identity)

    def request_secret_value(self, identity):
        return self.query(OracleKind.SECRET_VALUE, identity)

    def request_public_key(self, identity):
        return self.query(OracleKind.PUBLIC_KEY, identity)

    def replace_public_key(self, identity, public_key):
        return self.query(OracleKind.REPLACE_KEY, identity, {"public_key": public_key})

    def cl_sign(self, identity, message, delta=None):
        return self.query(OracleKind.SIGN, identity, {"message": message, "delta": delta})

    def finish(self, forgery: Forgery, game: int, script: Optional[str] = None) -> GameTranscript:
        """Close the query phase, record the forgery and judge it."""
        forgery = Forgery(forgery.identity, karati.as_bytes(forgery.message), forgery.signature,
                          None if forgery.delta is None else karati.as_bytes(forgery.delta),
                          self.public_key_in_effect(forgery.identity))
        transcript = GameTranscript(game, self.scheme, self.adversary, self.seed, self.suite.id,
                                    self.suite.digest, list(self.calls), forgery, script=script)
        judge = judge_game1 if game == 1 else judge_game2
        transcript.verdict = judge(self, transcript)
        return transcript


def _verifies(state: Challenger, forgery: Forgery, pk) -> bool:
    return state.ops.verify(state.params, forgery.identity, pk, forgery.message,
                            forgery.delta, forgery.signature)


def _signed_pair(transcript: GameTranscript, identity: str, message: bytes) -> bool:
    want = b64(message)
    return any(c.kind == OracleKind.SIGN and c.identity == identity and c.payload["message"] == want
               for c in transcript.calls)


def judge_game1(state: Challenger, transcript: GameTranscript) -> Verdict:
    """Type-1 win: VALID under the key in effect, no partial key and no sign on (ID, m)."""
    f = transcript.forgery
    if not _verifies(state, f, state.public_key_in_effect(f.identity)):
        return Verdict("LOSE", "verify")
    if transcript.count(OracleKind.PARTIAL_KEY, f.identity):
        return Verdict("LOSE", "partial-key")
    if _signed_pair(transcript, f.identity, f.message):
        return Verdict("LOSE", "sign")
    return WIN


def judge_game2(state: Challenger, transcript: GameTranscript) -> Verdict:
    """Type-2 win: VALID under the never-replaced key, no secret value and no sign on (ID, m)."""
    f = transcript.forgery
    if not _verifies(state, f, state.original_public_key(f.identity)):
        return Verdict("LOSE", "verify")
    if transcript.count(OracleKind.REPLACE_KEY):
        return Verdict("LOSE", "replace-key")
    if transcript.count(OracleKind.SECRET_VALUE, f.identity):
        return Verdict("LOSE", "secret-value")
    if _signed_pair(transcript, f.identity, f.message):
        return Verdict("LOSE", "sign")
    return WIN


# Scripted adversaries.  Each takes a fresh challenger and its own rng and
# returns the finished transcript.

def _pick_identities(rng, n=2):
    ids = []
    while len(ids) < n:
        candidate = f"user-{rng.randrange(10 ** 9):09d}"
        if candidate not in ids:
            ids.append(candidate)
    return ids


def _pick_message(rng, label="msg"):
    return f"{label}-{rng.randrange(10 ** 9):09d}".encode()


def karati_t1(ch: Challenger, rng, *, query_target_partial_key=False, script="karati-t1"):
    """Partial-key mauling from one honestly obtained partial key, then Replace-Public-Key."""
    params = ch.disclosure()["params"]
    target, source = _pick_identities(rng)
    m = _pick_message(rng)
    ch.request_public_key(target)
    if query_target_partial_key:
        ch.request_partial_private_key(target)
    source_key = ch.request_partial_private_key(source)
    bundle = karati_forge_signature(params, (source, source_key), target, m, rng)
    ch.replace_public_key(target, bundle.public_key)
    return ch.finish(Forgery(target, m, bundle.signature), game=1, script=script)


def kumar_t2_type1(ch: Challenger, rng, *, script="kumar-t2-type1", game=1):
    """One CL-Sign on m_old plus the secret value yields a signature on m_new != m_old."""
    params = ch.disclosure()["params"]
    (target,) = _pick_identities(rng, 1)
    delta = _pick_message(rng, "delta")
    m_old = _pick_message(rng)
    m_new = m_old
    while m_new == m_old:
        m_new = _pick_message(rng)
    pk = ch.request_public_key(target)
    observed = ch.cl_sign(target, m_old, delta)
    x_S = ch.request_secret_value(target)
    dbk = kumar_recover_delta_key(params, target, pk, x_S, (m_old, observed))
    sig = kumar_forge_type1(params, target, pk, dbk, x_S, m_new)
    return ch.finish(Forgery(target, m_new, sig, delta), game=game, script=script)


def kumar_t3_type2(ch: Challenger, rng, *, query_secret_value=False, script="kumar-t3-type2"):
    """The KGC forges from the master secret and the published public key alone."""
    disclosed = ch.disclosure()
    (target,) = _pick_identities(rng, 1)
    delta = _pick_message(rng, "delta")
    m = _pick_message(rng)
    pk = ch.request_public_key(target)
    if query_secret_value:
        ch.request_secret_value(target)
    sig = kumar_forge_type2(disclosed["params"], disclosed["msk"], target, pk, delta, m, rng)
    return ch.finish(Forgery(target, m, sig, delta), game=2, script=script)


def replay_adversary(ch: Challenger, rng, *, game: int, script=None):
    """Submits a CL-Sign answer on (ID, m) as its forgery; must always lose."""
    (target,) = _pick_identities(rng, 1)
    m = _pick_message(rng)
    delta = _pick_message(rng, "delta") if ch.scheme == "kumar" else None
    sig = ch.cl_sign(target, m, delta)
    return ch.finish(Forgery(target, m, sig, delta), game=game, script=script)


@dataclass(frozen=True)
class Script:
    scheme: str
    adversary: str
    game: int
    play: Callable


SCRIPTS = {
    "karati-t1": Script("karati", "A1", 1, karati_t1),
    "kumar-t2-type1": Script("kumar", "A1", 1, kumar_t2_type1),
    "kumar-t3-type2": Script("kumar", "A2", 2, kumar_t3_type2),
}


def adversary_rng(script: str, seed: int) -> random.Random:
    return random.Random(f"adversary/{script}/{seed}")


def challenger_new(scheme: str, adversary: str, seed: int, suite: Optional[PairingSuite] = None,
                   max_queries: int = DEFAULT_MAX_QUERIES):
    """Returns ``(challenger, disclosure)``."""
    ch = Challenger(scheme, adversary, seed, suite, max_queries)
    return ch, ch.disclosure()


def run_scripted_adversary(script: str, seed: int, suite: Optional[PairingSuite] = None) -> GameTranscript:
    try:
        entry = SCRIPTS[script]
    except KeyError:
        raise ValueError(f"unknown script {script!r}; choose from {sorted(SCRIPTS)}") from None
    ch = Challenger(entry.scheme, entry.adversary, seed, suite)
    return entry.play(ch, adversary_rng(script, seed))
