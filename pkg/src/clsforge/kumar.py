"""Kumar certificateless signature scheme (additive notation).

Signatures are made under caller-supplied state information ``delta``, an
opaque byte string hashed onto G1 with ``H2`` and carried with the signature.
"""
from __future__ import annotations

import base64
import struct
from dataclasses import dataclass
from typing import Union

from .karati import as_bytes
from .pairing import Group, GroupElement, HashTag, PairingSuite, Scalar

Bytes = Union[bytes, str]


@dataclass(frozen=True)
class KumarParams:
    suite: PairingSuite
    P: GroupElement
    P_pub: GroupElement

    def to_json(self) -> dict:
        return {"P": self.P.encode(), "P_pub": self.P_pub.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KumarParams":
        return cls(suite, suite.deserialize(d["P"], Group.G1), suite.deserialize(d["P_pub"], Group.G1))


@dataclass(frozen=True)
class KumarMasterSecret:
    alpha: Scalar

    def to_json(self) -> dict:
        return {"alpha": self.alpha.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KumarMasterSecret":
        return cls(suite.deserialize_scalar(d["alpha"]))


@dataclass(frozen=True)
class KumarPartialKey:
    D_i: GroupElement

    def to_json(self) -> dict:
        return {"D": self.D_i.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KumarPartialKey":
        return cls(suite.deserialize(d["D"], Group.G1))


@dataclass(frozen=True)
class KumarPrivateKey:
    x_i: Scalar
    D_i: GroupElement

    def to_json(self) -> dict:
        return {"x": self.x_i.encode(), "D": self.D_i.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KumarPrivateKey":
        return cls(suite.deserialize_scalar(d["x"]), suite.deserialize(d["D"], Group.G1))


@dataclass(frozen=True)
class KumarPublicKey:
    Y_i: GroupElement

    def to_json(self) -> dict:
        return {"Y": self.Y_i.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KumarPublicKey":
        return cls(suite.deserialize(d["Y"], Group.G1))


@dataclass(frozen=True)
class KumarSignature:
    R: GroupElement
    V: GroupElement
    delta: bytes

    def to_json(self) -> dict:
        return {"R": self.R.encode(), "V": self.V.encode(),
                "delta": base64.b64encode(self.delta).decode("ascii")}

    @classmethod
    def from_json(cls, suite, d) -> "KumarSignature":
        return cls(suite.deserialize(d["R"], Group.G1), suite.deserialize(d["V"], Group.G1),
                   b64decode_strict(d["delta"]))


def b64decode_strict(text: str) -> bytes:
    raw = base64.b64decode(text, validate=True)
    # Reject non-canonical encodings (e.g. stray bits in the padding character).
    if base64.b64encode(raw).decode("ascii") != text:
        raise ValueError(f"non-canonical base64 {text!r}")
    return raw


def h3_input(m: Bytes, identity: Bytes, Y: GroupElement, R: GroupElement) -> bytes:
    """Length-prefixed encoding of the ``(m, ID, Y, R)`` tuple fed to H3."""
    fields = (as_bytes(m), as_bytes(identity), Y.encode().encode("ascii"), R.encode().encode("ascii"))
    return b"".join(struct.pack(">I", len(f)) + f for f in fields)


def h3(suite: PairingSuite, m: Bytes, identity: Bytes, Y: GroupElement, R: GroupElement) -> Scalar:
    return suite.hash_to_scalar(HashTag.H3, h3_input(m, identity, Y, R))


def q_id(suite: PairingSuite, identity: Bytes) -> GroupElement:
    return suite.hash_to_group(HashTag.H1, as_bytes(identity))


def state_point(suite: PairingSuite, delta: Bytes) -> GroupElement:
    return suite.hash_to_group(HashTag.H2, as_bytes(delta))


def kumar_setup(suite: PairingSuite, rng):
    alpha = suite.random_scalar(rng)
    P = suite.g1
    return KumarParams(suite, P, alpha * P), KumarMasterSecret(alpha)


def kumar_extract_partial_key(params: KumarParams, msk: KumarMasterSecret, identity) -> KumarPartialKey:
    return KumarPartialKey(msk.alpha * q_id(params.suite, identity))


def kumar_verify_partial_key(params: KumarParams, identity, partial: KumarPartialKey) -> bool:
    """``e(D_i, P) == e(Q_ID, P_pub)``.

    Not part of the original scheme, which gives users no way to check D_i;
    provided as a validity predicate for tests and tooling only.
    """
    suite = params.suite
    return suite.pair(partial.D_i, params.P) == suite.pair(q_id(suite, identity), params.P_pub)


def kumar_set_private_key(partial: KumarPartialKey, rng) -> KumarPrivateKey:
    x = partial.D_i.suite.random_scalar(rng)
    return KumarPrivateKey(x, partial.D_i)


def kumar_set_public_key(params: KumarParams, sk: KumarPrivateKey) -> KumarPublicKey:
    return KumarPublicKey(sk.x_i * params.P)


def kumar_sign(params: KumarParams, identity, pk: KumarPublicKey, sk: KumarPrivateKey,
               delta: Bytes, m: Bytes, rng) -> KumarSignature:
    suite = params.suite
    r = suite.random_scalar(rng)
    R = r * params.P
    W = state_point(suite, delta)
    h = h3(suite, m, identity, pk.Y_i, R)
    V = sk.D_i + r * W + (h * sk.x_i) * params.P_pub
    return KumarSignature(R, V, as_bytes(delta))


def verification_sides(params: KumarParams, identity, pk: KumarPublicKey, delta: Bytes,
                       m: Bytes, sig: KumarSignature):
    """Both sides of ``e(V, P) == e(Q_ID + h*Y, P_pub) * e(R, W)``."""
    suite = params.suite
    W = state_point(suite, delta)
    h = h3(suite, m, identity, pk.Y_i, sig.R)
    lhs = suite.pair(sig.V, params.P)
    rhs = suite.pair(q_id(suite, identity) + h * pk.Y_i, params.P_pub) * suite.pair(sig.R, W)
    return lhs, rhs


def kumar_verify(params: KumarParams, identity, pk: KumarPublicKey, delta: Bytes, m: Bytes,
                 sig: KumarSignature) -> bool:
    """``delta`` is the state information the verifier expects; a signature
    carrying a different one is rejected."""
    if sig.delta != as_bytes(delta):
        return False
    lhs, rhs = verification_sides(params, identity, pk, delta, m, sig)
    return lhs == rhs
