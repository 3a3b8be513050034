"""Karati certificateless signature scheme (multiplicative notation).

Messages enter the field through :func:`message_scalar`: byte strings are
hashed with the ``MSG`` tag, while plain ints are taken mod q (raw mode,
used to reproduce small-integer fixtures).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .pairing import Group, GroupElement, HashTag, PairingSuite, Scalar

Message = Union[bytes, str, int]


def as_bytes(data: Union[bytes, str]) -> bytes:
    return data.encode("utf-8") if isinstance(data, str) else bytes(data)


def message_scalar(suite: PairingSuite, m: Message) -> Scalar:
    if isinstance(m, int):
        mbar = suite.scalar(m)
        if not mbar:
            raise ValueError("raw message is 0 mod q and has no inverse")
        return mbar
    return suite.hash_to_scalar(HashTag.MSG, as_bytes(m))


def identity_hash(suite: PairingSuite, identity: Union[bytes, str]) -> Scalar:
    return suite.hash_to_scalar(HashTag.H, as_bytes(identity))


@dataclass(frozen=True)
class KaratiParams:
    suite: PairingSuite
    g2: GroupElement
    Y_KGC: GroupElement

    def to_json(self) -> dict:
        return {"g2": self.g2.encode(), "Y_KGC": self.Y_KGC.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KaratiParams":
        return cls(suite, suite.deserialize(d["g2"], Group.GT), suite.deserialize(d["Y_KGC"], Group.G1))


@dataclass(frozen=True)
class KaratiMasterSecret:
    y: Scalar

    def to_json(self) -> dict:
        return {"y": self.y.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KaratiMasterSecret":
        return cls(suite.deserialize_scalar(d["y"]))


@dataclass(frozen=True)
class KaratiPartialKey:
    y_i: GroupElement
    R_i: GroupElement

    def to_json(self) -> dict:
        return {"y": self.y_i.encode(), "R": self.R_i.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KaratiPartialKey":
        return cls(suite.deserialize(d["y"], Group.G1), suite.deserialize(d["R"], Group.G1))


@dataclass(frozen=True)
class KaratiPrivateKey:
    c_i: Scalar
    x_i: Scalar
    R_i: GroupElement

    def to_json(self) -> dict:
        return {"c": self.c_i.encode(), "x": self.x_i.encode(), "R": self.R_i.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KaratiPrivateKey":
        return cls(suite.deserialize_scalar(d["c"]), suite.deserialize_scalar(d["x"]),
                   suite.deserialize(d["R"], Group.G1))


@dataclass(frozen=True)
class KaratiPublicKey:
    Y_i1: GroupElement
    Y_i2: GroupElement

    def to_json(self) -> dict:
        return {"Y1": self.Y_i1.encode(), "Y2": self.Y_i2.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KaratiPublicKey":
        return cls(suite.deserialize(d["Y1"], Group.G1), suite.deserialize(d["Y2"], Group.GT))


@dataclass(frozen=True)
class KaratiSignature:
    sigma1: GroupElement
    sigma2: GroupElement

    def to_json(self) -> dict:
        return {"sigma1": self.sigma1.encode(), "sigma2": self.sigma2.encode()}

    @classmethod
    def from_json(cls, suite, d) -> "KaratiSignature":
        return cls(suite.deserialize(d["sigma1"], Group.GT), suite.deserialize(d["sigma2"], Group.G1))


def karati_setup(suite: PairingSuite, rng):
    y = suite.random_scalar(rng)
    g2 = suite.pair(suite.g1, suite.g1) ** y
    return KaratiParams(suite, g2, suite.g1 ** y), KaratiMasterSecret(y)


def karati_extract_partial_key(params: KaratiParams, msk: KaratiMasterSecret,
                               identity, rng) -> KaratiPartialKey:
    suite = params.suite
    h = identity_hash(suite, identity)
    y = msk.y
    while True:
        r = suite.random_scalar(rng)
        denom = h + r + y
        if denom:
            break
    g1 = suite.g1
    return KaratiPartialKey(g1 ** (y * h / denom), g1 ** r)


def _signing_base(params: KaratiParams, h: Scalar, R: GroupElement) -> GroupElement:
    g1 = params.suite.g1
    return g1 ** h * R * params.Y_KGC


def partial_key_sides(params: KaratiParams, identity, pk: KaratiPartialKey):
    """Both sides of ``e(g1, Y_KGC)^h == e(y_i, g1^h * R_i * Y_KGC)``."""
    suite = params.suite
    h = identity_hash(suite, identity)
    lhs = suite.pair(suite.g1, params.Y_KGC) ** h
    rhs = suite.pair(pk.y_i, _signing_base(params, h, pk.R_i))
    return lhs, rhs


def karati_verify_partial_key(params: KaratiParams, identity, pk: KaratiPartialKey) -> bool:
    """User-side genuineness check on a partial key received from the KGC."""
    lhs, rhs = partial_key_sides(params, identity, pk)
    return lhs == rhs


def karati_set_private_key(partial: KaratiPartialKey, rng) -> KaratiPrivateKey:
    suite = partial.R_i.suite
    c = suite.random_scalar(rng)
    x = suite.random_scalar(rng)
    return KaratiPrivateKey(c, x, partial.R_i)


def karati_set_public_key(params: KaratiParams, partial: KaratiPartialKey,
                          sk: KaratiPrivateKey) -> KaratiPublicKey:
    return KaratiPublicKey(partial.y_i ** sk.x_i.inverse(), params.g2 ** sk.c_i)


def karati_sign(params: KaratiParams, identity, sk: KaratiPrivateKey, m: Message,
                rng) -> KaratiSignature:
    suite = params.suite
    h = identity_hash(suite, identity)
    mbar = message_scalar(suite, m)
    t = suite.random_scalar(rng)
    sigma1 = params.g2 ** t
    sigma2 = _signing_base(params, h, sk.R_i) ** ((sk.c_i / mbar - t) * sk.x_i)
    return KaratiSignature(sigma1, sigma2)


def verification_sides(params: KaratiParams, identity, pk: KaratiPublicKey, m: Message,
                       sig: KaratiSignature):
    """Both sides of ``(Y_S2^(1/m) / sigma1)^h == e(Y_S1, sigma2)``."""
    suite = params.suite
    h = identity_hash(suite, identity)
    mbar = message_scalar(suite, m)
    lhs = (pk.Y_i2 ** mbar.inverse() / sig.sigma1) ** h
    rhs = suite.pair(pk.Y_i1, sig.sigma2)
    return lhs, rhs


def karati_verify(params: KaratiParams, identity, pk: KaratiPublicKey, m: Message,
                  sig: KaratiSignature) -> bool:
    lhs, rhs = verification_sides(params, identity, pk, m, sig)
    return lhs == rhs
