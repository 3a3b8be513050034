"""Partial-key mauling against the Karati scheme.

Given any one genuine partial key ``(y_S, R_S)`` for ``ID_S``, anyone can
produce a partial key for an arbitrary identity ``ID_T`` that passes the
user-side genuineness check::

    alpha = h_T / h_S
    y_T   = y_S ** alpha
    R_T   = R_S / g1 ** ((alpha - 1) * h_S)

because then ``g1^h_T * R_T == g1^h_S * R_S`` and the pairing equation scales
by ``alpha`` on both sides.  Only public parameters are consumed; the master
secret is never needed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputKey
from .karati import (
    KaratiParams,
    KaratiPartialKey,
    KaratiPrivateKey,
    KaratiPublicKey,
    KaratiSignature,
    Message,
    as_bytes,
    identity_hash,
    karati_set_private_key,
    karati_set_public_key,
    karati_sign,
    karati_verify_partial_key,
)
from .pairing import Scalar


@dataclass(frozen=True)
class KaratiForgeryBundle:
    """Full forged key material for ``target_id``.

    ``public_key`` is not the target's registered key, so inside Game 1 it
    has to be installed with a Replace-Public-Key query before the forgery
    verifies against the key in effect.
    """

    target_id: bytes
    partial_key: KaratiPartialKey
    private_key: KaratiPrivateKey
    public_key: KaratiPublicKey
    message: Message
    signature: KaratiSignature
    alpha: Scalar


def karati_forge_partial_key(params: KaratiParams, known: tuple, target_id):
    """Return ``(forged_partial_key, alpha)`` for ``target_id``.

    ``known`` is ``(ID_S, KaratiPartialKey)`` for any identity whose partial
    key the adversary holds.
    """
    source_id, source_key = known
    if not karati_verify_partial_key(params, source_id, source_key):
        raise InvalidInputKey("known partial key fails the genuineness check")
    suite = params.suite
    h_source = identity_hash(suite, source_id)
    h_target = identity_hash(suite, target_id)
    alpha = h_target / h_source
    forged = KaratiPartialKey(
        source_key.y_i ** alpha,
        source_key.R_i / suite.g1 ** ((alpha - 1) * h_source),
    )
    return forged, alpha


def karati_forge_signature(params: KaratiParams, known: tuple, target_id, m: Message,
                           rng) -> KaratiForgeryBundle:
    forged, alpha = karati_forge_partial_key(params, known, target_id)
    sk = karati_set_private_key(forged, rng)
    pk = karati_set_public_key(params, forged, sk)
    sig = karati_sign(params, target_id, sk, m, rng)
    return KaratiForgeryBundle(as_bytes(target_id), forged, sk, pk, m, sig, alpha)
