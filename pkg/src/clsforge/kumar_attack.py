"""Forgeries against the Kumar scheme.

Type 1 (outsider holding the signer's secret value ``x_S``): one observed
signature ``(R, V)`` under ``delta`` leaks ``D_S + r*W`` once the ``h*x_S*P_pub``
term is stripped, and that value signs any other message under the same
``delta`` by reusing ``R``.

Type 2 (the KGC): ``h*alpha*Y_S`` equals ``h*x_S*P_pub``, so the master secret
stands in for the signer's secret value and no signature or secret-value
query is needed at all.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidObservation
from .karati import as_bytes
from .kumar import (
    KumarMasterSecret,
    KumarParams,
    KumarPublicKey,
    KumarSignature,
    h3,
    kumar_extract_partial_key,
    kumar_verify,
    q_id,
    state_point,
)
from .pairing import GroupElement, Scalar


@dataclass(frozen=True)
class DeltaBoundKey:
    """``D_S + r*W`` for the ``r`` committed in ``R``; usable only under ``delta``."""

    D_S_delta: GroupElement
    delta: bytes
    R: GroupElement

    def is_consistent(self, params: KumarParams, identity) -> bool:
        """``e(D_S_delta, P) == e(Q_ID, P_pub) * e(R, W)``."""
        suite = params.suite
        W = state_point(suite, self.delta)
        return (suite.pair(self.D_S_delta, params.P)
                == suite.pair(q_id(suite, identity), params.P_pub) * suite.pair(self.R, W))


def kumar_recover_delta_key(params: KumarParams, identity, pk: KumarPublicKey, x_S: Scalar,
                            observed: tuple) -> DeltaBoundKey:
    """Strip the message-dependent term from an observed ``(m, signature)`` pair."""
    m, sig = observed
    if not kumar_verify(params, identity, pk, sig.delta, m, sig):
        raise InvalidObservation("observed signature does not verify")
    h = h3(params.suite, m, identity, pk.Y_i, sig.R)
    return DeltaBoundKey(sig.V - (x_S * h) * params.P_pub, sig.delta, sig.R)


def kumar_forge_type1(params: KumarParams, identity, pk: KumarPublicKey, dbk: DeltaBoundKey,
                      x_S: Scalar, m_new) -> KumarSignature:
    h_new = h3(params.suite, m_new, identity, pk.Y_i, dbk.R)
    return KumarSignature(dbk.R, dbk.D_S_delta + (h_new * x_S) * params.P_pub, dbk.delta)


def kumar_forge_type2(params: KumarParams, msk: KumarMasterSecret, identity, pk: KumarPublicKey,
                      delta, m, rng) -> KumarSignature:
    suite = params.suite
    D_S = kumar_extract_partial_key(params, msk, identity).D_i
    r = suite.random_scalar(rng)
    R = r * params.P
    h = h3(suite, m, identity, pk.Y_i, R)
    V = D_S + r * state_point(suite, delta) + (h * msk.alpha) * pk.Y_i
    return KumarSignature(R, V, as_bytes(delta))
