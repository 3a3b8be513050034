"""Hand-checkable fixtures F1 (Karati) and F2 (Kumar) at q = 101.

Hash outputs are pinned and every random draw is scripted, so each element
of the run has a small exponent that can be recomputed by hand.  The
``demo --pinned-hash`` command prints these reports and the committed golden
files under ``tests/golden`` are exactly their JSON form.
"""
from __future__ import annotations

from . import karati, kumar
from .karati_attack import karati_forge_partial_key
from .kumar_attack import kumar_forge_type1, kumar_forge_type2, kumar_recover_delta_key
from .pairing import Group, HashTag, MockSuite

FIXTURE_Q = 101


class ScriptedRandom:
    """Stand-in for ``random.Random`` whose ``randrange`` replays fixed draws."""

    def __init__(self, draws):
        self._draws = list(draws)

    def randrange(self, start, stop=None, step=1):
        if not self._draws:
            raise RuntimeError("scripted randomness exhausted")
        value = self._draws.pop(0)
        lo, hi = (0, start) if stop is None else (start, stop)
        if not lo <= value < hi:
            raise ValueError(f"scripted draw {value} outside [{lo}, {hi})")
        return value

    @property
    def remaining(self):
        return len(self._draws)


# F1: y=7, h_S=11, r_S=3, c_S=5, x_S=2, mbar=9, t=4; forged target hash 22.
F1_SOURCE_ID = b"alice"
F1_TARGET_ID = b"bob"
F1_MESSAGE = b"hello"
F1_PINS = {
    (HashTag.H, F1_SOURCE_ID): 11,
    (HashTag.H, F1_TARGET_ID): 22,
    (HashTag.MSG, F1_MESSAGE): 9,
}
F1_DRAWS = [7, 3, 5, 2, 4]

# F2: alpha=7, Q_ID=13, x_S=5, W=9, sign r=4 h=6, forge h'=2, type-2 r=10 h=8.
F2_ID = b"alice"
F2_DELTA = b"state-0"
F2_MESSAGE = b"hello"
F2_NEW_MESSAGE = b"hello again"
F2_KGC_MESSAGE = b"forged by kgc"
F2_DRAWS = [7, 5, 4, 10]


def f1_suite() -> MockSuite:
    return MockSuite(FIXTURE_Q, pins=F1_PINS)


def f2_suite() -> MockSuite:
    base = MockSuite(FIXTURE_Q)
    Y = base.element(Group.G1, 5)
    pins = {
        (HashTag.H1, F2_ID): 13,
        (HashTag.H2, F2_DELTA): 9,
        (HashTag.H3, kumar.h3_input(F2_MESSAGE, F2_ID, Y, base.element(Group.G1, 4))): 6,
        (HashTag.H3, kumar.h3_input(F2_NEW_MESSAGE, F2_ID, Y, base.element(Group.G1, 4))): 2,
        (HashTag.H3, kumar.h3_input(F2_KGC_MESSAGE, F2_ID, Y, base.element(Group.G1, 10))): 8,
    }
    return MockSuite(FIXTURE_Q, pins=pins)


def run_f1() -> dict:
    suite = f1_suite()
    rng = ScriptedRandom(F1_DRAWS)
    params, msk = karati.karati_setup(suite, rng)
    partial = karati.karati_extract_partial_key(params, msk, F1_SOURCE_ID, rng)
    eq1 = karati.partial_key_sides(params, F1_SOURCE_ID, partial)
    sk = karati.karati_set_private_key(partial, rng)
    pk = karati.karati_set_public_key(params, partial, sk)
    sig = karati.karati_sign(params, F1_SOURCE_ID, sk, F1_MESSAGE, rng)
    lhs, rhs = karati.verification_sides(params, F1_SOURCE_ID, pk, F1_MESSAGE, sig)
    forged, alpha = karati_forge_partial_key(params, (F1_SOURCE_ID, partial), F1_TARGET_ID)
    forged_eq1 = karati.partial_key_sides(params, F1_TARGET_ID, forged)
    assert rng.remaining == 0
    return {
        "fixture": "F1",
        "scheme": "karati",
        "suite": suite.id,
        "params": params.to_json(),
        "master_secret": msk.to_json(),
        "partial_key": partial.to_json(),
        "partial_key_check": {"lhs": eq1[0].encode(), "rhs": eq1[1].encode()},
        "private_key": sk.to_json(),
        "public_key": pk.to_json(),
        "signature": sig.to_json(),
        "verify": {"lhs": lhs.encode(), "rhs": rhs.encode(), "result": "VALID" if lhs == rhs else "INVALID"},
        "attack": {
            "alpha": alpha.encode(),
            "forged_partial_key": forged.to_json(),
            "forged_partial_key_check": {"lhs": forged_eq1[0].encode(), "rhs": forged_eq1[1].encode()},
        },
    }


def run_f2() -> dict:
    suite = f2_suite()
    rng = ScriptedRandom(F2_DRAWS)
    params, msk = kumar.kumar_setup(suite, rng)
    partial = kumar.kumar_extract_partial_key(params, msk, F2_ID)
    sk = kumar.kumar_set_private_key(partial, rng)
    pk = kumar.kumar_set_public_key(params, sk)
    sig = kumar.kumar_sign(params, F2_ID, pk, sk, F2_DELTA, F2_MESSAGE, rng)
    lhs, rhs = kumar.verification_sides(params, F2_ID, pk, F2_DELTA, F2_MESSAGE, sig)
    dbk = kumar_recover_delta_key(params, F2_ID, pk, sk.x_i, (F2_MESSAGE, sig))
    forged1 = kumar_forge_type1(params, F2_ID, pk, dbk, sk.x_i, F2_NEW_MESSAGE)
    f1_lhs, f1_rhs = kumar.verification_sides(params, F2_ID, pk, F2_DELTA, F2_NEW_MESSAGE, forged1)
    forged2 = kumar_forge_type2(params, msk, F2_ID, pk, F2_DELTA, F2_KGC_MESSAGE, rng)
    f2_lhs, f2_rhs = kumar.verification_sides(params, F2_ID, pk, F2_DELTA, F2_KGC_MESSAGE, forged2)
    assert rng.remaining == 0

    def sides(a, b):
        return {"lhs": a.encode(), "rhs": b.encode(), "result": "VALID" if a == b else "INVALID"}

    return {
        "fixture": "F2",
        "scheme": "kumar",
        "suite": suite.id,
        "params": params.to_json(),
        "master_secret": msk.to_json(),
        "partial_key": partial.to_json(),
        "private_key": sk.to_json(),
        "public_key": pk.to_json(),
        "signature": sig.to_json(),
        "verify": sides(lhs, rhs),
        "type1": {
            "D_S_delta": dbk.D_S_delta.encode(),
            "signature": forged1.to_json(),
            "verify": sides(f1_lhs, f1_rhs),
        },
        "type2": {
            "signature": forged2.to_json(),
            "verify": sides(f2_lhs, f2_rhs),
        },
    }


FIXTURES = {"karati": run_f1, "kumar": run_f2}
