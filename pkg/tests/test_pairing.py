import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clsforge.errors import GroupMismatch, MalformedEncoding, ZeroInverse
from clsforge.pairing import (
    Group,
    HashTag,
    MockSuite,
    deserialize_element,
    group_exp,
    group_mul,
    hash_to_group,
    hash_to_scalar,
    pairing,
    scalar_inverse,
    serialize_element,
    suite_from_backend,
)
from oracle.modular_oracle import egcd_inverse

PRIMES = [101, 65537, 2 ** 31 - 1, 4294967311, 2 ** 61 - 1]


def g1(suite, e):
    return suite.element(Group.G1, e)


def gt(suite, e):
    return suite.element(Group.GT, e)


def test_group_mul_examples(suite):
    assert group_mul(g1(suite, 3), g1(suite, 5)) == g1(suite, 8)
    assert group_mul(g1(suite, 60), g1(suite, 60)) == g1(suite, 19)
    x = g1(suite, 42)
    assert group_mul(x, suite.identity(Group.G1)) == x


def test_group_mul_rejects_mixed_groups(suite):
    with pytest.raises(GroupMismatch):
        group_mul(g1(suite, 3), gt(suite, 3))
    with pytest.raises(GroupMismatch):
        group_mul(g1(suite, 3), g1(MockSuite(103), 3))


def test_group_exp_examples(suite):
    assert group_exp(g1(suite, 7), suite.scalar(0)).is_identity()
    assert group_exp(g1(suite, 7), suite.scalar(1)) == g1(suite, 7)
    assert group_exp(g1(suite, 11), suite.scalar(21)) == g1(suite, 29)
    with pytest.raises(GroupMismatch):
        group_exp(g1(suite, 11), MockSuite(103).scalar(2))


def test_pairing_examples(suite):
    assert pairing(g1(suite, 3), g1(suite, 5)) == gt(suite, 15)
    assert pairing(suite.identity(Group.G1), g1(suite, 9)).is_identity()
    with pytest.raises(GroupMismatch):
        pairing(gt(suite, 1), g1(suite, 1))


def test_pairing_symmetry_scan(suite):
    r = random.Random(5)
    for _ in range(100):
        a, b = r.randrange(101), r.randrange(101)
        assert pairing(g1(suite, a), g1(suite, b)) == pairing(g1(suite, b), g1(suite, a))
        assert suite.discrete_log(pairing(g1(suite, a), g1(suite, b))) == a * b % 101


def test_non_degenerate(suite):
    assert pairing(suite.g1, suite.g1) == suite.gt
    assert not pairing(suite.g1, suite.g1).is_identity()


def test_scalar_inverse_examples(suite, oracle_vectors):
    assert scalar_inverse(suite.scalar(21)) == 77 == oracle_vectors["pairing"]["inv_21"]
    assert scalar_inverse(suite.scalar(9)) == 45 == oracle_vectors["pairing"]["inv_9"]
    assert scalar_inverse(suite.scalar(1)) == 1
    with pytest.raises(ZeroInverse):
        scalar_inverse(suite.scalar(0))


@pytest.mark.parametrize("q", PRIMES)
def test_scalar_inverse_matches_extended_euclid(q):
    s = MockSuite(q)
    r = random.Random(q)
    for _ in range(200):
        v = r.randrange(1, q)
        assert scalar_inverse(s.scalar(v)).value == egcd_inverse(v, q)


def test_hash_to_scalar_range_and_determinism(suite):
    r = random.Random(9)
    for _ in range(1000):
        data = r.randbytes(r.randrange(0, 40))
        h = hash_to_scalar(suite, HashTag.H, data)
        assert 1 <= h.value < 101
        assert h == hash_to_scalar(suite, HashTag.H, data)


def test_hash_tags_are_separated():
    s = MockSuite(2 ** 61 - 1)
    r = random.Random(10)
    for _ in range(100):
        data = r.randbytes(16)
        assert hash_to_scalar(s, HashTag.H, data) != hash_to_scalar(s, HashTag.H3, data)
        assert hash_to_group(s, HashTag.H1, data) != hash_to_group(s, HashTag.H2, data)


def test_hash_to_group(suite):
    r = random.Random(11)
    for _ in range(1000):
        data = r.randbytes(12)
        e = hash_to_group(suite, HashTag.H1, data)
        assert e.group is Group.G1 and not e.is_identity()
        assert suite.discrete_log(e) == hash_to_scalar(suite, HashTag.H1, data).value
    assert hash_to_group(suite, HashTag.H1, b"x") == hash_to_group(suite, HashTag.H1, b"x")
    with pytest.raises(ValueError):
        hash_to_group(suite, HashTag.H3, b"x")


def test_hash_pins_override():
    s = MockSuite(101, pins={(HashTag.H, b"alice"): 11})
    assert hash_to_scalar(s, HashTag.H, b"alice") == 11
    assert hash_to_scalar(s, HashTag.H, b"bob") == hash_to_scalar(MockSuite(101), HashTag.H, b"bob")


def test_serialization(suite):
    e = g1(suite, 42)
    assert serialize_element(e) == b"mock101:G1:42"
    assert deserialize_element(suite, serialize_element(e)) == e
    assert suite.deserialize_scalar(suite.scalar(5).encode()) == 5
    with pytest.raises(MalformedEncoding):
        deserialize_element(suite, b"mock101:G1:101")
    with pytest.raises(MalformedEncoding):
        deserialize_element(suite, b"mock101:G1:42", Group.GT)
    for bad in (b"mock103:G1:1", b"mock101:G2:1", b"mock101:G1:-1", b"mock101:G1:007", b"mock101:G1"):
        with pytest.raises(MalformedEncoding):
            deserialize_element(suite, bad)


def test_backend_ids():
    assert suite_from_backend("mock101").q == 101
    with pytest.raises(ValueError):
        suite_from_backend("bn254")
    with pytest.raises(ValueError):
        MockSuite(100)


@st.composite
def suite_and_exponents(draw, n=3):
    q = draw(st.sampled_from(PRIMES))
    return MockSuite(q), [draw(st.integers(0, q - 1)) for _ in range(n)]


@settings(max_examples=200)
@given(suite_and_exponents())
def test_group_laws(arg):
    s, (a, b, c) = arg
    A, B, C = g1(s, a), g1(s, b), g1(s, c)
    one = s.identity(Group.G1)
    assert (A * B) * C == A * (B * C)
    assert A * B == B * A
    assert A * one == A
    assert A * A.inverse() == one
    assert s.g1 ** (a + b) == s.g1 ** a * s.g1 ** b


@settings(max_examples=200)
@given(suite_and_exponents())
def test_bilinearity(arg):
    s, (a, b, k) = arg
    A, B = s.g1 ** a, s.g1 ** b
    assert pairing(A ** k, B) == pairing(A, B) ** k == pairing(A, B ** k)
    assert pairing(A, B) == s.gt ** (a * b)


@settings(max_examples=200)
@given(st.sampled_from(PRIMES), st.data())
def test_scalar_field_laws(q, data):
    s = MockSuite(q)
    a, b = (s.scalar(data.draw(st.integers(0, q - 1))) for _ in range(2))
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
        assert b / a * a == b
