"""Symmetric bilinear pairing abstraction and the exponent-transparent mock backend.

Both analysed schemes assume a type-1 pairing ``e: G1 x G1 -> GT``.  The
:class:`PairingSuite` base class is the backend interface; :class:`MockSuite`
is the only shipped backend.  It stores every group element as its discrete
logarithm with respect to the group generator, so it is cryptographically
worthless but lets tests recompute every exponent with plain integers.

Group elements support two notations so scheme code can read like the
original algebra::

    a * b, a / b, a ** k      # multiplicative (Karati)
    a + b, a - b, k * a       # additive (Kumar)
"""
from __future__ import annotations

import enum
import hashlib
from abc import ABC, abstractmethod
from typing import Mapping, Optional, Union

from .errors import GroupMismatch, MalformedEncoding, ZeroInverse


class Group(str, enum.Enum):
    G1 = "G1"
    GT = "GT"


class HashTag(enum.Enum):
    """Single-byte domain-separation prefixes."""

    H = b"\x01"
    H1 = b"\x02"
    H2 = b"\x03"
    H3 = b"\x04"
    MSG = b"\x05"


IntLike = Union[int, "Scalar"]


def _same_suite(a: "PairingSuite", b: "PairingSuite") -> bool:
    return a is b or a.id == b.id


class Scalar:
    """Element of Z_q bound to a suite."""

    __slots__ = ("value", "suite")

    def __init__(self, value: int, suite: "PairingSuite"):
        self.value = value % suite.q
        self.suite = suite

    def _coerce(self, other) -> int:
        if isinstance(other, Scalar):
            if not _same_suite(self.suite, other.suite):
                raise GroupMismatch(f"scalar from {other.suite.id} used with {self.suite.id}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else Scalar(self.value + v, self.suite)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else Scalar(self.value - v, self.suite)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else Scalar(v - self.value, self.suite)

    def __mul__(self, other):
        if isinstance(other, GroupElement):
            return other ** self
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else Scalar(self.value * v, self.suite)

    def __rmul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else Scalar(self.value * v, self.suite)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self * Scalar(v, self.suite).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(v, self.suite) * self.inverse()

    def __neg__(self):
        return Scalar(-self.value, self.suite)

    def inverse(self) -> "Scalar":
        if self.value == 0:
            raise ZeroInverse("0 has no inverse mod q")
        return Scalar(pow(self.value, -1, self.suite.q), self.suite)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return _same_suite(self.suite, other.suite) and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.suite.q
        return NotImplemented

    def __hash__(self):
        return hash((self.suite.id, "S", self.value))

    def encode(self) -> str:
        return f"{self.suite.id}:S:{self.value}"

    def __repr__(self):
        return f"Scalar({self.encode()})"


class GroupElement:
    """Opaque member of G1 or GT; ``payload`` is backend specific."""

    __slots__ = ("suite", "group", "payload")

    def __init__(self, suite: "PairingSuite", group: Group, payload):
        self.suite = suite
        self.group = group
        self.payload = payload

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if not _same_suite(self.suite, other.suite):
            raise GroupMismatch(f"{other.suite.id} element combined with {self.suite.id}")
        if self.group != other.group:
            raise GroupMismatch(f"{other.group.value} element combined with {self.group.value}")

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return NotImplemented
        self._check(other)
        return GroupElement(self.suite, self.group, self.suite._op(self.group, self.payload, other.payload))

    __add__ = __mul__

    def inverse(self) -> "GroupElement":
        return GroupElement(self.suite, self.group, self.suite._inv(self.group, self.payload))

    __invert__ = inverse
    __neg__ = inverse

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    __sub__ = __truediv__

    def __pow__(self, k: IntLike):
        if isinstance(k, Scalar):
            if not _same_suite(self.suite, k.suite):
                raise GroupMismatch(f"scalar from {k.suite.id} used with {self.suite.id}")
            k = k.value
        elif not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.suite, self.group, self.suite._exp(self.group, self.payload, k % self.suite.q))

    def __rmul__(self, k: IntLike):
        return self.__pow__(k)

    def is_identity(self) -> bool:
        return self == self.suite.identity(self.group)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (_same_suite(self.suite, other.suite) and self.group == other.group
                and self.payload == other.payload)

    def __hash__(self):
        return hash((self.suite.id, self.group.value, self.payload))

    def encode(self) -> str:
        return self.suite.serialize(self)

    def __repr__(self):
        return f"GroupElement({self.encode()})"


class PairingSuite(ABC):
    """Backend interface: a prime-order symmetric bilinear group plus hashes.

    Subclasses supply the payload-level group law, exponentiation, pairing,
    hashing onto G1 and the payload text codec.  Everything else is generic.
    """

    id: str
    q: int
    digest: str

    @abstractmethod
    def _op(self, group: Group, a, b): ...

    @abstractmethod
    def _inv(self, group: Group, a): ...

    @abstractmethod
    def _exp(self, group: Group, a, k: int): ...

    @abstractmethod
    def _pair(self, a, b): ...

    @abstractmethod
    def _identity_payload(self, group: Group): ...

    @abstractmethod
    def _generator_payload(self, group: Group): ...

    @abstractmethod
    def _hash_to_g1_payload(self, tag: HashTag, data: bytes): ...

    @abstractmethod
    def _encode_payload(self, group: Group, payload) -> str: ...

    @abstractmethod
    def _decode_payload(self, group: Group, text: str): ...

    # generic surface

    def scalar(self, value: int) -> Scalar:
        return Scalar(value, self)

    def random_scalar(self, rng) -> Scalar:
        """Uniform element of Z*_q drawn from ``rng`` (a ``random.Random``-like source)."""
        return Scalar(rng.randrange(1, self.q), self)

    def identity(self, group: Group) -> GroupElement:
        return GroupElement(self, group, self._identity_payload(group))

    @property
    def g1(self) -> GroupElement:
        return GroupElement(self, Group.G1, self._generator_payload(Group.G1))

    @property
    def gt(self) -> GroupElement:
        return GroupElement(self, Group.GT, self._generator_payload(Group.GT))

    def pair(self, a: GroupElement, b: GroupElement) -> GroupElement:
        for x in (a, b):
            if not _same_suite(self, x.suite):
                raise GroupMismatch(f"{x.suite.id} element paired under {self.id}")
            if x.group != Group.G1:
                raise GroupMismatch("pairing arguments must lie in G1")
        return GroupElement(self, Group.GT, self._pair(a.payload, b.payload))

    def hash_to_scalar(self, tag: HashTag, data: bytes) -> Scalar:
        """Hash into Z*_q: ``(digest mod (q-1)) + 1``; never returns zero."""
        digest = hashlib.new(self.digest, tag.value + bytes(data)).digest()
        return Scalar(int.from_bytes(digest, "big") % (self.q - 1) + 1, self)

    def hash_to_group(self, tag: HashTag, data: bytes) -> GroupElement:
        if tag not in (HashTag.H1, HashTag.H2):
            raise ValueError(f"hash_to_group takes H1 or H2, not {tag.name}")
        return GroupElement(self, Group.G1, self._hash_to_g1_payload(tag, bytes(data)))

    def serialize(self, e: GroupElement) -> str:
        return f"{self.id}:{e.group.value}:{self._encode_payload(e.group, e.payload)}"

    def deserialize(self, text: Union[str, bytes], group: Optional[Group] = None) -> GroupElement:
        if isinstance(text, bytes):
            try:
                text = text.decode("ascii")
            except UnicodeDecodeError as exc:
                raise MalformedEncoding("element encoding is not ASCII") from exc
        parts = text.split(":")
        if len(parts) != 3:
            raise MalformedEncoding(f"expected <suite>:<group>:<payload>, got {text!r}")
        suite_id, tag, body = parts
        if suite_id != self.id:
            raise MalformedEncoding(f"suite id {suite_id!r} does not match {self.id!r}")
        try:
            found = Group(tag)
        except ValueError:
            raise MalformedEncoding(f"unknown group tag {tag!r}") from None
        if group is not None and found != group:
            raise MalformedEncoding(f"expected a {group.value} element, got {tag}")
        return GroupElement(self, found, self._decode_payload(found, body))

    def deserialize_scalar(self, text: str) -> Scalar:
        parts = text.split(":") if isinstance(text, str) else []
        if len(parts) != 3 or parts[1] != "S":
            raise MalformedEncoding(f"expected <suite>:S:<decimal>, got {text!r}")
        if parts[0] != self.id:
            raise MalformedEncoding(f"suite id {parts[0]!r} does not match {self.id!r}")
        return Scalar(_parse_canonical_int(parts[2], self.q), self)

    def __eq__(self, other):
        if not isinstance(other, PairingSuite):
            return NotImplemented
        return self.id == other.id

    def __hash__(self):
        return hash(self.id)


def _parse_canonical_int(body: str, bound: int) -> int:
    # Canonical decimal only, so that distinct strings never decode to the same value.
    if not body.isascii() or not body.isdigit() or (len(body) > 1 and body[0] == "0"):
        raise MalformedEncoding(f"bad decimal {body!r}")
    value = int(body)
    if value >= bound:
        raise MalformedEncoding(f"value {value} out of range [0, {bound})")
    return value


class MockSuite(PairingSuite):
    """Exponent-transparent backend: each payload is the element's discrete log.

    ``pins`` maps ``(HashTag, data)`` to a fixed hash output and exists only to
    reproduce hand-checkable fixtures; production use leaves it empty.
    """

    def __init__(self, q: int = 101, digest: str = "sha256",
                 pins: Optional[Mapping[tuple, int]] = None):
        from sympy import isprime

        if not isprime(q):
            raise ValueError(f"q={q} is not prime")
        self.q = q
        self.digest = digest
        hashlib.new(digest)  # fail early on unknown digest names
        self.id = f"mock{q}"
        self.pins = dict(pins or {})

    def _op(self, group, a, b):
        return (a + b) % self.q

    def _inv(self, group, a):
        return -a % self.q

    def _exp(self, group, a, k):
        return a * k % self.q

    def _pair(self, a, b):
        return a * b % self.q

    def _identity_payload(self, group):
        return 0

    def _generator_payload(self, group):
        return 1

    def hash_to_scalar(self, tag, data):
        key = (tag, bytes(data))
        if key in self.pins:
            return Scalar(self.pins[key], self)
        return super().hash_to_scalar(tag, data)

    def _hash_to_g1_payload(self, tag, data):
        return self.hash_to_scalar(tag, data).value

    def _encode_payload(self, group, payload):
        return str(payload)

    def _decode_payload(self, group, text):
        return _parse_canonical_int(text, self.q)

    def element(self, group: Group, exponent: int) -> GroupElement:
        """Build generator**exponent directly (test and fixture helper)."""
        return GroupElement(self, group, exponent % self.q)

    def discrete_log(self, e: GroupElement) -> int:
        if not _same_suite(self, e.suite):
            raise GroupMismatch(f"{e.suite.id} element inspected under {self.id}")
        return e.payload

    def __repr__(self):
        return f"MockSuite(q={self.q})"


# Operation-level wrappers mirroring the documented operation names.

def group_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def group_exp(a: GroupElement, s: IntLike) -> GroupElement:
    return a ** s


def pairing(a: GroupElement, b: GroupElement) -> GroupElement:
    if not _same_suite(a.suite, b.suite):
        raise GroupMismatch(f"cannot pair {a.suite.id} with {b.suite.id}")
    return a.suite.pair(a, b)


def scalar_inverse(s: Scalar) -> Scalar:
    return s.inverse()


def hash_to_scalar(suite: PairingSuite, tag: HashTag, data: bytes) -> Scalar:
    return suite.hash_to_scalar(tag, data)


def hash_to_group(suite: PairingSuite, tag: HashTag, data: bytes) -> GroupElement:
    return suite.hash_to_group(tag, data)


def serialize_element(e: GroupElement) -> bytes:
    return e.suite.serialize(e).encode("ascii")


def deserialize_element(suite: PairingSuite, data: Union[str, bytes],
                        group: Optional[Group] = None) -> GroupElement:
    return suite.deserialize(data, group)


def suite_from_backend(name: str) -> MockSuite:
    """Resolve a backend id such as ``mock101`` into a suite."""
    if not name.startswith("mock") or not name[4:].isdigit():
        raise ValueError(f"unknown backend {name!r}; only mock<q> is available")
    return MockSuite(int(name[4:]))
