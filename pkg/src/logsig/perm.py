"""Permutations of {0..n-1} with the composition convention (g*h)(x) = g(h(x)).

In any product written left to right the rightmost factor acts first.  Points
are 0-based throughout the in-memory API; disjoint-cycle *text* and the file
formats use 1-based points, and :func:`parse_cycles` / :func:`format_cycles`
convert at that boundary.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

__all__ = ["Permutation", "parse_cycles", "format_cycles", "CycleFormatError"]


class CycleFormatError(ValueError):
    """Malformed disjoint-cycle notation."""


# Image arrays are stored as ``bytes`` for degree <= 256 and as a tuple of
# ints otherwise.  Both are hashable, compact and O(1)-indexable; the helpers
# below are the only places that care which one they got.

def _raw(images: Iterable[int], degree: int):
    if degree <= 256:
        return bytes(images)
    return tuple(images)


def _mul_raw(a, b):
    if type(a) is bytes:
        return bytes(map(a.__getitem__, b))
    return tuple(map(a.__getitem__, b))


def _inv_raw(a):
    n = len(a)
    if type(a) is bytes:
        out = bytearray(n)
        for i, j in enumerate(a):
            out[j] = i
        return bytes(out)
    out = [0] * n
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _identity_raw(n: int):
    return _raw(range(n), n)


def _order_raw(a) -> int:
    out = 1
    seen = bytearray(len(a))
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            length += 1
        out = math.lcm(out, length)
    return out


class Permutation:
    """An immutable bijection of {0..n-1}, stored as its image array.

    ``g.img[x]`` is the image of point ``x``; ``g * h`` applies ``h`` first.
    Instances are hashable and totally determined by the image array.
    """

    __slots__ = ("img",)

    def __init__(self, images: Iterable[int]):
        seq = list(images)
        n = len(seq)
        if sorted(seq) != list(range(n)):
            raise ValueError("images do not form a bijection of 0..%d" % (n - 1))
        self.img = _raw(seq, n)

    @classmethod
    def _wrap(cls, raw) -> "Permutation":
        # internal: trusted raw image array, skips validation
        p = object.__new__(cls)
        p.img = raw
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(_identity_raw(degree))

    @classmethod
    def from_images(cls, images_1based: Iterable[int]) -> "Permutation":
        """Build from a 1-based image list, as used by the file formats."""
        return cls(x - 1 for x in images_1based)

    @property
    def degree(self) -> int:
        return len(self.img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image tuple (external convention)."""
        return tuple(x + 1 for x in self.img)

    def __call__(self, point: int) -> int:
        return self.img[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(self.img) != len(other.img):
            raise ValueError("degree mismatch: %d vs %d" % (len(self.img), len(other.img)))
        return Permutation._wrap(_mul_raw(self.img, other.img))

    def __pow__(self, exponent: int) -> "Permutation":
        n = len(self.img)
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = _identity_raw(n)
        base = self.img
        e = exponent
        while e:
            if e & 1:
                result = _mul_raw(base, result)
            base = _mul_raw(base, base)
            e >>= 1
        return Permutation._wrap(result)

    def inverse(self) -> "Permutation":
        return Permutation._wrap(_inv_raw(self.img))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.img))

    def order(self) -> int:
        """Least t >= 1 with self**t equal to the identity (lcm of cycle lengths)."""
        return _order_raw(self.img)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Canonical nontrivial cycles: each starts at its least point, sorted by it."""
        img = self.img
        seen = set()
        out = []
        for i in range(len(img)):
            if i in seen or img[i] == i:
                continue
            cyc = [i]
            j = img[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = img[j]
            out.append(tuple(cyc))
        return tuple(out)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.img) if i != j)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.img == other.img

    def __hash__(self) -> int:
        return hash(self.img)

    def __repr__(self) -> str:
        return "Permutation[%d](%s)" % (self.degree, format_cycles(self))

    def __iter__(self) -> Iterator[int]:
        return iter(self.img)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint-cycle notation, e.g. ``"(1,4,3,8)(2,5,6,9)"``.

    Fixed points are omitted; ``"()"`` denotes the identity.  Raises
    :class:`CycleFormatError` on repeated points, points outside 1..degree
    or malformed parentheses.
    """
    img = list(range(degree))
    seen: set[int] = set()
    s = "".join(text.split())
    if not s:
        raise CycleFormatError("empty permutation text")
    pos = 0
    ncycles = 0
    while pos < len(s):
        if s[pos] != "(":
            raise CycleFormatError("expected '(' at position %d in %r" % (pos, text))
        end = s.find(")", pos)
        if end < 0:
            raise CycleFormatError("unclosed '(' at position %d in %r" % (pos, text))
        body = s[pos + 1:end]
        pos = end + 1
        ncycles += 1
        if not body:
            continue
        points = []
        for tok in body.split(","):
            if not tok.isdigit():
                raise CycleFormatError("bad point %r in %r" % (tok, text))
            p = int(tok)
            if not 1 <= p <= degree:
                raise CycleFormatError("point %d out of range 1..%d" % (p, degree))
            if p - 1 in seen:
                raise CycleFormatError("repeated point %d in %r" % (p, text))
            seen.add(p - 1)
            points.append(p - 1)
        for i, p in enumerate(points):
            img[p] = points[(i + 1) % len(points)]
    if ncycles == 0:
        raise CycleFormatError("no cycles in %r" % text)
    return Permutation(img)


def format_cycles(g: Permutation) -> str:
    """Canonical 1-based cycle text; inverse of :func:`parse_cycles`."""
    cycs = g.cycles()
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycs)
