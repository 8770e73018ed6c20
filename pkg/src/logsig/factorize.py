"""Recovering the unique factorization of a group element with respect to a
signature: constant lookups per level for transversal-structured (tame)
signatures, meet-in-the-middle for everything else.
"""

from __future__ import annotations

from math import prod

from .chain import StabilizerChain
from .perm import Permutation, _identity_raw, _inv_raw, _mul_raw
from .signature import LogSignature

__all__ = ["TameIndexer", "FactorizationError", "factorize_tame",
           "factorize_generic", "reconstruct"]


class FactorizationError(ValueError):
    """Element has no factorization: not a member, or the signature is corrupt."""


class TameIndexer:
    """Per-level lookup tables turning base-point images into block digits.

    For each chain level covered by the signature, the table maps the image
    of the level's base point under a product-set element to that element's
    digit tuple and inverse, so factorization reads one digit group per level
    and strips it off, at cost O(levels * degree) per element.  Construction
    expands each level's product set, which is at most orbit-sized.
    """

    def __init__(self, ls: LogSignature, chain: StabilizerChain):
        ann = ls.provenance.annotations
        if ls.provenance.tag not in ("chain", "refined") or ann is None:
            raise ValueError("tame factorization needs chain or refined "
                             "provenance with level annotations")
        if ls.degree != chain.degree:
            raise ValueError("degree mismatch")
        self.ls = ls
        self.chain = chain
        grouped: dict[int, list[int]] = {}
        for bi, a in enumerate(ann):
            grouped.setdefault(a.level, []).append(bi)
        self._levels = []
        for level in sorted(grouped):
            block_ids = grouped[level]
            lv = chain.levels[level]
            table: dict[int, tuple[tuple[int, ...], object]] = {}
            sizes = [len(ls.blocks[bi]) for bi in block_ids]
            if prod(sizes) != len(lv.orbit):
                raise ValueError("level %d blocks enumerate %d products, orbit has %d"
                                 % (level, prod(sizes), len(lv.orbit)))
            raws = [[e.img for e in ls.blocks[bi]] for bi in block_ids]

            def expand(i, pre, digits):
                if i == len(raws):
                    image = pre[lv.point]
                    if image in table:
                        raise ValueError("level %d products repeat image %d; "
                                         "signature is corrupt" % (level, image))
                    table[image] = (digits, _inv_raw(pre))
                    return
                for j, e in enumerate(raws[i]):
                    expand(i + 1, _mul_raw(pre, e), digits + (j,))

            expand(0, _identity_raw(ls.degree), ())
            self._levels.append((lv.point, table))

    def digits(self, g: Permutation) -> tuple[int, ...]:
        if g.degree != self.ls.degree:
            raise ValueError("degree mismatch")
        raw = g.img
        out: tuple[int, ...] = ()
        for point, table in self._levels:
            hit = table.get(raw[point])
            if hit is None:
                raise FactorizationError(
                    "no block entry matches image of point %d; element is not "
                    "a member (or the signature is corrupt)" % point)
            digits, inv_pre = hit
            out += digits
            raw = _mul_raw(inv_pre, raw)
        if any(i != j for i, j in enumerate(raw)):
            raise FactorizationError("nonidentity residue; element is not a member")
        return out


def factorize_tame(g: Permutation, indexer: TameIndexer) -> tuple[int, ...]:
    """Digit tuple of ``g``: one entry per block, ``reconstruct`` inverts it."""
    return indexer.digits(g)


def reconstruct(ls: LogSignature, digits: tuple[int, ...]) -> Permutation:
    """Product of the selected entries, leftmost block outermost."""
    if len(digits) != len(ls.blocks):
        raise ValueError("expected %d digits, got %d" % (len(ls.blocks), len(digits)))
    raw = _identity_raw(ls.degree)
    for block, d in zip(ls.blocks, digits):
        if not 0 <= d < len(block):
            raise ValueError("digit %d out of range for a block of %d" % (d, len(block)))
        raw = _mul_raw(raw, block[d].img)
    return Permutation._wrap(raw)


def factorize_generic(g: Permutation, ls: LogSignature,
                      budget: int = 10_000_000,
                      store_cap: int = 100_000) -> tuple[int, ...]:
    """Meet-in-the-middle factorization over a balanced block split.

    The blocks are split so the two half-products are as balanced as
    possible; the smaller half is expanded into a lookup table (at most
    ``store_cap`` products), the larger is scanned in enumeration order.
    Agrees with :func:`factorize_tame` wherever both apply.
    """
    if g.degree != ls.degree:
        raise ValueError("degree mismatch")
    sizes = ls.block_sizes
    total = prod(sizes)
    if total > budget:
        raise ValueError("%d products exceed the budget of %d" % (total, budget))
    s = len(sizes)
    if s == 0:
        if g.is_identity():
            return ()
        raise FactorizationError("nonidentity element, empty signature")
    split = min(range(s + 1),
                key=lambda t: (max(prod(sizes[:t]), prod(sizes[t:])), t))
    left_n, right_n = prod(sizes[:split]), prod(sizes[split:])
    if min(left_n, right_n) > store_cap:
        raise ValueError("smaller half-product %d exceeds store cap %d"
                         % (min(left_n, right_n), store_cap))

    def tuples(block_ids):
        # digit tuples and prefix products, last digit fastest
        raws = [[e.img for e in ls.blocks[bi]] for bi in block_ids]

        def rec(i, pre, digits):
            if i == len(raws):
                yield digits, pre
                return
            for j, e in enumerate(raws[i]):
                yield from rec(i + 1, _mul_raw(pre, e), digits + (j,))

        yield from rec(0, _identity_raw(ls.degree), ())

    left_ids = list(range(split))
    right_ids = list(range(split, s))
    graw = g.img
    if left_n <= right_n:
        stored = {}
        for digits, p in tuples(left_ids):
            stored.setdefault(p, digits)
        for rdigits, p in tuples(right_ids):
            ldigits = stored.get(_mul_raw(graw, _inv_raw(p)))
            if ldigits is not None:
                return ldigits + rdigits
    else:
        stored = {}
        for digits, p in tuples(right_ids):
            stored.setdefault(p, digits)
        for ldigits, p in tuples(left_ids):
            rdigits = stored.get(_mul_raw(_inv_raw(p), graw))
            if rdigits is not None:
                return ldigits + rdigits
    raise FactorizationError("element has no factorization; not a group member")
