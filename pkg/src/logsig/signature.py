"""Logarithmic signatures: ordered block sequences factoring a group uniquely.

A signature ``[A_1, ..., A_s]`` is exact for a group G when every g in G is a
unique product ``a_1 * a_2 * ... * a_s`` taking one factor per block (rightmost
factor applied first, matching the package-wide composition convention).  This
module holds the data structure, its length arithmetic, the two verification
oracles and the canonical file format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import prod
from typing import IO

from .arith import PrimeFactorization
from .chain import StabilizerChain
from .perm import Permutation, _identity_raw, _mul_raw

__all__ = [
    "BlockAnnotation",
    "Provenance",
    "LogSignature",
    "VerificationReport",
    "LsFormatError",
    "VerificationBudgetError",
    "ls_length",
    "minimal_length",
    "is_minimal",
    "verify_exhaustive",
    "verify_structural",
    "write_ls",
    "read_ls",
    "dumps_ls",
    "loads_ls",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10_000_000


class LsFormatError(ValueError):
    """Malformed signature file."""


class VerificationBudgetError(RuntimeError):
    """Product count exceeds the exhaustive budget; use verify_structural."""


@dataclass(frozen=True)
class BlockAnnotation:
    """Ties one block to the stabilizer-chain level it helps cover.

    Blocks produced by splitting a level's transversal into cyclic power sets
    also record the size of the cyclic set they came from and their power
    step inside it.
    """

    level: int
    set_size: int | None = None
    step: int | None = None


@dataclass(frozen=True)
class Provenance:
    """How a signature was built: chain | refined | solvable | cyclic | manual."""

    tag: str
    annotations: tuple[BlockAnnotation, ...] | None = None

    def __post_init__(self):
        if self.tag not in ("chain", "refined", "solvable", "cyclic", "manual"):
            raise ValueError("unknown provenance tag %r" % self.tag)


@dataclass(frozen=True)
class LogSignature:
    """Ordered blocks of permutations, one factor taken per block.

    Blocks are nonempty, entries within a block pairwise distinct, all of one
    degree.  ``group`` optionally names the group the signature claims to
    factor; verification always receives the chain explicitly.
    """

    degree: int
    blocks: tuple[tuple[Permutation, ...], ...]
    group: str | None = None
    provenance: Provenance = Provenance("manual")

    def __post_init__(self):
        for bi, block in enumerate(self.blocks):
            if not block:
                raise ValueError("block %d is empty" % bi)
            if len(set(block)) != len(block):
                raise ValueError("block %d has repeated entries" % bi)
            for e in block:
                if e.degree != self.degree:
                    raise ValueError(
                        "block %d entry of degree %d in a degree-%d signature"
                        % (bi, e.degree, self.degree))
        ann = self.provenance.annotations
        if ann is not None and len(ann) != len(self.blocks):
            raise ValueError("annotation count %d != block count %d"
                             % (len(ann), len(self.blocks)))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def product_count(self) -> int:
        return prod(self.block_sizes)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a verification run.

    A failing report always carries a witness: either ``collision`` (two
    distinct digit tuples whose products agree) or a textual ``detail``
    describing the coverage deficit.
    """

    ok: bool
    method: str
    products_checked: int
    collision: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    detail: str = ""

    def __post_init__(self):
        if not self.ok and self.collision is None and not self.detail:
            raise ValueError("failing report without witness")


def ls_length(ls: LogSignature) -> int:
    """Sum of block sizes."""
    return sum(len(b) for b in ls.blocks)


def minimal_length(f: PrimeFactorization) -> int:
    """The attainable lower bound sum(a_j * p_j) for a group of the given order."""
    return sum(a * p for p, a in f.factors)


def is_minimal(ls: LogSignature, f: PrimeFactorization) -> bool:
    """Whether the signature meets the minimal-length bound for order ``f.value``."""
    if ls.product_count() != f.value:
        raise ValueError("block size product %d != order %d"
                         % (ls.product_count(), f.value))
    return ls_length(ls) == minimal_length(f)


def _digits_of(rank: int, sizes: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for r in reversed(sizes):
        rank, d = divmod(rank, r)
        out.append(d)
    out.reverse()
    return tuple(out)


class _Collision(Exception):
    def __init__(self, first_rank: int, second_rank: int):
        self.first_rank = first_rank
        self.second_rank = second_rank


def verify_exhaustive(ls: LogSignature, chain: StabilizerChain,
                      budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Enumerate every product of the signature and check pairwise distinctness.

    All block entries are required to be members of the chain's group, so
    distinctness together with a product count equal to the group order is
    equivalent to exactness.  Products are enumerated with a prefix-product
    stack (digits vary fastest in the last block) and a reported collision is
    the first one in that order.

    The index space may be partitioned by the first block's digit and checked
    in parallel workers merging per-worker seen-sets; the verdict does not
    depend on the partitioning.  This implementation runs single-threaded.
    """
    if ls.degree != chain.degree:
        raise ValueError("degree mismatch")
    sizes = ls.block_sizes
    total = ls.product_count()
    if total != chain.order:
        return VerificationReport(
            ok=False, method="exhaustive", products_checked=0,
            detail="size-product mismatch: blocks enumerate %d products, group order is %d"
                   % (total, chain.order))
    if total > budget:
        raise VerificationBudgetError(
            "%d products exceed the budget of %d; use verify_structural" % (total, budget))
    for bi, block in enumerate(ls.blocks):
        for e in block:
            if not chain.contains(e):
                raise ValueError("block %d entry %s is not a group member"
                                 % (bi, e))

    raws = [[e.img for e in block] for block in ls.blocks]
    s = len(raws)
    if s == 0:
        return VerificationReport(ok=True, method="exhaustive", products_checked=1)

    seen: dict = {}
    counter = 0
    last = s - 1
    last_block = raws[last]

    def walk(i, pre):
        nonlocal counter
        if i == last:
            for e in last_block:
                q = _mul_raw(pre, e)
                r = seen.get(q)
                if r is not None:
                    raise _Collision(r, counter)
                seen[q] = counter
                counter += 1
        else:
            for e in raws[i]:
                walk(i + 1, _mul_raw(pre, e))

    try:
        walk(0, _identity_raw(ls.degree))
    except _Collision as c:
        return VerificationReport(
            ok=False, method="exhaustive", products_checked=counter + 1,
            collision=(_digits_of(c.first_rank, sizes), _digits_of(c.second_rank, sizes)),
            detail="identical products at two index tuples")
    return VerificationReport(ok=True, method="exhaustive", products_checked=counter)


def _levels_of(ls: LogSignature) -> dict[int, list[int]]:
    """Map chain level -> ordered block indices covering it; validates shape."""
    ann = ls.provenance.annotations
    if ls.provenance.tag not in ("chain", "refined") or ann is None:
        raise ValueError("structural verification needs chain or refined "
                         "provenance with level annotations")
    grouped: dict[int, list[int]] = {}
    prev = -1
    for bi, a in enumerate(ann):
        if a.level < prev:
            raise ValueError("block annotations out of level order")
        prev = a.level
        grouped.setdefault(a.level, []).append(bi)
    return grouped


def verify_structural(ls: LogSignature, chain: StabilizerChain) -> VerificationReport:
    """Certify exactness level by level instead of by full enumeration.

    For each annotated level the covering blocks must consist of elements of
    that level's group, and the product set of those blocks must hit every
    point of the level orbit exactly once through the level's base point.
    Together with the chain's own exactness this is sound and complete for
    transversal-structured signatures, at cost O(length * degree) plus the
    expansion of each level's product set (at most the orbit size).
    """
    if ls.degree != chain.degree:
        raise ValueError("degree mismatch")
    grouped = _levels_of(ls)
    needed = {i for i, lv in enumerate(chain.levels) if len(lv.orbit) > 1}
    have = set(grouped)
    if have != needed:
        return VerificationReport(
            ok=False, method="structural", products_checked=0,
            detail="annotated levels %s do not match chain levels %s"
                   % (sorted(have), sorted(needed)))
    checked = 0
    for level, block_ids in sorted(grouped.items()):
        lv = chain.levels[level]
        base_prefix = [chain.levels[k].point for k in range(level)]
        for bi in block_ids:
            for e in ls.blocks[bi]:
                raw = e.img
                if any(raw[p] != p for p in base_prefix) \
                        or not chain.sift(e, start=level).is_identity():
                    return VerificationReport(
                        ok=False, method="structural", products_checked=checked,
                        detail="block %d entry %s is outside the level-%d group"
                               % (bi, e, level))
        if prod(len(ls.blocks[bi]) for bi in block_ids) != len(lv.orbit):
            return VerificationReport(
                ok=False, method="structural", products_checked=checked,
                detail="level %d blocks enumerate %d products, orbit has %d points"
                       % (level, prod(len(ls.blocks[bi]) for bi in block_ids),
                          len(lv.orbit)))
        images = [lv.point]
        for bi in reversed(block_ids):
            images = [e.img[p] for e in ls.blocks[bi] for p in images]
        checked += len(images)
        if len(set(images)) != len(images):
            return VerificationReport(
                ok=False, method="structural", products_checked=checked,
                detail="level %d products repeat a base-point image" % level)
        if set(images) != set(lv.orbit):
            return VerificationReport(
                ok=False, method="structural", products_checked=checked,
                detail="level %d products do not cover the orbit" % level)
    return VerificationReport(ok=True, method="structural", products_checked=checked)


# -- canonical file format --------------------------------------------------
#
# UTF-8 JSON with keys in fixed order: degree, group (omitted when absent),
# provenance, blocks.  Each element is its 1-based image array.  Serialization
# is canonical (two-space indent, "\n" at the end) so identical signatures
# produce identical bytes.

def _annotation_obj(a: BlockAnnotation) -> dict:
    obj: dict = {"level": a.level}
    if a.set_size is not None:
        obj["set_size"] = a.set_size
    if a.step is not None:
        obj["step"] = a.step
    return obj


def dumps_ls(ls: LogSignature) -> str:
    obj: dict = {"degree": ls.degree}
    if ls.group is not None:
        obj["group"] = ls.group
    prov: dict = {"tag": ls.provenance.tag}
    if ls.provenance.annotations is not None:
        prov["annotations"] = [_annotation_obj(a) for a in ls.provenance.annotations]
    obj["provenance"] = prov
    obj["blocks"] = [[list(e.images) for e in block] for block in ls.blocks]
    return json.dumps(obj, indent=2) + "\n"


def _parse_annotation(obj, where: str) -> BlockAnnotation:
    if not isinstance(obj, dict) or "level" not in obj:
        raise LsFormatError("%s: annotation must be an object with a 'level'" % where)
    return BlockAnnotation(level=obj["level"],
                           set_size=obj.get("set_size"),
                           step=obj.get("step"))


def loads_ls(text: str) -> LogSignature:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise LsFormatError("line %d column %d: %s" % (e.lineno, e.colno, e.msg)) from e
    if not isinstance(obj, dict):
        raise LsFormatError("top level must be an object")
    try:
        degree = obj["degree"]
        prov_obj = obj["provenance"]
        blocks_obj = obj["blocks"]
    except KeyError as e:
        raise LsFormatError("missing required field %s" % e) from e
    if not isinstance(degree, int) or degree < 0:
        raise LsFormatError("degree must be a nonnegative integer")
    if not isinstance(prov_obj, dict) or not isinstance(blocks_obj, list):
        raise LsFormatError("provenance must be an object and blocks an array")
    ann = None
    if "annotations" in prov_obj:
        ann = tuple(_parse_annotation(a, "provenance") for a in prov_obj["annotations"])
    try:
        provenance = Provenance(tag=prov_obj.get("tag", "manual"), annotations=ann)
    except ValueError as e:
        raise LsFormatError(str(e)) from e
    blocks = []
    for bi, block_obj in enumerate(blocks_obj):
        if not isinstance(block_obj, list):
            raise LsFormatError("block %d must be an array" % bi)
        entries = []
        for ei, images in enumerate(block_obj):
            where = "block %d entry %d" % (bi, ei)
            if not isinstance(images, list) or len(images) != degree:
                raise LsFormatError("%s: expected an image array of length %d"
                                    % (where, degree))
            try:
                entries.append(Permutation.from_images(images))
            except (ValueError, TypeError) as e:
                raise LsFormatError("%s: %s" % (where, e)) from e
        blocks.append(tuple(entries))
    try:
        return LogSignature(degree=degree, blocks=tuple(blocks),
                            group=obj.get("group"), provenance=provenance)
    except ValueError as e:
        raise LsFormatError(str(e)) from e


def write_ls(ls: LogSignature, sink: str | IO[str]) -> None:
    text = dumps_ls(ls)
    if isinstance(sink, str):
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sink.write(text)


def read_ls(source: str | IO[str]) -> LogSignature:
    if isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            return loads_ls(fh.read())
    return loads_ls(source.read())
