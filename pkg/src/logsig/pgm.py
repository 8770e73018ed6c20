"""A demonstration-grade secret-key cipher over a permutation group.

The key is a pair of randomized transversal signatures for one group; a
message index is pushed through the first signature's index-to-element map
and pulled back through the second one's element-to-index map.  Demonstration
only: no security claims, no padding, no key wrapping.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import IO

from .chain import StabilizerChain
from .construct import chain_ls
from .factorize import TameIndexer, factorize_tame, reconstruct
from .signature import (LogSignature, LsFormatError, dumps_ls, loads_ls,
                        verify_structural)

__all__ = ["PgmKey", "randomize_ls", "keygen", "encrypt", "decrypt",
           "write_key", "read_key", "KEY_FORMAT"]

KEY_FORMAT = "pgm-key-1"


def randomize_ls(ls: LogSignature, chain: StabilizerChain, seed: int) -> LogSignature:
    """Diversify a transversal signature without losing its structure.

    Per block: a seeded shuffle of the entries, then every entry of a
    non-final level is multiplied on the right by a seeded element of the
    next level's group.  Right multiplication by a stabilizer element keeps
    each entry's base-point image, so cosets, tameness and the structural
    verdict are all preserved; only the digit assignment changes.
    """
    ann = ls.provenance.annotations
    if ls.provenance.tag != "chain" or ann is None:
        raise ValueError("randomization needs a chain-provenance signature")
    rng = random.Random(seed)
    blocks = []
    for block, a in zip(ls.blocks, ann):
        entries = list(block)
        rng.shuffle(entries)
        sub = chain.subchain(a.level + 1)
        if sub.order > 1:
            entries = [e * sub.element_at(rng.randrange(sub.order)) for e in entries]
        blocks.append(tuple(entries))
    return LogSignature(degree=ls.degree, blocks=tuple(blocks), group=ls.group,
                        provenance=ls.provenance)


@dataclass(frozen=True)
class PgmKey:
    """Two verified tame signatures of one group plus their indexers."""

    chain: StabilizerChain
    alpha: LogSignature
    beta: LogSignature
    alpha_indexer: TameIndexer
    beta_indexer: TameIndexer
    seed: int

    @property
    def message_space(self) -> int:
        return self.chain.order


def keygen(chain: StabilizerChain, seed: int) -> PgmKey:
    """Derive two sub-seeds, randomize the transversal signature twice and
    verify both halves.  Pure function of (group, seed)."""
    rng = random.Random(seed)
    seed_a = rng.getrandbits(63)
    seed_b = rng.getrandbits(63)
    base = chain_ls(chain)
    alpha = randomize_ls(base, chain, seed_a)
    beta = randomize_ls(base, chain, seed_b)
    for part, name in ((alpha, "alpha"), (beta, "beta")):
        report = verify_structural(part, chain)
        if not report.ok:
            raise AssertionError("key half %s failed verification: %s"
                                 % (name, report.detail))
    return PgmKey(chain=chain, alpha=alpha, beta=beta,
                  alpha_indexer=TameIndexer(alpha, chain),
                  beta_indexer=TameIndexer(beta, chain),
                  seed=seed)


def _digits_of(value: int, sizes: tuple[int, ...]) -> tuple[int, ...]:
    # mixed radix, last block least significant
    out = []
    for r in reversed(sizes):
        value, d = divmod(value, r)
        out.append(d)
    out.reverse()
    return tuple(out)


def _value_of(digits: tuple[int, ...], sizes: tuple[int, ...]) -> int:
    value = 0
    for d, r in zip(digits, sizes):
        value = value * r + d
    return value


def encrypt(key: PgmKey, message: int) -> int:
    """message -> digits under alpha -> group element -> digits under beta -> int."""
    if not 0 <= message < key.message_space:
        raise ValueError("message %d outside [0, %d)" % (message, key.message_space))
    element = reconstruct(key.alpha, _digits_of(message, key.alpha.block_sizes))
    return _value_of(factorize_tame(element, key.beta_indexer), key.beta.block_sizes)


def decrypt(key: PgmKey, ciphertext: int) -> int:
    if not 0 <= ciphertext < key.message_space:
        raise ValueError("ciphertext %d outside [0, %d)" % (ciphertext, key.message_space))
    element = reconstruct(key.beta, _digits_of(ciphertext, key.beta.block_sizes))
    return _value_of(factorize_tame(element, key.alpha_indexer), key.alpha.block_sizes)


def write_key(key: PgmKey, sink: str | IO[str]) -> None:
    """Header (format, group, seed) plus the two signature documents."""
    obj = {
        "format": KEY_FORMAT,
        "group": key.chain.name,
        "seed": key.seed,
        "alpha": json.loads(dumps_ls(key.alpha)),
        "beta": json.loads(dumps_ls(key.beta)),
    }
    text = json.dumps(obj, indent=2) + "\n"
    if isinstance(sink, str):
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sink.write(text)


def read_key(source: str | IO[str], chain: StabilizerChain) -> PgmKey:
    if isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise LsFormatError("line %d column %d: %s" % (e.lineno, e.colno, e.msg)) from e
    if obj.get("format") != KEY_FORMAT:
        raise LsFormatError("unsupported key format %r" % obj.get("format"))
    alpha = loads_ls(json.dumps(obj["alpha"]))
    beta = loads_ls(json.dumps(obj["beta"]))
    return PgmKey(chain=chain, alpha=alpha, beta=beta,
                  alpha_indexer=TameIndexer(alpha, chain),
                  beta_indexer=TameIndexer(beta, chain),
                  seed=obj.get("seed", 0))
