"""Building logarithmic signatures: transversal blocks from stabilizer chains,
minimal signatures for cyclic sets and solvable groups, and the refinement
search that replaces a transversal block by a product of cyclic power sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import prod

from .arith import factor_integer
from .chain import GeneratorSet, StabilizerChain, build_chain, derived_series, is_solvable
from .perm import Permutation, _order_raw
from .signature import BlockAnnotation, LogSignature, Provenance

__all__ = [
    "CyclicSetSpec",
    "ProductDecomposition",
    "CompositionSeries",
    "mls_cyclic",
    "composition_series_solvable",
    "mls_solvable",
    "chain_ls",
    "sharply_transitive_check",
    "refine_block",
    "refine_ls",
    "build_mls",
    "DEFAULT_SEARCH_CAP",
]

DEFAULT_SEARCH_CAP = 50_000


@dataclass(frozen=True)
class CyclicSetSpec:
    """The cyclic set {x^0, x^1, ..., x^(size-1)}; size may be any value up to
    the order of x, so the set need not be a subgroup."""

    generator: Permutation
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("cyclic set size must be >= 1")
        if self.size > self.generator.order():
            raise ValueError("size %d exceeds generator order %d"
                             % (self.size, self.generator.order()))

    def elements(self) -> tuple[Permutation, ...]:
        out = [Permutation.identity(self.generator.degree)]
        for _ in range(self.size - 1):
            out.append(self.generator * out[-1])
        return tuple(out)


@dataclass(frozen=True)
class ProductDecomposition:
    """Cyclic sets whose ordered product covers one chain level's coset space."""

    factors: tuple[CyclicSetSpec, ...]
    level: int


@dataclass(frozen=True)
class CompositionSeries:
    """Subnormal series G = S[0] > S[1] > ... > S[m] = 1 with prime indices.

    ``witnesses[i]`` lies in S[i] and its image generates the cyclic quotient
    S[i]/S[i+1] of order ``primes[i]``.
    """

    subgroups: tuple[StabilizerChain, ...]
    witnesses: tuple[Permutation, ...]
    primes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.primes)


def _prime_multiset(n: int) -> list[int]:
    out: list[int] = []
    for p, a in factor_integer(n).factors:
        out.extend([p] * a)
    return out


def _cyclic_blocks(x: Permutation, size: int):
    """Power blocks realizing the mixed-radix split of {x^0..x^(size-1)}.

    With ascending primes q_1..q_k of ``size`` and weights w_1 = 1,
    w_(t+1) = w_t * q_t, block t holds x^(j*w_t) for j < q_t.  Every exponent
    below ``size`` has a unique digit expansion sum(j_t * w_t), and the
    largest representable exponent is size - 1, so products never wrap.
    Yields (entries, q_t, w_t) triples.
    """
    w = 1
    for q in _prime_multiset(size):
        step = x ** w
        entries = [Permutation.identity(x.degree)]
        for _ in range(q - 1):
            entries.append(step * entries[-1])
        yield tuple(entries), q, w
        w *= q


def mls_cyclic(spec: CyclicSetSpec) -> LogSignature:
    """Minimal-length signature of a cyclic set (empty for size 1).

    Length equals the sum of the prime multiset of the size, the attainable
    minimum for a set of that cardinality.
    """
    blocks = tuple(entries for entries, _, _ in _cyclic_blocks(spec.generator, spec.size))
    return LogSignature(degree=spec.generator.degree, blocks=blocks,
                        provenance=Provenance("cyclic"))


def chain_ls(chain: StabilizerChain) -> LogSignature:
    """One block per chain level: the full transversal, identity entry first,
    remaining representatives by increasing image point.  Levels with a
    one-point orbit contribute nothing and are skipped."""
    blocks = []
    ann = []
    for i, lv in enumerate(chain.levels):
        if len(lv.orbit) == 1:
            continue
        blocks.append(tuple(lv.transversal[p] for p in lv.orbit))
        ann.append(BlockAnnotation(level=i))
    return LogSignature(degree=chain.degree, blocks=tuple(blocks),
                        group=chain.name,
                        provenance=Provenance("chain", tuple(ann)))


def sharply_transitive_check(decomp, chain: StabilizerChain,
                             level: int | None = None,
                             w: int | None = None) -> bool:
    """Whether a product of element sets hits each orbit point exactly once.

    ``decomp`` is either a :class:`ProductDecomposition` (which carries its
    level) or a plain sequence of element sets plus an explicit ``level``.
    Expands the multiset {(a_1 * ... * a_m)(w)} point-wise, the rightmost
    factor acting first, and accepts iff there are no repeats and the images
    are exactly the level orbit.
    """
    if isinstance(decomp, ProductDecomposition):
        if level is None:
            level = decomp.level
        sets = [f.elements() for f in decomp.factors]
    else:
        if level is None:
            raise ValueError("plain element sets need an explicit level")
        sets = [tuple(s) for s in decomp]
    lv = chain.levels[level]
    if w is None:
        w = lv.point
    elif w not in lv.orbit:
        raise ValueError("point %d is not in the level-%d orbit" % (w, level))
    if prod(len(s) for s in sets) != len(lv.orbit):
        raise ValueError("product of set sizes %d != orbit size %d"
                         % (prod(len(s) for s in sets), len(lv.orbit)))
    images = [w]
    for entries in reversed(sets):
        images = [e.img[p] for e in entries for p in images]
    return len(set(images)) == len(images) and set(images) == set(lv.orbit)


def _size_trials(primes: list[int], alternate: bool) -> list[tuple[int, ...]]:
    """Cyclic-set size tuples to try: every multiset grouping of the primes,
    fewest sets first, each in ascending size order; with ``alternate``, the
    non-ascending orderings follow as a second pass."""
    groupings: set[tuple[int, ...]] = set()

    def rec(rest, parts):
        if not rest:
            groupings.add(tuple(sorted(parts)))
            return
        x, rest2 = rest[0], rest[1:]
        seen = set()
        for i, part in enumerate(parts):
            if part in seen:
                continue
            seen.add(part)
            rec(rest2, parts[:i] + [part * x] + parts[i + 1:])
        rec(rest2, parts + [x])

    rec(primes, [])
    ordered = sorted(groupings, key=lambda t: (len(t), t))
    trials = list(ordered)
    if alternate:
        for g in ordered:
            trials.extend(sorted(set(permutations(g)) - {g}))
    return trials


def refine_block(chain: StabilizerChain, level: int,
                 targets: list[int] | None = None,
                 cap: int = DEFAULT_SEARCH_CAP,
                 scan_limit: int | None = None,
                 alternate_orderings: bool = False) -> ProductDecomposition | None:
    """Search the level group for cyclic sets whose product covers the orbit.

    ``targets`` is the ascending prime multiset of the orbit size (the
    default).  A single cyclic set of full orbit size is tried first, then
    two sets, three sets and so on, candidates drawn in element-index order
    and filtered to elements whose order the set size divides, at most
    ``cap`` candidates per size.  Returning None means the search space was
    exhausted without a cover, which is a legitimate outcome.

    Candidate tuples may be partitioned and scanned in parallel as long as
    the selected tuple is still the first success in this deterministic
    order; this implementation scans sequentially.
    """
    lv = chain.levels[level]
    osize = len(lv.orbit)
    if targets is None:
        targets = _prime_multiset(osize)
    if prod(targets) != osize:
        raise ValueError("targets multiply to %d, orbit size is %d"
                         % (prod(targets), osize))
    if scan_limit is None:
        scan_limit = 10 * cap

    all_sizes = set()
    for trial in _size_trials(list(targets), True):
        all_sizes.update(trial)

    sub = chain.subchain(level)
    elems: list[tuple] = []  # (raw, order)
    pending = dict.fromkeys(all_sizes, 0)
    for raw in sub._iter_raw():
        o = _order_raw(raw)
        elems.append((raw, o))
        for s in list(pending):
            if o % s == 0:
                pending[s] += 1
                if pending[s] >= cap:
                    del pending[s]
        if not pending or len(elems) >= scan_limit:
            break

    buckets: dict[int, list] = {}

    def bucket(size):
        if size not in buckets:
            buckets[size] = [raw for raw, o in elems if o % size == 0][:cap]
        return buckets[size]

    orbit_set = set(lv.orbit)
    b = lv.point

    def search(sizes: tuple[int, ...]):
        m = len(sizes)

        def rec(pos, images):
            if pos < 0:
                return [] if len(images) == osize else None
            for x in bucket(sizes[pos]):
                new = list(images)
                cur = images
                for _ in range(sizes[pos] - 1):
                    cur = [x[p] for p in cur]
                    new.extend(cur)
                if len(set(new)) != len(new):
                    continue
                found = rec(pos - 1, new)
                if found is not None:
                    found.append(x)
                    return found
            return None

        # rec appends each position's choice after its inner call returns, so
        # the list comes back already in block order x_1..x_m
        return rec(m - 1, (b,))

    for sizes in _size_trials(list(targets), alternate_orderings):
        got = search(sizes)
        if got is not None:
            decomp = ProductDecomposition(
                factors=tuple(CyclicSetSpec(Permutation._wrap(raw), s)
                              for raw, s in zip(got, sizes)),
                level=level)
            if not sharply_transitive_check(decomp, chain):
                raise AssertionError("search returned a non-transitive cover")
            return decomp
    return None


def refine_ls(ls: LogSignature, chain: StabilizerChain,
              cap: int = DEFAULT_SEARCH_CAP,
              alternate_orderings: bool = True) -> LogSignature:
    """Replace each composite transversal block by cyclic power blocks.

    Blocks whose size is prime (or 1) are kept.  A block whose level admits
    no cyclic-set cover within the search caps is kept as well and remains
    recognizable in the result's annotations as a full-size level block; the
    result then verifies but is not minimal.  When every composite block
    refines, the result meets the minimal-length bound.
    """
    if ls.provenance.tag != "chain" or ls.provenance.annotations is None:
        raise ValueError("refinement needs a chain-provenance signature "
                         "with level annotations")
    blocks: list[tuple[Permutation, ...]] = []
    ann: list[BlockAnnotation] = []
    for block, a in zip(ls.blocks, ls.provenance.annotations):
        primes = _prime_multiset(len(block))
        if len(primes) <= 1:
            blocks.append(block)
            ann.append(BlockAnnotation(level=a.level))
            continue
        decomp = refine_block(chain, a.level, cap=cap,
                              alternate_orderings=alternate_orderings)
        if decomp is None:
            blocks.append(block)
            ann.append(BlockAnnotation(level=a.level))
            continue
        for f in decomp.factors:
            for entries, _q, w in _cyclic_blocks(f.generator, f.size):
                blocks.append(entries)
                ann.append(BlockAnnotation(level=a.level, set_size=f.size, step=w))
    return LogSignature(degree=ls.degree, blocks=tuple(blocks), group=ls.group,
                        provenance=Provenance("refined", tuple(ann)))


def composition_series_solvable(chain: StabilizerChain) -> CompositionSeries:
    """Prime-step refinement of the derived series of a solvable group.

    Each abelian layer is split one prime at a time: take the first listed
    generator of the layer top that is outside the current subgroup, compute
    the order o of its image, and adjoin its (o/p)-th power for the largest
    prime p of o.  Splitting largest-first while ascending makes the primes
    come out ascending when the series is read from the top.
    """
    series = derived_series(chain)
    if series[-1].order > 1:
        raise ValueError("group is not solvable")
    degree = chain.degree
    subgroups: list[StabilizerChain] = [chain]
    witnesses: list[Permutation] = []
    primes: list[int] = []
    for top, bottom in zip(series, series[1:]):
        cur = bottom
        cur_gens = [g for g in bottom.generators.gens if not g.is_identity()]
        steps = []  # (witness, prime, chain below the step)
        while cur.order < top.order:
            t = next(g for g in top.generators.gens if not cur.contains(g))
            o = next(d for d in _divisors(t.order()) if cur.contains(t ** d))
            p = max(_prime_multiset(o))
            u = t ** (o // p)
            below = cur
            cur_gens.append(u)
            cur = build_chain(GeneratorSet(degree, tuple(cur_gens)))
            if cur.order != below.order * p:
                raise AssertionError("abelian layer step did not have prime index")
            steps.append((u, p, below))
        for u, p, below in reversed(steps):
            witnesses.append(u)
            primes.append(p)
            subgroups.append(below)
    return CompositionSeries(tuple(subgroups), tuple(witnesses), tuple(primes))


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mls_solvable(chain: StabilizerChain) -> LogSignature:
    """Minimal signature of a solvable group: one cyclic transversal
    [t^0, ..., t^(q-1)] per composition step, outermost step first."""
    series = composition_series_solvable(chain)
    blocks = []
    for t, q in zip(series.witnesses, series.primes):
        entries = [Permutation.identity(chain.degree)]
        for _ in range(q - 1):
            entries.append(t * entries[-1])
        blocks.append(tuple(entries))
    return LogSignature(degree=chain.degree, blocks=tuple(blocks),
                        group=chain.name, provenance=Provenance("solvable"))


def build_mls(chain: StabilizerChain, cap: int = DEFAULT_SEARCH_CAP) -> LogSignature:
    """Best-effort minimal signature: solvable groups via their composition
    series, everything else via transversal blocks plus refinement."""
    if chain.order == 1:
        return LogSignature(degree=chain.degree, blocks=(), group=chain.name,
                            provenance=Provenance("chain", ()))
    if is_solvable(chain):
        return mls_solvable(chain)
    return refine_ls(chain_ls(chain), chain, cap=cap)
