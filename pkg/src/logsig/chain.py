"""Stabilizer chains: base points, orbits, transversals and strong generators.

The chain is built with a deterministic (non-randomized) Schreier-Sims
algorithm so that everything derived from it, transversal blocks in
particular, is reproducible byte for byte.  It provides group order,
membership testing, the canonical bijection between [0, |G|) and the group,
normal closures, derived subgroups and a solvability test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .perm import Permutation, _identity_raw, _inv_raw, _mul_raw

__all__ = [
    "GeneratorSet",
    "ChainLevel",
    "StabilizerChain",
    "build_chain",
    "normal_closure",
    "derived_subgroup",
    "derived_series",
    "is_solvable",
]


@dataclass(frozen=True)
class GeneratorSet:
    """An ordered, nonempty list of generators of one degree.

    The order is significant: every chain computation iterates generators in
    list order, which is what makes the pipeline deterministic.
    """

    degree: int
    gens: tuple[Permutation, ...]
    name: str | None = None

    def __post_init__(self):
        if not self.gens:
            raise ValueError("generator set must be nonempty")
        for g in self.gens:
            if g.degree != self.degree:
                raise ValueError(
                    "generator degree %d != set degree %d" % (g.degree, self.degree))


@dataclass(frozen=True)
class ChainLevel:
    """One level of a stabilizer chain.

    ``point`` is the base point; ``orbit`` lists its orbit under this level's
    group with the base point first and the rest increasing, which fixes the
    digit order of the element <-> index bijection.  ``transversal[p]`` is the
    coset representative ``u`` with ``u(point) = p``; the representative of
    the base point itself is the identity.
    """

    point: int
    orbit: tuple[int, ...]
    transversal: dict[int, Permutation]
    gens: tuple[Permutation, ...]
    inv_raw: dict = field(repr=False, default_factory=dict)

    def __len__(self) -> int:
        return len(self.orbit)


class StabilizerChain:
    """A verified base and strong generating set for a permutation group.

    Immutable after construction; all methods are pure and safe to share
    across threads.
    """

    def __init__(self, degree: int, levels: Sequence[ChainLevel],
                 generators: GeneratorSet, name: str | None = None):
        self.degree = degree
        self.levels = tuple(levels)
        self.generators = generators
        self.name = name if name is not None else generators.name
        order = 1
        for lv in self.levels:
            order *= len(lv.orbit)
        self.order = order
        self.base = tuple(lv.point for lv in self.levels)

    def __repr__(self) -> str:
        return "StabilizerChain(degree=%d, base=%r, order=%d)" % (
            self.degree, self.base, self.order)

    # -- membership ------------------------------------------------------

    def sift(self, g: Permutation, start: int = 0) -> Permutation:
        """Strip ``g`` through levels ``start..``; identity residue iff member."""
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        raw = g.img
        for lv in self.levels[start:]:
            beta = raw[lv.point]
            it = lv.inv_raw.get(beta)
            if it is None:
                break
            raw = _mul_raw(it, raw)
        return Permutation._wrap(raw)

    def contains(self, g: Permutation) -> bool:
        """True iff ``g`` is a product of this chain's generators."""
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        return self.sift(g).is_identity()

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    # -- the canonical bijection [0, order) <-> G --------------------------

    def element_at(self, index: int) -> Permutation:
        """Element with the given mixed-radix index (last level varies fastest).

        ``element_at(0)`` is the identity: digit 0 of every level selects the
        base point's own representative.
        """
        if not 0 <= index < self.order:
            raise IndexError("index %d out of range [0, %d)" % (index, self.order))
        digits = []
        for lv in reversed(self.levels):
            index, d = divmod(index, len(lv.orbit))
            digits.append(d)
        digits.reverse()
        raw = _identity_raw(self.degree)
        for lv, d in zip(self.levels, digits):
            raw = _mul_raw(raw, lv.transversal[lv.orbit[d]].img)
        return Permutation._wrap(raw)

    def index_of(self, g: Permutation) -> int:
        """Inverse of :meth:`element_at`; raises ValueError for non-members."""
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        raw = g.img
        index = 0
        for lv in self.levels:
            beta = raw[lv.point]
            it = lv.inv_raw.get(beta)
            if it is None:
                raise ValueError("permutation is not a member of this group")
            index = index * len(lv.orbit) + lv.orbit.index(beta)
            raw = _mul_raw(it, raw)
        if any(i != j for i, j in enumerate(raw)):
            raise ValueError("permutation is not a member of this group")
        return index

    def elements(self) -> Iterator[Permutation]:
        """All group elements in ``element_at`` order (prefix-product walk)."""
        for raw in self._iter_raw():
            yield Permutation._wrap(raw)

    def _iter_raw(self):
        e = _identity_raw(self.degree)
        levels = self.levels

        def rec(i, pre):
            if i == len(levels):
                yield pre
                return
            lv = levels[i]
            trans = lv.transversal
            for p in lv.orbit:
                yield from rec(i + 1, _mul_raw(pre, trans[p].img))

        yield from rec(0, e)

    # -- derived chains ----------------------------------------------------

    def subchain(self, level: int) -> "StabilizerChain":
        """The chain of the level-``level`` group (stabilizer of the first
        ``level`` base points), sharing level data with this chain."""
        if not 0 <= level <= len(self.levels):
            raise IndexError("level %d out of range" % level)
        if level == 0:
            return self
        gens: tuple[Permutation, ...] = ()
        if level < len(self.levels):
            gens = self.levels[level].gens
        if not gens:
            gens = (Permutation.identity(self.degree),)
        return StabilizerChain(
            self.degree, self.levels[level:],
            GeneratorSet(self.degree, gens), name=None)


def _orbit_transversal(point: int, gens_raw: list, degree: int):
    """BFS orbit of ``point``; FIFO order with generators in list order."""
    e = _identity_raw(degree)
    trans = {point: e}
    inv_trans = {point: e}
    queue = [point]
    qi = 0
    while qi < len(queue):
        p = queue[qi]
        qi += 1
        up = trans[p]
        for s in gens_raw:
            q = s[p]
            if q not in trans:
                t = _mul_raw(s, up)
                trans[q] = t
                inv_trans[q] = _inv_raw(t)
                queue.append(q)
    return trans, inv_trans


class _Node:
    __slots__ = ("point", "gens", "trans", "inv_trans")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: list = []
        self.trans, self.inv_trans = _orbit_transversal(point, [], degree)

    def rebuild(self, degree: int):
        self.trans, self.inv_trans = _orbit_transversal(self.point, self.gens, degree)


def build_chain(gens: GeneratorSet, base_hint: Iterable[int] | None = None) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    Hint points become the leading base points in the given order; once the
    hint is exhausted, each new base point is the smallest point moved by the
    generator that forced the extension.  For a fixed generator list and hint
    the resulting chain, and everything derived from it, is identical from
    run to run.
    """
    n = gens.degree
    e = _identity_raw(n)
    nodes: list[_Node] = []
    used: set[int] = set()
    for p in base_hint or ():
        if not 0 <= p < n:
            raise ValueError("base hint point %d out of range" % p)
        if p not in used:
            nodes.append(_Node(p, n))
            used.add(p)

    def strip(raw, start):
        for j in range(start, len(nodes)):
            if raw == e:
                return raw, j
            node = nodes[j]
            it = node.inv_trans.get(raw[node.point])
            if it is None:
                return raw, j
            raw = _mul_raw(it, raw)
        return raw, len(nodes)

    def add_strong_gen(raw, lo, hi):
        # raw fixes the first `lo` base points; install it at levels lo..hi
        if hi == len(nodes):
            for p in range(n):
                if raw[p] != p and p not in used:
                    nodes.append(_Node(p, n))
                    used.add(p)
                    break
            else:
                raise AssertionError("generator moves no unused point")
        for k in range(lo, hi + 1):
            nodes[k].gens.append(raw)
            nodes[k].rebuild(n)

    for g in gens.gens:
        raw = g.img
        if raw == e:
            continue
        h, j = strip(raw, 0)
        if h != e:
            add_strong_gen(h, 0, j)

    i = len(nodes) - 1
    while i >= 0:
        node = nodes[i]
        restart = False
        for p in sorted(node.trans):
            up = node.trans[p]
            for s in node.gens:
                sch = _mul_raw(node.inv_trans[s[p]], _mul_raw(s, up))
                if sch == e:
                    continue
                h, j = strip(sch, i + 1)
                if h != e:
                    add_strong_gen(h, i + 1, j)
                    i = j
                    restart = True
                    break
            if restart:
                break
        if not restart:
            i -= 1

    levels = []
    for node in nodes:
        orbit = (node.point,) + tuple(sorted(p for p in node.trans if p != node.point))
        transversal = {p: Permutation._wrap(t) for p, t in node.trans.items()}
        levels.append(ChainLevel(
            point=node.point,
            orbit=orbit,
            transversal=transversal,
            gens=tuple(Permutation._wrap(s) for s in node.gens),
            inv_raw=dict(node.inv_trans),
        ))
    return StabilizerChain(gens.degree, levels, gens)


def _trivial_genset(degree: int) -> GeneratorSet:
    return GeneratorSet(degree, (Permutation.identity(degree),))


def normal_closure(chain: StabilizerChain, elems: Iterable[Permutation]) -> StabilizerChain:
    """Chain of the normal closure of ``elems`` inside ``chain``'s group."""
    degree = chain.degree
    work = [g for g in elems if not g.is_identity()]
    for g in work:
        if g.degree != degree:
            raise ValueError("degree mismatch")
    closure = build_chain(GeneratorSet(degree, tuple(work)) if work
                          else _trivial_genset(degree))
    ambient = [(g.img, _inv_raw(g.img)) for g in chain.generators.gens]
    changed = True
    while changed:
        changed = False
        for s, s_inv in ambient:
            for x in list(closure.generators.gens):
                conj = Permutation._wrap(_mul_raw(s, _mul_raw(x.img, s_inv)))
                if not closure.contains(conj):
                    work.append(conj)
                    closure = build_chain(GeneratorSet(degree, tuple(work)))
                    changed = True
    return closure


def derived_subgroup(chain: StabilizerChain) -> StabilizerChain:
    """Normal closure of the pairwise commutators of the chain's generators."""
    gens = chain.generators.gens
    comms = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            g, h = gens[i], gens[j]
            c = g.inverse() * h.inverse() * g * h
            if not c.is_identity():
                comms.append(c)
    return normal_closure(chain, comms)


def derived_series(chain: StabilizerChain) -> list[StabilizerChain]:
    """G > G' > G'' > ... until the order stops decreasing or reaches 1."""
    series = [chain]
    while series[-1].order > 1:
        nxt = derived_subgroup(series[-1])
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
    return series


def is_solvable(chain: StabilizerChain) -> bool:
    """True iff the derived series terminates at the trivial group."""
    return derived_series(chain)[-1].order == 1
