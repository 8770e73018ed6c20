"""Bundled groups and the sporadic-group arithmetic checker.

Fixed groups (the Mathieu groups and two linear groups) ship as generator
files in ``data/``; parametric families (cyclic, dihedral, symmetric,
alternating) and a few small named groups are synthesized on demand.  The
``data/sporadic_claims.json`` table transcribes published arithmetic claims
about minimal logarithmic signatures of thirteen sporadic groups;
:func:`check_claim_arithmetic` validates each row with exact integers and
reports discrepancies without ever correcting them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from math import prod
from typing import IO

from .arith import factor_integer, is_probable_prime
from .chain import GeneratorSet, StabilizerChain, build_chain
from .perm import Permutation, format_cycles, parse_cycles
from .signature import minimal_length

__all__ = [
    "CatalogError",
    "GroupSpec",
    "SporadicClaim",
    "ClaimReport",
    "bundled_group_names",
    "get_spec",
    "load_group",
    "load_verified_chain",
    "read_group_file",
    "write_group_file",
    "sporadic_claims",
    "check_claim_arithmetic",
    "sporadic_minimal_lengths",
]


class CatalogError(ValueError):
    """Unknown group name, unreadable file, or corrupted bundled data."""


@dataclass(frozen=True)
class GroupSpec:
    """A named group: generators in cycle notation plus the expected order."""

    name: str
    degree: int
    generators: tuple[str, ...]
    expected_order: int | None
    source: str


def _data_text(fname: str) -> str:
    return resources.files(__package__).joinpath("data", fname).read_text("utf-8")


# name -> (file, expected order, source note)
_FILE_GROUPS = {
    "M11": ("m11.grp", 7920, "classical generators; 4-transitive on 11 points"),
    "M12": ("m12.grp", 95040, "classical generators; sharply 5-transitive"),
    "M22": ("m22.grp", 443520, "two-point stabilizer of the degree-24 group, relabeled"),
    "M24": ("m24.grp", 244823040, "classical generators; 5-transitive on 24 points"),
    "PSL(2,7)": ("psl27.grp", 168, "projective line over F7: x+1 and -1/x"),
    "PSL(2,11)": ("psl211.grp", 660, "projective line over F11: x+1 and -1/x"),
}


def _cycle(points: list[int]) -> str:
    return "(" + ",".join(str(p) for p in points) + ")"


def _cyclic_spec(n: int) -> GroupSpec:
    gens = (_cycle(list(range(1, n + 1))),) if n > 1 else ("()",)
    return GroupSpec("C%d" % n, max(n, 1), gens, n, "single n-cycle")


def _dihedral_spec(n: int) -> GroupSpec:
    if n < 3:
        raise CatalogError("dihedral groups need at least 3 points")
    rot = _cycle(list(range(1, n + 1)))
    refl = "".join(_cycle([i, n + 2 - i]) for i in range(2, n // 2 + 2) if i < n + 2 - i)
    return GroupSpec("D%d" % n, n, (rot, refl), 2 * n, "rotation and reflection")


def _symmetric_spec(n: int) -> GroupSpec:
    if n <= 1:
        return GroupSpec("S%d" % n, max(n, 1), ("()",), 1, "trivial")
    if n == 2:
        return GroupSpec("S2", 2, ("(1,2)",), 2, "transposition")
    import math
    return GroupSpec("S%d" % n, n, ("(1,2)", _cycle(list(range(1, n + 1)))),
                     math.factorial(n), "transposition and n-cycle")


def _alternating_spec(n: int) -> GroupSpec:
    import math
    if n <= 2:
        return GroupSpec("A%d" % n, max(n, 1), ("()",), 1, "trivial")
    if n == 3:
        return GroupSpec("A3", 3, ("(1,2,3)",), 3, "3-cycle")
    big = _cycle(list(range(1, n + 1))) if n % 2 else _cycle(list(range(2, n + 1)))
    return GroupSpec("A%d" % n, n, ("(1,2,3)", big), math.factorial(n) // 2,
                     "3-cycle and long even cycle")


def _q8_spec() -> GroupSpec:
    # left regular representation on 1:1, 2:-1, 3:i, 4:-i, 5:j, 6:-j, 7:k, 8:-k
    return GroupSpec("Q8", 8, ("(1,3,2,4)(5,7,6,8)", "(1,5,2,6)(3,8,4,7)"), 8,
                     "quaternion units acting on themselves by left multiplication")


def _sl23_spec() -> GroupSpec:
    # action on the eight nonzero vectors of F3^2, lexicographic labels
    vecs = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    idx = {v: i + 1 for i, v in enumerate(vecs)}

    def mat_perm(m):
        img = {}
        for v in vecs:
            w = ((m[0][0] * v[0] + m[0][1] * v[1]) % 3,
                 (m[1][0] * v[0] + m[1][1] * v[1]) % 3)
            img[idx[v]] = idx[w]
        return format_cycles(Permutation([img[i + 1] - 1 for i in range(8)]))

    s = mat_perm([[0, 2], [1, 0]])   # order 4
    t = mat_perm([[1, 1], [0, 1]])   # order 3
    return GroupSpec("SL(2,3)", 8, (s, t), 24, "2x2 matrices over F3 on nonzero vectors")


def _elementary_2cubed_spec() -> GroupSpec:
    return GroupSpec("2^3", 6, ("(1,2)", "(3,4)", "(5,6)"), 8,
                     "three disjoint transpositions")


_NAMED_BUILDERS = {
    "Q8": _q8_spec,
    "SL(2,3)": _sl23_spec,
    "2^3": _elementary_2cubed_spec,
}

_PARAMETRIC = re.compile(r"^([CDSA])(\d+)$")


def bundled_group_names() -> tuple[str, ...]:
    """Fixed catalog names; parametric C<n>, D<n>, S<n>, A<n> also resolve."""
    return tuple(sorted(_FILE_GROUPS)) + tuple(sorted(_NAMED_BUILDERS))


def get_spec(name: str) -> GroupSpec:
    if name in _FILE_GROUPS:
        fname, order, source = _FILE_GROUPS[name]
        gens = read_group_file_text(_data_text(fname)).gens
        return GroupSpec(name, gens[0].degree if gens else 0,
                         tuple(format_cycles(g) for g in gens), order, source)
    if name in _NAMED_BUILDERS:
        return _NAMED_BUILDERS[name]()
    m = _PARAMETRIC.match(name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n > 10 ** 6:
            raise CatalogError("parametric degree %d too large" % n)
        if kind == "C":
            return _cyclic_spec(n)
        if kind == "D":
            return _dihedral_spec(n)
        if kind == "S":
            return _symmetric_spec(n)
        return _alternating_spec(n)
    raise CatalogError("unknown group %r; bundled names: %s, plus C<n>, D<n>, "
                       "S<n>, A<n>" % (name, ", ".join(bundled_group_names())))


def load_group(name_or_path: str) -> GeneratorSet:
    """Resolve a catalog name, falling back to a generator file path."""
    try:
        spec = get_spec(name_or_path)
    except CatalogError:
        import os
        if os.path.exists(name_or_path):
            return read_group_file(name_or_path)
        raise
    return GeneratorSet(spec.degree,
                        tuple(parse_cycles(c, spec.degree) for c in spec.generators),
                        name=spec.name)


def load_verified_chain(name: str, base_hint=None) -> StabilizerChain:
    """Build the chain and assert the catalog's expected order.

    A mismatch signals corrupted bundled data and raises CatalogError.
    """
    spec = get_spec(name)
    gens = GeneratorSet(spec.degree,
                        tuple(parse_cycles(c, spec.degree) for c in spec.generators),
                        name=spec.name)
    chain = build_chain(gens, base_hint)
    if spec.expected_order is not None and chain.order != spec.expected_order:
        raise CatalogError("group %s built with order %d, expected %d "
                           "(corrupted data?)" % (name, chain.order, spec.expected_order))
    return chain


# -- generator file format ----------------------------------------------------
#
# UTF-8 text.  First significant line: "degree N".  Every following nonempty
# line that does not start with '#' is one generator in disjoint-cycle
# notation with 1-based points.

def read_group_file_text(text: str, name: str | None = None) -> GeneratorSet:
    degree = None
    gens = []
    for lineno, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if degree is None:
            m = re.match(r"^degree\s+(\d+)$", line)
            if not m:
                raise CatalogError("line %d: expected 'degree N', got %r"
                                   % (lineno, line))
            degree = int(m.group(1))
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except ValueError as e:
            raise CatalogError("line %d: %s" % (lineno, e)) from e
    if degree is None:
        raise CatalogError("missing 'degree N' header line")
    if not gens:
        gens.append(Permutation.identity(degree))
    return GeneratorSet(degree, tuple(gens), name=name)


def read_group_file(source: str | IO[str]) -> GeneratorSet:
    if isinstance(source, str):
        import os
        with open(source, encoding="utf-8") as fh:
            return read_group_file_text(fh.read(),
                                        name=os.path.splitext(os.path.basename(source))[0])
    return read_group_file_text(source.read())


def write_group_file(gens: GeneratorSet, sink: str | IO[str]) -> None:
    """Canonical form: degree header, one generator per line, no comments."""
    lines = ["degree %d" % gens.degree]
    lines += [format_cycles(g) for g in gens.gens]
    text = "\n".join(lines) + "\n"
    if isinstance(sink, str):
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sink.write(text)


# -- sporadic-group claims ----------------------------------------------------

@dataclass(frozen=True)
class SporadicClaim:
    """One transcribed row: claimed order, stabilizer, index and factorization.

    ``stabilizer_order`` is evaluated from named constituent orders bundled
    with their own source notes (the claims rarely print it directly).
    """

    group: str
    order_factorization: tuple[tuple[int, int], ...]
    stabilizer: str
    stabilizer_order: int
    claimed_index: int
    index_factorization: tuple[tuple[int, int], ...]
    note: str = ""

    @property
    def claimed_order(self) -> int:
        return prod(p ** a for p, a in self.order_factorization)


@dataclass(frozen=True)
class ClaimReport:
    """Exact-integer validation of one claim row; never raises, only reports."""

    group: str
    factorization_matches_index: bool
    index_times_stabilizer_matches_order: bool
    order_product_wellformed: bool
    details: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (self.factorization_matches_index
                and self.index_times_stabilizer_matches_order
                and self.order_product_wellformed)


def _claims_doc() -> dict:
    return json.loads(_data_text("sporadic_claims.json"))


def sporadic_claims() -> tuple[SporadicClaim, ...]:
    doc = _claims_doc()
    constituents = {k: v["order"] for k, v in doc["constituents"].items()}
    rows = []
    for row in doc["rows"]:
        stab = 1
        for term in row["stabilizer_order_terms"]:
            if "group" in term:
                stab *= constituents[term["group"]]
            else:
                stab *= term["base"] ** term["exp"]
        rows.append(SporadicClaim(
            group=row["group"],
            order_factorization=tuple((p, a) for p, a in row["order_factorization"]),
            stabilizer=row["stabilizer"],
            stabilizer_order=stab,
            claimed_index=row["claimed_index"],
            index_factorization=tuple((p, a) for p, a in row["index_factorization"]),
            note=row.get("note", ""),
        ))
    return tuple(rows)


def _wellformed(factors: tuple[tuple[int, int], ...]) -> list[str]:
    problems = []
    last = 1
    for p, a in factors:
        if not is_probable_prime(p):
            problems.append("base %d is not prime" % p)
        if p <= last:
            problems.append("primes not strictly increasing at %d" % p)
        if a < 1:
            problems.append("exponent %d < 1 for prime %d" % (a, p))
        last = p
    return problems


def check_claim_arithmetic(claim: SporadicClaim) -> ClaimReport:
    """Three exact checks per row.

    (a) the claimed index factorization multiplies to the claimed index;
    (b) claimed index times stabilizer order equals the claimed group order;
    (c) the claimed order is a well-formed prime power product.
    """
    details = []
    fact_val = prod(p ** a for p, a in claim.index_factorization)
    a_ok = fact_val == claim.claimed_index
    if not a_ok:
        details.append("index factorization evaluates to %d, claimed index is %d"
                       % (fact_val, claim.claimed_index))
    b_ok = claim.claimed_index * claim.stabilizer_order == claim.claimed_order
    if not b_ok:
        details.append("index %d times stabilizer order %d is %d, claimed order is %d"
                       % (claim.claimed_index, claim.stabilizer_order,
                          claim.claimed_index * claim.stabilizer_order,
                          claim.claimed_order))
    problems = _wellformed(claim.order_factorization)
    c_ok = not problems
    details.extend(problems)
    return ClaimReport(group=claim.group,
                       factorization_matches_index=a_ok,
                       index_times_stabilizer_matches_order=b_ok,
                       order_product_wellformed=c_ok,
                       details=tuple(details))


def sporadic_minimal_lengths() -> tuple[tuple[str, int, int], ...]:
    """(group, order, minimal signature length) for every printed order,
    applying the length bound sum(a_j * p_j) to the order as printed."""
    out = []
    for row in _claims_doc()["printed_orders"]:
        order = prod(p ** a for p, a in row["order_factorization"])
        out.append((row["group"], order, minimal_length(factor_integer(order))))
    return tuple(out)
