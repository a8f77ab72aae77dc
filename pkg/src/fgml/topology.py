"""Finite fuzzy topological spaces.

A space is a carrier together with an explicit finite family of fuzzy
opens. Over a finite carrier and a finite grade chain every family of
fuzzy sets is finite, so closure under arbitrary joins coincides with
closure under binary joins; generation and validation both work by
binary fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import CarrierMismatchError, ResourceLimitError
from .fuzzyset import (
    DEFAULT_MAX_SIZE,
    Carrier,
    CarrierMap,
    FuzzySet,
    Relation,
    fs_join,
    fs_leq,
    fs_meet,
    inverse_image,
)
from .grades import GradeLattice


@dataclass(frozen=True)
class FuzzySpace:
    """Carrier plus its declared family of fuzzy opens."""

    carrier: Carrier
    lattice: GradeLattice
    opens: frozenset[FuzzySet]

    def __post_init__(self):
        for o in self.opens:
            if o.carrier != self.carrier:
                raise CarrierMismatchError("open not on the space's carrier")
            if o.lattice != self.lattice:
                raise CarrierMismatchError("open uses a foreign grade lattice")

    @property
    def bottom_open(self) -> FuzzySet:
        return FuzzySet.empty(self.carrier, self.lattice)

    @property
    def top_open(self) -> FuzzySet:
        return FuzzySet.full(self.carrier, self.lattice)

    def sorted_opens(self) -> tuple[FuzzySet, ...]:
        """Opens in canonical numerator-tuple order."""
        return tuple(sorted(self.opens, key=lambda f: f.key()))

    def is_open(self, f: FuzzySet) -> bool:
        return f in self.opens


@dataclass(frozen=True)
class TopologyCheck:
    """Verdict of is_topology; violation names the first failing witness."""

    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_topology(space: FuzzySpace) -> TopologyCheck:
    """Constants present and binary meet/join closure; first violation reported."""
    opens = space.sorted_opens()
    if space.bottom_open not in space.opens:
        return TopologyCheck(False, "constant-0 fuzzy set missing")
    if space.top_open not in space.opens:
        return TopologyCheck(False, "constant-1 fuzzy set missing")
    for a in opens:
        for b in opens:
            if fs_meet(a, b) not in space.opens:
                return TopologyCheck(False, f"meet of {a} and {b} not open")
            if fs_join(a, b) not in space.opens:
                return TopologyCheck(False, f"join of {a} and {b} not open")
    return TopologyCheck(True)


def generate_topology(carrier: Carrier, lattice: GradeLattice,
                      subbasis: Iterable[FuzzySet],
                      max_size: int = DEFAULT_MAX_SIZE) -> FuzzySpace:
    """Smallest fuzzy topology containing the subbasis.

    Adds the two constants, then closes under binary meets (yielding a
    basis) and binary joins, iterating to a fixpoint. The family of all
    fuzzy sets here is finite, so the fixpoint exists and realizes
    closure under arbitrary joins.
    """
    current: set[FuzzySet] = {FuzzySet.empty(carrier, lattice),
                              FuzzySet.full(carrier, lattice)}
    for s in subbasis:
        if s.carrier != carrier:
            raise CarrierMismatchError("subbasis member not on the given carrier")
        current.add(s)

    def close(op) -> None:
        while True:
            ordered = sorted(current, key=lambda f: f.key())
            fresh = {c for i, a in enumerate(ordered) for b in ordered[i:]
                     if (c := op(a, b)) not in current}
            if not fresh:
                return
            current.update(fresh)
            if len(current) > max_size:
                raise ResourceLimitError("topology generation", len(current), max_size)

    close(fs_meet)  # basis: finite meets of subbasis members
    close(fs_join)  # meets of joins reduce to joins of basis meets
    return FuzzySpace(carrier, lattice, frozenset(current))


def discrete_space(carrier: Carrier, lattice: GradeLattice,
                   max_size: int = DEFAULT_MAX_SIZE) -> FuzzySpace:
    """All fuzzy sets open."""
    from .fuzzyset import all_fuzzy_sets

    return FuzzySpace(carrier, lattice,
                      frozenset(all_fuzzy_sets(carrier, lattice, max_size)))


def indiscrete_space(carrier: Carrier, lattice: GradeLattice) -> FuzzySpace:
    """Only the two constants open."""
    return FuzzySpace(carrier, lattice,
                      frozenset({FuzzySet.empty(carrier, lattice),
                                 FuzzySet.full(carrier, lattice)}))


def is_t0(space: FuzzySpace) -> bool:
    """Some open separates the grades of every pair of distinct points."""
    for i, x in enumerate(space.carrier.elements):
        for y in space.carrier.elements[i + 1:]:
            if all(o(x) == o(y) for o in space.opens):
                return False
    return True


def is_continuous(f: CarrierMap, source: FuzzySpace, target: FuzzySpace) -> bool:
    """Every pullback of a target open is open in the source."""
    if f.source != source.carrier or f.target != target.carrier:
        raise CarrierMismatchError("map does not connect the two spaces")
    return all(inverse_image(f, o) in source.opens for o in target.opens)


def subspace_topology(rel: Relation, left: FuzzySpace, right: FuzzySpace,
                      max_size: int = DEFAULT_MAX_SIZE) -> FuzzySpace:
    """Topology on a relation's pair carrier, generated by the pullbacks of
    the two sides' opens along the projections."""
    if rel.left != left.carrier or rel.right != right.carrier:
        raise CarrierMismatchError("relation does not connect the two spaces")
    pi1, pi2 = rel.projections()
    gens = [inverse_image(pi1, o) for o in left.sorted_opens()]
    gens += [inverse_image(pi2, o) for o in right.sorted_opens()]
    return generate_topology(rel.pair_carrier(), left.lattice, gens, max_size)


def opens_frame(space: FuzzySpace):
    """The opens ordered pointwise, as a finite frame."""
    from .frames import FiniteFrame

    opens = space.sorted_opens()
    leq = frozenset((a, b) for a in opens for b in opens if fs_leq(a, b))
    return FiniteFrame(opens, leq, bottom=space.bottom_open, top=space.top_open)
