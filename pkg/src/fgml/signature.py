"""Endofunctor instances on finite fuzzy spaces and their modal liftings.

Two built-in functors: the identity functor with its identity lifting,
and a fuzzy powerset functor whose carrier at S enumerates every
lattice-valued fuzzy subset of S. The diamond lifting is sup-min
composition, box is its De Morgan dual; the topology on the image space
is generated by the chosen liftings' images, so the built-in signatures
are characteristic by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Sequence

from .errors import (
    ArityMismatchError,
    CarrierMismatchError,
    DiscontinuousMapError,
    UnknownModalityError,
)
from .fuzzyset import (
    DEFAULT_MAX_SIZE,
    Carrier,
    CarrierMap,
    FuzzySet,
    all_fuzzy_sets,
    direct_image,
    fs_complement,
    fs_leq,
    inverse_image,
)
from .grades import GradeLattice, complement, join, meet
from .topology import FuzzySpace, generate_topology, is_continuous


@dataclass(frozen=True)
class FunctorInstance:
    """Concrete endofunctor: object part and arrow part."""

    name: str
    on_space: Callable[[FuzzySpace], FuzzySpace]
    on_map: Callable[[CarrierMap, FuzzySpace, FuzzySpace], CarrierMap]


@dataclass(frozen=True)
class Lifting:
    """n-ary modal lifting: opens on S to a fuzzy set on the image of S.

    Outputs are opens of the image space whenever the lifting belongs to
    the generating signature; derived duals may fall outside the image
    topology, so apply() accepts arbitrary fuzzy sets mechanically.
    """

    name: str
    arity: int
    functor: FunctorInstance
    _raw: Callable[[FuzzySpace, tuple[FuzzySet, ...]], FuzzySet]

    def apply(self, space: FuzzySpace, args: Sequence[FuzzySet]) -> FuzzySet:
        args = tuple(args)
        if len(args) != self.arity:
            raise ArityMismatchError(
                f"lifting {self.name!r} takes {self.arity} arguments, got {len(args)}")
        for a in args:
            if a.carrier != space.carrier:
                raise CarrierMismatchError("lifting argument not on the space's carrier")
        return self._raw(space, args)


@dataclass(frozen=True)
class Signature:
    """A functor with its chosen collection of liftings."""

    functor: FunctorInstance
    liftings: tuple[Lifting, ...]

    def lifting(self, name: str) -> Lifting:
        for l in self.liftings:
            if l.name == name:
                return l
        raise UnknownModalityError(f"no lifting named {name!r} in the signature")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(l.name for l in self.liftings)


def identity_functor() -> tuple[FunctorInstance, Signature]:
    """T S = S and T f = f, with the identity lifting named "id"."""
    functor = FunctorInstance(
        name="identity",
        on_space=lambda space: space,
        on_map=lambda f, source, target: f,
    )
    lifting = Lifting("id", 1, functor, lambda space, args: args[0])
    return functor, Signature(functor, (lifting,))


@lru_cache(maxsize=None)
def _powerset_atoms(carrier: Carrier, lattice: GradeLattice, max_size: int
                    ) -> tuple[Carrier, tuple[FuzzySet, ...]]:
    """Carrier of all fuzzy subsets (as named atoms) plus the subsets
    themselves, in matching enumeration order."""
    subsets = all_fuzzy_sets(carrier, lattice, max_size)
    names = tuple(",".join(str(g) for g in fs.grades) if len(fs.grades) else "{}"
                  for fs in subsets)
    return Carrier(names), subsets


def powerset_atom_name(fs: FuzzySet) -> str:
    """Canonical atom name of a fuzzy subset inside the powerset carrier."""
    return ",".join(str(g) for g in fs.grades) if len(fs.grades) else "{}"


def fuzzy_powerset_functor(lattice: GradeLattice,
                           modalities: Iterable[str] = ("dia",),
                           max_size: int = DEFAULT_MAX_SIZE
                           ) -> tuple[FunctorInstance, Signature]:
    """Fuzzy powerset functor with the requested generating signature.

    The image of a space S has one atom per lattice-valued fuzzy subset
    of S; the arrow part sends a subset to its direct image. Diamond is
    dia(m)(v) = sup_s min(v(s), m(s)); box is box(m)(v) =
    inf_s max(1 - v(s), m(s)). The topology on the image is generated by
    the images of the requested modalities over all opens, which makes
    the returned signature characteristic for the functor.
    """
    mods = tuple(modalities)
    for m in mods:
        if m not in ("dia", "box"):
            raise UnknownModalityError(f"unknown built-in modality {m!r}")
    if not mods:
        raise UnknownModalityError("at least one generating modality is required")

    generating: list[Lifting] = []
    space_cache: dict[FuzzySpace, FuzzySpace] = {}
    map_cache: dict[tuple[CarrierMap, Carrier, Carrier], CarrierMap] = {}

    def on_space(space: FuzzySpace) -> FuzzySpace:
        if space not in space_cache:
            atoms, _ = _powerset_atoms(space.carrier, lattice, max_size)
            gens = []
            for l in generating:
                for args in product(space.sorted_opens(), repeat=l.arity):
                    gens.append(l.apply(space, args))
            space_cache[space] = generate_topology(atoms, lattice, gens, max_size)
        return space_cache[space]

    def on_map(f: CarrierMap, source: FuzzySpace, target: FuzzySpace) -> CarrierMap:
        key = (f, source.carrier, target.carrier)
        if key not in map_cache:
            src_atoms, src_subsets = _powerset_atoms(source.carrier, lattice, max_size)
            tgt_atoms, _ = _powerset_atoms(target.carrier, lattice, max_size)
            assignment = tuple(powerset_atom_name(direct_image(f, nu))
                               for nu in src_subsets)
            map_cache[key] = CarrierMap(src_atoms, tgt_atoms, assignment)
        return map_cache[key]

    functor = FunctorInstance(name="fuzzy-powerset", on_space=on_space, on_map=on_map)

    def dia_raw(space: FuzzySpace, args: tuple[FuzzySet, ...]) -> FuzzySet:
        (mu,) = args
        atoms, subsets = _powerset_atoms(space.carrier, lattice, max_size)
        values = []
        for nu in subsets:
            g = lattice.bottom
            for a, b in zip(nu.grades, mu.grades):
                g = join(g, meet(a, b))
            values.append(g)
        return FuzzySet(atoms, lattice, tuple(values))

    def box_raw(space: FuzzySpace, args: tuple[FuzzySet, ...]) -> FuzzySet:
        (mu,) = args
        atoms, subsets = _powerset_atoms(space.carrier, lattice, max_size)
        values = []
        for nu in subsets:
            g = lattice.top
            for a, b in zip(nu.grades, mu.grades):
                g = meet(g, join(complement(a), b))
            values.append(g)
        return FuzzySet(atoms, lattice, tuple(values))

    raw = {"dia": dia_raw, "box": box_raw}
    liftings = tuple(Lifting(m, 1, functor, raw[m]) for m in mods)
    generating.extend(liftings)
    return functor, Signature(functor, liftings)


def dual_lifting(l: Lifting) -> Lifting:
    """Pointwise complement of the lifting applied to complemented arguments."""

    def raw(space: FuzzySpace, args: tuple[FuzzySet, ...]) -> FuzzySet:
        return fs_complement(l.apply(space, tuple(fs_complement(a) for a in args)))

    return Lifting(f"dual_{l.name}", l.arity, l.functor, raw)


@dataclass(frozen=True)
class LiftingCheck:
    ok: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_monotone(l: Lifting, space: FuzzySpace) -> LiftingCheck:
    """Pointwise order preservation over every comparable open tuple."""
    opens = space.sorted_opens()
    for lo in product(opens, repeat=l.arity):
        for hi in product(opens, repeat=l.arity):
            if all(fs_leq(a, b) for a, b in zip(lo, hi)):
                if not fs_leq(l.apply(space, lo), l.apply(space, hi)):
                    return LiftingCheck(
                        False,
                        f"{l.name} not monotone on "
                        f"{tuple(map(str, lo))} <= {tuple(map(str, hi))}")
    return LiftingCheck(True)


def check_natural(l: Lifting, f: CarrierMap, source: FuzzySpace,
                  target: FuzzySpace) -> LiftingCheck:
    """Naturality square for one continuous map, on every open tuple."""
    if not is_continuous(f, source, target):
        raise DiscontinuousMapError("check_natural requires a fuzzy continuous map")
    image_map = l.functor.on_map(f, source, target)
    for args in product(target.sorted_opens(), repeat=l.arity):
        lhs = l.apply(source, tuple(inverse_image(f, a) for a in args))
        rhs = inverse_image(image_map, l.apply(target, args))
        if lhs != rhs:
            return LiftingCheck(
                False,
                f"{l.name} naturality fails on opens {tuple(map(str, args))}")
    return LiftingCheck(True)


def check_characteristic(sig: Signature, space: FuzzySpace,
                         max_size: int = DEFAULT_MAX_SIZE) -> bool:
    """The liftings' images over opens generate exactly the image topology."""
    image_space = sig.functor.on_space(space)
    gens = []
    for l in sig.liftings:
        for args in product(space.sorted_opens(), repeat=l.arity):
            gens.append(l.apply(space, args))
    regenerated = generate_topology(image_space.carrier, space.lattice,
                                    gens, max_size)
    return regenerated.opens == image_space.opens
