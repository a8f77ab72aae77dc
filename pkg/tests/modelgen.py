"""Shared test machinery: deterministic model zoo and independent oracles.

The oracles here deliberately avoid the library's closure algorithms:
topology generation is checked against intersection of all closed
families, and modal equivalence against raw formula syntax evaluated
node by node.
"""

from __future__ import annotations

from itertools import product

from fgml import (
    And,
    Carrier,
    CarrierMap,
    FuzzySet,
    Modal,
    Model,
    Or,
    Prop,
    Signature,
    Top,
    evaluate,
    fuzzy_powerset_functor,
    generate_topology,
    identity_functor,
    inverse_image,
    make_lattice,
    validate_model,
)
from fgml.fuzzyset import all_fuzzy_sets
from fgml.signature import powerset_atom_name

FIXTURES = __file__.rsplit("/", 1)[0] + "/fixtures"


def m1_model() -> tuple[Model, Signature]:
    """The worked two-state diamond model used across the suite."""
    lat = make_lattice(2)
    c = Carrier(("x", "y"))
    g = lat.grade
    vp = FuzzySet(c, lat, (g(2), g(1)))
    dia_p = FuzzySet(c, lat, (g(1), g(1)))
    space = generate_topology(c, lat, [vp, dia_p])
    functor, sig = fuzzy_powerset_functor(lat, ("dia",))
    image = functor.on_space(space)
    sx = FuzzySet(c, lat, (g(0), g(2)))
    sy = FuzzySet(c, lat, (g(1), g(0)))
    sigma = CarrierMap(c, image.carrier,
                       (powerset_atom_name(sx), powerset_atom_name(sy)))
    return Model.create(space, sigma, {"p": vp}), sig


def complete_powerset_model(carrier: Carrier, lat, sigma_sets, valuation,
                            sig: Signature, extra_opens=()) -> Model:
    """Build a valid fuzzy-powerset model by topology completion.

    Starts from the valuation images (plus extras), then adds structure
    map pullbacks of image opens until the structure map is continuous;
    the family of fuzzy sets is finite, so the loop terminates.
    """
    functor = sig.functor
    gens = list(valuation.values()) + list(extra_opens)
    space = generate_topology(carrier, lat, gens)
    while True:
        image = functor.on_space(space)
        sigma = CarrierMap(carrier, image.carrier,
                           tuple(powerset_atom_name(sigma_sets[e]) for e in carrier))
        missing = [inverse_image(sigma, o) for o in image.sorted_opens()
                   if inverse_image(sigma, o) not in space.opens]
        if not missing:
            model = Model.create(space, sigma, valuation)
            check = validate_model(model, sig)
            assert check.ok, check.problems
            return model
        space = generate_topology(carrier, lat, list(space.opens) + missing)


def complete_identity_model(carrier: Carrier, lat, assignment, valuation,
                            sig: Signature, extra_opens=()) -> Model:
    """Identity-functor analogue of complete_powerset_model."""
    gens = list(valuation.values()) + list(extra_opens)
    space = generate_topology(carrier, lat, gens)
    sigma = CarrierMap(carrier, carrier, assignment)
    while True:
        missing = [inverse_image(sigma, o) for o in space.sorted_opens()
                   if inverse_image(sigma, o) not in space.opens]
        if not missing:
            model = Model.create(space, sigma, valuation)
            check = validate_model(model, sig)
            assert check.ok, check.problems
            return model
        space = generate_topology(carrier, lat, list(space.opens) + missing)


_NAMES = ("a", "b", "c")


def _pattern(carrier: Carrier, lat, offset: int, step: int) -> FuzzySet:
    top = lat.den
    nums = [(offset + i * step) % (top + 1) for i in range(len(carrier))]
    return FuzzySet(carrier, lat, tuple(lat.grade(k) for k in nums))


def powerset_zoo(max_states: int, dens=(1, 2), modalities=("dia",),
                 max_per_size: int = 4) -> list[tuple[Model, Signature]]:
    """Deterministic family of valid fuzzy-powerset models.

    Every other multi-state entry values a second proposition, so the
    sweeps exercise richer valuations too.
    """
    out = []
    for d in dens:
        lat = make_lattice(d)
        functor, sig = fuzzy_powerset_functor(lat, modalities)
        for n in range(1, max_states + 1):
            carrier = Carrier(_NAMES[:n])
            combos = []
            for v_off, v_step in ((d, 1), (1, 0), (0, 1)):
                for s_off, s_step in ((0, 1), (d, d), (1, 1)):
                    combos.append((v_off, v_step, s_off, s_step))
            taken = 0
            seen = set()
            for v_off, v_step, s_off, s_step in combos:
                if taken >= max_per_size:
                    break
                valuation = {"p": _pattern(carrier, lat, v_off, v_step)}
                if n >= 2 and taken % 2 == 0:
                    valuation["q"] = _pattern(carrier, lat, d, d)
                sigma_sets = {e: _pattern(carrier, lat, s_off + i, s_step)
                              for i, e in enumerate(carrier)}
                key = (tuple(sorted((p, v.key()) for p, v in valuation.items())),
                       tuple(sigma_sets[e].key() for e in carrier))
                if key in seen:
                    continue
                seen.add(key)
                model = complete_powerset_model(carrier, lat, sigma_sets,
                                                valuation, sig)
                out.append((model, sig))
                taken += 1
    return out


def identity_zoo(max_states: int, dens=(1, 2)) -> list[tuple[Model, Signature]]:
    """Deterministic family of valid identity-functor models."""
    out = []
    _, sig = identity_functor()
    for d in dens:
        lat = make_lattice(d)
        for n in range(1, max_states + 1):
            carrier = Carrier(_NAMES[:n])
            assignments = {tuple(carrier.elements),
                           tuple(carrier.elements[0] for _ in carrier),
                           tuple(reversed(carrier.elements))}
            for assignment in sorted(assignments):
                vp = _pattern(carrier, lat, d, 1)
                model = complete_identity_model(carrier, lat, assignment,
                                                {"p": vp}, sig)
                out.append((model, sig))
    return out


def duplicate_state(model: Model, sig: Signature, state: str, copy: str) -> Model:
    """A fuzzy-powerset model with one state duplicated.

    The copy gets the same prop grades and the same structure image
    (spread over the enlarged carrier), so it is modally equivalent to
    the original state by construction.
    """
    old = model.space.carrier
    lat = model.space.lattice
    new_carrier = Carrier(old.elements + (copy,))

    def widen(fs: FuzzySet, copy_from: str | None = None) -> FuzzySet:
        extra = fs(copy_from) if copy_from else lat.bottom
        return FuzzySet(new_carrier, lat, fs.grades + (extra,))

    functor = sig.functor
    old_atoms = {e: model.sigma(e) for e in old}

    def decode(atom: str) -> FuzzySet:
        grades = () if atom == "{}" else tuple(
            lat.parse(part) for part in atom.split(","))
        return FuzzySet(old, lat, grades)

    sigma_sets = {e: widen(decode(old_atoms[e])) for e in old}
    sigma_sets[copy] = widen(decode(old_atoms[state]))
    valuation = {name: widen(v, copy_from=state) for name, v in model.valuation}
    return complete_powerset_model(new_carrier, lat, sigma_sets, valuation, sig)


def all_maps(source: Carrier, target: Carrier) -> list[CarrierMap]:
    """Every function between the carriers, in deterministic order."""
    return [CarrierMap(source, target, assignment)
            for assignment in product(target.elements, repeat=len(source))]


def oracle_topology(carrier: Carrier, lat, subbasis) -> frozenset[FuzzySet]:
    """Intersection of every fuzzy-set family that is a topology and
    contains the subbasis. Independent of generate_topology."""
    universe = all_fuzzy_sets(carrier, lat)
    bot = FuzzySet.empty(carrier, lat)
    top = FuzzySet.full(carrier, lat)
    want = set(subbasis)

    def closed(family: frozenset[FuzzySet]) -> bool:
        if bot not in family or top not in family:
            return False
        from fgml import fs_join, fs_meet

        return all(fs_meet(a, b) in family and fs_join(a, b) in family
                   for a in family for b in family)

    meet_all = set(universe)
    n = len(universe)
    assert n <= 16, "oracle only runs at tiny scale"
    for mask in range(1 << n):
        family = frozenset(universe[i] for i in range(n) if mask >> i & 1)
        if want <= family and closed(family):
            meet_all &= family
    return frozenset(meet_all)


def oracle_formulas(models, sig: Signature, depth: int) -> list:
    """Depth-bounded formula syntax, deduplicated by direct evaluation.

    Builds raw syntax trees and evaluates each with evaluate(); shares
    no closure code with definable_opens or enumerate_formulas.
    """
    props = models[0].props

    def key(formula):
        return tuple(evaluate(m, sig, formula) for m in models)

    reps = {}
    for f in [Top(), Or(())] + [Prop(p) for p in props]:
        reps.setdefault(key(f), f)
    for _ in range(depth):
        existing = list(reps.values())
        for fa in existing:
            for fb in existing:
                for cand in (And(fa, fb), Or((fa, fb)), Or((fb, fa, Top()))):
                    reps.setdefault(key(cand), cand)
        for lifting in sig.liftings:
            for combo in product(existing, repeat=lifting.arity):
                cand = Modal(lifting.name, tuple(combo))
                reps.setdefault(key(cand), cand)
    return list(reps.values())


def oracle_partition(model: Model, sig: Signature, depth: int):
    """Partition of the carrier by the depth-bounded formula oracle."""
    formulas = oracle_formulas([model], sig, depth)
    values = [evaluate(model, sig, f) for f in formulas]
    groups: dict[tuple, list[str]] = {}
    for s in model.space.carrier:
        groups.setdefault(tuple(v(s) for v in values), []).append(s)
    return {frozenset(g) for g in groups.values()}
