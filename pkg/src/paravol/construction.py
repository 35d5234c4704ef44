"""Coherent collections of parahorics, covolume ratios, certified families.

A coherent collection fixes one parahoric type per place; its arithmetic
subgroup is the intersection of the chosen parahorics with the rational
points.  Covolumes are only ever compared between collections over the same
places, where the comparison is the exact product of local factor ratios,
optionally times indices of torsion-free congruence refinements.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .diagram import IWAHORI, ParahoricTypeSpec
from .errors import (
    CertificateError,
    DomainError,
    EqualCharacteristicError,
    IncomparableError,
    InvalidResidueError,
    UnknownPlaceError,
)
from .parahoric import ONE, HalfPowerRational, conjugate_types, factor_ratio
from .reductive import is_prime, prime_power_base, quotient_descriptor

CITATIONS = (
    "equal covolume: the covolume ratio is the product over shared places of "
    "local volume factor ratios (Prasad's volume formula); the global constant "
    "and the shared residue exponents cancel",
    "index of a refinement: the index of a coherent congruence refinement is "
    "the product of the local indices, by strong approximation for simply "
    "connected groups",
    "non-conjugacy: at the witness place the two parahoric types lie in "
    "different orbits of the realized diagram automorphisms, so no conjugation "
    "can identify the collections",
    "from non-conjugate to non-isomorphic: strong (Mostow) rigidity upgrades "
    "non-conjugacy of the lattices to non-isomorphism of the quotient spaces",
)


@dataclass(frozen=True)
class Place:
    """A finite place: id, residue size q = p^k, characteristic p, local index."""

    id: str
    q: int
    p: int
    local_index: object

    def __post_init__(self):
        base = prime_power_base(self.q)
        if base is None:
            raise InvalidResidueError(
                f"invalid residue size at place {self.id}: {self.q} is not a prime power")
        if not is_prime(self.p) or base != self.p:
            raise InvalidResidueError(
                f"invalid residue size at place {self.id}: {self.q} is not a power of {self.p}")

    def key(self):
        return (self.id, self.q, self.p, self.local_index.group.label)


@dataclass(frozen=True)
class CoherentCollection:
    """One parahoric type per place, plus places refined to congruence kernels."""

    group: object  # GroupSpec
    places: tuple
    types: tuple  # ParahoricTypeSpec per place, aligned with places
    refinements: tuple = ()  # sorted place ids

    def index_of(self, pid):
        for i, pl in enumerate(self.places):
            if pl.id == pid:
                return i
        raise UnknownPlaceError(f"unknown place id: {pid}")

    def place(self, pid):
        return self.places[self.index_of(pid)]

    def type_at(self, pid):
        return self.types[self.index_of(pid)]

    def assignment(self):
        return {pl.id: list(t.vertices) for pl, t in zip(self.places, self.types)}

    def to_json(self):
        return {"assignment": self.assignment(), "refinements": list(self.refinements)}


def make_collection(group, places, overrides=None, refinements=()):
    """Assemble a collection; absent places carry the diagram's default type."""
    places = tuple(places)
    ids = [pl.id for pl in places]
    if len(set(ids)) != len(ids):
        raise DomainError("duplicate place ids in collection")
    overrides = dict(overrides or {})
    for pid in overrides:
        if pid not in ids:
            raise UnknownPlaceError(f"unknown place id: {pid}")
    types = []
    for pl in places:
        t = overrides.get(pl.id)
        t = pl.local_index.default_type() if t is None else ParahoricTypeSpec.coerce(t)
        types.append(pl.local_index.check_proper(t))
    coll = CoherentCollection(group, places, tuple(types))
    if refinements:
        refinements = tuple(sorted(refinements))
        _check_refinements(coll, refinements)
        coll = replace(coll, refinements=refinements)
    return coll


def _check_refinements(coll, refinements):
    chars = {}
    for pid in refinements:
        p = coll.place(pid).p
        if p in chars:
            raise EqualCharacteristicError(
                f"equal residue characteristic: places {chars[p]} and {pid} share p={p}")
        chars[p] = pid


def refinement_index(place, t):
    """Index of the congruence kernel of the parahoric inside the parahoric."""
    d = place.local_index
    desc = quotient_descriptor(d, t)
    codim = d.group.dimension() - desc.dim
    return place.q ** codim * desc.order(place.q)


def apply_torsionfree_refinement(coll, pid1, pid2):
    """Refine at two places of distinct residue characteristic."""
    p1 = coll.place(pid1).p
    p2 = coll.place(pid2).p
    if pid1 == pid2 or p1 == p2:
        raise EqualCharacteristicError(
            f"equal residue characteristic: {pid1} and {pid2} share p={p1}")
    for pid in (pid1, pid2):
        if pid in coll.refinements:
            raise DomainError(f"place {pid} already refined")
    refinements = tuple(sorted(coll.refinements + (pid1, pid2)))
    _check_refinements(coll, refinements)
    return replace(coll, refinements=refinements)


def _check_comparable(a, b):
    if a.group.label != b.group.label or len(a.places) != len(b.places):
        raise IncomparableError("incomparable collections")
    for pa, pb in zip(a.places, b.places):
        if pa.key() != pb.key():
            raise IncomparableError("incomparable collections")


def relative_covolume(a, b):
    """Exact covolume ratio covol(a)/covol(b) over the shared places."""
    _check_comparable(a, b)
    ratio = ONE
    for pl, ta, tb in zip(a.places, a.types, b.types):
        if ta != tb:
            ratio = ratio * factor_ratio(pl.local_index, ta, tb, pl)
    for pid in a.refinements:
        ratio = ratio * HalfPowerRational(refinement_index(a.place(pid), a.type_at(pid)))
    for pid in b.refinements:
        ratio = ratio * HalfPowerRational(refinement_index(b.place(pid), b.type_at(pid))).inverse()
    return ratio


@dataclass(frozen=True)
class FamilyCertificate:
    """Members with pairwise exact covolume ratios and non-conjugacy witnesses."""

    members: tuple
    ratios: tuple  # full matrix of HalfPowerRational
    witnesses: tuple  # (i, j, place_id, t_i, t_j) per member pair i < j
    citations: tuple = CITATIONS

    def to_json(self):
        first = self.members[0]
        return {
            "group": first.group.label,
            "places": [
                {"id": pl.id, "q": pl.q, "p": pl.p, "index": pl.local_index.group.label}
                for pl in first.places
            ],
            "members": [m.to_json() for m in self.members],
            "ratios": [[r.to_json() for r in row] for row in self.ratios],
            "witnesses": [
                {
                    "pair": [i, j],
                    "place": pid,
                    "t1": list(t1.vertices),
                    "t2": list(t2.vertices),
                }
                for (i, j, pid, t1, t2) in self.witnesses
            ],
            "citations": list(self.citations),
        }


def certify_family(members):
    """Check equal covolume and pairwise non-conjugacy; raise on failure."""
    members = tuple(members)
    if len(members) < 2:
        raise CertificateError("a family needs at least two members")
    for m in members[1:]:
        _check_comparable(members[0], m)
    ratios = tuple(
        tuple(relative_covolume(a, b) for b in members) for a in members
    )
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if not ratios[i][j].is_one:
                raise CertificateError(
                    f"not equal covolume: members {i} and {j} have ratio {ratios[i][j]!r}")
    witnesses = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            witness = None
            for pl, ti, tj in zip(members[i].places, members[i].types, members[j].types):
                if ti != tj and not conjugate_types(pl.local_index, ti, tj):
                    witness = (i, j, pl.id, ti, tj)
                    break
            if witness is None:
                raise CertificateError(f"no witness separating members {i} and {j}")
            witnesses.append(witness)
    return FamilyCertificate(members, ratios, tuple(witnesses))


def swap_types(d):
    """Canonical non-conjugate type pair for the two-place exchange trick."""
    return IWAHORI, d.default_type()


def build_family(group, places, family_ids, pairs=None, fallback_swap=False,
                 refine=None):
    """The 2^m (or fallback 2^(m//2)) coherent collections of equal covolume.

    family_ids names the places where members vary.  pairs optionally gives
    an explicit (t1, t2) per family place; otherwise the engine takes the
    first symbolic equal-volume pair of the diagram there.  With
    fallback_swap the family places are taken in consecutive twos with equal
    residue size and members swap a fixed non-conjugate type pair across
    each two; ratios still cancel exactly.  refine names two extra places
    for an identical torsion-free refinement of every member.
    """
    from .parahoric import find_equal_volume_pairs

    places = tuple(places)
    by_id = {pl.id: pl for pl in places}
    for pid in family_ids:
        if pid not in by_id:
            raise UnknownPlaceError(f"unknown place id: {pid}")
    if len(set(family_ids)) != len(family_ids):
        raise DomainError("duplicate family place ids")
    if refine:
        for pid in refine:
            if pid not in by_id:
                raise UnknownPlaceError(f"unknown place id: {pid}")
            if pid in family_ids:
                raise DomainError(f"refinement place {pid} may not be a family place")

    variations = []  # (place ids, list of override-dicts), one factor of choices
    if fallback_swap:
        if len(family_ids) < 2:
            raise DomainError("fallback swap needs at least two family places")
        for a, b in zip(family_ids[::2], family_ids[1::2]):
            pa, pb = by_id[a], by_id[b]
            if pa.q != pb.q:
                raise DomainError(
                    f"fallback swap needs equal residue sizes, got {pa.q} at {a} and {pb.q} at {b}")
            t1, t2 = swap_types(pa.local_index)
            variations.append(((a, b), [{a: t1, b: t2}, {a: t2, b: t1}]))
    else:
        pairs = dict(pairs or {})
        for pid in family_ids:
            pl = by_id[pid]
            if pid in pairs:
                t1, t2 = (pl.local_index.check_proper(t) for t in pairs[pid])
                _check_family_pair(pl.local_index, t1, t2)
            else:
                found = find_equal_volume_pairs(pl.local_index)
                if not found:
                    raise DomainError(
                        f"no equal-volume pair of non-conjugate types at place {pid} "
                        f"({pl.local_index.group.label}); try the two-place swap fallback")
                t1, t2 = found[0]
            variations.append(((pid,), [{pid: t1}, {pid: t2}]))

    members = []
    for bits in range(2 ** len(variations)):
        overrides = {}
        for k, (_, choices) in enumerate(variations):
            overrides.update(choices[bits >> k & 1])
        member = make_collection(group, places, overrides)
        if refine:
            member = apply_torsionfree_refinement(member, refine[0], refine[1])
        members.append(member)
    return members


def _check_family_pair(d, t1, t2):
    if conjugate_types(d, t1, t2):
        raise DomainError(f"family pair {t1!r}, {t2!r} is conjugate")
    d1 = quotient_descriptor(d, t1)
    d2 = quotient_descriptor(d, t2)
    if d1.dim != d2.dim or d1.order != d2.order:
        raise DomainError(f"family pair {t1!r}, {t2!r} has unequal volume factors")
