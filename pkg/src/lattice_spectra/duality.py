"""The functorial layer: homomorphism classification, the spectrum and
essential-set functors on morphisms, the reconstruction isomorphisms, and the
bridge between the bitopological and the classical pictures.

Everything here is verified extensionally: the categories at desk scale are
concrete and finite, so functor laws and naturality squares are checked by
direct evaluation rather than symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bitsets import BitMask, bits, full_mask, is_subset, mask_of
from .errors import NotBDSpace, NotDoublyBD, NotPairwiseBD, NotQuasiProper
from .lattices import (
    FiniteLattice,
    LatticeHom,
    is_prime_ideal,
    lattice_from_order,
)
from .spectra import (
    BitopSpectrum,
    ClassicalSpectrum,
    _is_comaximal,
    build_bitop_spectrum,
    build_classical_spectrum,
    comaximal_pairs,
)
from .topology import (
    BitopSpace,
    FiniteTopology,
    doubled_space,
    essential_subsets,
    fundamental_subsets,
    is_bd_space,
    is_pairwise_bd,
    op_d,
    op_i,
    preimage_mask,
)


# ---------------------------------------------------------------------------
# homomorphism classification


@dataclass(frozen=True)
class HomClassification:
    """Properness data for a lattice homomorphism.

    proper: prime-ideal preimages are prime (vacuously true when the target
    spectrum is empty, recorded separately).  quasi_proper: comaximal-pair
    preimages are comaximal.  Witnesses name the first failing target object.
    """

    hom: LatticeHom
    proper: bool
    vacuously_proper: bool
    proper_witness: str | None
    quasi_proper: bool
    quasi_witness: str | None


def classify_hom(hom: LatticeHom) -> HomClassification:
    src, tgt = hom.source, hom.target
    primes = build_classical_spectrum(tgt).points
    proper = True
    proper_witness = None
    for p in primes:
        pre = hom.preimage(p.members)
        if not is_prime_ideal(src, pre):
            proper = False
            proper_witness = f"preimage of {p.label()} is not a prime ideal"
            break
    quasi_proper = True
    quasi_witness = None
    for pair in comaximal_pairs(tgt):
        pre_i = hom.preimage(pair.ideal.members)
        pre_f = hom.preimage(pair.filter.members)
        if not _is_comaximal(src, pre_i, pre_f):
            quasi_proper = False
            quasi_witness = f"preimage of {pair.label()} is not comaximal"
            break
    return HomClassification(
        hom, proper, len(primes) == 0, proper_witness, quasi_proper, quasi_witness
    )


# ---------------------------------------------------------------------------
# morphisms of pairwise Balbes-Dwinger spaces


@dataclass(frozen=True)
class PBDMorphism:
    """A verified morphism of pairwise Balbes-Dwinger spaces.

    ``mapping[k]`` is the target point of source point k.  Construction via
    :func:`pbd_morphism` checks bicontinuity, that essential sets pull back
    to essential sets, and that preimage commutes with the transition
    operators on essential sets.
    """

    source: BitopSpace
    target: BitopSpace
    mapping: tuple[int, ...]

    def preimage(self, target_mask: BitMask) -> BitMask:
        return preimage_mask(self.mapping, target_mask)


def pbd_morphism(source: BitopSpace, target: BitopSpace, mapping) -> PBDMorphism:
    mapping = tuple(mapping)
    if len(mapping) != source.n or any(not 0 <= v < target.n for v in mapping):
        raise ValueError("mapping is not a point map between the carriers")
    for u in target.tau.opens:
        if preimage_mask(mapping, u) not in source.tau.opens:
            raise ValueError("map is not tau-continuous")
    for u in target.sigma.opens:
        if preimage_mask(mapping, u) not in source.sigma.opens:
            raise ValueError("map is not sigma-continuous")
    src_ess = essential_subsets(source).members
    tgt_ess = essential_subsets(target).members
    space_pair = (source, target)
    for a in tgt_ess:
        pre = preimage_mask(mapping, a)
        if pre not in src_ess:
            raise ValueError("essential set does not pull back to an essential set")
        if preimage_mask(mapping, op_d(target, a)) != op_d(source, pre):
            raise ValueError("preimage does not commute with d on essential sets")
        if preimage_mask(mapping, op_i(target, a)) != op_i(source, pre):
            raise ValueError("preimage does not commute with i on essential sets")
    del space_pair
    return PBDMorphism(source, target, mapping)


def identity_morphism(space: BitopSpace) -> PBDMorphism:
    return pbd_morphism(space, space, tuple(range(space.n)))


def compose_morphisms(f: PBDMorphism, g: PBDMorphism) -> PBDMorphism:
    """g after f (requires f.target == g.source)."""
    if f.target != g.source:
        raise ValueError("morphisms are not composable")
    return pbd_morphism(f.source, g.target, tuple(g.mapping[v] for v in f.mapping))


def spec_b_on_hom(hom: LatticeHom) -> PBDMorphism:
    """The spectrum functor on a quasi-proper homomorphism f: L -> N, sending
    a comaximal pair of N to its preimage pair; contravariant.

    Verifies the preimage identities (delta and epsilon pull back along f)
    before checking the morphism conditions.
    """
    cls = classify_hom(hom)
    if not cls.quasi_proper:
        raise NotQuasiProper(cls.quasi_witness or "homomorphism is not quasi-proper")
    src_spec = build_bitop_spectrum(hom.source)
    tgt_spec = build_bitop_spectrum(hom.target)
    mapping = []
    for pair in tgt_spec.points:
        mapping.append(
            src_spec.point_index(
                hom.preimage(pair.ideal.members), hom.preimage(pair.filter.members)
            )
        )
    mapping = tuple(mapping)
    for x in range(hom.source.n):
        if preimage_mask(mapping, src_spec.delta[x]) != tgt_spec.delta[hom(x)]:
            raise RuntimeError("delta preimage identity fails")
        if preimage_mask(mapping, src_spec.epsilon[x]) != tgt_spec.epsilon[hom(x)]:
            raise RuntimeError("epsilon preimage identity fails")
    return pbd_morphism(tgt_spec.space, src_spec.space, mapping)


# ---------------------------------------------------------------------------
# the essential-set lattice and functor


@dataclass(frozen=True)
class EssentialLattice:
    """The essential subsets of a space as a lattice under inclusion.

    Join is union and meet is i(d(intersection)); both are re-verified
    against the greatest-lower/least-upper bounds computed from the order.
    ``subsets[k]`` is the point mask realising lattice element k.
    """

    space: BitopSpace
    lattice: FiniteLattice
    subsets: tuple[BitMask, ...]

    def element_of(self, subset: BitMask) -> int:
        return self.subsets.index(subset)


@lru_cache(maxsize=None)
def essential_lattice(space: BitopSpace) -> EssentialLattice:
    members = sorted(essential_subsets(space).members)
    k = len(members)
    names = tuple("{" + ",".join(f"p{i}" for i in bits(m)) + "}" for m in members)
    up = tuple(
        mask_of(j for j in range(k) if is_subset(members[i], members[j]))
        for i in range(k)
    )
    lat = lattice_from_order(names, up, name="essential")
    for i in range(k):
        for j in range(k):
            if members[lat.join_table[i][j]] != members[i] | members[j]:
                raise RuntimeError("essential join is not union")
            if members[lat.meet_table[i][j]] != op_i(space, op_d(space, members[i] & members[j])):
                raise RuntimeError("essential meet is not i(d(intersection))")
    return EssentialLattice(space, lat, tuple(members))


def essential_functor_on_morphism(m: PBDMorphism) -> LatticeHom:
    """The essential-set functor on a morphism f: X -> Y, giving the
    quasi-proper homomorphism A |-> preimage(A) from E(Y) to E(X)."""
    ess_y = essential_lattice(m.target)
    ess_x = essential_lattice(m.source)
    mapping = tuple(
        ess_x.element_of(m.preimage(a)) for a in ess_y.subsets
    )
    hom = LatticeHom(ess_y.lattice, ess_x.lattice, mapping)
    cls = classify_hom(hom)
    if not cls.quasi_proper:
        raise RuntimeError("essential functor produced a non-quasi-proper hom")
    return hom


# ---------------------------------------------------------------------------
# characterization of comaximal pairs of the essential lattice


@dataclass(frozen=True)
class CharComaximalReport:
    """Per-point pairs (I(x), F(x)) of the essential lattice.

    I(x) collects the essential sets missing x, F(x) those whose d-image
    contains x.  For a pairwise Balbes-Dwinger space the assignment is an
    injection onto all comaximal pairs of the essential lattice.
    """

    passed: bool
    point_to_pair: tuple[int, ...]
    injective: bool
    unmatched_pairs: tuple[int, ...]
    d_intersection_empty: bool
    a_intersection_empty: bool


def char_comaximal_of_essential(space: BitopSpace) -> CharComaximalReport:
    report = is_pairwise_bd(space)
    if not report.passed:
        raise NotPairwiseBD(f"axiom ({report.failing_axiom}) fails: {report.witness}")
    ess = essential_lattice(space)
    lat = ess.lattice
    pairs = comaximal_pairs(lat)
    inter_d = full_mask(space.n)
    inter_a = full_mask(space.n)
    for a in ess.subsets:
        inter_d &= op_d(space, a)
        inter_a &= a
    point_to_pair = []
    ok = True
    for x in range(space.n):
        i_mask = mask_of(k for k, a in enumerate(ess.subsets) if not a >> x & 1)
        f_mask = mask_of(k for k, a in enumerate(ess.subsets) if op_d(space, a) >> x & 1)
        found = None
        for idx, pair in enumerate(pairs):
            if pair.ideal.members == i_mask and pair.filter.members == f_mask:
                found = idx
                break
        if found is None:
            ok = False
            found = -1
        point_to_pair.append(found)
    injective = len(set(point_to_pair)) == len(point_to_pair)
    unmatched = tuple(
        idx for idx in range(len(pairs)) if idx not in set(point_to_pair)
    )
    passed = (
        ok
        and injective
        and not unmatched
        and inter_d == 0
        and inter_a == 0
    )
    return CharComaximalReport(
        passed, tuple(point_to_pair), injective, unmatched, inter_d == 0, inter_a == 0
    )


@dataclass(frozen=True)
class HIsoReport:
    """The reconstruction map x |-> (I(x), F(x)) into spec_B(E(X)).

    Bijectivity comes from the comaximal characterization; the bihomeo check
    transports both open families and verifies the preimage identities
    H^{-1}(delta(A)) = A and H^{-1}(epsilon(A)) = d(A)."""

    passed: bool
    essential: EssentialLattice
    spectrum: BitopSpectrum
    mapping: tuple[int, ...]
    bijective: bool
    delta_identity: bool
    epsilon_identity: bool
    bihomeomorphism: bool


def big_h_map(space: BitopSpace) -> HIsoReport:
    char = char_comaximal_of_essential(space)
    ess = essential_lattice(space)
    spectrum = build_bitop_spectrum(ess.lattice)
    mapping = []
    for x in range(space.n):
        pair = comaximal_pairs(ess.lattice)[char.point_to_pair[x]]
        mapping.append(spectrum.point_index(pair.ideal.members, pair.filter.members))
    mapping = tuple(mapping)
    bijective = char.passed and len(set(mapping)) == space.n == len(spectrum.points)
    delta_ok = all(
        preimage_mask(mapping, spectrum.delta[k]) == ess.subsets[k]
        for k in range(ess.lattice.n)
    )
    epsilon_ok = all(
        preimage_mask(mapping, spectrum.epsilon[k]) == op_d(space, ess.subsets[k])
        for k in range(ess.lattice.n)
    )
    bihomeo = False
    if bijective:
        tau_img = frozenset(_image(mapping, u) for u in space.tau.opens)
        sigma_img = frozenset(_image(mapping, u) for u in space.sigma.opens)
        bihomeo = (
            tau_img == spectrum.space.tau.opens
            and sigma_img == spectrum.space.sigma.opens
        )
    passed = bijective and delta_ok and epsilon_ok and bihomeo
    return HIsoReport(
        passed, ess, spectrum, mapping, bijective, delta_ok, epsilon_ok, bihomeo
    )


def _image(mapping, mask: BitMask) -> BitMask:
    out = 0
    for i in bits(mask):
        out |= 1 << mapping[i]
    return out


# ---------------------------------------------------------------------------
# classical side: h_X and the fundamental-set lattice


@dataclass(frozen=True)
class FundamentalLattice:
    lattice: FiniteLattice
    subsets: tuple[BitMask, ...]

    def element_of(self, subset: BitMask) -> int:
        return self.subsets.index(subset)


def fundamental_lattice(top: FiniteTopology) -> FundamentalLattice:
    """The fundamental subsets ordered by inclusion (meet and join are
    intersection and union; the family is closed under both)."""
    members = sorted(fundamental_subsets(top).members)
    k = len(members)
    names = tuple("{" + ",".join(f"p{i}" for i in bits(m)) + "}" for m in members)
    up = tuple(
        mask_of(j for j in range(k) if is_subset(members[i], members[j]))
        for i in range(k)
    )
    lat = lattice_from_order(names, up, name="fundamental")
    for i in range(k):
        for j in range(k):
            if members[lat.join_table[i][j]] != members[i] | members[j]:
                raise RuntimeError("fundamental join is not union")
            if members[lat.meet_table[i][j]] != members[i] & members[j]:
                raise RuntimeError("fundamental meet is not intersection")
    return FundamentalLattice(lat, tuple(members))


@dataclass(frozen=True)
class ClassicalRepReport:
    """The map x |-> {fundamental A : x not in A} into spec(F(X))."""

    passed: bool
    fundamentals: FundamentalLattice
    spectrum: ClassicalSpectrum
    mapping: tuple[int, ...]
    bijective: bool
    homeomorphism: bool


def h_map_classical(top: FiniteTopology) -> ClassicalRepReport:
    verdict = is_bd_space(top)
    if not verdict.passed:
        raise NotBDSpace(verdict.reason or "not a Balbes-Dwinger space")
    fund = fundamental_lattice(top)
    spectrum = build_classical_spectrum(fund.lattice)
    prime_masks = {p.members: k for k, p in enumerate(spectrum.points)}
    mapping = []
    ok = True
    for x in range(top.n):
        ix = mask_of(k for k, a in enumerate(fund.subsets) if not a >> x & 1)
        if ix not in prime_masks:
            ok = False
            mapping.append(-1)
        else:
            mapping.append(prime_masks[ix])
    mapping = tuple(mapping)
    bijective = ok and len(set(mapping)) == top.n == len(spectrum.points)
    homeo = False
    if bijective:
        homeo = frozenset(_image(mapping, u) for u in top.opens) == spectrum.space.opens
    return ClassicalRepReport(bijective and homeo, fund, spectrum, mapping, bijective, homeo)


# ---------------------------------------------------------------------------
# naturality of the element embedding


@dataclass(frozen=True)
class NaturalityReport:
    passed: bool
    iso_ok: bool
    square_ok: bool
    failing_element: str | None = None


def delta_embedding(lat: FiniteLattice) -> LatticeHom:
    """The element embedding x |-> delta(x) of a lattice into the essential
    lattice of its spectrum; an isomorphism by the reconstruction theorem."""
    spectrum = build_bitop_spectrum(lat)
    ess = essential_lattice(spectrum.space)
    mapping = tuple(ess.element_of(spectrum.delta[x]) for x in range(lat.n))
    return LatticeHom(lat, ess.lattice, mapping)


def delta_natural_iso_check(hom: LatticeHom) -> NaturalityReport:
    """For a quasi-proper f: L -> N, check that the element embeddings are
    lattice isomorphisms and that E(spec_B(f)) after the embedding of L equals
    the embedding of N after f."""
    src, tgt = hom.source, hom.target
    emb_src = delta_embedding(src)
    emb_tgt = delta_embedding(tgt)
    iso_ok = (
        len(set(emb_src.mapping)) == emb_src.target.n == src.n
        and len(set(emb_tgt.mapping)) == emb_tgt.target.n == tgt.n
    )
    morphism = spec_b_on_hom(hom)
    transported = essential_functor_on_morphism(morphism)
    square_ok = True
    failing = None
    for x in range(src.n):
        left = transported.mapping[emb_src.mapping[x]]
        right = emb_tgt.mapping[hom(x)]
        if left != right:
            square_ok = False
            failing = src.names[x]
            break
    return NaturalityReport(iso_ok and square_ok, iso_ok, square_ok, failing)


# ---------------------------------------------------------------------------
# bridge between single topologies and bitopological spaces


def to_topological(space: BitopSpace) -> FiniteTopology:
    """Forget the second topology of a doubly Balbes-Dwinger space."""
    report = is_pairwise_bd(space)
    if not report.passed:
        raise NotPairwiseBD(f"axiom ({report.failing_axiom}) fails: {report.witness}")
    if space.tau.opens != space.sigma.opens:
        raise NotDoublyBD("the two topologies differ")
    return space.tau


def to_bitopological(top: FiniteTopology) -> BitopSpace:
    """Double a Balbes-Dwinger topology into a bitopological space."""
    verdict = is_bd_space(top)
    if not verdict.passed:
        raise NotBDSpace(verdict.reason or "not a Balbes-Dwinger space")
    return doubled_space(top)


@dataclass(frozen=True)
class DisCharReport:
    """The four equivalent faces of distributivity for a pairwise
    Balbes-Dwinger space: coinciding topologies, distributive essential
    lattice, being a spectrum of a distributive lattice (decided with the
    essential lattice itself), and all points prime."""

    doubly: bool
    essential_distributive: bool
    spectrum_of_distributive: bool
    all_points_prime: bool

    @property
    def agree(self) -> bool:
        return (
            self.doubly
            == self.essential_distributive
            == self.spectrum_of_distributive
            == self.all_points_prime
        )


def dischar_equivalences(space: BitopSpace) -> DisCharReport:
    report = is_pairwise_bd(space)
    if not report.passed:
        raise NotPairwiseBD(f"axiom ({report.failing_axiom}) fails: {report.witness}")
    from .lattices import is_distributive

    doubly = space.tau.opens == space.sigma.opens
    ess = essential_lattice(space)
    distributive = is_distributive(ess.lattice).distributive
    h_iso = big_h_map(space)
    spectrum_of_distributive = distributive and h_iso.passed
    cl_equal = 0
    for k in range(space.n):
        cl_tau = mask_of(q for q in range(space.n) if space.up_tau[q] >> k & 1)
        cl_sigma = mask_of(q for q in range(space.n) if space.up_sigma[q] >> k & 1)
        if cl_tau == cl_sigma:
            cl_equal |= 1 << k
    all_prime = cl_equal == full_mask(space.n)
    return DisCharReport(doubly, distributive, spectrum_of_distributive, all_prime)


def strongly_continuous(mapping, source: FiniteTopology, target: FiniteTopology) -> bool:
    """Continuity plus fundamental preimages being fundamental."""
    for u in target.opens:
        if preimage_mask(mapping, u) not in source.opens:
            return False
    src_fund = fundamental_subsets(source).members
    for a in fundamental_subsets(target).members:
        if preimage_mask(mapping, a) not in src_fund:
            return False
    return True


__all__ = [
    "CharComaximalReport",
    "ClassicalRepReport",
    "DisCharReport",
    "EssentialLattice",
    "FundamentalLattice",
    "HIsoReport",
    "HomClassification",
    "NaturalityReport",
    "PBDMorphism",
    "big_h_map",
    "char_comaximal_of_essential",
    "classify_hom",
    "compose_morphisms",
    "delta_embedding",
    "delta_natural_iso_check",
    "dischar_equivalences",
    "essential_functor_on_morphism",
    "essential_lattice",
    "fundamental_lattice",
    "h_map_classical",
    "identity_morphism",
    "pbd_morphism",
    "spec_b_on_hom",
    "strongly_continuous",
    "to_bitopological",
    "to_topological",
]
