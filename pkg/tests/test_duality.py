import pytest

from lattice_spectra.errors import NotBDSpace, NotDoublyBD, NotQuasiProper
from lattice_spectra.lattices import (
    all_homs,
    check_hom,
    compose,
    identity_hom,
    is_distributive,
)
from lattice_spectra.spectra import (
    b_map,
    build_bitop_spectrum,
    build_classical_spectrum,
    comaximal_pairs,
)
from lattice_spectra.duality import (
    big_h_map,
    char_comaximal_of_essential,
    classify_hom,
    compose_morphisms,
    delta_embedding,
    delta_natural_iso_check,
    dischar_equivalences,
    essential_functor_on_morphism,
    essential_lattice,
    fundamental_lattice,
    h_map_classical,
    identity_morphism,
    spec_b_on_hom,
    to_bitopological,
    to_topological,
)
from lattice_spectra.topology import doubled_space, op_d, op_i, topology_from_subbasis


# --- essential lattice --------------------------------------------------------


def test_essential_lattice_of_m5_is_m5_shaped(m5):
    ess = essential_lattice(build_bitop_spectrum(m5).space)
    assert ess.lattice.n == 5
    from lattice_spectra.catalog import canonical_form

    assert canonical_form(ess.lattice) == canonical_form(m5)


def test_essential_lattice_operations(lattices_upto_5):
    for lat in lattices_upto_5:
        space = build_bitop_spectrum(lat).space
        ess = essential_lattice(space)
        for i in range(ess.lattice.n):
            for j in range(ess.lattice.n):
                assert ess.subsets[ess.lattice.join_table[i][j]] == ess.subsets[i] | ess.subsets[j]
                assert ess.subsets[ess.lattice.meet_table[i][j]] == op_i(
                    space, op_d(space, ess.subsets[i] & ess.subsets[j])
                )


# --- homomorphism classification ----------------------------------------------


def test_identity_classification(m5):
    cls = classify_hom(identity_hom(m5))
    assert cls.proper and cls.quasi_proper
    assert cls.vacuously_proper  # m5 has an empty classical spectrum


def test_atom_inclusions_proper_not_quasi_proper(chain2, m5):
    verdicts = []
    for atom in ("a", "b", "c"):
        cls = classify_hom(check_hom(chain2, m5, (0, m5.index(atom))))
        verdicts.append((atom, cls.proper, cls.vacuously_proper, cls.quasi_proper))
        assert cls.quasi_witness is not None
    assert verdicts == [
        ("a", True, True, False),
        ("b", True, True, False),
        ("c", True, True, False),
    ]


def test_bottom_top_inclusion_is_quasi_proper(chain2, m5):
    cls = classify_hom(check_hom(chain2, m5, (0, m5.top)))
    assert cls.proper and cls.quasi_proper


def test_quasi_proper_implies_proper_corpus(lattices_upto_4):
    for src in lattices_upto_4:
        for tgt in lattices_upto_4:
            for hom in all_homs(src, tgt):
                cls = classify_hom(hom)
                if cls.quasi_proper:
                    assert cls.proper, hom.label()


def test_proper_iff_quasi_proper_on_distributive(lattices_upto_4):
    for src in lattices_upto_4:
        if not is_distributive(src).distributive:
            continue
        for tgt in lattices_upto_4:
            if not is_distributive(tgt).distributive:
                continue
            for hom in all_homs(src, tgt):
                cls = classify_hom(hom)
                assert cls.proper == cls.quasi_proper, hom.label()


# --- spectrum functor on morphisms ---------------------------------------------


def test_spec_b_identity(m5):
    m = spec_b_on_hom(identity_hom(m5))
    assert m.mapping == tuple(range(6))


def test_spec_b_requires_quasi_proper(chain2, m5):
    with pytest.raises(NotQuasiProper):
        spec_b_on_hom(check_hom(chain2, m5, (0, m5.index("a"))))


def test_spec_b_collapse_surjection(diamond, chain2):
    f = check_hom(diamond, chain2, (0, 1, 0, 1))  # p -> 1, q -> 0
    m = spec_b_on_hom(f)
    assert m.source.n == 1 and m.target.n == 2
    src_spec = build_bitop_spectrum(diamond)
    pair = src_spec.points[m.mapping[0]]
    assert pair.ideal.label() == "{0,q}"
    assert pair.filter.label() == "{p,1}"


def test_spec_b_contravariant_composition(lattices_upto_4):
    for a in lattices_upto_4:
        for b in lattices_upto_4:
            for f in all_homs(a, b):
                if not classify_hom(f).quasi_proper:
                    continue
                for c in lattices_upto_4:
                    for g in all_homs(b, c):
                        if not classify_hom(g).quasi_proper:
                            continue
                        left = spec_b_on_hom(compose(f, g))
                        right = compose_morphisms(spec_b_on_hom(g), spec_b_on_hom(f))
                        assert left.mapping == right.mapping


def test_essential_functor_identity(m5):
    m = identity_morphism(build_bitop_spectrum(m5).space)
    hom = essential_functor_on_morphism(m)
    assert hom.mapping == tuple(range(hom.source.n))


def test_essential_functor_on_collapse(diamond, chain2):
    f = check_hom(diamond, chain2, (0, 1, 0, 1))
    hom = essential_functor_on_morphism(spec_b_on_hom(f))
    assert hom.source.n == 4 and hom.target.n == 2
    assert classify_hom(hom).quasi_proper


# --- comaximal characterization and the reconstruction isomorphism -------------


def test_char_one_point_space():
    from lattice_spectra.topology import topology_from_subbasis

    space = doubled_space(topology_from_subbasis(1, []))
    rep = char_comaximal_of_essential(space)
    assert rep.passed
    assert rep.point_to_pair == (0,)


def test_char_m5(m5):
    space = build_bitop_spectrum(m5).space
    rep = char_comaximal_of_essential(space)
    assert rep.passed
    assert rep.injective and not rep.unmatched_pairs
    assert rep.d_intersection_empty and rep.a_intersection_empty
    ess = essential_lattice(space)
    assert len(comaximal_pairs(ess.lattice)) == 6


def test_big_h_roundtrip(lattices_upto_5, cat):
    sample = list(lattices_upto_5) + [cat["hexagon"], cat["b3"], cat["m5xchain2"]]
    for lat in sample:
        rep = big_h_map(build_bitop_spectrum(lat).space)
        assert rep.passed, lat.name


def test_big_h_requires_pairwise_bd():
    from lattice_spectra.errors import NotPairwiseBD
    from lattice_spectra.topology import topology_from_subbasis

    space = doubled_space(topology_from_subbasis(2, []))
    with pytest.raises(NotPairwiseBD):
        big_h_map(space)


def test_delta_embedding_is_iso(lattices_upto_5):
    for lat in lattices_upto_5:
        emb = delta_embedding(lat)  # LatticeHom construction validates ops
        assert len(set(emb.mapping)) == lat.n == emb.target.n


# --- classical representation ---------------------------------------------------


def test_h_classical_two_chain(chain2):
    rep = h_map_classical(build_classical_spectrum(chain2).space)
    assert rep.passed
    assert rep.fundamentals.lattice.n == 2


def test_h_classical_diamond(diamond):
    rep = h_map_classical(build_classical_spectrum(diamond).space)
    assert rep.passed and rep.bijective and rep.homeomorphism
    assert len(rep.spectrum.points) == 2


def test_h_classical_all_distributive(lattices_upto_5):
    for lat in lattices_upto_5:
        if not is_distributive(lat).distributive:
            continue
        rep = h_map_classical(build_classical_spectrum(lat).space)
        assert rep.passed, lat.name


def test_h_classical_rejects_non_bd():
    with pytest.raises(NotBDSpace):
        h_map_classical(topology_from_subbasis(2, []))


def test_fundamental_lattice_matches_source(lattices_upto_5):
    for lat in lattices_upto_5:
        if not is_distributive(lat).distributive:
            continue
        spec = build_classical_spectrum(lat)
        fund = fundamental_lattice(spec.space)
        assert fund.lattice.n == lat.n
        mapping = tuple(fund.element_of(spec.dmap[x]) for x in range(lat.n))
        check_hom(lat, fund.lattice, mapping)
        assert len(set(mapping)) == lat.n


# --- naturality ------------------------------------------------------------------


def test_naturality_identity(m5):
    rep = delta_natural_iso_check(identity_hom(m5))
    assert rep.passed


def test_naturality_collapse(diamond, chain2):
    f = check_hom(diamond, chain2, (0, 1, 0, 1))
    rep = delta_natural_iso_check(f)
    assert rep.passed


def test_naturality_catalog_small(cat):
    small = [cat[k] for k in ("chain1", "chain2", "chain3", "chain4", "chain5", "diamond", "m5", "n5")]
    for src in small:
        for tgt in small:
            for hom in all_homs(src, tgt):
                if classify_hom(hom).quasi_proper:
                    assert delta_natural_iso_check(hom).passed, hom.label()


# --- bridge ----------------------------------------------------------------------


def test_bridge_roundtrip(diamond):
    top = build_classical_spectrum(diamond).space
    space = to_bitopological(top)
    assert space.tau.opens == top.opens
    back = to_topological(space)
    assert back.opens == top.opens


def test_bridge_rejections(m5):
    with pytest.raises(NotDoublyBD):
        to_topological(build_bitop_spectrum(m5).space)
    with pytest.raises(NotBDSpace):
        to_bitopological(topology_from_subbasis(2, []))


def test_doubled_zariski_is_pairwise_bd(diamond):
    from lattice_spectra.topology import is_pairwise_bd

    top = build_classical_spectrum(diamond).space
    assert is_pairwise_bd(doubled_space(top)).passed


def test_b_map_into_forgotten_spectrum(lattices_upto_5):
    for lat in lattices_upto_5:
        if not is_distributive(lat).distributive:
            continue
        rep = b_map(lat)
        assert rep.bijective and rep.homeomorphism, lat.name


# --- the four equivalent faces of distributivity ----------------------------------


def test_dischar_reports(diamond, m5, n5):
    d = dischar_equivalences(build_bitop_spectrum(diamond).space)
    assert (d.doubly, d.essential_distributive, d.spectrum_of_distributive, d.all_points_prime) == (
        True,
        True,
        True,
        True,
    )
    assert d.agree
    for lat in (m5, n5):
        r = dischar_equivalences(build_bitop_spectrum(lat).space)
        assert (r.doubly, r.essential_distributive, r.spectrum_of_distributive, r.all_points_prime) == (
            False,
            False,
            False,
            False,
        )
        assert r.agree


def test_dischar_upto_5(lattices_upto_5):
    for lat in lattices_upto_5:
        rep = dischar_equivalences(build_bitop_spectrum(lat).space)
        assert rep.agree
        assert rep.doubly == is_distributive(lat).distributive
