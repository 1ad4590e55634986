"""Theorem verification suites.

Each suite takes a lattice and checks one family of properties, returning
one result per lattice.  A raising check is reported as a failure with the
exception text as witness, so a corrupted structure surfaces as FAIL rather
than a crash.  Suites are pure; the runner may evaluate lattices in parallel
and buffers results back into input order.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .bitsets import bits, full_mask, is_subset
from .lattices import (
    FiniteLattice,
    all_homs,
    check_hom,
    compose,
    identity_hom,
    is_distributive,
)
from .spectra import (
    b_map,
    build_bitop_spectrum,
    build_classical_spectrum,
    delta_compactness_check,
    essential_equals_delta,
    gbd_witness,
    has_bottom_via_fundamental,
    has_top_via_compactness,
    prime_points,
)
from .duality import (
    big_h_map,
    char_comaximal_of_essential,
    classify_hom,
    compose_morphisms,
    delta_embedding,
    delta_natural_iso_check,
    dischar_equivalences,
    essential_functor_on_morphism,
    fundamental_lattice,
    h_map_classical,
    spec_b_on_hom,
    strongly_continuous,
    to_bitopological,
    to_topological,
)
from .topology import (
    increasing_sets,
    is_costable,
    is_pairwise_bd,
    is_pairwise_t0,
    is_stable,
    op_d,
    op_i,
)


@dataclass(frozen=True)
class CheckResult:
    lattice: str
    check: str
    passed: bool
    witness: str = ""


def _check(lattice_name, check_name, fn) -> CheckResult:
    try:
        witness = fn()
    except Exception as exc:  # surfaced as a failing line, never a crash
        return CheckResult(lattice_name, check_name, False, f"{type(exc).__name__}: {exc}")
    if witness is None:
        return CheckResult(lattice_name, check_name, True)
    return CheckResult(lattice_name, check_name, False, str(witness))


# ---------------------------------------------------------------------------
# individual suites; each returns None on pass or a witness string


def check_lattice_axioms(lat: FiniteLattice):
    n = lat.n
    for x in range(n):
        for y in range(n):
            if lat.meet(x, y) != lat.meet(y, x) or lat.join(x, y) != lat.join(y, x):
                return f"commutativity fails at ({lat.names[x]},{lat.names[y]})"
            if lat.leq(x, y) != (lat.meet(x, y) == x):
                return f"order/meet mismatch at ({lat.names[x]},{lat.names[y]})"
            if lat.meet(x, lat.join(x, y)) != x or lat.join(x, lat.meet(x, y)) != x:
                return f"absorption fails at ({lat.names[x]},{lat.names[y]})"
            lb = lat.down[x] & lat.down[y]
            m = lat.meet(x, y)
            if not (lb >> m & 1 and is_subset(lb, lat.down[m])):
                return f"meet table is not the glb at ({lat.names[x]},{lat.names[y]})"
            ub = lat.up[x] & lat.up[y]
            w = lat.join(x, y)
            if not (ub >> w & 1 and is_subset(ub, lat.up[w])):
                return f"join table is not the lub at ({lat.names[x]},{lat.names[y]})"
            for z in range(n):
                if lat.meet(lat.meet(x, y), z) != lat.meet(x, lat.meet(y, z)):
                    return "meet associativity fails"
                if lat.join(lat.join(x, y), z) != lat.join(x, lat.join(y, z)):
                    return "join associativity fails"
    return None


def check_spectrum_map_laws(lat: FiniteLattice):
    s = build_bitop_spectrum(lat)
    n = lat.n
    if len(set(s.delta)) != n:
        return "delta is not injective"
    if len(set(s.epsilon)) != n:
        return "epsilon is not injective"
    for x in range(n):
        if s.epsilon[x] & ~s.delta[x]:
            return f"epsilon({lat.names[x]}) not inside delta({lat.names[x]})"
        for y in range(n):
            if s.delta[lat.join(x, y)] != s.delta[x] | s.delta[y]:
                return f"delta not a join homomorphism at ({lat.names[x]},{lat.names[y]})"
            if s.epsilon[lat.meet(x, y)] != s.epsilon[x] & s.epsilon[y]:
                return f"epsilon not a meet homomorphism at ({lat.names[x]},{lat.names[y]})"
    if lat.n >= 2 and len(s.points) < 1:
        return "a lattice with two elements has a comaximal pair"
    return None


def check_distributive_iff_maps_equal(lat: FiniteLattice):
    s = build_bitop_spectrum(lat)
    maps_equal = s.delta == s.epsilon
    if maps_equal != is_distributive(lat).distributive:
        return f"delta==epsilon is {maps_equal} but distributivity disagrees"
    return None


def check_specialization_orders(lat: FiniteLattice):
    s = build_bitop_spectrum(lat)
    pts = s.points
    space = s.space
    for p in range(len(pts)):
        for q in range(len(pts)):
            tau = bool(space.up_tau[p] >> q & 1)
            alg = is_subset(pts[q].ideal.members, pts[p].ideal.members)
            if tau != alg:
                return f"tau order mismatch at ({pts[p].label()},{pts[q].label()})"
            sig = bool(space.up_sigma[p] >> q & 1)
            alg = is_subset(pts[p].filter.members, pts[q].filter.members)
            if sig != alg:
                return f"sigma order mismatch at ({pts[p].label()},{pts[q].label()})"
    ok, pair = is_pairwise_t0(space)
    if not ok:
        return f"spectrum not pairwise T0 at {pair}"
    return None


def check_transition_operators(lat: FiniteLattice, pair_limit: int = 12):
    s = build_bitop_spectrum(lat)
    space = s.space
    for x in range(lat.n):
        if op_d(space, s.delta[x]) != s.epsilon[x]:
            return f"d(delta({lat.names[x]})) is not epsilon({lat.names[x]})"
        if op_i(space, s.epsilon[x]) != s.delta[x]:
            return f"i(epsilon({lat.names[x]})) is not delta({lat.names[x]})"
        if not is_stable(space, s.delta[x]):
            return f"delta({lat.names[x]}) is not stable"
        if not is_costable(space, s.epsilon[x]):
            return f"epsilon({lat.names[x]}) is not co-stable"
    if space.n <= pair_limit:
        sigma_up = increasing_sets(space.up_sigma, space.n)
        tau_up = increasing_sets(space.up_tau, space.n)
        pairs = itertools.product(sigma_up, tau_up)
    else:
        # beyond the exhaustive bound, sample increasing pairs from a fixed seed
        rng = random.Random(1729)
        full = full_mask(space.n)
        pairs = [
            (op_d(space, rng.randint(0, full)), op_i(space, rng.randint(0, full)))
            for _ in range(2000)
        ]
    for a, b in pairs:
        if is_subset(op_i(space, a), b) != is_subset(a, op_d(space, b)):
            return f"adjunction fails at A={a:#x} B={b:#x}"
    return None


def check_covering_witnesses(lat: FiniteLattice, samples: int = 60, seed: int = 7):
    s = build_bitop_spectrum(lat)
    rng = random.Random(seed)
    full = full_mask(lat.n)
    for _ in range(samples):
        v = rng.randint(1, full)
        w = rng.randint(1, full)
        inter = full_mask(len(s.points))
        for x in bits(v):
            inter &= s.epsilon[x]
        union = 0
        for y in bits(w):
            union |= s.delta[y]
        contained = is_subset(inter, union)
        res = gbd_witness(lat, v, w)
        if contained != (res.kind == "witness"):
            return f"branch mismatch for V={lat.set_label(v)} W={lat.set_label(w)}"
        if res.kind == "witness":
            if not (lat.leq(lat.meet_of(res.v1), res.z) and lat.leq(res.z, lat.join_of(res.w1))):
                return f"witness chain broken for V={lat.set_label(v)} W={lat.set_label(w)}"
            if res.v1 & ~v or res.w1 & ~w:
                return "witness subsets escape the inputs"
        else:
            k = 1 << s.point_index(res.pair.ideal.members, res.pair.filter.members)
            if not (inter & k and not union & k):
                return "separating pair is not a counterexample point"
        x = rng.randrange(lat.n)
        res2 = delta_compactness_check(lat, x, v)
        covered = is_subset(s.delta[x], _delta_union(s, v))
        if covered != (res2.kind == "witness"):
            return f"cover branch mismatch at x={lat.names[x]} V={lat.set_label(v)}"
        if res2.kind == "witness" and not lat.leq(x, lat.join_of(res2.v1)):
            return "cover witness join does not dominate"
    return None


def _delta_union(s, v):
    u = 0
    for y in bits(v):
        u |= s.delta[y]
    return u


def check_prime_point_closures(lat: FiniteLattice):
    s = build_bitop_spectrum(lat)
    pts = prime_points(s)
    all_prime = len(pts) == len(s.points)
    if all_prime != is_distributive(lat).distributive:
        return f"all-points-prime is {all_prime} but distributivity disagrees"
    return None


def check_essential_family(lat: FiniteLattice):
    rep = essential_equals_delta(lat)
    if not rep.passed:
        return (
            f"essential family differs from the delta image "
            f"(extra {sorted(rep.essential_only)}, missing {sorted(rep.delta_only)})"
        )
    return None


def check_bounds_from_topology(lat: FiniteLattice):
    ok_top, w_top = has_top_via_compactness(lat)
    if not ok_top:
        return f"subcover join {lat.names[w_top]} is not the top"
    ok_bot, w_bot = has_bottom_via_fundamental(lat)
    if not ok_bot:
        return f"empty-intersection meet {lat.names[w_bot]} is not the bottom"
    return None


def check_pairwise_axioms(lat: FiniteLattice):
    s = build_bitop_spectrum(lat)
    report = is_pairwise_bd(s.space)
    if not report.passed:
        return f"axiom ({report.failing_axiom}) fails: {report.witness}"
    return None


def check_essential_comaximal_points(lat: FiniteLattice):
    s = build_bitop_spectrum(lat)
    rep = char_comaximal_of_essential(s.space)
    if not rep.passed:
        return (
            f"comaximal characterization fails (injective={rep.injective}, "
            f"unmatched={list(rep.unmatched_pairs)}, "
            f"empty-d={rep.d_intersection_empty}, empty-A={rep.a_intersection_empty})"
        )
    return None


def check_space_roundtrip(lat: FiniteLattice):
    s = build_bitop_spectrum(lat)
    rep = big_h_map(s.space)
    if not rep.passed:
        return (
            f"reconstruction map not an isomorphism (bijective={rep.bijective}, "
            f"delta={rep.delta_identity}, epsilon={rep.epsilon_identity}, "
            f"bihomeo={rep.bihomeomorphism})"
        )
    return None


def check_lattice_roundtrip(lat: FiniteLattice):
    emb = delta_embedding(lat)
    ess = emb.target
    if len(set(emb.mapping)) != lat.n or ess.n != lat.n:
        return "element embedding into the essential lattice is not a bijection"
    for x in range(lat.n):
        for y in range(lat.n):
            if lat.leq(x, y) != ess.leq(emb.mapping[x], emb.mapping[y]):
                return f"embedding does not preserve order at ({lat.names[x]},{lat.names[y]})"
    return None


def check_distributive_equivalences(lat: FiniteLattice):
    s = build_bitop_spectrum(lat)
    rep = dischar_equivalences(s.space)
    if not rep.agree:
        return (
            f"equivalence faces disagree: doubly={rep.doubly}, "
            f"E-distributive={rep.essential_distributive}, "
            f"spectrum-of-distributive={rep.spectrum_of_distributive}, "
            f"all-prime={rep.all_points_prime}"
        )
    if rep.doubly != is_distributive(lat).distributive:
        return "equivalence faces disagree with the lattice's distributivity"
    return None


def check_classical_stone(lat: FiniteLattice):
    """Distributive lattices only: the classical round trip."""
    if not is_distributive(lat).distributive:
        return None
    classical = build_classical_spectrum(lat)
    if lat.n >= 2 and len(classical.points) == 0:
        return "a distributive lattice with two elements has a prime ideal"
    bm = b_map(lat)
    if not (bm.bijective and bm.homeomorphism):
        return f"prime-ideal embedding not a homeomorphism (bijective={bm.bijective})"
    fund = fundamental_lattice(classical.space)
    if fund.lattice.n != lat.n:
        return f"fundamental lattice has {fund.lattice.n} members, expected {lat.n}"
    mapping = tuple(fund.element_of(classical.dmap[x]) for x in range(lat.n))
    try:
        check_hom(lat, fund.lattice, mapping)
    except Exception as exc:
        return f"d-map is not a homomorphism onto the fundamentals: {exc}"
    if len(set(mapping)) != lat.n:
        return "d-map is not injective"
    rep = h_map_classical(classical.space)
    if not rep.passed:
        return "point map into spec(F(X)) is not a homeomorphism"
    bridge = to_topological(build_bitop_spectrum(lat).space)
    if to_bitopological(bridge).tau.opens != bridge.opens:
        return "double/forget round trip changed the topology"
    return None


LATTICE_SUITES = (
    ("lattice_axioms", check_lattice_axioms),
    ("spectrum_map_laws", check_spectrum_map_laws),
    ("distributive_iff_maps_equal", check_distributive_iff_maps_equal),
    ("specialization_orders", check_specialization_orders),
    ("transition_operators", check_transition_operators),
    ("covering_witnesses", check_covering_witnesses),
    ("prime_point_closures", check_prime_point_closures),
    ("essential_family", check_essential_family),
    ("bounds_from_topology", check_bounds_from_topology),
    ("pairwise_axioms", check_pairwise_axioms),
    ("essential_comaximal_points", check_essential_comaximal_points),
    ("space_roundtrip", check_space_roundtrip),
    ("lattice_roundtrip", check_lattice_roundtrip),
    ("distributive_equivalences", check_distributive_equivalences),
    ("classical_stone", check_classical_stone),
)


def suite_for_lattice(lat: FiniteLattice) -> list[CheckResult]:
    name = lat.name or ",".join(lat.names)
    return [_check(name, check_name, lambda fn=fn: fn(lat)) for check_name, fn in LATTICE_SUITES]


# ---------------------------------------------------------------------------
# corpus checks (cross-lattice: functor laws, naturality, classification)


def corpus_lattices(max_size: int = 4) -> list[FiniteLattice]:
    from .catalog import GeneratorConfig, enumerate_lattices

    return list(enumerate_lattices(GeneratorConfig("exhaustive", max_size)))


def corpus_checks(lattices=None) -> list[CheckResult]:
    lats = lattices if lattices is not None else corpus_lattices()
    results = [
        _check("corpus", "hom_classification", lambda: _check_hom_classification(lats)),
        _check("corpus", "functor_laws", lambda: _check_functor_laws(lats)),
        _check("corpus", "naturality_squares", lambda: _check_naturality(lats)),
        _check("corpus", "classical_bridge", lambda: _check_classical_bridge(lats)),
    ]
    return results


def _all_corpus_homs(lats):
    for src in lats:
        for tgt in lats:
            yield from all_homs(src, tgt)


def _check_hom_classification(lats):
    for hom in _all_corpus_homs(lats):
        cls = classify_hom(hom)
        if cls.quasi_proper and not cls.proper:
            return f"quasi-proper but not proper: {hom.label()}"
        src_d = is_distributive(hom.source).distributive
        tgt_d = is_distributive(hom.target).distributive
        if src_d and tgt_d and cls.proper != cls.quasi_proper:
            return f"proper/quasi-proper split on distributive pair: {hom.label()}"
    return None


def _check_functor_laws(lats):
    for lat in lats:
        ident = identity_hom(lat)
        m = spec_b_on_hom(ident)
        if m.mapping != tuple(range(m.source.n)):
            return f"spectrum of the identity is not the identity on {lat.name}"
        eh = essential_functor_on_morphism(m)
        if eh.mapping != tuple(range(eh.source.n)):
            return f"essential functor of the identity is not the identity on {lat.name}"
    for a in lats:
        for b in lats:
            for f in all_homs(a, b):
                if not classify_hom(f).quasi_proper:
                    continue
                for c in lats:
                    for g in all_homs(b, c):
                        if not classify_hom(g).quasi_proper:
                            continue
                        gf = compose(f, g)
                        if not classify_hom(gf).quasi_proper:
                            return f"composition of quasi-proper homs is not quasi-proper: {f.label()} ; {g.label()}"
                        left = spec_b_on_hom(gf)
                        right = compose_morphisms(spec_b_on_hom(g), spec_b_on_hom(f))
                        if left.mapping != right.mapping:
                            return f"spec_B breaks composition on {f.label()} ; {g.label()}"
                        e_f = essential_functor_on_morphism(spec_b_on_hom(f))
                        e_g = essential_functor_on_morphism(spec_b_on_hom(g))
                        if essential_functor_on_morphism(left).mapping != compose(e_f, e_g).mapping:
                            return f"essential functor breaks composition on {f.label()} ; {g.label()}"
    return None


def _check_naturality(lats):
    for a in lats:
        for b in lats:
            for f in all_homs(a, b):
                cls = classify_hom(f)
                if not cls.quasi_proper:
                    continue
                rep = delta_natural_iso_check(f)
                if not rep.passed:
                    return f"element-embedding square fails on {f.label()} at {rep.failing_element}"
                m = spec_b_on_hom(f)
                hx = big_h_map(m.source)
                hy = big_h_map(m.target)
                em = essential_functor_on_morphism(m)
                lifted = spec_b_on_hom(em)
                for k in range(m.source.n):
                    if lifted.mapping[hx.mapping[k]] != hy.mapping[m.mapping[k]]:
                        return f"reconstruction square fails on {f.label()}"
    return None


def _check_classical_bridge(lats):
    for lat in lats:
        if not is_distributive(lat).distributive:
            continue
        classical = build_classical_spectrum(lat)
        spectrum = build_bitop_spectrum(lat)
        bridge = to_topological(spectrum.space)
        back = to_bitopological(bridge)
        if back.tau.opens != bridge.opens or back.sigma.opens != bridge.opens:
            return f"double/forget round trip fails on {lat.name}"
        bm = b_map(lat)
        if not (bm.bijective and bm.homeomorphism):
            return f"prime-ideal embedding fails on {lat.name}"
    for a in lats:
        for b in lats:
            if not (is_distributive(a).distributive and is_distributive(b).distributive):
                continue
            for f in all_homs(a, b):
                if not classify_hom(f).proper:
                    continue
                spec_a = build_classical_spectrum(a)
                spec_b_ = build_classical_spectrum(b)
                point_map = []
                prime_masks = {p.members: k for k, p in enumerate(spec_a.points)}
                ok = True
                for p in spec_b_.points:
                    pre = f.preimage(p.members)
                    if pre not in prime_masks:
                        ok = False
                        break
                    point_map.append(prime_masks[pre])
                if not ok:
                    return f"proper hom does not act on spectra: {f.label()}"
                if not strongly_continuous(point_map, spec_b_.space, spec_a.space):
                    return f"spectrum map is not strongly continuous for {f.label()}"
                ba = b_map(a).point_map
                bb = b_map(b).point_map
                bit = spec_b_on_hom(f)
                for k in range(len(spec_b_.points)):
                    if bit.mapping[bb[k]] != ba[point_map[k]]:
                        return f"prime-ideal embedding is not natural on {f.label()}"
    return None


# ---------------------------------------------------------------------------
# runner


def default_jobs() -> int:
    env = os.environ.get("LATTICE_SPECTRA_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)


def run_lattice_suites(lattices, jobs: int | None = None) -> list[CheckResult]:
    """Evaluate the per-lattice suites, in parallel, results in input order."""
    lattices = list(lattices)
    jobs = jobs or default_jobs()
    if jobs <= 1 or len(lattices) <= 1:
        batches = [suite_for_lattice(lat) for lat in lattices]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(suite_for_lattice, lattices))
    return [r for batch in batches for r in batch]
