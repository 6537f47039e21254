import pytest

from reedylab.errors import NotSurjective, SizeBudget
from reedylab.obstruction import map_t, map_u
from reedylab.reedy import (
    ReedyData,
    certify_cancellation,
    certify_pre_elegance,
    certify_reedy_axioms,
    degree,
    lowering_pushout,
    pushout_via_congruence,
    quotient_closure,
    reedy_factor,
    truncated_semilattice_category,
    verify_pushout_universal,
)
from reedylab.cubes import cube
from reedylab.semilattice import (
    SLatMorphism,
    are_isomorphic,
    atoms_with_top,
    chain,
    diamond,
    enumerate_surjections,
    interval,
    pinched_tripod_cover,
    product,
    terminal,
)


@pytest.fixture(scope="module")
def trunc3():
    return truncated_semilattice_category(3)


def test_degree_is_cardinality():
    assert degree(terminal()) == 1
    assert degree(cube(3)) == 8
    assert degree(diamond(3)) == 5


def test_reedy_factor_examples():
    # injective maps factor as (iso, self)
    incl = SLatMorphism(interval(), chain(3), (0, 2))
    low, high = reedy_factor(incl)
    assert low.is_iso and high.is_injective
    # the surjection t is its own lowering part
    t = map_t()
    low, high = reedy_factor(t)
    assert low.map == t.map and high.map == (0, 1, 2)
    # u factors through the diamond
    u = map_u()
    low, high = reedy_factor(u)
    assert are_isomorphic(low.cod, diamond(3))
    assert high.is_injective and low.is_surjective


def test_truncated_category_shapes(trunc3):
    cat, data, squares = trunc3
    assert [O.size for O in cat.objects] == [1, 2, 3, 3]
    cat.validate()
    assert len(cat.homs[(1, 1)]) == 3
    # one of the size-3 objects is the free one with a swap automorphism
    auts = {i: len(cat.isos(i, i)) for i in (2, 3)}
    assert sorted(auts.values()) == [1, 2]
    assert data.degree == (1, 2, 3, 3)


def test_truncated_category_terminal_case():
    cat, data, squares = truncated_semilattice_category(1)
    assert len(cat.objects) == 1
    assert len(list(cat.morphisms())) == 1
    assert len(squares) == 1
    with pytest.raises(SizeBudget):
        truncated_semilattice_category(6)


def test_codiagonal_pushout_is_codomain():
    e = enumerate_surjections(chain(3), interval())[0]
    sq = lowering_pushout(e, e)
    assert sq.carrier.size == 2
    assert sq.f0.map == sq.f1.map == (0, 1)


def test_projection_span_pushout_is_terminal():
    P, p0, p1 = product(interval(), interval())
    sq = lowering_pushout(p0, p1)
    assert sq.carrier.size == 1


def test_identity_leg_pushout():
    e = enumerate_surjections(chain(3), interval())[0]
    sq = lowering_pushout(SLatMorphism.identity(chain(3)), e)
    assert are_isomorphic(sq.carrier, interval())
    assert sq.f1.is_iso


def test_pushout_requires_surjections():
    incl = SLatMorphism(interval(), chain(3), (0, 2))
    with pytest.raises(NotSurjective):
        lowering_pushout(incl, SLatMorphism.identity(interval()))


def test_pushout_universal_property(trunc3):
    cat, data, squares = trunc3
    for sq in squares[:10]:
        ok, count, witness = verify_pushout_universal(sq, cat.objects)
        assert ok, witness


def test_congruence_route_matches_set_route_up_to_size_4():
    cat, data, squares = truncated_semilattice_category(4)
    assert len(squares) == 347
    for sq in squares:
        proj = pushout_via_congruence(sq.e0, sq.e1)
        assert proj.cod.size == sq.carrier.size
        # same quotient of the apex
        pairing = {}
        for a in range(sq.apex.size):
            pairing.setdefault(proj.map[a], set()).add(sq.f0.map[sq.e0.map[a]])
        assert all(len(v) == 1 for v in pairing.values())


def test_certificates_all_pass_n3(trunc3):
    cat, data, squares = trunc3
    for cert in (
        certify_reedy_axioms(cat, data),
        certify_cancellation(cat, data),
        certify_pre_elegance(cat, data, squares),
    ):
        assert cert.passed, [c for c in cert.checks if c.status != "pass"]


def test_constant_degree_fails_axioms():
    cat, data, squares = truncated_semilattice_category(2)
    broken = ReedyData((0, 0), dict(data.lowering), dict(data.raising))
    cert = certify_reedy_axioms(cat, broken)
    failed = {c.id for c in cert.checks if c.status == "fail"}
    assert "degree-monotonicity" in failed


def test_free_action_on_lowering_witnessed(trunc3):
    cat, data, squares = trunc3
    free_obj = next(i for i in (2, 3) if len(cat.isos(i, i)) == 2)
    swap = next(
        th for th in cat.isos(free_obj, free_obj) if not cat.is_identity(th)
    )
    surjs = [
        ref
        for ref in cat.morphisms()
        if ref[0] == free_obj and ref[1] == 1 and data.lowering[ref]
    ]
    assert len(surjs) == 2
    # the swap automorphism exchanges the two collapses, fixing neither
    assert {cat.compose(swap, e) for e in surjs} == set(surjs)
    assert all(cat.compose(swap, e) != e for e in surjs)


def test_cancellation_vacuous_case(trunc3):
    # gf surjective with g injective non-surjective cannot occur
    cat, data, squares = trunc3
    count = 0
    for f in cat.morphisms():
        for g in cat.morphisms():
            if f[1] != g[0]:
                continue
            gf = cat.compose(f, g)
            if data.lowering[gf] and data.raising[g] and not data.lowering[g]:
                count += 1
    assert count == 0


def test_all_morphisms_classified(trunc3):
    cat, data, squares = trunc3
    for ref in cat.morphisms():
        both = data.lowering[ref] and data.raising[ref]
        assert both == cat.mor(ref).is_iso


def test_factorization_unique_up_to_unique_iso_size_4():
    cat, data, squares = truncated_semilattice_category(4)
    isos_cache = {}
    checked = 0
    for ref in cat.morphisms():
        a, b, _ = ref
        canonical = None
        for c in range(len(cat.objects)):
            for i in range(len(cat.homs[(a, c)])):
                e = (a, c, i)
                if not data.lowering[e]:
                    continue
                for j in range(len(cat.homs[(c, b)])):
                    m = (c, b, j)
                    if not data.raising[m] or cat.compose(e, m) != ref:
                        continue
                    if canonical is None:
                        canonical = (e, m)
                        continue
                    e0, m0 = canonical
                    linking = [
                        th
                        for th in cat.isos(e0[1], c)
                        if cat.compose(e0, th) == e and cat.compose(th, m) == m0
                    ]
                    assert len(linking) == 1, (ref, canonical, (e, m))
                    checked += 1
        assert canonical is not None
    assert checked > 0


def test_quotient_closure_contains_all_quotients():
    A5, e = pinched_tripod_cover()
    objs = quotient_closure([A5])
    sizes = sorted(O.size for O in objs)
    assert sizes[0] == 1 and sizes[-1] == 5
    assert any(are_isomorphic(O, atoms_with_top(3)) for O in objs)
    # closed: every surjective image of every object is present
    from reedylab.semilattice import all_semilattices_upto

    for A in objs:
        for B in all_semilattices_upto(A.size):
            if enumerate_surjections(A, B):
                assert any(are_isomorphic(O, B) for O in objs)


def test_category_json_roundtrip(trunc3):
    cat, data, squares = trunc3
    blob = cat.to_json()
    assert len(blob["objects"]) == 4
    assert blob["homs"]["1:1"] == [[0, 0], [0, 1], [1, 1]]
