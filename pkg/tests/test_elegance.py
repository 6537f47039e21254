from reedylab.cubes import cube
from reedylab.elegance import (
    codiagonal_square,
    contraction_square,
    counit_from_free,
    hom_preserves_lowering_pushout,
    in_elegant_core,
    is_perfectly_presentable,
    principal_sieve_leq,
    projective_lift,
    sieve_degree,
    certify_sieve_monotonicity,
)
from reedylab.obstruction import map_t
from reedylab.reedy import lowering_pushout, truncated_semilattice_category
from reedylab.semilattice import (
    SLatMorphism,
    all_semilattices_upto,
    are_isomorphic,
    atoms_with_top,
    chain,
    diamond,
    enumerate_homs,
    enumerate_surjections,
    interval,
    product,
    terminal,
)


def test_counit_is_join_of_generators():
    V = atoms_with_top(2)
    eps = counit_from_free(V)
    assert eps.dom.size == 7 and eps.is_surjective
    # singletons hit the generators
    assert sorted(set(eps.map)) == [0, 1, 2]


def test_core_membership_positive():
    for A in (terminal(), interval(), chain(3), cube(2)):
        v = in_elegant_core(A)
        assert v.closed_form and v.retract_data is not None
        section, retraction = v.retract_data
        assert section.then(retraction).map == tuple(range(A.size))


def test_core_membership_negative_with_witness():
    tripod = atoms_with_top(3)
    v = in_elegant_core(tripod)
    assert not v.closed_form and v.witness is not None
    B = v.witness
    ok, witness = hom_preserves_lowering_pushout(tripod, B)
    assert not ok
    # the bottom extension is the diamond
    from reedylab.semilattice import adjoin_bottom

    assert are_isomorphic(adjoin_bottom(tripod)[0], diamond(3))


def test_perfectly_presentable_examples():
    ok, data = is_perfectly_presentable(cube(2))
    assert ok
    V = atoms_with_top(2)
    ok, _ = is_perfectly_presentable(V)  # free on two generators
    assert ok
    ok, data = is_perfectly_presentable(atoms_with_top(3))
    assert not ok and data is None


def test_triple_agreement_all_classes_size_4():
    for A in all_semilattices_upto(4):
        closed = in_elegant_core(A).closed_form
        retract = is_perfectly_presentable(A)[0]
        hom_ok, _ = hom_preserves_lowering_pushout(
            A, codiagonal_square(counit_from_free(A))
        )
        assert closed == retract == hom_ok


def test_hom_preservation_examples():
    P, p0, p1 = product(interval(), interval())
    sq = lowering_pushout(p0, p1)
    assert hom_preserves_lowering_pushout(terminal(), sq)[0]
    assert hom_preserves_lowering_pushout(interval(), sq)[0]
    assert hom_preserves_lowering_pushout(cube(3), sq)[0]


def test_relative_elegance_cubes_and_chains_size_4():
    cat, data, squares = truncated_semilattice_category(4)
    sources = [cube(m) for m in range(4)] + [chain(n + 1) for n in range(1, 4)]
    for A in sources:
        for sq in squares:
            ok, witness = hom_preserves_lowering_pushout(A, sq)
            assert ok, (A.size, sq.refs, witness)


def test_small_truncations_are_elegant():
    # every object's covariant hom preserves every lowering pushout of
    # the truncation, at sizes 3 and 4; consequently all presheaves over
    # these bases are Reedy monomorphic (failures need a size-5 cover)
    for N in (3, 4):
        cat, data, squares = truncated_semilattice_category(N)
        for A in cat.objects:
            for sq in squares:
                ok, witness = hom_preserves_lowering_pushout(A, sq)
                assert ok, (N, A.size, sq.refs, witness)


def test_projective_lift_through_t():
    t = map_t()  # [1]^3 onto the 3-chain
    I = interval()
    for f in enumerate_homs(I, t.cod):
        h = projective_lift(I, t, f)
        assert h is not None and h.then(t).map == f.map


def test_projective_lift_split_case():
    # lifting the identity through a split surjection returns a section
    e = enumerate_surjections(chain(3), interval())[0]
    h = projective_lift(interval(), e, SLatMorphism.identity(interval()))
    assert h is not None and h.then(e).map == (0, 1)


def test_projective_lift_failure():
    tripod = atoms_with_top(3)
    eps = counit_from_free(tripod)
    assert projective_lift(tripod, eps, SLatMorphism.identity(tripod)) is None


def test_sieve_degree_and_inclusion():
    P, _, _ = product(interval(), interval())
    idP = SLatMorphism.identity(P)
    assert sieve_degree(idP) == 4
    point = enumerate_homs(terminal(), P)[0]  # constant at the bottom
    assert sieve_degree(point) == 1
    assert principal_sieve_leq(point, idP)
    assert not principal_sieve_leq(idP, point)
    ax0 = SLatMorphism(interval(), P, (0, 2))
    ax1 = SLatMorphism(interval(), P, (0, 1))
    assert sieve_degree(ax0) == sieve_degree(ax1) == 2
    assert not principal_sieve_leq(ax0, ax1)
    assert not principal_sieve_leq(ax1, ax0)


def test_sieve_monotonicity_certificates():
    sources1 = [terminal(), interval()]
    cert = certify_sieve_monotonicity(interval(), sources1)
    assert cert.passed
    P, _, _ = product(interval(), interval())
    cert = certify_sieve_monotonicity(P, [terminal(), interval(), P])
    assert cert.passed


def test_contraction_square():
    P, _, _ = product(interval(), interval())
    swap = SLatMorphism(P, P, (0, 2, 1, 3))
    assert contraction_square(P, swap)
    V = atoms_with_top(2)
    assert contraction_square(V, SLatMorphism.identity(V))
    assert contraction_square(V, SLatMorphism(V, V, (1, 0, 2)))
