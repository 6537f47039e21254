import pytest

from reedylab.errors import SizeBudget
from reedylab.obstruction import (
    CrownPoset,
    certify_no_reedy_factorization_of_u,
    certify_sieve_chain_nonstabilization,
    certify_wind_properties,
    compose_crown,
    compose_extensions,
    crown,
    crown_embedding,
    crown_extension,
    crown_map,
    enumerate_crown_maps,
    fold_map,
    identity_crown,
    map_t,
    map_u,
    reflection,
    rotation,
    verify_extension_pullback,
    verify_u_image,
    winding,
)
from reedylab.semilattice import are_isomorphic, diamond, is_distributive_lattice
from reedylab.cubes import cube_vertex


# ---------------------------------------------------------------------------
# the endomap u
# ---------------------------------------------------------------------------


def test_u_pointwise():
    u = map_u()
    assert u.map[cube_vertex((1, 0, 0))] == cube_vertex((1, 0, 1))
    assert u.map[cube_vertex((0, 0, 0))] == 0
    assert sorted(u.image()) == [0, 3, 5, 6, 7]


def test_u_symmetry():
    # every coordinate permutation conjugates u to itself: for each
    # permutation of the inputs there is exactly one permutation of the
    # outputs making the square commute
    import itertools

    u = map_u()

    def apply(perm, v):
        bits = (v & 1, (v >> 1) & 1, (v >> 2) & 1)
        return cube_vertex(tuple(bits[perm[i]] for i in range(3)))

    for sigma in itertools.permutations(range(3)):
        matches = [
            tau
            for tau in itertools.permutations(range(3))
            if all(u.map[apply(sigma, v)] == apply(tau, u.map[v]) for v in range(8))
        ]
        assert len(matches) == 1


def test_u_image_certificate():
    cert = verify_u_image()
    assert cert.passed


def test_u_factorization_certificate():
    cert = certify_no_reedy_factorization_of_u()
    assert cert.passed
    by_id = {c.id: c for c in cert.checks}
    assert by_id["t-square-has-no-diagonal"].count == 9
    assert by_id["only-distributive-superset-is-the-cube"].count == 8


def test_t_is_surjective_join_preserving():
    t = map_t()
    assert t.is_surjective and t.cod.size == 3


# ---------------------------------------------------------------------------
# crowns and windings
# ---------------------------------------------------------------------------


def test_crown_poset_structure():
    C4 = crown(4)
    assert C4.size == 8
    assert set(C4.upper_covers(0)) == {7, 1}
    assert set(C4.upper_covers(6)) == {5, 7}
    assert C4.leq(0, 1) and not C4.leq(1, 0)
    assert not C4.leq(0, 3)
    with pytest.raises(AssertionError):
        CrownPoset(2)


def test_crown_map_validation():
    with pytest.raises(AssertionError):
        crown_map(3, 3, (0, 3, 2, 1, 4, 5))  # 0 <= 1 broken: 0 -> 0, 1 -> 3


def test_winding_examples():
    for n in (3, 4, 5):
        assert winding(identity_crown(n)) == 1
    assert winding(fold_map(6, 3)) == 2
    assert winding(fold_map(8, 4)) == 2
    assert winding(crown_map(3, 3, (1,) * 6)) == 0
    assert winding(compose_crown(fold_map(12, 6), fold_map(6, 3))) == 4


def test_lift_window_and_base_independence():
    f = fold_map(6, 3)
    assert f.lift == tuple(range(13))
    assert (f.lift[-1] - f.lift[0]) == 12  # two turns of six


def test_symmetries_enumerated_with_expected_windings():
    maps = {m.values: m for m in enumerate_crown_maps(3, 3)}
    assert len(maps) == 234
    for k in (0, 2, 4):
        assert winding(rotation(3, k)) == 1
        assert rotation(3, k).values in maps
    for a in (0, 2, 4):
        assert winding(reflection(3, a)) == -1
        assert reflection(3, a).values in maps


def test_crown_map_counts_and_rotation_invariance():
    counts = {}
    for (m, n) in [(3, 3), (3, 4), (3, 6)]:
        counts[(m, n)] = enumerate_crown_maps(m, n)
    assert len(counts[(3, 4)]) == 304
    assert len(counts[(3, 6)]) == 456
    # postcomposition with a rotation permutes the set of maps
    maps34 = {f.values for f in counts[(3, 4)]}
    r = rotation(4, 2)
    assert {compose_crown(f, r).values for f in counts[(3, 4)]} == maps34


def test_enumeration_budget():
    with pytest.raises(SizeBudget):
        enumerate_crown_maps(7, 7)


def test_wind_properties_certificate():
    cert = certify_wind_properties()
    assert cert.passed
    by_id = {c.id: c for c in cert.checks}
    assert by_id["winding-multiplicative"].count == 5956932


def test_multiplicativity_pure_python_crosscheck():
    # validates the vectorized route on the smallest block
    fs = enumerate_crown_maps(3, 3)
    for f in fs[:40]:
        for g in fs[:40]:
            assert winding(compose_crown(f, g)) == winding(g) * winding(f)


# ---------------------------------------------------------------------------
# embeddings and extensions
# ---------------------------------------------------------------------------


def test_crown_embedding_values():
    c3 = crown_embedding(3)
    assert c3[0] == 0b001  # the first unit coordinate
    assert c3[1] == 0b011
    assert c3[5] == 0b101  # wraps around
    assert len(set(c3)) == 6


def test_crown_extension_cases():
    f = fold_map(6, 3)
    ext = crown_extension(f)
    assert ext.values[0] == 0
    top6 = (1 << 6) - 1
    assert ext.values[top6] == (1 << 3) - 1
    cm = crown_embedding(6)
    cn = crown_embedding(3)
    for i in range(12):
        assert ext.values[cm[i]] == cn[f.values[i]]
    # the identity extension fixes exactly the crown plus the bounds
    bar_id4 = crown_extension(identity_crown(4))
    fixed = {v for v in range(16) if bar_id4.values[v] == v}
    assert fixed == set(crown_embedding(4)) | {0, 15}
    bar_id3 = crown_extension(identity_crown(3))
    assert bar_id3.values == tuple(range(8))


def test_extension_semifunctor_pointwise():
    f = fold_map(6, 3)
    lhs = crown_extension(compose_crown(f, identity_crown(3)))
    rhs = compose_extensions(crown_extension(f), crown_extension(identity_crown(3)))
    assert lhs.values == rhs.values


def test_extension_pullback_certificates():
    for f in (fold_map(6, 3), identity_crown(3), fold_map(8, 4)):
        cert = verify_extension_pullback(f)
        assert cert.passed


def test_sieve_chain_certificate():
    cert = certify_sieve_chain_nonstabilization(3)
    assert cert.passed
    by_id = {c.id: c for c in cert.checks}
    assert by_id["no-section-of-extended-fold"].status == "pass"
    assert by_id["all-crown-maps-into-double-wind-zero"].count == 456
    with pytest.raises(SizeBudget):
        certify_sieve_chain_nonstabilization(4)


def test_image_of_u_is_nondistributive_diamond():
    u = map_u()
    from reedylab.semilattice import image_factorize

    surj, mono = image_factorize(u)
    assert are_isomorphic(surj.cod, diamond(3))
    assert not is_distributive_lattice(surj.cod)
