"""Executable obstruction certificates.

Two negative results are mechanized: the endomap (x,y,z) -> (xvy, yvz,
zvx) of the 3-cube admits no (lowering, raising) factorization compatible
with any Reedy structure on the distributive-lattice completion, and the
crown-poset winding number rules out stabilization of a principal-sieve
chain over the Dedekind cubes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .certificates import Certificate, Check, FAIL, PASS
from .cubes import cube, degeneracy, face
from .errors import SizeBudget
from .semilattice import (
    DEFAULT_CANDIDATE_BUDGET,
    FiniteSemilattice,
    SLatMorphism,
    are_isomorphic,
    chain,
    diamond,
    enumerate_homs,
    image_factorize,
    is_distributive_lattice,
    validate_semilattice,
)

# ---------------------------------------------------------------------------
# the 3-cube endomap u
# ---------------------------------------------------------------------------


def map_u() -> SLatMorphism:
    """(x,y,z) -> (x v y, y v z, z v x) on the 3-cube."""
    C = cube(3)

    def u(v: int) -> int:
        x, y, z = (v >> 0) & 1, (v >> 1) & 1, (v >> 2) & 1
        return (x | y) | ((y | z) << 1) | ((z | x) << 2)

    return SLatMorphism(C, C, tuple(u(v) for v in range(8)))


def map_t() -> SLatMorphism:
    """(x,y,z) -> x v 2y v 2z from the 3-cube onto the 3-chain."""
    C = cube(3)

    def t(v: int) -> int:
        x, y, z = (v >> 0) & 1, (v >> 1) & 1, (v >> 2) & 1
        return max(x, 2 * y, 2 * z)

    return SLatMorphism(C, chain(3), tuple(t(v) for v in range(8)))


def verify_u_image() -> Certificate:
    """The image of u is the five-element diamond, hence non-distributive."""
    cert = Certificate("u-image")
    u = map_u()
    surj, mono = image_factorize(u)
    img = surj.cod
    cert.add(
        Check(
            "image-has-five-elements",
            PASS if img.size == 5 else FAIL,
            8,
            None if img.size == 5 else {"size": img.size},
        )
    )
    iso = are_isomorphic(img, diamond(3))
    cert.add(Check("image-is-the-diamond", PASS if iso else FAIL, 1))
    verdict = is_distributive_lattice(img)
    cert.add(
        Check(
            "image-not-distributive",
            PASS if not verdict else FAIL,
            img.size**3,
            None if not verdict else "unexpectedly distributive",
        )
    )
    return cert


def join_closed_subsets_containing(A: FiniteSemilattice, seed: set[int]):
    """All join-closed subsets of A containing the seed."""
    n = A.size
    rest = [x for x in range(n) if x not in seed]
    out = []
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            S = set(seed) | set(extra)
            if all(A.join[x][y] in S for x in S for y in S):
                out.append(tuple(sorted(S)))
    return out


def sub_semilattice(A: FiniteSemilattice, elems) -> tuple[FiniteSemilattice, SLatMorphism]:
    """The sub-semilattice on a join-closed subset, with its inclusion."""
    elems = tuple(sorted(elems))
    pos = {v: i for i, v in enumerate(elems)}
    table = tuple(tuple(pos[A.join[x][y]] for y in elems) for x in elems)
    S = validate_semilattice(table, tuple(A.label(v) for v in elems))
    return S, SLatMorphism(S, A, elems)


def certify_no_reedy_factorization_of_u(
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> Certificate:
    """Three exhaustive sub-checks blocking a Reedy factorization of u
    inside the distributive-lattice completion of the cube category.

    (1) the cube itself is the only distributive join-closed subset of
    the 3-cube containing the image of u; (2) consequently every
    factorization of u as (any map, injection) through a distributive
    middle object has the full cube in the middle, forcing the lowering
    part to be u itself up to isomorphism; (3) u cannot be a lowering
    map, because a commuting square against the raising face [1] -> [2]
    admits no diagonal.
    """
    cert = Certificate("u-factorization")
    u = map_u()
    C3 = u.dom
    img = set(u.image())

    subsets = join_closed_subsets_containing(C3, img)
    distributive = []
    for S in subsets:
        sub, _ = sub_semilattice(C3, S)
        if is_distributive_lattice(sub):
            distributive.append(S)
    ok = distributive == [tuple(range(8))]
    cert.add(
        Check(
            "only-distributive-superset-is-the-cube",
            PASS if ok else FAIL,
            len(subsets),
            None if ok else {"subsets": distributive},
        )
    )

    # factorizations u = mono . e through distributive middles
    found = []
    count = 0
    for S in join_closed_subsets_containing(C3, set()):
        if not S:
            continue
        D, _ = sub_semilattice(C3, S)
        if not is_distributive_lattice(D):
            continue
        for m in enumerate_homs(D, C3, budget):
            if not m.is_injective:
                continue
            count += 1
            m_image = {m.map[i]: i for i in range(D.size)}
            if not img <= set(m_image):
                continue
            e_map = tuple(m_image[u.map[v]] for v in range(8))
            e = SLatMorphism(C3, D, e_map)
            assert e.then(m).map == u.map
            found.append((len(S), e.is_iso if D.size == 8 else False, D.size))
    ok = all(size == 8 for (_, _, size) in found) and found
    cert.add(
        Check(
            "all-injective-factorizations-pass-through-the-cube",
            PASS if ok else FAIL,
            count,
            None if ok else {"middles": sorted({s for (_, _, s) in found})},
        )
    )

    t = map_t()
    s1 = degeneracy(1, 1)  # [2] -> [1]
    d1 = face(1, 2)  # [1] -> [2]
    top = t.then(s1)
    square_ok = u.then(t).map == top.then(d1).map
    cert.add(
        Check(
            "t-square-commutes",
            PASS if square_ok else FAIL,
            8,
            None if square_ok else {"lhs": list(u.then(t).map)},
        )
    )
    interval = d1.dom
    diagonals = [
        j for j in enumerate_homs(C3, interval, budget) if j.then(d1).map == t.map
    ]
    cert.add(
        Check(
            "t-square-has-no-diagonal",
            PASS if not diagonals else FAIL,
            len(enumerate_homs(C3, interval, budget)),
            None if not diagonals else {"diagonal": list(diagonals[0].map)},
        )
    )

    uu = u.then(u)
    surj, _ = image_factorize(uu)
    ok = surj.cod.size == 2
    cert.add(
        Check(
            "u-squared-factors-through-the-interval",
            PASS if ok else FAIL,
            8,
            None if ok else {"image-size": surj.cod.size},
        )
    )
    return cert


# ---------------------------------------------------------------------------
# crown posets and winding numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrownPoset:
    """2n elements in a cyclic zigzag: even i sits below i-1 and i+1."""

    n: int

    def __post_init__(self):
        assert self.n >= 3

    @property
    def size(self) -> int:
        return 2 * self.n

    def leq(self, i: int, j: int) -> bool:
        if i == j:
            return True
        if i % 2 == 0:
            return j % 2 == 1 and (j - i) % self.size in (1, self.size - 1)
        return False

    def upper_covers(self, i: int) -> tuple[int, int]:
        assert i % 2 == 0
        return ((i - 1) % self.size, (i + 1) % self.size)


def crown(n: int) -> CrownPoset:
    return CrownPoset(n)


@dataclass(frozen=True)
class CrownMap:
    """A monotone map between crowns with a chosen integer lift.

    The lift lives on the window 0..2m of the integer fence and satisfies
    projection-compatibility; it is unique once its base point is fixed,
    and unique modulo 2n overall.
    """

    m: int
    n: int
    values: tuple[int, ...]
    lift: tuple[int, ...]

    @property
    def dom(self) -> CrownPoset:
        return CrownPoset(self.m)

    @property
    def cod(self) -> CrownPoset:
        return CrownPoset(self.n)


def _lift_values(m: int, n: int, values, base: int) -> tuple[int, ...]:
    """Greedy fence lift on the window 0..2m from the given base point.

    The next lift value is the unique integer in the right residue class
    within fence distance one; monotone maps always admit exactly one.
    """
    size_n = 2 * n
    lift = [base]
    for i in range(1, 2 * m + 1):
        target = values[i % (2 * m)]
        prev = lift[-1]
        candidates = [
            c for c in (prev - 1, prev, prev + 1) if c % size_n == target
        ]
        assert len(candidates) == 1, "fence lift step is forced"
        lift.append(candidates[0])
    return tuple(lift)


def crown_map(m: int, n: int, values) -> CrownMap:
    """Validate monotonicity and compute the lift (base point in [0, 2n))."""
    values = tuple(values)
    Cm, Cn = CrownPoset(m), CrownPoset(n)
    assert len(values) == Cm.size
    assert all(0 <= v < Cn.size for v in values)
    for i in range(0, Cm.size, 2):
        for j in Cm.upper_covers(i):
            assert Cn.leq(values[i], values[j]), (
                f"not monotone at {i} <= {j}"
            )
    lift = _lift_values(m, n, values, values[0] % (2 * n))
    # base-point independence: shifting the base shifts the whole lift
    other = _lift_values(m, n, values, values[0] % (2 * n) + 2 * n)
    assert all(b - a == 2 * n for a, b in zip(lift, other))
    assert (lift[-1] - lift[0]) % (2 * n) == 0, "window endpoints agree mod 2n"
    return CrownMap(m, n, values, lift)


def winding(f: CrownMap) -> int:
    delta = f.lift[-1] - f.lift[0]
    assert delta % (2 * f.n) == 0
    return delta // (2 * f.n)


def identity_crown(n: int) -> CrownMap:
    return crown_map(n, n, tuple(range(2 * n)))


def fold_map(m: int, n: int) -> CrownMap:
    """The reduction C_m -> C_n induced by the identity on the fence;
    needs n to divide m, and has winding m/n."""
    assert m % n == 0
    return crown_map(m, n, tuple(i % (2 * n) for i in range(2 * m)))


def rotation(n: int, k: int) -> CrownMap:
    """Rotation by an even offset k."""
    assert k % 2 == 0
    return crown_map(n, n, tuple((i + k) % (2 * n) for i in range(2 * n)))


def reflection(n: int, axis: int = 0) -> CrownMap:
    """Reflection about an even vertex."""
    assert axis % 2 == 0
    return crown_map(n, n, tuple((axis - i) % (2 * n) for i in range(2 * n)))


def compose_crown(f: CrownMap, g: CrownMap) -> CrownMap:
    """g after f."""
    assert f.n == g.m
    return crown_map(f.m, g.n, tuple(g.values[v] for v in f.values))


def enumerate_crown_maps(m: int, n: int, cap: int = 6) -> list[CrownMap]:
    """All monotone maps C_m -> C_n by cyclic backtracking."""
    if m > cap or n > cap:
        raise SizeBudget(f"crown enumeration capped at {cap}")
    Cm, Cn = CrownPoset(m), CrownPoset(n)
    size_m, size_n = Cm.size, Cn.size
    out = []
    vals: list[int] = []

    def ok_at(i: int) -> bool:
        v = vals[i]
        if i % 2 == 0:
            return True
        # odd positions must sit above their assigned even neighbours
        lo = i - 1
        if not Cn.leq(vals[lo], v):
            return False
        if i == size_m - 1 and not Cn.leq(vals[0], v):
            return False
        return True

    def even_ok(i: int) -> bool:
        # an even position must sit below its already-assigned neighbours
        v = vals[i]
        if i > 0 and not Cn.leq(v, vals[i - 1]):
            return False
        return True

    def rec(i: int):
        if i == size_m:
            out.append(crown_map(m, n, tuple(vals)))
            return
        for v in range(size_n):
            vals.append(v)
            good = ok_at(i) if i % 2 == 1 else even_ok(i)
            if good:
                rec(i + 1)
            vals.pop()

    rec(0)
    return out


def certify_wind_properties(budget: int = DEFAULT_CANDIDATE_BUDGET) -> Certificate:
    """Short crowns cannot wind around longer ones; winding is
    multiplicative; the cube extension is a semifunctor."""
    cert = Certificate("crown-winding")

    def short_to_long():
        n_cases = 0
        for (a, b) in [(3, 4), (3, 5), (4, 5), (3, 6)]:
            for f in enumerate_crown_maps(a, b):
                n_cases += 1
                if winding(f) != 0:
                    return False, n_cases, {"m": a, "n": b, "values": list(f.values)}
        return True, n_cases, None

    ok, n, w = short_to_long()
    cert.add(Check("short-into-long-winds-zero", PASS if ok else FAIL, n, w))

    def multiplicative():
        # winding is the sum of forced fence steps over the cyclic edges,
        # so composite windings vectorize as a table lookup
        import numpy as np

        sizes = [3, 4]
        n_cases = 0
        pool = {
            (a, b): enumerate_crown_maps(a, b) for a in sizes for b in sizes
        }
        for (a, b), fs in pool.items():
            vf = np.array([f.values for f in fs], dtype=np.int64)
            wf = np.array([winding(f) for f in fs], dtype=np.int64)
            for c in sizes:
                gs = pool[(b, c)]
                size_c = 2 * c
                D = np.full((size_c, size_c), 99, dtype=np.int64)
                for x in range(size_c):
                    for d in (-1, 0, 1):
                        D[x][(x + d) % size_c] = d
                for g in gs:
                    gv = np.array(g.values, dtype=np.int64)
                    comp = gv[vf]
                    steps = D[comp, np.roll(comp, -1, axis=1)]
                    assert (steps != 99).all(), "composite lift step not forced"
                    tot = steps.sum(axis=1)
                    assert (tot % size_c == 0).all()
                    n_cases += len(fs)
                    bad = np.nonzero(tot // size_c != winding(g) * wf)[0]
                    if bad.size:
                        i = int(bad[0])
                        return False, n_cases, {
                            "f": list(fs[i].values),
                            "g": list(g.values),
                        }
        return True, n_cases, None

    ok, n, w = multiplicative()
    cert.add(Check("winding-multiplicative", PASS if ok else FAIL, n, w))

    def symmetry_winds():
        n_cases = 0
        for n0 in (3, 4):
            maps = {f.values for f in enumerate_crown_maps(n0, n0)}
            for k in range(0, 2 * n0, 2):
                r = rotation(n0, k)
                n_cases += 1
                if winding(r) != 1 or r.values not in maps:
                    return False, n_cases, {"rotation": k}
            for a in range(0, 2 * n0, 2):
                r = reflection(n0, a)
                n_cases += 1
                if winding(r) != -1 or r.values not in maps:
                    return False, n_cases, {"reflection": a}
        return True, n_cases, None

    ok, n, w = symmetry_winds()
    cert.add(Check("rotations-wind-one-reflections-minus-one", PASS if ok else FAIL, n, w))

    def fold_winds():
        f1 = fold_map(6, 3)
        f2 = fold_map(12, 6)
        composite = compose_crown(f2, f1)
        ok = (
            winding(f1) == 2
            and winding(fold_map(8, 4)) == 2
            and winding(composite) == 4
        )
        return ok, 3, None if ok else {
            "w(fold 6->3)": winding(f1),
            "w(fold 12->3)": winding(composite),
        }

    ok, n, w = fold_winds()
    cert.add(Check("fold-windings", PASS if ok else FAIL, n, w))

    def semifunctor():
        n_cases = 0
        samples = [
            (fold_map(12, 6), fold_map(6, 3)),
            (fold_map(6, 3), identity_crown(3)),
            (rotation(3, 2), reflection(3, 0)),
            (reflection(4, 2), rotation(4, 2)),
            (fold_map(8, 4), reflection(4, 0)),
        ]
        for f, g in samples:
            n_cases += 1
            lhs = crown_extension(compose_crown(f, g))
            rhs = compose_extensions(crown_extension(f), crown_extension(g))
            if lhs.values != rhs.values:
                return False, n_cases, {"f": list(f.values), "g": list(g.values)}
        for n0 in (3, 4):
            n_cases += 1
            bar_id = crown_extension(identity_crown(n0))
            idem = tuple(bar_id.values[v] for v in bar_id.values)
            if idem != bar_id.values:
                return False, n_cases, {"n": n0, "reason": "not idempotent"}
            fixed = {v for v in range(1 << n0) if bar_id.values[v] == v}
            expected = set(crown_embedding(n0)) | {0, (1 << n0) - 1}
            if fixed != expected:
                return False, n_cases, {"n": n0, "reason": "fixed points"}
            is_id = bar_id.values == tuple(range(1 << n0))
            if is_id != (n0 == 3):
                return False, n_cases, {"n": n0, "reason": "identity iff n=3"}
        return True, n_cases, None

    ok, n, w = semifunctor()
    cert.add(Check("extension-semifunctor", PASS if ok else FAIL, n, w))
    return cert


# ---------------------------------------------------------------------------
# crown embeddings into Dedekind cubes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonotoneCubeMap:
    """A monotone (not necessarily join-preserving) map of cube posets."""

    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        assert len(self.values) == 1 << self.m
        for v in range(1 << self.m):
            for i in range(self.m):
                w = v | (1 << i)
                if w != v:
                    a, b = self.values[v], self.values[w]
                    assert a | b == b, "not monotone"


def crown_embedding(n: int) -> tuple[int, ...]:
    """The embedding of the 2n-crown into the n-cube: even vertex 2k maps
    to the k-th unit, odd vertex 2k+1 to the join of units k and k+1."""
    assert n >= 3
    out = []
    for i in range(2 * n):
        k = i // 2
        if i % 2 == 0:
            out.append(1 << k)
        else:
            out.append((1 << k) | (1 << ((k + 1) % n)))
    assert len(set(out)) == 2 * n
    return tuple(out)


def crown_extension(f: CrownMap) -> MonotoneCubeMap:
    """Extend a crown map to the cubes: crown points map through the
    embeddings, bottom to bottom, everything else to top."""
    m, n = f.m, f.n
    cm, cn = crown_embedding(m), crown_embedding(n)
    pos = {v: i for i, v in enumerate(cm)}
    top = (1 << n) - 1
    values = []
    for v in range(1 << m):
        if v in pos:
            values.append(cn[f.values[pos[v]]])
        elif v == 0:
            values.append(0)
        else:
            values.append(top)
    return MonotoneCubeMap(m, n, tuple(values))


def compose_extensions(f: MonotoneCubeMap, g: MonotoneCubeMap) -> MonotoneCubeMap:
    assert f.n == g.m
    return MonotoneCubeMap(f.m, g.n, tuple(g.values[v] for v in f.values))


def verify_extension_pullback(f: CrownMap) -> Certificate:
    """The extension square is a pullback: the only cube points mapping
    into the embedded target crown are the embedded source crown points."""
    cert = Certificate("extension-pullback")
    m, n = f.m, f.n
    cm, cn = crown_embedding(m), crown_embedding(n)
    ext = crown_extension(f)

    commute = all(ext.values[cm[i]] == cn[f.values[i]] for i in range(2 * m))
    cert.add(Check("square-commutes", PASS if commute else FAIL, 2 * m))

    cn_set = set(cn)
    cm_set = set(cm)
    bad = [
        v
        for v in range(1 << m)
        if ext.values[v] in cn_set and v not in cm_set
    ]
    cert.add(
        Check(
            "pullback-exhaustive",
            PASS if not bad else FAIL,
            1 << m,
            None if not bad else {"point": bad[0]},
        )
    )
    return cert


# ---------------------------------------------------------------------------
# sieve chain non-stabilization
# ---------------------------------------------------------------------------


def certify_sieve_chain_nonstabilization(
    n: int = 3, budget: int = DEFAULT_CANDIDATE_BUDGET
) -> Certificate:
    """The principal sieves generated by the extended folds strictly
    descend: stage-wise composite identities give the inclusions, and an
    exhaustive fibre-pruned search plus the winding obstruction rule out
    a map splitting the first inclusion.
    """
    if n != 3:
        raise SizeBudget("sieve chain is certified at n=3 only")
    cert = Certificate("sieve-chain")

    f1 = identity_crown(n)
    fold_2n_n = fold_map(2 * n, n)
    fold_4n_2n = fold_map(4 * n, 2 * n)
    f2 = fold_2n_n
    f4 = compose_crown(fold_4n_2n, fold_2n_n)

    def stage(a_name, composite, left, right, dim):
        if dim > 13:
            raise SizeBudget("pointwise stage check capped at 2^13 points")
        lhs = crown_extension(composite)
        rhs = compose_extensions(crown_extension(left), crown_extension(right))
        ok = lhs.values == rhs.values
        return ok, 1 << dim, None if ok else {"stage": a_name}

    ok, cnt, w = stage("f2 = f1 . fold", f2, fold_2n_n, f1, 2 * n)
    cert.add(Check("chain-inclusion-stage-1", PASS if ok else FAIL, cnt, w))
    ok, cnt, w = stage("f4 = fold . f2", f4, fold_4n_2n, f2, 4 * n)
    cert.add(Check("chain-inclusion-stage-2", PASS if ok else FAIL, cnt, w))

    # no monotone g: [1]^n -> [1]^2n with ext(f2) o g = ext(f1)
    ext_f2 = crown_extension(f2)
    ext_f1 = crown_extension(f1)
    size_dom = 1 << n
    fibres = []
    for v in range(size_dom):
        target = ext_f1.values[v]
        fibres.append([w for w in range(1 << (2 * n)) if ext_f2.values[w] == target])
    examined = 0
    found = None
    vals: list[int] = []

    def leq(a, b):
        return a | b == b

    def rec(v: int):
        nonlocal examined, found
        if found is not None:
            return
        if v == size_dom:
            examined += 1
            found = tuple(vals)
            return
        preds = [v & ~(1 << i) for i in range(n) if (v >> i) & 1]
        for wv in fibres[v]:
            if all(leq(vals[p], wv) for p in preds):
                vals.append(wv)
                examined += 1
                rec(v + 1)
                vals.pop()

    rec(0)
    cert.add(
        Check(
            "no-section-of-extended-fold",
            PASS if found is None else FAIL,
            examined,
            None if found is None else {"g": list(found)},
        )
    )

    maps = enumerate_crown_maps(n, 2 * n)
    bad = [f for f in maps if winding(f) != 0]
    cert.add(
        Check(
            "all-crown-maps-into-double-wind-zero",
            PASS if not bad else FAIL,
            len(maps),
            None if not bad else {"values": list(bad[0].values)},
        )
    )
    return cert
