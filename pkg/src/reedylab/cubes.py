"""Cube and simplex categories as concrete finite semilattices and posets.

Cubes [1]^n are materialized as 2^n-element semilattices (bitmask indices,
join = bitwise or) only for small n; CubeHom is the compact free
parametrization of their morphisms used when tables would be wasteful.
The Dedekind side (all monotone maps between cubes as posets) shares the
bitmask representation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .certificates import Certificate, Check, PASS, FAIL
from .errors import NotDistributive, NotIdempotent, SizeBudget
from .semilattice import (
    DEFAULT_CANDIDATE_BUDGET,
    FinPoset,
    FiniteSemilattice,
    SLatMorphism,
    all_semilattices_upto,
    chain,
    enumerate_homs,
    is_distributive_lattice,
    lift_through_surjection,
    validate_semilattice,
)


def cube(n: int, max_dim: int = 6) -> FiniteSemilattice:
    """The n-cube: bitmasks 0..2^n-1 under bitwise or."""
    if n > max_dim:
        raise SizeBudget(f"cube dimension {n} exceeds cap {max_dim}")
    size = 1 << n
    table = tuple(tuple(i | j for j in range(size)) for i in range(size))
    labels = tuple(format(v, f"0{n}b")[::-1] if n else "()" for v in range(size))
    return validate_semilattice(table, labels)


def cube_vertex(bits) -> int:
    """Bitmask of a coordinate tuple (x_0, x_1, ...)."""
    v = 0
    for i, b in enumerate(bits):
        if b:
            v |= 1 << i
    return v


def vertex_bits(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(n))


@dataclass(frozen=True)
class CubeHom:
    """A morphism [1]^m -> [1]^n in free form: bottom image plus one image
    per generator, each above the bottom.  Encodes exactly one
    join-preserving map; counting and composing never materialize tables.
    """

    m: int
    n: int
    bottom: int
    gens: tuple[int, ...]

    def __post_init__(self):
        assert len(self.gens) == self.m
        assert 0 <= self.bottom < (1 << self.n)
        for g in self.gens:
            assert g | self.bottom == g, "generator images sit above the bottom"

    def apply(self, v: int) -> int:
        out = self.bottom
        for i in range(self.m):
            if (v >> i) & 1:
                out |= self.gens[i]
        return out

    def compose(self, other: "CubeHom") -> "CubeHom":
        """other after self."""
        assert self.n == other.m
        return CubeHom(
            self.m,
            other.n,
            other.apply(self.bottom),
            tuple(other.apply(g) for g in self.gens),
        )

    def decode(self) -> SLatMorphism:
        dom, cod = cube(self.m), cube(self.n)
        return SLatMorphism(dom, cod, tuple(self.apply(v) for v in range(1 << self.m)))

    @staticmethod
    def encode(f: SLatMorphism) -> "CubeHom":
        m = f.dom.size.bit_length() - 1
        n = f.cod.size.bit_length() - 1
        assert f.dom.size == 1 << m and f.cod.size == 1 << n
        return CubeHom(m, n, f.map[0], tuple(f.map[1 << i] for i in range(m)))


def enumerate_cube_homs(m: int, n: int):
    """All CubeHoms [1]^m -> [1]^n via the free parametrization."""
    out = []
    for bottom in range(1 << n):
        ups = [v for v in range(1 << n) if v | bottom == v]
        for gens in itertools.product(ups, repeat=m):
            out.append(CubeHom(m, n, bottom, gens))
    return out


def cube_hom_count(m: int, n: int) -> tuple[int, int]:
    """Hom cardinality two ways: the closed form (sum over bottoms b of
    |up-set of b|^m) and the table-level enumeration."""
    formula = 0
    for b in range(1 << n):
        ups = 1 << (n - bin(b).count("1"))
        formula += ups**m
    enumerated = len(enumerate_homs(cube(m), cube(n)))
    return formula, enumerated


# ---------------------------------------------------------------------------
# idempotent splitting and retracts
# ---------------------------------------------------------------------------


def split_idempotent(f: SLatMorphism) -> tuple[SLatMorphism, SLatMorphism]:
    """Split f = section o retraction through its fixed-point subalgebra."""
    assert f.dom.join == f.cod.join
    if f.then(f).map != f.map:
        raise NotIdempotent("f is not idempotent")
    A = f.dom
    fixed = tuple(x for x in range(A.size) if f.map[x] == x)
    pos = {v: i for i, v in enumerate(fixed)}
    table = tuple(tuple(pos[A.join[x][y]] for y in fixed) for x in fixed)
    B = validate_semilattice(table, tuple(A.label(v) for v in fixed))
    retraction = SLatMorphism(A, B, tuple(pos[f.map[x]] for x in range(A.size)))
    section = SLatMorphism(B, A, fixed)
    assert section.then(retraction).map == tuple(range(B.size))
    assert retraction.then(section).map == f.map
    return retraction, section


def retract_of_cube(
    A: FiniteSemilattice,
    max_dim: int = 6,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> tuple[SLatMorphism, SLatMorphism]:
    """Exhibit a distributive lattice as a retract of the cube on its
    underlying set: the retraction is the free extension of the identity
    assignment, the section is found by lifting the identity through it.
    """
    verdict = is_distributive_lattice(A)
    if not verdict:
        raise NotDistributive(f"retract-of-cube needs distributivity ({verdict.reason})")
    n = A.size
    if n > max_dim:
        raise SizeBudget(f"cube dimension {n} exceeds cap {max_dim}")
    C = cube(n)
    bot = A.bottom
    retr_map = []
    for v in range(1 << n):
        elems = [i for i in range(n) if (v >> i) & 1]
        retr_map.append(A.join_all(elems) if elems else bot)
    retraction = SLatMorphism(C, A, tuple(retr_map))
    assert retraction.is_surjective
    section = lift_through_surjection(A, retraction, SLatMorphism.identity(A), budget)
    assert section is not None, "distributive lattices lift against surjections"
    assert section.then(retraction).map == tuple(range(A.size))
    return section, retraction


def certify_idempotent_completion(
    dim_cap: int = 3,
    size_cap: int = 4,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> Certificate:
    """Idempotents on cubes split with distributive fixed-point objects;
    distributive classes are retracts of cubes; and the one-connection
    idempotent (x,y) -> (x, x or y) splits through the 3-chain."""
    cert = Certificate("idempotent-completion")
    for n in range(0, dim_cap + 1):
        C = cube(n)
        endos = enumerate_homs(C, C, budget)
        idems = [f for f in endos if f.then(f).map == f.map]
        bad = None
        for f in idems:
            r, s = split_idempotent(f)
            if not is_distributive_lattice(r.cod):
                bad = {"dim": n, "map": list(f.map)}
                break
        cert.add(
            Check(
                f"idempotents-split-distributively-dim-{n}",
                PASS if bad is None else FAIL,
                len(idems),
                bad,
            )
        )

    def connection_example():
        from .semilattice import are_isomorphic

        C2 = cube(2)
        f = SLatMorphism(
            C2, C2, tuple(cube_vertex((x, x | y)) for (x, y) in
                          (vertex_bits(v, 2) for v in range(4)))
        )
        r, s = split_idempotent(f)
        ok = r.cod.size == 3 and are_isomorphic(r.cod, chain(3))
        return ok, 1, None if ok else {"split-size": r.cod.size}

    cert.add(Check("one-connection-idempotent-splits-through-chain3", *_run(connection_example)))

    def retracts():
        count = 0
        for A in all_semilattices_upto(size_cap):
            if not is_distributive_lattice(A):
                continue
            count += 1
            s, r = retract_of_cube(A, max_dim=max(size_cap, 4), budget=budget)
            if s.then(r).map != tuple(range(A.size)):
                return False, count, {"size": A.size}
        return True, count, None

    cert.add(Check("distributive-classes-are-cube-retracts", *_run(retracts)))
    return cert


def _run(fn):
    ok, count, witness = fn()
    return (PASS if ok else FAIL, count, witness)


# ---------------------------------------------------------------------------
# simplices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplexObject:
    """The n-simplex as the (n+1)-chain semilattice."""

    n: int
    carrier: FiniteSemilattice


def simplex(n: int) -> SimplexObject:
    assert n >= 0
    return SimplexObject(n, chain(n + 1))


def face(i: int, n: int) -> SLatMorphism:
    """The injection [n-1] -> [n] skipping the element i."""
    assert n >= 1 and 0 <= i <= n
    return SLatMorphism(
        chain(n), chain(n + 1), tuple(j if j < i else j + 1 for j in range(n))
    )


def degeneracy(i: int, n: int) -> SLatMorphism:
    """The surjection [n+1] -> [n] identifying the elements i and i+1."""
    assert n >= 0 and 0 <= i <= n
    return SLatMorphism(
        chain(n + 2), chain(n + 1), tuple(j if j <= i else j - 1 for j in range(n + 2))
    )


# ---------------------------------------------------------------------------
# truncated triangulation
# ---------------------------------------------------------------------------


@dataclass
class TruncatedSimplicialSet:
    """Levelwise data with face/degeneracy actions up to a dimension cap.

    faces[m][i] maps level m to level m-1 (precomposition with the i-th
    face); degeneracies[m][i] maps level m to level m+1.
    """

    maxdim: int
    levels: list[list[SLatMorphism]]
    faces: list[list[list[int]]]
    degeneracies: list[list[list[int]]]

    def level_sizes(self) -> list[int]:
        return [len(l) for l in self.levels]

    def nondegenerate(self, m: int) -> list[int]:
        """Indices at level m not hit by any degeneracy action."""
        if m == 0:
            return list(range(len(self.levels[0])))
        hit = set()
        for i in range(m):
            for x in range(len(self.levels[m - 1])):
                hit.add(self.degeneracies[m - 1][i][x])
        return [x for x in range(len(self.levels[m])) if x not in hit]

    def to_json(self) -> dict:
        return {
            "levels": self.level_sizes(),
            "faces": self.faces,
            "degeneracies": self.degeneracies,
        }


def triangulate(
    A: FiniteSemilattice,
    maxdim: int,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> TruncatedSimplicialSet:
    """Level m holds the join-preserving maps from the (m+1)-chain into A
    (equivalently the monotone maps, chains being join-generated), with
    faces and degeneracies acting by precomposition."""
    levels = [enumerate_homs(chain(m + 1), A, budget) for m in range(maxdim + 1)]
    index = [{f.map: k for k, f in enumerate(lv)} for lv in levels]
    faces: list[list[list[int]]] = []
    degeneracies: list[list[list[int]]] = []
    for m in range(maxdim + 1):
        frow = []
        if m >= 1:
            for i in range(m + 1):
                d = face(i, m)
                frow.append([index[m - 1][d.then(f).map] for f in levels[m]])
        faces.append(frow)
        srow = []
        if m + 1 <= maxdim:
            for i in range(m + 1):
                s = degeneracy(i, m)
                srow.append([index[m + 1][s.then(f).map] for f in levels[m]])
        degeneracies.append(srow)
    return TruncatedSimplicialSet(maxdim, levels, faces, degeneracies)


def product_simplicial(
    parts: list[TruncatedSimplicialSet],
) -> TruncatedSimplicialSet:
    """Levelwise product with componentwise actions (levels become tuples,
    kept as index tuples; morphism data is not reconstructed)."""
    maxdim = min(p.maxdim for p in parts)
    levels = [
        list(itertools.product(*(range(len(p.levels[m])) for p in parts)))
        for m in range(maxdim + 1)
    ]
    index = [{t: k for k, t in enumerate(lv)} for lv in levels]
    faces = []
    degeneracies = []
    for m in range(maxdim + 1):
        frow = []
        if m >= 1:
            for i in range(m + 1):
                frow.append(
                    [
                        index[m - 1][
                            tuple(p.faces[m][i][t[j]] for j, p in enumerate(parts))
                        ]
                        for t in levels[m]
                    ]
                )
        faces.append(frow)
        srow = []
        if m + 1 <= maxdim:
            for i in range(m + 1):
                srow.append(
                    [
                        index[m + 1][
                            tuple(p.degeneracies[m][i][t[j]] for j, p in enumerate(parts))
                        ]
                        for t in levels[m]
                    ]
                )
        degeneracies.append(srow)
    out = TruncatedSimplicialSet(maxdim, [list(l) for l in levels], faces, degeneracies)
    return out


def simplicial_isomorphic(
    X: TruncatedSimplicialSet, Y: TruncatedSimplicialSet, bijections
) -> bool:
    """Check that given levelwise bijections commute with all actions."""
    maxdim = min(X.maxdim, Y.maxdim)
    for m in range(maxdim + 1):
        if len(X.levels[m]) != len(Y.levels[m]):
            return False
        b = bijections[m]
        if sorted(b) != list(range(len(Y.levels[m]))):
            return False
        if m >= 1:
            for i in range(m + 1):
                for x in range(len(X.levels[m])):
                    if bijections[m - 1][X.faces[m][i][x]] != Y.faces[m][i][b[x]]:
                        return False
        if m + 1 <= maxdim:
            for i in range(m + 1):
                for x in range(len(X.levels[m])):
                    if bijections[m + 1][X.degeneracies[m][i][x]] != Y.degeneracies[m][i][b[x]]:
                        return False
    return True


def triangulation_product_bijections(
    A_parts: list[FiniteSemilattice],
    tri_product: TruncatedSimplicialSet,
    tri_whole: TruncatedSimplicialSet,
    projections: list[SLatMorphism],
):
    """Bijections level m: maps into a product correspond to tuples of
    maps into the factors, by postcomposition with the projections."""
    bijections = []
    for m in range(tri_whole.maxdim + 1):
        # index maps into each factor at this level
        part_levels = [
            {f.map: k for k, f in enumerate(enumerate_homs(chain(m + 1), A))}
            for A in A_parts
        ]
        prod_index = {t: k for k, t in enumerate(tri_product.levels[m])}
        b = []
        for f in tri_whole.levels[m]:
            t = tuple(
                part_levels[j][f.then(p).map] for j, p in enumerate(projections)
            )
            b.append(prod_index[t])
        bijections.append(b)
    return bijections


# ---------------------------------------------------------------------------
# Dedekind cubes: all monotone maps
# ---------------------------------------------------------------------------


def monotone_cube_maps(
    m: int, n: int, budget: int = DEFAULT_CANDIDATE_BUDGET
) -> list[tuple[int, ...]]:
    """All monotone maps [1]^m -> [1]^n between cubes as posets, by
    backtracking over vertices in mask order with cover-based pruning."""
    size = 1 << m
    if (1 << n) ** min(size, 8) > budget and m > 3:
        raise SizeBudget(f"monotone map space for ({m},{n}) exceeds budget")
    out: list[tuple[int, ...]] = []
    vals: list[int] = []

    def leq(a: int, b: int) -> bool:
        return a | b == b

    def rec(v: int):
        if v == size:
            out.append(tuple(vals))
            return
        preds = [v & ~(1 << i) for i in range(m) if (v >> i) & 1]
        for w in range(1 << n):
            if all(leq(vals[p], w) for p in preds):
                vals.append(w)
                rec(v + 1)
                vals.pop()

    rec(0)
    return out


def dedekind_homs(m: int, n: int, budget: int = DEFAULT_CANDIDATE_BUDGET):
    """Monotone poset maps [1]^m -> [1]^n; for n = 1 the counts follow the
    Dedekind number sequence."""
    return monotone_cube_maps(m, n, budget)


def monotone_maps_agree_with_homs(A: FiniteSemilattice, k: int) -> bool:
    """Certified sub-fact: out of a chain, monotone equals join-preserving."""
    P = FinPoset.chain(k)
    Q = FinPoset.of_semilattice(A)
    from .semilattice import monotone_maps

    mono = set(monotone_maps(P, Q))
    homs = {f.map for f in enumerate_homs(chain(k), A)}
    return mono == homs
