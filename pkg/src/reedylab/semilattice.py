"""Finite join-semilattices and their morphisms.

Elements are dense integer indices 0..size-1; the join table is the whole
structure and labels are metadata only.  Meets are never stored: they are
derived as joins of common lower bounds, which is valid exactly when a
bottom element exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    CandidateSpaceExceeded,
    EmptyCarrier,
    SizeBudget,
    ViolatedLaw,
)

JoinTable = tuple[tuple[int, ...], ...]

DEFAULT_CANDIDATE_BUDGET = 10**7


@dataclass(frozen=True)
class FiniteSemilattice:
    """A finite set with an associative, commutative, idempotent join."""

    join: JoinTable
    labels: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.join)

    def join_of(self, x: int, y: int) -> int:
        return self.join[x][y]

    def join_all(self, xs) -> int:
        """Join of a nonempty iterable of elements."""
        it = iter(xs)
        acc = next(it)
        for x in it:
            acc = self.join[acc][x]
        return acc

    def leq(self, x: int, y: int) -> bool:
        return self.join[x][y] == y

    @cached_property
    def top(self) -> int:
        return self.join_all(range(self.size))

    @cached_property
    def bottom(self) -> int | None:
        """The minimum element, or None when there is none."""
        for x in range(self.size):
            if all(self.leq(x, y) for y in range(self.size)):
                return x
        return None

    def up_set(self, x: int) -> tuple[int, ...]:
        return tuple(y for y in range(self.size) if self.leq(x, y))

    def down_set(self, x: int) -> tuple[int, ...]:
        return tuple(y for y in range(self.size) if self.leq(y, x))

    def meet_of(self, x: int, y: int) -> int:
        """Meet as the join of all common lower bounds; needs a bottom."""
        assert self.bottom is not None, "meets are defined only with a bottom"
        lows = [z for z in range(self.size) if self.leq(z, x) and self.leq(z, y)]
        return self.join_all(lows)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram edges (x, y) with y covering x."""
        edges = []
        for x in range((self.size)):
            for y in range(self.size):
                if x == y or not self.leq(x, y):
                    continue
                if any(
                    z != x and z != y and self.leq(x, z) and self.leq(z, y)
                    for z in range(self.size)
                ):
                    continue
                edges.append((x, y))
        return tuple(edges)

    @cached_property
    def irreducibles(self) -> tuple[int, ...]:
        """Join-irreducible elements; every element is a join of these.

        x is irreducible when it is not the join of the elements strictly
        below it (minimal elements count as irreducible).  The set generates:
        x = join of the irreducibles below x, for every x.
        """
        out = []
        for x in range(self.size):
            below = [y for y in range(self.size) if y != x and self.leq(y, x)]
            if not below or self.join_all(below) != x:
                out.append(x)
        return tuple(out)

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def relabel(self, perm: tuple[int, ...]) -> "FiniteSemilattice":
        """Transport the structure along perm, where perm[new] = old."""
        inv = [0] * self.size
        for new, old in enumerate(perm):
            inv[old] = new
        table = tuple(
            tuple(inv[self.join[perm[i]][perm[j]]] for j in range(self.size))
            for i in range(self.size)
        )
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[perm[i]] for i in range(self.size))
        return FiniteSemilattice(table, labels)

    def to_json(self) -> dict:
        out = {"size": self.size, "join": [list(row) for row in self.join]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @staticmethod
    def from_json(data: dict) -> "FiniteSemilattice":
        labels = tuple(data["labels"]) if "labels" in data else None
        return validate_semilattice(data["join"], labels)


def validate_semilattice(table, labels=None) -> FiniteSemilattice:
    """Check the semilattice laws and return the validated value.

    Raises ViolatedLaw with the offending witness, or EmptyCarrier for an
    empty table.  A top element always exists afterwards (join of all).
    """
    rows = tuple(tuple(row) for row in table)
    n = len(rows)
    if n == 0:
        raise EmptyCarrier("semilattices must be inhabited")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ViolatedLaw("square", (i,))
        for j, v in enumerate(row):
            if not isinstance(v, int) or not (0 <= v < n):
                raise ViolatedLaw("range", (i, j))
    for x in range(n):
        if rows[x][x] != x:
            raise ViolatedLaw("idempotence", (x,))
        for y in range(n):
            if rows[x][y] != rows[y][x]:
                raise ViolatedLaw("commutativity", (x, y))
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
                    raise ViolatedLaw("associativity", (x, y, z))
    lab = tuple(labels) if labels is not None else None
    A = FiniteSemilattice(rows, lab)
    assert all(A.leq(x, A.top) for x in range(n))
    return A


@dataclass(frozen=True)
class SLatMorphism:
    """A join-preserving function between finite semilattices."""

    dom: FiniteSemilattice
    cod: FiniteSemilattice
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        assert len(self.map) == self.dom.size
        for x in range(self.dom.size):
            assert 0 <= self.map[x] < self.cod.size
            for y in range(x, self.dom.size):
                j = self.map[self.dom.join[x][y]]
                if j != self.cod.join[self.map[x]][self.map[y]]:
                    raise ViolatedLaw("join-preservation", (x, y))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def then(self, other: "SLatMorphism") -> "SLatMorphism":
        """other composed after self (self first)."""
        assert self.cod.join == other.dom.join
        return SLatMorphism(self.dom, other.cod, tuple(other.map[v] for v in self.map))

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.cod.size

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == self.dom.size

    @property
    def is_iso(self) -> bool:
        return self.is_surjective and self.is_injective

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.map)))

    def inverse(self) -> "SLatMorphism":
        assert self.is_iso
        inv = [0] * self.cod.size
        for x, v in enumerate(self.map):
            inv[v] = x
        return SLatMorphism(self.cod, self.dom, tuple(inv))

    @staticmethod
    def identity(A: FiniteSemilattice) -> "SLatMorphism":
        return SLatMorphism(A, A, tuple(range(A.size)))

    def to_json(self) -> dict:
        return {
            "dom": self.dom.to_json(),
            "cod": self.cod.to_json(),
            "map": list(self.map),
        }

    @staticmethod
    def from_json(data: dict) -> "SLatMorphism":
        return SLatMorphism(
            FiniteSemilattice.from_json(data["dom"]),
            FiniteSemilattice.from_json(data["cod"]),
            tuple(data["map"]),
        )


def compose(g: SLatMorphism, f: SLatMorphism) -> SLatMorphism:
    """g after f."""
    return f.then(g)


@dataclass(frozen=True)
class FinPoset:
    """A finite poset given by its order matrix."""

    leq: tuple[tuple[bool, ...], ...]

    @property
    def size(self) -> int:
        return len(self.leq)

    def __post_init__(self):
        n = self.size
        for x in range(n):
            assert len(self.leq[x]) == n
            assert self.leq[x][x], "reflexivity"
            for y in range(n):
                if x != y and self.leq[x][y]:
                    assert not self.leq[y][x], "antisymmetry"
                for z in range(n):
                    if self.leq[x][y] and self.leq[y][z]:
                        assert self.leq[x][z], "transitivity"

    @staticmethod
    def discrete(n: int) -> "FinPoset":
        return FinPoset(tuple(tuple(i == j for j in range(n)) for i in range(n)))

    @staticmethod
    def chain(n: int) -> "FinPoset":
        return FinPoset(tuple(tuple(i <= j for j in range(n)) for i in range(n)))

    @staticmethod
    def of_semilattice(A: FiniteSemilattice) -> "FinPoset":
        n = A.size
        return FinPoset(tuple(tuple(A.leq(i, j) for j in range(n)) for i in range(n)))

    def adjoin_bottom(self) -> "FinPoset":
        """The cone 1*P: fresh bottom (index 0) below everything."""
        n = self.size
        rows = [tuple([True] * (n + 1))]
        for i in range(n):
            rows.append(tuple([False] + [self.leq[i][j] for j in range(n)]))
        return FinPoset(tuple(rows))

    def down_closure(self, xs) -> frozenset[int]:
        out = set()
        for x in xs:
            out.update(y for y in range(self.size) if self.leq[y][x])
        return frozenset(out)


def monotone_maps(P: FinPoset, Q: FinPoset, budget: int = DEFAULT_CANDIDATE_BUDGET):
    """All monotone maps P -> Q, lexicographic, by backtracking."""
    n, m = P.size, Q.size
    if m**n > budget:
        raise CandidateSpaceExceeded(f"{m}^{n} monotone-map candidates")
    out: list[tuple[int, ...]] = []
    vals: list[int] = []

    def extend(k: int):
        if k == n:
            out.append(tuple(vals))
            return
        for v in range(m):
            ok = True
            for j in range(k):
                if P.leq[j][k] and not Q.leq[vals[j]][v]:
                    ok = False
                    break
                if P.leq[k][j] and not Q.leq[v][vals[j]]:
                    ok = False
                    break
            if ok:
                vals.append(v)
                extend(k + 1)
                vals.pop()

    extend(0)
    return out


# ---------------------------------------------------------------------------
# standard semilattices
# ---------------------------------------------------------------------------


def terminal() -> FiniteSemilattice:
    return validate_semilattice([[0]], ("*",))


def chain(n: int) -> FiniteSemilattice:
    """The n-element chain 0 < 1 < ... < n-1 with join = max."""
    assert n >= 1
    table = [[max(i, j) for j in range(n)] for i in range(n)]
    return validate_semilattice(table, tuple(str(i) for i in range(n)))


def interval() -> FiniteSemilattice:
    return chain(2)


def atoms_with_top(k: int) -> FiniteSemilattice:
    """k pairwise-incomparable atoms whose pairwise joins are a common top.

    k=2 is the free semilattice on two generators; k=3 is the four-element
    tripod whose bottom extension is the diamond.
    """
    assert k >= 2
    n = k + 1
    top = k
    table = [[top] * n for _ in range(n)]
    for i in range(n):
        table[i][i] = i
        table[i][top] = top
        table[top][i] = top
    labels = tuple(f"a{i}" for i in range(k)) + ("top",)
    return validate_semilattice(table, labels)


def diamond(k: int) -> FiniteSemilattice:
    """Bottom, k incomparable atoms, top.  k=3 is the diamond lattice."""
    B, _ = adjoin_bottom(atoms_with_top(k))
    return B


def pinched_tripod_cover() -> tuple[FiniteSemilattice, "SLatMorphism"]:
    """The smallest surjection onto the 3-atom tripod with no section.

    Five elements a, b <= t <= t', c <= t' with a v b = t and
    a v c = b v c = t'; collapsing t and t' covers the tripod, and the
    unique generator-wise preimage fails to preserve joins (t != t').
    Every proper cover of the tripod by at most four elements splits, so
    this is the minimal witness that the tripod is not projective.
    """
    order = {(0, 3), (1, 3), (2, 4), (0, 4), (1, 4), (3, 4)}

    def leq(x, y):
        return x == y or (x, y) in order

    table = [[0] * 5 for _ in range(5)]
    for x in range(5):
        for y in range(5):
            ups = [z for z in range(5) if leq(x, z) and leq(y, z)]
            least = [u for u in ups if all(leq(u, v) for v in ups)]
            table[x][y] = least[0]
    A = validate_semilattice(table, ("a", "b", "c", "t", "t2"))
    e = SLatMorphism(A, atoms_with_top(3), (0, 1, 2, 3, 3))
    assert e.is_surjective
    return A, e


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def product(
    A: FiniteSemilattice, B: FiniteSemilattice, max_size: int = 64
) -> tuple[FiniteSemilattice, SLatMorphism, SLatMorphism]:
    """Componentwise product with its two projections."""
    if A.size * B.size > max_size:
        raise SizeBudget(f"product size {A.size * B.size} exceeds {max_size}")
    n, m = A.size, B.size

    def idx(i, j):
        return i * m + j

    table = [[0] * (n * m) for _ in range(n * m)]
    for i1 in range(n):
        for j1 in range(m):
            for i2 in range(n):
                for j2 in range(m):
                    table[idx(i1, j1)][idx(i2, j2)] = idx(
                        A.join[i1][i2], B.join[j1][j2]
                    )
    labels = tuple(
        f"({A.label(i)},{B.label(j)})" for i in range(n) for j in range(m)
    )
    P = validate_semilattice(table, labels)
    p0 = SLatMorphism(P, A, tuple(i for i in range(n) for _ in range(m)))
    p1 = SLatMorphism(P, B, tuple(j for _ in range(n) for j in range(m)))
    return P, p0, p1


def adjoin_bottom(A: FiniteSemilattice) -> tuple[FiniteSemilattice, SLatMorphism]:
    """1*A: a fresh bottom (index 0) below a shifted copy of A."""
    n = A.size
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        table[0][j] = j
        table[j][0] = j
    for i in range(n):
        for j in range(n):
            table[i + 1][j + 1] = A.join[i][j] + 1
    labels = ("bot",) + tuple(A.label(i) for i in range(n))
    B = validate_semilattice(table, labels)
    incl = SLatMorphism(A, B, tuple(i + 1 for i in range(n)))
    return B, incl


def free_on_generators(
    k: int, max_size: int = 2**12
) -> tuple[FiniteSemilattice, tuple[int, ...]]:
    """Free semilattice on k generators: nonempty subsets under union.

    Returns the algebra and the unit (index of {i} for each generator i).
    """
    assert k >= 1
    if 2**k - 1 > max_size:
        raise SizeBudget(f"free semilattice has {2**k - 1} elements")
    subsets = sorted(
        (frozenset(s) for r in range(1, k + 1) for s in itertools.combinations(range(k), r)),
        key=lambda s: (len(s), tuple(sorted(s))),
    )
    index = {s: i for i, s in enumerate(subsets)}
    table = [
        [index[s | t] for t in subsets]
        for s in subsets
    ]
    labels = tuple("{" + ",".join(map(str, sorted(s))) + "}" for s in subsets)
    F = validate_semilattice(table, labels)
    unit = tuple(index[frozenset([i])] for i in range(k))
    return F, unit


def free_on_poset(
    P: FinPoset, max_size: int = 2**12
) -> tuple[FiniteSemilattice, tuple[int, ...]]:
    """Free semilattice on a poset: nonempty finitely-generated down-sets.

    The unit sends p to its principal down-set; joins are unions.  Monotone
    maps out of P extend uniquely along the unit (see tests for the brute
    force verification).
    """
    n = P.size
    assert n >= 1
    if 2**n - 1 > max_size:
        raise SizeBudget(f"{2**n - 1} candidate down-sets")
    downs = set()
    for r in range(1, n + 1):
        for s in itertools.combinations(range(n), r):
            downs.add(P.down_closure(s))
    elems = sorted(downs, key=lambda s: (len(s), tuple(sorted(s))))
    index = {s: i for i, s in enumerate(elems)}
    table = [[index[s | t] for t in elems] for s in elems]
    labels = tuple("{" + ",".join(map(str, sorted(s))) + "}" for s in elems)
    F = validate_semilattice(table, labels)
    unit = tuple(index[P.down_closure([p])] for p in range(n))
    return F, unit


# ---------------------------------------------------------------------------
# hom enumeration
# ---------------------------------------------------------------------------


def enumerate_homs(
    A: FiniteSemilattice,
    B: FiniteSemilattice,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> list[SLatMorphism]:
    """All join-preserving maps A -> B, lexicographic on map arrays.

    A morphism is determined by its values on the join-irreducibles of A,
    so candidates are assigned only there (for a cube this specializes to
    the free parametrization: a bottom image plus generator images above
    it).  Each extension is verified against the full join table, which
    makes the enumeration exact for arbitrary A.
    """
    key = (A, B, budget)
    cached = _HOM_CACHE.get(key)
    if cached is None:
        cached = _enumerate_homs_uncached(A, B, budget)
        _HOM_CACHE[key] = cached
    return list(cached)


_HOM_CACHE: dict = {}


def _enumerate_homs_uncached(
    A: FiniteSemilattice,
    B: FiniteSemilattice,
    budget: int,
) -> tuple[SLatMorphism, ...]:
    gens = sorted(A.irreducibles, key=lambda g: (len(A.down_set(g)), g))
    if B.size ** len(gens) > budget:
        raise CandidateSpaceExceeded(
            f"{B.size}^{len(gens)} generator assignments exceed budget {budget}"
        )
    gens_below = [
        [g for g in gens if A.leq(g, x)] for x in range(A.size)
    ]
    out: list[SLatMorphism] = []
    assign: dict[int, int] = {}

    def extend_and_check() -> SLatMorphism | None:
        m = []
        for x in range(A.size):
            m.append(B.join_all(assign[g] for g in gens_below[x]))
        for x in range(A.size):
            for y in range(x, A.size):
                if m[A.join[x][y]] != B.join[m[x]][m[y]]:
                    return None
        return SLatMorphism(A, B, tuple(m))

    def rec(k: int):
        if k == len(gens):
            f = extend_and_check()
            if f is not None:
                out.append(f)
            return
        g = gens[k]
        for v in range(B.size):
            ok = True
            for g2 in gens[:k]:
                if A.leq(g2, g) and not B.leq(assign[g2], v):
                    ok = False
                    break
            if ok:
                assign[g] = v
                rec(k + 1)
                del assign[g]

    rec(0)
    out.sort(key=lambda f: f.map)
    return tuple(out)


def all_functions_homs(
    A: FiniteSemilattice,
    B: FiniteSemilattice,
    budget: int = 10**6,
) -> list[SLatMorphism]:
    """Literal brute force: filter every function A -> B."""
    if B.size**A.size > budget:
        raise CandidateSpaceExceeded(f"{B.size}^{A.size} functions")
    out = []
    for m in itertools.product(range(B.size), repeat=A.size):
        ok = True
        for x in range(A.size):
            for y in range(x, A.size):
                if m[A.join[x][y]] != B.join[m[x]][m[y]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(SLatMorphism(A, B, m))
    return out


def backtrack_homs(
    A: FiniteSemilattice,
    B: FiniteSemilattice,
) -> list[tuple[int, ...]]:
    """Element-wise backtracking enumeration of join-preserving maps.

    Independent of the generator parametrization: assigns f(x) for every
    element in index order, pruning as soon as an already-decidable
    instance of f(x v y) = f(x) v f(y) fails.  Returns raw map tuples.
    """
    n = A.size
    out: list[tuple[int, ...]] = []
    vals: list[int] = []

    def rec(k: int):
        if k == n:
            out.append(tuple(vals))
            return
        for v in range(B.size):
            vals.append(v)
            # every pair whose join became decidable with this assignment
            ok = True
            for x in range(k + 1):
                for y in range(x, k + 1):
                    j = A.join[x][y]
                    if j <= k and (j == k or x == k or y == k):
                        if vals[j] != B.join[vals[x]][vals[y]]:
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                rec(k + 1)
            vals.pop()

    rec(0)
    return out


def enumerate_surjections(A, B, budget=DEFAULT_CANDIDATE_BUDGET):
    return [f for f in enumerate_homs(A, B, budget) if f.is_surjective]


def enumerate_injections(A, B, budget=DEFAULT_CANDIDATE_BUDGET):
    return [f for f in enumerate_homs(A, B, budget) if f.is_injective]


def lift_through_surjection(
    A: FiniteSemilattice,
    e: SLatMorphism,
    f: SLatMorphism,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> SLatMorphism | None:
    """First h: A -> dom(e) with e o h = f, or None if no lift exists.

    Search assigns candidate values only on the join-irreducibles of A and
    only inside the e-fibre of the required value, then verifies that the
    join extension is a morphism; the composite equation then holds
    automatically.
    """
    assert e.cod.join == f.cod.join
    gens = sorted(A.irreducibles, key=lambda g: (len(A.down_set(g)), g))
    fibres = {
        g: [v for v in range(e.dom.size) if e.map[v] == f.map[g]] for g in gens
    }
    space = 1
    for g in gens:
        space *= max(1, len(fibres[g]))
        if space > budget:
            raise CandidateSpaceExceeded("lift search exceeds budget")
    gens_below = [[g for g in gens if A.leq(g, x)] for x in range(A.size)]
    assign: dict[int, int] = {}
    R = e.dom

    def rec(k: int) -> SLatMorphism | None:
        if k == len(gens):
            m = tuple(
                R.join_all(assign[g] for g in gens_below[x]) for x in range(A.size)
            )
            for x in range(A.size):
                for y in range(x, A.size):
                    if m[A.join[x][y]] != R.join[m[x]][m[y]]:
                        return None
            h = SLatMorphism(A, R, m)
            if h.then(e).map == f.map:
                return h
            return None
        g = gens[k]
        for v in fibres[g]:
            if any(
                A.leq(g2, g) and not R.leq(assign[g2], v) for g2 in gens[:k]
            ):
                continue
            assign[g] = v
            h = rec(k + 1)
            del assign[g]
            if h is not None:
                return h
        return None

    return rec(0)


# ---------------------------------------------------------------------------
# factorization, quotients, predicates
# ---------------------------------------------------------------------------


def image_factorize(f: SLatMorphism) -> tuple[SLatMorphism, SLatMorphism]:
    """Factor f as a surjection onto its image followed by an injection."""
    img = f.image()
    pos = {v: i for i, v in enumerate(img)}
    table = tuple(
        tuple(pos[f.cod.join[x][y]] for y in img) for x in img
    )
    labels = tuple(f.cod.label(v) for v in img)
    I = validate_semilattice(table, labels)
    surj = SLatMorphism(f.dom, I, tuple(pos[v] for v in f.map))
    mono = SLatMorphism(I, f.cod, img)
    return surj, mono


@dataclass(frozen=True)
class DistributivityVerdict:
    ok: bool
    reason: str  # 'distributive' | 'no-bottom' | 'violation'
    witness: tuple[int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_distributive_lattice(A: FiniteSemilattice) -> DistributivityVerdict:
    """Distributivity of the derived lattice; False with a reason otherwise.

    A finite join-semilattice is a lattice iff it has a bottom, in which
    case meets are joins of common lower bounds.
    """
    if A.bottom is None:
        return DistributivityVerdict(False, "no-bottom")
    n = A.size
    meet = [[A.meet_of(x, y) for y in range(n)] for x in range(n)]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = meet[x][A.join[y][z]]
                rhs = A.join[meet[x][y]][meet[x][z]]
                if lhs != rhs:
                    return DistributivityVerdict(False, "violation", (x, y, z))
    return DistributivityVerdict(True, "distributive")


def quotient_by_pairs(A: FiniteSemilattice, pairs) -> SLatMorphism:
    """Projection onto A modulo the least join-compatible equivalence
    containing the given pairs (union-find plus join saturation).
    """
    n = A.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    for x, y in pairs:
        union(x, y)
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in range(n):
                if find(x) == find(y):
                    for z in range(n):
                        if union(A.join[x][z], A.join[y][z]):
                            changed = True
    roots = sorted({find(x) for x in range(n)})
    pos = {r: i for i, r in enumerate(roots)}
    cls = [pos[find(x)] for x in range(n)]
    k = len(roots)
    table = [[None] * k for _ in range(k)]
    members: list[list[int]] = [[] for _ in range(k)]
    for x in range(n):
        members[cls[x]].append(x)
    for i in range(k):
        for j in range(k):
            results = {cls[A.join[x][y]] for x in members[i] for y in members[j]}
            assert len(results) == 1, "saturation left join ill-defined"
            table[i][j] = results.pop()
    labels = tuple(
        "{" + ",".join(A.label(x) for x in members[i]) + "}" for i in range(k)
    )
    Q = validate_semilattice(table, labels)
    return SLatMorphism(A, Q, tuple(cls))


# ---------------------------------------------------------------------------
# canonical forms and enumeration up to isomorphism
# ---------------------------------------------------------------------------


def _color_classes(A: FiniteSemilattice) -> list[list[int]]:
    """Partition elements by an iterated order-invariant refinement."""
    n = A.size
    up_covers = [[] for _ in range(n)]
    down_covers = [[] for _ in range(n)]
    for x, y in A.covers:
        up_covers[x].append(y)
        down_covers[y].append(x)
    color = [
        (
            len(A.up_set(x)),
            len(A.down_set(x)),
            len(up_covers[x]),
            len(down_covers[x]),
            x == A.top,
            x == A.bottom,
        )
        for x in range(n)
    ]
    while True:
        refined = [
            (
                color[x],
                tuple(sorted(color[y] for y in up_covers[x])),
                tuple(sorted(color[y] for y in down_covers[x])),
            )
            for x in range(n)
        ]
        if len(set(refined)) == len(set(color)):
            color = refined
            break
        color = refined
    classes: dict = {}
    for x in range(n):
        classes.setdefault(color[x], []).append(x)
    return [classes[c] for c in sorted(classes)]


def _class_respecting_perms(classes: list[list[int]]):
    """All permutations (new -> old) laying out each class contiguously."""
    pools = [list(itertools.permutations(c)) for c in classes]
    for combo in itertools.product(*pools):
        yield tuple(x for block in combo for x in block)


def canonical_form(A: FiniteSemilattice) -> JoinTable:
    """Join table invariant under any relabeling of elements."""
    return _canonical(A)[0]


def canonical_perm(A: FiniteSemilattice) -> tuple[int, ...]:
    """A permutation (new -> old) realizing the canonical form."""
    return _canonical(A)[1]


def _canonical(A: FiniteSemilattice) -> tuple[JoinTable, tuple[int, ...]]:
    classes = _color_classes(A)
    best = None
    best_perm = None
    n = A.size
    for perm in _class_respecting_perms(classes):
        inv = [0] * n
        for new, old in enumerate(perm):
            inv[old] = new
        table = tuple(
            tuple(inv[A.join[perm[i]][perm[j]]] for j in range(n)) for i in range(n)
        )
        if best is None or table < best:
            best = table
            best_perm = perm
    return best, best_perm


def canonicalize(A: FiniteSemilattice) -> FiniteSemilattice:
    """Canonical representative of A's isomorphism class."""
    perm = canonical_perm(A)
    return A.relabel(perm)


def are_isomorphic(A: FiniteSemilattice, B: FiniteSemilattice) -> bool:
    if A.size != B.size:
        return False
    return canonical_form(A) == canonical_form(B)


def find_isomorphism(
    A: FiniteSemilattice, B: FiniteSemilattice
) -> SLatMorphism | None:
    """Search for a join-table-preserving bijection A -> B.

    Independent of the canonical form machinery; used to cross-check it and
    to produce explicit isos.  Color classes only prune the search.
    """
    if A.size != B.size:
        return None
    ca = _color_classes(A)
    cb = _color_classes(B)
    if sorted(len(c) for c in ca) != sorted(len(c) for c in cb):
        return None
    n = A.size
    # match classes in canonical order; sizes must agree classwise
    if len(ca) != len(cb) or any(len(x) != len(y) for x, y in zip(ca, cb)):
        return None
    order = [x for c in ca for x in c]

    assign: dict[int, int] = {}

    def rec(k: int) -> tuple[int, ...] | None:
        if k == n:
            m = tuple(assign[x] for x in range(n))
            for a in range(n):
                for b in range(a, n):
                    if m[A.join[a][b]] != B.join[m[a]][m[b]]:
                        return None
            return m
        x = order[k]
        # candidates: same class position
        ci = next(i for i, c in enumerate(ca) if x in c)
        for y in cb[ci]:
            if y in assign.values():
                continue
            assign[x] = y
            ok = True
            for x2 in list(assign):
                jx = A.join[x][x2]
                if jx in assign:
                    if assign[jx] != B.join[assign[x]][assign[x2]]:
                        ok = False
                        break
            if ok:
                res = rec(k + 1)
                if res is not None:
                    return res
            del assign[x]
        return None

    m = rec(0)
    if m is None:
        return None
    f = SLatMorphism(A, B, m)
    assert f.is_iso
    return f


def enumerate_semilattices(n: int, cap: int = 6) -> list[FiniteSemilattice]:
    """All inhabited join-semilattices of size n, one per iso class.

    Enumerates partial orders compatible with the integer order (every
    class has a linear extension, so all classes appear), keeps those in
    which every pair has a least upper bound, and dedupes by canonical
    form.  Sorted by canonical join table.
    """
    if n > cap:
        raise SizeBudget(f"semilattice enumeration capped at size {cap}")
    assert n >= 1
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen: dict[JoinTable, FiniteSemilattice] = {}
    for bits in itertools.product((False, True), repeat=len(pairs)):
        leq = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(pairs, bits):
            if b:
                leq[i][j] = True
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if leq[i][j]:
                    for k in range(j + 1, n):
                        if leq[j][k] and not leq[i][k]:
                            ok = False
                            break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            continue
        table = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                ups = [k for k in range(n) if leq[i][k] and leq[j][k]]
                if not ups:
                    ok = False
                    break
                least = [u for u in ups if all(leq[u][v] for v in ups)]
                if len(least) != 1:
                    ok = False
                    break
                table[i][j] = least[0]
            if not ok:
                break
        if not ok:
            continue
        A = validate_semilattice(table)
        cf = canonical_form(A)
        if cf not in seen:
            seen[cf] = FiniteSemilattice(cf)
    return [seen[cf] for cf in sorted(seen)]


def all_semilattices_upto(n: int, cap: int = 6) -> list[FiniteSemilattice]:
    """Representatives of every iso class of size 1..n, smallest first."""
    out = []
    for k in range(1, n + 1):
        out.extend(enumerate_semilattices(k, cap))
    return out
