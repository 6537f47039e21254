"""The (surjective, mono) Reedy structure on finite inhabited semilattices.

Builds explicit truncated categories (one object per isomorphism class up
to a size cap, full hom lists, composition tables) and certifies the Reedy
axioms, the cancellation laws, and pre-elegance on them exhaustively.
Lowering pushouts are computed set-first; the induced join's
well-definedness is asserted, which is itself one of the certified facts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .certificates import FAIL, PASS, Certificate, Check
from .errors import NotSurjective, SizeBudget
from .semilattice import (
    DEFAULT_CANDIDATE_BUDGET,
    FiniteSemilattice,
    SLatMorphism,
    all_semilattices_upto,
    canonical_form,
    enumerate_homs,
    find_isomorphism,
    image_factorize,
    quotient_by_pairs,
    validate_semilattice,
)

# A morphism reference inside a FinCategory: (dom index, cod index, hom index)
MorphRef = tuple[int, int, int]


@dataclass
class FinCategory:
    """An explicit finite category of semilattices with composition tables."""

    objects: tuple[FiniteSemilattice, ...]
    homs: dict[tuple[int, int], list[SLatMorphism]]
    composition: dict[tuple[MorphRef, MorphRef], MorphRef]
    identities: tuple[MorphRef, ...]

    def hom(self, a: int, b: int) -> list[SLatMorphism]:
        return self.homs[(a, b)]

    def mor(self, ref: MorphRef) -> SLatMorphism:
        a, b, k = ref
        return self.homs[(a, b)][k]

    def compose(self, f: MorphRef, g: MorphRef) -> MorphRef:
        """g after f; f: a -> b, g: b -> c."""
        return self.composition[(f, g)]

    def morphisms(self):
        for (a, b), fs in sorted(self.homs.items()):
            for k in range(len(fs)):
                yield (a, b, k)

    def find(self, a: int, b: int, f: SLatMorphism) -> MorphRef:
        k = self._index[(a, b)][f.map]
        return (a, b, k)

    @cached_property
    def _index(self) -> dict:
        return {
            key: {f.map: k for k, f in enumerate(fs)}
            for key, fs in self.homs.items()
        }

    def is_identity(self, ref: MorphRef) -> bool:
        return ref == self.identities[ref[0]]

    def isos(self, a: int, b: int) -> list[MorphRef]:
        return [
            (a, b, k) for k, f in enumerate(self.homs[(a, b)]) if f.is_iso
        ]

    def object_of(self, A: FiniteSemilattice) -> int | None:
        cf = canonical_form(A)
        for i, O in enumerate(self.objects):
            if O.size == A.size and canonical_form(O) == cf:
                return i
        return None

    def validate(self) -> None:
        """Exhaustive associativity and unit checks."""
        for (a, b), fs in self.homs.items():
            assert len({f.map for f in fs}) == len(fs), "duplicate morphisms"
            for k, f in enumerate(fs):
                ref = (a, b, k)
                assert self.compose(self.identities[a], ref) == ref
                assert self.compose(ref, self.identities[b]) == ref
        for f in self.morphisms():
            for g in self.morphisms():
                if f[1] != g[0]:
                    continue
                gf = self.compose(f, g)
                for h in self.morphisms():
                    if g[1] != h[0]:
                        continue
                    hg = self.compose(g, h)
                    assert self.compose(gf, h) == self.compose(f, hg)

    @staticmethod
    def from_objects(
        objects, budget: int = DEFAULT_CANDIDATE_BUDGET
    ) -> "FinCategory":
        objects = tuple(objects)
        homs: dict[tuple[int, int], list[SLatMorphism]] = {}
        for a, A in enumerate(objects):
            for b, B in enumerate(objects):
                homs[(a, b)] = enumerate_homs(A, B, budget)
        index = {
            key: {f.map: k for k, f in enumerate(fs)} for key, fs in homs.items()
        }
        composition: dict[tuple[MorphRef, MorphRef], MorphRef] = {}
        for (a, b), fs in homs.items():
            for c in range(len(objects)):
                gs = homs[(b, c)]
                for i, f in enumerate(fs):
                    for j, g in enumerate(gs):
                        comp = f.then(g)
                        composition[((a, b, i), (b, c, j))] = (
                            a,
                            c,
                            index[(a, c)][comp.map],
                        )
        identities = tuple(
            (a, a, index[(a, a)][tuple(range(A.size))])
            for a, A in enumerate(objects)
        )
        cat = FinCategory(objects, homs, composition, identities)
        return cat

    def to_json(self) -> dict:
        return {
            "objects": [O.to_json() for O in self.objects],
            "homs": {
                f"{a}:{b}": [list(f.map) for f in fs]
                for (a, b), fs in sorted(self.homs.items())
            },
            "composition": {
                f"{f[0]}:{f[1]}:{f[2]}|{g[0]}:{g[1]}:{g[2]}": list(h)
                for (f, g), h in sorted(self.composition.items())
            },
            "identities": [list(i) for i in self.identities],
        }


@dataclass
class ReedyData:
    """Degrees plus the lowering/raising classification of every morphism."""

    degree: tuple[int, ...]
    lowering: dict[MorphRef, bool]
    raising: dict[MorphRef, bool]

    @staticmethod
    def of_category(cat: FinCategory) -> "ReedyData":
        degree = tuple(O.size for O in cat.objects)
        lowering = {}
        raising = {}
        for ref in cat.morphisms():
            f = cat.mor(ref)
            lowering[ref] = f.is_surjective
            raising[ref] = f.is_injective
        return ReedyData(degree, lowering, raising)


@dataclass
class LoweringPushoutSquare:
    """A commuting square of surjections universal among its cocones."""

    e0: SLatMorphism
    e1: SLatMorphism
    f0: SLatMorphism
    f1: SLatMorphism
    refs: tuple[MorphRef, MorphRef, MorphRef, MorphRef] | None = None

    def __post_init__(self):
        assert self.e0.dom.join == self.e1.dom.join
        assert self.f0.dom.join == self.e0.cod.join
        assert self.f1.dom.join == self.e1.cod.join
        assert self.f0.cod.join == self.f1.cod.join
        assert self.e0.then(self.f0).map == self.e1.then(self.f1).map

    @property
    def apex(self) -> FiniteSemilattice:
        return self.e0.dom

    @property
    def carrier(self) -> FiniteSemilattice:
        return self.f0.cod


def degree(A: FiniteSemilattice) -> int:
    """Reedy degree: cardinality."""
    return A.size


def reedy_factor(f: SLatMorphism) -> tuple[SLatMorphism, SLatMorphism]:
    """Factor into a surjective lowering part and an injective raising part."""
    return image_factorize(f)


def lowering_pushout(e0: SLatMorphism, e1: SLatMorphism) -> LoweringPushoutSquare:
    """Pushout of a span of surjections, computed on underlying sets.

    The carrier is the set pushout of the legs; the join is induced from
    same-leg representatives and its well-definedness is asserted (this is
    exactly the fact that forgetting to sets preserves surjective
    pushouts).
    """
    if not e0.is_surjective or not e1.is_surjective:
        raise NotSurjective("lowering pushout needs surjective legs")
    assert e0.dom.join == e1.dom.join
    A, B0, B1 = e0.dom, e0.cod, e1.cod
    n0, n1 = B0.size, B1.size
    parent = list(range(n0 + n1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for a in range(A.size):
        union(e0.map[a], n0 + e1.map[a])
    roots = sorted({find(x) for x in range(n0 + n1)})
    pos = {r: i for i, r in enumerate(roots)}
    cls = [pos[find(x)] for x in range(n0 + n1)]
    k = len(roots)
    members0: list[list[int]] = [[] for _ in range(k)]
    members1: list[list[int]] = [[] for _ in range(k)]
    for x in range(n0):
        members0[cls[x]].append(x)
    for y in range(n1):
        members1[cls[n0 + y]].append(y)
    assert all(members0[i] and members1[i] for i in range(k)), (
        "surjective legs reach every class"
    )
    table = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            results = {
                cls[B0.join[x][y]] for x in members0[i] for y in members0[j]
            }
            results |= {
                cls[n0 + B1.join[u][v]]
                for u in members1[i]
                for v in members1[j]
            }
            assert len(results) == 1, "set pushout does not carry the join"
            table[i][j] = results.pop()
    labels = tuple(
        "{"
        + ",".join(
            [B0.label(x) for x in members0[i]] + [B1.label(y) + "'" for y in members1[i]]
        )
        + "}"
        for i in range(k)
    )
    P = validate_semilattice(table, labels)
    f0 = SLatMorphism(B0, P, tuple(cls[x] for x in range(n0)))
    f1 = SLatMorphism(B1, P, tuple(cls[n0 + y] for y in range(n1)))
    return LoweringPushoutSquare(e0, e1, f0, f1)


def pushout_via_congruence(e0: SLatMorphism, e1: SLatMorphism) -> SLatMorphism:
    """Independent pushout route: quotient of the apex by the join of the
    two kernel congruences.  Returns the projection from the apex."""
    if not e0.is_surjective or not e1.is_surjective:
        raise NotSurjective("lowering pushout needs surjective legs")
    A = e0.dom
    pairs = []
    for f in (e0, e1):
        for x in range(A.size):
            for y in range(x + 1, A.size):
                if f.map[x] == f.map[y]:
                    pairs.append((x, y))
    return quotient_by_pairs(A, pairs)


def verify_pushout_universal(
    square: LoweringPushoutSquare,
    test_objects,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> tuple[bool, int, object]:
    """Exhaustively test the universal property against all cocones into
    the given objects: each commuting cocone factors uniquely."""
    count = 0
    for C in test_objects:
        h0s = enumerate_homs(square.e0.cod, C, budget)
        h1s = enumerate_homs(square.e1.cod, C, budget)
        hps = enumerate_homs(square.carrier, C, budget)
        for g0 in h0s:
            left = square.e0.then(g0).map
            for g1 in h1s:
                if square.e1.then(g1).map != left:
                    continue
                count += 1
                mediating = [
                    h
                    for h in hps
                    if square.f0.then(h).map == g0.map
                    and square.f1.then(h).map == g1.map
                ]
                if len(mediating) != 1:
                    return False, count, {
                        "cocone": [list(g0.map), list(g1.map)],
                        "mediating": len(mediating),
                    }
    return True, count, None


def reedy_category_on(
    objects, budget: int = DEFAULT_CANDIDATE_BUDGET
) -> tuple[FinCategory, ReedyData, list[LoweringPushoutSquare]]:
    """Full subcategory on the given semilattices, with Reedy data and
    every lowering pushout square whose carrier lands back among the
    objects (one per unordered span of surjections)."""
    cat = FinCategory.from_objects(objects, budget)
    data = ReedyData.of_category(cat)
    squares: list[LoweringPushoutSquare] = []
    for a in range(len(cat.objects)):
        surjs = [
            ref for ref in cat.morphisms() if ref[0] == a and data.lowering[ref]
        ]
        for i, r0 in enumerate(surjs):
            for r1 in surjs[i:]:
                square = lowering_pushout(cat.mor(r0), cat.mor(r1))
                p = cat.object_of(square.carrier)
                assert p is not None, "pushout escaped the object set"
                iso = find_isomorphism(square.carrier, cat.objects[p])
                f0 = square.f0.then(iso)
                f1 = square.f1.then(iso)
                refs = (r0, r1, cat.find(r0[1], p, f0), cat.find(r1[1], p, f1))
                squares.append(
                    LoweringPushoutSquare(cat.mor(r0), cat.mor(r1), f0, f1, refs)
                )
    return cat, data, squares


def truncated_semilattice_category(
    N: int, budget: int = DEFAULT_CANDIDATE_BUDGET
) -> tuple[FinCategory, ReedyData, list[LoweringPushoutSquare]]:
    """Skeleton of the inhabited semilattices of size <= N.

    One object per isomorphism class, full homs, composition table, the
    size/surjective/injective Reedy data, and every lowering pushout
    square among the objects (the pushout carrier never outgrows the
    span, so closure is automatic).
    """
    if N > 5:
        raise SizeBudget("truncated category capped at N=5")
    return reedy_category_on(all_semilattices_upto(N), budget)


def quotient_closure(
    seeds, cap: int = 6, budget: int = DEFAULT_CANDIDATE_BUDGET
) -> list[FiniteSemilattice]:
    """Close a set of semilattices under quotient objects (hence under
    lowering pushouts, which are joint quotients of the span apex).

    Returns one canonical representative per isomorphism class, sorted
    by (size, canonical form)."""
    from .semilattice import canonicalize, enumerate_semilattices, enumerate_surjections

    out: dict = {}
    for A in seeds:
        C = canonicalize(A)
        out[(C.size, C.join)] = C
    candidates_by_size: dict[int, list[FiniteSemilattice]] = {}
    for A in list(out.values()):
        for k in range(1, A.size + 1):
            if k not in candidates_by_size:
                candidates_by_size[k] = enumerate_semilattices(k, cap)
            for B in candidates_by_size[k]:
                key = (B.size, B.join)
                if key in out:
                    continue
                if enumerate_surjections(A, B, budget):
                    out[key] = B
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------


def _factorizations(cat: FinCategory, data: ReedyData, ref: MorphRef):
    """All (lowering, raising) factorizations of ref through category objects."""
    a, b, _ = ref
    out = []
    for c in range(len(cat.objects)):
        for i in range(len(cat.homs[(a, c)])):
            e = (a, c, i)
            if not data.lowering[e]:
                continue
            for j in range(len(cat.homs[(c, b)])):
                m = (c, b, j)
                if not data.raising[m]:
                    continue
                if cat.compose(e, m) == ref:
                    out.append((e, m))
    return out


def certify_reedy_axioms(cat: FinCategory, data: ReedyData) -> Certificate:
    """Orthogonal factorization system plus degree axioms, exhaustively."""
    cert = Certificate("reedy-axioms")
    morphs = list(cat.morphisms())

    def closed_classes():
        n = 0
        for f in morphs:
            for g in morphs:
                if f[1] != g[0]:
                    continue
                n += 1
                gf = cat.compose(f, g)
                if data.lowering[f] and data.lowering[g] and not data.lowering[gf]:
                    return False, n, {"f": f, "g": g}
                if data.raising[f] and data.raising[g] and not data.raising[gf]:
                    return False, n, {"f": f, "g": g}
        return True, n, None

    cert.add(Check("classes-closed-under-composition", *_status(closed_classes())))

    def isos_in_both():
        n = 0
        for f in morphs:
            if cat.mor(f).is_iso:
                n += 1
                if not (data.lowering[f] and data.raising[f]):
                    return False, n, {"f": f}
            elif data.lowering[f] and data.raising[f]:
                return False, n, {"f": f}
        return True, n, None

    cert.add(Check("lowering-and-raising-iff-iso", *_status(isos_in_both())))

    def degrees():
        n = 0
        for f in morphs:
            a, b, _ = f
            m = cat.mor(f)
            n += 1
            if data.lowering[f]:
                if data.degree[a] < data.degree[b]:
                    return False, n, {"f": f}
                if data.degree[a] == data.degree[b] and not m.is_iso:
                    return False, n, {"f": f}
            if data.raising[f]:
                if data.degree[a] > data.degree[b]:
                    return False, n, {"f": f}
                if data.degree[a] == data.degree[b] and not m.is_iso:
                    return False, n, {"f": f}
        return True, n, None

    cert.add(Check("degree-monotonicity", *_status(degrees())))

    def factor_exists_unique():
        n = 0
        for f in morphs:
            n += 1
            facts = _factorizations(cat, data, f)
            if not facts:
                return False, n, {"f": f, "reason": "no factorization"}
            # uniqueness up to unique isomorphism against the canonical one
            e0, m0 = facts[0]
            for e, m in facts:
                linking = [
                    th
                    for th in cat.isos(e0[1], e[1])
                    if cat.compose(e0, th) == e and cat.compose(th, m) == m0
                ]
                if len(linking) != 1:
                    return False, n, {
                        "f": f,
                        "fact": [e, m],
                        "linking-isos": len(linking),
                    }
        return True, n, None

    cert.add(Check("factorization-unique-up-to-unique-iso", *_status(factor_exists_unique())))

    def orthogonal_lifting():
        n = 0
        for e in morphs:
            if not data.lowering[e]:
                continue
            for m in morphs:
                if not data.raising[m]:
                    continue
                # squares u: dom(e) -> dom(m), v: cod(e) -> cod(m), m u = v e
                for iu in range(len(cat.homs[(e[0], m[0])])):
                    u = (e[0], m[0], iu)
                    um = cat.compose(u, m)
                    for iv in range(len(cat.homs[(e[1], m[1])])):
                        v = (e[1], m[1], iv)
                        if cat.compose(e, v) != um:
                            continue
                        n += 1
                        diagonals = [
                            (e[1], m[0], iw)
                            for iw in range(len(cat.homs[(e[1], m[0])]))
                            if cat.compose(e, (e[1], m[0], iw)) == u
                            and cat.compose((e[1], m[0], iw), m) == v
                        ]
                        if len(diagonals) != 1:
                            return False, n, {
                                "e": e,
                                "m": m,
                                "u": u,
                                "v": v,
                                "diagonals": len(diagonals),
                            }
        return True, n, None

    cert.add(Check("orthogonal-lifting-unique", *_status(orthogonal_lifting())))

    def free_action():
        n = 0
        for e in morphs:
            if not data.lowering[e]:
                continue
            b = e[1]
            for th in cat.isos(b, b):
                if cat.is_identity(th):
                    continue
                n += 1
                if cat.compose(e, th) == e:
                    return False, n, {"e": e, "theta": th}
        return True, n, None

    cert.add(Check("isos-act-freely-on-lowering", *_status(free_action())))
    return cert


def certify_cancellation(cat: FinCategory, data: ReedyData) -> Certificate:
    """gf lowering forces g lowering; gf raising forces f raising; split
    epis are lowering and split monos raising.  All composable pairs."""
    cert = Certificate("cancellation")
    morphs = list(cat.morphisms())

    def cancel():
        n = 0
        for f in morphs:
            for g in morphs:
                if f[1] != g[0]:
                    continue
                n += 1
                gf = cat.compose(f, g)
                if data.lowering[gf] and not data.lowering[g]:
                    return False, n, {"f": f, "g": g}
                if data.raising[gf] and not data.raising[f]:
                    return False, n, {"f": f, "g": g}
        return True, n, None

    cert.add(Check("composite-class-cancellation", *_status(cancel())))

    def split_classes():
        n = 0
        for f in morphs:
            a, b, _ = f
            sections = [
                s
                for s in (
                    (b, a, i) for i in range(len(cat.homs[(b, a)]))
                )
                if cat.compose(s, f) == cat.identities[b]
            ]
            if sections:
                n += 1
                if not data.lowering[f]:
                    return False, n, {"split-epi": f}
            retractions = [
                r
                for r in (
                    (b, a, i) for i in range(len(cat.homs[(b, a)]))
                )
                if cat.compose(f, r) == cat.identities[a]
            ]
            if retractions:
                n += 1
                if not data.raising[f]:
                    return False, n, {"split-mono": f}
        return True, n, None

    cert.add(Check("split-epi-lowering-split-mono-raising", *_status(split_classes())))
    return cert


def certify_pre_elegance(
    cat: FinCategory,
    data: ReedyData,
    squares: list[LoweringPushoutSquare],
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> Certificate:
    """Closure under lowering pushouts, lowering maps epi, the set-level
    and congruence-quotient pushouts agreeing, and bounded universality."""
    cert = Certificate("pre-elegance")

    def closure():
        n = 0
        for sq in squares:
            n += 1
            if cat.object_of(sq.carrier) is None:
                return False, n, {"span": sq.refs[:2]}
        return True, n, None

    cert.add(Check("lowering-pushout-closure", *_status(closure())))

    def epis():
        n = 0
        for e in cat.morphisms():
            if not data.lowering[e]:
                continue
            a, b, _ = e
            for c in range(len(cat.objects)):
                for i in range(len(cat.homs[(b, c)])):
                    for j in range(len(cat.homs[(b, c)])):
                        if i >= j:
                            continue
                        n += 1
                        if cat.compose(e, (b, c, i)) == cat.compose(e, (b, c, j)):
                            return False, n, {"e": e, "g": i, "h": j}
        return True, n, None

    cert.add(Check("lowering-maps-are-epi", *_status(epis())))

    def set_vs_congruence():
        n = 0
        for sq in squares:
            n += 1
            proj = pushout_via_congruence(sq.e0, sq.e1)
            if proj.cod.size != sq.carrier.size:
                return False, n, {"span": sq.refs[:2] if sq.refs else None}
            # the two quotients agree as quotients of the apex
            through = {}
            ok = True
            for a in range(sq.apex.size):
                left = sq.f0.map[sq.e0.map[a]]
                right = proj.map[a]
                if right in through and through[right] != left:
                    ok = False
                    break
                through[right] = left
            if not ok or len(set(through.values())) != sq.carrier.size:
                return False, n, {"span": sq.refs[:2] if sq.refs else None}
        return True, n, None

    cert.add(Check("set-pushout-matches-congruence-quotient", *_status(set_vs_congruence())))

    def universal():
        n = 0
        for sq in squares:
            ok, cocones, witness = verify_pushout_universal(
                sq, cat.objects, budget
            )
            n += cocones
            if not ok:
                return False, n, witness
        return True, n, None

    cert.add(Check("pushout-universal-property", *_status(universal())))
    return cert


def _status(result: tuple[bool, int, object]) -> tuple[str, int, object]:
    ok, count, witness = result
    return (PASS if ok else FAIL, count, witness)
