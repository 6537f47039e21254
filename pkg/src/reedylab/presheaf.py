"""Finite presheaves over a finite Reedy category.

Carries the cellular machinery: EZ decompositions, latching objects by
two independent routes, relative latching maps, Reedy-monomorphism
predicates three ways, skeleta, cell pushout squares, and weighted/finite
colimits.  Everything is elementwise and exhaustively checkable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .certificates import Certificate, Check, FAIL, PASS
from .reedy import FinCategory, LoweringPushoutSquare, MorphRef, ReedyData


class UnionFind:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def classes(self) -> list[list]:
        buckets: dict = {}
        for k in self.parent:
            buckets.setdefault(self.find(k), []).append(k)
        return [sorted(buckets[r]) for r in sorted(buckets)]


@dataclass
class FinPresheaf:
    """Contravariant finite-set-valued functor: for f: a -> b the action
    maps X_b into X_a."""

    base: FinCategory
    levels: tuple[int, ...]
    actions: dict[MorphRef, tuple[int, ...]]

    def act(self, f: MorphRef, x: int) -> int:
        return self.actions[f][x]

    def elements(self):
        for r, n in enumerate(self.levels):
            for x in range(n):
                yield (r, x)

    def total_size(self) -> int:
        return sum(self.levels)

    def validate(self) -> None:
        cat = self.base
        for ref in cat.morphisms():
            a, b, _ = ref
            act = self.actions[ref]
            assert len(act) == self.levels[b]
            assert all(0 <= v < self.levels[a] for v in act)
        for a, _ in enumerate(cat.objects):
            assert self.actions[cat.identities[a]] == tuple(range(self.levels[a]))
        for f in cat.morphisms():
            for g in cat.morphisms():
                if f[1] != g[0]:
                    continue
                gf = cat.compose(f, g)
                for x in range(self.levels[g[1]]):
                    assert (
                        self.actions[f][self.actions[g][x]]
                        == self.actions[gf][x]
                    ), (f, g, x)

    def to_json(self) -> dict:
        return {
            "base": "category",
            "levels": list(self.levels),
            "actions": {
                f"{a}:{b}:{k}": list(act)
                for (a, b, k), act in sorted(self.actions.items())
            },
        }

    @staticmethod
    def from_json(cat: FinCategory, data: dict) -> "FinPresheaf":
        actions = {}
        for key, act in data["actions"].items():
            a, b, k = map(int, key.split(":"))
            actions[(a, b, k)] = tuple(act)
        X = FinPresheaf(cat, tuple(data["levels"]), actions)
        X.validate()
        return X


@dataclass
class PresheafMorphism:
    dom: FinPresheaf
    cod: FinPresheaf
    components: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        assert self.dom.base is self.cod.base
        cat = self.dom.base
        for r in range(len(cat.objects)):
            assert len(self.components[r]) == self.dom.levels[r]
            assert all(0 <= v < self.cod.levels[r] for v in self.components[r])
        for f in cat.morphisms():
            a, b, _ = f
            for x in range(self.dom.levels[b]):
                assert (
                    self.components[a][self.dom.act(f, x)]
                    == self.cod.act(f, self.components[b][x])
                ), (f, x)

    @property
    def is_levelwise_injective(self) -> bool:
        return all(
            len(set(c)) == len(c) for c in self.components
        )


# ---------------------------------------------------------------------------
# representables and automorphism quotients
# ---------------------------------------------------------------------------


def representable(cat: FinCategory, r: int) -> FinPresheaf:
    """yo(r): level at s is Hom(s, r), acting by precomposition."""
    levels = tuple(len(cat.homs[(s, r)]) for s in range(len(cat.objects)))
    actions = {}
    for f in cat.morphisms():
        a, b, _ = f
        actions[f] = tuple(
            cat.compose(f, (b, r, g))[2] for g in range(levels[b])
        )
    X = FinPresheaf(cat, levels, actions)
    return X


def subgroup_closure_ok(cat: FinCategory, r: int, H: list[MorphRef]) -> bool:
    refs = set(H)
    if cat.identities[r] not in refs:
        return False
    for h in refs:
        if not cat.mor(h).is_iso or h[0] != r or h[1] != r:
            return False
        inv = cat.find(r, r, cat.mor(h).inverse())
        if inv not in refs:
            return False
        for k in refs:
            if cat.compose(h, k) not in refs:
                return False
    return True


def autquo(
    cat: FinCategory, r: int, H: list[MorphRef]
) -> tuple[FinPresheaf, PresheafMorphism]:
    """Quotient of yo(r) by post-composition with a subgroup of Aut(r);
    returns the quotient and the projection from the representable."""
    assert subgroup_closure_ok(cat, r, H)
    Y = representable(cat, r)
    n_obj = len(cat.objects)
    orbit_of: list[dict[int, int]] = []
    orbits_at: list[list[list[int]]] = []
    for s in range(n_obj):
        uf = UnionFind(range(Y.levels[s]))
        for g in range(Y.levels[s]):
            for h in H:
                uf.union(g, cat.compose((s, r, g), h)[2])
        classes = uf.classes()
        orbits_at.append(classes)
        mapping = {}
        for ci, cls in enumerate(classes):
            for g in cls:
                mapping[g] = ci
        orbit_of.append(mapping)
    levels = tuple(len(orbits_at[s]) for s in range(n_obj))
    actions = {}
    for f in cat.morphisms():
        a, b, _ = f
        act = []
        for ci in range(levels[b]):
            rep = orbits_at[b][ci][0]
            act.append(orbit_of[a][Y.act(f, rep)])
        # well-definedness across the orbit
        for ci in range(levels[b]):
            for g in orbits_at[b][ci]:
                assert orbit_of[a][Y.act(f, g)] == act[ci]
        actions[f] = tuple(act)
    Q = FinPresheaf(cat, levels, actions)
    proj = PresheafMorphism(
        Y, Q, tuple(tuple(orbit_of[s][g] for g in range(Y.levels[s])) for s in range(n_obj))
    )
    proj.validate()
    return Q, proj


# ---------------------------------------------------------------------------
# colimits
# ---------------------------------------------------------------------------


@dataclass
class SetDiagram:
    """A finite diagram of finite sets: nodes carry sizes, edges carry
    functions src -> dst."""

    nodes: dict
    edges: list  # (src_key, dst_key, tuple mapping)


def finite_colimit(diagram: SetDiagram) -> tuple[list[list], dict]:
    """Colimit as the zigzag quotient of the disjoint union.

    Returns (classes, leg) where classes lists the colimit's elements as
    sorted lists of (node_key, index) pairs and leg maps such pairs to
    their class index."""
    keys = [
        (k, i) for k, n in sorted(diagram.nodes.items()) for i in range(n)
    ]
    uf = UnionFind(keys)
    for src, dst, fn in diagram.edges:
        for i in range(diagram.nodes[src]):
            uf.union((src, i), (dst, fn[i]))
    classes = uf.classes()
    leg = {}
    for ci, cls in enumerate(classes):
        for key in cls:
            leg[key] = ci
    return classes, leg


def covariant_diagram_of(cat: FinCategory, levels, actions) -> "CovariantDiagram":
    return CovariantDiagram(cat, tuple(levels), dict(actions))


@dataclass
class CovariantDiagram:
    """Covariant finite-set diagram on a FinCategory: for f: a -> b the
    action maps F_a to F_b."""

    base: FinCategory
    levels: tuple[int, ...]
    actions: dict[MorphRef, tuple[int, ...]]

    def validate(self) -> None:
        cat = self.base
        for a in range(len(cat.objects)):
            assert self.actions[cat.identities[a]] == tuple(range(self.levels[a]))
        for f in cat.morphisms():
            a, b, _ = f
            assert len(self.actions[f]) == self.levels[a]
            for g in cat.morphisms():
                if f[1] != g[0]:
                    continue
                gf = cat.compose(f, g)
                for x in range(self.levels[a]):
                    assert (
                        self.actions[g][self.actions[f][x]]
                        == self.actions[gf][x]
                    )


def weighted_colimit(
    W: FinPresheaf, F: CovariantDiagram
) -> tuple[list[list], dict]:
    """Colimit of F over the category of elements of the weight W.

    Nodes are triples (object, weight element, diagram element); the edge
    relation glues along every morphism of the base."""
    assert W.base is F.base
    cat = W.base
    nodes = {}
    for a in range(len(cat.objects)):
        nodes[a] = (W.levels[a], F.levels[a])
    keys = [
        (a, w, x)
        for a in range(len(cat.objects))
        for w in range(W.levels[a])
        for x in range(F.levels[a])
    ]
    uf = UnionFind(keys)
    for f in cat.morphisms():
        a, b, _ = f
        # f: a -> b sends (a, W(f)(w'), x) to (b, w', F(f)(x))
        for w2 in range(W.levels[b]):
            w1 = W.act(f, w2)
            for x in range(F.levels[a]):
                uf.union((a, w1, x), (b, w2, F.actions[f][x]))
    classes = uf.classes()
    leg = {}
    for ci, cls in enumerate(classes):
        for key in cls:
            leg[key] = ci
    return classes, leg


# ---------------------------------------------------------------------------
# lowering structure helpers
# ---------------------------------------------------------------------------


def strictly_lowering_out_of(cat: FinCategory, data: ReedyData, r: int):
    out = []
    for s in range(len(cat.objects)):
        if data.degree[s] >= data.degree[r]:
            continue
        for k, f in enumerate(cat.homs[(r, s)]):
            if f.is_surjective:
                out.append((r, s, k))
    return out


def lowering_out_of(cat: FinCategory, data: ReedyData, r: int):
    out = []
    for s in range(len(cat.objects)):
        for k, f in enumerate(cat.homs[(r, s)]):
            if f.is_surjective:
                out.append((r, s, k))
    return out


def morphism_degree(cat: FinCategory, ref: MorphRef) -> int:
    """Degree of the middle object of the (surjective, mono) factorization."""
    return len(cat.mor(ref).image())


# ---------------------------------------------------------------------------
# latching machinery
# ---------------------------------------------------------------------------


@dataclass
class LatchingData:
    classes: list[list]
    node_class: dict
    latch: list[int]  # class -> element of X_r
    injective: bool


def latching_object(X: FinPresheaf, r: int, data: ReedyData) -> LatchingData:
    """Latching object from strictly lowering maps only: pairs (e, x)
    modulo (f e, x) ~ (e, x f) over lowering f, with the latching map
    sending a class to the restriction x e."""
    cat = X.base
    lows = strictly_lowering_out_of(cat, data, r)
    keys = [(e, x) for e in lows for x in range(X.levels[e[1]])]
    uf = UnionFind(keys)
    for e in lows:
        s = e[1]
        for f in lowering_out_of(cat, data, s):
            fe = cat.compose(e, f)
            for x2 in range(X.levels[f[1]]):
                uf.union((fe, x2), (e, X.act(f, x2)))
    classes = uf.classes()
    node_class = {}
    for ci, cls in enumerate(classes):
        for key in cls:
            node_class[key] = ci
    latch = []
    for cls in classes:
        values = {X.act(e, x) for (e, x) in cls}
        assert len(values) == 1, "latching map ill-defined on a class"
        latch.append(values.pop())
    injective = len(set(latch)) == len(latch)
    return LatchingData(classes, node_class, latch, injective)


def latching_object_via_weights(
    X: FinPresheaf, r: int, data: ReedyData
) -> LatchingData:
    """Independent route: weight by all maps out of r of degree below
    deg(r) (not only lowering ones) and glue along every morphism."""
    cat = X.base
    n = data.degree[r]
    weight = [
        f
        for f in cat.morphisms()
        if f[0] == r and morphism_degree(cat, f) < n
    ]
    keys = [(f, x) for f in weight for x in range(X.levels[f[1]])]
    uf = UnionFind(keys)
    wset = set(weight)
    for f in weight:
        s = f[1]
        for g in cat.morphisms():
            if g[0] != s:
                continue
            gf = cat.compose(f, g)
            assert gf in wset, "degree can only drop under postcomposition"
            for x2 in range(X.levels[g[1]]):
                uf.union((gf, x2), (f, X.act(g, x2)))
    classes = uf.classes()
    node_class = {}
    for ci, cls in enumerate(classes):
        for key in cls:
            node_class[key] = ci
    latch = []
    for cls in classes:
        values = {X.act(f, x) for (f, x) in cls}
        assert len(values) == 1, "latching map ill-defined on a class"
        latch.append(values.pop())
    injective = len(set(latch)) == len(latch)
    return LatchingData(classes, node_class, latch, injective)


def latching_routes_agree(
    X: FinPresheaf, r: int, data: ReedyData
) -> tuple[bool, LatchingData, LatchingData]:
    """Natural bijection over X_r between the two latching computations."""
    A = latching_object(X, r, data)
    B = latching_object_via_weights(X, r, data)
    if len(A.classes) != len(B.classes):
        return False, A, B
    mapping = {}
    for ci, cls in enumerate(A.classes):
        targets = {B.node_class[key] for key in cls}
        if len(targets) != 1:
            return False, A, B
        mapping[ci] = targets.pop()
    if len(set(mapping.values())) != len(B.classes):
        return False, A, B
    for ci, cj in mapping.items():
        if A.latch[ci] != B.latch[cj]:
            return False, A, B
    return True, A, B


def relative_latching_map(
    m: PresheafMorphism, r: int, data: ReedyData
) -> tuple[list[list], dict, list[int], bool]:
    """Pushout X_r + (L_r Y over L_r X), with its map to Y_r.

    Returns (classes, node_class, values, injective); nodes are ('x', i)
    for i in X_r and ('y', c) for latching classes of Y at r."""
    X, Y = m.dom, m.cod
    LX = latching_object(X, r, data)
    LY = latching_object(Y, r, data)
    keys = [("x", i) for i in range(X.levels[r])] + [
        ("y", c) for c in range(len(LY.classes))
    ]
    uf = UnionFind(keys)
    for ci, cls in enumerate(LX.classes):
        e, x = cls[0]
        y_class = LY.node_class[(e, m.components[e[1]][x])]
        # all representatives land in the same Y-class
        for (e2, x2) in cls:
            assert LY.node_class[(e2, m.components[e2[1]][x2])] == y_class
        uf.union(("x", LX.latch[ci]), ("y", y_class))
    classes = uf.classes()
    node_class = {}
    for ci, cls in enumerate(classes):
        for key in cls:
            node_class[key] = ci
    values = []
    for cls in classes:
        vals = set()
        for kind, v in cls:
            if kind == "x":
                vals.add(m.components[r][v])
            else:
                vals.add(LY.latch[v])
        assert len(vals) == 1, "relative latching map ill-defined"
        values.append(vals.pop())
    injective = len(set(values)) == len(values)
    return classes, node_class, values, injective


def is_reedy_mono(X: FinPresheaf, data: ReedyData) -> bool:
    return all(
        latching_object(X, r, data).injective
        for r in range(len(X.base.objects))
    )


def is_reedy_mono_morphism(m: PresheafMorphism, data: ReedyData) -> bool:
    return all(
        relative_latching_map(m, r, data)[3]
        for r in range(len(m.dom.base.objects))
    )


# ---------------------------------------------------------------------------
# EZ decompositions and skeleta
# ---------------------------------------------------------------------------


def is_nondegenerate(X: FinPresheaf, r: int, x: int, data: ReedyData) -> bool:
    for e in strictly_lowering_out_of(X.base, data, r):
        if any(X.act(e, y) == x for y in range(X.levels[e[1]])):
            return False
    return True


def ez_decompositions(X: FinPresheaf, r: int, x: int, data: ReedyData):
    """All pairs (lowering e out of r, nondegenerate y) with y.e = x."""
    out = []
    for e in lowering_out_of(X.base, data, r):
        for y in range(X.levels[e[1]]):
            if X.act(e, y) == x and is_nondegenerate(X, e[1], y, data):
                out.append((e, y))
    return out


def ez_decompose(X: FinPresheaf, r: int, x: int, data: ReedyData):
    """A decomposition of minimal intermediate degree, plus that degree."""
    best = None
    for e in sorted(
        lowering_out_of(X.base, data, r), key=lambda e: (data.degree[e[1]], e)
    ):
        if best is not None and data.degree[e[1]] > best[2]:
            break
        for y in range(X.levels[e[1]]):
            if X.act(e, y) == x and is_nondegenerate(X, e[1], y, data):
                best = (e, y, data.degree[e[1]])
                break
        if best is not None:
            break
    assert best is not None, "every element admits an EZ decomposition"
    return best


def ez_degree(X: FinPresheaf, r: int, x: int, data: ReedyData) -> int:
    return ez_decompose(X, r, x, data)[2]


def ez_isomorphic(
    X: FinPresheaf,
    d0: tuple[MorphRef, int],
    d1: tuple[MorphRef, int],
    data: ReedyData,
) -> bool:
    """Two decompositions match when an isomorphism links them."""
    cat = X.base
    (e0, y0), (e1, y1) = d0, d1
    for th in cat.isos(e0[1], e1[1]):
        if cat.compose(e0, th) == e1 and X.act(th, y1) == y0:
            return True
    return False


def has_unique_ez(X: FinPresheaf, data: ReedyData):
    """True when all EZ decompositions of every element are isomorphic;
    otherwise (False, witness pair)."""
    for (r, x) in X.elements():
        decs = ez_decompositions(X, r, x, data)
        for i in range(len(decs)):
            for j in range(i + 1, len(decs)):
                if not ez_isomorphic(X, decs[i], decs[j], data):
                    return False, ((r, x), decs[i], decs[j])
    return True, None


def skeleton(
    X: FinPresheaf, n: int, data: ReedyData
) -> tuple[FinPresheaf, PresheafMorphism]:
    """Sub-presheaf of elements of EZ degree strictly below n."""
    cat = X.base
    keep = [
        [x for x in range(X.levels[r]) if ez_degree(X, r, x, data) < n]
        for r in range(len(cat.objects))
    ]
    return _sub_presheaf(X, keep)


def _sub_presheaf(X: FinPresheaf, keep: list[list[int]]):
    cat = X.base
    index = [
        {x: i for i, x in enumerate(sorted(set(k)))} for k in keep
    ]
    levels = tuple(len(ix) for ix in index)
    actions = {}
    for f in cat.morphisms():
        a, b, _ = f
        act = []
        for x in sorted(index[b]):
            v = X.act(f, x)
            assert v in index[a], "subset not closed under the action"
            act.append(index[a][v])
        actions[f] = tuple(act)
    S = FinPresheaf(cat, levels, actions)
    incl = PresheafMorphism(
        S, X, tuple(tuple(sorted(ix)) for ix in index)
    )
    incl.validate()
    return S, incl


def sub_presheaf_closure(X: FinPresheaf, seeds) -> tuple[FinPresheaf, PresheafMorphism]:
    """Smallest sub-presheaf containing the seed elements."""
    cat = X.base
    S = set(seeds)
    changed = True
    while changed:
        changed = False
        for (b, x) in list(S):
            for f in cat.morphisms():
                if f[1] != b:
                    continue
                key = (f[0], X.act(f, x))
                if key not in S:
                    S.add(key)
                    changed = True
    keep = [[] for _ in cat.objects]
    for (r, x) in S:
        keep[r].append(x)
    return _sub_presheaf(X, keep)


# ---------------------------------------------------------------------------
# pushouts to pullbacks
# ---------------------------------------------------------------------------


def maps_lowering_pushouts_to_pullbacks(
    X: FinPresheaf, squares: list[LoweringPushoutSquare]
):
    """X applied to each base square must yield a pullback of sets."""
    for sq in squares:
        assert sq.refs is not None, "need category-resident squares"
        e0, e1, f0, f1 = sq.refs
        a = e0[0]
        b0, b1, p = e0[1], e1[1], f0[1]
        fibre = [
            (y0, y1)
            for y0 in range(X.levels[b0])
            for y1 in range(X.levels[b1])
            if X.act(e0, y0) == X.act(e1, y1)
        ]
        comparison = {}
        ok = True
        for z in range(X.levels[p]):
            pair = (X.act(f0, z), X.act(f1, z))
            if pair in comparison.values():
                ok = False  # not injective
                break
            comparison[z] = pair
        if not ok or set(comparison.values()) != set(fibre):
            return False, sq.refs
    return True, None


# ---------------------------------------------------------------------------
# cell pushout squares
# ---------------------------------------------------------------------------


@dataclass
class CellSquareReport:
    n: int
    commutes: bool
    is_pushout: bool
    cell_mono: bool
    details: object = None


def verify_cell_square(
    X: FinPresheaf, n: int, data: ReedyData
) -> CellSquareReport:
    """Certify the degree-n cell attachment.

    Builds the two weighted-colimit corners over the groupoid of degree-n
    objects, the cell map between them, and checks levelwise that the
    square onto the skeleta commutes, is a pushout of sets, and has an
    injective cell map whenever X is Reedy monomorphic.
    """
    cat = X.base
    objs_n = [r for r in range(len(cat.objects)) if data.degree[r] == n]
    L = {r: latching_object(X, r, data) for r in objs_n}
    skn, skn_incl = skeleton(X, n, data)
    sknext, sknext_incl = skeleton(X, n + 1, data)
    commutes = True
    is_pushout = True
    cell_mono = True
    details = []
    for s in range(len(cat.objects)):
        # upper-right corner: all maps into degree-n objects, X elements
        ur_keys = []
        for r in objs_n:
            for g in range(len(cat.homs[(s, r)])):
                for x in range(X.levels[r]):
                    ur_keys.append((r, g, x))
        ur = UnionFind(ur_keys)
        for r in objs_n:
            for r2 in objs_n:
                for th in cat.isos(r, r2):
                    for g in range(len(cat.homs[(s, r)])):
                        tg = cat.compose((s, r, g), th)[2]
                        for x2 in range(X.levels[r2]):
                            ur.union((r2, tg, x2), (r, g, X.act(th, x2)))
        ur_classes = ur.classes()
        ur_class_of = {}
        for ci, cls in enumerate(ur_classes):
            for k in cls:
                ur_class_of[k] = ci

        # upper-left corner: pushout of the boundary-weighted latching data
        low_weight = {
            r: [
                g
                for g in range(len(cat.homs[(s, r)]))
                if morphism_degree(cat, (s, r, g)) < n
            ]
            for r in objs_n
        }
        ul_keys = []
        for r in objs_n:
            for g in range(len(cat.homs[(s, r)])):
                for c in range(len(L[r].classes)):
                    ul_keys.append(("yo", r, g, c))
            for g in low_weight[r]:
                for x in range(X.levels[r]):
                    ul_keys.append(("bd", r, g, x))
        ul = UnionFind(ul_keys)
        for r in objs_n:
            for r2 in objs_n:
                for th in cat.isos(r, r2):
                    th_on_latch = _iso_on_latching(cat, X, th, L[r], L[r2])
                    for g in range(len(cat.homs[(s, r)])):
                        tg = cat.compose((s, r, g), th)[2]
                        for c2 in range(len(L[r2].classes)):
                            ul.union(
                                ("yo", r2, tg, c2), ("yo", r, g, th_on_latch[c2])
                            )
                    for g in low_weight[r]:
                        tg = cat.compose((s, r, g), th)[2]
                        for x2 in range(X.levels[r2]):
                            ul.union(
                                ("bd", r2, tg, x2), ("bd", r, g, X.act(th, x2))
                            )
        # glue the two weighted pieces along the boundary-weighted latching
        for r in objs_n:
            for g in low_weight[r]:
                for c in range(len(L[r].classes)):
                    ul.union(("yo", r, g, c), ("bd", r, g, L[r].latch[c]))
        ul_classes = ul.classes()
        ul_class_of = {}
        for ci, cls in enumerate(ul_classes):
            for k in cls:
                ul_class_of[k] = ci

        # the four maps of the square, elementwise
        def ul_to_sk(node):
            if node[0] == "yo":
                _, r, g, c = node
                return X.act((s, r, g), L[r].latch[c])
            _, r, g, x = node
            return X.act((s, r, g), x)

        def ul_to_ur(node):
            if node[0] == "yo":
                _, r, g, c = node
                return ur_class_of[(r, g, L[r].latch[c])]
            _, r, g, x = node
            return ur_class_of[(r, g, x)]

        skn_set = set(skn_incl.components[s])
        sknext_set = list(sknext_incl.components[s])
        sknext_pos = {x: i for i, x in enumerate(sknext_set)}

        ul_sk = []
        ul_ur = []
        for ci, cls in enumerate(ul_classes):
            sk_vals = {ul_to_sk(node) for node in cls}
            ur_vals = {ul_to_ur(node) for node in cls}
            if len(sk_vals) != 1 or len(ur_vals) != 1:
                commutes = False
                details.append({"level": s, "reason": "left-map-ill-defined"})
                sk_vals = {sorted(sk_vals)[0]}
                ur_vals = {sorted(ur_vals)[0]}
            v = sk_vals.pop()
            assert v in skn_set, "left leg must land in the n-skeleton"
            ul_sk.append(v)
            ul_ur.append(ur_vals.pop())

        ur_sknext = []
        for ci, cls in enumerate(ur_classes):
            vals = {X.act((s, r, g), x) for (r, g, x) in cls}
            if len(vals) != 1:
                commutes = False
                details.append({"level": s, "reason": "right-map-ill-defined"})
            v = sorted(vals)[0]
            assert v in sknext_pos, "right leg must land in the next skeleton"
            ur_sknext.append(v)

        # (a) commutation
        for ci in range(len(ul_classes)):
            if ur_sknext[ul_ur[ci]] != ul_sk[ci]:
                commutes = False
                details.append({"level": s, "class": ci, "reason": "square"})

        # (b) pushout: sk_{n+1} at s is the set pushout of the span
        keys = [("sk", x) for x in skn_incl.components[s]] + [
            ("ur", ci) for ci in range(len(ur_classes))
        ]
        po = UnionFind(keys)
        for ci in range(len(ul_classes)):
            po.union(("sk", ul_sk[ci]), ("ur", ul_ur[ci]))
        po_classes = po.classes()
        value = {}
        ok = True
        for cls in po_classes:
            vals = set()
            for kind, v in cls:
                vals.add(v if kind == "sk" else ur_sknext[v])
            if len(vals) != 1:
                ok = False
                break
            value[cls[0]] = vals.pop()
        if not ok:
            is_pushout = False
            details.append({"level": s, "reason": "pushout-map-ill-defined"})
        else:
            vals = [value[cls[0]] for cls in po_classes]
            if len(set(vals)) != len(vals) or set(vals) != set(sknext_set):
                is_pushout = False
                details.append({"level": s, "reason": "not-a-pushout"})

        # (c) cell map injectivity
        if len(set(ul_ur)) != len(ul_classes):
            cell_mono = False
            details.append({"level": s, "reason": "cell-map-not-injective"})

    return CellSquareReport(n, commutes, is_pushout, cell_mono, details or None)


def _iso_on_latching(cat, X, th: MorphRef, Lr: LatchingData, Lr2: LatchingData):
    """Map latching classes along precomposition with an iso r -> r2."""
    out = []
    for c2 in range(len(Lr2.classes)):
        e2, x2 = Lr2.classes[c2][0]
        e = cat.compose(th, e2)
        out.append(Lr.node_class[(e, x2)])
    return out


def skeleton_chain_report(X: FinPresheaf, data: ReedyData):
    """sk^0 is empty, skeleta grow, and the chain unions to X."""
    maxdeg = max(data.degree) if data.degree else 0
    sizes = []
    prev = None
    ok = True
    for n in range(maxdeg + 2):
        skn, incl = skeleton(X, n, data)
        cur = [set(c) for c in incl.components]
        sizes.append(skn.total_size())
        if prev is not None and any(not p <= c for p, c in zip(prev, cur)):
            ok = False
        prev = cur
    if sizes and sizes[0] != 0:
        ok = False
    if sizes and sizes[-1] != X.total_size():
        ok = False
    return ok, sizes


# ---------------------------------------------------------------------------
# degeneracy reflection
# ---------------------------------------------------------------------------


def reflects_degeneracy(m: PresheafMorphism, data: ReedyData) -> bool:
    """Whenever the image of x factors through a strictly lowering map,
    x itself does."""
    X, Y = m.dom, m.cod
    cat = X.base
    for r in range(len(cat.objects)):
        for x in range(X.levels[r]):
            for e in strictly_lowering_out_of(cat, data, r):
                s = e[1]
                hit_y = any(
                    Y.act(e, y) == m.components[r][x] for y in range(Y.levels[s])
                )
                if hit_y:
                    hit_x = any(
                        X.act(e, x2) == x for x2 in range(X.levels[s])
                    )
                    if not hit_x:
                        return False
    return True


def certify_reflects_degeneracy_lemma(
    cases: list[PresheafMorphism], data: ReedyData
) -> Certificate:
    """For injective m into a Reedy monomorphic Y: if m reflects
    degeneracy then m is a Reedy monomorphism.  Runs over the provided
    sample and counts the non-vacuous instances."""
    cert = Certificate("reflects-degeneracy")
    n_applicable = 0
    n_total = 0
    witness = None
    for m in cases:
        n_total += 1
        if not m.is_levelwise_injective:
            continue
        if not is_reedy_mono(m.cod, data):
            continue
        if not reflects_degeneracy(m, data):
            continue
        n_applicable += 1
        if not is_reedy_mono_morphism(m, data):
            witness = {"case": n_total - 1}
            break
    cert.add(
        Check(
            "reflecting-injections-into-mono-are-reedy-mono",
            PASS if witness is None else FAIL,
            n_applicable,
            witness,
        )
    )
    return cert


# ---------------------------------------------------------------------------
# presheaf constructions for the corpus
# ---------------------------------------------------------------------------


def empty_presheaf(cat: FinCategory) -> FinPresheaf:
    levels = tuple(0 for _ in cat.objects)
    actions = {f: tuple() for f in cat.morphisms()}
    return FinPresheaf(cat, levels, actions)


def terminal_presheaf(cat: FinCategory) -> FinPresheaf:
    levels = tuple(1 for _ in cat.objects)
    actions = {f: (0,) for f in cat.morphisms()}
    return FinPresheaf(cat, levels, actions)


def coproduct_presheaf(parts: list[FinPresheaf]) -> FinPresheaf:
    assert parts
    cat = parts[0].base
    levels = tuple(
        sum(p.levels[r] for p in parts) for r in range(len(cat.objects))
    )
    offsets = []
    acc = [0] * len(cat.objects)
    for p in parts:
        offsets.append(tuple(acc))
        acc = [a + p.levels[r] for r, a in enumerate(acc)]
    actions = {}
    for f in cat.morphisms():
        a, b, _ = f
        act = []
        for pi, p in enumerate(parts):
            act.extend(offsets[pi][a] + v for v in p.actions[f])
        actions[f] = tuple(act)
    return FinPresheaf(cat, levels, actions)


def quotient_presheaf(
    X: FinPresheaf, pairs
) -> tuple[FinPresheaf, PresheafMorphism]:
    """Quotient by the presheaf congruence generated by the given pairs
    ((object, i, j) triples), closing under every restriction."""
    cat = X.base
    ufs = [UnionFind(range(X.levels[r])) for r in range(len(cat.objects))]
    for (r, i, j) in pairs:
        ufs[r].union(i, j)
    changed = True
    while changed:
        changed = False
        for f in cat.morphisms():
            a, b, _ = f
            roots = {}
            for x in range(X.levels[b]):
                rb = ufs[b].find(x)
                va = ufs[a].find(X.act(f, x))
                if rb in roots:
                    if ufs[a].find(roots[rb]) != va:
                        ufs[a].union(roots[rb], va)
                        changed = True
                else:
                    roots[rb] = va
    class_of = []
    levels = []
    for r in range(len(cat.objects)):
        classes = ufs[r].classes()
        mapping = {}
        for ci, cls in enumerate(classes):
            for x in cls:
                mapping[x] = ci
        class_of.append(mapping)
        levels.append(len(classes))
    actions = {}
    for f in cat.morphisms():
        a, b, _ = f
        act = [None] * levels[b]
        for x in range(X.levels[b]):
            ci = class_of[b][x]
            v = class_of[a][X.act(f, x)]
            assert act[ci] is None or act[ci] == v, "congruence not closed"
            act[ci] = v
        actions[f] = tuple(act)
    Q = FinPresheaf(cat, tuple(levels), actions)
    proj = PresheafMorphism(
        X,
        Q,
        tuple(
            tuple(class_of[r][x] for x in range(X.levels[r]))
            for r in range(len(cat.objects))
        ),
    )
    proj.validate()
    return Q, proj


def span_pushout_of_representables(
    cat: FinCategory, e0: MorphRef, e1: MorphRef
) -> FinPresheaf:
    """Levelwise pushout yo(B0) + yo(B1) over yo(A) for a span out of A;
    the two copies are glued along all composites with the span legs."""
    assert e0[0] == e1[0]
    a = e0[0]
    b0, b1 = e0[1], e1[1]
    Y0, Y1 = representable(cat, b0), representable(cat, b1)
    X = coproduct_presheaf([Y0, Y1])
    pairs = []
    for s in range(len(cat.objects)):
        offset = Y0.levels[s]
        for f in range(len(cat.homs[(s, a)])):
            i0 = cat.compose((s, a, f), e0)[2]
            i1 = cat.compose((s, a, f), e1)[2]
            pairs.append((s, i0, offset + i1))
    Q, _ = quotient_presheaf(X, pairs)
    return Q


def non_reedy_mono_example() -> tuple[FinCategory, ReedyData, list, FinPresheaf]:
    """A base category and presheaf on which the Reedy-mono criteria all
    fail, with agreement.

    Over truncations at size <= 4 every object is perfectly presentable,
    the truncated category is elegant, and consequently every presheaf
    is Reedy monomorphic; failures first occur once a non-projective
    object admits a cover inside the category.  The smallest such pair
    is the 3-atom tripod under its pinched 5-element cover; gluing two
    copies of the tripod's representable along that cover produces an
    element with two non-isomorphic EZ decompositions.
    """
    from .reedy import quotient_closure, reedy_category_on
    from .semilattice import pinched_tripod_cover, terminal

    A5, e = pinched_tripod_cover()
    objects = quotient_closure([A5])
    cat, data, squares = reedy_category_on(objects)
    a5 = cat.object_of(A5)
    t = cat.object_of(e.cod)
    from .semilattice import find_isomorphism

    iso_a = find_isomorphism(A5, cat.objects[a5])
    iso_t = find_isomorphism(e.cod, cat.objects[t])
    e_in_cat = cat.find(a5, t, iso_a.inverse().then(e).then(iso_t))
    X = span_pushout_of_representables(cat, e_in_cat, e_in_cat)
    return cat, data, squares, X


def enumerate_presheaves(cat: FinCategory, max_level: int):
    """Exhaustive functor enumeration; practical only for very small
    categories such as the size-2 truncation."""
    n_obj = len(cat.objects)
    non_id = [f for f in cat.morphisms() if not cat.is_identity(f)]
    out = []
    for levels in itertools.product(range(max_level + 1), repeat=n_obj):
        spaces = []
        for f in non_id:
            a, b, _ = f
            spaces.append(
                list(itertools.product(range(levels[a]), repeat=levels[b]))
            )
        for combo in itertools.product(*spaces):
            actions = {
                cat.identities[a]: tuple(range(levels[a])) for a in range(n_obj)
            }
            for f, act in zip(non_id, combo):
                actions[f] = act
            X = FinPresheaf(cat, levels, actions)
            if _functorial(X):
                out.append(X)
    return out


def _functorial(X: FinPresheaf) -> bool:
    cat = X.base
    for f in cat.morphisms():
        for g in cat.morphisms():
            if f[1] != g[0]:
                continue
            gf = cat.compose(f, g)
            for x in range(X.levels[g[1]]):
                if X.actions[f][X.actions[g][x]] != X.actions[gf][x]:
                    return False
    return True


def seeded_corpus(
    cat: FinCategory,
    data: ReedyData,
    seed: int,
    count: int,
    max_parts: int = 2,
    max_glue: int = 3,
) -> list[FinPresheaf]:
    """A fixed designed family (representables, automorphism quotients,
    terminal, empty, span pushouts) followed by `count` reproducible
    random quotients of small coproducts of representables."""
    rng = random.Random(seed)
    n_obj = len(cat.objects)
    corpus: list[FinPresheaf] = []
    for r in range(n_obj):
        corpus.append(representable(cat, r))
    for r in range(n_obj):
        auts = cat.isos(r, r)
        if len(auts) > 1:
            Q, _ = autquo(cat, r, auts)
            corpus.append(Q)
    corpus.append(terminal_presheaf(cat))
    corpus.append(empty_presheaf(cat))
    for sq_e0, sq_e1 in _some_spans(cat, data):
        corpus.append(span_pushout_of_representables(cat, sq_e0, sq_e1))
    for _ in range(count):
        parts = [
            representable(cat, rng.randrange(n_obj))
            for _ in range(rng.randint(1, max_parts))
        ]
        X = coproduct_presheaf(parts)
        n_glue = rng.randint(0, max_glue)
        pairs = []
        for _ in range(n_glue):
            candidates = [r for r in range(n_obj) if X.levels[r] >= 2]
            if not candidates:
                break
            r = rng.choice(candidates)
            i = rng.randrange(X.levels[r])
            j = rng.randrange(X.levels[r])
            if i != j:
                pairs.append((r, i, j))
        if pairs:
            X, _ = quotient_presheaf(X, pairs)
        corpus.append(X)
    return corpus


def _some_spans(cat: FinCategory, data: ReedyData, limit: int = 6):
    """A few strictly lowering spans, preferring distinct legs."""
    out = []
    for r in range(len(cat.objects) - 1, -1, -1):
        lows = strictly_lowering_out_of(cat, data, r)
        for i, e0 in enumerate(lows):
            for e1 in lows[i:]:
                out.append((e0, e1))
                if len(out) >= limit:
                    return out
    return out
