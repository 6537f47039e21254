"""Registered certification suites and their configuration.

Each suite assembles module-level certificates plus its own checks into a
single deterministic Certificate.  Budget overruns become skipped checks;
nothing is silently truncated.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .certificates import Certificate, Check, FAIL, PASS, SKIPPED
from .errors import CandidateSpaceExceeded, SizeBudget, UnknownSuite

DEFAULT_BUDGET = 10**7


def _env_budget() -> int:
    raw = os.environ.get("REEDYLAB_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass
class SuiteConfig:
    suite: str
    max_size: int | None = None
    cube_dim: int = 3
    free_cap: int = 2**12
    budget: int = field(default_factory=_env_budget)
    seed: int = 0
    corpus_count: int = 200
    out: str | None = None
    fmt: str = "json"
    jobs: int = 1

    def __post_init__(self):
        assert self.cube_dim >= 0
        assert self.budget > 0 and self.free_cap > 0
        assert self.fmt in ("json", "markdown")
        assert self.jobs >= 1

    def echo(self) -> dict:
        return {
            "suite": self.suite,
            "max_size": self.max_size,
            "cube_dim": self.cube_dim,
            "free_cap": self.free_cap,
            "budget": self.budget,
            "seed": self.seed,
            "corpus_count": self.corpus_count,
        }


def _run_checks(tasks, jobs: int) -> list[Check]:
    """Run (id, thunk) tasks, each returning a list of Checks; merge in
    submission order regardless of completion order."""

    def guard(task):
        cid, thunk = task
        try:
            return thunk()
        except (SizeBudget, CandidateSpaceExceeded) as exc:
            return [Check(cid, SKIPPED, 0, str(exc))]

    if jobs <= 1:
        results = [guard(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(guard, tasks))
    out: list[Check] = []
    for chunk in results:
        out.extend(chunk)
    return out


def _bool_check(cid: str, ok: bool, count: int, witness=None) -> Check:
    return Check(cid, PASS if ok else FAIL, count, None if ok else witness)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _suite_hom_counts(cfg: SuiteConfig) -> list:
    from .cubes import cube, cube_hom_count, dedekind_homs
    from .semilattice import all_functions_homs, backtrack_homs, enumerate_homs

    tasks = []
    dim = min(cfg.cube_dim, 3)
    for m in range(1, dim + 1):
        for n in range(1, dim + 1):
            def thunk(m=m, n=n):
                formula, enumerated = cube_hom_count(m, n)
                checks = [
                    _bool_check(
                        f"formula-matches-enumeration-{m}-{n}",
                        formula == enumerated,
                        enumerated,
                        {"formula": formula, "enumerated": enumerated},
                    )
                ]
                A, B = cube(m), cube(n)
                pruned = backtrack_homs(A, B)
                checks.append(
                    _bool_check(
                        f"elementwise-backtracking-agrees-{m}-{n}",
                        pruned == [f.map for f in enumerate_homs(A, B, cfg.budget)],
                        len(pruned),
                    )
                )
                if B.size**A.size <= 10**6:
                    literal = all_functions_homs(A, B)
                    checks.append(
                        _bool_check(
                            f"literal-filtration-agrees-{m}-{n}",
                            [f.map for f in literal] == pruned,
                            len(literal),
                        )
                    )
                return checks

            tasks.append((f"hom-count-{m}-{n}", thunk))

    def dedekind():
        expected = {1: 3, 2: 6, 3: 20}
        checks = []
        for n, want in expected.items():
            got = len(dedekind_homs(n, 1, cfg.budget))
            checks.append(
                _bool_check(
                    f"monotone-count-into-interval-{n}",
                    got == want,
                    got,
                    {"expected": want, "got": got},
                )
            )
        return checks

    tasks.append(("dedekind-counts", dedekind))
    return tasks


def _truncation(cfg: SuiteConfig, default: int):
    from .reedy import truncated_semilattice_category

    N = cfg.max_size if cfg.max_size is not None else default
    return truncated_semilattice_category(N, cfg.budget)


def _suite_reedy_axioms(cfg: SuiteConfig) -> list:
    from .reedy import certify_cancellation, certify_reedy_axioms

    cat, data, squares = _truncation(cfg, 3)
    return [
        ("axioms", lambda: certify_reedy_axioms(cat, data).checks),
        ("cancellation", lambda: certify_cancellation(cat, data).checks),
    ]


def _suite_pre_elegance(cfg: SuiteConfig) -> list:
    from .reedy import (
        certify_cancellation,
        certify_pre_elegance,
        certify_reedy_axioms,
    )

    cat, data, squares = _truncation(cfg, 3)
    return [
        ("axioms", lambda: certify_reedy_axioms(cat, data).checks),
        ("cancellation", lambda: certify_cancellation(cat, data).checks),
        (
            "pre-elegance",
            lambda: certify_pre_elegance(cat, data, squares, cfg.budget).checks,
        ),
    ]


def _suite_elegant_core(cfg: SuiteConfig) -> list:
    from .elegance import (
        codiagonal_square,
        counit_from_free,
        hom_preserves_lowering_pushout,
        in_elegant_core,
        is_perfectly_presentable,
    )
    from .semilattice import (
        all_semilattices_upto,
        are_isomorphic,
        atoms_with_top,
        chain,
        interval,
    )
    from .cubes import cube

    N = cfg.max_size if cfg.max_size is not None else 4

    def run():
        classes = all_semilattices_upto(N)
        verdicts = []
        for A in classes:
            closed = in_elegant_core(A, cfg.budget, cfg.free_cap).closed_form
            retract = is_perfectly_presentable(A, cfg.budget, cfg.free_cap)[0]
            hom_ok, _ = hom_preserves_lowering_pushout(
                A, codiagonal_square(counit_from_free(A, cfg.free_cap)), cfg.budget
            )
            verdicts.append((A, closed, retract, hom_ok))
        checks = [
            _bool_check(
                "triple-agreement-all-classes",
                all(c == r == h for (_, c, r, h) in verdicts),
                len(verdicts),
                [
                    {"size": A.size, "closed": c, "retract": r, "hom": h}
                    for (A, c, r, h) in verdicts
                    if not (c == r == h)
                ],
            ),
            _bool_check("at-least-nine-classes", len(verdicts) >= 9, len(verdicts)),
        ]
        tripod = atoms_with_top(3)
        fails = [
            (c, r, h)
            for (A, c, r, h) in verdicts
            if A.size == 4 and are_isomorphic(A, tripod)
        ]
        checks.append(
            _bool_check(
                "tripod-class-fails-all-three",
                fails == [(False, False, False)],
                1,
                {"verdicts": fails},
            )
        )
        good = [interval(), chain(3), chain(4), cube(2)]
        oks = []
        for G in good:
            match = [
                (c, r, h) for (A, c, r, h) in verdicts if are_isomorphic(A, G)
            ]
            oks.append(match == [(True, True, True)])
        checks.append(
            _bool_check("cubes-and-chains-pass-all-three", all(oks), len(good), oks)
        )
        return checks

    return [("elegant-core", run)]


def _suite_relative_elegance(cfg: SuiteConfig) -> list:
    from .elegance import hom_preserves_lowering_pushout
    from .cubes import cube
    from .semilattice import chain

    N = cfg.max_size if cfg.max_size is not None else 4
    cat, data, squares = _truncation(cfg, N)
    sources = []
    for m in range(0, min(cfg.cube_dim, 3) + 1):
        sources.append((f"cube-{m}", cube(m)))
    for n in range(1, 4):
        sources.append((f"chain-{n}", chain(n + 1)))

    tasks = []
    for name, A in sources:
        def thunk(A=A, name=name):
            bad = None
            count = 0
            for sq in squares:
                count += 1
                ok, witness = hom_preserves_lowering_pushout(A, sq, cfg.budget)
                if not ok:
                    bad = {"square": sq.refs, "witness": witness}
                    break
            return [
                _bool_check(
                    f"hom-preserves-all-lowering-pushouts-{name}",
                    bad is None,
                    count,
                    bad,
                )
            ]

        tasks.append((name, thunk))
    return tasks


def _corpus(cfg: SuiteConfig):
    from .presheaf import enumerate_presheaves, seeded_corpus
    from .reedy import truncated_semilattice_category

    cat2, data2, squares2 = truncated_semilattice_category(2, cfg.budget)
    exhaustive = enumerate_presheaves(cat2, 2)
    N = cfg.max_size if cfg.max_size is not None else 3
    cat3, data3, squares3 = truncated_semilattice_category(N, cfg.budget)
    seeded = seeded_corpus(cat3, data3, cfg.seed, cfg.corpus_count)
    return (cat2, data2, squares2, exhaustive), (cat3, data3, squares3, seeded)


def _triple(X, data, squares):
    from .presheaf import (
        has_unique_ez,
        is_reedy_mono,
        maps_lowering_pushouts_to_pullbacks,
    )

    a = is_reedy_mono(X, data)
    b = has_unique_ez(X, data)[0]
    c = maps_lowering_pushouts_to_pullbacks(X, squares)[0]
    return a, b, c


def _suite_presheaf_ez(cfg: SuiteConfig) -> list:
    from .presheaf import (
        autquo,
        is_reedy_mono,
        latching_object,
        latching_routes_agree,
        non_reedy_mono_example,
        representable,
    )

    def run():
        (cat2, data2, squares2, exhaustive), (cat3, data3, squares3, seeded) = _corpus(cfg)
        checks = []
        verdicts = set()

        def sweep(tag, corpus, data, squares):
            bad = None
            for i, X in enumerate(corpus):
                a, b, c = _triple(X, data, squares)
                verdicts.add(a)
                if not (a == b == c):
                    bad = {"index": i, "levels": list(X.levels), "triple": [a, b, c]}
                    break
            return _bool_check(
                f"triple-criteria-agree-{tag}", bad is None, len(corpus), bad
            )

        checks.append(sweep("exhaustive-size2", exhaustive, data2, squares2))
        checks.append(sweep("seeded-size3", seeded, data3, squares3))
        checks.append(
            _bool_check(
                "both-verdicts-occur-in-corpus",
                verdicts == {True, False},
                len(exhaustive) + len(seeded),
                {
                    "verdicts-seen": sorted(map(str, verdicts)),
                    "note": (
                        "truncations at size <= 4 are elegant (every object "
                        "is perfectly presentable), so every presheaf over "
                        "them is Reedy monomorphic and the false verdict "
                        "cannot occur on this corpus; see the non-mono "
                        "witness checks for the false branch"
                    ),
                },
            )
        )

        # two latching routes agree everywhere on the corpus
        bad = None
        count = 0
        for corpus, data in ((exhaustive, data2), (seeded, data3)):
            for X in corpus:
                for r in range(len(X.base.objects)):
                    count += 1
                    ok, _, _ = latching_routes_agree(X, r, data)
                    if not ok:
                        bad = {"levels": list(X.levels), "object": r}
                        break
                if bad:
                    break
            if bad:
                break
        checks.append(
            _bool_check("latching-two-routes-agree", bad is None, count, bad)
        )

        # representable latching at the free two-generator object
        free2 = next(
            i
            for i, O in enumerate(cat3.objects)
            if O.size == 3 and len(cat3.isos(i, i)) == 2
        )
        yo = representable(cat3, free2)
        L = latching_object(yo, free2, data3)
        checks.append(
            _bool_check(
                "representable-latching-size-and-injectivity",
                len(L.classes) == 7 and L.injective,
                len(L.classes),
                {"size": len(L.classes), "injective": L.injective},
            )
        )

        # automorphism quotients are Reedy monomorphic
        count = 0
        bad = None
        for r in range(len(cat3.objects)):
            auts = cat3.isos(r, r)
            for H in _subgroups(cat3, r, auts):
                Q, _ = autquo(cat3, r, H)
                count += 1
                if not is_reedy_mono(Q, data3):
                    bad = {"object": r, "subgroup": len(H)}
        checks.append(
            _bool_check("autquos-reedy-monomorphic", bad is None, count, bad)
        )

        # the false branch, demonstrated over a base containing a
        # non-projective object with its minimal cover
        cat5, data5, squares5, X = non_reedy_mono_example()
        a, b, c = _triple(X, data5, squares5)
        checks.append(
            _bool_check(
                "non-mono-witness-all-three-criteria-false",
                (a, b, c) == (False, False, False),
                1,
                {"triple": [a, b, c]},
            )
        )
        return checks

    return [("presheaf-ez", run)]


def _subgroups(cat, r, auts):
    import itertools as it

    from .presheaf import subgroup_closure_ok

    out = []
    for k in range(1, len(auts) + 1):
        for subset in it.combinations(auts, k):
            if subgroup_closure_ok(cat, r, list(subset)):
                out.append(list(subset))
    return out


def _suite_cell_presentation(cfg: SuiteConfig) -> list:
    from .presheaf import (
        is_reedy_mono,
        latching_object,
        non_reedy_mono_example,
        skeleton_chain_report,
        verify_cell_square,
    )

    def run():
        (cat2, data2, squares2, exhaustive), (cat3, data3, squares3, seeded) = _corpus(cfg)
        checks = []
        for tag, corpus, data in (
            ("exhaustive-size2", exhaustive, data2),
            ("seeded-size3", seeded, data3),
        ):
            bad = None
            squares_count = 0
            chain_count = 0
            for i, X in enumerate(corpus):
                if not is_reedy_mono(X, data):
                    continue
                ok, sizes = skeleton_chain_report(X, data)
                chain_count += 1
                if not ok:
                    bad = {"index": i, "reason": "skeleton-chain", "sizes": sizes}
                    break
                for n in sorted(set(data.degree)):
                    rep = verify_cell_square(X, n, data)
                    squares_count += 1
                    if not (rep.commutes and rep.is_pushout and rep.cell_mono):
                        bad = {
                            "index": i,
                            "degree": n,
                            "report": [rep.commutes, rep.is_pushout, rep.cell_mono],
                        }
                        break
                if bad:
                    break
            checks.append(
                _bool_check(
                    f"cell-squares-certify-{tag}", bad is None, squares_count, bad
                )
            )
            checks.append(
                _bool_check(
                    f"skeleton-chain-unions-{tag}", bad is None, chain_count, bad
                )
            )

        # expected failure pattern on the non-mono witness
        cat5, data5, squares5, X = non_reedy_mono_example()
        reports = {
            n: verify_cell_square(X, n, data5) for n in sorted(set(data5.degree))
        }
        commute_ok = all(r.commutes for r in reports.values())
        latch_fail_degrees = {
            data5.degree[r]
            for r in range(len(cat5.objects))
            if not latching_object(X, r, data5).injective
        }
        mono_fail_degrees = {n for n, r in reports.items() if not r.cell_mono}
        checks.append(
            _bool_check(
                "non-mono-witness-commutation-still-holds",
                commute_ok,
                len(reports),
                {"commutes": {n: r.commutes for n, r in reports.items()}},
            )
        )
        checks.append(
            _bool_check(
                "non-mono-witness-cell-maps-fail-at-latching-degrees",
                latch_fail_degrees <= mono_fail_degrees and bool(latch_fail_degrees),
                len(reports),
                {
                    "latching-failures": sorted(latch_fail_degrees),
                    "cell-mono-failures": sorted(mono_fail_degrees),
                },
            )
        )
        checks.append(
            _bool_check(
                "non-mono-witness-pushout-or-mono-fails",
                any(
                    not (r.is_pushout and r.cell_mono) for r in reports.values()
                ),
                len(reports),
                None,
            )
        )
        return checks

    return [("cell-presentation", run)]


def _suite_idempotent_completion(cfg: SuiteConfig) -> list:
    from .cubes import certify_idempotent_completion

    N = cfg.max_size if cfg.max_size is not None else 4
    return [
        (
            "idempotent-completion",
            lambda: certify_idempotent_completion(
                min(cfg.cube_dim, 3), N, cfg.budget
            ).checks,
        )
    ]


def _suite_triangulation(cfg: SuiteConfig) -> list:
    from .cubes import (
        cube,
        monotone_maps_agree_with_homs,
        product_simplicial,
        simplicial_isomorphic,
        triangulate,
        triangulation_product_bijections,
    )
    from .semilattice import interval

    def run():
        checks = []
        dim = min(cfg.cube_dim, 3)
        tri1 = triangulate(interval(), dim)
        for n in range(1, dim + 1):
            C = cube(n)
            tri = triangulate(C, dim)
            nondeg = len(tri.nondegenerate(n))
            checks.append(
                _bool_check(
                    f"nondegenerate-top-cells-{n}",
                    nondeg == math.factorial(n),
                    nondeg,
                    {"expected": math.factorial(n), "got": nondeg},
                )
            )
            # levelwise comparison with the n-fold product of the interval
            prod = product_simplicial([tri1] * n)
            projs = _cube_projections(n)
            bij = triangulation_product_bijections(
                [interval()] * n, prod, tri, projs
            )
            ok = simplicial_isomorphic(tri, prod, bij)
            checks.append(
                _bool_check(
                    f"levelwise-product-comparison-{n}",
                    ok,
                    sum(tri.level_sizes()),
                    None,
                )
            )
        # out of a chain, monotone equals join-preserving
        agree = all(
            monotone_maps_agree_with_homs(cube(n), k)
            for n in range(1, dim + 1)
            for k in range(1, 5)
        )
        checks.append(
            _bool_check("chain-monotone-equals-join-preserving", agree, 4 * dim)
        )
        return checks

    return [("triangulation", run)]


def _cube_projections(n: int):
    """Projections of the n-cube onto its interval factors, in the order
    matching iterated binary products."""
    from .cubes import cube
    from .semilattice import SLatMorphism, interval

    C = cube(n)
    I = interval()
    return [
        SLatMorphism(C, I, tuple((v >> i) & 1 for v in range(1 << n)))
        for i in range(n)
    ]


def _suite_obstruction_u(cfg: SuiteConfig) -> list:
    from .obstruction import certify_no_reedy_factorization_of_u, verify_u_image

    return [
        ("u-image", lambda: verify_u_image().checks),
        (
            "u-factorization",
            lambda: certify_no_reedy_factorization_of_u(cfg.budget).checks,
        ),
    ]


def _suite_crown_winding(cfg: SuiteConfig) -> list:
    from .obstruction import (
        certify_wind_properties,
        fold_map,
        identity_crown,
        verify_extension_pullback,
        winding,
    )

    def basics():
        checks = []
        for n in (3, 4):
            w = winding(identity_crown(n))
            checks.append(
                _bool_check(f"identity-winds-one-{n}", w == 1, 1, {"got": w})
            )
            wf = winding(fold_map(2 * n, n))
            checks.append(
                _bool_check(f"fold-winds-two-{n}", wf == 2, 1, {"got": wf})
            )
        return checks

    def pullbacks():
        checks = []
        for tag, f in (
            ("fold-6-3", fold_map(6, 3)),
            ("identity-3", identity_crown(3)),
        ):
            cert = verify_extension_pullback(f)
            for c in cert.checks:
                checks.append(Check(f"{c.id}-{tag}", c.status, c.count, c.witness))
        return checks

    return [
        ("winding-basics", basics),
        ("wind-properties", lambda: certify_wind_properties(cfg.budget).checks),
        ("extension-pullbacks", pullbacks),
    ]


def _suite_sieve_chain(cfg: SuiteConfig) -> list:
    from .obstruction import certify_sieve_chain_nonstabilization

    return [
        (
            "sieve-chain",
            lambda: certify_sieve_chain_nonstabilization(3, cfg.budget).checks,
        )
    ]


SUITES = {
    "hom-counts": _suite_hom_counts,
    "reedy-axioms": _suite_reedy_axioms,
    "pre-elegance": _suite_pre_elegance,
    "elegant-core": _suite_elegant_core,
    "relative-elegance": _suite_relative_elegance,
    "presheaf-ez": _suite_presheaf_ez,
    "cell-presentation": _suite_cell_presentation,
    "idempotent-completion": _suite_idempotent_completion,
    "triangulation": _suite_triangulation,
    "obstruction-u": _suite_obstruction_u,
    "crown-winding": _suite_crown_winding,
    "sieve-chain": _suite_sieve_chain,
}


def run_suite(cfg: SuiteConfig) -> Certificate:
    if cfg.suite not in SUITES:
        raise UnknownSuite(
            f"unknown suite {cfg.suite!r}; known: {', '.join(sorted(SUITES))}"
        )
    start = time.perf_counter()
    tasks = SUITES[cfg.suite](cfg)
    checks = _run_checks(tasks, cfg.jobs)
    cert = Certificate(cfg.suite, checks, cfg.echo())
    cert.duration = time.perf_counter() - start
    return cert
