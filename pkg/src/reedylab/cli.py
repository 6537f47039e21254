"""Command-line surface: certification suites, cube utilities,
obstruction reports, and DOT export."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ReedyLabError, UnknownSuite
from .suites import SUITES, SuiteConfig, run_suite

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _add_suite_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-size", type=int, default=None, dest="max_size")
    p.add_argument("--cube-dim", type=int, default=3, dest="cube_dim")
    p.add_argument("--max-free-size", type=int, default=2**12, dest="free_cap")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus-count", type=int, default=200, dest="corpus_count")
    p.add_argument("--out", type=str, default=None)
    p.add_argument(
        "--format", type=str, choices=("json", "markdown"), default="json"
    )
    p.add_argument("--jobs", type=int, default=1)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _config_from(args, suite: str) -> SuiteConfig:
    kwargs = dict(
        suite=suite,
        max_size=args.max_size,
        cube_dim=args.cube_dim,
        free_cap=args.free_cap,
        seed=args.seed,
        corpus_count=args.corpus_count,
        out=args.out,
        fmt=args.format,
        jobs=args.jobs,
    )
    if args.budget is not None:
        kwargs["budget"] = args.budget
    return SuiteConfig(**kwargs)


def _run_one(cfg: SuiteConfig) -> int:
    cert = run_suite(cfg)
    text = cert.markdown() if cfg.fmt == "markdown" else cert.json_text()
    _emit(text, cfg.out)
    return EXIT_PASS if cert.passed else EXIT_FAIL


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="reedylab",
        description=(
            "exhaustive desk-scale certification of the (surjective, mono) "
            "Reedy structure on finite join-semilattices and its obstructions"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in sorted(SUITES):
        sp = sub.add_parser(name, help=f"run the {name} suite")
        _add_suite_flags(sp)

    sp = sub.add_parser("all", help="run every registered suite")
    _add_suite_flags(sp)

    sp = sub.add_parser("export-dot", help="Hasse diagram DOT export")
    sp.add_argument("--input", type=str, required=True)
    sp.add_argument("--out", type=str, default=None)

    cube_p = sub.add_parser("cube", help="cube category utilities")
    cube_sub = cube_p.add_subparsers(dest="cube_command", required=True)
    hc = cube_sub.add_parser("homcount")
    hc.add_argument("--m", type=int, required=True)
    hc.add_argument("--n", type=int, required=True)
    hc.add_argument("--out", type=str, default=None)
    tr = cube_sub.add_parser("triangulate")
    tr.add_argument("--n", type=int, required=True)
    tr.add_argument("--dim", type=int, default=None)
    tr.add_argument("--out", type=str, default=None)

    ob = sub.add_parser("obstruct", help="obstruction certificates")
    ob_sub = ob.add_subparsers(dest="obstruct_command", required=True)
    ob_sub.add_parser("u")
    cr = ob_sub.add_parser("crown")
    cr.add_argument("--m", type=int, required=True)
    cr.add_argument("--n", type=int, required=True)
    sc = ob_sub.add_parser("sieve-chain")
    sc.add_argument("--n", type=int, default=3)

    args = parser.parse_args(argv)

    try:
        if args.command in SUITES:
            return _run_one(_config_from(args, args.command))
        if args.command == "all":
            worst = EXIT_PASS
            outputs = []
            for name in SUITES:
                cfg = _config_from(args, name)
                cfg.out = None
                cert = run_suite(cfg)
                outputs.append(
                    cert.markdown() if args.format == "markdown" else cert.json_text()
                )
                if not cert.passed:
                    worst = EXIT_FAIL
            joiner = "\n" if args.format == "markdown" else "\n"
            _emit(joiner.join(outputs), args.out)
            return worst
        if args.command == "export-dot":
            from .dot import export_dot_json

            with open(args.input) as fh:
                data = json.load(fh)
            _emit(export_dot_json(data), args.out)
            return EXIT_PASS
        if args.command == "cube":
            return _cube_command(args)
        if args.command == "obstruct":
            return _obstruct_command(args)
        raise UnknownSuite(args.command)
    except UnknownSuite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReedyLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _cube_command(args) -> int:
    if args.cube_command == "homcount":
        from .cubes import cube_hom_count

        formula, enumerated = cube_hom_count(args.m, args.n)
        _emit(
            json.dumps(
                {
                    "m": args.m,
                    "n": args.n,
                    "formula": formula,
                    "enumerated": enumerated,
                },
                indent=2,
                sort_keys=True,
            ),
            args.out,
        )
        return EXIT_PASS if formula == enumerated else EXIT_FAIL
    if args.cube_command == "triangulate":
        from .cubes import cube, triangulate

        dim = args.dim if args.dim is not None else args.n
        tri = triangulate(cube(args.n), dim)
        _emit(json.dumps(tri.to_json(), indent=2, sort_keys=True), args.out)
        return EXIT_PASS
    raise UnknownSuite(args.cube_command)


def _obstruct_command(args) -> int:
    if args.obstruct_command == "u":
        from .obstruction import (
            certify_no_reedy_factorization_of_u,
            verify_u_image,
        )

        certs = [verify_u_image(), certify_no_reedy_factorization_of_u()]
        text = "\n".join(c.json_text() for c in certs)
        _emit(text, None)
        return EXIT_PASS if all(c.passed for c in certs) else EXIT_FAIL
    if args.obstruct_command == "crown":
        from .obstruction import enumerate_crown_maps, winding

        maps = enumerate_crown_maps(args.m, args.n)
        hist: dict[int, int] = {}
        for f in maps:
            w = winding(f)
            hist[w] = hist.get(w, 0) + 1
        _emit(
            json.dumps(
                {
                    "m": args.m,
                    "n": args.n,
                    "count": len(maps),
                    "windings": {str(k): v for k, v in sorted(hist.items())},
                },
                indent=2,
                sort_keys=True,
            ),
            None,
        )
        return EXIT_PASS
    if args.obstruct_command == "sieve-chain":
        from .obstruction import certify_sieve_chain_nonstabilization

        cert = certify_sieve_chain_nonstabilization(args.n)
        _emit(cert.json_text(), None)
        return EXIT_PASS if cert.passed else EXIT_FAIL
    raise UnknownSuite(args.obstruct_command)


if __name__ == "__main__":
    sys.exit(main())
