"""Command-line front end.

Exit codes: 0 verdict true or construction succeeded, 1 verdict false,
2 invalid input, 3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import sys

from . import io
from .errors import CapExceeded, FibrifierError

EXIT_TRUE, EXIT_FALSE, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3

CLASSES = ("fibration", "opfibration", "isofibration", "street", "street-opfibration",
           "discrete", "discrete-opfibration", "conservative")


class InvalidInput(FibrifierError):
    """Input parsed but fails the laws it must satisfy."""


# ------------------------------------------------------------------ loading

def _read(path: str):
    if path == "-":
        return io.loads(sys.stdin.read())
    try:
        return io.load_file(path)
    except OSError as exc:
        raise io.SchemaError(f"cannot read {path}: {exc.strerror}") from exc


def load_functor(path: str):
    """A functor document, or ``curated:<name>`` for a shipped instance."""
    from .core import validate
    if path.startswith("curated:"):
        from .corpus import curated_functors
        name = path.split(":", 1)[1]
        table = curated_functors()
        if name not in table:
            raise io.SchemaError(f"unknown curated functor {name!r}; known: {', '.join(table)}")
        return table[name]
    F = io.functor_from_json(_read(path))
    report = validate("functor", F)
    if not report.ok:
        raise InvalidInput(f"{path}: {report.violations[0]}")
    return F


def load_diagram(path: str):
    from .core import validate
    D = io.diagram_from_json(_read(path))
    report = validate("nattrans", D.cell)
    if not report.ok:
        raise InvalidInput(f"{path}: {report.violations[0]}")
    return D


def _emit(args, doc) -> None:
    text = io.dumps(doc) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict(args, ok: bool, doc: dict) -> int:
    doc = dict(doc)
    doc["verdict"] = ok
    _emit(args, doc)
    return EXIT_TRUE if ok else EXIT_FALSE


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    from .core import validate
    doc = _read(args.file)
    kind = args.kind or _detect_kind(doc)
    if kind == "category":
        value = io.cat_from_json(doc)
    elif kind == "functor":
        value = io.functor_from_json(doc)
    else:
        value = io.nat_from_json(doc)
    report = validate(kind, value)
    return _verdict(args, report.ok, {"kind": kind,
                                      "violations": [str(v) for v in report.violations]})


def _detect_kind(doc) -> str:
    if not isinstance(doc, dict):
        raise io.SchemaError("top-level JSON value must be an object")
    if "components" in doc:
        return "nattrans"
    if "source" in doc:
        return "functor"
    if "objects" in doc:
        return "category"
    raise io.SchemaError("cannot tell whether document is a category, functor or transformation")


def cmd_comma(args) -> int:
    from .comma import comma
    f, g = load_functor(args.f), load_functor(args.g)
    if f.target != g.target:
        raise InvalidInput("functors must share a target")
    _emit(args, io.comma_to_json(comma(f, g)))
    return EXIT_TRUE


def cmd_iso_comma(args) -> int:
    from .comma import iso_comma
    ic = iso_comma(load_functor(args.f))
    doc = io.comma_to_json(ic.comma)
    doc["unit"] = {"obj": list(ic.unit.obj), "mor": list(ic.unit.mor)}
    doc["w"] = {"obj": list(ic.w.obj), "mor": list(ic.w.mor)}
    doc["carrier"] = {"obj": list(ic.carrier.obj), "mor": list(ic.carrier.mor)}
    _emit(args, doc)
    return EXIT_TRUE


def cmd_monad(args) -> int:
    from .comma import monad_laws, monad_on_slice
    f = load_functor(args.f)
    M = monad_on_slice(args.which, f, with_mult=False)
    laws = monad_laws(args.which, f) if args.laws else None
    doc = {"which": args.which, "carrier": io.functor_to_json(M.carrier),
           "unit": {"obj": list(M.unit.obj), "mor": list(M.unit.mor)}}
    if laws is not None:
        doc["laws"] = laws
        return _verdict(args, all(laws.values()), doc)
    _emit(args, doc)
    return EXIT_TRUE


def cmd_adjoint(args) -> int:
    from .adjoint import find_left_adjoint, find_right_adjoint
    F = load_functor(args.f)
    if args.side == "right":
        adj = find_right_adjoint(F, require_identity_counit=args.identity)
    else:
        adj = find_left_adjoint(F, require_identity_unit=args.identity)
    if adj is None:
        return _verdict(args, False, {"side": args.side})
    return _verdict(args, True, {"side": args.side, "adjunction": io.adjunction_to_json(adj)})


def class_verdict(f, cls: str, criteria=None):
    """``(verdict, detail)`` for one of :data:`CLASSES`."""
    from . import fibcheck as fc
    if cls in ("fibration", "opfibration"):
        check = fc.is_fibration if cls == "fibration" else fc.is_opfibration
        rep = check(f, tuple(criteria) if criteria else fc.CRITERIA)
        detail = {"verdicts": dict(rep.verdicts), "agreement": rep.agreement}
        return rep.agreement and all(rep.verdicts.values()), detail
    table = {"isofibration": fc.is_isofibration,
             "street": fc.is_street_fibration,
             "street-opfibration": fc.is_street_opfibration,
             "discrete": lambda g: fc.is_discrete(g, "fib"),
             "discrete-opfibration": lambda g: fc.is_discrete(g, "opfib"),
             "conservative": fc.is_conservative}
    return table[cls](f), {}


def cmd_check(args) -> int:
    f = load_functor(args.f)
    criteria = args.criteria.split(",") if args.criteria else None
    ok, detail = class_verdict(f, args.cls, criteria)
    return _verdict(args, ok, {"class": args.cls, **detail})


def cmd_identee(args) -> int:
    from .colim import identee, invertee
    build = identee if args.command == "identee" else invertee
    _emit(args, io.diagram_to_json(build(load_functor(args.f))))
    return EXIT_TRUE


def cmd_coidentify(args) -> int:
    from .colim import coidentifier, coinverter
    build = coidentifier if args.command == "coidentify" else coinverter
    res = build(load_diagram(args.diagram), args.cap)
    _emit(args, io.quotient_to_json(res))
    return EXIT_TRUE


def cmd_grothendieck(args) -> int:
    from .grothendieck import grothendieck_construction
    P = io.pseudofunctor_from_json(_read(args.pseudofunctor))
    G = grothendieck_construction(P)
    _emit(args, {"total": io.cat_to_json(G.total),
                 "proj": {"obj": list(G.proj.obj), "mor": list(G.proj.mor)},
                 "decode": [list(d) for d in G.decode],
                 "mor_decode": [list(d) for d in G.mor_decode]})
    return EXIT_TRUE


def cmd_cleave(args) -> int:
    from .fibcheck import extract_cleavage
    from .grothendieck import to_pseudofunctor
    f = load_functor(args.f)
    cl = extract_cleavage(f if args.side == "fib" else f.op())
    if cl is None:
        return _verdict(args, False, {"side": args.side})
    doc = {"side": args.side,
           "lifts": sorted([a, beta, alpha] for (a, beta), alpha in cl.lifts.items()),
           "split": cl.is_split()}
    if args.side == "fib":
        doc["pseudofunctor"] = io.pseudofunctor_to_json(to_pseudofunctor(f, cl))
    return _verdict(args, True, doc)


def cmd_fibrewise(args) -> int:
    from .grothendieck import fibrewise_apply
    res = fibrewise_apply(load_functor(args.f), args.mode, args.cap)
    _emit(args, {"mode": args.mode, "q": io.functor_to_json(res.q),
                 "s": io.functor_to_json(res.s),
                 "reflected": io.pseudofunctor_to_json(res.reflected)})
    return EXIT_TRUE


def cmd_factorize(args) -> int:
    from . import factor
    p = load_functor(args.f)
    if args.fibB:
        m = factor.FibBMorphism(load_functor(args.fibB[0]), load_functor(args.fibB[1]), p)
        if not m.is_valid():
            raise InvalidInput("not a morphism of fibrations over a common base")
        mode = "coinverter" if args.groupoid else "coidentifier"
        res = factor.factor_in_fibB(m, mode, args.cap)
    elif args.groupoid:
        res = factor.groupoid_fibre_factorization(p, args.side, args.cap)
    else:
        res = factor.comprehensive_factorization(p, args.side)
    for path, F in ((args.write_q, res.q), (args.write_s, res.s)):
        if path:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(io.dumps(io.functor_to_json(F)) + "\n")
    return _verdict(args, all(v is True for v in res.evidence.values()),
                    io.factorization_to_json(res))


def cmd_corpus(args) -> int:
    from .corpus import GenConfig, run_suite
    cfg = GenConfig(seed=args.seed, instance_count=args.count)
    report = run_suite(cfg, args.suite)
    doc = report.to_json()
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(doc) + "\n")
    print(f"{report.suite}: {len(report.instances) - len(report.failures)}/"
          f"{len(report.instances)} passed")
    return EXIT_TRUE if report.passed else EXIT_FALSE


def cmd_export_dot(args) -> int:
    from .dot import export_dot
    doc = _read(args.file)
    if isinstance(doc, dict) and "kind" in doc and "q" in doc:
        from .factor import FactorizationResult
        q = io.functor_from_json(doc["q"])
        s = io.functor_from_json(doc["s"], q.target)
        value = FactorizationResult(q, q.target, s, doc["kind"], doc.get("side", "fib"))
    elif _detect_kind(doc) == "functor":
        value = io.functor_from_json(doc)
    else:
        value = io.cat_from_json(doc)
    text = export_dot(value)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_TRUE


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    from .corpus import SUITES
    parser = argparse.ArgumentParser(
        prog="fibrifier",
        description="Finite categories, fibrations and their factorizations. "
                    "Functor arguments are JSON files, '-' for stdin, or curated:<name>.",
        epilog="exit codes: 0 true/succeeded, 1 false, 2 invalid input, 3 cap exceeded. "
               "FIBRIFIER_CAP overrides the default enumeration cap.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap for quotients (default: FIBRIFIER_CAP or 10000)")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check the laws of a category, functor or transformation")
    p.add_argument("file")
    p.add_argument("--kind", choices=("category", "functor", "nattrans"))

    p = add("comma", cmd_comma, "comma category f/g with its projections")
    p.add_argument("f")
    p.add_argument("g")

    p = add("iso-comma", cmd_iso_comma, "iso-comma f/~B with i_f, w_f and the carrier If")
    p.add_argument("f")

    p = add("monad", cmd_monad, "the slice monad R, L or I applied to f")
    p.add_argument("f")
    p.add_argument("--which", choices=("R", "L", "I"), default="R")
    p.add_argument("--laws", action="store_true", help="also verify the monad laws")

    p = add("adjoint", cmd_adjoint, "search for a left or right adjoint")
    p.add_argument("f")
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--identity", action="store_true",
                   help="require identity counit (right) or identity unit (left)")

    p = add("check", cmd_check, "decide a fibration-like class")
    p.add_argument("f")
    p.add_argument("--class", dest="cls", choices=CLASSES, required=True)
    p.add_argument("--criteria", help="comma-separated subset of direct,chevalley,algebra")

    for name in ("identee", "invertee"):
        p = add(name, cmd_identee, f"the {name} 2-cell diagram of f")
        p.add_argument("f")

    for name, what in (("coidentify", "coidentifier"), ("coinvert", "coinverter")):
        p = add(name, cmd_coidentify, f"the {what} of a 2-cell diagram")
        p.add_argument("diagram")

    p = add("grothendieck", cmd_grothendieck, "total category of a pseudo-functor")
    p.add_argument("pseudofunctor")

    p = add("cleave", cmd_cleave, "extract a cleavage and the associated pseudo-functor")
    p.add_argument("f")
    p.add_argument("--side", choices=("fib", "opfib"), default="fib")

    p = add("fibrewise", cmd_fibrewise, "reflect each fibre of a fibration and reassemble")
    p.add_argument("f")
    p.add_argument("--mode", choices=("pi0", "groupoid"), default="pi0")

    p = add("factorize", cmd_factorize, "comprehensive or groupoid-fibre factorization")
    p.add_argument("f")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--comprehensive", action="store_true", help="(final, discrete) (default)")
    kind.add_argument("--groupoid", action="store_true", help="(coinverter, groupoidal fibres)")
    p.add_argument("--side", choices=("fib", "opfib"), default="fib")
    p.add_argument("--fibB", nargs=2, metavar=("F", "G"),
                   help="factor f as a morphism from fibration F to fibration G over their base")
    p.add_argument("--write-q", help="also write q as a functor document")
    p.add_argument("--write-s", help="also write s as a functor document")

    p = add("corpus", cmd_corpus, "seeded proposition suites")
    csub = p.add_subparsers(dest="action", required=True, metavar="ACTION")
    run = csub.add_parser("run", help="run one suite", description="run one suite",
                          parents=[common])
    run.add_argument("--suite", choices=SUITES, required=True)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--count", type=int, default=300)
    run.add_argument("--json", help="write the full report here")

    p = add("export-dot", cmd_export_dot, "Graphviz text for a category, functor or factorization")
    p.add_argument("file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_TRUE
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"fibrifier: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (FibrifierError, ValueError) as exc:
        print(f"fibrifier: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
