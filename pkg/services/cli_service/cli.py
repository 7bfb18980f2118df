"""
Command-line front end. Every command prints one JSON record (or a DOT
graph) on stdout; diagnostics go to stderr.

Exit codes: 0 definitive, 1 a verification suite reported failures,
2 usage or input error, 3 indeterminate verdict, 4 unfactored hom.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ValidationError

from services.classifier_service.classifier import classify
from services.classifier_service.emit import FORMATS, emit_graph
from services.classifier_service.search import SearchBound
from services.ivanov_service.ivanov import ivanov_word
from services.ivanov_service.suites import SUITES, run_suites
from services.mr_service.factorizer import DoubleHom, factor, factorization_record
from services.mr_service.sampling import separability_experiment
from services.shared import logs
from services.shared.config import config
from services.shared.errors import FreeGroupError, SearchExhaustedError
from services.shared.models import (
    AutEquivalenceRecord,
    HomRecord,
    IvanovWordRecord,
    MembershipRecord,
    OrbitRecord,
    PrimitivityRecord,
    VersionRecord,
)
from services.subgroup_service.stallings import build
from services.whitehead_service.orbits import (
    Orbit,
    aut_conjugacy_equivalent,
    in_proper_free_factor,
    minimize,
)
from services.words_service.parser import parse_word, parse_word_list
from services.words_service.words import SYMBOLS, exponent_sums

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3
EXIT_UNFACTORED = 4

logger = logs.get_logger(__name__)


def _print(record: BaseModel) -> None:
    sys.stdout.write(record.model_dump_json(indent=2, by_alias=True) + "\n")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def cmd_classify(args) -> int:
    w = parse_word(args.word)
    bound = SearchBound(depth=args.bound) if args.bound is not None else SearchBound()
    result, graph = classify(w, bound)
    # an indeterminate verdict has no graph to draw
    fmt = args.emit if graph is not None else "json"
    text = emit_graph(args.word, result, graph, fmt)
    if args.out:
        Path(args.out).write_text(text)
        logger.info(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK if result.definitive else EXIT_INDETERMINATE


def cmd_orbit_min(args) -> int:
    w = parse_word(args.word)
    minimal, chain = minimize(w)
    orbit = Orbit(w)
    _print(OrbitRecord(
        input=args.word,
        minimal=minimal.word().text,
        length=len(minimal),
        chain=chain.describe(),
        orbit_size=len(orbit),
        orbit=sorted(str(word) for word in orbit.words()),
    ))
    return EXIT_OK


def cmd_is_primitive(args) -> int:
    w = parse_word(args.word)
    minimal, chain = minimize(w)
    _print(PrimitivityRecord(
        input=args.word,
        primitive=len(minimal) == 1,
        in_proper_free_factor=in_proper_free_factor(w),
        minimal=minimal.word().text,
        chain=chain.describe(),
    ))
    return EXIT_OK


def cmd_aut_equiv(args) -> int:
    u, v = parse_word(args.first), parse_word(args.second)
    found = aut_conjugacy_equivalent(u, v)
    _print(AutEquivalenceRecord(
        first=args.first,
        second=args.second,
        equivalent=found is not None,
        inverted=found.inverted if found else None,
        chain=found.chain.describe() if found else None,
    ))
    return EXIT_OK


def cmd_membership(args) -> int:
    w = parse_word(args.word)
    generators = parse_word_list(args.subgroup)
    graph = build(generators, w.alphabet)
    member = graph.contains(w)
    rewritten, basis = None, None
    if args.rewrite:
        basis = {SYMBOLS[i]: u.text for i, u in enumerate(graph.basis())}
        if member:
            rewritten = graph.rewrite(w).text
    _print(MembershipRecord(
        word=args.word,
        subgroup=[g.text for g in generators],
        member=member,
        rank=graph.rank(),
        index=graph.index(),
        rewritten=rewritten,
        basis=basis,
    ))
    return EXIT_OK


def cmd_ivanov_emit(args) -> int:
    w = ivanov_word()
    _print(IvanovWordRecord(
        length=len(w),
        exponent_sums=list(exponent_sums(w)),
        word=w.compact() if args.compact else w.text,
    ))
    return EXIT_OK


def cmd_ivanov_verify(args) -> int:
    report = run_suites(args.suite, args.samples, args.seed, args.max_len)
    _print(report)
    return EXIT_OK if report.failures == 0 else EXIT_FAILURES


def cmd_mr_factor(args) -> int:
    try:
        record = HomRecord.model_validate_json(args.hom)
    except ValidationError as e:
        raise FreeGroupError(f"bad hom record: {e.errors()[0]['msg']}") from e
    h = DoubleHom.from_record(record)
    f = factor(h, k_bound=args.k_bound)
    _print(factorization_record(h, f))
    return EXIT_UNFACTORED if f.variant == "unfactored" else EXIT_OK


def cmd_mr_separability(args) -> int:
    report = separability_experiment(g=parse_word(args.g), samples=args.samples,
                                     seed=args.seed, max_len=args.max_len)
    _print(report)
    return EXIT_OK if report.separated == 0 else EXIT_FAILURES


def cmd_version(args) -> int:
    _print(VersionRecord(version=config.VERSION))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="run.py",
        description="JSJ classifier, Ivanov-word checks and MR factorizer for doubles of F2",
    )
    parser.add_argument("--log-level", default=None, type=str.upper,
                        choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="cyclic JSJ decomposition of the double along a word")
    p.add_argument("word")
    p.add_argument("--bound", type=_positive, default=None,
                   help=f"type II moves beyond the minimal orbit (default {config.JSJ_SEARCH_DEPTH})")
    p.add_argument("--emit", choices=FORMATS, default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("orbit-min", help="Whitehead-minimal form and minimal orbit")
    p.add_argument("word")
    p.set_defaults(handler=cmd_orbit_min)

    p = sub.add_parser("is-primitive", help="primitivity and free-factor membership")
    p.add_argument("word")
    p.set_defaults(handler=cmd_is_primitive)

    p = sub.add_parser("aut-equiv", help="are two words Aut-equivalent up to conjugacy")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(handler=cmd_aut_equiv)

    p = sub.add_parser("membership", help="Stallings membership test")
    p.add_argument("word")
    p.add_argument("--subgroup", required=True, help='comma-separated generators, e.g. "aaa,bb"')
    p.add_argument("--rewrite", action="store_true")
    p.set_defaults(handler=cmd_membership)

    ivanov = sub.add_parser("ivanov", help="the Ivanov word and its checks")
    ivanov_sub = ivanov.add_subparsers(dest="action", required=True)
    p = ivanov_sub.add_parser("emit")
    p.add_argument("--compact", action="store_true")
    p.set_defaults(handler=cmd_ivanov_emit)
    p = ivanov_sub.add_parser("verify")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--samples", type=_positive, default=config.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--max-len", type=_positive, default=None,
                   help="longest random image in the sampled suites (default: per suite)")
    p.set_defaults(handler=cmd_ivanov_verify)

    mr = sub.add_parser("mr", help="Makanin-Razborov factorizer")
    mr_sub = mr.add_subparsers(dest="action", required=True)
    p = mr_sub.add_parser("factor")
    p.add_argument("--hom", required=True, help='JSON object with keys "a1", "a2", "b1", "b2"')
    p.add_argument("--k-bound", type=_positive, default=config.MR_K_BOUND)
    p.set_defaults(handler=cmd_mr_factor)
    p = mr_sub.add_parser("separability")
    p.add_argument("--g", default="[a,b]", help="fixed element, a word in b1, b2 written over a, b")
    p.add_argument("--samples", type=_positive, default=config.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--max-len", type=_positive, default=config.MR_MAX_LEN)
    p.set_defaults(handler=cmd_mr_separability)

    p = sub.add_parser("version")
    p.set_defaults(handler=cmd_version)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logs.configure(args.log_level)
    try:
        return args.handler(args)
    except SearchExhaustedError as e:
        logger.error(str(e))
        return EXIT_INDETERMINATE
    except FreeGroupError as e:
        logger.error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
