"""Command-line front end.

Exit codes: 0 success, 1 usage/config error, 2 a mathematical counterexample
(a verification failed inside the window).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import config as cfgmod
from .affine import calculus
from .affine.rings import format_prime_set
from .errors import DimensionTooLarge, TorfError, WindowTooSmall
from .exact.field import parse_field
from .p1 import sheaf as ps
from .p1.families import NOT_CLASSIFIED, classify_window, torsion_pair_table
from .p1.points import GenericPoint
from .subcat import engine
from .subcat.lattice import lattice_dot
from .subcat.universe import Universe

EXIT_OK, EXIT_CONFIG, EXIT_COUNTEREXAMPLE = 0, 1, 2

VERIFIERS = {
    "takahashi": engine.verify_takahashi,
    "gabriel-serre": engine.verify_gabriel_serre,
    "ie-torf": engine.verify_ie_equals_torf,
}


def _yn(b):
    return "yes" if b else "no"


def _table(rows):
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _affine_row(M):
    ring = M.ring
    try:
        cm = _yn(calculus.is_cm_dim_le1(M))
        mcm = _yn(calculus.is_maximal_cm_dim_le1(M))
    except DimensionTooLarge:
        cm = mcm = "DimensionTooLarge"
    poset = ring.spectral_poset(calculus.ass(M) | ring.ass_ring())
    return [str(M), format_prime_set(calculus.ass(M)), format_prime_set(calculus.min_ass(M)),
            format_prime_set(calculus.assh(M)), format_prime_set(calculus.supp(M, poset)),
            _yn(calculus.is_torsionfree(M)), _yn(calculus.is_pure(M)),
            _yn(calculus.is_maximal_pure(M)), cm, mcm]


def _p1_row(F, poset):
    ass = ps.ass_p1(F)
    mins = poset.maximal(ass)
    top = max((x.dim for x in ass), default=None)
    assh = frozenset(x for x in ass if x.dim == top)
    supp = poset.down(ass)
    tf = all(isinstance(x, GenericPoint) for x in ass)
    return [str(F), format_prime_set(ass), format_prime_set(mins), format_prime_set(assh),
            format_prime_set(supp), _yn(tf), _yn(assh == mins == ass), _yn(tf), _yn(mins == ass),
            _yn(tf)]


HEADER = ["object", "Ass", "Min", "Assh", "Supp", "torsionfree", "pure", "maximal-pure",
          "CM(dim<=1)", "MCM(dim<=1)"]


def cmd_ass(cfg) -> tuple:
    objs = cfg.get("objects")
    if not objs:
        raise cfgmod.ConfigError("'ass' needs a non-empty 'objects' list")
    rows = [HEADER]
    if cfg.is_p1:
        poset = cfg.backend.poset(())
        for text in objs:
            rows.append(_p1_row(cfgmod.parse_object(cfg, text), poset))
    else:
        for text in objs:
            rows.append(_affine_row(cfgmod.parse_object(cfg, text)))
    return _table(rows), EXIT_OK


def _generator_sets(cfg):
    if cfg.get("generator_sets") is not None:
        sets = cfg.get("generator_sets")
    elif cfg.get("generators") is not None:
        sets = [cfg.get("generators")]
    else:
        raise cfgmod.ConfigError("'classify' needs 'generators' or 'generator_sets'")
    return [[cfgmod.parse_object(cfg, s) for s in gens] for gens in sets]


def cmd_classify(cfg) -> tuple:
    U = Universe(cfg.backend)
    lines, code = [], EXIT_OK
    for gens in _generator_sets(cfg):
        name = "{" + ", ".join(str(g) for g in gens) + "}"
        if cfg.is_p1:
            label = classify_window(U, gens).label
        else:
            C = engine.closure_fixpoint(U, gens, {engine.SUB, engine.EXT})
            desc = engine.AssClass(engine.ass_of(U, gens))
            label = desc.label() if engine.members(U, desc) == C else NOT_CLASSIFIED
        if label == NOT_CLASSIFIED:
            code = EXIT_COUNTEREXAMPLE
        lines.append(f"{name} -> {label}")
    return "\n".join(lines) + "\n", code


def _dump(report):
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def cmd_verify(cfg, theorem) -> tuple:
    U = Universe(cfg.backend)
    if theorem == "serre-in-torf":
        report, _ = engine.verify_serre_in_torf(U, cfgmod.resolve_phi(cfg, U), cfg.threads)
    else:
        report = VERIFIERS[theorem](U, cfgmod.resolve_pool(cfg, U), cfg.threads)
    return _dump(report), EXIT_OK if report["pass"] else EXIT_COUNTEREXAMPLE


def cmd_lattice(cfg) -> tuple:
    U = Universe(cfg.backend)
    report, lattice = engine.verify_serre_in_torf(U, cfgmod.resolve_phi(cfg, U), cfg.threads)
    return lattice_dot(lattice, "serre_lattice"), EXIT_OK if report["pass"] else EXIT_COUNTEREXAMPLE


def cmd_p1(args) -> tuple:
    k = parse_field(args.field)
    if args.p1_command == "pairs":
        return torsion_pair_table(), EXIT_OK
    F = ps.parse_sheaf(args.sheaf, k)
    if args.p1_command == "decompose":
        tor, vect = ps.decompose(F)
        return f"tor: {tor}\nvect: {vect}\n", EXIT_OK
    G = ps.parse_sheaf(args.other, k)
    fn = ps.hom_dim if args.p1_command == "hom" else ps.ext1_dim
    return f"{fn(F, G)}\n", EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: config or 1)")
    common.add_argument("-o", "--output", default=None, help="write the result to this file")
    common.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override a config entry, e.g. window.max_exp=3")

    parser = argparse.ArgumentParser(prog="torfclass",
                                     description="Classify and verify subcategories of modules and sheaves.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("ass", parents=[common], help="Ass/Min/Assh/Supp table with predicates")
    p.add_argument("config")
    p = sub.add_parser("classify", parents=[common], help="identify generated torsionfree classes")
    p.add_argument("config")
    p = sub.add_parser("verify", parents=[common], help="verify a classification in-window")
    p.add_argument("theorem", choices=cfgmod.THEOREMS)
    p.add_argument("config")
    p = sub.add_parser("lattice", parents=[common], help="DOT diagram of the Serre lattice")
    p.add_argument("config")
    p = sub.add_parser("p1", parents=[common], help="sheaf calculus on P1")
    p1 = p.add_subparsers(dest="p1_command", required=True)
    for name in ("hom", "ext"):
        q = p1.add_parser(name, parents=[common])
        q.add_argument("sheaf")
        q.add_argument("other")
        q.add_argument("--field", default="GF(2)")
    q = p1.add_parser("decompose", parents=[common])
    q.add_argument("sheaf")
    q.add_argument("--field", default="GF(2)")
    q = p1.add_parser("pairs", parents=[common], help="torsion pairs of coh P1 (documentation)")
    q.add_argument("--field", default="GF(2)")
    return parser


def run(argv=None) -> tuple:
    """Return ``(text, exit_code, output_path)`` without touching stdout."""
    args = build_parser().parse_args(argv)
    if args.command == "p1":
        text, code = cmd_p1(args)
        return text, code, args.output
    cfg = cfgmod.load_config(args.config, overrides=args.overrides)
    if args.threads is not None:
        if args.threads < 1:
            raise cfgmod.ConfigError("--threads must be >= 1")
        cfg.threads = args.threads
    out = args.output or cfg.get("output")
    if args.command == "ass":
        text, code = cmd_ass(cfg)
    elif args.command == "classify":
        text, code = cmd_classify(cfg)
    elif args.command == "verify":
        text, code = cmd_verify(cfg, args.theorem)
    else:
        text, code = cmd_lattice(cfg)
    return text, code, out


def main(argv=None) -> int:
    try:
        text, code, out = run(argv)
    except WindowTooSmall as exc:
        print(f"error: window too small: {exc}\nhint: enlarge the window (e.g. --set "
              "window.twist_min=...) or shrink the generators", file=sys.stderr)
        return EXIT_CONFIG
    except TorfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
