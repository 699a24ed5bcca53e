"""Command line front end.

Subcommands map onto the decision procedures plus two small utilities:

    f2aut positivity WORD
    f2aut bte U V
    f2aut fixgroup GEN [GEN ...]
    f2aut apply MAP WORD
    f2aut enumerate {C1,C2} MAX_LEN [WORD ...]
    f2aut --batch FILE

Exit code 0 means the question was decided (either way), 2 means the
search was inconclusive under the configured caps, and 1 is a usage or
input error. --json emits a single JSON object with sorted keys; batch
mode reads one command line per input line and emits one JSON object per
line regardless of --json.
"""

import argparse
import json
import shlex
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import decide, oracle
from .autos import named, parse_automorphism, apply as apply_auto
from .chains import Chain, ImageSizeError, enumerate_chains
from .subgroups import build
from .words import ParseError, Word, cyclic_reduce, parse_word


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class RunConfig:
    """One parsed invocation: the subcommand, its inputs, and the knobs."""

    __slots__ = ("command", "options", "json_output", "batch_path")

    def __init__(self, command: Optional[str], options: argparse.Namespace,
                 json_output: bool, batch_path: Optional[str]):
        self.command = command
        self.options = options
        self.json_output = json_output
        self.batch_path = batch_path


def _build_parser() -> _Parser:
    parser = _Parser(prog="f2aut", description="decision procedures for rank-2 free group automorphisms")
    parser.add_argument("--batch", metavar="FILE", help="read one command per line, emit JSON lines")
    sub = parser.add_subparsers(dest="command")

    def common(p, workers=True):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        if workers:
            p.add_argument("--workers", type=int, default=1, help="partition top-level subtrees across N workers")
            p.add_argument("--max-chain-len", type=int, default=None, help="override the chain length bound")

    p = sub.add_parser("positivity", help="can some automorphism make the word positive?")
    p.add_argument("word")
    p.add_argument("--verify", type=int, metavar="DEPTH", default=None,
                   help="cross-check against the brute-force catalog at this depth")
    common(p)

    p = sub.add_parser("bte", help="do the two words stay within a common length-ratio band?")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--verify", type=int, metavar="DEPTH", default=None,
                   help="sample catalog ratios and test them against the bounds")
    common(p)

    p = sub.add_parser("fixgroup", help="is the subgroup exactly a fixed-point set?")
    p.add_argument("generators", nargs="+", metavar="GEN")
    p.add_argument("--verification-depth", type=int, default=decide.DEFAULT_VERIFICATION_DEPTH)
    p.add_argument("--delta-step-cap", type=int, default=decide.DEFAULT_DELTA_STEP_CAP)
    p.add_argument("--word-length-cap", type=int, default=None)
    common(p)

    p = sub.add_parser("apply", help="apply a named map, a chain, or an explicit map to a word")
    p.add_argument("map", help="a name (sigma, tau, ...), chain steps like stT, or 'a -> w; b -> w'")
    p.add_argument("word")
    common(p, workers=False)

    p = sub.add_parser("enumerate", help="list chains of one polarity up to a length")
    p.add_argument("polarity", choices=("C1", "C2"))
    p.add_argument("max_len", type=int)
    p.add_argument("words", nargs="*", help="track the images of these words")
    common(p, workers=False)

    return parser


def parse_args(argv: List[str]) -> RunConfig:
    args = _build_parser().parse_args(argv)
    if args.batch and args.command:
        raise UsageError("--batch replaces the subcommand")
    if not args.batch and not args.command:
        raise UsageError("a subcommand is required (or --batch FILE)")
    return RunConfig(args.command, args, getattr(args, "json", False), args.batch)


def _chain_dict(c: Chain) -> dict:
    return {"polarity": c.polarity, "steps": c.render_steps()}


def _chain_text(c: Chain) -> str:
    return "%s:%s" % (c.polarity, c.render_steps())


def _frac(x: Fraction) -> str:
    return str(x)


def _stats(chains_examined: int, started: float) -> dict:
    return {
        "chains_examined": chains_examined,
        "elapsed_ms": int((time.monotonic() - started) * 1000),
    }


def _emit(payload: dict, json_output: bool, lines: List[str], out) -> None:
    if json_output:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _run_positivity(cfg: RunConfig, out) -> int:
    ns = cfg.options
    started = time.monotonic()
    u = parse_word(ns.word)
    report = decide.potentially_positive(u, max_chain_len=ns.max_chain_len, workers=ns.workers)
    payload = {
        "command": "positivity",
        "input": {"word": u.render()},
        "answer": report.answer,
        "witness": None,
        "stats": _stats(report.chains_examined, started),
    }
    lines = ["answer: %s" % ("yes" if report.answer else "no")]
    if report.witness is not None:
        w = report.witness
        payload["witness"] = {
            "chain": _chain_dict(w.chain),
            "w1_map": w.w1_map.render(),
            "positive_image": w.positive_image.render(),
        }
        lines += [
            "chain: %s" % _chain_text(w.chain),
            "w1_map: %s" % w.w1_map.render(),
            "positive image: %s" % w.positive_image.render(),
        ]
    lines.append("chains examined: %d" % report.chains_examined)
    if ns.verify is not None:
        check = oracle.oracle_potentially_positive(u, ns.verify)
        consistent = not (check.answer == "yes" and not report.answer)
        payload["oracle"] = {
            "answer": check.answer,
            "depth": ns.verify,
            "consistent": consistent,
        }
        lines.append("oracle (depth %d): %s%s" % (
            ns.verify, check.answer, "" if consistent else " (CONTRADICTION)"))
    _emit(payload, cfg.json_output, lines, out)
    return 0


def _run_bte(cfg: RunConfig, out) -> int:
    ns = cfg.options
    started = time.monotonic()
    u = parse_word(ns.u)
    v = parse_word(ns.v)
    report = decide.bounded_translation_equivalent(
        u, v, max_chain_len=ns.max_chain_len, workers=ns.workers)
    payload = {
        "command": "bte",
        "input": {"u": u.render(), "v": v.render()},
        "answer": report.answer,
        "bounds": None,
        "delta_set_size": report.delta_set_size,
        "failing_condition": None,
        "stats": _stats(report.chains_examined, started),
    }
    lines = ["answer: %s" % ("yes" if report.answer else "no")]
    if report.answer:
        lo, hi = report.bounds
        payload["bounds"] = {"min": _frac(lo), "max": _frac(hi)}
        lines += [
            "bounds: %s .. %s" % (_frac(lo), _frac(hi)),
            "delta set size: %d" % report.delta_set_size,
        ]
    else:
        fc = report.failing_condition
        payload["failing_condition"] = {
            "chain": _chain_dict(fc.chain),
            "step": fc.step,
            "k": fc.k,
            "u_lengths": list(fc.u_lengths),
            "v_lengths": list(fc.v_lengths),
        }
        lines += [
            "chain: %s" % _chain_text(fc.chain),
            "step: %s" % fc.step,
            "k: %d" % fc.k,
            "u lengths at k, k+1: %d, %d" % fc.u_lengths,
            "v lengths at k, k+1: %d, %d" % fc.v_lengths,
        ]
    lines.append("chains examined: %d" % report.chains_examined)
    if ns.verify is not None:
        ratios = oracle.sample_ratios(u, v, ns.verify)
        within = None
        if report.answer:
            lo, hi = report.bounds
            within = all(lo <= r <= hi for r in ratios)
        payload["oracle"] = {
            "depth": ns.verify,
            "sample_size": len(ratios),
            "within_bounds": within,
        }
        lines.append("oracle (depth %d): %d ratios sampled%s" % (
            ns.verify, len(ratios),
            "" if within is None else (", all within bounds" if within else ", OUT OF BOUNDS")))
    _emit(payload, cfg.json_output, lines, out)
    return 0


def _run_fixgroup(cfg: RunConfig, out) -> int:
    ns = cfg.options
    started = time.monotonic()
    gens = [parse_word(g) for g in ns.generators]
    H = build(gens)
    report = decide.fixed_point_group(
        H,
        verification_depth=ns.verification_depth,
        delta_step_cap=ns.delta_step_cap,
        word_length_cap=ns.word_length_cap,
        max_chain_len=ns.max_chain_len,
        workers=ns.workers,
    )
    payload = {
        "command": "fixgroup",
        "input": {"generators": [g.render() for g in gens]},
        "answer": report.answer,
        "witness": None,
        "escaped_fixed_word": None,
        "verification_depth": report.verification_depth,
        "stats": _stats(report.chains_examined, started),
    }
    lines = ["answer: %s" % report.answer]
    if report.witness is not None:
        w = report.witness
        payload["witness"] = {
            "w1_map": w.w1_map.render(),
            "delta_composition": list(w.delta_composition),
            "chain": _chain_dict(w.chain),
        }
        lines += [
            "w1_map: %s" % w.w1_map.render(),
            "delta composition: %s" % (" ".join(w.delta_composition) or "(empty)"),
            "chain: %s" % _chain_text(w.chain),
        ]
    if report.escaped_fixed_word is not None:
        payload["escaped_fixed_word"] = report.escaped_fixed_word.render()
        lines.append("escaped fixed word: %s" % report.escaped_fixed_word.render())
    lines.append("verification depth: %d" % report.verification_depth)
    _emit(payload, cfg.json_output, lines, out)
    return 2 if report.answer == "inconclusive" else 0


def _parse_map(text: str):
    """A named map, a chain step string, or an explicit two-image map."""
    if "->" in text:
        return parse_automorphism(text)
    try:
        return named(text)
    except ValueError:
        pass
    if all(ch in "stST" for ch in text):
        polarity = "C2" if text[:1] in ("S", "T") else "C1"
        names = {"s": "sigma", "t": "tau", "S": "sigma_inv", "T": "tau_inv"}
        return Chain(polarity, tuple(names[ch] for ch in text))
    raise UsageError("cannot interpret map %r" % text)


def _run_apply(cfg: RunConfig, out) -> int:
    ns = cfg.options
    started = time.monotonic()
    w = parse_word(ns.word)
    target = _parse_map(ns.map)
    if isinstance(target, Chain):
        from .chains import apply_chain

        result = apply_chain(target, w)
    else:
        result = apply_auto(target, w)
    payload = {
        "command": "apply",
        "input": {"map": ns.map, "word": w.render()},
        "result": result.render(),
        "stats": _stats(0, started),
    }
    _emit(payload, cfg.json_output, [result.render()], out)
    return 0


def _run_enumerate(cfg: RunConfig, out) -> int:
    ns = cfg.options
    started = time.monotonic()
    words = [parse_word(t) for t in ns.words]
    inputs = [cyclic_reduce(w)[0] for w in words]
    rows = []

    def visitor(v):
        row = {"polarity": v.chain.polarity, "steps": v.chain.render_steps(), "rank": v.chain.rank()}
        if inputs:
            row["images"] = [img.render() for img in v.images]
        rows.append(row)
        return None

    summary = enumerate_chains(ns.polarity, ns.max_len, inputs, visitor)
    payload = {
        "command": "enumerate",
        "input": {"polarity": ns.polarity, "max_len": ns.max_len,
                  "words": [w.render() for w in words]},
        "chains": rows,
        "stats": _stats(summary.visited, started),
    }
    lines = []
    for row in rows:
        text = "%s:%s" % (row["polarity"], row["steps"])
        if inputs:
            text += "  ->  " + ", ".join(row["images"])
        lines.append(text)
    _emit(payload, cfg.json_output, lines, out)
    return 0


_RUNNERS = {
    "positivity": _run_positivity,
    "bte": _run_bte,
    "fixgroup": _run_fixgroup,
    "apply": _run_apply,
    "enumerate": _run_enumerate,
}


def _run_single(cfg: RunConfig, out) -> int:
    return _RUNNERS[cfg.command](cfg, out)


def _run_batch(path: str, out) -> int:
    worst = 0
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                cfg = parse_args(shlex.split(line))
                if cfg.batch_path:
                    raise UsageError("nested --batch is not allowed")
                cfg.json_output = True
                code = _run_single(cfg, out)
            except (UsageError, ParseError, ValueError, ImageSizeError,
                    decide.ContractViolationError, oracle.CatalogDepthError) as exc:
                out.write(json.dumps({"error": str(exc)}, sort_keys=True) + "\n")
                code = 1
            if code == 1:
                worst = 1
            elif code == 2 and worst == 0:
                worst = 2
    return worst


def run(argv: List[str], out=None) -> int:
    """Execute one invocation and return the exit code."""
    out = sys.stdout if out is None else out
    try:
        cfg = parse_args(argv)
        if cfg.batch_path:
            return _run_batch(cfg.batch_path, out)
        return _run_single(cfg, out)
    except SystemExit as exc:  # argparse --help
        code = exc.code
        return 0 if code is None else int(code)
    except (UsageError, ParseError, ValueError, ImageSizeError,
            decide.ContractViolationError, oracle.CatalogDepthError) as exc:
        sys.stderr.write("f2aut: error: %s\n" % exc)
        return 1
    except OSError as exc:
        sys.stderr.write("f2aut: error: %s\n" % exc)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
