"""Command line front end.

Exit status: 0 on success, 2 for unparsable input, 3 for input that parses
but makes no sense (dimension mismatches, cutoffs over the cap, ...).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .braiding import evaluate_configurations, evaluate_recursive, evaluate_single_pass, is_eigenword
from .coalgebra import braiding_functional, functional_from_symbol, hopf_evaluate
from .descent import descending_invariants
from .errors import ParseError, SemanticError
from .lie import bracketing_text, lie_coordinates, lyndon_basis
from .membership import depth_from_basis
from .symbols import parse_symbol
from .tensor import bch_of_word
from .words import Alphabet, Presentation, format_word, load_presentation, parse_word

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC = 0, 2, 3
DEFAULT_CAP = 8
BRAIDING_METHODS = ("recursive", "singlepass", "config")
METHODS = BRAIDING_METHODS + ("bch", "linking", "all")


def rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def weight_cap() -> int:
    raw = os.environ.get("BRAIDLINK_MAX_WEIGHT", str(DEFAULT_CAP))
    try:
        cap = int(raw)
    except ValueError:
        raise ParseError(f"BRAIDLINK_MAX_WEIGHT must be an integer, got {raw!r}") from None
    if cap < 1:
        raise SemanticError("BRAIDLINK_MAX_WEIGHT must be at least 1")
    return cap


def checked_weight(K: int) -> int:
    if K < 1:
        raise SemanticError(f"max weight must be at least 1, got {K}")
    cap = weight_cap()
    if K > cap:
        raise SemanticError(f"max weight {K} exceeds the cap {cap} (BRAIDLINK_MAX_WEIGHT)")
    return K


def _presentation(args) -> Presentation:
    if getattr(args, "presentation", None):
        try:
            return load_presentation(args.presentation)
        except OSError as exc:
            raise ParseError(f"cannot read presentation: {exc}") from None
    if getattr(args, "alphabet", None):
        return Presentation(Alphabet.from_text(args.alphabet))
    raise ParseError("give --alphabet or --presentation")


def cmd_eval(args) -> dict:
    alphabet = _presentation(args).alphabet
    sigma = parse_symbol(args.symbol, alphabet)
    w = parse_word(args.word, alphabet)
    methods = METHODS[:-1] if args.method == "all" else (args.method,)
    K = checked_weight(args.max_weight or max(sigma.weight, 1))
    values: dict[str, Fraction] = {}
    for method in methods:
        if method == "recursive":
            values[method] = evaluate_recursive(sigma, w)
        elif method == "singlepass":
            values[method] = evaluate_single_pass(sigma, w)
        elif method == "config":
            values[method] = evaluate_configurations(sigma, w)
        elif method == "bch":
            values[method] = hopf_evaluate(functional_from_symbol(sigma, cutoff=K), w)
        else:
            values[method] = hopf_evaluate(braiding_functional(sigma, cutoff=K), w)
    braiding = {values[m] for m in BRAIDING_METHODS if m in values}
    if len(braiding) > 1:
        raise AssertionError(f"braiding evaluators disagree: {values}")
    return {
        "symbol": sigma.format(alphabet),
        "word": format_word(w, alphabet),
        "cutoff": K,
        "values": {m: rational(v) for m, v in values.items()},
        "agreement": len(set(values.values())) == 1,
        "eigenword": is_eigenword(sigma, w),
    }


def cmd_invariants(args) -> dict:
    P = _presentation(args)
    K = checked_weight(args.max_weight)
    B = descending_invariants(P, K)
    weights = {}
    for n in range(1, K + 1):
        entries = []
        for phi in B.new_at(n):
            entry = {"coordinates": phi.to_json(P.alphabet)}
            if args.symbols:
                entry["symbol"] = B.symbol(phi).format(P.alphabet)
            entries.append(entry)
        weights[str(n)] = entries
    return {
        "presentation": P.to_json(),
        "cutoff": K,
        "dimensions": list(B.dimensions()),
        "cumulative_dimensions": list(B.cumulative_dimensions()),
        "weights": weights,
    }


def cmd_depth(args) -> dict:
    P = _presentation(args)
    K = checked_weight(args.max_weight)
    w = parse_word(args.word, P.alphabet)
    B = descending_invariants(P, K)
    report = depth_from_basis(w, B)
    symbol = B.symbol(report.witness) if report.witness is not None else None
    return report.to_json(symbol)


def cmd_bch(args) -> dict:
    alphabet = _presentation(args).alphabet
    K = checked_weight(args.max_weight)
    w = parse_word(args.word, alphabet)
    t = bch_of_word(w, K)
    lie = lie_coordinates(t, m=len(alphabet), check=False)
    return {
        "word": format_word(w, alphabet),
        "cutoff": K,
        "expansion": t.format(alphabet.names),
        "lie": {
            bracketing_text(b, alphabet.names): rational(c)
            for b, c in sorted(lie.coords.items(), key=lambda kv: (len(kv[0]), kv[0]))
        },
    }


def cmd_basis(args) -> dict:
    alphabet = _presentation(args).alphabet
    K = checked_weight(args.max_weight)
    basis = lyndon_basis(len(alphabet), K)
    return {
        "generators": list(alphabet.names),
        "cutoff": K,
        "dimensions": [basis.dimension(n) for n in range(1, K + 1)],
        "weights": {
            str(n): [
                {"word": "".join(alphabet.names[i] for i in b), "bracket": bracketing_text(b, alphabet.names)}
                for b in basis.by_weight[n]
            ]
            for n in range(1, K + 1)
        },
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braidlink", description="Letter-braiding invariants of free group words.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, word=False, weight_default=None):
        p.add_argument("--alphabet", help="generator names, e.g. a,b,c")
        p.add_argument("--presentation", help="path to a presentation JSON file")
        if word:
            p.add_argument("--word", required=True)
        p.add_argument("--max-weight", type=int, default=weight_default)
        p.add_argument("--output", help="write JSON here instead of standard output")

    p = sub.add_parser("eval", help="evaluate a braiding symbol on a word")
    common(p, word=True)
    p.add_argument("--symbol", required=True)
    p.add_argument("--method", choices=METHODS, default="singlepass")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("invariants", help="descending invariants of a presentation")
    common(p, weight_default=3)
    p.add_argument("--symbols", action="store_true", help="include symbol realisations")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("depth", help="lower central series depth of a word")
    common(p, word=True, weight_default=4)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("bch", help="truncated logarithm of a word")
    common(p, word=True, weight_default=3)
    p.set_defaults(func=cmd_bch)

    p = sub.add_parser("basis", help="Lyndon basis through the cutoff")
    common(p, weight_default=3)
    p.set_defaults(func=cmd_basis)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except ParseError as exc:
        print(f"braidlink: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SemanticError, ValueError) as exc:
        print(f"braidlink: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    text = json.dumps(result, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
