"""Command-line entry points: train a restorer checkpoint, then predict."""

from __future__ import annotations

import argparse
import sys

from .config import full_config, toy_config
from .predict import predict, write_predictions
from .train import load_checkpoint, load_pairs, save_checkpoint, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revowel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a vowel-restoration checkpoint")
    p.add_argument("--pairs", required=True, help="pair TSV (source<TAB>target)")
    p.add_argument("--checkpoint", required=True, help="checkpoint directory to write")
    p.add_argument("--preset", choices=["test", "full"], default="test",
                   help="'full' is the large configuration and very slow on CPU")
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--limit", type=int, default=None, help="train on at most this many pairs")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="restore sources from a pair TSV")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--pairs", required=True, help="pair TSV; only sources are read")
    p.add_argument("--output", required=True, help="prediction JSON-lines to write")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_predict)

    return parser


def cmd_train(args: argparse.Namespace) -> int:
    overrides = {}
    if args.epochs is not None:
        overrides["epochs"] = args.epochs
    cfg = toy_config(**overrides) if args.preset == "test" else full_config(**overrides)
    pairs = load_pairs(args.pairs)
    if args.limit is not None:
        pairs = pairs[: args.limit]
    result = train(cfg, pairs, seed=args.seed)
    save_checkpoint(args.checkpoint, cfg, result)
    final = result.history[-1] if result.history else None
    if final:
        print(
            f"trained {cfg.epochs} epoch(s) on {len(pairs)} pairs: "
            f"loss {final['loss']:.4f}, token accuracy {final['token_accuracy']:.4f}"
        )
    else:
        print(f"saved initialized checkpoint (0 epochs) for {len(pairs)} pairs")
    if result.truncated_sequences:
        print(f"warning: truncated {result.truncated_sequences} over-length sequence(s)")
    print(f"checkpoint -> {args.checkpoint}")
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    model, tokenizer, manifest = load_checkpoint(args.checkpoint)
    pairs = load_pairs(args.pairs)
    if args.limit is not None:
        pairs = pairs[: args.limit]
    sources = [p.source for p in pairs]
    predictions, unknown = predict(
        model, tokenizer, sources, max_len=manifest["config"]["max_len"]
    )
    write_predictions(predictions, args.output)
    print(f"wrote {len(predictions)} prediction(s) -> {args.output}")
    if unknown:
        print(f"warning: {unknown} character(s) were unknown to the tokenizer")
    return 0


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
