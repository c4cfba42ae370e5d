"""Command-line front end.

Thin wrappers over the library: `bounds` precomputes a margin-bounds table
for a model, `certify` streams output vectors from stdin against a saved
table, `apply` runs the network itself on stdin vectors, and `serve` starts
the HTTP service. Vectors stream one per line so a session can certify many
outputs without re-reading the bounds file.
"""

from __future__ import annotations

import argparse
import sys
import time

from .certify import certify
from .lipschitz import gen_all_bounds
from .modelio import load_bounds, load_model, parse_vector_line, save_bounds
from .nn import apply_nn, argmax, model_digest
from .rational import ParseError, parse_decimal, rational_str
from .sqrt import DEFAULT_SQRT_CONFIG, SqrtConfig


def _sqrt_config(args: argparse.Namespace) -> SqrtConfig:
    err = (
        parse_decimal(args.sqrt_err)
        if args.sqrt_err is not None
        else DEFAULT_SQRT_CONFIG.err_tolerance
    )
    iters = (
        args.sqrt_max_iters
        if args.sqrt_max_iters is not None
        else DEFAULT_SQRT_CONFIG.max_iterations
    )
    return SqrtConfig(err_tolerance=err, max_iterations=iters)


def _cmd_bounds(args: argparse.Namespace) -> int:
    net = load_model(args.model)
    cfg = _sqrt_config(args)
    start = time.perf_counter()
    bounds = gen_all_bounds(net, args.gram_iterations, cfg)
    elapsed = time.perf_counter() - start
    save_bounds(bounds, args.out, cfg)
    pairs = bounds.dim * (bounds.dim - 1) // 2
    print(
        f"wrote {pairs} pair bounds for {bounds.dim} classes to {args.out} "
        f"in {elapsed:.3f}s (gram iterations: {args.gram_iterations})"
    )
    return 0


def _cmd_certify(args: argparse.Namespace) -> int:
    bounds = load_bounds(args.bounds)
    epsilon = parse_decimal(args.epsilon)
    for line in sys.stdin:
        if line.strip() == "":
            continue
        result = certify(parse_vector_line(line), epsilon, bounds)
        if result.certified:
            print("CERTIFIED", flush=True)
        else:
            print(f"REJECTED {result.failing_index}", flush=True)
    return 0


def _cmd_apply(args: argparse.Namespace) -> int:
    net = load_model(args.model)
    for line in sys.stdin:
        if line.strip() == "":
            continue
        out = apply_nn(net, parse_vector_line(line))
        rendered = " ".join(rational_str(x) for x in out)
        print(f"{rendered} | argmax {argmax(out)}", flush=True)
    return 0


def _cmd_digest(args: argparse.Namespace) -> int:
    print(model_digest(load_model(args.model)))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("gramcert.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gramcert",
        description=(
            "Sound l2 robustness certification for dense ReLU networks "
            "over exact rational arithmetic."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bounds = sub.add_parser(
        "bounds", help="precompute the margin-bounds table for a model"
    )
    bounds.add_argument("--model", required=True, help="model text file")
    bounds.add_argument(
        "--gram-iterations",
        type=int,
        required=True,
        help="gram iterations per hidden layer (0 = plain Frobenius bound)",
    )
    bounds.add_argument(
        "--sqrt-err",
        default=None,
        help="sqrt convergence tolerance as a decimal literal (default 1e-11)",
    )
    bounds.add_argument(
        "--sqrt-max-iters",
        type=int,
        default=None,
        help="sqrt iteration budget (default 2000000)",
    )
    bounds.add_argument("--out", required=True, help="bounds file to write")
    bounds.set_defaults(func=_cmd_bounds)

    cert = sub.add_parser(
        "certify",
        help="certify output vectors from stdin against a saved bounds table",
    )
    cert.add_argument("--bounds", required=True, help="bounds file")
    cert.add_argument(
        "--epsilon", required=True, help="perturbation radius as a decimal literal"
    )
    cert.set_defaults(func=_cmd_certify)

    apply_cmd = sub.add_parser(
        "apply", help="run the network on input vectors from stdin"
    )
    apply_cmd.add_argument("--model", required=True, help="model text file")
    apply_cmd.set_defaults(func=_cmd_apply)

    digest = sub.add_parser("digest", help="print a model's canonical digest")
    digest.add_argument("--model", required=True, help="model text file")
    digest.set_defaults(func=_cmd_digest)

    serve = sub.add_parser("serve", help="start the HTTP certification service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
