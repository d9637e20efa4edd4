"""Command-line interface: ``whmetric <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error
(bad flags, malformed block strings or code files).  Errors print one line
``<ErrorName>: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Callable, Sequence

from whmetric import balls, bounds, channel, code as codemod, constructions
from whmetric.errors import DecodeFailure, InvalidBlockStructure, MalformedCodeFile, WHMetricError
from whmetric.field import Field
from whmetric.metric import BlockStructure, optimal_scalings

FIGURE_BLOCKS = "7:1,7:2"
FIGURE_FILES = {2: ("fig1a_q2.csv", "binary"), 7: ("fig1b_q7.csv", "mds")}
FIGURE_CONSTRUCTION_D = 5


class UsageError(Exception):
    pass


# -- parsing helpers ----------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive), ``"a,b,c"`` or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..")
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"malformed range {text!r}") from exc


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"malformed list {text!r}") from exc


def parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"malformed integer list {text!r}") from exc


def alphabet_size(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        q = 0
    if q < 2:
        raise argparse.ArgumentTypeError(f"alphabet size must be an integer >= 2, got {text!r}")
    return q


def write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        os.unlink(tmp)
        raise


def _enumerator_json(enum: dict) -> list[dict]:
    return [{"t_weight": list(k), "count": v} for k, v in enum.items()]


# -- subcommands ------------------------------------------------------------


def cmd_bounds(args: argparse.Namespace) -> str:
    bs = BlockStructure.parse(args.blocks)
    rows = bounds.bounds_table(args.q, bs, parse_range(args.d))
    if args.format == "json":
        return json.dumps([r.as_dict() for r in rows], indent=2) + "\n"
    return "\n".join([bounds.CSV_HEADER] + [r.csv_row() for r in rows]) + "\n"


def cmd_ball(args: argparse.Namespace) -> str:
    bs = BlockStructure.parse(args.blocks)
    if args.per_sphere:
        sizes = balls.sphere_sizes(args.q, bs, args.radius)
        return "".join(f"{s},{c}\n" for s, c in enumerate(sizes))
    return f"{balls.ball_size(args.q, bs, args.radius)}\n"


def cmd_min_distance(args: argparse.Namespace) -> str:
    c = codemod.load_code(args.code)
    d, witness = codemod.min_weight_codeword(c, args.method)
    if args.witness:
        return f"{d}\n{','.join(str(int(x)) for x in witness)}\n"
    return f"{d}\n"


def cmd_tau(args: argparse.Namespace) -> str:
    c = codemod.load_code(args.code)
    return f"{codemod.tau_oracle(c) if args.oracle else codemod.tau(c)}\n"


def cmd_enumerator(args: argparse.Namespace) -> str:
    c = codemod.load_code(args.code)
    return json.dumps(_enumerator_json(codemod.t_weight_enumerator(c))) + "\n"


def cmd_dual(args: argparse.Namespace) -> str:
    c = codemod.load_code(args.code)
    if args.as_code:
        return json.dumps(codemod.code_to_dict(codemod.dual_code(c))) + "\n"
    enum = codemod.t_weight_enumerator(c)
    dual = bounds.macwilliams_transform(enum, c.q, c.bs, c.size)
    return json.dumps(_enumerator_json(dual)) + "\n"


def cmd_construct(args: argparse.Namespace) -> str:
    cc = constructions.construction1(Field(args.q), args.n1, args.n2, args.family)
    return json.dumps(cc.to_dict()) + "\n"


def cmd_decode(args: argparse.Namespace) -> str:
    data = codemod.read_json(args.code)
    cc = constructions.constructed_from_dict(data)
    decoded = constructions.construction1_decode(cc, parse_ints(args.received))
    return ",".join(str(int(x)) for x in decoded) + "\n"


_DECODERS = {"ml": "ml", "wh-real": "wh_real", "wh-int": "wh_integer"}


def cmd_simulate(args: argparse.Namespace) -> str:
    c = codemod.load_code(args.code)
    spec = channel.ChannelSpec(tuple(parse_floats(args.rho)), c.bs, c.q)
    weights = parse_ints(args.weights) if args.weights else None
    stats = channel.simulate(c, spec, _DECODERS[args.decoder], args.trials, args.seed, weights)
    return json.dumps(stats.as_dict()) + "\n"


def cmd_coverage(args: argparse.Namespace) -> str:
    c = codemod.load_code(args.code)
    spec = channel.ChannelSpec(tuple(parse_floats(args.rho)), c.bs, c.q)
    holds, witness = channel.coverage_check(c, spec, args.threshold)
    out = {"holds": holds, "tau": codemod.tau(c), "witness": None if witness is None else witness.tolist()}
    return json.dumps(out) + "\n"


def cmd_gv_experiment(args: argparse.Namespace) -> str:
    bs = BlockStructure.parse(args.blocks)
    frac, dists = channel.gv_experiment(Field(args.q), bs, args.k, args.d, args.trials, args.seed)
    return json.dumps({"fraction": frac, "distances": dists}) + "\n"


def cmd_scalings(args: argparse.Namespace) -> str:
    real, integer, err = optimal_scalings(parse_floats(args.rho), args.q, args.cap)
    return json.dumps({"real_weights": real, "integer_weights": integer, "scale_error": err}) + "\n"


def figure1_rows(q: int) -> list[str]:
    bs = BlockStructure.parse(FIGURE_BLOCKS)
    _, family = FIGURE_FILES[q]
    k_construction = constructions.construction1(Field(q), 7, 7, family).code.k
    rows = ["d,singleton,hamming,gv,plotkin,lp,construction"]
    for rep in bounds.bounds_table(q, bs, range(1, bs.max_weight + 1)):
        extra = str(k_construction) if rep.d == FIGURE_CONSTRUCTION_D else ""
        rows.append(f"{rep.csv_row()},{extra}")
    return rows


def figure1(out_dir: str | Path) -> list[Path]:
    """Write the two bound tables for ``n = (7, 7)``, ``lambda = (1, 2)``."""
    paths = []
    for q, (name, _) in FIGURE_FILES.items():
        path = Path(out_dir) / name
        write_output("\n".join(figure1_rows(q)) + "\n", str(path))
        paths.append(path)
    return paths


def cmd_figure1(args: argparse.Namespace) -> str:
    return "".join(f"{p}\n" for p in figure1(args.out_dir))


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="whmetric", description="Weighted-Hamming metric toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable[[argparse.Namespace], str], help: str, out: bool = True):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        if out:
            sp.add_argument("--out", help="write to this file instead of stdout")
        return sp

    sp = add("bounds", cmd_bounds, "bounds on the code dimension")
    sp.add_argument("--q", type=alphabet_size, required=True)
    sp.add_argument("--blocks", required=True, help='e.g. "7:1,7:2"')
    sp.add_argument("--d", required=True, help='distance range, e.g. "1..21"')
    sp.add_argument("--format", choices=["csv", "json"], default="csv")

    sp = add("ball", cmd_ball, "weighted-Hamming ball size")
    sp.add_argument("--q", type=alphabet_size, required=True)
    sp.add_argument("--blocks", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--per-sphere", action="store_true")

    sp = add("min-distance", cmd_min_distance, "exact minimum weighted-Hamming distance")
    sp.add_argument("--code", required=True)
    sp.add_argument("--method", choices=["auto", "codebook", "support_enum"], default="auto")
    sp.add_argument("--witness", action="store_true", help="also print a minimum-weight codeword")

    sp = add("tau", cmd_tau, "error-correction capability")
    sp.add_argument("--code", required=True)
    sp.add_argument("--oracle", action="store_true", help="literal evaluation over F_q^n")

    sp = add("enumerator", cmd_enumerator, "T-weight enumerator")
    sp.add_argument("--code", required=True)

    sp = add("dual", cmd_dual, "dual T-weight enumerator via MacWilliams identities")
    sp.add_argument("--code", required=True)
    sp.add_argument("--as-code", action="store_true", help="emit the dual code file instead")

    sp = add("construct", cmd_construct, "build the d=5 construction for lambda=(1,2)")
    sp.add_argument("--family", choices=["binary", "mds"], required=True)
    sp.add_argument("--q", type=alphabet_size, required=True)
    sp.add_argument("--n1", type=int, required=True)
    sp.add_argument("--n2", type=int, required=True)

    sp = add("decode", cmd_decode, "decode a received word with the construction decoder")
    sp.add_argument("--code", required=True)
    sp.add_argument("--received", required=True, help="comma-separated symbols")

    sp = add("simulate", cmd_simulate, "Monte-Carlo simulation over parallel QSCs")
    sp.add_argument("--code", required=True)
    sp.add_argument("--rho", required=True)
    sp.add_argument("--decoder", choices=list(_DECODERS), default="ml")
    sp.add_argument("--weights", help="integer weights for wh-int (default: the code's scalings)")
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=["json"], default="json")

    sp = add("coverage", cmd_coverage, "check that all likely error patterns are correctable")
    sp.add_argument("--code", required=True)
    sp.add_argument("--rho", required=True)
    sp.add_argument("--threshold", type=float, required=True)

    sp = add("gv-experiment", cmd_gv_experiment, "distances of random codes")
    sp.add_argument("--q", type=alphabet_size, required=True)
    sp.add_argument("--blocks", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("scalings", cmd_scalings, "scaling factors from crossover probabilities")
    sp.add_argument("--q", type=alphabet_size, required=True)
    sp.add_argument("--rho", required=True)
    sp.add_argument("--cap", type=int, default=64)

    sp = add("figure1", cmd_figure1, "write the bound tables for n=(7,7), lambda=(1,2)", out=False)
    sp.add_argument("--out-dir", default=".")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
        write_output(text, getattr(args, "out", None))
    except (UsageError, InvalidBlockStructure, MalformedCodeFile) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except WHMetricError as exc:
        if isinstance(exc, DecodeFailure):
            print("FAIL")
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"FileNotFound: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
