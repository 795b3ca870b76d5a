"""rank3id command line.

    rank3id classify tensor.json
    rank3id kronecker --inline '{"rows":1,"cols":2,"A0":["1","0"],"A1":["0","1"]}'
    rank3id generate f 3,2,2,2 --seed 7 | rank3id classify -

Exit codes: classify returns 0 when a family is found and 1 when the tensor
is not on the list; every subcommand returns 2 on bad input.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import io
from .classifier import Family, classify, hyperdeterminant
from .errors import Rank3Error
from .generate import FAMILIES, generate
from .pencil import invariant_polynomials, kronecker_invariants, normal_form, pencil_of
from .tensor import Tensor, concise, multilinear_rank

log = logging.getLogger("rank3id")

DESCRIPTIONS = {
    Family.MatrixCase: "rank-3 matrix",
    Family.Tangential: "point of a tangent space to the Segre variety of 2x2x2 (tangential tensor)",
    Family.Defective4: "four-qubit tensor of rank 3 in the defective third secant variety",
    Family.ConicIrreducible: "3x2x2 tensor whose conic is irreducible",
    Family.ConicReducible: "3x2x2 tensor whose conic is reducible",
    Family.GeneralGlue: "rank-2 matrix on two factors glued to a rank-1 point",
}


class UsageError(Rank3Error):
    pass


def _read_input(args) -> object:
    if (args.input is None) == (args.inline is None):
        raise UsageError("give exactly one of an input path ('-' for stdin) or --inline JSON")
    if args.inline is not None:
        text = args.inline
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    return io.loads(text)


def _read_tensor(args) -> Tensor:
    return io.tensor_from_json(_read_input(args))


def _emit(args, obj: dict, human: str) -> None:
    print(io.dumps(obj) if args.format == "json" else human)


def cmd_classify(args) -> int:
    T = _read_tensor(args)
    rep = classify(T)
    data = rep.to_json()
    if rep.verdict:
        human = f"family {rep.label}: {DESCRIPTIONS[rep.verdict]}"
    else:
        human = f"not on the list ({rep.reason.value})"
        if rep.detail:
            human += f": {rep.detail}"
    human += f"\nmultilinear rank {list(rep.multilinear_rank)}, concise shape {list(rep.concise_shape)}"
    if rep.rank is not None:
        human += f", rank {rep.rank}"
    if rep.witness:
        human += "\nwitness: " + io.dumps(rep.witness)
    _emit(args, data, human)
    return 0 if rep.verdict else 1


def cmd_concise(args) -> int:
    c = concise(_read_tensor(args))
    data = io.concision_to_json(c)
    _emit(args, data, f"concise shape {list(c.concise_shape)}, factor map {list(c.factor_map)}, "
                      f"dropped {list(c.dropped_factors)}")
    return 0


def cmd_mlrank(args) -> int:
    r = multilinear_rank(_read_tensor(args))
    _emit(args, {"multilinear_rank": list(r)}, " ".join(map(str, r)))
    return 0


def cmd_kronecker(args) -> int:
    obj = _read_input(args)
    if isinstance(obj, dict) and "A0" in obj:
        P = io.pencil_from_json(obj)
    else:
        P = pencil_of(io.tensor_from_json(obj))
    inv = kronecker_invariants(P)
    nf = normal_form(P)
    data = inv.to_json()
    data["invariant_polynomials"] = [str(f) for f in invariant_polynomials(P)]
    data["normal_form"] = {"blocks": nf.labels, "pencil": io.pencil_to_json(nf.pencil)}
    human = "\n".join([
        f"column minimal indices {list(inv.col_indices)}",
        f"row minimal indices {list(inv.row_indices)}",
        "elementary divisors " + (", ".join(f"({b})^{e}" for b, e in inv.divisors) or "none"),
        f"pencil rank {inv.pencil_rank}",
        "normal form blocks " + " ".join(nf.labels),
        str(nf.pencil),
    ])
    _emit(args, data, human)
    return 0


def cmd_hdet(args) -> int:
    h = hyperdeterminant(_read_tensor(args))
    _emit(args, {"hyperdeterminant": str(h)}, str(h))
    return 0


def cmd_generate(args) -> int:
    try:
        shape = tuple(int(n) for n in args.shape.split(","))
    except ValueError:
        raise UsageError(f"shape must look like 3,2,2,2, got {args.shape!r}") from None
    T = generate(args.family, shape, args.seed)
    _emit(args, io.tensor_to_json(T), io.dumps(io.tensor_to_json(T)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "human"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="rank3id", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, help_ in [
        ("classify", cmd_classify, "decide family membership of a tensor"),
        ("concise", cmd_concise, "concise core and injections"),
        ("mlrank", cmd_mlrank, "multilinear rank"),
        ("kronecker", cmd_kronecker, "Kronecker invariants and normal form of a pencil or 2xmxn tensor"),
        ("hdet", cmd_hdet, "hyperdeterminant of a 2x2x2 tensor"),
    ]:
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("input", nargs="?", help="JSON file, or '-' for stdin")
        sp.add_argument("--inline", help="JSON given on the command line")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("generate", help="seeded member of a family", parents=[common])
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("shape", help="comma-separated dimensions, e.g. 3,2,2,2")
    sp.set_defaults(func=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (Rank3Error, OSError) as exc:
        log.debug("input error", exc_info=True)
        print(f"rank3id: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
