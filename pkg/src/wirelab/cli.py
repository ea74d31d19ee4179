"""Command-line harness.

Reports are line-oriented ``key=value`` text; the same seed and flags
always produce byte-identical output.  Exit status: 0 when all checks
pass, 1 on a failed verification (a replayable witness is printed), 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds as bounds_mod
from . import gf2, suite
from .circuit import (
    Depth2Circuit,
    GeneralCircuit,
    collapse,
    depth2_from_text,
    depth2_to_text,
    equivalent,
    general_from_text,
    general_to_text,
    weakly_computes,
)
from .compress import bit_length, decode, deserialize, encode, serialize
from .generators import (
    linear_middle_instance,
    linear_output_instance,
    random_depth2,
    random_general,
    random_linear_circuit,
    random_matrix,
)
from .gf2 import Gf2Vector
from .transforms import cap_fanin, linearize


def _parse_x(text: str, n: int) -> Gf2Vector:
    if len(text) != n or set(text) - {"0", "1"}:
        raise SystemExit(f"error: --x must be {n} characters of 0/1")
    return Gf2Vector.from_coords(int(ch) for ch in text)


def load_circuit(path: str) -> Depth2Circuit | GeneralCircuit:
    text = Path(path).read_text()
    head = text.lstrip().split("\n", 1)[0].strip()
    if head == "depth2 v1":
        return depth2_from_text(text)
    if head == "general v1":
        return general_from_text(text)
    raise SystemExit(f"error: {path} has no recognized circuit header")


def circuit_text(c) -> str:
    if isinstance(c, GeneralCircuit):
        return general_to_text(c)
    if isinstance(c, Depth2Circuit):
        return depth2_to_text(c)
    return depth2_to_text(c.to_depth2())


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen_matrix(args) -> int:
    cols = args.r if args.r is not None else args.n
    m = random_matrix(args.n, cols, args.density, args.seed)
    _write_or_print(gf2.to_text(m), args.out)
    return 0


def cmd_gen_circuit(args) -> int:
    r = args.r if args.r is not None else args.n
    matrix = None
    if args.family == "general":
        g = random_general(args.n, r, args.seed, over_fanin_gates=max(1, r // 2))
        _write_or_print(general_to_text(g), args.out)
        return 0
    if args.family == "random":
        c = random_depth2(args.n, r, args.density, args.seed)
    elif args.family == "linear":
        c = random_linear_circuit(args.n, r, args.density, args.seed).to_depth2()
    elif args.family == "linear-output":
        c, matrix = linear_output_instance(args.n, r, args.density, args.seed)
    else:
        c, matrix = linear_middle_instance(args.n, r, args.density, args.seed)
    _write_or_print(depth2_to_text(c), args.out)
    if args.matrix_out:
        if matrix is None:
            raise SystemExit("error: --matrix-out needs a planted family")
        Path(args.matrix_out).write_text(gf2.to_text(matrix))
    return 0


def cmd_eval(args) -> int:
    c = load_circuit(args.infile)
    x = _parse_x(args.x, c.n)
    print(f"y={c.eval(x)}")
    return 0


def cmd_verify_equiv(args) -> int:
    c1 = load_circuit(args.first)
    c2 = load_circuit(args.second)
    if c1.n != c2.n:
        raise SystemExit("error: circuits have different input counts")
    t1 = collapse(c1, args.cap)
    t2 = collapse(c2, args.cap)
    if t1 == t2:
        print("equivalent=true")
        return 0
    x = next(x for x in range(1 << c1.n) if t1.value_at(x) != t2.value_at(x))
    print("equivalent=false")
    print(f"counterexample={Gf2Vector(c1.n, x)}")
    return 1


def cmd_verify_weak(args) -> int:
    c = load_circuit(args.infile)
    a = gf2.from_text(Path(args.matrix).read_text())
    if weakly_computes(c, a):
        print("weakly_computes=true")
        return 0
    bad = next(
        j for j in range(c.n)
        if c.eval(Gf2Vector.unit(c.n, j)) != gf2.matvec(a, Gf2Vector.unit(c.n, j))
    )
    print("weakly_computes=false")
    print(f"counterexample={Gf2Vector.unit(c.n, bad)}")
    return 1


def cmd_cap_fanin(args) -> int:
    c = load_circuit(args.infile)
    if not isinstance(c, GeneralCircuit):
        raise SystemExit("error: cap-fanin expects a general circuit")
    capped = cap_fanin(c, args.cap)
    print(f"wires_before={c.wire_count()}")
    print(f"wires_after={capped.wire_count()}")
    print(f"max_fanin={max((len(g.preds) for g in capped.gates), default=0)}")
    if args.out:
        Path(args.out).write_text(general_to_text(capped))
    return 0


def cmd_linearize(args) -> int:
    c = load_circuit(args.infile)
    if not isinstance(c, Depth2Circuit):
        raise SystemExit("error: linearize expects a depth-2 circuit")
    lin, report = linearize(c, args.cap)
    ok = report.within_budget(c.n) and equivalent(c, lin, args.cap)
    print(f"wires_before={report.wires_before}")
    print(f"wires_after={report.wires_after}")
    print(f"added={report.added}")
    print(f"added_first_level={report.added_first_level}")
    print(f"added_second_level={report.added_second_level}")
    print(f"budget={report.budget(c.n)}")
    print(f"ok={'true' if ok else 'false'}")
    if args.out:
        Path(args.out).write_text(depth2_to_text(lin.to_depth2()))
    return 0 if ok else 1


def cmd_encode(args) -> int:
    c = load_circuit(args.infile)
    if not isinstance(c, Depth2Circuit):
        raise SystemExit("error: encode expects a depth-2 circuit")
    enc = encode(c, args.cap)
    data = serialize(enc)
    print(f"n={enc.n}")
    print(f"r={enc.r}")
    print(f"wires={enc.wire_count()}")
    print(f"bit_length={bit_length(enc)}")
    if args.hex:
        print(f"hex={data.hex()}")
    if args.out:
        Path(args.out).write_bytes(data)
    return 0


def cmd_decode(args) -> int:
    enc = deserialize(Path(args.infile).read_bytes())
    x = _parse_x(args.x, enc.n)
    print(f"z={decode(enc, x)}")
    return 0


def cmd_bounds(args) -> int:
    table = bounds_mod.bounds_table()
    if args.out:
        Path(args.out).write_text(table)
    if args.golden:
        golden = Path(args.golden)
        if not golden.exists():
            golden.write_text(table)
            print(f"golden_written={args.golden}")
            return 0
        if golden.read_text() == table:
            print("golden_match=true")
            return 0
        print("golden_match=false")
        return 1
    if not args.out:
        sys.stdout.write(table)
    return 0


def cmd_suite(args) -> int:
    results = suite.run_all(args.trials, args.n_max, args.seed)
    failed = [r for r in results if not r.ok]
    for r in results:
        for line in r.report_lines():
            print(line)
    for r in failed:
        if r.witness:
            if args.out:
                path = Path(args.out) / f"witness_{r.name}.txt"
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(r.witness + "\n")
                print(f"witness_file={path}")
            print(f"witness_{r.name}:")
            print(r.witness)
    print(f"suite_ok={'true' if not failed else 'false'}")
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wirelab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("gen-matrix", cmd_gen_matrix, help="random 0/1 matrix")
    sp.add_argument("--n", type=int, required=True, help="rows")
    sp.add_argument("--r", type=int, help="columns (default: n)")
    sp.add_argument("--density", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    sp = add("gen-circuit", cmd_gen_circuit, help="random depth-2 circuit")
    sp.add_argument(
        "--family",
        choices=["random", "general", "linear", "linear-output", "linear-middle"],
        default="random",
    )
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, help="middle gates (default: n)")
    sp.add_argument("--density", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.add_argument("--matrix-out", help="also write the planted matrix")

    sp = add("eval", cmd_eval, help="evaluate a circuit on one input")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--x", required=True, help="input bits, coordinate 0 first")

    sp = add("verify-equiv", cmd_verify_equiv, help="exhaustive equivalence of two circuits")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--cap", type=int, default=20)

    sp = add("verify-weak", cmd_verify_weak, help="agreement with a matrix on unit vectors")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--matrix", required=True)

    sp = add("cap-fanin", cmd_cap_fanin, help="rewire gates of fanin > n to the inputs")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out")
    sp.add_argument("--cap", type=int, default=20)

    sp = add("linearize", cmd_linearize, help="all-parity form of a linear-output circuit")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out")
    sp.add_argument("--cap", type=int, default=20)

    sp = add("encode", cmd_encode, help="succinct certificate of a parity-middle circuit")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--out")
    sp.add_argument("--hex", action="store_true", help="print the stream as hex")
    sp.add_argument("--cap", type=int, default=20)

    sp = add("decode", cmd_decode, help="evaluate a certificate on one input")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--x", required=True)

    sp = add("bounds", cmd_bounds, help="wire lower-bound table")
    sp.add_argument("--out")
    sp.add_argument("--golden", help="write if missing, else compare byte for byte")

    sp = add("suite", cmd_suite, help="full verification battery")
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--out", help="directory for failure witnesses")

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
