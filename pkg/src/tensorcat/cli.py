"""Command-line front end: ``tensorcat {compose,check-laws,demo-example,dnc-matmul}``.

Exit codes: 0 success, 2 parse error, 3 type or shape error, 4 law failure.
Options may also come from a JSON config file (``--config``) whose keys are
the long option names with dashes replaced by underscores; options given on
the command line win.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import field, laws, matcat, morfile
from . import twovect as tv
from .field import ShapeError
from .twovect import OneMor, TwoMor

EXIT_OK, EXIT_PARSE, EXIT_TYPE, EXIT_LAW = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ------------------------------------------------------------------ compose

def cmd_compose(args) -> int:
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror}", EXIT_PARSE) from None
    try:
        doc = morfile.parse(text)
    except morfile.MorParseError as exc:
        raise CliError(f"{args.input}: {exc}", EXIT_PARSE) from None
    except ShapeError as exc:
        raise CliError(f"{args.input}: {exc}", EXIT_TYPE) from None
    try:
        value = morfile.evaluate(args.expr, doc)
        if args.normalize:
            value = morfile.normalize_value(value)
    except morfile.MorParseError as exc:
        raise CliError(f"expression {args.expr!r}: {exc}", EXIT_PARSE) from None
    except ShapeError as exc:
        raise CliError(f"expression {args.expr!r}: {exc}", EXIT_TYPE) from None

    out = morfile.MorDoc(comments=[f"result of {args.expr}"])
    if isinstance(value, TwoMor):
        out.ones["source"] = value.src
        out.ones["target"] = value.tgt
    out.add("result", value)
    _emit(morfile.dump(out), args.output)
    return EXIT_OK


def _emit(text: str, path: str | None) -> None:
    if path and path != "-":
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------- check-laws

def cmd_check_laws(args) -> int:
    cfg = laws.LawConfig(seed=args.seed, cases_per_law=args.cases, max_object=args.max_object,
                         max_components=args.max_components, max_dim=args.max_dim,
                         scalar_bound=args.scalar_bound)
    report = laws.run_suite(cfg, mutate=args.mutate, only=args.law or None, jobs=args.jobs)
    for line in report.lines():
        print(line)
    if args.output:
        Path(args.output).write_text(report.to_json(), encoding="utf-8")
    if not report.ok:
        folder = Path(args.counterexamples)
        folder.mkdir(parents=True, exist_ok=True)
        for law in report.laws:
            for f in law.failures:
                path = folder / f"{law.name}-{f.case}.mor"
                path.write_text(f.counterexample, encoding="utf-8")
        print(f"counterexamples written to {folder}/")
        return EXIT_LAW
    return EXIT_OK


# ------------------------------------------------------------- demo-example

# Component dimensions for the worked example: f, g, l : 3 -> 2 and h, k : 2 -> 1.
# Entries not split into several components hold a single one.
DEMO_SHAPES = {
    "f": [[(1, 2), (1,), (2,)], [(1,), (2,), (1,)]],
    "g": [[(2,), (1, 1, 2), (1,)], [(1,), (1,), (2,)]],
    "l": [[(1,), (2,), (1,)], [(2,), (1, 1), (1,)]],
    "h": [[(1, 1), (2,)]],
    "k": [[(2, 1), (1,)]],
}


def demo_fixture(seed: int = 0) -> morfile.MorDoc:
    """The worked example's 1-morphisms and the 2-morphisms theta: f => g, eta: g => l, xi: h => k."""
    rng = random.Random(f"demo:{seed}")
    cfg = laws.LawConfig(scalar_bound=5)
    doc = morfile.MorDoc(comments=["worked example: f, g, l : 3 -> 2 and h, k : 2 -> 1"])
    for name, grid in DEMO_SHAPES.items():
        doc.ones[name] = OneMor(len(grid[0]), len(grid), grid)
    o = doc.ones
    doc.twos["theta"] = laws.gen_two_mor(rng, cfg, o["f"], o["g"])
    doc.twos["eta"] = laws.gen_two_mor(rng, cfg, o["g"], o["l"])
    doc.twos["xi"] = laws.gen_two_mor(rng, cfg, o["h"], o["k"])
    return doc


def _check_layout(result: TwoMor, xi: TwoMor, theta: TwoMor, m: int, j: int) -> bool:
    """Every block of entry (m, j) of ``xi o theta`` is a kron of component blocks, or zero."""
    rows = [(k, a, b) for k in range(xi.src.src)
            for a in range(len(xi.tgt[m, k])) for b in range(len(theta.tgt[k, j]))]
    cols = [(k, a, b) for k in range(xi.src.src)
            for a in range(len(xi.src[m, k])) for b in range(len(theta.src[k, j]))]
    for bi, (k, a, b) in enumerate(rows):
        for ai, (k2, a2, b2) in enumerate(cols):
            got = result.block(m, j, bi, ai)
            if k == k2:
                want = field.kron(xi.block(m, k, a, a2), theta.block(k, j, b, b2))
            else:
                want = field.zero(got.rows, got.cols)
            if got != want:
                return False
    return True


def _fmt(m: field.DenseMatrix) -> str:
    return morfile._fmt_matrix(m)


def cmd_demo_example(args) -> int:
    doc = demo_fixture(args.seed)
    if args.output:
        Path(args.output).write_text(morfile.dump(doc), encoding="utf-8")
    o, t = doc.ones, doc.twos
    f, h = o["f"], o["h"]
    theta, eta, xi = t["theta"], t["eta"], t["xi"]
    checks: list[tuple[str, bool]] = []

    print("1-morphisms (component dimensions per entry):")
    for name in ("f", "g", "l", "h", "k"):
        print(f"  {name} = {[list(map(list, row)) for row in o[name].entries]}")

    hf = tv.hcompose1(h, f)
    print("\nh o f (1 x 3):")
    for j in range(3):
        parts = [tv.tensor(h[0, k], f[k, j]) for k in range(2)]
        print(f"  entry (1,{j + 1}) = h11 f1{j + 1} (+) h12 f2{j + 1}"
              f" = {list(parts[0])} (+) {list(parts[1])}")
        checks.append((f"h o f entry (1,{j + 1}) is h11 f1{j + 1} (+) h12 f2{j + 1}",
                       hf[0, j] == parts[0] + parts[1]))
    checks.append(("h o f entry (1,1) has 2x2 + 1x1 = 5 components", len(hf[0, 0]) == 5))

    et = tv.vcompose2(eta, theta)
    print("\neta . theta (entrywise products):")
    terms = [field.mat_mul(eta.block(0, 1, 0, c), theta.block(0, 1, c, 0)) for c in range(3)]
    total = terms[0] + terms[1] + terms[2]
    print(f"  entry (1,2) = eta12^1 theta12^1 + eta12^2 theta12^2 + eta12^3 theta12^3"
          f" = {' + '.join(_fmt(x) for x in terms)} = {_fmt(total)}")
    checks.append(("eta . theta entry (1,2) is a 3-term sum over the components of g12",
                   len(o["g"][0, 1]) == 3 and et[0, 1] == total))
    row11 = [field.mat_mul(eta[0, 0], theta.block(0, 0, 0, c)) for c in range(2)]
    print(f"  entry (1,1) = (eta11 theta11^1  eta11 theta11^2) = ({_fmt(row11[0])} {_fmt(row11[1])})")
    checks.append(("eta . theta entry (1,1) is the row (eta11 theta11^1, eta11 theta11^2)",
                   et.block(0, 0, 0, 0) == row11[0] and et.block(0, 0, 0, 1) == row11[1]))
    col22 = [field.mat_mul(eta.block(1, 1, c, 0), theta[1, 1]) for c in range(2)]
    print(f"  entry (2,2) = (eta22^1 theta22; eta22^2 theta22) = ({_fmt(col22[0])}; {_fmt(col22[1])})")
    checks.append(("eta . theta entry (2,2) is the column (eta22^1 theta22; eta22^2 theta22)",
                   et.block(1, 1, 0, 0) == col22[0] and et.block(1, 1, 1, 0) == col22[1]))
    for k, j in et.src.positions():
        checks.append((f"eta . theta entry ({k + 1},{j + 1}) equals the flattened product",
                       tv.flatten(et)[k][j] == field.mat_mul(eta[k, j], theta[k, j])))

    xt = tv.hcompose2(xi, theta)
    print("\nxi o theta = (alpha beta gamma):")
    for j, name in enumerate(("alpha", "beta", "gamma")):
        shape = xt[0, j].shape
        print(f"  {name} = xi11 (x) theta1{j + 1} (+) xi12 (x) theta2{j + 1}: {shape[0]}x{shape[1]},"
              f" source components {list(xt.src[0, j])}, target components {list(xt.tgt[0, j])}")
        checks.append((f"{name}: block (a b, a' b') is kron(xi11^(a a'), theta1{j + 1}^(b b')),"
                       f" then xi12 (x) theta2{j + 1}, zero across", _check_layout(xt, xi, theta, 0, j)))
    checks.append(("alpha has 2x2 blocks of xi11 times the 1x2 row theta11",
                   (len(xi.src[0, 0]), len(xi.tgt[0, 0])) == (2, 2)
                   and (len(theta.src[0, 0]), len(theta.tgt[0, 0])) == (2, 1)))
    checks.append(("xi o theta equals the scalar-indexed recomputation",
                   tv.flatten(xt) == laws.hcompose2_oracle(xi, theta)))

    print()
    for label, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {label}")
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_LAW


# --------------------------------------------------------------- dnc-matmul

def cmd_dnc_matmul(args) -> int:
    cfg = laws.LawConfig(scalar_bound=args.scalar_bound)
    results = []
    for size in args.sizes:
        if size < 1:
            raise CliError(f"size must be at least 1, got {size}", EXIT_PARSE)
        rng = random.Random(f"dnc:{args.seed}:{size}")
        a = laws.gen_matmor(rng, cfg, size, size)
        b = laws.gen_matmor(rng, cfg, size, size)
        t0 = time.perf_counter()
        plain = matcat.compose(a, b)
        t1 = time.perf_counter()
        split = matcat.dnc_mul(a, b, args.threshold)
        t2 = time.perf_counter()
        equal = plain == split
        results.append({"size": size, "threshold": args.threshold, "equal": equal,
                        "mat_mul_seconds": round(t1 - t0, 4), "dnc_mul_seconds": round(t2 - t1, 4)})
        print(f"size {size}: {'equal' if equal else 'MISMATCH'}, mat_mul {t1 - t0:.3f}s,"
              f" dnc_mul {t2 - t1:.3f}s (threshold {args.threshold})", flush=True)
    if args.output:
        Path(args.output).write_text(json.dumps(results, indent=2) + "\n", encoding="utf-8")
    return EXIT_OK if all(r["equal"] for r in results) else EXIT_LAW


# ------------------------------------------------------------------ parsing

DEFAULTS = {
    "seed": 42, "cases": 200, "max_object": 3, "max_components": 3, "max_dim": 3,
    "scalar_bound": 9, "jobs": 1, "mutate": None, "output": None, "normalize": False,
    "counterexamples": "counterexamples", "law": None, "threshold": 8, "sizes": [64, 128, 256],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tensorcat", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file of option defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    # every option defaults to None so that config values can fill the gaps
    def opt(p, *names, **kw):
        p.add_argument(*names, default=None, **kw)

    c = sub.add_parser("compose", help="evaluate an expression over a morphism file")
    c.add_argument("input")
    c.add_argument("expr")
    opt(c, "--output", "-o", help="write the result here instead of stdout")
    c.add_argument("--normalize", action="store_true", default=None,
                   help="delete dimension-0 components from the result")

    k = sub.add_parser("check-laws", help="run the seeded law suite")
    opt(k, "--seed", type=int)
    opt(k, "--cases", type=int, help="cases per randomized law")
    opt(k, "--max-object", type=int)
    opt(k, "--max-components", type=int)
    opt(k, "--max-dim", type=int)
    opt(k, "--scalar-bound", type=int)
    opt(k, "--jobs", type=int, help="worker processes")
    opt(k, "--mutate", choices=tv.MUTATIONS, help="enable a deliberately wrong composition")
    opt(k, "--law", action="append", help="run only this law (repeatable)")
    opt(k, "--output", "-o", help="write the JSON report here")
    opt(k, "--counterexamples", help="folder for failing cases")

    d = sub.add_parser("demo-example", help="evaluate the worked 2Vect example")
    opt(d, "--seed", type=int)
    opt(d, "--output", "-o", help="write the example's morphism file here")

    m = sub.add_parser("dnc-matmul", help="compare divide-and-conquer and plain multiplication")
    opt(m, "--sizes", type=int, nargs="+")
    opt(m, "--threshold", type=int)
    opt(m, "--seed", type=int)
    opt(m, "--scalar-bound", type=int)
    opt(m, "--output", "-o", help="write timings as JSON here")
    return parser


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc.strerror}", EXIT_PARSE) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path}: {exc}", EXIT_PARSE) from None
    if not isinstance(data, dict):
        raise CliError(f"config {path} must hold a JSON object", EXIT_PARSE)
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise CliError(f"config {path}: unknown keys {', '.join(sorted(unknown))}", EXIT_PARSE)
    return data


COMMANDS = {"compose": cmd_compose, "check-laws": cmd_check_laws,
            "demo-example": cmd_demo_example, "dnc-matmul": cmd_dnc_matmul}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        for key, value in vars(args).items():
            if value is None:
                setattr(args, key, config.get(key, DEFAULTS.get(key)))
        if args.command == "check-laws" and args.mutate not in (None, *tv.MUTATIONS):
            raise CliError(f"unknown mutation {args.mutate!r}", EXIT_PARSE)
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"tensorcat: {exc}", file=sys.stderr)
        return exc.code
    except ShapeError as exc:
        print(f"tensorcat: {exc}", file=sys.stderr)
        return EXIT_TYPE
    except ValueError as exc:  # bad option values, e.g. negative bounds
        print(f"tensorcat: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
