"""Batch command-line front end.

One verb per module operation family; deterministic output (byte-identical
for identical inputs), exact rationals serialized as ``p/q`` throughout.
Exit codes: 0 success, 1 domain error, 2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import correspondence as corr
from . import invariants as inv
from . import ranking as rank_ops
from .errors import DomainError
from .local_model import LocalModel
from .pair_model import FormalPairModel, RelativeData, load_data
from .rationals import Rational, floor_frac, format_rational, gen_factorial, parse_rational

# Operation families reachable from each verb (coverage-tested).
VERB_OPERATIONS = {
    "sectors": ["isotropy_group", "sector_index_set", "sector_support", "degree_shift", "d_top"],
    "degshift": ["degree_shift", "tau"],
    "rank": ["lambda_value", "lambda_preimages", "rk_pair", "sector_dim", "c_to_Rd", "rk_tilde"],
    "dims": ["window", "moduli_dim", "moduli_dim_oracle", "c_bounds", "tau"],
    "invariant": [
        "h_invariant",
        "h_prime_oracle",
        "relative_invariant",
        "localization_sum",
        "gen_factorial",
        "floor_frac",
    ],
    "correspond": ["psi_forward", "psi_inverse", "n_minimal_companion"],
    "order": ["precedes", "find_precedence_witness", "linear_extension"],
    "assemble": ["assemble_L", "default_coeff_rule"],
    "solve": ["solve_lower_triangular"],
}


def _load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_model(args) -> LocalModel:
    if not args.model:
        raise DomainError("this command needs --model")
    return LocalModel.from_json(_load_json(args.model))


def _load_pair_model(args) -> FormalPairModel:
    if not args.pair_model:
        raise DomainError("this command needs --pair-model")
    return FormalPairModel.from_json(_load_json(args.pair_model))


def _load_data_list(path) -> list[RelativeData]:
    doc = _load_json(path)
    if not isinstance(doc, list):
        raise DomainError("expected a JSON array of relative data documents")
    return [RelativeData.from_json(d) for d in doc]


def _emit(args, doc, tsv_lines):
    if args.format == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(tsv_lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rat(value) -> str:
    return format_rational(value)


# ---------------------------------------------------------------------------
# verb handlers


def _cmd_sectors(args):
    model = _load_model(args)
    rows = [["b", "phase", "degshift", "support"]]
    sectors = []
    for delta in model.sector_index_set():
        shift = model.degree_shift(delta.b, delta.R)
        support = sorted(model.sector_support(delta))
        sectors.append(
            {"b": delta.b, "phase": _rat(delta.R), "degshift": _rat(shift), "support": support}
        )
        rows.append([str(delta.b), _rat(delta.R), _rat(shift), ",".join(map(str, support))])
    doc = {"d_top": model.d_top(), "n": model.n, "sectors": sectors}
    _emit(args, doc, ["\t".join(r) for r in rows])


def _cmd_degshift(args):
    model = _load_model(args)
    if args.R is None:
        raise DomainError("degshift needs --R")
    R = parse_rational(args.R)
    b = args.b if args.b is not None else 1 % model.r
    shift = model.degree_shift(b, R)
    taus = [model.tau(R, u) for u in range(1, model.n + 1)]
    doc = {"b": b, "R": _rat(R), "degshift": _rat(shift), "tau": [_rat(t) for t in taus]}
    rows = [
        ["b", "R", "degshift", "tau"],
        [str(b), _rat(R), _rat(shift), ",".join(_rat(t) for t in taus)],
    ]
    _emit(args, doc, ["\t".join(r) for r in rows])


def _cmd_rank(args):
    model = _load_model(args)
    if args.c is not None:
        R, d = rank_ops.c_to_Rd(model, args.c)
        doc = {"c": args.c, "R": _rat(R), "d": d, "rank": rank_ops.rk_tilde(model, R, d)}
        rows = [["c", "R", "d", "rank"], [str(args.c), _rat(R), str(d), str(doc["rank"])]]
    elif args.R is not None:
        R = parse_rational(args.R)
        strict, weak = rank_ops.rk_pair(model, R)
        pre = rank_ops.lambda_preimages(model, R)
        for j, a in pre:
            if rank_ops.lambda_value(model, j, a) != R:
                raise AssertionError("preimage does not evaluate back to its label")
        doc = {
            "R": _rat(R),
            "rk_strict": strict,
            "rk_weak": weak,
            "sector_dim": rank_ops.sector_dim(model, R),
            "preimages": [[j, a] for j, a in pre],
        }
        rows = [
            ["R", "rk_strict", "rk_weak", "sector_dim", "preimages"],
            [
                _rat(R),
                str(strict),
                str(weak),
                str(doc["sector_dim"]),
                ";".join(f"{j},{a}" for j, a in pre),
            ],
        ]
    else:
        raise DomainError("rank needs --R or --c")
    _emit(args, doc, ["\t".join(r) for r in rows])


def _cmd_dims(args):
    model = _load_model(args)
    if args.k is not None:
        rows = [["R", "multiplicity", "dim", "dim_oracle"]]
        entries = []
        for R, mult in rank_ops.window(model, args.k):
            dim = rank_ops.moduli_dim(model, R)
            oracle = rank_ops.moduli_dim_oracle(model, R)
            entries.append({"R": _rat(R), "multiplicity": mult, "dim": dim, "dim_oracle": oracle})
            rows.append([_rat(R), str(mult), str(dim), str(oracle)])
        doc = {"k": args.k, "window": entries}
    elif args.R is not None:
        R = parse_rational(args.R)
        c_min, c_max = rank_ops.c_bounds(model, R)
        doc = {
            "R": _rat(R),
            "dim": rank_ops.moduli_dim(model, R),
            "dim_oracle": rank_ops.moduli_dim_oracle(model, R),
            "c_min": [_rat(c) for c in c_min],
            "c_max": [_rat(c) for c in c_max],
            "tau": [_rat(model.tau(R, u)) for u in range(1, model.n + 1)],
        }
        rows = [
            ["R", "dim", "dim_oracle", "c_min", "c_max"],
            [
                _rat(R),
                str(doc["dim"]),
                str(doc["dim_oracle"]),
                ",".join(doc["c_min"]),
                ",".join(doc["c_max"]),
            ],
        ]
    else:
        raise DomainError("dims needs --R or --k")
    _emit(args, doc, ["\t".join(r) for r in rows])


def _invariant_entry(model, c, i, j, d):
    R, d_of_c = rank_ops.c_to_Rd(model, c)
    value = inv.relative_invariant(model, inv.ProperInsertionPair(c=c, i=i, j=j, d=d))
    h = inv.h_invariant(model, R, d_of_c)
    h_prime = inv.h_prime_oracle(model, R, d_of_c)
    rfloor, rfrac = floor_frac(R)
    fact = Rational(1)
    _, c_max = rank_ops.c_bounds(model, R)
    for u in range(1, model.n + 1):
        steps = int(c_max[u - 1] - Rational(model.beta[u - 1], model.r))
        fact *= gen_factorial(c_max[u - 1], steps)
    return {
        "c": c,
        "i": i,
        "j": j,
        "R": _rat(R),
        "R_floor": rfloor,
        "R_frac": _rat(rfrac),
        "d": d_of_c,
        "h": _rat(h),
        "h_prime": _rat(h_prime),
        "c_max_factorial": _rat(fact),
        "value": _rat(value),
    }


def _cmd_invariant(args):
    model = _load_model(args) if args.model else None
    if args.data:
        queries = _load_json(args.data)
        if not isinstance(queries, list):
            raise DomainError("batch queries must be a JSON array")
        rows = [["index", "kind", "value", "detail"]]
        entries = []
        for idx, q in enumerate(queries):
            if "lambdas" in q:
                lams = [parse_rational(x) for x in q["lambdas"]]
                value = inv.localization_sum(lams, int(q["d"]))
                entry = {"kind": "localization", "d": int(q["d"]), "value": _rat(value)}
                detail = f"m={len(lams)},d={q['d']}"
            else:
                qmodel = LocalModel.from_json(q["model"]) if "model" in q else model
                if qmodel is None:
                    raise DomainError("query needs an inline model or --model")
                entry = _invariant_entry(
                    qmodel, int(q["c"]), int(q["i"]), int(q["j"]), q.get("d")
                )
                entry["kind"] = "relative"
                detail = f"c={entry['c']},R={entry['R']},d={entry['d']}"
            entries.append(entry)
            rows.append([str(idx), entry["kind"], entry["value"], detail])
        _emit(args, {"results": entries}, ["\t".join(r) for r in rows])
        return
    if args.c is None or args.i is None or args.j is None:
        raise DomainError("invariant needs --c, --i, --j (or --data for batch mode)")
    entry = _invariant_entry(model, args.c, args.i, args.j, args.d)
    _emit(args, entry, [entry["value"]])


def _cmd_correspond(args):
    model = _load_pair_model(args)
    if not args.data:
        raise DomainError("correspond needs --data")
    datum = load_data(_load_json(args.data))
    if isinstance(datum, RelativeData):
        image = corr.psi_forward(model, datum)
        companion = corr.n_minimal_companion(datum)
        doc = {"direction": "forward", "image": image.to_json(), "companion": companion.to_json()}
        rows = [["component", "genus", "class", "absolute", "s_markings"]]
        for idx, comp in enumerate(image.components):
            rows.append(
                [
                    str(idx),
                    str(comp.genus),
                    ",".join(_rat(c) for c in comp.cls),
                    ";".join(f"{m.sector}:{m.insertion}:{m.psi}" for m in comp.absolute),
                    ";".join(f"{m.sector}:{m.j}:{m.psi}" for m in comp.s_markings),
                ]
            )
    else:
        image = corr.psi_inverse(model, datum)
        doc = {"direction": "inverse", "image": image.to_json()}
        rows = [["component", "genus", "class", "absolute", "relative"]]
        for idx, comp in enumerate(image.components):
            rows.append(
                [
                    str(idx),
                    str(comp.genus),
                    ",".join(_rat(c) for c in comp.cls),
                    ";".join(f"{m.sector}:{m.insertion}:{m.psi}" for m in comp.absolute),
                    ";".join(
                        f"{m.sector}:{_rat(m.contact)}:{m.j}:{m.ell}" for m in comp.relative
                    ),
                ]
            )
    _emit(args, doc, ["\t".join(r) for r in rows])


def _cmd_order(args):
    model = _load_pair_model(args)
    if not args.data:
        raise DomainError("order needs --data")
    data = _load_data_list(args.data)
    order = corr.linear_extension_order(model, data, max_components=args.max_components)
    comparable = sum(
        1
        for i in range(len(data))
        for j in range(len(data))
        if i != j
        and data[i] != data[j]
        and corr.find_precedence_witness(
            model, data[i], data[j], max_components=args.max_components
        )
        is not None
    )
    doc = {"order": order, "strict_comparable_pairs": comparable}
    rows = [["position", "input_index"]]
    rows += [[str(pos), str(idx)] for pos, idx in enumerate(order)]
    _emit(args, doc, ["\t".join(r) for r in rows])


def _cmd_assemble(args):
    model = _load_pair_model(args)
    if not args.data:
        raise DomainError("assemble needs --data")
    data = _load_data_list(args.data)
    order = corr.linear_extension_order(model, data, max_components=args.max_components)
    basis = [data[i] for i in order]
    offdiag = {}
    if args.offdiag:
        entries = _load_json(args.offdiag)
        if not isinstance(entries, list):
            raise DomainError("offdiag must be a JSON array of [row, col, value] triples")
        position = {input_idx: pos for pos, input_idx in enumerate(order)}
        for row_in, col_in, value in entries:
            offdiag[(position[int(row_in)], position[int(col_in)])] = parse_rational(value)
    rule = corr.default_coeff_rule if args.coeff == "product" else (lambda rd: Rational(1))
    L = corr.assemble_L(
        model, basis, offdiag=offdiag, coeff_rule=rule, max_components=args.max_components
    )
    matrix = [[_rat(x) for x in row] for row in L]
    doc = {"order": order, "matrix": matrix}
    rows = [["order", " ".join(map(str, order))]]
    rows += [[f"row{i}"] + matrix[i] for i in range(len(matrix))]
    _emit(args, doc, ["\t".join(r) for r in rows])


def _cmd_solve(args):
    if not args.matrix or not args.vector:
        raise DomainError("solve needs --matrix and --vector")
    L = [[parse_rational(x) for x in row] for row in _load_json(args.matrix)]
    v = [parse_rational(x) for x in _load_json(args.vector)]
    x = corr.solve_lower_triangular(L, v)
    doc = {"solution": [_rat(value) for value in x]}
    _emit(args, doc, [_rat(value) for value in x])


_HANDLERS = {
    "sectors": _cmd_sectors,
    "degshift": _cmd_degshift,
    "rank": _cmd_rank,
    "dims": _cmd_dims,
    "invariant": _cmd_invariant,
    "correspond": _cmd_correspond,
    "order": _cmd_order,
    "assemble": _cmd_assemble,
    "solve": _cmd_solve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wbcorr",
        description="Exact weighted-blowup correspondence computations.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in _HANDLERS:
        p = sub.add_parser(verb)
        p.add_argument("--model", help="local model JSON file")
        p.add_argument("--pair-model", dest="pair_model", help="pair model JSON file")
        p.add_argument("--data", help="data JSON file (single datum, list, or batch queries)")
        p.add_argument("--matrix", help="matrix JSON file (arrays of p/q strings)")
        p.add_argument("--vector", help="vector JSON file (array of p/q strings)")
        p.add_argument("--offdiag", help="off-diagonal entries JSON file ([row, col, value])")
        p.add_argument("--c", type=int, help="descendent power")
        p.add_argument("--R", help="fiber-class label (p/q)")
        p.add_argument("--d", type=int, help="H-power")
        p.add_argument("--i", type=int, help="basis index at the origin marking")
        p.add_argument("--j", type=int, help="basis index at the divisor marking")
        p.add_argument("--k", type=int, help="window index")
        p.add_argument("--b", type=int, help="sector b-component (degshift)")
        p.add_argument("--coeff", choices=["product", "one"], default="product")
        p.add_argument("--max-components", dest="max_components", type=int, default=16)
        p.add_argument("--format", choices=["tsv", "json"], default="tsv")
        p.add_argument("--out", help="output path (default: stdout)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _HANDLERS[args.verb](args)
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
