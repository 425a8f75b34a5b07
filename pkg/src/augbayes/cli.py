"""Command-line entry point.

Exit codes: 0 success, 1 verification mismatch, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from . import __version__
from .classifier import evaluate, fit_parameters, predict_rows
from .dataset import MISSING_POLICIES, load_csv, read_csv_records
from .errors import AugBayesError, SchemaMismatchError
from .learner import MODES, WEIGHT_MODES, learn_structure
from .mdl import mdl_score, parameter_count
from .model_io import load_model, save_model
from .oracle import DEFAULT_CAP, brute_force_optimal
from .sampling import sample, write_csv

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _add_csv_flags(p: argparse.ArgumentParser, class_required: bool = True) -> None:
    p.add_argument("--input", required=True, help="CSV file with a header row")
    p.add_argument(
        "--class", dest="class_column", required=class_required,
        help="name of the class column" + ("" if class_required else " (default: the model's)"),
    )
    p.add_argument("--delimiter", default=",", help="field delimiter")
    p.add_argument(
        "--missing", choices=MISSING_POLICIES, default="drop-row",
        help="policy for rows with empty cells",
    )


def _arc_names(structure) -> list[str]:
    names = structure.schema.names
    return [f"{names[p]} -> {names[c]}" for p, c in structure.augmenting_arcs]


def cmd_learn(args) -> int:
    data = load_csv(args.input, args.class_column, args.missing, args.delimiter)
    structure = learn_structure(data, args.mode, args.weight)
    model = fit_parameters(structure, data, args.smoothing, args.alpha)
    score = mdl_score(structure, data)
    save_model(args.output, model, mode=args.mode, weight_mode=args.weight, mdl=score)
    print(f"mode: {args.mode} (weight: {args.weight})")
    print(f"arcs: {len(structure.augmenting_arcs)}")
    for line in _arc_names(structure):
        print(f"  {line}")
    print(f"parameters: {parameter_count(structure)}")
    print(f"mdl: {score!r}")
    return EXIT_OK


def cmd_score(args) -> int:
    model = load_model(args.model)
    class_column = args.class_column or model.schema.class_attribute.name
    data = load_csv(args.input, class_column, args.missing, args.delimiter, schema=model.schema)
    print(f"parameters: {parameter_count(model.structure)}")
    print(f"mdl: {mdl_score(model.structure, data)!r}")
    return EXIT_OK


def _feature_rows(model, path, missing, delimiter) -> np.ndarray:
    # class column is optional at prediction time
    schema = model.schema
    header, records = read_csv_records(path, missing, delimiter)
    rows = np.zeros((len(records), len(schema.attributes)), dtype=np.int64)
    for k in schema.feature_indices:
        name = schema.names[k]
        if name not in header:
            raise SchemaMismatchError(f"column {name!r} missing from {path}")
        pos = header.index(name)
        rows[:, k] = [schema.encode(k, r[pos]) for r in records]
    return rows


def cmd_predict(args) -> int:
    model = load_model(args.model)
    rows = _feature_rows(model, args.input, args.missing, args.delimiter)
    labels = model.schema.class_attribute.domain
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["prediction"] + [f"p({label})" for label in labels])
    if len(rows):
        idx, post = predict_rows(model, rows)
        for k, p in zip(idx, post):
            writer.writerow([labels[k]] + [repr(float(v)) for v in p])
    return EXIT_OK


def cmd_eval(args) -> int:
    model = load_model(args.model)
    class_column = args.class_column or model.schema.class_attribute.name
    data = load_csv(args.input, class_column, args.missing, args.delimiter, schema=model.schema)
    report = evaluate(model, data)
    print(f"N: {report.N}")
    print(f"accuracy: {report.accuracy!r}")
    print("confusion (rows: true, columns: predicted)")
    width = max(len(label) for label in report.labels)
    print(" " * width + " " + " ".join(label.rjust(width) for label in report.labels))
    for label, row in zip(report.labels, report.confusion):
        print(label.rjust(width) + " " + " ".join(str(v).rjust(width) for v in row))
    return EXIT_OK


def _fmt_edges(edges, names) -> str:
    if not edges:
        return "{}"
    return "{" + ", ".join(f"{names[a]}-{names[b]}" for a, b in sorted(edges)) + "}"


def cmd_verify(args) -> int:
    data = load_csv(args.input, args.class_column, args.missing, args.delimiter)
    report = brute_force_optimal(data, cap=args.max_attributes)
    names = data.schema.names
    print(f"structures examined: {report.structures_examined}")
    print(f"optimal mdl: {report.optimal_mdl!r}")
    print(f"optimal arc sets: {len(report.optimal_arc_sets)}")
    for edges in report.optimal_arc_sets:
        print(f"  {_fmt_edges(edges, names)}")
    status = "MATCH" if report.learner_matches else "MISMATCH"
    print(f"gain mode: {status} mdl={report.learner_mdl!r} arcs={_fmt_edges(report.learner_edges, names)}")
    status = "MATCH" if report.cost_mode_matches else "MISMATCH"
    print(
        f"cost mode: {status} mdl={report.cost_mode_mdl!r} gap={report.cost_mode_gap!r} "
        f"arcs={_fmt_edges(report.cost_mode_edges, names)}"
    )
    return EXIT_OK if report.learner_matches else EXIT_MISMATCH


def cmd_gen(args) -> int:
    model = load_model(args.model)
    data = sample(model, args.rows, args.seed)
    if args.output == "-":
        write_csv(data, sys.stdout, args.delimiter)
    else:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            write_csv(data, fh, args.delimiter)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="augbayes",
        description="Learn MDL-optimal forest-augmented naive Bayes classifiers.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("learn", help="learn a structure and fit a model", formatter_class=fmt)
    _add_csv_flags(p)
    p.add_argument("--mode", choices=MODES, default="abn", help="structure family")
    p.add_argument("--weight", choices=WEIGHT_MODES, default="cost", help="Kruskal edge weight")
    p.add_argument("--smoothing", choices=("mle", "laplace"), default="laplace", help="CPT estimator")
    p.add_argument("--alpha", type=float, default=1.0, help="Laplace pseudo-count")
    p.add_argument("--output", required=True, help="model JSON path")
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("score", help="MDL score of a model's structure on data", formatter_class=fmt)
    p.add_argument("--model", required=True)
    _add_csv_flags(p, class_required=False)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("predict", help="classify rows; CSV to stdout", formatter_class=fmt)
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--missing", choices=MISSING_POLICIES, default="error")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval", help="accuracy and confusion matrix", formatter_class=fmt)
    p.add_argument("--model", required=True)
    _add_csv_flags(p, class_required=False)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="compare the learner with exhaustive search", formatter_class=fmt)
    _add_csv_flags(p)
    p.add_argument("--max-attributes", type=int, default=DEFAULT_CAP, help="enumeration cap")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="sample a CSV from a model or generation spec", formatter_class=fmt)
    p.add_argument("--model", required=True, help="model document or generation spec (JSON)")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    p.add_argument("--delimiter", default=",")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream reader closed early (e.g. `| head`)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (AugBayesError, OSError, ValueError) as exc:
        print(f"augbayes {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
