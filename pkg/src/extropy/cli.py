"""Command-line front end.

Subcommands mirror the analyses: ``dist`` scores a distribution file,
``rate`` profiles growing column prefixes, ``complexity`` builds the
six-series comparison table, ``bifurcate`` sweeps a chaotic map,
``select`` ranks features, and ``evaluate`` runs selection through a
random forest.  Every output embeds the tool version, the resolved
configuration, and a digest of each input file, so identical invocations
produce bit-identical artifacts.

Exit codes: 0 success, 1 usage error, 2 data/validation error,
3 numerical-domain error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

import numpy as np

from . import __version__
from .complexity import SERIES_KINDS, complexity_report, generate_series
from .dataio import (
    Dataset,
    DiscretizeSpec,
    dataset_to_feature_matrix,
    read_csv,
    read_pmf_file,
)
from .distributions import (
    JointPmf,
    LogBase,
    NumericalDomainError,
    ValidationError,
)
from .dynamics import bifurcation_scan
from .forest import ForestClassifier, classification_metrics, stratified_split
from .measures import (
    extropy,
    joint_extropy_bounds,
    shannon_entropy,
    simpson_diversity,
)
from .rates import empirical_joint, finite_entropy_rate, finite_extropy_rate
from .selection import RANK_METHODS, rank_features, select_features_extropy

OUTPUT_DIR_ENV = "EXTROPY_OUT_DIR"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        digest.update(handle.read())
    return digest.hexdigest()


def _metadata(command: str, args: argparse.Namespace, inputs: list) -> dict:
    # output destinations are not part of the analysis configuration
    skipped = {"func", "out", "diagram"}
    config = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in skipped and v is not None
    }
    return {
        "tool": "extropy",
        "version": __version__,
        "command": command,
        "config": config,
        "input_sha256": {str(p): _sha256(p) for p in inputs},
    }


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    out_dir = os.environ.get(OUTPUT_DIR_ENV)
    if out_dir and not os.path.dirname(path):
        return os.path.join(out_dir, path)
    return path


def _emit(text: str, out: str | None) -> None:
    out = _resolve_out(out)
    if out is None:
        sys.stdout.write(text)
        return
    tmp = out + ".tmp"
    try:
        with open(tmp, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, out)
    finally:
        if os.path.exists(tmp):
            os.remove(tmp)


def _json_report(metadata: dict, results) -> str:
    return json.dumps(
        {"metadata": metadata, "results": results}, sort_keys=True, indent=2
    ) + "\n"


def _csv_table(metadata: dict, header: list, rows: list) -> str:
    lines = [f"# {json.dumps(metadata, sort_keys=True)}"]
    lines.append(",".join(header))
    for row in rows:
        cells = []
        for value in row:
            if isinstance(value, float):
                cells.append(f"{value:.6f}")
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _flatten_for_csv(results: dict, prefix: str = "") -> list:
    rows = []
    for key, value in results.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten_for_csv(value, name + "."))
        elif isinstance(value, (list, tuple)):
            rows.append([name, " ".join(str(v) for v in value)])
        else:
            rows.append([name, value])
    return rows


def _report(metadata: dict, results: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        _emit(_json_report(metadata, results), out)
    else:
        _emit(_csv_table(metadata, ["key", "value"], _flatten_for_csv(results)), out)


# ----------------------------------------------------------------- dist


def _run_dist(args) -> int:
    dist = read_pmf_file(args.pmf)
    base = LogBase.coerce(args.base)
    flat = dist.flatten() if isinstance(dist, JointPmf) else dist
    results = {
        "entropy": shannon_entropy(flat, base),
        "extropy": extropy(flat, base),
        "simpson_diversity": simpson_diversity(flat),
        "support_size": flat.support_size,
        "base": base.value,
    }
    if isinstance(dist, JointPmf):
        results["arity"] = dist.arity
        results["support_sizes"] = list(dist.support_sizes)
        if dist.arity == 2:
            bounds = joint_extropy_bounds(dist, base)
            results["marginal_extropy_x"] = bounds.extropy_x
            results["marginal_extropy_y"] = bounds.extropy_y
            results["conditional_extropy_x_given_y"] = bounds.cond_x_given_y
            results["conditional_extropy_y_given_x"] = bounds.cond_y_given_x
            results["bounds"] = {
                "max_joint_mass": bounds.max_joint_mass,
                "bound_via_x_applies": bounds.bound_via_x_applies,
                "bound_via_y_applies": bounds.bound_via_y_applies,
                "joint_le_my_jx": bounds.joint_le_my_jx,
                "joint_le_mx_jy": bounds.joint_le_mx_jy,
                "joint_le_cond_x_given_y": bounds.joint_le_cond_x_given_y,
            }
    metadata = _metadata("dist", args, [args.pmf])
    _report(metadata, results, args.format, args.out)
    return 0


# ----------------------------------------------------------------- rate


def _feature_columns(args, dataset: Dataset) -> list:
    if args.columns:
        names = [c.strip() for c in args.columns.split(",") if c.strip()]
        for n in names:
            if n not in dataset.names:
                raise ValidationError(f"no column named {n!r}")
    else:
        names = [n for n in dataset.names if n != getattr(args, "target", None)]
    return names


def _discretized_columns(dataset: Dataset, names: list, spec: DiscretizeSpec) -> list:
    from .dataio import discretize

    columns = []
    for name in names:
        column = dataset.column(name)
        if dataset.column_type(name) == "real":
            columns.append(discretize(column, spec).tolist())
        elif dataset.column_type(name) == "integer":
            columns.append(np.asarray(column).tolist())
        else:
            columns.append(list(column))
    return columns


def _run_rate(args) -> int:
    dataset = read_csv(args.data, delimiter=args.delimiter)
    names = _feature_columns(args, dataset)
    spec = DiscretizeSpec(args.discretize, bins=args.bins, decimals=args.decimals)
    columns = _discretized_columns(dataset, names, spec)
    base = LogBase.coerce(args.base)
    rows = []
    for j in range(1, len(columns) + 1):
        joint = empirical_joint(columns[:j])
        ex = finite_extropy_rate(joint, n=j, base=base)
        en = finite_entropy_rate(joint, n=j, base=base)
        rows.append([j, ex.value, en.value, ex.support])
    metadata = _metadata("rate", args, [args.data])
    if args.format == "json":
        results = [
            {
                "step": r[0],
                "extropy_rate": r[1],
                "entropy_rate": r[2],
                "support_size": r[3],
                "column": names[r[0] - 1],
            }
            for r in rows
        ]
        _emit(_json_report(metadata, results), args.out)
    else:
        _emit(
            _csv_table(
                metadata,
                ["step", "extropy_rate", "entropy_rate", "support_size"],
                rows,
            ),
            args.out,
        )
    return 0


# ----------------------------------------------------------- complexity


def _run_complexity(args) -> int:
    base = LogBase.coerce(args.base)
    rows = []
    for kind in SERIES_KINDS:
        series = generate_series(kind, length=args.length)
        report = complexity_report(series, base=base)
        rows.append([kind, report.apen, report.permutation, report.extropy_rate])
    metadata = _metadata("complexity", args, [])
    if args.format == "json":
        results = [
            {"series": r[0], "apen": r[1], "pe": r[2], "extropy_rate": r[3]}
            for r in rows
        ]
        _emit(_json_report(metadata, results), args.out)
    else:
        _emit(
            _csv_table(metadata, ["series", "apen", "pe", "extropy_rate"], rows),
            args.out,
        )
    return 0


# ------------------------------------------------------------ bifurcate


def _run_bifurcate(args) -> int:
    scan = bifurcation_scan(
        args.map,
        args.param_lo,
        args.param_hi,
        args.steps,
        burn_in=args.burn_in,
        length=args.length,
        round_decimals=args.decimals,
        base=LogBase.coerce(args.base),
    )
    metadata = _metadata("bifurcate", args, [])
    rows = []
    for p in scan.points:
        if p.rate is None:
            rows.append([p.parameter, "", "", "", "", p.error])
        else:
            rows.append(
                [
                    p.parameter,
                    p.rate.value,
                    p.distinct_states,
                    p.orbit_min,
                    p.orbit_max,
                    "",
                ]
            )
    _emit(
        _csv_table(
            metadata,
            ["parameter", "extropy_rate", "distinct_states", "orbit_min", "orbit_max", "error"],
            rows,
        ),
        args.out,
    )
    if args.diagram:
        diagram_rows = []
        for p in scan.points:
            if p.rate is None:
                continue
            # re-generate the orbit and sample it for external plotting
            from .dynamics import henon_orbit, logistic_orbit

            if args.map == "logistic":
                orbit = logistic_orbit(
                    p.parameter, burn_in=args.burn_in, length=args.length
                )
            else:
                orbit = henon_orbit(
                    p.parameter, burn_in=args.burn_in, length=args.length
                )
            for value in orbit.values[:: args.diagram_stride]:
                diagram_rows.append([p.parameter, float(value)])
        _emit(
            _csv_table(metadata, ["parameter", "orbit_value"], diagram_rows),
            args.diagram,
        )
    return 0


# --------------------------------------------------------------- select


def _selection_inputs(args):
    dataset = read_csv(args.data, delimiter=args.delimiter)
    if args.target is not None and args.target not in dataset.names:
        raise ValidationError(f"target column {args.target!r} not present")
    matrix = dataset_to_feature_matrix(dataset, target=args.target)
    raw_columns = []
    for name in matrix.names:
        column = dataset.column(name)
        if dataset.column_type(name) == "categorical":
            _, codes = np.unique(np.asarray(column, dtype=object), return_inverse=True)
            raw_columns.append(codes.astype(float))
        else:
            raw_columns.append(np.asarray(column, dtype=float))
    raw = np.column_stack(raw_columns)
    target = list(dataset.column(args.target)) if args.target else None
    return dataset, matrix, raw, target


def _run_selection_methods(args, matrix, raw, target) -> dict:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    results = {}
    for method in methods:
        if method == "extropy":
            sel = select_features_extropy(matrix, args.k, LogBase.coerce(args.base))
            results[method] = {
                "selected": list(sel.selected),
                "selected_names": list(sel.selected_names),
                "prefix_extropy_rates": list(sel.scores),
                "prefix_support_sizes": [r.support for r in sel.prefix_rates],
            }
        elif method in RANK_METHODS:
            if target is None:
                raise ValidationError(f"method {method!r} needs --target")
            source = raw if method == "fscore" else matrix
            sel = rank_features(source, target, method, args.k)
            scores = [
                s if s != float("inf") else "inf" for s in sel.scores
            ]
            results[method] = {
                "selected": list(sel.selected),
                "selected_names": [matrix.names[i] for i in sel.selected],
                "scores": scores,
            }
        else:
            raise ValidationError(f"unknown selection method {method!r}")
    return results


def _run_select(args) -> int:
    _, matrix, raw, target = _selection_inputs(args)
    results = {
        "k": args.k,
        "columns": list(matrix.names),
        "methods": _run_selection_methods(args, matrix, raw, target),
    }
    metadata = _metadata("select", args, [args.data])
    _report(metadata, results, args.format, args.out)
    return 0


# ------------------------------------------------------------- evaluate


def _run_evaluate(args) -> int:
    dataset, matrix, raw, target = _selection_inputs(args)
    if target is None:
        raise ValidationError("evaluate needs --target")
    selections = _run_selection_methods(args, matrix, raw, target)
    y = np.asarray(target)
    positive = None
    if args.positive_class is not None:
        by_text = {str(label): label for label in np.unique(y)}
        if args.positive_class not in by_text:
            raise ValidationError(
                f"positive class {args.positive_class!r} not among labels "
                f"{sorted(by_text)}"
            )
        positive = by_text[args.positive_class]
    blocks = {}
    for method, info in selections.items():
        chosen = sorted(info["selected"])
        X = raw[:, chosen]
        X_train, X_test, y_train, y_test = stratified_split(
            X, y, args.test_fraction, seed=args.seed
        )
        clf = ForestClassifier(
            n_trees=args.trees,
            max_depth=args.depth,
            seed=args.seed,
        )
        clf.fit(X_train, y_train)
        metrics = classification_metrics(y_test, clf.predict(X_test), positive)
        blocks[method] = {
            "selected": chosen,
            "selected_names": [matrix.names[i] for i in chosen],
            "accuracy": metrics.accuracy,
            "f1": metrics.f1,
            "tpr": metrics.tpr,
            "confusion": {
                "tp": metrics.tp,
                "fp": metrics.fp,
                "fn": metrics.fn,
                "tn": metrics.tn,
            },
            "positive_class": str(metrics.positive_class),
            "seed": args.seed,
        }
    results = {"k": args.k, "methods": blocks}
    metadata = _metadata("evaluate", args, [args.data])
    _report(metadata, results, args.format, args.out)
    return 0


# ---------------------------------------------------------------- main


def _build_parser() -> _Parser:
    parser = _Parser(prog="extropy", description=__doc__)
    parser.add_argument("--version", action="version", version=f"extropy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    dist = sub.add_parser("dist", help="entropy/extropy/diversity of a pmf file")
    dist.add_argument("--pmf", required=True, help="tab-separated pmf or joint file")
    dist.add_argument("--base", default="natural")
    dist.add_argument("--format", choices=("json", "csv"), default="json")
    dist.add_argument("--out")
    dist.set_defaults(func=_run_dist)

    rate = sub.add_parser("rate", help="prefix extropy-rate profile over columns")
    rate.add_argument("--data", required=True, help="input CSV")
    rate.add_argument("--columns", help="comma-separated column subset")
    rate.add_argument("--target", help="column to exclude")
    rate.add_argument("--delimiter", default=",")
    rate.add_argument("--base", default="two")
    rate.add_argument(
        "--discretize", choices=("round", "equal_width", "quantile"), default="round"
    )
    rate.add_argument("--decimals", type=int, default=1)
    rate.add_argument("--bins", type=int, default=10)
    rate.add_argument("--format", choices=("json", "csv"), default="csv")
    rate.add_argument("--out")
    rate.set_defaults(func=_run_rate)

    complexity = sub.add_parser("complexity", help="six-series complexity table")
    complexity.add_argument("--length", type=int, default=25)
    complexity.add_argument("--base", default="two")
    complexity.add_argument("--format", choices=("json", "csv"), default="csv")
    complexity.add_argument("--out")
    complexity.set_defaults(func=_run_complexity)

    bifurcate = sub.add_parser("bifurcate", help="extropy-rate scan of a chaotic map")
    bifurcate.add_argument("--map", choices=("logistic", "henon"), required=True)
    bifurcate.add_argument("--from", dest="param_lo", type=float, required=True)
    bifurcate.add_argument("--to", dest="param_hi", type=float, required=True)
    bifurcate.add_argument("--steps", type=int, required=True)
    bifurcate.add_argument("--burn-in", dest="burn_in", type=int, default=500)
    bifurcate.add_argument("--length", type=int, default=300)
    bifurcate.add_argument("--decimals", type=int, default=2)
    bifurcate.add_argument("--base", default="two")
    bifurcate.add_argument("--diagram", help="also emit a bifurcation-diagram CSV")
    bifurcate.add_argument("--diagram-stride", dest="diagram_stride", type=int, default=3)
    bifurcate.add_argument("--out")
    bifurcate.set_defaults(func=_run_bifurcate)

    select = sub.add_parser("select", help="rank features by each method")
    select.add_argument("--data", required=True)
    select.add_argument("--target")
    select.add_argument("--k", type=int, required=True)
    select.add_argument("--methods", default="extropy,mi,chi2,fscore")
    select.add_argument("--delimiter", default=",")
    select.add_argument("--base", default="two")
    select.add_argument("--format", choices=("json", "csv"), default="json")
    select.add_argument("--out")
    select.set_defaults(func=_run_select)

    evaluate = sub.add_parser(
        "evaluate", help="select features per method and score a forest on each"
    )
    evaluate.add_argument("--data", required=True)
    evaluate.add_argument("--target", required=True)
    evaluate.add_argument("--k", type=int, required=True)
    evaluate.add_argument("--methods", default="extropy,mi,chi2,fscore")
    evaluate.add_argument("--delimiter", default=",")
    evaluate.add_argument("--base", default="two")
    evaluate.add_argument("--seed", type=int, default=0)
    evaluate.add_argument("--test-fraction", dest="test_fraction", type=float, default=0.2)
    evaluate.add_argument(
        "--positive-class",
        dest="positive_class",
        help="label used for F1/TPR; defaults to the largest label",
    )
    evaluate.add_argument("--trees", type=int, default=50)
    evaluate.add_argument("--depth", type=int, default=10)
    evaluate.add_argument("--format", choices=("json", "csv"), default="json")
    evaluate.add_argument("--out")
    evaluate.set_defaults(func=_run_evaluate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except ValidationError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except NumericalDomainError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
