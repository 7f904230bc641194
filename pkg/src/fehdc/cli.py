"""Command-line surface.

Subcommands: train, eval, sweep-n, sweep-d, gates truth-table, gates mc,
cost, cost fit-info, device sweep.  Exit codes: 0 success, 1 usage error,
2 data error, 3 failed --check assertion.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace

import numpy as np

from . import cost as cost_mod
from . import device as device_mod
from . import gates as gates_mod
from .assoc import AssociativeMemory
from .dataset import DataError, load_dataset, split
from .encoding import DEFAULT_ALPHABET, ItemMemory, Scheme
from .hv import make_rng
from .pipeline import (
    EvalReport,
    RunConfig,
    evaluate,
    mean_by_x,
    run_once,
    sweep_d,
    sweep_n,
    train,
)

# Bands asserted by --check mode.
CHECK_ACCURACY_LO = 0.88
CHECK_ACCURACY_HI = 0.94
CHECK_SWEEP_N_PEAK = 4
CHECK_D_INVERSION = 0.005
CHECK_D_SATURATION = 0.01


class UsageError(Exception):
    pass


class CheckFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _load_config_defaults(argv: list[str]) -> dict:
    """Read key=value defaults from a --config file, CLI flags win."""
    path = None
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif arg.startswith("--config="):
            path = arg.split("=", 1)[1]
    if path is None:
        return {}
    defaults = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key = value")
                key, val = (p.strip() for p in line.split("=", 1))
                key = key.replace("-", "_")
                for cast in (int, float):
                    try:
                        val = cast(val)
                        break
                    except ValueError:
                        continue
                defaults[key] = val
    except OSError as exc:
        raise DataError(f"cannot read config file {path}: {exc}") from exc
    return defaults


def _write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path}")


def _run_config(args) -> RunConfig:
    return RunConfig.from_seed(
        args.seed,
        data_path=args.data,
        ratio=args.ratio,
        ngram=args.n,
        dim=args.d,
        scheme=Scheme(args.scheme),
        case_fold=not args.no_case_fold,
    )


def _print_report(rep: EvalReport) -> None:
    cfg = rep.config
    print(f"n={cfg.ngram} d={cfg.dim} scheme={cfg.scheme.value} "
          f"seeds=({cfg.split_seed},{cfg.im_seed},{cfg.tiebreak_seed})")
    print(f"accuracy: {rep.accuracy:.4f} on {rep.n_test} test messages")
    print(f"confusion [ham,spam]x[ham,spam]: "
          f"[[{rep.tn}, {rep.fp}], [{rep.fn}, {rep.tp}]]")


def _cmd_train(args) -> int:
    cfg = _run_config(args)
    ds = load_dataset(args.data)
    train_ds, _ = split(ds, cfg.ratio, cfg.split_seed)
    am = train(train_ds, cfg)
    am.save(args.model_out)
    print(f"wrote {args.model_out} ({len(am)} classes, dim {am.dim})")
    if args.im_out:
        ItemMemory(DEFAULT_ALPHABET, cfg.dim, cfg.im_seed).dump(args.im_out)
        print(f"wrote {args.im_out}")
    return 0


def _cmd_eval(args) -> int:
    ds = load_dataset(args.data)
    if args.model:
        if not args.im:
            raise UsageError("--model requires --im (the matching item-memory file)")
        am = AssociativeMemory.load(args.model)
        im = ItemMemory.load(args.im)
        if im.dim != am.dim:
            raise DataError(f"item memory dim {im.dim} != model dim {am.dim}")
        cfg = replace(_run_config(args), dim=am.dim, im_seed=im.seed)
        rep = evaluate(ds, am, cfg)
    else:
        rep = run_once(ds, _run_config(args))
    _print_report(rep)
    if args.out:
        cfg = rep.config
        _write_csv(
            args.out,
            ["accuracy", "tp", "tn", "fp", "fn", "n_test", "n", "d", "scheme",
             "split_seed", "im_seed", "tiebreak_seed"],
            [[f"{rep.accuracy:.6f}", rep.tp, rep.tn, rep.fp, rep.fn, rep.n_test,
              cfg.ngram, cfg.dim, cfg.scheme.value, cfg.split_seed, cfg.im_seed,
              cfg.tiebreak_seed]],
        )
    if args.check and not (CHECK_ACCURACY_LO <= rep.accuracy <= CHECK_ACCURACY_HI):
        raise CheckFailure(
            f"accuracy {rep.accuracy:.4f} outside "
            f"[{CHECK_ACCURACY_LO}, {CHECK_ACCURACY_HI}]"
        )
    return 0


def _sweep_rows_out(args, rows, x_name: str) -> None:
    for x, seed, acc in rows:
        print(f"{x_name}={x} seed={seed} accuracy={acc:.4f}")
    if args.out:
        if args.plot_data:
            means = mean_by_x(rows)
            _write_csv(
                args.out,
                [x_name, "mean", "std"],
                [[x, f"{m:.6f}", f"{s:.6f}"] for x, (m, s) in sorted(means.items())],
            )
        else:
            _write_csv(
                args.out,
                [x_name, "seed", "accuracy"],
                [[x, seed, f"{acc:.6f}"] for x, seed, acc in rows],
            )


def _cmd_sweep_n(args) -> int:
    ds = load_dataset(args.data)
    cfg = _run_config(args)
    rows = sweep_n(ds, cfg, args.n_values, args.seeds)
    _sweep_rows_out(args, rows, "n")
    if args.check:
        means = {x: m for x, (m, _) in mean_by_x(rows).items()}
        best = max(means, key=means.get)
        if best != CHECK_SWEEP_N_PEAK:
            raise CheckFailure(f"accuracy peaks at n={best}, expected n={CHECK_SWEEP_N_PEAK}")
        tail = [n for n in means if n >= 6]
        if any(means[n] >= means[CHECK_SWEEP_N_PEAK] for n in tail):
            raise CheckFailure("accuracy at n>=6 does not drop below the n=4 peak")
    return 0


def _cmd_sweep_d(args) -> int:
    ds = load_dataset(args.data)
    cfg = _run_config(args)
    rows = sweep_d(ds, cfg, args.d_values, args.seeds)
    _sweep_rows_out(args, rows, "d")
    if args.check:
        means = {x: m for x, (m, _) in mean_by_x(rows).items()}
        ds_sorted = sorted(means)
        for lo, hi in zip(ds_sorted, ds_sorted[1:]):
            if means[hi] < means[lo] - CHECK_D_INVERSION:
                raise CheckFailure(
                    f"accuracy drops {means[lo] - means[hi]:.4f} from d={lo} to d={hi}"
                )
        if 9000 in means and 10000 in means:
            if abs(means[10000] - means[9000]) >= CHECK_D_SATURATION:
                raise CheckFailure("no saturation between d=9000 and d=10000")
    return 0


def _cmd_gates_truth_table(args) -> int:
    kind = gates_mod.GateKind(args.gate)
    table = gates_mod.table_for(kind)
    threshold = gates_mod.decision_threshold(kind)
    gate_fn = gates_mod.xor_gate if kind is gates_mod.GateKind.XOR2 else gates_mod.majority_gate
    print(f"gate={kind.value} decision_threshold={threshold:.4g} A")
    rows = []
    for inputs in sorted(table):
        res = gate_fn(*inputs)
        bits = "".join(map(str, inputs))
        print(f"{bits}  {res.op_label:<22} {res.vt_class.value:<7} "
              f"{res.current:.3g} A -> {res.logic_out}")
        rows.append([bits, res.op_label, res.vt_class.value,
                     f"{res.current:.6g}", res.logic_out])
        if args.check and res.logic_out != table[inputs].output:
            raise CheckFailure(f"row {bits}: sensed logic != table output")
    if args.out:
        _write_csv(args.out, ["inputs", "operation", "vt_state", "current_a", "output"], rows)
    return 0


def _cmd_gates_mc(args) -> int:
    kind = gates_mod.GateKind(args.gate)
    report = gates_mod.monte_carlo(kind, args.n, args.three_sigma, make_rng(args.seed))
    print(f"gate={kind.value} samples={report.n_samples} three_sigma={args.three_sigma} V")
    print(f"min logic-1 current: {report.min_logic1_current:.4g} A")
    print(f"max logic-0 current: {report.max_logic0_current:.4g} A")
    print(f"margin ratio: {report.margin_ratio:.3f} "
          f"({'non-overlapping' if report.non_overlapping else 'OVERLAP'})")
    if args.out:
        combos = sorted(report.histograms)
        header = (["sample", "vt_offset_v"]
                  + ["i_" + "".join(map(str, c)) + "_a" for c in combos]
                  + ["min_logic1_a", "max_logic0_a", "margin_ratio"])
        rows = []
        for i in range(report.n_samples):
            rows.append([i, f"{report.vt_offsets[i]:.6g}"]
                        + [f"{report.histograms[c][i]:.6g}" for c in combos]
                        + ["", "", ""])
        rows.append(["summary", ""] + ["" for _ in combos]
                    + [f"{report.min_logic1_current:.6g}",
                       f"{report.max_logic0_current:.6g}",
                       f"{report.margin_ratio:.6g}"])
        _write_csv(args.out, header, rows)
    if args.check and not report.non_overlapping:
        raise CheckFailure(f"margin ratio {report.margin_ratio:.3f} <= 1")
    return 0


def _cmd_cost(args) -> int:
    if getattr(args, "mode", None) == "fit-info":
        fit = cost_mod.fit_switch_time()
        print(f"t0 = {fit.t0:.6g} s")
        print(f"a_over_kt = {fit.a_over_kt:.6g} V^2")
        print(f"v0 = {fit.v0:.6g} V")
        for v, t in cost_mod.SWITCH_TIME_ANCHORS:
            print(f"t_switch({v} V) = {cost_mod.switch_time(fit, v):.4g} s (anchor {t:.4g} s)")
        return 0
    m, z = args.m, args.z
    if args.data:
        ds = load_dataset(args.data)
        train_ds, _ = split(ds, args.ratio, args.seed)
        if m is None:
            m = int(round(train_ds.mean_length()))
        if z is None:
            z = len(train_ds)
    if m is None or z is None:
        raise UsageError("cost requires --m and --z (or --data to derive them)")
    report = cost_mod.encoder_cost(m, args.n, z, args.d,
                                   count_bind_stages=args.count_bind_stages)
    print(f"m={m} n={args.n} z={z} d={args.d}")
    print(f"xor gates:      {report.xor_count:,}")
    print(f"majority gates: {report.maj_count:,}")
    print(f"total energy:   {report.total_energy * 1e9:.4f} nJ")
    print(f"total area:     {report.total_area_mm2:.4f} mm^2")
    print(f"  note: {report.area_note}")
    print(f"xor delay:      {report.xor_delay * 1e9:.2f} ns")
    print(f"majority delay: {report.maj_delay * 1e9:.2f} ns")
    print(f"endurance:      {report.endurance_cycles_xor:.3g} cycles (xor), "
          f"{report.endurance_cycles_maj:.3g} cycles (majority)")
    if args.out:
        _write_csv(
            args.out,
            ["m", "n", "z", "d", "xor_count", "maj_count", "total_energy_j",
             "total_area_m2", "xor_delay_s", "maj_delay_s",
             "endurance_cycles_xor", "endurance_cycles_maj", "area_note"],
            [[m, args.n, z, args.d, report.xor_count, report.maj_count,
              f"{report.total_energy:.6g}", f"{report.total_area:.6g}",
              f"{report.xor_delay:.6g}", f"{report.maj_delay:.6g}",
              f"{report.endurance_cycles_xor:.6g}",
              f"{report.endurance_cycles_maj:.6g}", report.area_note]],
        )
    if args.check:
        fit = cost_mod.fit_switch_time()
        xor_ns = cost_mod.gate_delay(cost_mod.GateKind.XOR2, fit) * 1e9
        maj_ns = cost_mod.gate_delay(cost_mod.GateKind.MAJORITY3, fit) * 1e9
        if abs(xor_ns - 31.2) > 0.01 or abs(maj_ns - 50.0) > 0.01:
            raise CheckFailure(f"gate delays {xor_ns:.3f}/{maj_ns:.3f} ns != 31.2/50 ns")
    return 0


def _cmd_device_sweep(args) -> int:
    params = device_mod.FerroParams.from_file(args.params) if args.params \
        else device_mod.FerroParams()
    dev = device_mod.new_device(params)
    if args.state == "program":
        device_mod.apply_pulse(dev, device_mod.program_pulse())
    points = device_mod.transfer_sweep(dev, args.vg_start, args.vg_stop, args.step)
    for vg, current in points[:: max(1, len(points) // 10)]:
        print(f"vg={vg:+.2f} V  id={current:.4g} A")
    if args.out:
        _write_csv(args.out, ["vg", "id"],
                   [[f"{vg:.4f}", f"{i:.6g}"] for vg, i in points])
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="fehdc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, data_required=True):
        p.add_argument("--data", required=data_required, help="label<TAB>text dataset file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--n", type=int, default=4, help="n-gram window width")
        p.add_argument("--d", type=int, default=10_000, help="hypervector dimensionality")
        p.add_argument("--ratio", type=float, default=0.8, help="train fraction")
        p.add_argument("--scheme", choices=[s.value for s in Scheme], default="ngram")
        p.add_argument("--no-case-fold", action="store_true")
        p.add_argument("--config", help="key=value defaults file")
        p.add_argument("--out", help="CSV output path")

    p = sub.add_parser("train", help="train class vectors and save the model")
    add_common(p)
    p.add_argument("--model-out", required=True)
    p.add_argument("--im-out", help="also save the item-memory descriptor")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("eval", help="train+evaluate a split, or evaluate a saved model")
    add_common(p)
    p.add_argument("--model", help="saved associative-memory file")
    p.add_argument("--im", help="saved item-memory descriptor")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("sweep-n", help="accuracy vs n-gram width")
    add_common(p)
    p.add_argument("--n-values", type=_int_list, default=[2, 3, 4, 5, 6, 7])
    p.add_argument("--seeds", type=_int_list, default=[0, 1, 2])
    p.add_argument("--plot-data", action="store_true", help="emit (x, mean, std)")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=_cmd_sweep_n)

    p = sub.add_parser("sweep-d", help="accuracy vs dimensionality")
    add_common(p)
    p.add_argument("--d-values", type=_int_list,
                   default=[1000 * k for k in range(1, 11)])
    p.add_argument("--seeds", type=_int_list, default=[0, 1, 2])
    p.add_argument("--plot-data", action="store_true")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=_cmd_sweep_d)

    p = sub.add_parser("gates", help="gate truth tables and Monte Carlo margins")
    gsub = p.add_subparsers(dest="gates_command", required=True)
    g = gsub.add_parser("truth-table")
    g.add_argument("--gate", choices=[k.value for k in gates_mod.GateKind], required=True)
    g.add_argument("--out")
    g.add_argument("--config")
    g.add_argument("--check", action="store_true")
    g.set_defaults(func=_cmd_gates_truth_table)
    g = gsub.add_parser("mc")
    g.add_argument("--gate", choices=[k.value for k in gates_mod.GateKind], required=True)
    g.add_argument("--n", type=int, default=1000)
    g.add_argument("--three-sigma", type=float, default=0.04)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.add_argument("--config")
    g.add_argument("--check", action="store_true")
    g.set_defaults(func=_cmd_gates_mc)

    p = sub.add_parser("cost", help="encoder cost report, or fit-info")
    p.add_argument("mode", nargs="?", choices=["fit-info"],
                   help="print switching-law fit constants")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--z", type=int)
    p.add_argument("--d", type=int, default=10_000)
    p.add_argument("--data", help="derive m and z from this dataset's train split")
    p.add_argument("--ratio", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count-bind-stages", action="store_true",
                   help="count n-1 xor stages per window instead of one")
    p.add_argument("--config")
    p.add_argument("--out")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=_cmd_cost)

    p = sub.add_parser("device", help="behavioral device model utilities")
    dsub = p.add_subparsers(dest="device_command", required=True)
    d = dsub.add_parser("sweep", help="Id-Vg transfer sweep CSV")
    d.add_argument("--state", choices=["program", "erase"], default="program")
    d.add_argument("--params", help="key=value ferroelectric parameter file")
    d.add_argument("--vg-start", type=float, default=-0.5)
    d.add_argument("--vg-stop", type=float, default=2.0)
    d.add_argument("--step", type=float, default=0.1)
    d.add_argument("--out")
    d.add_argument("--config")
    d.set_defaults(func=_cmd_device_sweep)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        defaults = _load_config_defaults(argv)
        if defaults:
            parser.set_defaults(**defaults)
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except CheckFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
