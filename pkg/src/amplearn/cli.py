"""Experiment runner CLI.

Each subcommand reads a single JSON object config (unknown fields
rejected), runs one experiment family deterministically from (config,
seed), and writes <out>/<subcommand>_<seed>.csv plus a JSON metadata
sidecar. CSV bytes are a pure function of (config, seed, artifact
version): rows are emitted in input order and floats are serialized with
repr. Malformed configs exit nonzero without writing any files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import replace

import numpy as np

from . import complexity, nosignal, protocol, search
from .learner import LearnerConfig
from .qcore import PureState

ARTIFACT_VERSION = "1"

OUT_DIR_ENV = "AMPLEARN_OUT"

SUBCOMMANDS = (
    "grover",
    "cubic",
    "amplify-learn",
    "signal",
    "bounds",
    "pack",
    "discriminate",
    "triangle",
)

# field -> (type, required, default, range check or None)
_POSITIVE = ("must be positive", lambda v: v > 0)
_NONNEG = ("must be non-negative", lambda v: v >= 0)

SCHEMAS = {
    "grover": {
        "n": (int, True, None, ("must lie in [1, 20]", lambda v: 1 <= v <= 20)),
        "tau": (int, True, None, _NONNEG),
        "rounds": (int, True, None, _NONNEG),
        "seed": (int, False, 0, _NONNEG),
    },
    "cubic": {
        "n": (int, True, None, ("must lie in [1, 20]", lambda v: 1 <= v <= 20)),
        "tau": (int, True, None, _NONNEG),
        "threshold_c": (float, False, 0.5, ("must lie in (0, pi/6]", lambda v: 0 < v <= math.pi / 6)),
        "polish": (bool, False, False, None),
        "seed": (int, False, 0, _NONNEG),
    },
    "amplify-learn": {
        "n": (int, True, None, ("must lie in [1, 14]", lambda v: 1 <= v <= 14)),
        "tau": (int, True, None, _NONNEG),
        "samples_per_round": (int, False, 100, _NONNEG),
        "queries_per_copy": (int, False, 1, _POSITIVE),
        "threshold_c": (float, False, 0.5, ("must lie in (0, pi/6]", lambda v: 0 < v <= math.pi / 6)),
        "mode": (str, False, "ideal", ("must be 'ideal' or 'variational'", lambda v: v in ("ideal", "variational"))),
        "shots_per_estimate": (int, False, 100, _POSITIVE),
        "target_fidelity": (float, False, 0.98, ("must lie in (0, 1]", lambda v: 0 < v <= 1)),
        "max_iterations": (int, False, 500, _POSITIVE),
        "seed": (int, False, 0, _NONNEG),
    },
    "signal": {
        "n": (int, True, None, ("must lie in [1, 5]", lambda v: 1 <= v <= 5)),
        "tau": (int, False, 0, _NONNEG),
        "program": (str, False, "cptp-random", ("must be 'cptp-random' or 'magic-demo'", lambda v: v in ("cptp-random", "magic-demo"))),
        "bob_model": (str, False, "oracle-choice", ("must be 'oracle-choice' or 'measurement-basis'", lambda v: v in ("oracle-choice", "measurement-basis"))),
        "basis_angle": (float, False, math.pi / 2, None),
        "num_programs": (int, False, 1, _POSITIVE),
        "seed": (int, False, 0, _NONNEG),
    },
    "bounds": {
        "n": (int, True, None, _POSITIVE),
        "gates": (int, True, None, _POSITIVE),
        "epsilon": (float, False, 0.25, _POSITIVE),
        "delta": (float, False, 0.1, ("must lie in (0, 1]", lambda v: 0 < v <= 1)),
        "c1": (float, False, 1.0, _POSITIVE),
        "c2": (float, False, 1.0, _POSITIVE),
        "entropy_constant": (float, False, 1.0, _NONNEG),
        "params_per_gate": (int, False, 1, _POSITIVE),
        "seed": (int, False, 0, _NONNEG),
    },
    "pack": {
        "dim": (int, True, None, ("must be a power of two >= 2", lambda v: v >= 2 and v & (v - 1) == 0)),
        "separation": (float, True, None, ("must lie in (0, 1]", lambda v: 0 < v <= 1)),
        "pool": (int, False, 1000, _POSITIVE),
        "seed": (int, False, 0, _NONNEG),
    },
    "discriminate": {
        "dim": (int, True, None, ("must be a power of two >= 2", lambda v: v >= 2 and v & (v - 1) == 0)),
        "separation": (float, False, 0.5, ("must lie in (0, 1]", lambda v: 0 < v <= 1)),
        "pool": (int, False, 2000, _POSITIVE),
        "k": (int, True, None, ("must be >= 2", lambda v: v >= 2)),
        "copies": (list, False, [1, 2, 3, 4], None),
        "strategy": (str, False, "pairwise-helstrom-vote", ("must be a known strategy", lambda v: v in ("pairwise-helstrom-vote", "exact-posterior"))),
        "trials": (int, False, 10_000, _POSITIVE),
        "seed": (int, False, 0, _NONNEG),
    },
    "triangle": {
        "n_min": (int, False, 4, ("must be >= 1", lambda v: v >= 1)),
        "n_max": (int, False, 20, ("must be >= 1", lambda v: v >= 1)),
        "epsilon": (float, False, 0.1, _POSITIVE),
        "delta": (float, False, 0.1, ("must lie in (0, 1]", lambda v: 0 < v <= 1)),
        "threshold_c": (float, False, 0.5, ("must lie in (0, pi/6]", lambda v: 0 < v <= math.pi / 6)),
        "seed": (int, False, 0, _NONNEG),
    },
}


def validate_config(subcommand: str, raw: dict):
    """Return (config, errors, warnings); config has defaults filled in."""
    schema = SCHEMAS[subcommand]
    errors, warnings_ = [], []
    config = {}
    for key in raw:
        if key not in schema:
            errors.append(f"unknown field {key!r} for subcommand {subcommand!r}")
    for key, (typ, required, default, check) in schema.items():
        if key in raw:
            value = raw[key]
            if typ is float and isinstance(value, int) and not isinstance(value, bool):
                value = float(value)
            if not isinstance(value, typ) or isinstance(value, bool) != (typ is bool):
                errors.append(f"field {key!r} must be {typ.__name__}, got {type(value).__name__}")
                continue
            if check is not None:
                msg, fn = check
                if not fn(value):
                    errors.append(f"field {key!r} {msg}, got {value!r}")
                    continue
            config[key] = value
        elif required:
            errors.append(f"missing required field {key!r}")
        else:
            config[key] = default

    if not errors:
        if "tau" in config and "n" in config and config["tau"] >= (1 << config["n"]):
            errors.append(f"field 'tau' out of range for n={config['n']}")
        if subcommand in ("bounds", "triangle", "discriminate"):
            eps = config.get("epsilon")
            if eps is not None and eps > 0.25:
                warnings_.append(
                    f"epsilon={eps} outside the bound formulas' stated range (0, 1/4]"
                )
            delta = config.get("delta")
            if delta is not None and delta > 0.1:
                warnings_.append(
                    f"delta={delta} outside the bound formulas' stated range (0, 1/10]"
                )
    return config, errors, warnings_


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _run_grover(config, exact):
    curve = search.grover_success_curve(config["n"], config["tau"], config["rounds"])
    header = ["n", "tau", "round", "success", "queries"]
    rows = [
        [config["n"], config["tau"], r, float(p), r] for r, p in enumerate(curve)
    ]
    return header, rows, {}


def _run_cubic(config, exact):
    traj = search.run_ideal_log_search(
        config["n"], config["tau"], config["threshold_c"], polish=config["polish"]
    )
    header = ["n", "tau", "round", "angle", "success", "queries"]
    rows = [
        [config["n"], config["tau"], r, traj.angles[r], traj.success[r], r]
        for r in range(len(traj.states))
    ]
    return header, rows, {"rounds": traj.rounds, "final_success": traj.final_success()}


def _run_amplify_learn(config, exact):
    mode = "ideal" if exact else config["mode"]
    learner = LearnerConfig(
        mode=mode,
        sample_budget=config["samples_per_round"],
        shots_per_estimate=config["shots_per_estimate"],
        target_fidelity=config["target_fidelity"],
        max_iterations=config["max_iterations"],
        seed=config["seed"],
    )
    pcfg = protocol.ProtocolConfig(
        n=config["n"],
        tau=config["tau"],
        samples_per_round=config["samples_per_round"],
        learner=learner,
        threshold_c=config["threshold_c"],
        queries_per_copy=config["queries_per_copy"],
    )
    result = protocol.run_amplify_learn(pcfg)
    header = ["round", "angle", "success", "learn_fidelity", "copies", "converged"]
    rows = []
    for r in range(len(result.trajectory.states)):
        rep = result.learn_reports[r - 1] if r >= 1 else None
        rows.append(
            [
                r,
                result.trajectory.angles[r],
                result.trajectory.success[r],
                rep.achieved_fidelity if rep else 1.0,
                rep.copies_consumed if rep else 0,
                rep.converged if rep else True,
            ]
        )
    ledger = result.ledger
    meta = {
        "oracle_queries": ledger.oracle_queries,
        "training_queries": ledger.training_queries,
        "copies_consumed": ledger.copies_consumed,
        "two_qubit_gates": ledger.two_qubit_gates,
        "rounds": ledger.rounds,
        "final_success": result.final_success(),
    }
    return header, rows, meta


def _run_signal(config, exact):
    header = ["index", "program", "bob_model", "tv", "mi"]
    rows = []
    if config["program"] == "magic-demo":
        report = nosignal.run_signaling_protocol(
            config["n"],
            config["tau"],
            nosignal.magic_demo_program(),
            "measurement-basis",
            config["basis_angle"],
        )
        rows.append([0, "magic-demo", "measurement-basis", report.tv, report.mi])
    else:
        rng = np.random.default_rng(config["seed"])
        for i in range(config["num_programs"]):
            prog = nosignal.random_cptp_program(config["n"], rng)
            report = nosignal.run_signaling_protocol(
                config["n"],
                config["tau"],
                prog,
                config["bob_model"],
                config["basis_angle"],
            )
            rows.append([i, "cptp-random", config["bob_model"], report.tv, report.mi])
    return header, rows, {}


def _run_bounds(config, exact):
    spec = complexity.StateClassSpec(
        n=config["n"],
        gates=config["gates"],
        params_per_gate=config["params_per_gate"],
        entropy_constant=config["entropy_constant"],
    )
    import warnings as _w

    with _w.catch_warnings():
        _w.simplefilter("ignore", complexity.RangeWarning)
        values = {
            "covering_log_bound_nats": complexity.covering_log_bound(spec, config["epsilon"]),
            "sample_lower_bound": complexity.sample_lower_bound(
                config["n"], config["gates"], config["epsilon"], config["delta"], config["c2"]
            ),
            "sample_upper_bound": complexity.sample_upper_bound(
                config["n"], config["gates"], config["epsilon"], config["delta"], config["c1"]
            ),
        }
        lock = complexity.universal_lock(
            config["n"],
            config["epsilon"],
            config["delta"],
            {"params_per_gate": config["params_per_gate"], "c2": config["c2"]},
        )
    values.update(lock.bounds)
    header = ["bound", "value", "n", "gates", "epsilon", "delta"]
    rows = [
        [name, val, config["n"], config["gates"], config["epsilon"], config["delta"]]
        for name, val in values.items()
    ]
    return header, rows, {"shape_only": True}


def _run_pack(config, exact):
    packing = complexity.greedy_packing(
        config["dim"], config["separation"], config["pool"], config["seed"]
    )
    header = ["index", "dim", "separation", "min_distance_to_kept"]
    rows = []
    from .qcore import pure_trace_distance

    for i, s in enumerate(packing.states):
        dmin = min(
            (pure_trace_distance(s, t) for j, t in enumerate(packing.states) if j != i),
            default=float("nan"),
        )
        rows.append([i, config["dim"], config["separation"], dmin])
    return header, rows, {"size": packing.size, "pool": packing.pool_size}


def _run_discriminate(config, exact):
    packing = complexity.greedy_packing(
        config["dim"], config["separation"], config["pool"], config["seed"]
    )
    if packing.size < config["k"]:
        raise RuntimeError(
            f"packing produced only {packing.size} states; {config['k']} requested"
        )
    trimmed = complexity.PackingSet(
        packing.states[: config["k"]],
        config["separation"],
        packing.pool_size,
        config["seed"],
    )
    copies_list = config["copies"]
    if not all(isinstance(c, int) and c >= 1 for c in copies_list):
        raise RuntimeError("'copies' must be a list of positive integers")
    header = [
        "k", "copies", "strategy", "trials", "error_rate", "error_sigma",
        "mi", "mi_sigma", "fano_floor", "holevo_ceiling", "sandwich_ok",
    ]
    rows = []
    for i, copies in enumerate(copies_list):
        rep = complexity.discrimination_experiment(
            trimmed,
            copies,
            strategy=config["strategy"],
            trials=config["trials"],
            seed=config["seed"] + 1000 * (i + 1),
        )
        rows.append(
            [
                rep.k, rep.copies, rep.strategy, rep.trials, rep.error_rate,
                rep.error_sigma, rep.mi, rep.mi_sigma, rep.fano_floor,
                rep.holevo_ceiling, rep.sandwich_ok,
            ]
        )
    return header, rows, {"separation": config["separation"]}


def _run_triangle(config, exact):
    if config["n_min"] > config["n_max"]:
        raise RuntimeError("n_min must not exceed n_max")
    report = protocol.triangle_report(
        range(config["n_min"], config["n_max"] + 1),
        epsilon=config["epsilon"],
        delta=config["delta"],
        threshold_c=config["threshold_c"],
    )
    header = [
        "n", "N", "rounds", "query_floor", "gate_floor",
        "samples_floor", "unlocked_samples", "degenerate",
    ]
    rows = [
        [
            r.n, r.big_n, r.rounds, r.query_floor, r.gate_floor,
            r.samples_floor, r.unlocked_samples, r.degenerate,
        ]
        for r in report.rows
    ]
    return header, rows, {"epsilon": report.epsilon, "delta": report.delta}


RUNNERS = {
    "grover": _run_grover,
    "cubic": _run_cubic,
    "amplify-learn": _run_amplify_learn,
    "signal": _run_signal,
    "bounds": _run_bounds,
    "pack": _run_pack,
    "discriminate": _run_discriminate,
    "triangle": _run_triangle,
}


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError("config must be a single JSON object")
    return raw


def _emit(out_dir: str, subcommand: str, config: dict, header, rows, meta):
    os.makedirs(out_dir, exist_ok=True)
    stem = f"{subcommand.replace('-', '_')}_{config['seed']}"
    config_json = json.dumps(config, sort_keys=True, separators=(",", ":"))
    lines = [
        f"# amplearn v{ARTIFACT_VERSION} subcommand={subcommand} "
        f"seed={config['seed']} config={config_json}",
        ",".join(header),
    ]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    csv_path = os.path.join(out_dir, stem + ".csv")
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    sidecar = {
        "artifact_version": ARTIFACT_VERSION,
        "subcommand": subcommand,
        "seed": config["seed"],
        "config": config,
        "summary": meta,
    }
    json_path = os.path.join(out_dir, stem + ".json")
    with open(json_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(sidecar, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return csv_path, json_path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amplearn",
        description="Deterministic experiment runner for the amplify-learn laboratory.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--seed", type=int, default=None, help="overrides the config seed")
        p.add_argument(
            "--out",
            default=None,
            help=f"output directory (default ${OUT_DIR_ENV} or current directory)",
        )
        p.add_argument("--threads", type=int, default=1, help="worker count (rows stay in input order)")
        p.add_argument("--exact", action="store_true", help="disable sampling where an exact mode exists")
    v = sub.add_parser("validate", help="schema-check a config without running it")
    v.add_argument("config", help="JSON config path")
    v.add_argument("--for", dest="target", default=None, help="subcommand to validate against")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.subcommand == "validate":
        try:
            raw = _load_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        target = args.target or raw.get("subcommand")
        raw = {k: v for k, v in raw.items() if k != "subcommand"}
        if target not in SCHEMAS:
            print(
                f"error: unknown or missing target subcommand {target!r}; "
                "pass --for or a 'subcommand' field",
                file=sys.stderr,
            )
            return 2
        _, errors, warnings_ = validate_config(target, raw)
        for e in errors:
            print(f"error: {e}")
        for w in warnings_:
            print(f"warning: {w}")
        return 1 if errors else 0

    try:
        raw = _load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raw.pop("subcommand", None)
    if args.seed is not None:
        raw["seed"] = args.seed
    config, errors, warnings_ = validate_config(args.subcommand, raw)
    if args.threads < 1:
        errors.append(f"--threads must be >= 1, got {args.threads}")
    if errors:
        for e in errors:
            print(f"error: {e}", file=sys.stderr)
        return 2
    for w in warnings_:
        print(f"warning: {w}", file=sys.stderr)

    out_dir = args.out or os.environ.get(OUT_DIR_ENV) or "."
    try:
        header, rows, meta = RUNNERS[args.subcommand](config, args.exact)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    csv_path, json_path = _emit(out_dir, args.subcommand, config, header, rows, meta)
    print(csv_path)
    print(json_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
