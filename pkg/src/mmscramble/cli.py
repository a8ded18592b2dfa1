"""Command-line front end: regenerate scrambling data as CSV/JSON files.

Every output starts with ``# key=value`` lines recording the full run
configuration, so identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .cliffordmap import CliffordError, GateSpec, PRESETS, compile_spec, is_symplectic
from .connectivity import build_partition, infection_series, validate
from .diagnostics import (
    build_region,
    entropy_series_many,
    lyapunov_fit,
    mean_scrambling_time,
    opsize_series,
    saturation_time,
)
from .floquet import build
from .hprecovery import nonmonotonicity_scan, recovery_boundary, recovery_scan
from .lattice import LayerLayout, build_perm_map

EXIT_CONFIG = 2
EXIT_INVARIANT = 3
DEFAULT_SEED = 0


class ConfigError(ValueError):
    pass


class InvariantError(RuntimeError):
    pass


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def check_config(layout: str, N: int, rule: int) -> None:
    if N < 2:
        raise ConfigError("N must be at least 2")
    if rule == 1 and N % 4:
        raise ConfigError(f"rule 1 needs N divisible by 4 (got N={N})")
    if rule == 2 and N % 2:
        raise ConfigError(f"rule 2 needs even N (got N={N})")
    if rule not in (1, 2):
        raise ConfigError(f"unknown rule {rule}")
    if layout not in ("single", "double"):
        raise ConfigError(f"unknown layout {layout!r}")


def _gate(text: str) -> GateSpec:
    try:
        spec = GateSpec.parse(text)
        compile_spec(spec, 4)
    except CliffordError as exc:
        raise ConfigError(f"bad gate spec: {exc}") from exc
    return spec


def _circuit(args):
    check_config(args.layout, args.N, args.rule)
    layout = LayerLayout(args.layout, args.N)
    return build(layout, build_partition(layout, args.rule), _gate(args.gate))


def _refs(args, n: int) -> list[int]:
    if args.refs:
        refs = _int_list(args.refs)
        bad = [r for r in refs if not 0 <= r < n]
        if bad:
            raise ConfigError(f"reference qubits out of range: {bad}")
        return refs
    rng = np.random.default_rng(args.seed)
    return sorted(int(q) for q in rng.choice(n, size=min(args.count, n), replace=False))


def _header(args, extra: dict | None = None) -> dict:
    meta = {"tool": "mmscramble", "version": __version__, "command": args.command}
    for key in sorted(vars(args)):
        if key in ("command", "out", "func"):
            continue
        val = getattr(args, key)
        if val is not None:
            meta[key] = val
    if extra:
        meta.update(extra)
    return meta


def _emit(args, meta: dict, columns: Sequence[str], rows: Sequence[Sequence], payload: dict | None = None) -> str:
    if args.format == "json":
        body = dict(meta)
        if payload is not None:
            body.update(payload)
        else:
            body["rows"] = [dict(zip(columns, r)) for r in rows]
        return json.dumps(body, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    for key, val in meta.items():
        buf.write(f"# {key}={val}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


# subcommands ------------------------------------------------------------------


def cmd_partition(args):
    check_config(args.layout, args.N, args.rule)
    part = build_partition(LayerLayout(args.layout, args.N), args.rule)
    ok = validate(part)
    if not ok:
        raise InvariantError("partition is not a disjoint 4-cover")
    meta = _header(args, {"subsets": len(part), "valid": str(ok).lower()})
    if args.format == "json":
        lay = part.layout
        subsets = [[lay.format_label(q) for q in s] for s in part.subsets]
        return _emit(args, meta, [], [], {"partition": subsets})
    head = "".join(f"# {k}={v}\n" for k, v in meta.items())
    return head + part.dump() + "\n"


def cmd_infect(args):
    c = _circuit(args)
    refs = _refs(args, c.n)
    sizes = infection_series(c.partition, refs, args.tmax, c.perm)
    full = next((t for t, s in enumerate(sizes) if s == c.n), None)
    meta = _header(args, {"seeds": refs, "full_infection_time": full})
    return _emit(args, meta, ["t", "n"], list(enumerate(sizes)))


def cmd_opsize(args):
    c = _circuit(args)
    ref = _refs(args, c.n)[0]
    series = opsize_series(c, (ref, args.op), args.tmax)
    meta = _header(args, {"init": f"{args.op}{ref}"})
    return _emit(args, meta, ["t", "n"], series.to_csv_rows())


def cmd_entropy(args):
    c = _circuit(args)
    refs = _refs(args, c.n)
    sizes = _int_list(args.rlist) if args.rlist else [max(1, c.n // 4)]
    keys = [(ref, a) for ref in refs for a in sizes]
    regions = [build_region(c, ref, a) for ref, a in keys]
    series = entropy_series_many(c, [r.qubits for r in regions], args.tmax)
    rows = []
    sat = {}
    for (ref, a), s in zip(keys, series):
        sat[f"{ref}:{a}"] = saturation_time(s)
        rows.extend((ref, a, t, v) for t, v in enumerate(s))
    meta = _header(args, {"saturation_time": sat})
    return _emit(args, meta, ["ref", "size", "t", "S_A"], rows)


def _scan(args):
    c = _circuit(args)
    refs = _refs(args, c.n)
    r_values = _int_list(args.rlist) if args.rlist else list(range(1, c.n // 2 + 1))
    if any(not 1 <= r < c.n for r in r_values):
        raise ConfigError("r values must lie in 1..n-1")
    return c, recovery_scan(c, refs, r_values, range(1, args.tmax + 1))


def cmd_hp(args):
    c, table = _scan(args)
    meta = _header(args, {"boundary": recovery_boundary(c.n)})
    payload = table.to_json()
    if args.format == "json":
        return _emit(args, meta, [], [], payload)
    rows = [(e["ref"], e["r"], e["t"], int(e["recovered"])) for e in payload["entries"]]
    return _emit(args, meta, ["ref", "r", "t", "recovered"], rows)


def cmd_scan_nonmono(args):
    c, table = _scan(args)
    boundary = args.threshold if args.threshold is not None else recovery_boundary(c.n)
    report = nonmonotonicity_scan(table, int(boundary))
    meta = _header(args, {"boundary": int(boundary), "general_recovery_time": report.general_recovery_time})
    rows = [(ref, r, int(flag)) for (ref, r), flag in sorted(report.flags.items())]
    if args.format == "json":
        return _emit(args, meta, [], [], {"flags": [dict(ref=a, r=b, nonmonotone=bool(f)) for a, b, f in rows]})
    return _emit(args, meta, ["ref", "r", "nonmonotone"], rows)


def cmd_lyapunov(args):
    Ns = _int_list(args.Ns) if args.Ns else [8, 12, 16, 20, 24, 28, 32]
    rows = []
    for N in Ns:
        check_config(args.layout, N, args.rule)
        layout = LayerLayout(args.layout, N)
        c = build(layout, build_partition(layout, args.rule), _gate(args.gate))
        thr = args.threshold if args.threshold is not None else N * N / 2
        mean, err = mean_scrambling_time(c, thr, t_max=args.tmax)
        rows.append((N, round(math.log(N * N / 2), 12), round(mean, 12), round(err, 12)))
    fit = lyapunov_fit([(N, m) for N, _, m, _ in rows])
    meta = _header(args, {"lambda": round(fit.lam, 12), "lambda_err": round(fit.stderr, 12),
                          "intercept": round(fit.intercept, 12)})
    return _emit(args, meta, ["N", "ln_half_N2", "ts_mean", "ts_err"], rows)


def cmd_validate(args):
    check_config(args.layout, args.N, args.rule)
    layout = LayerLayout(args.layout, args.N)
    checks = {}
    gate = compile_spec(_gate(args.gate), 4)
    checks["gate_symplectic"] = is_symplectic(gate)
    checks["perm_symplectic"] = is_symplectic(build_perm_map(layout))
    part = build_partition(layout, args.rule)
    checks["partition_valid"] = validate(part)
    checks["partition_count"] = len(part) == layout.total // 4
    c = build(layout, part, _gate(args.gate))
    checks["step_symplectic"] = is_symplectic(c.step)
    meta = _header(args)
    rows = [(k, str(v).lower()) for k, v in checks.items()]
    text = _emit(args, meta, ["check", "passed"], rows)
    if not all(checks.values()):
        raise InvariantError(text)
    return text


COMMANDS = {
    "partition": cmd_partition,
    "infect": cmd_infect,
    "opsize": cmd_opsize,
    "entropy": cmd_entropy,
    "hp": cmd_hp,
    "scan-nonmono": cmd_scan_nonmono,
    "lyapunov": cmd_lyapunov,
    "validate": cmd_validate,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--layout", choices=["single", "double"], default="single")
    common.add_argument("-N", type=int, default=8)
    common.add_argument("--rule", type=int, choices=[1, 2], default=2)
    common.add_argument("--gate", default="W", help=f"preset ({', '.join(PRESETS)}) or gate DSL")
    common.add_argument("--tmax", type=int, default=20)
    common.add_argument("--threshold", type=float, default=None)
    common.add_argument("--refs", default=None, help="comma list of reference qubits (default: random)")
    common.add_argument("--count", type=int, default=5, help="number of random reference qubits")
    common.add_argument("--rlist", default=None, help="sizes, e.g. '1-21' or '4,8,16'")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=["csv", "json"], default="csv")

    parser = argparse.ArgumentParser(prog="mmscramble", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "opsize":
            p.add_argument("--op", choices=["X", "Z"], default="X")
        if name == "lyapunov":
            p.add_argument("--Ns", default=None, help="side lengths, e.g. '8,12,16'")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
    except ValueError as exc:  # ConfigError, LatticeError, CliffordError and bad regions
        print(f"mmscramble: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantError as exc:
        print(f"mmscramble: invariant violated:\n{exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"mmscramble: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
