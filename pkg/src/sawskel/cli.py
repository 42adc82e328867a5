"""Command-line front end.

Every subcommand builds a plain JSON-able payload from library calls, so
the same payload can be cached, replayed and rendered as JSON or CSV.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import warnings
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import __version__
from .bounds import RosenfeldInstance, burnside_bound, entropy_sandwich, growth_series, rosenfeld_bound
from .errors import SkeletonError, SpecError
from .geodesic import count_geodesics, geodesic_connective
from .groups import PRESET_NAMES, load_group_json, preset
from .groups.core import Group
from .shift.entropy import plain_sft_entropy, rauzy_upper_bound, sofic_entropy
from .walks import algorithm_M, count_bridges, count_periodic, count_saps, count_saws, direct_word_problem

SCHEMA_VERSION = 1
CSV_COUNT_FIELDS = ("kind", "n", "count", "certified")
CSV_BOUND_FIELDS = ("kind", "bound", "value_lo", "value_hi", "certified")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        _emit_error("usage", message, 2)
        sys.exit(2)


def _emit_error(kind: str, message: str, code: int) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}, sort_keys=True) + "\n")


def load_group(source: str) -> Group:
    """A preset name or a path to a JSON group spec."""
    if source.endswith(".json") or os.path.sep in source or os.path.exists(source):
        try:
            return load_group_json(source)
        except OSError as exc:
            raise SpecError(f"cannot read group file {source!r}: {exc.strerror}") from exc
    return preset(source)


# -- cache ---------------------------------------------------------------------

class ResultCache:
    """Append-only JSON-lines store keyed by group fingerprint, command and parameters."""

    def __init__(self, path: str):
        self.path = path

    @staticmethod
    def key(fingerprint: str, kind: str, params: Dict[str, Any]) -> str:
        blob = json.dumps([fingerprint, kind, params], sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def get(self, key: str) -> Optional[Dict[str, Any]]:
        if not os.path.exists(self.path):
            return None
        hit = None
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    ok = isinstance(rec, dict) and "key" in rec and "payload" in rec
                except json.JSONDecodeError:
                    ok = False
                if not ok:
                    warnings.warn(f"{self.path}:{lineno}: skipping corrupt cache line")
                    continue
                if rec["key"] == key and rec.get("version") == __version__:
                    hit = rec["payload"]
        return hit

    def put(self, key: str, fingerprint: str, kind: str, params: Dict[str, Any], payload: Dict[str, Any]) -> None:
        rec = {"key": key, "version": __version__, "fingerprint": fingerprint, "kind": kind,
               "params": params, "payload": payload}
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def cache_path(args) -> Optional[str]:
    return args.cache or os.environ.get("SKELETON_CACHE") or None


# -- commands ------------------------------------------------------------------

def _need(args, name: str, flag: Optional[str] = None):
    value = getattr(args, name)
    if value is None:
        raise SpecError(f"{args.command} needs --{flag or name.replace('_', '-')}")
    return value


def _counts_payload(wc) -> Dict[str, Any]:
    return {"records": wc.records(), "params": wc.params}


def cmd_count_saw(group, args):
    return _counts_payload(count_saws(group, _need(args, "n"), workers=args.workers))


def cmd_count_sap(group, args):
    return _counts_payload(count_saps(group, _need(args, "n"), workers=args.workers))


def cmd_count_bridge(group, args):
    return _counts_payload(count_bridges(group, _need(args, "n"), _need(args, "height"), workers=args.workers))


def cmd_count_periodic(group, args):
    return _counts_payload(count_periodic(group, _need(args, "n"), mode=args.mode))


def cmd_count_geodesic(group, args):
    gc = count_geodesics(group, _need(args, "n"))
    return {"records": gc.records(), "params": gc.params, "rates": geodesic_connective(gc).as_dict()}


def cmd_wp(group, args):
    n = _need(args, "n")
    words = algorithm_M(group, n) if args.method == "M" else direct_word_problem(group, n)
    ordered = sorted(words, key=lambda w: (len(w), w))
    by_len = [0] * (n + 1)
    for w in ordered:
        by_len[len(w)] += 1
    records = [{"kind": "wp", "n": i, "count": c, "certified": True} for i, c in enumerate(by_len)]
    return {"records": records, "params": {"n_max": n, "method": args.method},
            "words": [group.alphabet.format(w) for w in ordered]}


def _bounds_payload(bounds, **extra) -> Dict[str, Any]:
    out = {"bounds": [b.as_dict() for b in bounds]}
    out.update(extra)
    return out


def cmd_rauzy_bound(group, args):
    orders = args.order or [1]
    bounds = [rauzy_upper_bound(group, n, tol=args.tol) for n in orders]
    return _bounds_payload(bounds)


def cmd_sft_entropy(group, args):
    res = plain_sft_entropy(group, tol=args.tol)
    b = res.bound
    return _bounds_payload(
        [b],
        mu=b.params["rho"],
        forbidden=[group.alphabet.format(w) for w in res.forbidden],
        characteristic_polynomial=res.polynomial,
        perron_root_exact=None if res.root_enclosure is None else list(res.root_enclosure),
    )


def cmd_sofic_entropy(group, args):
    b, auto = sofic_entropy(group, _need(args, "forbidden"), tol=args.tol)
    return _bounds_payload([b], value=0.5 * (b.value_lo + b.value_hi), width=b.value_hi - b.value_lo,
                           mu=b.params["rho"], states=auto.n_states)


def _subset(args):
    if args.subset is None:
        return None
    tokens = [t for t in args.subset.replace(",", " ").split() if t]
    return tokens, args.length


def cmd_sandwich(group, args):
    report = entropy_sandwich(
        group, _need(args, "n"), height=args.height, rauzy_orders=args.order,
        semigroup=_subset(args), periodic_n=args.periodic_n, workers=args.workers,
    )
    lo, hi = report.bracket
    return _bounds_payload(report.bounds, bracket=[lo, hi], mu_bracket=[math.exp(lo), math.exp(hi)],
                           consistent=report.consistent())


def cmd_rosenfeld(group, args):
    n = _need(args, "n")
    rho = count_saps(group, n, workers=args.workers)
    inst = RosenfeldInstance(group.degree, tuple(rho.counts), args.tail, args.tail_c, args.tail_lambda)
    res = rosenfeld_bound(inst)
    return {"beta": res.beta, "log_beta": math.log(res.beta), "certified": res.certified, "tail": res.tail,
            "cutoff": n, "polygons": rho.records()}


def cmd_burnside(group, args):
    res = burnside_bound(_need(args, "m"), _need(args, "n"))
    d = res.as_dict()
    d["verified"] = bool(res.gamma_satisfies and res.gamma_below_beta_star)
    d["certified"] = True
    return d


def cmd_growth(group, args):
    n = _need(args, "n")
    gs = growth_series(group, n)
    records = [{"kind": "growth-strict", "n": i, "count": c, "certified": True} for i, c in enumerate(gs.strict)]
    records += [{"kind": "growth-cumulative", "n": i, "count": c, "certified": True} for i, c in enumerate(gs.cumulative)]
    return {"records": records, "params": {"n_max": n},
            "estimate": {"value": gs.estimate, "certified": gs.certified, "supermultiplicative": gs.supermultiplicative}}


COMMANDS: Dict[str, Callable] = {
    "count-saw": cmd_count_saw,
    "count-sap": cmd_count_sap,
    "count-bridge": cmd_count_bridge,
    "count-periodic": cmd_count_periodic,
    "count-geodesic": cmd_count_geodesic,
    "wp": cmd_wp,
    "rauzy-bound": cmd_rauzy_bound,
    "sft-entropy": cmd_sft_entropy,
    "sofic-entropy": cmd_sofic_entropy,
    "sandwich": cmd_sandwich,
    "rosenfeld": cmd_rosenfeld,
    "burnside": cmd_burnside,
    "growth": cmd_growth,
}

# parameters that change each command's result (worker count and output format never do)
_KEY_PARAMS: Dict[str, Sequence[str]] = {
    "count-saw": ("n",),
    "count-sap": ("n",),
    "count-bridge": ("n", "height"),
    "count-periodic": ("n", "mode"),
    "count-geodesic": ("n",),
    "wp": ("n", "method"),
    "rauzy-bound": ("order", "tol"),
    "sft-entropy": ("tol",),
    "sofic-entropy": ("forbidden", "tol"),
    "sandwich": ("n", "height", "order", "subset", "length", "periodic_n"),
    "rosenfeld": ("n", "tail", "tail_c", "tail_lambda"),
    "burnside": ("m", "n"),
    "growth": ("n",),
}


_GROUPLESS = ("burnside",)


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sawskel", description="Self-avoiding walks, skeleton entropy and geodesic growth on Cayley graphs.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--preset-list", action="store_true", help="list built-in presets and exit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="z2", help="preset name or path to a JSON group spec (default z2)")
    common.add_argument("--n", type=int, help="maximal length / cutoff / Burnside exponent")
    common.add_argument("--m", type=int, help="Burnside rank")
    common.add_argument("--order", type=_int_list, help="Rauzy order(s), comma separated")
    common.add_argument("--tol", type=float, default=1e-12, help="spectral tolerance")
    common.add_argument("--height", help="height function: linear:1,0 or increments:a=1,A=-1,...")
    common.add_argument("--subset", help="semigroup generators T, comma separated")
    common.add_argument("--length", type=int, default=12, help="product length checked for --subset")
    common.add_argument("--tail", choices=("none", "zero", "geometric"), default="none", help="Rosenfeld tail model")
    common.add_argument("--tail-c", type=float, default=0.0)
    common.add_argument("--tail-lambda", type=float, default=0.0)
    common.add_argument("--forbidden", help="forbidden pattern or builtin name (ladder-builtin)")
    common.add_argument("--mode", choices=("exact", "bounded"), default="exact", help="periodicity mode")
    common.add_argument("--method", choices=("M", "direct"), default="M", help="word-problem method")
    common.add_argument("--periodic-n", type=int, help="sandwich: also report periodic-point estimate up to this length")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--cache", help="JSON-lines cache file (env SKELETON_CACHE)")
    common.add_argument("--workers", type=int, default=1)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def run(args) -> Dict[str, Any]:
    """Compute (or fetch from cache) the full report for parsed ``args``."""
    if args.workers < 1:
        raise SpecError("--workers must be >= 1")
    group = None if args.command in _GROUPLESS else load_group(args.group)
    fingerprint = group.fingerprint if group is not None else ""
    params = {k: getattr(args, k) for k in _KEY_PARAMS[args.command] if getattr(args, k, None) is not None}
    if args.subset is None:
        params.pop("length", None)
    path = cache_path(args)
    cache = ResultCache(path) if path else None
    key = ResultCache.key(fingerprint, args.command, params)
    payload = cache.get(key) if cache else None
    if payload is None:
        payload = COMMANDS[args.command](group, args)
        # normalise tuples and numpy scalars so cached and fresh reports render identically
        payload = json.loads(json.dumps(payload, default=_jsonable))
        if cache:
            cache.put(key, fingerprint, args.command, params, payload)
    return {
        "schema": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": args.command,
        "group": None if group is None else {"name": group.spec.get("name"), "fingerprint": fingerprint},
        "params": params,
        "result": payload,
    }


def _jsonable(obj):
    if hasattr(obj, "item"):
        return obj.item()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def render(report: Dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    result = report["result"]
    if "records" in result:
        w = csv.DictWriter(buf, CSV_COUNT_FIELDS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in result["records"]:
            w.writerow({**r, "certified": str(r["certified"]).lower()})
    elif "bounds" in result:
        w = csv.DictWriter(buf, CSV_BOUND_FIELDS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for b in result["bounds"]:
            w.writerow({**b, "certified": str(b["certified"]).lower()})
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k in sorted(result):
            w.writerow([k, result[k]])
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.preset_list:
        sys.stdout.write("\n".join(PRESET_NAMES) + "\n")
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        _emit_error("usage", "no command given", 2)
        return 2
    try:
        report = run(args)
    except SkeletonError as exc:
        _emit_error(exc.kind, str(exc), exc.exit_code)
        return exc.exit_code
    except MemoryError:
        _emit_error("resource-cap", "out of memory", 3)
        return 3
    sys.stdout.write(render(report, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
