"""Batch front end: search translators, sweep permutation families into
catalogs, and re-verify catalogs from disk.

Catalog entries are JSON lines; every entry embeds the recipe needed to
rebuild its table bit-for-bit, the stored verdicts, and a content hash of
the table, so `ffperm verify` can detect any tampering.  Output files are
byte-identical across runs unless --timing is requested.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from .errors import FFPermError
from .field import make_field
from .recipes import replay, table_digest
from .tables import (
    is_involution,
    is_permutation,
    subfield_domain,
)
from .translators import f_from_spec, find_translators

DEFAULT_SEED = 20260808

CSV_COLUMNS = [
    "family", "p", "n", "modulus", "k", "params",
    "is_permutation", "g_is_permutation", "is_involution",
    "inverse_verified", "table_sha256",
]


def _build_field(args):
    cap_ok = args.p ** args.n <= (1 << args.max_field_bits)
    modulus = None
    if getattr(args, "modulus", None):
        modulus = [int(c) for c in args.modulus.split(",")]
    return make_field(args.p, args.n, modulus, allow_large=cap_ok)


def _parse_f_spec(text):
    """trace[:beta_idx] | monomial:d | quad:i,l[,beta_idx]"""
    name, _, rest = text.partition(":")
    if name == "trace":
        return {"kind": "trace", "beta": int(rest) if rest else 1}
    if name == "monomial":
        return {"kind": "monomial", "d": int(rest)}
    if name == "quad":
        parts = [int(v) for v in rest.split(",")]
        spec = {"kind": "quad", "i": parts[0], "l": parts[1]}
        if len(parts) > 2:
            spec["beta"] = parts[2]
        return spec
    raise FFPermError(f"unknown f spec {text!r}")


# ---------------------------------------------------------------------------
# entry machinery
# ---------------------------------------------------------------------------

def recompute_entry(recipe_dict):
    """Replay a recipe and assemble the full catalog entry for it."""
    table, verified, extra = replay(recipe_dict)
    rec = dict(recipe_dict)
    rec["verified"] = verified
    oracle = {
        "is_permutation": is_permutation(table),
        "is_involution": is_involution(table),
        "inverse_verified": extra.get("inverse_verified"),
    }
    entry = {
        "recipe": rec,
        "oracle_results": oracle,
        "table_sha256": table_digest(table),
    }
    if extra.get("guaranteed_b") is not None:
        entry["guaranteed_b"] = extra["guaranteed_b"]
    return entry


def _entry_to_csv_row(entry):
    rec = entry["recipe"]
    orc = entry["oracle_results"]
    params = {k: v for k, v in rec.items()
              if k not in ("family", "field", "k", "verified")}
    return [
        rec["family"],
        rec["field"]["p"],
        rec["field"]["n"],
        ";".join(str(c) for c in rec["field"]["modulus"]),
        rec["k"],
        json.dumps(params, sort_keys=True),
        orc["is_permutation"],
        rec["verified"].get("g_is_permutation"),
        orc["is_involution"],
        orc["inverse_verified"],
        entry["table_sha256"],
    ]


def _write_catalog(entries, out, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for e in entries:
            writer.writerow(_entry_to_csv_row(e))
        text = buf.getvalue()
    else:
        text = "".join(json.dumps(e, sort_keys=True) + "\n" for e in entries)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# family sweeps: each yields recipe dicts in deterministic order
# ---------------------------------------------------------------------------

def _sweep_special(field, args):
    k = args.k if args.k else field.n // 2
    sign = args.sign
    deltas = (range(field.q) if args.all_delta
              else [int(v) for v in args.delta or [0]])
    s_values = (range(0, field.q - 1) if args.all_s
                else [int(v) for v in args.s or [1]])
    for d in deltas:
        for s in s_values:
            yield {
                "family": "special",
                "sign": sign,
                "field": field.spec_dict(),
                "k": k,
                "delta": d,
                "s": s,
                "L": [1],
            }


def _sweep_trinomial(args):
    m = args.m
    field = make_field(2, 3 * m, allow_large=2 ** (3 * m) <= (1 << args.max_field_bits))
    sub = field.subfield_view(m)
    for idx in sub.element_indices:
        idx = int(idx)
        if idx == 0 or idx == 1:  # excludes 0 and 1 (index 1 is the unit)
            continue
        yield {
            "family": "trinomial-cpp",
            "field": field.spec_dict(),
            "k": m,
            "params": {"nu": idx},
        }


def _sweep_cr_spe(field, args):
    k = args.k if args.k else field.n // 2
    view = field.subfield_view(k)
    for rho in view.element_indices:
        if rho == 0:
            continue
        for ell in range(1, field.p**k + 1):
            for delta in view.kernel_indices:
                if delta == 0:
                    continue
                yield {
                    "family": "cr-spe",
                    "field": field.spec_dict(),
                    "k": k,
                    "params": {"rho": int(rho), "ell": ell, "delta": int(delta)},
                }


def _sweep_switching(field, args):
    """Seeded beta and h sweep over all witnesses of f = T(beta x)."""
    k = args.k
    rng = np.random.default_rng(args.seed)
    sub = subfield_domain(field, k)
    betas = sorted(set(int(b) for b in rng.integers(1, field.q, size=args.beta_count)))
    h_tables = [sub.indices[rng.integers(0, len(sub), size=len(sub))].tolist()
                for _ in range(args.h_count)]
    for beta in betas:
        f = f_from_spec(field, k, {"kind": "trace", "beta": beta})
        for w in find_translators(f, k):
            for hv in h_tables:
                yield {
                    "family": "switching",
                    "field": field.spec_dict(),
                    "k": k,
                    "params": {
                        "L": [1],
                        "gamma": w.gamma.index,
                        "h": hv,
                        "f": {"kind": "trace", "beta": beta},
                    },
                }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_search(args):
    if args.k < 1:
        raise FFPermError("search needs --k >= 1")
    field = _build_field(args)
    spec = _parse_f_spec(args.f)
    f = f_from_spec(field, args.k, spec)
    for w in find_translators(f, args.k):
        d = w.to_dict(f_spec=spec)
        d["gamma_str"] = w.gamma.poly_str()
        d["b_str"] = w.b.poly_str()
        print(json.dumps(d, sort_keys=True))
    return 0


def cmd_catalog(args):
    if args.family == "trinomial-cpp":
        if not args.m:
            raise FFPermError("trinomial-cpp needs --m")
        recipes = list(_sweep_trinomial(args))
    else:
        if not args.p or not args.n:
            raise FFPermError(f"family {args.family!r} needs --p and --n")
        field = _build_field(args)
        if args.family == "special":
            recipes = list(_sweep_special(field, args))
        elif args.family == "cr-spe":
            recipes = list(_sweep_cr_spe(field, args))
        elif args.family == "switching":
            if not args.k:
                raise FFPermError("switching needs --k")
            recipes = list(_sweep_switching(field, args))
        else:
            raise FFPermError(f"unknown family {args.family!r}")

    entries = []
    mismatches = 0
    verified_perm = 0
    for rec in recipes:
        t0 = time.perf_counter()
        entry = recompute_entry(rec)
        if args.timing:
            entry["timing_ms"] = round((time.perf_counter() - t0) * 1e3, 3)
        v = entry["recipe"]["verified"]
        if v["is_permutation"] != v.get("g_is_permutation", v["is_permutation"]):
            mismatches += 1
        if v["is_permutation"]:
            verified_perm += 1
        entries.append(entry)
    _write_catalog(entries, args.out, args.format)
    summary = (f"constructed={len(entries)} verified_permutation={verified_perm} "
               f"mismatches={mismatches}")
    print(summary, file=sys.stderr if not args.out else sys.stdout)
    return 0 if mismatches == 0 else 1


def cmd_verify(args):
    try:
        with open(args.recipe_file) as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    bad = 0
    for no, line in enumerate(lines, 1):
        try:
            stored = json.loads(line)
        except json.JSONDecodeError as e:
            print(f"error: line {no}: invalid JSON ({e})", file=sys.stderr)
            return 2
        recipe = stored.get("recipe", stored)
        try:
            fresh = recompute_entry(recipe)
        except (FFPermError, KeyError, ValueError) as e:
            print(f"error: line {no}: cannot replay recipe ({e})", file=sys.stderr)
            return 2
        diffs = []
        if "verified" in recipe and recipe["verified"] != fresh["recipe"]["verified"]:
            diffs.append(("verified", recipe["verified"], fresh["recipe"]["verified"]))
        if "oracle_results" in stored and stored["oracle_results"] != fresh["oracle_results"]:
            diffs.append(("oracle_results", stored["oracle_results"], fresh["oracle_results"]))
        if "table_sha256" in stored and stored["table_sha256"] != fresh["table_sha256"]:
            diffs.append(("table_sha256", stored["table_sha256"], fresh["table_sha256"]))
        if diffs:
            bad += 1
            for name, old, new in diffs:
                print(f"line {no}: {name} stored={old!r} recomputed={new!r}")
    if bad:
        print(f"{bad} of {len(lines)} entries failed re-verification")
        return 1
    print(f"all {len(lines)} entries reproduce")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ffperm",
        description="construct and exhaustively verify permutation families over GF(p^n)")
    subs = parser.add_subparsers(dest="command", required=True)

    def add_field_args(sp, required=True):
        sp.add_argument("--p", type=int, required=required, help="prime characteristic")
        sp.add_argument("--n", type=int, required=required, help="extension degree")
        sp.add_argument("--k", type=int, default=0, help="subfield degree")
        sp.add_argument("--modulus", help="comma-separated modulus, low degree first")
        sp.add_argument("--max-field-bits", type=int, default=20,
                        help="override the field size cap (log2)")

    sp = subs.add_parser("search", help="exhaustive translator search for one f")
    add_field_args(sp)
    sp.add_argument("--f", required=True,
                    help="f spec: trace[:beta_idx] | monomial:d | quad:i,l[,beta_idx]")
    sp.set_defaults(func=cmd_search)

    sp = subs.add_parser("catalog", help="sweep a family and emit catalog entries")
    add_field_args(sp, required=False)
    sp.add_argument("--family", required=True,
                    choices=["special", "trinomial-cpp", "cr-spe", "switching"])
    sp.add_argument("--all-delta", action="store_true")
    sp.add_argument("--all-s", action="store_true")
    sp.add_argument("--delta", action="append", help="delta index (repeatable)")
    sp.add_argument("--s", action="append", help="exponent s (repeatable)")
    sp.add_argument("--sign", choices=["plus", "minus"], default="minus")
    sp.add_argument("--m", type=int, default=0, help="trinomial-cpp: field is GF(2^(3m))")
    sp.add_argument("--beta-count", type=int, default=5)
    sp.add_argument("--h-count", type=int, default=5)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--timing", action="store_true",
                    help="include per-entry timing (breaks byte-identical reruns)")
    sp.set_defaults(func=cmd_catalog)

    sp = subs.add_parser("verify", help="replay a catalog file and re-run oracles")
    sp.add_argument("recipe_file")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FFPermError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
