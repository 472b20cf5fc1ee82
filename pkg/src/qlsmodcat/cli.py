"""Command-line front end for building, classifying and checking tables.

Exit codes: 0 on success, 1 when the input fails validation, 2 when an
axiom sweep fails on input that parsed cleanly.  Artifacts are written
as canonical JSON next to the input file unless --out says otherwise;
build results are cached under a content hash of the input, and cache
hits are accepted only when their stored checksum still matches.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import serialize
from .classify import classification_report, dedupe, enumerate_modcat_data
from .comodule import build_A, regular_coaction
from .deformation import build_bigalois, build_lifting, transport
from .errors import (
    CocycleInvalid,
    ConfluenceFailure,
    DimensionMismatch,
    HypothesisViolated,
    IsoCheckFailed,
    NotClosed,
    NotExteriorDatum,
    OutOfRange,
    SizeBound,
    ValidationError,
)
from .hopf import build_bosonization

INPUT_ERRORS = (ValidationError, SizeBound, NotExteriorDatum, OutOfRange,
                DimensionMismatch, HypothesisViolated, CocycleInvalid)
INTERNAL_ERRORS = (ConfluenceFailure, IsoCheckFailed, NotClosed)


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}:{e.lineno}:{e.colno}: {e.msg}")


def _out_path(args, suffix: str) -> Path:
    if args.out:
        return Path(args.out)
    src = Path(args.input)
    stem = src.name[:-5] if src.name.endswith(".json") else src.name
    return src.with_name(f"{stem}.{suffix}.json")


def _write_artifact(path: Path, obj) -> None:
    path.write_text(serialize.dumps_canonical(obj) + "\n")


def _parse_sample(text: str):
    try:
        return [Fraction(tok) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse the scalar sample {text!r}")


# ------------------------------------------------------------------ cache

def _cache_dir() -> Path:
    env = os.environ.get("QLSMODCAT_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "qlsmodcat"


def _checksum(payload) -> str:
    return hashlib.sha256(serialize.dumps_canonical(payload).encode()).hexdigest()


def _cache_key(command: str, obj, options: dict) -> str:
    blob = serialize.dumps_canonical(
        {"command": command, "input": obj, "options": options})
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_get(key: str):
    path = _cache_dir() / f"{key}.json"
    try:
        stored = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if not isinstance(stored, dict) or "payload" not in stored:
        return None
    if stored.get("checksum") != _checksum(stored["payload"]):
        return None
    return stored["payload"]


def _cache_put(key: str, payload) -> None:
    try:
        _cache_dir().mkdir(parents=True, exist_ok=True)
        (_cache_dir() / f"{key}.json").write_text(serialize.dumps_canonical(
            {"checksum": _checksum(payload), "payload": payload}))
    except OSError:
        pass


# --------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    obj = _read_json(args.input)
    datum, lifting, mcd = serialize.load_datum(obj)
    reports = [datum.validate()]
    if lifting is not None:
        reports.append(lifting.validate())
    if mcd is not None:
        reports.append(mcd.validate())
    ok = all(r.ok for r in reports)
    if args.format == "json":
        print(serialize.dumps_canonical(
            {"valid": ok, "N": list(datum.N),
             "reports": [serialize.report_to_json(r) for r in reports]}))
    elif ok:
        parts = [f"valid, N={list(datum.N)}"]
        if lifting is not None:
            parts.append("lifting ok")
        if mcd is not None:
            parts.append(f"modcat ok (dim {mcd.dim()})")
        print("; ".join(parts))
    else:
        for r in reports:
            for name, witness in r.failures:
                print(f"FAIL {r.subject} {name}: {witness}")
    return 0 if ok else 1


def _finish_build(args, obj, command, suffix, options, build):
    """Shared cache/verify/write plumbing for the three build commands."""
    key = _cache_key(command, obj, options)
    payload = None if args.no_cache else _cache_get(key)
    cached = payload is not None
    if payload is None:
        payload = build()
        if not args.no_cache:
            _cache_put(key, payload)
    out = _out_path(args, suffix)
    _write_artifact(out, payload)
    return payload, out, cached


def cmd_build_hopf(args) -> int:
    obj = _read_json(args.input)
    datum, _, _ = serialize.load_datum(obj)

    def build():
        H = build_bosonization(datum)
        if args.conductor:
            if args.conductor % H.L:
                raise ValidationError(
                    f"conductor {args.conductor} is not a multiple of {H.L}")
            H = H.rebased(args.conductor)
        rep = H.verify()
        if not rep.ok:
            raise ConfluenceFailure(
                f"built tables fail the axiom sweep: {rep.checks_failed()}")
        return serialize.hopf_dump(H)

    payload, out, cached = _finish_build(
        args, obj, "build-hopf", "hopf", {"conductor": args.conductor}, build)
    note = " (cache hit)" if cached else ""
    print(f"bosonization: dim {payload['dim']}, conductor {payload['L']}"
          f"{note}; wrote {out}")
    return 0


def cmd_build_lifting(args) -> int:
    obj = _read_json(args.input)
    _, lifting, _ = serialize.load_datum(obj)
    if lifting is None:
        raise ValidationError("the input has no lifting section")

    def build():
        H = build_lifting(lifting)
        if args.conductor:
            if args.conductor % H.L:
                raise ValidationError(
                    f"conductor {args.conductor} is not a multiple of {H.L}")
            H = H.rebased(args.conductor)
        rep = H.verify()
        if not rep.ok:
            raise ConfluenceFailure(
                f"built tables fail the axiom sweep: {rep.checks_failed()}")
        return serialize.hopf_dump(H)

    payload, out, cached = _finish_build(
        args, obj, "build-lifting", "lifting",
        {"conductor": args.conductor}, build)
    note = " (cache hit)" if cached else ""
    print(f"lifting: dim {payload['dim']}, conductor {payload['L']}"
          f"{note}; wrote {out}")
    return 0


def cmd_build_algebra(args) -> int:
    obj = _read_json(args.input)
    _, _, mcd = serialize.load_datum(obj)
    if mcd is None:
        raise ValidationError("the input has no modcat section")
    if args.conductor:
        raise ValidationError(
            "the conductor override applies to build-hopf and build-lifting")

    def build():
        return serialize.comodule_dump(build_A(mcd))

    payload, out, cached = _finish_build(
        args, obj, "build-algebra", "algebra", {}, build)
    note = " (cache hit)" if cached else ""
    print(f"comodule algebra: dim {payload['dim']} over a dim "
          f"{payload['hopf']['dim']} Hopf algebra{note}; wrote {out}")
    return 0


def cmd_classify(args) -> int:
    obj = _read_json(args.input)
    datum, _, _ = serialize.load_datum(obj)
    sample = _parse_sample(args.sample)
    report = classification_report(datum, sample,
                                   bound=args.max_group_order,
                                   seed=args.seed)
    data = enumerate_modcat_data(datum, sample, bound=args.max_group_order)
    reps = dedupe(data, strict=args.strict_cocycle)
    payload = {"report": report.as_dict(), "representatives": len(reps)}
    out = _out_path(args, "classify")
    _write_artifact(out, payload)
    if args.format == "json":
        print(serialize.dumps_canonical(payload))
    else:
        print(report.to_text())
        print(f"representatives: {len(reps)}")
    print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_transport(args) -> int:
    obj = _read_json(args.input)
    _, lifting, mcd = serialize.load_datum(obj)
    if lifting is None:
        raise ValidationError("the input has no lifting section")
    B = build_bigalois(lifting)
    A = build_A(mcd) if mcd is not None else regular_coaction(B.right_hopf)
    T, rep = transport(B, A)
    payload = {"algebra": serialize.comodule_dump(T),
               "report": serialize.report_to_json(rep)}
    out = _out_path(args, "transport")
    _write_artifact(out, payload)
    if args.format == "json":
        print(serialize.dumps_canonical(payload))
    else:
        print(f"transported algebra: dim {T.dim}")
        if rep.ok:
            print("all recorded invariants preserved")
        else:
            for name, witness in rep.failures:
                print(f"changed {name}: {witness}")
    print(f"wrote {out}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    obj = _read_json(args.input)
    if isinstance(obj, dict) and "algebra" in obj and "report" in obj:
        obj = obj["algebra"]
    try:
        if isinstance(obj, dict) and "left_coaction" in obj:
            rep = serialize.bigalois_load(obj).verify()
        elif isinstance(obj, dict) and "coaction" in obj:
            rep = serialize.comodule_load(obj).verify()
        elif isinstance(obj, dict) and "comult" in obj:
            rep = serialize.hopf_load(obj).verify()
        elif isinstance(obj, dict) and "mult" in obj:
            rep = serialize.algebra_load(obj).verify_algebra()
        elif isinstance(obj, dict) and "group" in obj:
            raise ValidationError(
                "this is an input datum; use the validate command")
        else:
            raise ValidationError("unrecognized artifact shape")
    except (KeyError, IndexError, TypeError) as e:
        raise ValidationError(f"artifact is structurally broken: {e!r}")
    if args.format == "json":
        print(serialize.dumps_canonical(serialize.report_to_json(rep)))
    elif rep.ok:
        print(f"{rep.subject}: ok")
    else:
        for name, witness in rep.failures:
            print(f"FAIL {rep.subject} {name}: {witness}")
    return 0 if rep.ok else 2


# ------------------------------------------------------------------ main

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qlsmodcat",
        description="exact module-category data over finite abelian groups")
    sub = p.add_subparsers(dest="command", required=True)
    commands = [
        ("validate", cmd_validate, "check an input datum file"),
        ("build-hopf", cmd_build_hopf, "build the graded Hopf algebra"),
        ("build-lifting", cmd_build_lifting, "build the lifted Hopf algebra"),
        ("build-algebra", cmd_build_algebra, "build the comodule algebra"),
        ("classify", cmd_classify, "sweep and tabulate module-category data"),
        ("transport", cmd_transport,
         "move an algebra along the lifting's connecting object"),
        ("verify", cmd_verify, "re-run the axiom sweep on a dumped artifact"),
    ]
    for name, func, help_text in commands:
        q = sub.add_parser(name, help=help_text)
        q.add_argument("input", help="input JSON file")
        q.add_argument("--out", help="artifact path (default: next to input)")
        q.add_argument("--format", choices=("text", "json"), default="text")
        q.add_argument("--sample", default="0,1",
                       help="comma-separated scalar sample for classify")
        q.add_argument("--max-group-order", type=int, default=256,
                       dest="max_group_order")
        q.add_argument("--conductor", type=int,
                       help="rebase built tables to this conductor")
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--no-cache", action="store_true", dest="no_cache")
        q.add_argument("--strict-cocycle", action="store_true",
                       dest="strict_cocycle",
                       help="dedupe by raw cocycle tables, not classes")
        q.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except INTERNAL_ERRORS as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
