"""Batch command-line interface.

Each command reads JSON files, runs its checks, prints one deterministic
JSON report on stdout, and summarizes per-check status on stderr along
with timing.  Exit codes: 0 when every check passes, 1 when any check
fails or errors, 2 for usage, parse, or precondition problems.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time

from .complement import (
    ComplementError,
    build_Dz,
    build_representative,
    is_maximal,
    is_nondegenerate,
    standard_invariants,
)
from .certificates import CertificateError, decide_equiv_special, verify_certificate
from .gallery import GalleryError, run_gallery
from .oracle import (
    is_nilpotent,
    is_semisimple,
    jordan_parts,
    lcs_depth,
    normalizer_basis,
)
from .linalg import Subspace
from .scalars import ZERO, parse_scalar, sc
from .serialize import (
    SerializeError,
    certificate_from_json,
    certificate_to_json,
    datum_from_json,
    datum_to_json,
    system_from_json,
    to_jsonable,
)
from .systems import (
    CumulativeSum,
    DualBases,
    DualSystemError,
    ShiftPattern,
    WorkedExample,
    cartan_basis_at,
    centralizer_of_torus_at,
    stable_oracle_restriction,
    system_from_datum,
    torus_basis_at,
)
from .tensor import LieElement, Vec, Window, bracket, family, form_pair


class UsageError(Exception):
    pass


def _load_json(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (path, e))
    try:
        return json.loads(raw.decode("utf-8")), raw
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise UsageError("%s: malformed JSON: %s" % (path, e))


def _digest(command, files, options):
    blob = {
        "command": command,
        "files": {name: hashlib.sha256(raw).hexdigest()
                  for name, raw in files.items()},
        "options": options,
    }
    text = json.dumps(blob, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _window_cap(requested):
    cap = os.environ.get("CARTANKIT_MAX_WINDOW")
    if cap is None:
        return
    try:
        cap = int(cap)
    except ValueError:
        raise UsageError("CARTANKIT_MAX_WINDOW must be an integer")
    if requested > cap:
        raise UsageError(
            "requested window %d exceeds CARTANKIT_MAX_WINDOW=%d"
            % (requested, cap))


def _check(name, ok, witness=None):
    out = {"name": name, "status": "pass" if ok else "fail"}
    if witness is not None:
        out["witness"] = to_jsonable(witness)
    return out


def _error_check(name, exc):
    return {"name": name, "status": "error",
            "witness": {"detail": str(exc)}}


def _emit(command, digest, checks):
    status = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    report = {"checks": checks, "command": command, "inputs": digest,
              "status": status}
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    for c in checks:
        sys.stderr.write("%s  %s\n" % (c["status"].upper().ljust(5), c["name"]))
    sys.stderr.write("status: %s\n" % status)
    return 0 if status == "pass" else 1


# -- commands -------------------------------------------------------------


def cmd_validate(args):
    obj, raw = _load_json(args.system)
    _window_cap(args.N)
    if args.N < 1:
        raise UsageError("N must be at least 1")
    try:
        system = system_from_json(obj)
    except SerializeError as e:
        raise UsageError(str(e))
    digest = _digest("validate", {"system": raw}, {"N": args.N})
    try:
        system.validate(args.N)
        checks = [_check("duality holds for all index pairs up to N", True)]
    except DualSystemError as e:
        checks = [_check("duality holds for all index pairs up to N", False,
                         {"detail": str(e)})]
    return _emit("validate", digest, checks)


def cmd_invariants(args):
    obj, raw = _load_json(args.datum)
    try:
        d = datum_from_json(obj)
    except SerializeError as e:
        raise UsageError(str(e))
    digest = _digest("invariants", {"datum": raw}, {})
    checks = []
    try:
        inv = standard_invariants(d)
        checks.append(_check("standard invariants computed", True,
                             {"invariants": list(inv)}))
    except (ComplementError, ValueError) as e:
        checks.append(_error_check("standard invariants computed", e))
        return _emit("invariants", digest, checks)
    checks.append(_check("nondegenerate", is_nondegenerate(d)))
    checks.append(_check("maximal", is_maximal(d)))
    return _emit("invariants", digest, checks)


def cmd_equiv(args):
    obj1, raw1 = _load_json(args.first)
    obj2, raw2 = _load_json(args.second)
    try:
        d1 = datum_from_json(obj1)
        d2 = datum_from_json(obj2)
    except SerializeError as e:
        raise UsageError(str(e))
    files = {"first": raw1, "second": raw2}
    if args.certificate is not None:
        cobj, craw = _load_json(args.certificate)
        files["certificate"] = craw
        try:
            cert = certificate_from_json(cobj)
        except SerializeError as e:
            raise UsageError(str(e))
        digest = _digest("equiv", files, {"mode": "certificate"})
        try:
            res = verify_certificate(d1, d2, cert)
        except CertificateError as e:
            raise UsageError("certificate is malformed for these data: %s" % e)
        witness = None
        if not res.ok:
            witness = {"clause": res.clause, "witness": res.witness}
        checks = [_check("certificate carries the first datum onto the second",
                         res.ok, witness)]
        return _emit("equiv", digest, checks)
    digest = _digest("equiv", files, {"mode": "decide"})
    try:
        dec = decide_equiv_special(d1, d2)
    except CertificateError:
        raise UsageError("undecidable without certificate")
    if dec.equivalent:
        witness = {"certificate": certificate_to_json(dec.certificate)}
    else:
        witness = {"reason": dec.reason, "witness": dec.witness}
    checks = [_check("equivalent within the decidable family",
                     dec.equivalent, witness)]
    return _emit("equiv", digest, checks)


def _parse_invariants(text):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError("invariants must be a comma-separated integer tuple")


def cmd_build(args):
    if args.dz is not None:
        if args.kind is not None or args.invariants is not None:
            raise UsageError("--dz replaces the kind and invariant arguments")
        try:
            zval = parse_scalar(args.dz)
        except ValueError as e:
            raise UsageError("bad scalar %r: %s" % (args.dz, e))
        digest = _digest("build", {}, {"dz": args.dz})
        try:
            d = build_Dz(zval)
        except ComplementError as e:
            raise UsageError(str(e))
        name = "recurring-pair datum built"
        expected = (0, 1, 1, 1, 1)
    else:
        if args.kind is None or args.invariants is None:
            raise UsageError("build needs a kind and an invariant tuple, or --dz")
        expected = _parse_invariants(args.invariants)
        digest = _digest("build", {}, {"kind": args.kind,
                                       "invariants": list(expected)})
        try:
            d = build_representative(args.kind, expected)
        except ComplementError as e:
            checks = [_check("invariant tuple is realizable", False,
                             {"detail": str(e)})]
            return _emit("build", digest, checks)
        name = "representative built"
    payload = datum_to_json(d)
    checks = [
        _check(name, True, {"datum": payload}),
        _check("standard invariants round-trip",
               standard_invariants(d) == expected,
               {"invariants": list(standard_invariants(d))}),
    ]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return _emit("build", digest, checks)


def cmd_gallery(args):
    if args.size is not None:
        _window_cap(args.size)
    digest = _digest("gallery", {}, {"id": args.id, "size": args.size})
    try:
        results = run_gallery(args.id, args.size)
    except (GalleryError, DualSystemError) as e:
        raise UsageError(str(e))
    checks = [_check(name, ok) for name, ok in results]
    return _emit("gallery", digest, checks)


_SUITE = {
    "gl": (
        ("dual-bases", lambda: DualBases("gl")),
        ("shift-pattern dual", lambda: ShiftPattern("gl", "dual", "one")),
        ("cumulative-sum dual", lambda: CumulativeSum("gl", "dual", "full")),
        ("coefficient-twist", lambda: WorkedExample("coefficient-twist")),
        ("normal-form (0,1,1,1,1)",
         lambda: system_from_datum(build_representative("gl", (0, 1, 1, 1, 1)))),
    ),
    "sl": (
        ("dual-bases", lambda: DualBases("sl")),
        ("shift-pattern line", lambda: ShiftPattern("sl", "line", "parity")),
        ("cumulative-sum line", lambda: CumulativeSum("sl", "line", "full")),
    ),
    "so": (
        ("dual-bases even", lambda: DualBases("so")),
        ("dual-bases odd", lambda: DualBases("so", ambient_zero=True)),
        ("nonabelian example", lambda: WorkedExample("so-nonabelian-odd")),
    ),
    "sp": (
        ("dual-bases", lambda: DualBases("sp")),
        ("normal-form (0,0,0)",
         lambda: system_from_datum(build_representative("sp", (0, 0, 0)))),
    ),
}

_RANDOM_SCALARS = (sc(1), sc(-1), sc(2), sc(1, 1), sc(0, 1), sc(-1, 2))


def _random_element(rng, kind, w):
    fam = family(kind)
    idx = w.indices
    coeffs = {}
    for _ in range(3):
        i, j = rng.choice(idx), rng.choice(idx)
        if fam == "so":
            if i == j:
                continue
            key = (min(i, j), max(i, j))
        elif fam == "sp":
            key = (min(i, j), max(i, j))
        else:
            key = (i, j)
        coeffs[key] = coeffs.get(key, ZERO) + rng.choice(_RANDOM_SCALARS)
    x = LieElement(fam, {k: v for k, v in coeffs.items() if v})
    if kind == "sl":
        tr = x.trace()
        if tr:
            n = len(idx)
            x = x - LieElement("gl", {(i, i): tr / sc(n) for i in idx})
    return x


def _system_checks(label, system, max_window):
    fam = family(system.kind)
    ok_torus = True
    ok_figure = True
    ok_depth = True
    try:
        for n in range(system.min_window, max_window + 1):
            w = system.ambient_window(n)
            gens = torus_basis_at(system, w)
            for a in range(len(gens)):
                if not is_semisimple(gens[a], w):
                    ok_torus = False
                for b in range(a + 1, len(gens)):
                    if gens[a].bracket(gens[b]):
                        ok_torus = False
            h = centralizer_of_torus_at(system, w)
            if cartan_basis_at(system, w) != h:
                ok_figure = False
            elems = [LieElement(fam, dict(row)) for row in h.basis()]
            if lcs_depth(elems) > 2:
                ok_depth = False
        w = system.ambient_window(system.min_window)
        nor = stable_oracle_restriction(system, w, normalizer_basis)
        ok_normalizer = nor == centralizer_of_torus_at(system, w)
    except DualSystemError as e:
        return [_error_check("%s: window materialization" % label, e)]
    return [
        _check("%s: torus commutes and is semisimple" % label, ok_torus),
        _check("%s: constructed Cartan equals the oracle centralizer"
               % label, ok_figure),
        _check("%s: lower central series depth at most two" % label, ok_depth),
        _check("%s: Cartan truncation is self-normalizing" % label,
               ok_normalizer),
    ]


def _random_checks(kind, max_window, seed):
    rng = random.Random("%s-%d" % (kind, seed))
    n = min(max_window, 4)
    w = Window(kind, n) if kind != "so" else Window("so", n, include_zero=True)
    ok_jordan = True
    ok_jacobi = True
    ok_form = True
    for _ in range(8):
        x = _random_element(rng, kind, w)
        s, p = jordan_parts(x, w)
        if s + p != x or s.bracket(p):
            ok_jordan = False
        if not is_semisimple(s, w) or not is_nilpotent(p, w):
            ok_jordan = False
    for _ in range(8):
        x = _random_element(rng, kind, w)
        y = _random_element(rng, kind, w)
        z = _random_element(rng, kind, w)
        total = (bracket(bracket(x, y), z) + bracket(bracket(y, z), x)
                 + bracket(bracket(z, x), y))
        if total:
            ok_jacobi = False
        if kind in ("so", "sp"):
            u = Vec({rng.choice(w.indices): rng.choice(_RANDOM_SCALARS)})
            v = Vec({rng.choice(w.indices): rng.choice(_RANDOM_SCALARS)})
            if form_pair(kind, x.act(u), v) + form_pair(kind, u, x.act(v)):
                ok_form = False
    checks = [
        _check("%s: random Jordan decompositions satisfy postconditions"
               % kind, ok_jordan),
        _check("%s: random triples satisfy the Jacobi identity" % kind,
               ok_jacobi),
    ]
    if kind in ("so", "sp"):
        checks.append(_check(
            "%s: random elements leave the form invariant" % kind, ok_form))
    return checks


def cmd_verify_theorems(args):
    kinds = args.kinds.split(",") if args.kinds else ["gl", "sl", "so", "sp"]
    for k in kinds:
        if k not in _SUITE:
            raise UsageError("unknown kind: %r" % (k,))
    _window_cap(args.max_window)
    if args.max_window < 3:
        raise UsageError("max-window must be at least 3")
    digest = _digest("verify-theorems", {},
                     {"kinds": kinds, "max_window": args.max_window,
                      "seed": args.seed})
    checks = []
    for kind in kinds:
        for label, make in _SUITE[kind]:
            checks.extend(_system_checks(
                "%s/%s" % (kind, label), make(), args.max_window))
        checks.extend(_random_checks(kind, args.max_window, args.seed))
    return _emit("verify-theorems", digest, checks)


# -- entry point ----------------------------------------------------------


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="cartankit",
        description="Exact constructions and checks for Cartan subalgebras "
                    "of the finitary classical Lie algebras.")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("validate", help="check a dual system's duality relations")
    p.add_argument("system", help="system JSON file")
    p.add_argument("--N", type=int, default=20, help="index bound (default 20)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="invariants and verdicts of a datum")
    p.add_argument("datum", help="datum JSON file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("equiv", help="decide or verify equivalence of two data")
    p.add_argument("first", help="datum JSON file")
    p.add_argument("second", help="datum JSON file")
    p.add_argument("--certificate", help="certificate JSON file")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("build", help="build a representative datum")
    p.add_argument("kind", nargs="?", help="gl, sl, so, or sp")
    p.add_argument("invariants", nargs="?",
                   help="comma-separated invariant tuple")
    p.add_argument("--dz", help="build the recurring-pair datum for this scalar")
    p.add_argument("--out", help="write the datum JSON to this file")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("gallery", help="run a worked example's checks")
    p.add_argument("id", help="gallery identifier")
    p.add_argument("--size", type=int, help="window or level override")
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("verify-theorems", help="run the oracle theorem suite")
    p.add_argument("--kinds", help="comma-separated subset of gl,sl,so,sp")
    p.add_argument("--max-window", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_theorems)
    return ap


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    if not getattr(args, "func", None):
        ap.print_usage(sys.stderr)
        return 2
    start = time.monotonic()
    try:
        code = args.func(args)
    except UsageError as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    finally:
        sys.stderr.write("elapsed: %.3fs\n" % (time.monotonic() - start))
    return code


if __name__ == "__main__":
    sys.exit(main())
