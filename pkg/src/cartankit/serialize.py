"""JSON interchange for data, systems, and certificates.

One schema per object kind, exact scalars as strings throughout:

  datum        {kind, X_dim, Y_dim, omega, lambdas, mus?}
  system       {kind, catalog, params, complement?}
  certificate  {sigma: {finite, pieces}, alphas, pi_X, pi_Y?}

Covectors are dense lists of scalar strings; scalar sequences and
covector sequences both use {prefix, period}.  ``to_jsonable`` turns
witness payloads (scalars, vectors, sets, infinite counts) into plain
JSON values for reports.
"""

from __future__ import annotations

from .complement import ComplementDatum
from .epseq import INFINITE, EPSeq, TwoSidedEPSeq
from .scalars import Scalar, format_scalar, parse_scalar
from .systems import (
    CumulativeSum,
    DualBases,
    DualSystem,
    DualSystemError,
    NormalFormSystem,
    ShiftPattern,
    WorkedExample,
    system_from_datum,
)
from .tensor import Vec
from .certificates import EquivalenceCertificate, SigmaMap


class SerializeError(ValueError):
    pass


def _expect(cond, msg):
    if not cond:
        raise SerializeError(msg)


def _scalar_out(v):
    return format_scalar(v)


def _scalar_in(text):
    _expect(isinstance(text, str), "scalar must be a string: %r" % (text,))
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as e:
        raise SerializeError("bad scalar %r: %s" % (text, e))


def _covector_out(vec, dim):
    return [_scalar_out(vec[k]) for k in range(1, dim + 1)]


def _covector_in(obj, dim):
    _expect(isinstance(obj, list) and len(obj) == dim,
            "covector must be a list of %d scalars" % dim)
    return Vec({k: _scalar_in(v) for k, v in zip(range(1, dim + 1), obj)})


def _seq_out(seq, entry_out):
    return {"prefix": [entry_out(v) for v in seq.prefix],
            "period": [entry_out(v) for v in seq.period]}


def _seq_in(obj, entry_in):
    _expect(isinstance(obj, dict) and set(obj) <= {"prefix", "period"},
            "sequence must be {prefix?, period}")
    _expect("period" in obj, "sequence needs a period")
    prefix = obj.get("prefix", [])
    _expect(isinstance(prefix, list) and isinstance(obj["period"], list),
            "prefix and period must be lists")
    return EPSeq(tuple(entry_in(v) for v in prefix),
                 tuple(entry_in(v) for v in obj["period"]))


def scalar_seq_to_json(seq):
    return _seq_out(seq, _scalar_out)


def scalar_seq_from_json(obj):
    return _seq_in(obj, _scalar_in)


# -- complement data ------------------------------------------------------


def datum_to_json(d: ComplementDatum) -> dict:
    out = {
        "kind": d.kind,
        "X_dim": d.X_dim,
        "Y_dim": d.Y_dim,
        "omega": [[_scalar_out(v) for v in row] for row in d.omega],
    }
    lam_out = lambda v: _covector_out(v, d.X_dim)
    if d.two_sided:
        out["lambdas"] = {"pos": _seq_out(d.lambdas.pos, lam_out),
                          "neg": _seq_out(d.lambdas.neg, lam_out)}
    else:
        out["lambdas"] = _seq_out(d.lambdas, lam_out)
        out["mus"] = _seq_out(d.mus, lambda v: _covector_out(v, d.Y_dim))
    return out


def datum_from_json(obj) -> ComplementDatum:
    _expect(isinstance(obj, dict), "datum must be an object")
    _expect("kind" in obj, "datum needs a kind")
    kind = obj["kind"]
    _expect(kind in ("gl", "sl", "so", "sp"), "unknown kind: %r" % (kind,))
    two_sided = kind in ("so", "sp")
    keys = {"kind", "X_dim", "Y_dim", "omega", "lambdas"}
    if not two_sided:
        keys.add("mus")
    _expect(set(obj) <= keys, "unexpected datum fields: %r" % (
        sorted(set(obj) - keys),))
    xd = obj.get("X_dim", 0)
    yd = obj.get("Y_dim", xd if two_sided else 0)
    _expect(isinstance(xd, int) and isinstance(yd, int) and xd >= 0 and yd >= 0,
            "dimensions must be nonnegative integers")
    omega = obj.get("omega", [])
    _expect(isinstance(omega, list) and len(omega) == xd
            and all(isinstance(r, list) and len(r) == yd for r in omega),
            "omega must be an X_dim by Y_dim matrix")
    om = tuple(tuple(_scalar_in(v) for v in row) for row in omega)
    lam_in = lambda v: _covector_in(v, xd)
    lobj = obj.get("lambdas")
    if two_sided:
        _expect(isinstance(lobj, dict) and set(lobj) == {"pos", "neg"},
                "two-sided lambdas must be {pos, neg}")
        lam = TwoSidedEPSeq(_seq_in(lobj["pos"], lam_in),
                            _seq_in(lobj["neg"], lam_in))
        try:
            return ComplementDatum(kind, xd, yd, om, lam)
        except (ValueError, TypeError) as e:
            raise SerializeError("bad datum: %s" % e)
    _expect(lobj is not None and "mus" in obj, "one-sided data need lambdas and mus")
    lam = _seq_in(lobj, lam_in)
    mu = _seq_in(obj["mus"], lambda v: _covector_in(v, yd))
    try:
        return ComplementDatum(kind, xd, yd, om, lam, mu)
    except (ValueError, TypeError) as e:
        raise SerializeError("bad datum: %s" % e)


# -- systems --------------------------------------------------------------


def _sparse_vec_out(v: Vec) -> dict:
    return {str(k): _scalar_out(c) for k, c in sorted(v.c.items())}


def _sparse_vec_in(obj) -> Vec:
    _expect(isinstance(obj, dict), "vector must be a coordinate map")
    out = {}
    for k, v in obj.items():
        try:
            coord = int(k)
        except ValueError:
            raise SerializeError("bad coordinate %r" % (k,))
        out[coord] = _scalar_in(v)
    return Vec(out)


class PerturbedBases(DualSystem):
    """Coordinate lines with finitely many explicit replacements.

    A deserialization vehicle for hand-edited fixtures; replaced lines
    need not satisfy the duality condition, which is exactly what makes
    the files useful as validate inputs.
    """

    catalog = "perturbed-bases"
    min_window = 1
    _stab_pad = 2

    def __init__(self, kind, lines=None, duals=None):
        if kind not in ("gl", "sl", "so", "sp"):
            raise DualSystemError("unknown kind: %r" % (kind,))
        self.kind = kind
        self.lines = dict(lines or {})
        self.duals = dict(duals or {})
        if self.two_sided and self.duals:
            raise DualSystemError("two-sided systems have no dual side")
        self.params = {"lines": self.lines, "duals": self.duals}
        self._base = DualBases(kind)

    def line(self, i):
        self._check(i)
        return self.lines.get(i) or self._base.line(i)

    def dual_line(self, i):
        self._check(i)
        return self.duals.get(i) or self._base.dual_line(i)

    def support_bound(self, i):
        for v in (self.lines.get(i),
                  self.duals.get(i) if not self.two_sided else None):
            if v is not None:
                return max([abs(k) for k in v.c] + [abs(i)])
        return abs(i)


def system_to_json(system: DualSystem) -> dict:
    out = {"kind": system.kind, "catalog": system.catalog}
    cat = system.catalog
    if cat == "dual-bases":
        out["params"] = {"ambient_zero": system.ambient_zero}
    elif cat == "shift-pattern":
        out["params"] = {"anchor": system.anchor, "coeff": system.coeff}
    elif cat == "cumulative-sum":
        out["params"] = {"side": system.side, "variant": system.variant}
    elif cat == "worked-example":
        out["params"] = {"id": system.example_id}
        if system.example_id == "coefficient-twist":
            out["params"]["a"] = scalar_seq_to_json(system.a)
            out["params"]["b"] = scalar_seq_to_json(system.b)
    elif cat == "normal-form":
        out["params"] = {}
        out["complement"] = datum_to_json(system.datum)
    elif cat == "perturbed-bases":
        out["params"] = {
            "lines": {str(i): _sparse_vec_out(v)
                      for i, v in sorted(system.lines.items())},
            "duals": {str(i): _sparse_vec_out(v)
                      for i, v in sorted(system.duals.items())},
        }
    else:
        raise SerializeError("unknown catalog: %r" % (cat,))
    return out


def system_from_json(obj) -> DualSystem:
    _expect(isinstance(obj, dict), "system must be an object")
    _expect(set(obj) <= {"kind", "catalog", "params", "complement"},
            "unexpected system fields")
    kind = obj.get("kind")
    cat = obj.get("catalog")
    params = obj.get("params", {})
    _expect(isinstance(params, dict), "params must be an object")
    try:
        if cat == "dual-bases":
            return DualBases(kind, bool(params.get("ambient_zero", False)))
        if cat == "shift-pattern":
            return ShiftPattern(kind, params.get("anchor"), params.get("coeff"))
        if cat == "cumulative-sum":
            return CumulativeSum(kind, params.get("side"), params.get("variant"))
        if cat == "worked-example":
            a = params.get("a")
            b = params.get("b")
            return WorkedExample(
                params.get("id"),
                None if a is None else scalar_seq_from_json(a),
                None if b is None else scalar_seq_from_json(b))
        if cat == "normal-form":
            _expect("complement" in obj, "normal-form needs a complement")
            system = system_from_datum(datum_from_json(obj["complement"]))
            _expect(system.kind == kind, "kind does not match the complement")
            return system
        if cat == "perturbed-bases":
            lines = {int(i): _sparse_vec_in(v)
                     for i, v in params.get("lines", {}).items()}
            duals = {int(i): _sparse_vec_in(v)
                     for i, v in params.get("duals", {}).items()}
            return PerturbedBases(kind, lines, duals)
    except DualSystemError as e:
        raise SerializeError("bad system: %s" % e)
    except ValueError as e:
        raise SerializeError("bad system: %s" % e)
    raise SerializeError("unknown catalog: %r" % (cat,))


# -- certificates ---------------------------------------------------------


def _matrix_out(mat):
    return [[_scalar_out(v) for v in row] for row in mat]


def _matrix_in(obj):
    _expect(isinstance(obj, list) and obj
            and all(isinstance(r, list) and len(r) == len(obj[0]) for r in obj),
            "matrix must be a nonempty list of equal-length rows")
    return tuple(tuple(_scalar_in(v) for v in row) for row in obj)


def certificate_to_json(cert: EquivalenceCertificate) -> dict:
    out = {
        "sigma": {
            "finite": {str(k): v for k, v in sorted(cert.sigma.finite.items())},
            "pieces": [list(p) for p in cert.sigma.pieces],
        },
        "alphas": scalar_seq_to_json(cert.alphas),
        "pi_X": _matrix_out(cert.pi_X),
    }
    if cert.pi_Y is not None:
        out["pi_Y"] = _matrix_out(cert.pi_Y)
    return out


def certificate_from_json(obj) -> EquivalenceCertificate:
    _expect(isinstance(obj, dict), "certificate must be an object")
    _expect(set(obj) <= {"sigma", "alphas", "pi_X", "pi_Y"},
            "unexpected certificate fields")
    _expect("sigma" in obj and "alphas" in obj and "pi_X" in obj,
            "certificate needs sigma, alphas, pi_X")
    sob = obj["sigma"]
    _expect(isinstance(sob, dict) and set(sob) <= {"finite", "pieces"},
            "sigma must be {finite?, pieces?}")
    finite = {}
    for k, v in sob.get("finite", {}).items():
        try:
            finite[int(k)] = int(v)
        except (ValueError, TypeError):
            raise SerializeError("bad sigma entry %r: %r" % (k, v))
    pieces = sob.get("pieces", [[1, 1, 1, 1]])
    _expect(isinstance(pieces, list)
            and all(isinstance(p, list) and len(p) == 4
                    and all(isinstance(x, int) for x in p) for p in pieces),
            "sigma pieces must be four-integer lists")
    try:
        sigma = SigmaMap(finite, tuple(tuple(p) for p in pieces))
        return EquivalenceCertificate(
            sigma,
            scalar_seq_from_json(obj["alphas"]),
            _matrix_in(obj["pi_X"]),
            None if "pi_Y" not in obj else _matrix_in(obj["pi_Y"]))
    except ValueError as e:
        raise SerializeError("bad certificate: %s" % e)


# -- witness payloads -----------------------------------------------------


def to_jsonable(value):
    """Flatten a witness payload to plain JSON values."""
    if isinstance(value, Scalar):
        return _scalar_out(value)
    if isinstance(value, Vec):
        return _sparse_vec_out(value)
    if value == INFINITE and isinstance(value, float):
        return "infinite"
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {_witness_key(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(value, key=repr)]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return repr(value)


def _witness_key(k):
    if isinstance(k, str):
        return k
    if isinstance(k, Scalar):
        return _scalar_out(k)
    return repr(k)
