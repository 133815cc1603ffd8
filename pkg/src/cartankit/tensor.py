"""Sparse exact model of the finitary classical Lie algebras.

Vectors live in a space V with basis indexed by integers; which integers are
legal depends on the kind:

    gl, sl   indices 1, 2, 3, ...   with dual basis pairing <e_i, e^j> = d_ij
    so       all integers           symmetric form <e_i, e_j> = d_{i,-j}
    sp       nonzero integers       alternating form <e_k, e_j> = sgn(k) d_{k,-j}

Lie algebra elements are finite rank-one sums:

    gl/sl    e_i (x) e^j                        stored at key (i, j)
    so       e_i ^ e_j = ei(x)ej - ej(x)ei      stored at key (i, j), i < j
    sp       e_i & e_j = ei(x)ej + ej(x)ei      stored at key (i, j), i < j,
             and e_i (x) e_i stored at (i, i)

so/sp storage is canonical (one key per mirror pair); the full tensor
coefficients are recovered on demand, which keeps brackets and the induced
action on V free of sign bookkeeping errors in one place.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, Scalar

KINDS = ("gl", "sl", "so", "sp")
FAMILIES = ("gl", "so", "sp")


def family(kind: str) -> str:
    """Collapse sl onto its ambient matrix family."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    return "gl" if kind == "sl" else kind


def sgn(i: int) -> int:
    return 1 if i > 0 else (-1 if i < 0 else 0)


def index_ok(kind: str, i: int) -> bool:
    f = family(kind)
    if f == "gl":
        return i >= 1
    if f == "so":
        return True
    return i != 0


def check_index(kind: str, i: int) -> int:
    if not index_ok(kind, i):
        raise ValueError(f"index {i} not allowed for {kind}")
    return i


class Window:
    """Finite symmetric index range used to truncate infinite objects.

    gl/sl: {1..n};  so: {-n..n};  sp: {-n..n} minus 0.

    An so window built with include_zero=False drops the 0 coordinate;
    the form stays nondegenerate on {±1..±n}. This models truncations of
    the even orthogonal ambient, where no self-paired basis vector exists.
    """

    __slots__ = ("kind", "n", "include_zero")

    def __init__(self, kind: str, n: int, include_zero: bool = True):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        if n < 1:
            raise ValueError("window radius must be positive")
        self.kind = kind
        self.n = n
        self.include_zero = include_zero if family(kind) == "so" else True

    @property
    def indices(self):
        f = family(self.kind)
        if f == "gl":
            return list(range(1, self.n + 1))
        if f == "so" and self.include_zero:
            return list(range(-self.n, self.n + 1))
        return [i for i in range(-self.n, self.n + 1) if i != 0]

    @property
    def dim(self):
        return len(self.indices)

    def __contains__(self, i: int):
        if not index_ok(self.kind, i):
            return False
        if i == 0 and not self.include_zero:
            return False
        if family(self.kind) == "gl":
            return 1 <= i <= self.n
        return -self.n <= i <= self.n

    def contains_support(self, x) -> bool:
        return all(i in self for i in x.support())

    def __eq__(self, other):
        return (
            isinstance(other, Window)
            and self.kind == other.kind
            and self.n == other.n
            and self.include_zero == other.include_zero
        )

    def __repr__(self):
        if not self.include_zero:
            return f"Window({self.kind!r}, {self.n}, include_zero=False)"
        return f"Window({self.kind!r}, {self.n})"


class Vec:
    """Finite vector in V (or a finite functional, for gl/sl duals)."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for i, v in coeffs.items():
                if not isinstance(v, Scalar):
                    v = Scalar(v)
                if v:
                    c[int(i)] = v
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Vec is immutable")

    @classmethod
    def basis(cls, i: int) -> "Vec":
        return cls({i: ONE})

    def __getitem__(self, i: int) -> Scalar:
        return self.c.get(i, ZERO)

    def support(self):
        return set(self.c)

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        c = dict(self.c)
        for i, v in other.c.items():
            w = c.get(i, ZERO) + v
            if w:
                c[i] = w
            else:
                c.pop(i, None)
        return Vec(c) if c else Vec()

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Vec({i: -v for i, v in self.c.items()})

    def __rmul__(self, a):
        if not isinstance(a, Scalar):
            a = Scalar(a)
        if not a:
            return Vec()
        return Vec({i: a * v for i, v in self.c.items()})

    def __eq__(self, other):
        return isinstance(other, Vec) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def items(self):
        return sorted(self.c.items())

    def __repr__(self):
        if not self.c:
            return "Vec(0)"
        terms = [f"{v}*e[{i}]" for i, v in self.items()]
        return "Vec(" + " + ".join(terms) + ")"


def dual_pair(v: Vec, w: Vec) -> Scalar:
    """<v, w> for v in V, w in V_* (gl/sl dual bases)."""
    if len(w.c) < len(v.c):
        v, w = w, v
    out = ZERO
    for i, a in v.c.items():
        b = w.c.get(i)
        if b is not None:
            out = out + a * b
    return out


def form_pair(kind: str, v: Vec, w: Vec) -> Scalar:
    """The defining bilinear form of so/sp evaluated on two vectors."""
    f = family(kind)
    if f == "so":
        out = ZERO
        for i, a in v.c.items():
            b = w.c.get(-i)
            if b is not None:
                out = out + a * b
        return out
    if f == "sp":
        out = ZERO
        for i, a in v.c.items():
            b = w.c.get(-i)
            if b is not None:
                out = out + sgn(i) * (a * b)
        return out
    raise ValueError("form_pair is for so/sp")


def pair(kind: str, v: Vec, w: Vec) -> Scalar:
    """Uniform pairing: gl/sl duality, so/sp form."""
    if family(kind) == "gl":
        return dual_pair(v, w)
    return form_pair(kind, v, w)


class LieElement:
    """Finite-support element of gl, so, or sp (sl elements are gl elements
    with zero trace)."""

    __slots__ = ("family", "c")

    def __init__(self, fam: str, coeffs=None):
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}")
        c = {}
        if coeffs:
            for (i, j), v in coeffs.items():
                if not isinstance(v, Scalar):
                    v = Scalar(v)
                if not v:
                    continue
                check_index(fam, i)
                check_index(fam, j)
                if fam == "so":
                    if i >= j:
                        raise ValueError("so storage keys must satisfy i < j")
                elif fam == "sp":
                    if i > j:
                        raise ValueError("sp storage keys must satisfy i <= j")
                c[(i, j)] = v
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("LieElement is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, fam: str) -> "LieElement":
        return cls(fam)

    @classmethod
    def matrix_unit(cls, i: int, j: int) -> "LieElement":
        """e_i (x) e^j in the gl family."""
        return cls("gl", {(i, j): ONE})

    @classmethod
    def outer(cls, v: Vec, w: Vec) -> "LieElement":
        """v (x) w for v in V, w in V_* (gl family)."""
        c = {}
        for i, a in v.c.items():
            for j, b in w.c.items():
                c[(i, j)] = a * b
        return cls("gl", c)

    @classmethod
    def wedge(cls, u: Vec, v: Vec) -> "LieElement":
        """u ^ v in so."""
        acc = {}
        for i, a in u.c.items():
            for j, b in v.c.items():
                if i == j:
                    continue
                key = (i, j) if i < j else (j, i)
                s = a * b if i < j else -(a * b)
                w = acc.get(key, ZERO) + s
                if w:
                    acc[key] = w
                else:
                    acc.pop(key, None)
        return cls("so", acc)

    @classmethod
    def sym(cls, u: Vec, v: Vec) -> "LieElement":
        """u & v = u(x)v + v(x)u in sp; diagonal keys hold e_i (x) e_i."""
        acc = {}
        for i, a in u.c.items():
            for j, b in v.c.items():
                if i == j:
                    key, s = (i, i), 2 * (a * b)
                else:
                    key, s = ((i, j) if i < j else (j, i)), a * b
                w = acc.get(key, ZERO) + s
                if w:
                    acc[key] = w
                else:
                    acc.pop(key, None)
        return cls("sp", acc)

    # -- full tensor view ------------------------------------------------

    def full_items(self):
        """Iterate ((i, j), coeff) over the full V (x) V tensor (or
        V (x) V_* for gl), mirrors expanded."""
        if self.family == "gl":
            yield from self.c.items()
            return
        for (i, j), v in self.c.items():
            if i == j:
                yield (i, i), v
            else:
                yield (i, j), v
                yield (j, i), (-v if self.family == "so" else v)

    @classmethod
    def from_full(cls, fam: str, tensor: dict) -> "LieElement":
        """Canonicalize a full tensor dict, verifying so/sp symmetry."""
        if fam == "gl":
            return cls("gl", tensor)
        acc = {}
        done = set()
        for (i, j), v in tensor.items():
            if not v:
                continue
            if i == j:
                if fam == "so":
                    raise ValueError("tensor is not alternating")
                acc[(i, i)] = v
                continue
            key = (i, j) if i < j else (j, i)
            if key in done:
                continue
            done.add(key)
            a = tensor.get(key, ZERO)
            b = tensor.get((key[1], key[0]), ZERO)
            if b != (-a if fam == "so" else a):
                raise ValueError(f"tensor lacks {fam} symmetry at {key}")
            if a:
                acc[key] = a
        return cls(fam, acc)

    # -- linear structure ------------------------------------------------

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        if self.family != other.family:
            raise ValueError("family mismatch")
        c = dict(self.c)
        for k, v in other.c.items():
            w = c.get(k, ZERO) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        return LieElement(self.family, c)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LieElement(self.family, {k: -v for k, v in self.c.items()})

    def __rmul__(self, a):
        if not isinstance(a, Scalar):
            a = Scalar(a)
        if not a:
            return LieElement(self.family)
        return LieElement(self.family, {k: a * v for k, v in self.c.items()})

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and self.family == other.family
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.family, frozenset(self.c.items())))

    # -- algebra ---------------------------------------------------------

    def support(self):
        s = set()
        for (i, j) in self.c:
            s.add(i)
            s.add(j)
        return s

    def trace(self) -> Scalar:
        if self.family != "gl":
            return ZERO
        out = ZERO
        for (i, j), v in self.c.items():
            if i == j:
                out = out + v
        return out

    def is_sl(self) -> bool:
        return self.family == "gl" and not self.trace()

    def act(self, v: Vec) -> Vec:
        """The element applied to a vector of V."""
        fam = self.family
        acc = {}
        if fam == "gl":
            for (i, j), a in self.c.items():
                b = v.c.get(j)
                if b is not None:
                    w = acc.get(i, ZERO) + a * b
                    if w:
                        acc[i] = w
                    else:
                        acc.pop(i, None)
            return Vec(acc)
        for (i, j), a in self.full_items():
            # <v, e_j> contracts the second tensor slot through the form
            b = v.c.get(-j)
            if b is None:
                continue
            s = a * b if fam == "so" else (-sgn(j)) * (a * b)
            if s:
                w = acc.get(i, ZERO) + s
                if w:
                    acc[i] = w
                else:
                    acc.pop(i, None)
        return Vec(acc)

    def assoc_product(self, other: "LieElement") -> dict:
        """Full-tensor coefficients of the composition self . other.

        For so/sp the result generally lies outside the subalgebra, so it
        is returned as a raw tensor dict rather than a LieElement.
        """
        if self.family != other.family:
            raise ValueError("family mismatch")
        fam = self.family
        rows = {}
        for (k, l), b in other.full_items():
            rows.setdefault(k, []).append((l, b))
        out = {}
        for (i, j), a in self.full_items():
            if fam == "gl":
                hits = rows.get(j)
                tw = ONE
            elif fam == "so":
                hits = rows.get(-j)
                tw = ONE
            else:
                hits = rows.get(-j)
                tw = Scalar(-sgn(j))
            if not hits:
                continue
            atw = a * tw
            for l, b in hits:
                w = out.get((i, l), ZERO) + atw * b
                if w:
                    out[(i, l)] = w
                else:
                    out.pop((i, l), None)
        return out

    def bracket(self, other: "LieElement") -> "LieElement":
        xy = self.assoc_product(other)
        yx = other.assoc_product(self)
        for k, v in yx.items():
            w = xy.get(k, ZERO) - v
            if w:
                xy[k] = w
            else:
                xy.pop(k, None)
        return LieElement.from_full(self.family, xy)

    def __repr__(self):
        if not self.c:
            return f"LieElement({self.family!r}, 0)"
        sym = {"gl": "E", "so": "W", "sp": "S"}[self.family]
        terms = [
            f"{v}*{sym}[{i},{j}]" for (i, j), v in sorted(self.c.items())
        ]
        return f"LieElement({self.family!r}, " + " + ".join(terms) + ")"


def bracket(x: LieElement, y: LieElement) -> LieElement:
    return x.bracket(y)
