"""Complement data: a finite block plus residual functional sequences.

A :class:`ComplementDatum` packages what is left of a pairing after an
infinite family of rank-one lines is split off: a finite space X (and Y,
for the gl/sl families) with coordinates 1..dim, a bilinear block
``omega`` on X x Y (on X x X for so/sp, symmetric resp. alternating),
and eventually periodic sequences of covectors recording how the split
lines pair against the finite block.

The corrected pairing ``omega_tilde`` subtracts the covector products
from ``omega``; it converges exactly when one argument is annihilated by
every recurring covector.  All invariants here are computed from that
corrected pairing.
"""

from __future__ import annotations

from .epseq import EPSeq, TwoSidedEPSeq, combine, is_almost_zero
from .linalg import Echelon, Subspace, kernel_basis
from .scalars import ONE, ZERO, Scalar, sc
from .tensor import Vec


class ComplementError(ValueError):
    pass


def cov_apply(cov, vec):
    """Coordinate pairing of a covector against a vector (both sparse)."""
    total = ZERO
    small, large = (cov.c, vec.c) if len(cov.c) <= len(vec.c) else (vec.c, cov.c)
    for k, a in small.items():
        b = large.get(k)
        if b is not None:
            total = total + a * b
    return total


def _as_scalar(v):
    return v if isinstance(v, Scalar) else sc(v)


class ComplementDatum:
    """Finite block with residual covector sequences.

    kind 'gl'/'sl': X and Y carry separate coordinates, ``lambdas`` is an
    EPSeq of covectors on X, ``mus`` an EPSeq of covectors on Y, and
    ``omega`` is an X_dim x Y_dim matrix.

    kind 'so'/'sp': a single space X, ``lambdas`` a TwoSidedEPSeq of
    covectors on X, no ``mus``, and ``omega`` an X_dim x X_dim matrix,
    symmetric for so and alternating for sp.
    """

    __slots__ = ("kind", "X_dim", "Y_dim", "omega", "lambdas", "mus")

    def __init__(self, kind, x_dim, y_dim, omega, lambdas, mus=None):
        if kind not in ("gl", "sl", "so", "sp"):
            raise ComplementError("unknown kind %r" % (kind,))
        x_dim = int(x_dim)
        y_dim = int(y_dim)
        if x_dim < 0 or y_dim < 0:
            raise ComplementError("dimensions must be nonnegative")
        two_sided = kind in ("so", "sp")
        if two_sided and y_dim != x_dim:
            raise ComplementError("so/sp data carry a single space")
        omega = tuple(tuple(_as_scalar(v) for v in row) for row in omega)
        if len(omega) != x_dim or any(len(row) != y_dim for row in omega):
            raise ComplementError("omega must be %d x %d" % (x_dim, y_dim))
        if kind == "so":
            for i in range(x_dim):
                for j in range(i):
                    if omega[i][j] != omega[j][i]:
                        raise ComplementError("omega must be symmetric")
        if kind == "sp":
            for i in range(x_dim):
                if omega[i][i] != ZERO:
                    raise ComplementError("omega must be alternating")
                for j in range(i):
                    if omega[i][j] != -omega[j][i]:
                        raise ComplementError("omega must be alternating")
        if two_sided:
            if not isinstance(lambdas, TwoSidedEPSeq):
                raise ComplementError("so/sp lambdas must be two sided")
            if mus is not None:
                raise ComplementError("so/sp data have no separate mu side")
            branches = (lambdas.pos, lambdas.neg)
        else:
            if not isinstance(lambdas, EPSeq):
                raise ComplementError("lambdas must be an EPSeq")
            if not isinstance(mus, EPSeq):
                raise ComplementError("mus must be an EPSeq")
            branches = (lambdas,)
            for cov in mus.prefix + mus.period:
                _check_cov(cov, y_dim)
        for br in branches:
            for cov in br.prefix + br.period:
                _check_cov(cov, x_dim)
        self.kind = kind
        self.X_dim = x_dim
        self.Y_dim = y_dim
        self.omega = omega
        self.lambdas = lambdas
        self.mus = mus

    @property
    def two_sided(self):
        return self.kind in ("so", "sp")

    def x_positions(self):
        return range(1, self.X_dim + 1)

    def y_positions(self):
        return range(1, self.Y_dim + 1)

    def omega_entry(self, i, j):
        return self.omega[i - 1][j - 1]

    def omega_value(self, x, y):
        total = ZERO
        for i, a in x.c.items():
            row = self.omega[i - 1]
            for j, b in y.c.items():
                total = total + row[j - 1] * a * b
        return total

    def lambda_period_covectors(self):
        if self.two_sided:
            return self.lambdas.pos.period + self.lambdas.neg.period
        return self.lambdas.period

    def mu_period_covectors(self):
        if self.two_sided:
            return self.lambda_period_covectors()
        return self.mus.period

    def __eq__(self, other):
        if not isinstance(other, ComplementDatum):
            return NotImplemented
        return (self.kind == other.kind and self.X_dim == other.X_dim
                and self.Y_dim == other.Y_dim and self.omega == other.omega
                and self.lambdas == other.lambdas and self.mus == other.mus)

    def __hash__(self):
        return hash((self.kind, self.X_dim, self.Y_dim, self.omega,
                     self.lambdas, self.mus))

    def __repr__(self):
        return "ComplementDatum(kind=%r, X_dim=%d, Y_dim=%d)" % (
            self.kind, self.X_dim, self.Y_dim)


def _check_cov(cov, dim):
    if not isinstance(cov, Vec):
        raise ComplementError("covectors must be Vec instances")
    for k in cov.c:
        if not (1 <= k <= dim):
            raise ComplementError("covector coordinate %r out of range" % (k,))


def zero_datum(kind):
    """The empty complement: no finite block, all covectors zero."""
    zero_seq = EPSeq((), (Vec(),))
    if kind in ("so", "sp"):
        return ComplementDatum(kind, 0, 0, (), TwoSidedEPSeq(zero_seq, zero_seq))
    return ComplementDatum(kind, 0, 0, (), zero_seq, zero_seq)


def in_X0(datum, x):
    return all(cov_apply(c, x) == ZERO for c in datum.lambda_period_covectors())


def in_Y0(datum, y):
    return all(cov_apply(c, y) == ZERO for c in datum.mu_period_covectors())


def X0_basis(datum):
    """Joint kernel of the recurring lambda covectors, as a Subspace."""
    eqs = [c.c for c in datum.lambda_period_covectors() if c.c]
    return Subspace(kernel_basis(eqs, list(datum.x_positions())))


def Y0_basis(datum):
    if datum.two_sided:
        return X0_basis(datum)
    eqs = [c.c for c in datum.mu_period_covectors() if c.c]
    return Subspace(kernel_basis(eqs, list(datum.y_positions())))


def omega_tilde(datum, x, y):
    """The corrected pairing of x against y.

    Requires one of the arguments to be annihilated by every recurring
    covector on its side, which makes the correction a finite sum.
    """
    x_ok = in_X0(datum, x)
    y_ok = in_Y0(datum, y)
    if not (x_ok or y_ok):
        raise ComplementError("divergent: neither argument almost-zero")
    total = datum.omega_value(x, y)
    if datum.two_sided:
        sx_pos = datum.lambdas.pos.map(lambda c: cov_apply(c, x))
        sx_neg = datum.lambdas.neg.map(lambda c: cov_apply(c, x))
        sy_pos = datum.lambdas.pos.map(lambda c: cov_apply(c, y))
        sy_neg = datum.lambdas.neg.map(lambda c: cov_apply(c, y))
        sign = ONE if datum.kind == "so" else -ONE
        prod = combine(lambda a, b, c, d: a * d + sign * (b * c),
                       sx_pos, sx_neg, sy_pos, sy_neg)
    else:
        sx = datum.lambdas.map(lambda c: cov_apply(c, x))
        sy = datum.mus.map(lambda c: cov_apply(c, y))
        prod = combine(lambda a, b: a * b, sx, sy)
    if not is_almost_zero(prod):
        raise ComplementError("divergent: neither argument almost-zero")
    for i in range(1, prod.bound + 1):
        total = total - prod.entry(i)
    return total


def _rank(rows):
    ech = Echelon()
    for row in rows:
        ech.add(dict(row))
    return ech.dim


def _x0_vecs(datum):
    return [Vec(row) for row in X0_basis(datum).basis()]


def _y0_vecs(datum):
    return [Vec(row) for row in Y0_basis(datum).basis()]


def is_nondegenerate(datum):
    """No almost-zero vector is orthogonal to everything under omega_tilde."""
    x0 = _x0_vecs(datum)
    rows = []
    for v in x0:
        rows.append({j: omega_tilde(datum, v, Vec.basis(j))
                     for j in datum.y_positions()})
    if _rank(rows) != len(x0):
        return False
    if datum.two_sided:
        return True
    y0 = _y0_vecs(datum)
    rows = []
    for w in y0:
        rows.append({i: omega_tilde(datum, Vec.basis(i), w)
                     for i in datum.x_positions()})
    return _rank(rows) == len(y0)


def _core_rank(datum):
    x0 = _x0_vecs(datum)
    y0 = _y0_vecs(datum)
    rows = []
    for v in x0:
        rows.append({k: omega_tilde(datum, v, w) for k, w in enumerate(y0)})
    return _rank(rows)


def is_maximal(datum):
    """Whether the corrected pairing on the almost-zero cores is as small
    as the family allows: trivial for gl/sl/sp, rank at most 1 for so."""
    d = _core_rank(datum)
    return d <= 1 if datum.kind == "so" else d == 0


def standard_invariants(datum):
    """(d, p, q, m, n) for gl/sl; (d, p, m) for so/sp.

    d is the rank of the corrected pairing between the almost-zero cores,
    p and q the core dimensions, m and n the codimensions of the cores.
    """
    d = _core_rank(datum)
    p = len(_x0_vecs(datum))
    if datum.two_sided:
        return (d, p, datum.X_dim - p)
    q = len(_y0_vecs(datum))
    return (d, p, q, datum.X_dim - p, datum.Y_dim - q)


def check_realizable(kind, invariants):
    """Normalize an invariant tuple, raising on unrealizable ones."""
    if kind not in ("gl", "sl", "so", "sp"):
        raise ComplementError("unknown kind %r" % (kind,))
    arity = 5 if kind in ("gl", "sl") else 3
    tup = tuple(invariants)
    if len(tup) != arity or not all(isinstance(v, int) and v >= 0 for v in tup):
        raise ComplementError(
            "invariants must be a %d-tuple of nonnegative integers" % arity)
    if kind in ("gl", "sl"):
        d, p, q, m, n = tup
        if d > p:
            raise ComplementError("unrealizable invariants: violates 0 <= p - d")
        if p - d > n:
            raise ComplementError("unrealizable invariants: violates p - d <= n")
        if d > q:
            raise ComplementError("unrealizable invariants: violates 0 <= q - d")
        if q - d > m:
            raise ComplementError("unrealizable invariants: violates q - d <= m")
    else:
        d, p, m = tup
        if d > p:
            raise ComplementError("unrealizable invariants: violates 0 <= p - d")
        if p - d > m:
            raise ComplementError("unrealizable invariants: violates p - d <= m")
        if kind == "sp" and d % 2:
            raise ComplementError("d must be even")
    return tup


def _cycle_position(idx, m):
    # representative of idx in 1..m, congruent mod m
    return (idx - 1) % m + 1


def build_representative(kind, invariants):
    """Concrete datum realizing the given invariants.

    Coordinates 1..p (resp. 1..q) span the almost-zero core; the active
    block sits at p+1..p+m.  The block pairing matches core to core on
    the first d coordinates and hooks each remaining core coordinate to
    an active coordinate on the opposite side.
    """
    tup = check_realizable(kind, invariants)
    if kind in ("gl", "sl"):
        d, p, q, m, n = tup
        omega = [[ZERO] * (q + n) for _ in range(p + m)]
        for j in range(d):
            omega[j][j] = ONE
        for j in range(1, p - d + 1):
            omega[p - j][q + j - 1] = ONE
        for j in range(1, q - d + 1):
            omega[p + j - 1][q - j] = ONE
        lam = EPSeq((), tuple(Vec.basis(p + i) for i in range(1, m + 1))
                    or (Vec(),))
        mu = EPSeq((), tuple(Vec.basis(q + i) for i in range(1, n + 1))
                   or (Vec(),))
        return ComplementDatum(kind, p + m, q + n, omega, lam, mu)
    d, p, m = tup
    omega = [[ZERO] * (p + m) for _ in range(p + m)]
    if kind == "so":
        for j in range(d):
            omega[j][j] = ONE
        for j in range(1, p - d + 1):
            omega[p - j][p + j - 1] = ONE
            omega[p + j - 1][p - j] = ONE
    else:
        for j in range(d // 2):
            omega[2 * j][2 * j + 1] = ONE
            omega[2 * j + 1][2 * j] = -ONE
        for j in range(1, p - d + 1):
            omega[p - j][p + j - 1] = ONE
            omega[p + j - 1][p - j] = -ONE
    if m:
        pos = EPSeq((), tuple(Vec.basis(p + _cycle_position(i, m))
                              for i in range(1, m + 1)))
        neg = EPSeq((), tuple(Vec.basis(p + _cycle_position(-i, m))
                              for i in range(1, m + 1)))
    else:
        pos = neg = EPSeq((), (Vec(),))
    return ComplementDatum(kind, p + m, p + m, omega, TwoSidedEPSeq(pos, neg))


def build_Dz(z, shape=(2, 2, 1, 1)):
    """Two-dimensional block with recurring pairing values {1, z}.

    Coordinate 1 on each side spans the almost-zero core; the lambda
    coefficients alternate between 1 and z on the active coordinate.
    """
    if tuple(shape) != (2, 2, 1, 1):
        raise ComplementError("unsupported shape: expected (2, 2, 1, 1)")
    z = _as_scalar(z)
    if z == ZERO or z == ONE:
        raise ComplementError("z must not be 0 or 1")
    omega = ((ZERO, ONE), (ONE, ZERO))
    lam = EPSeq((), (Vec.basis(2), Vec({2: z})))
    mu = EPSeq((), (Vec.basis(2),))
    return ComplementDatum("gl", 2, 2, omega, lam, mu)
