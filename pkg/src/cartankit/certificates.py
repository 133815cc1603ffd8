"""Equivalence certificates for complement data.

A certificate packages the finite evidence that two complement data
describe the same splitting pattern: an index bijection matching the
split lines, a per-line rescaling, and change of basis matrices for the
finite blocks.  ``verify_certificate`` checks the transport clause by
clause and reports the first failure with a witness.

``decide_equiv_special`` settles equivalence outright on the family of
two-dimensional blocks with one-dimensional almost-zero cores on both
sides, returning either a verified certificate or a finite invariant
that separates the two data.
"""

from __future__ import annotations

from math import gcd, lcm

from .complement import (
    ComplementDatum,
    X0_basis,
    Y0_basis,
    cov_apply,
    is_nondegenerate,
    omega_tilde,
    standard_invariants,
)
from .epseq import (
    EPSeq,
    almost_proportional,
    combine,
    disagreement_bound,
    first_disagreement,
    resample,
    value_multiset,
)
from .linalg import mat_inv, mat_mul
from .scalars import ONE, ZERO, Scalar, sc
from .tensor import Vec


class CertificateError(ValueError):
    pass


def _as_scalar(v):
    return v if isinstance(v, Scalar) else sc(v)


class SigmaMap:
    """Self-map of the positive indices: finitely many exceptional
    values plus arithmetic progression pieces.

    ``finite`` sends individual indices; each piece ``(s0, sstep, t0,
    tstep)`` sends ``s0 + k*sstep`` to ``t0 + k*tstep`` for every
    k >= 0.  A well-formed map has exactly one rule claiming each index
    and, once ``check_bijection`` passes, exactly one rule producing
    each value.  The default is the identity.
    """

    __slots__ = ("finite", "pieces")

    def __init__(self, finite=None, pieces=((1, 1, 1, 1),)):
        fin = {}
        for k, v in (finite or {}).items():
            k, v = int(k), int(v)
            if k < 1 or v < 1:
                raise CertificateError("finite entries must use positive indices")
            fin[k] = v
        ps = []
        for piece in pieces:
            s0, sstep, t0, tstep = (int(x) for x in piece)
            if min(s0, sstep, t0, tstep) < 1:
                raise CertificateError("piece parameters must be positive")
            ps.append((s0, sstep, t0, tstep))
        if not ps:
            raise CertificateError("at least one progression piece is required")
        self.finite = fin
        self.pieces = tuple(ps)

    def __call__(self, i):
        if i < 1:
            raise CertificateError("index must be positive")
        v = self.finite.get(i)
        if v is not None:
            return v
        for s0, sstep, t0, tstep in self.pieces:
            if i >= s0 and (i - s0) % sstep == 0:
                return t0 + ((i - s0) // sstep) * tstep
        raise CertificateError("no rule claims index %d" % i)

    def preimage(self, j):
        if j < 1:
            raise CertificateError("index must be positive")
        for k, v in self.finite.items():
            if v == j:
                return k
        for s0, sstep, t0, tstep in self.pieces:
            if j >= t0 and (j - t0) % tstep == 0:
                return s0 + ((j - t0) // tstep) * sstep
        raise CertificateError("no rule produces index %d" % j)

    def check_bijection(self):
        """Raise unless the rules tile the positive indices bijectively.

        Membership and hit counts are eventually periodic, so checking a
        window of one full period past every exceptional value decides
        the global statement.
        """
        L = 1
        for s0, sstep, t0, tstep in self.pieces:
            L = lcm(L, sstep, tstep)
        V = 1
        for k, v in self.finite.items():
            V = max(V, k, v)
        for s0, _, t0, _ in self.pieces:
            V = max(V, s0, t0)
        W = V + 4 * L
        fin_vals = sorted(self.finite.values())
        for i in range(1, W + 1):
            claims = (1 if i in self.finite else 0) + sum(
                1 for s0, sstep, _, _ in self.pieces
                if i >= s0 and (i - s0) % sstep == 0)
            if claims != 1:
                raise CertificateError(
                    "sigma is not a bijection: index %d claimed by %d rules"
                    % (i, claims))
            hits = fin_vals.count(i) + sum(
                1 for _, _, t0, tstep in self.pieces
                if i >= t0 and (i - t0) % tstep == 0)
            if hits != 1:
                raise CertificateError(
                    "sigma is not a bijection: value %d produced %d times"
                    % (i, hits))

    def pullback(self, seq):
        """The reindexed sequence i -> seq[sigma(i)] as an EPSeq."""
        P = seq.period_len
        B = max([0] + list(self.finite))
        LP = 1
        for s0, sstep, t0, tstep in self.pieces:
            need = seq.bound + 1 - t0
            if need > 0:
                B = max(B, s0 + (-(-need // tstep)) * sstep)
            LP = lcm(LP, sstep * (P // gcd(tstep, P)))
        pre = tuple(seq.entry(self(i)) for i in range(1, B + 1))
        per = tuple(seq.entry(self(i)) for i in range(B + 1, B + LP + 1))
        return EPSeq(pre, per)

    def __eq__(self, other):
        if not isinstance(other, SigmaMap):
            return NotImplemented
        return self.finite == other.finite and self.pieces == other.pieces

    def __repr__(self):
        return "SigmaMap(finite=%r, pieces=%r)" % (self.finite, self.pieces)


class EquivalenceCertificate:
    """Transport data carrying one complement datum onto another.

    ``sigma`` matches line indices, ``alphas`` rescales the lines
    (for the two-sided kinds the entry at i scales the positive branch
    and its inverse the negative branch), ``pi_X`` and ``pi_Y`` are the
    block changes of basis, columns holding images of the source basis.
    Two-sided kinds carry no ``pi_Y``.
    """

    __slots__ = ("sigma", "alphas", "pi_X", "pi_Y")

    def __init__(self, sigma, alphas, pi_X, pi_Y=None):
        if not isinstance(sigma, SigmaMap):
            raise CertificateError("sigma must be a SigmaMap")
        if not isinstance(alphas, EPSeq):
            raise CertificateError("alphas must be an EPSeq of scalars")
        self.sigma = sigma
        self.alphas = alphas.map(_as_scalar)
        self.pi_X = tuple(tuple(_as_scalar(v) for v in row) for row in pi_X)
        self.pi_Y = None if pi_Y is None else tuple(
            tuple(_as_scalar(v) for v in row) for row in pi_Y)

    def __repr__(self):
        return "EquivalenceCertificate(sigma=%r)" % (self.sigma,)


class VerifyResult:
    """Outcome of a certificate check: ok, or a failing clause plus witness."""

    __slots__ = ("ok", "clause", "witness")

    def __init__(self, ok, clause=None, witness=None):
        self.ok = ok
        self.clause = clause
        self.witness = witness

    def __repr__(self):
        if self.ok:
            return "VerifyResult(ok)"
        return "VerifyResult(clause=%r, witness=%r)" % (self.clause, self.witness)


class EquivDecision:
    """Outcome of the decision procedure: a certificate, or a reason
    plus a finite separating witness."""

    __slots__ = ("equivalent", "certificate", "reason", "witness")

    def __init__(self, equivalent, certificate=None, reason=None, witness=None):
        self.equivalent = equivalent
        self.certificate = certificate
        self.reason = reason
        self.witness = witness

    def __repr__(self):
        if self.equivalent:
            return "EquivDecision(equivalent)"
        return "EquivDecision(reason=%r)" % (self.reason,)


def _mul(p, q):
    return p * q


def _coord_seq(covs, vec):
    return covs.map(lambda cov: cov_apply(cov, vec))


def _column_vec(mat, u):
    return Vec({i + 1: row[u - 1] for i, row in enumerate(mat)})


def _check_square_invertible(mat, dim, name):
    if len(mat) != dim or any(len(row) != dim for row in mat):
        raise CertificateError("%s must be %d x %d" % (name, dim, dim))
    if dim == 0:
        return
    try:
        mat_inv([list(row) for row in mat])
    except ValueError:
        raise CertificateError("%s is singular" % name)


def _structural_check(d1, d2, cert):
    if d1.kind != d2.kind:
        raise CertificateError("data kinds differ")
    if d1.X_dim != d2.X_dim or d1.Y_dim != d2.Y_dim:
        raise CertificateError("block dimensions differ")
    if any(not v for v in cert.alphas.prefix + cert.alphas.period):
        raise CertificateError("alphas must be nonzero")
    cert.sigma.check_bijection()
    _check_square_invertible(cert.pi_X, d1.X_dim, "pi_X")
    if d1.two_sided:
        if cert.pi_Y is not None:
            raise CertificateError("two-sided certificates carry no pi_Y")
    else:
        if cert.pi_Y is None:
            raise CertificateError("pi_Y is required")
        _check_square_invertible(cert.pi_Y, d1.Y_dim, "pi_Y")


def verify_certificate(d1, d2, cert):
    """Check a transport certificate clause by clause.

    Returns VerifyResult(ok=True) when every clause holds, otherwise the
    first failing clause with a witness.  The closing clause compares
    the corrected pairings truncated at the largest index where the line
    clauses still disagree; beyond it the per-line products cancel.
    Malformed certificates raise CertificateError instead.
    """
    _structural_check(d1, d2, cert)
    if d1.two_sided:
        return _verify_two_sided(d1, d2, cert)
    return _verify_one_sided(d1, d2, cert)


def _verify_one_sided(d1, d2, cert):
    sigma = cert.sigma
    alpha_inv = cert.alphas.map(lambda v: v.inverse())
    x_imgs = {u: _column_vec(cert.pi_X, u) for u in d1.x_positions()}
    y_imgs = {v: _column_vec(cert.pi_Y, v) for v in d1.y_positions()}
    bounds = [0]
    for u in d1.x_positions():
        s1 = _coord_seq(d1.lambdas, Vec.basis(u))
        s2 = combine(_mul, cert.alphas,
                     sigma.pullback(_coord_seq(d2.lambdas, x_imgs[u])))
        b = disagreement_bound(s1, s2)
        if b is None:
            return VerifyResult(False, "lambda",
                                {"basis": u, "index": first_disagreement(s1, s2)})
        bounds.append(b)
    for v in d1.y_positions():
        s1 = _coord_seq(d1.mus, Vec.basis(v))
        s2 = combine(_mul, alpha_inv,
                     sigma.pullback(_coord_seq(d2.mus, y_imgs[v])))
        b = disagreement_bound(s1, s2)
        if b is None:
            return VerifyResult(False, "mu",
                                {"basis": v, "index": first_disagreement(s1, s2)})
        bounds.append(b)
    B = max(bounds)
    for u in d1.x_positions():
        for v in d1.y_positions():
            diff = d1.omega_entry(u, v) - d2.omega_value(x_imgs[u], y_imgs[v])
            eu, ev = Vec.basis(u), Vec.basis(v)
            for i in range(1, B + 1):
                j = sigma(i)
                diff = diff - (cov_apply(d1.lambdas.entry(i), eu)
                               * cov_apply(d1.mus.entry(i), ev))
                diff = diff + (cov_apply(d2.lambdas.entry(j), x_imgs[u])
                               * cov_apply(d2.mus.entry(j), y_imgs[v]))
            if diff:
                return VerifyResult(False, "omega",
                                    {"row": u, "col": v, "difference": diff})
    return VerifyResult(True)


def _verify_two_sided(d1, d2, cert):
    sigma = cert.sigma
    alpha_inv = cert.alphas.map(lambda v: v.inverse())
    imgs = {u: _column_vec(cert.pi_X, u) for u in d1.x_positions()}
    sign = ONE if d1.kind == "so" else -ONE
    bounds = [0]
    for u in d1.x_positions():
        s1 = _coord_seq(d1.lambdas.pos, Vec.basis(u))
        s2 = combine(_mul, cert.alphas,
                     sigma.pullback(_coord_seq(d2.lambdas.pos, imgs[u])))
        b = disagreement_bound(s1, s2)
        if b is None:
            return VerifyResult(False, "lambda-pos",
                                {"basis": u, "index": first_disagreement(s1, s2)})
        bounds.append(b)
        s1 = _coord_seq(d1.lambdas.neg, Vec.basis(u))
        s2 = combine(_mul, alpha_inv,
                     sigma.pullback(_coord_seq(d2.lambdas.neg, imgs[u])))
        b = disagreement_bound(s1, s2)
        if b is None:
            return VerifyResult(False, "lambda-neg",
                                {"basis": u, "index": first_disagreement(s1, s2)})
        bounds.append(b)
    B = max(bounds)

    def term(lams, i, x, y):
        p = cov_apply(lams.pos.entry(i), x) * cov_apply(lams.neg.entry(i), y)
        q = cov_apply(lams.neg.entry(i), x) * cov_apply(lams.pos.entry(i), y)
        return p + sign * q

    for u in d1.x_positions():
        for v in d1.x_positions():
            diff = d1.omega_entry(u, v) - d2.omega_value(imgs[u], imgs[v])
            eu, ev = Vec.basis(u), Vec.basis(v)
            for i in range(1, B + 1):
                diff = diff - term(d1.lambdas, i, eu, ev)
                diff = diff + term(d2.lambdas, sigma(i), imgs[u], imgs[v])
            if diff:
                return VerifyResult(False, "omega",
                                    {"row": u, "col": v, "difference": diff})
    return VerifyResult(True)


def family_datum(a, b):
    """Two-dimensional block whose lines pair through coordinate 2 only.

    ``a`` and ``b`` are scalar EPSeqs of line coefficients; coordinate 1
    on each side spans the almost-zero core.
    """
    lam = a.map(lambda v: Vec({2: _as_scalar(v)}))
    mu = b.map(lambda v: Vec({2: _as_scalar(v)}))
    omega = ((ZERO, ONE), (ONE, ZERO))
    return ComplementDatum("gl", 2, 2, omega, lam, mu)


def _absorbed(d):
    """Fold the covector prefixes into the block, keeping the corrected
    pairing: the result has purely periodic lambda and mu sequences."""
    Pl, Pm = d.lambdas.period_len, d.mus.period_len
    Bl = -(-d.lambdas.bound // Pl) * Pl
    Bm = -(-d.mus.bound // Pm) * Pm
    lam = EPSeq((), resample(d.lambdas, Bl, Pl).period)
    mu = EPSeq((), resample(d.mus, Bm, Pm).period)
    B = max(Bl, Bm)
    omega = [[d.omega_entry(u, v) for v in d.y_positions()]
             for u in d.x_positions()]
    for i in range(1, B + 1):
        lo, ln = d.lambdas.entry(i), lam.entry(i)
        mo, mn = d.mus.entry(i), mu.entry(i)
        for u in d.x_positions():
            eu = Vec.basis(u)
            for v in d.y_positions():
                ev = Vec.basis(v)
                omega[u - 1][v - 1] = (omega[u - 1][v - 1]
                                       + cov_apply(ln, eu) * cov_apply(mn, ev)
                                       - cov_apply(lo, eu) * cov_apply(mo, ev))
    return ComplementDatum(d.kind, d.X_dim, d.Y_dim,
                           tuple(tuple(row) for row in omega), lam, mu)


def _adapt(d):
    """Adapted bases (x0, x), (y0, y) of an absorbed family datum.

    x0 and y0 span the almost-zero cores; x and y are normalized so the
    block pairing in the adapted bases is ((0,1),(1,0)) and the line
    coefficients concentrate on x resp. y.
    """
    x0 = Vec(X0_basis(d).basis()[0])
    y0 = Vec(Y0_basis(d).basis()[0])
    y = None
    for v in d.y_positions():
        val = omega_tilde(d, x0, Vec.basis(v))
        if val:
            y = val.inverse() * Vec.basis(v)
            break
    x = None
    for u in d.x_positions():
        val = omega_tilde(d, Vec.basis(u), y0)
        if val:
            x = val.inverse() * Vec.basis(u)
            break
    x = x - d.omega_value(x, y) * x0
    a = _coord_seq(d.lambdas, x)
    b = _coord_seq(d.mus, y)
    return x0, x, y0, y, a, b


def _basis_matrix(col1, col2):
    return [[col1[1], col2[1]], [col1[2], col2[2]]]


def decide_equiv_special(d1, d2):
    """Decide equivalence on the special two-dimensional family.

    Accepts nondegenerate gl data with standard invariants
    (0, 1, 1, 1, 1); anything else raises CertificateError("not in
    family").  Returns an EquivDecision holding either a certificate
    that verifies against the inputs or a separating finite invariant.
    """
    for d in (d1, d2):
        if not isinstance(d, ComplementDatum) or d.kind != "gl":
            raise CertificateError("not in family")
        if standard_invariants(d) != (0, 1, 1, 1, 1) or not is_nondegenerate(d):
            raise CertificateError("not in family")
    a1_ = _absorbed(d1)
    a2_ = _absorbed(d2)
    x0_1, x_1, y0_1, y_1, a1, b1 = _adapt(a1_)
    x0_2, x_2, y0_2, y_2, a2, b2 = _adapt(a2_)

    L = lcm(a1.period_len, b1.period_len, a2.period_len, b2.period_len)
    a1L, b1L = resample(a1, 0, L), resample(b1, 0, L)
    a2L, b2L = resample(a2, 0, L), resample(b2, 0, L)
    pat1 = {(not a1L.period[k], not b1L.period[k]) for k in range(L)}
    pat2 = {(not a2L.period[k], not b2L.period[k]) for k in range(L)}
    if pat1 != pat2:
        return EquivDecision(
            False, reason="line pattern classes differ",
            witness={"only_first": sorted(pat1 - pat2),
                     "only_second": sorted(pat2 - pat1)})
    q1 = combine(_mul, a1L, b1L)
    q2 = combine(_mul, a2L, b2L)
    c = almost_proportional(q2, q1)
    if c is None:
        return EquivDecision(
            False, reason="recurring value multisets are not proportional",
            witness={"first": value_multiset(q1), "second": value_multiset(q2)})

    cls1, cls2 = {}, {}
    for k in range(L):
        key = (not a1L.period[k], not b1L.period[k], q1.entry(k + 1))
        cls1.setdefault(key, []).append(k + 1)
        key = (not a2L.period[k], not b2L.period[k], c * q2.entry(k + 1))
        cls2.setdefault(key, []).append(k + 1)
    if set(cls1) != set(cls2):
        raise CertificateError("internal: class keys fail to match")
    pieces = []
    for key, sources in cls1.items():
        targets = cls2[key]
        na, nb = len(sources), len(targets)
        for r in range(na * nb):
            pieces.append((sources[r % na] + (r // na) * L, nb * L,
                           targets[r % nb] + (r // nb) * L, na * L))
    sigma = SigmaMap(None, tuple(pieces))
    sigma.check_bijection()

    LP = L
    for key in cls1:
        LP = lcm(LP, L * len(cls2[key]))
    alpha_period = []
    for i in range(1, LP + 1):
        k = (i - 1) % L
        za, zb = not a1L.period[k], not b1L.period[k]
        if za and zb:
            alpha_period.append(ONE)
            continue
        kk = (sigma(i) - 1) % L
        if za:
            alpha_period.append(b2L.period[kk] / b1L.period[k])
        else:
            alpha_period.append(a1L.period[k] / (c * a2L.period[kk]))
    alphas = EPSeq((), tuple(alpha_period))

    C1X = _basis_matrix(x0_1, x_1)
    C2X = _basis_matrix(x0_2, x_2)
    C1Y = _basis_matrix(y0_1, y_1)
    C2Y = _basis_matrix(y0_2, y_2)
    DX = [[ONE, ZERO], [ZERO, c]]
    pi_X = mat_mul(C2X, mat_mul(DX, mat_inv(C1X)))

    def pi_Y_for(gamma):
        DY = [[c.inverse(), gamma], [ZERO, ONE]]
        return mat_mul(C2Y, mat_mul(DY, mat_inv(C1Y)))

    # truncation point: past every clause disagreement and past the
    # preimages of both target prefixes, so the gamma equation below
    # sees the full corrected pairing
    alpha_inv = alphas.map(lambda v: v.inverse())
    pi_Y0 = pi_Y_for(ZERO)
    Bstar = max(d1.lambdas.bound, d1.mus.bound, 1)
    for u in d1.x_positions():
        s1 = _coord_seq(d1.lambdas, Vec.basis(u))
        s2 = combine(_mul, alphas,
                     sigma.pullback(_coord_seq(d2.lambdas, _column_vec(pi_X, u))))
        b = disagreement_bound(s1, s2)
        if b is None:
            raise CertificateError("internal: lambda clause fails to stabilize")
        Bstar = max(Bstar, b)
    for v in d1.y_positions():
        s1 = _coord_seq(d1.mus, Vec.basis(v))
        s2 = combine(_mul, alpha_inv,
                     sigma.pullback(_coord_seq(d2.mus, _column_vec(pi_Y0, v))))
        b = disagreement_bound(s1, s2)
        if b is None:
            raise CertificateError("internal: mu clause fails to stabilize")
        Bstar = max(Bstar, b)
    for j in range(1, max(d2.lambdas.bound, d2.mus.bound) + 1):
        Bstar = max(Bstar, sigma.preimage(j))

    def corrected(d, x, y, reindex):
        total = d.omega_value(x, y)
        for i in range(1, Bstar + 1):
            j = reindex(i)
            total = total - (cov_apply(d.lambdas.entry(j), x)
                             * cov_apply(d.mus.entry(j), y))
        return total

    A1 = corrected(d1, x_1, y_1, lambda i: i)
    A2 = corrected(d2, x_2, y_2, sigma)
    K = corrected(d2, x_2, y0_2, sigma)
    if not K:
        raise CertificateError("internal: degenerate gamma equation")
    gamma = (A1 - c * A2) / (c * K)

    cert = EquivalenceCertificate(sigma, alphas, pi_X, pi_Y_for(gamma))
    res = verify_certificate(d1, d2, cert)
    if not res.ok:
        raise CertificateError(
            "internal: constructed certificate fails clause %r" % (res.clause,))
    return EquivDecision(True, certificate=cert)
