"""Brute-force verification on finite windows.

Everything infinite in this package is checked against its finite
truncations: an element supported inside a window acts on the window's
span exactly, and minimal polynomials, Jordan parts, centralizers,
normalizers, lower central series and weight decompositions are computed
there by direct exact linear algebra with no structure theory assumed.
This module is the independent referee the higher layers are tested
against.
"""

from __future__ import annotations

from .linalg import (
    Echelon,
    Subspace,
    combine,
    kernel_basis,
    mat_eval_poly,
    mat_is_zero,
    mat_mul,
    mat_sub,
    mat_vec,
    mat_zero,
    matrix_minimal_polynomial,
)
from .poly import deg, is_squarefree, pmonic, squarefree_part, semisimple_projector_poly
from .scalars import ONE, ZERO, Scalar, sort_key
from .tensor import KINDS, LieElement, Vec, Window, family, sgn


class OracleError(ValueError):
    pass


# -- window matrices -----------------------------------------------------


def action_matrix(x: LieElement, w: Window):
    """Dense matrix of x on the window's span, basis in index order."""
    if family(w.kind) != x.family:
        raise OracleError("element family does not match window kind")
    if not w.contains_support(x):
        raise OracleError("window too small: element supported outside")
    idx = w.indices
    pos = {i: p for p, i in enumerate(idx)}
    n = len(idx)
    M = mat_zero(n)
    for k in idx:
        v = x.act(Vec.basis(k))
        col = pos[k]
        for i, c in v.c.items():
            M[pos[i]][col] = c
    return M


def element_from_matrix(fam: str, M, w: Window) -> LieElement:
    """Invert action_matrix; verifies so/sp symmetry of the result."""
    idx = w.indices
    pos = {i: p for p, i in enumerate(idx)}
    if fam == "gl":
        return LieElement(
            "gl",
            {
                (i, j): M[pos[i]][pos[j]]
                for i in idx
                for j in idx
                if M[pos[i]][pos[j]]
            },
        )
    tensor = {}
    for i in idx:
        for j in idx:
            # column -j holds the tensor coefficients T[i, j]
            if -j not in pos:
                continue
            c = M[pos[i]][pos[-j]]
            if fam == "sp":
                c = -sgn(j) * c
            if c:
                tensor[(i, j)] = c
    return LieElement.from_full(fam, tensor)


def minimal_polynomial(x: LieElement, w: Window):
    """Monic minimal polynomial of x acting on the window's span.

    The window must contain the support of x. Growing the window past the
    support can only multiply in one factor of t, so the semisimplicity
    and nilpotency verdicts below do not depend on the window choice.
    """
    return matrix_minimal_polynomial(action_matrix(x, w))


def is_semisimple(x: LieElement, w: Window) -> bool:
    return is_squarefree(minimal_polynomial(x, w))


def is_nilpotent(x: LieElement, w: Window) -> bool:
    mp = minimal_polynomial(x, w)
    return all(not c for c in mp[:-1])


def jordan_parts(x: LieElement, w: Window):
    """Exact semisimple/nilpotent split (s, n) with x = s + n.

    s is a polynomial in x with zero constant term, so both parts stay in
    the same algebra (and in sl when x is traceless); this is verified on
    the window before returning.
    """
    M = action_matrix(x, w)
    mp = matrix_minimal_polynomial(M)
    sp = semisimple_projector_poly(mp)
    S = mat_eval_poly(sp, M)
    N = mat_sub(M, S)
    n = len(M)
    # postconditions, each cheap and each load-bearing
    if not is_squarefree(matrix_minimal_polynomial(S)):
        raise OracleError("semisimple part failed squarefree check")
    P = N
    for _ in range(max(0, deg(mp) - 1)):
        P = mat_mul(P, N)
    if not mat_is_zero(P):
        raise OracleError("nilpotent part failed nilpotency check")
    if not mat_is_zero(mat_sub(mat_mul(S, N), mat_mul(N, S))):
        raise OracleError("jordan parts do not commute")
    _check_in_power_span(S, M, deg(mp))
    s = element_from_matrix(x.family, S, w)
    nel = x - s
    return s, nel


def _check_in_power_span(S, M, d):
    ech = Echelon()
    P = M
    for _ in range(d):
        ech.add({k: v for k, v in _flat(P).items()})
        P = mat_mul(P, M)
    if not ech.contains(_flat(S)):
        raise OracleError("semisimple part escaped the span of powers")


def _flat(M):
    out = {}
    n = len(M)
    for i in range(n):
        for j in range(n):
            if M[i][j]:
                out[i * n + j] = M[i][j]
    return out


# -- structure constants on a window -------------------------------------


def _ambient_keys(kind: str, w: Window):
    idx = w.indices
    f = family(kind)
    if f == "gl":
        return [(i, j) for i in idx for j in idx]
    if f == "so":
        return [(i, j) for i in idx for j in idx if i < j]
    return [(i, j) for i in idx for j in idx if i <= j]


def _basis_element(fam: str, key) -> LieElement:
    return LieElement(fam, {key: ONE})


def ambient_basis(kind: str, w: Window):
    """Basis of the window truncation of gl/sl/so/sp as LieElements."""
    f = family(kind)
    keys = _ambient_keys(kind, w)
    if kind != "sl":
        return [_basis_element(f, k) for k in keys]
    out = [_basis_element("gl", k) for k in keys if k[0] != k[1]]
    idx = w.indices
    for a, b in zip(idx, idx[1:]):
        out.append(
            _basis_element("gl", (a, a)) - _basis_element("gl", (b, b))
        )
    return out


def _solve_in_ambient(kind: str, w: Window, condition):
    """Basis of {x in ambient(kind, w) : condition(x) == 0}.

    condition maps a LieElement to a sparse residue dict over arbitrary
    equation keys; it is evaluated on basis elements and extended by
    linearity, so it must be linear.
    """
    fam = family(kind)
    keys = _ambient_keys(kind, w)
    eqs = {}
    for ki, key in enumerate(keys):
        res = condition(_basis_element(fam, key))
        for ek, v in res.items():
            eqs.setdefault(ek, {})[ki] = v
    if kind == "sl":
        tr = {}
        for ki, (i, j) in enumerate(keys):
            if i == j:
                tr[ki] = ONE
        if tr:
            eqs[("trace",)] = tr
    sol = kernel_basis(eqs.values(), range(len(keys)))
    out = []
    for c in sol:
        acc = {}
        for ki, v in c.items():
            acc[keys[ki]] = v
        out.append(LieElement(fam, acc))
    return out


def centralizer_basis(gens, kind: str, w: Window):
    """Basis of the centralizer of gens inside the window algebra."""
    gens = list(gens)

    def cond(b):
        res = {}
        for gi, g in enumerate(gens):
            br = b.bracket(g)
            for sk, v in br.c.items():
                res[(gi, sk)] = v
        return res

    return _solve_in_ambient(kind, w, cond)


def normalizer_basis(gens, kind: str, w: Window):
    """Basis of {x : [x, g] in span(gens) for all g} in the window algebra."""
    gens = list(gens)
    span = Subspace([g.c for g in gens])

    def cond(b):
        res = {}
        for gi, g in enumerate(gens):
            rem = span.reduce(b.bracket(g).c)
            for sk, v in rem.items():
                res[(gi, sk)] = v
        return res

    return _solve_in_ambient(kind, w, cond)


def _close_under_span(vectors):
    ech = Echelon()
    kept = []
    for v in vectors:
        if ech.add(v.c) is not None:
            kept.append(v)
    return kept, ech


def lcs_depth(gens, max_steps=64):
    """Depth of the lower central series of the span of gens.

    The span must be a subalgebra; the series g, [g, g], [g, [g, g]], ...
    must reach zero. Depth counts the nonzero terms, so an abelian algebra
    has depth 1 and the examples with one nontrivial bracket level have
    depth 2.
    """
    basis, ech = _close_under_span(gens)
    if not basis:
        return 0
    for a in basis:
        for b in basis:
            if not ech.contains(a.bracket(b).c):
                raise OracleError("not a subalgebra: bracket escapes the span")
    depth = 0
    current = basis
    while current:
        depth += 1
        if depth > max_steps:
            raise OracleError("not nilpotent: series did not terminate")
        nxt, _ = _close_under_span(
            a.bracket(b) for a in basis for b in current
        )
        # the series is descending, so an undiminished dimension means it
        # has stabilized strictly above zero
        if len(nxt) == len(current):
            raise OracleError("not nilpotent: series stabilized above zero")
        current = nxt
    return depth


def _scalar_from_sympy(expr):
    import sympy

    re_, im_ = expr.as_real_imag()
    re_, im_ = sympy.nsimplify(re_), sympy.nsimplify(im_)
    if not (re_.is_rational and im_.is_rational):
        raise OracleError("spectrum not split over Q(i)")
    from gmpy2 import mpq

    return Scalar(mpq(re_.p, re_.q), mpq(im_.p, im_.q))


def poly_roots_qi(f):
    """Roots of f in Q(i) with multiplicity; error if any factor stays
    nonlinear over Q(i)."""
    import sympy

    t = sympy.Symbol("t")
    expr = 0
    for k, c in enumerate(f):
        expr += (
            sympy.Rational(int(c.re.numerator), int(c.re.denominator))
            + sympy.I * sympy.Rational(int(c.im.numerator), int(c.im.denominator))
        ) * t**k
    p = sympy.Poly(expr, t, domain="QQ_I")
    roots = []
    for fac, mult in p.factor_list()[1]:
        if fac.degree() != 1:
            raise OracleError("spectrum not split over Q(i)")
        a1, a0 = fac.all_coeffs()
        root = sympy.together(-a0 / a1)
        roots.extend([_scalar_from_sympy(root)] * mult)
    return roots


def ad_matrix(g: LieElement, kind: str, w: Window):
    """Matrix of [g, .] on the window truncation of the ambient algebra,
    coordinates over canonical storage keys (gl keys for sl)."""
    keys = _ambient_keys(kind, w)
    pos = {k: p for p, k in enumerate(keys)}
    fam = family(kind)
    M = mat_zero(len(keys))
    for k in keys:
        img = g.bracket(_basis_element(fam, k))
        col = pos[k]
        for sk, c in img.c.items():
            M[pos[sk]][col] = c
    return M


def _module_setup(gens, kind, w, on):
    """Matrices of the generators plus the coordinate frame of the module:
    either the window's vector span or the window algebra under [g, .]."""
    if on == "vectors":
        mats = [action_matrix(g, w) for g in gens]
        coords = w.indices
        start = [{p: ONE} for p in range(len(coords))]
        unpack = lambda d: Vec({coords[p]: c for p, c in d.items()})
        extra = []
    elif on == "adjoint":
        mats = [ad_matrix(g, kind, w) for g in gens]
        coords = _ambient_keys(kind, w)
        pos = {k: p for p, k in enumerate(coords)}
        start = [
            {pos[k]: c for k, c in b.c.items()}
            for b in ambient_basis(kind, w)
        ]
        fam = family(kind)
        unpack = lambda d: LieElement(fam, {coords[p]: c for p, c in d.items()})
        extra = []
        if kind == "sl":
            extra = [{pos[k]: ONE for k in coords if k[0] == k[1]}]
    else:
        raise OracleError("module selector must be 'vectors' or 'adjoint'")
    return mats, len(coords), start, unpack, extra


def weight_decomposition(gens, kind: str, w: Window, on: str = "vectors"):
    """Joint eigenspace decomposition under commuting semisimple generators.

    The decomposed module is the window's vector span (on="vectors") or the
    window truncation of the ambient algebra under [g, .] (on="adjoint").
    Returns a list of (weight, basis) pairs: weight is a tuple of Scalars,
    one per generator, and basis spans that joint eigenspace. Weights are
    sorted lexicographically; basis vectors are canonical echelon
    representatives.
    """
    gens = list(gens)
    for a in gens:
        for b in gens:
            if a.bracket(b):
                raise OracleError("generators do not commute")
    mats, n, start, unpack, _ = _module_setup(gens, kind, w, on)
    blocks = [(start, ())]
    for M in mats:
        mp = matrix_minimal_polynomial(M)
        if not is_squarefree(mp):
            raise OracleError("not toral: generator not semisimple")
        roots = sorted(set(poly_roots_qi(mp)), key=sort_key)
        new_blocks = []
        for basis, wt in blocks:
            covered = 0
            for lam in roots:
                # solve sum c_j (M - lam) b_j = 0 within the block
                shifted = []
                for b in basis:
                    col = [ZERO] * n
                    for p, c in b.items():
                        col[p] = c
                    out = mat_vec(M, col)
                    img = {}
                    for p in range(n):
                        v = out[p] - lam * col[p]
                        if v:
                            img[p] = v
                    shifted.append(img)
                eqs = {}
                for j, img in enumerate(shifted):
                    for p, v in img.items():
                        eqs.setdefault(p, {})[j] = v
                sol = kernel_basis(eqs.values(), range(len(basis)))
                if not sol:
                    continue
                vecs = [combine(c, basis) for c in sol]
                covered += len(vecs)
                new_blocks.append((vecs, wt + (lam,)))
            if covered != len(basis):
                raise OracleError(
                    "module did not decompose into eigenspaces"
                )
        blocks = new_blocks
    out = []
    for basis, wt in sorted(
        blocks, key=lambda bw: tuple(sort_key(s) for s in bw[1])
    ):
        out.append((wt, [unpack(b) for b in basis]))
    return out


def generalized_zero_space(gens, kind: str, w: Window, on: str = "vectors"):
    """Basis of the joint generalized 0-eigenspace of the generators on the
    window's vector span (on="vectors") or on the window algebra under
    [g, .] (on="adjoint")."""
    gens = list(gens)
    mats, n, start, unpack, extra = _module_setup(gens, kind, w, on)
    eqs = list(extra)
    for M in mats:
        # kernel of M^m stabilizes by m = n, so square up to any power >= n
        P = M
        k = 1
        while k < n:
            P = mat_mul(P, P)
            k *= 2
        for row in P:
            r = {p: c for p, c in enumerate(row) if c}
            if r:
                eqs.append(r)
    sol = kernel_basis(eqs, range(n))
    return [unpack(s) for s in sol]
