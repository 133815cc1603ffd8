"""Worked examples packaged with their finite verification routines.

Three showcase constructions plus the splitting dual-bases systems, each
checked exactly on finite truncations: a nonabelian orthogonal Cartan
subalgebra, a limit algebra built from trace-twisted inclusions whose
distinguished central direction no Cartan subalgebra can reach, and a
limit algebra whose maximal torus meets the traceless part trivially.

Every example returns a list of (check name, bool) pairs; preconditions
raise GalleryError.  Items are addressable by stable string ids through
``run_gallery``.
"""

from __future__ import annotations

from .complement import standard_invariants
from .linalg import (
    Subspace,
    combine,
    kernel_basis,
    mat_inv,
    mat_mul,
    mat_vec,
    matrix_minimal_polynomial,
)
from .oracle import is_semisimple, minimal_polynomial, lcs_depth, weight_decomposition
from .poly import is_squarefree
from .scalars import ONE, ZERO, Scalar, sc
from .systems import (
    DualBases,
    WorkedExample,
    centralizer_of_torus_at,
    datum_from_system,
    is_splitting_at,
    toral_generators,
    torus_basis_at,
)
from .tensor import LieElement, Vec, Window, form_pair


class GalleryError(ValueError):
    pass


class LimitAlgebraLevel:
    """One level of a direct limit together with its inclusion map.

    ``basis`` enumerates the level, ``embedding`` carries elements into
    the next level, ``bracket`` and ``flatten`` interpret elements for
    the checks.  ``check_embedding`` verifies by brute force that the
    inclusion is an injective Lie algebra homomorphism.
    """

    __slots__ = ("level", "basis", "embedding", "bracket", "flatten")

    def __init__(self, level, basis, embedding, bracket, flatten):
        self.level = level
        self.basis = list(basis)
        self.embedding = embedding
        self.bracket = bracket
        self.flatten = flatten

    def check_embedding(self):
        images = [self.embedding(b) for b in self.basis]
        span = Subspace([self.flatten(im) for im in images])
        if span.dim != len(self.basis):
            return False
        for x, ix in zip(self.basis, images):
            for y, iy in zip(self.basis, images):
                lhs = self.flatten(self.embedding(self.bracket(x, y)))
                if lhs != self.flatten(self.bracket(ix, iy)):
                    return False
        return True


# -- nonabelian orthogonal example ----------------------------------------


def so_nonabelian_example(N=8):
    """The odd orthogonal system whose Cartan subalgebra is nonabelian.

    Verifies on the window {-N..N}: the stable torus centralizer equals
    the torus plus the wedge square of a three-dimensional space, the
    lower central series has depth exactly two, and the zero weight
    space is three-dimensional with form rank one.
    """
    if N < 5:
        raise GalleryError("window too small")
    system = WorkedExample("so-nonabelian-odd")
    w = system.ambient_window(N)
    torus = torus_basis_at(system, w)
    cent = centralizer_of_torus_at(system, w)
    block = [
        LieElement.wedge(Vec.basis(1), Vec.basis(0)),
        LieElement.wedge(Vec.basis(-2), Vec.basis(0)),
        LieElement.wedge(Vec.basis(-2), Vec.basis(1)),
    ]
    expected = Subspace([g.c for g in torus] + [x.c for x in block])
    checks = [("centralizer is torus plus wedge block", cent == expected)]

    x, y, z = block
    checks.append(("bracket witness", x.bracket(y) == z))

    elements = [LieElement("so", dict(row)) for row in cent.basis()]
    checks.append(("lower central series depth two", lcs_depth(elements) == 2))

    zero_wt = tuple(ZERO for _ in torus)
    v0 = []
    for wt, vecs in weight_decomposition(torus, "so", w, on="vectors"):
        if wt == zero_wt:
            v0 = vecs
    # cut by one generator past the window edge: tail directions that are
    # weight-zero on the truncation die against it, the limit space stays
    t_next = toral_generators(system, N + 1)
    eqs = {}
    for idx, b in enumerate(v0):
        for k, cval in t_next.act(b).c.items():
            eqs.setdefault(k, {})[idx] = cval
    stable = [Vec(combine(s, [b.c for b in v0]))
              for s in kernel_basis(eqs.values(), range(len(v0)))]
    checks.append(("zero weight space dimension three", len(stable) == 3))
    gram = [{k: form_pair("so", u, v) for k, v in enumerate(stable)}
            for u in stable]
    checks.append(("form rank one on zero weight space",
                   Subspace(gram).dim == 1))
    return system, checks


# -- trace-twisted limit of even general linear algebras -------------------


def _shift_matrix(x):
    return LieElement("gl", {(i + 1, j + 1): c for (i, j), c in x.c.items()})


def _trace_embed(m):
    """Inclusion of the 2m level into the 2m+2 level: shift down one slot
    and deposit the normalized trace in the new corner."""

    def embed(x):
        out = _shift_matrix(x)
        tr = x.trace()
        if tr:
            out = out + (tr / sc(m)) * LieElement.matrix_unit(1, 1)
        return out

    return embed


def _gl_basis(n):
    return [LieElement.matrix_unit(i, j)
            for i in range(1, n + 1) for j in range(1, n + 1)]


def _sl_basis(n):
    out = [LieElement.matrix_unit(i, j)
           for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for i in range(1, n):
        out.append(LieElement.matrix_unit(i, i)
                   - LieElement.matrix_unit(i + 1, i + 1))
    return out


def _projector(m):
    return LieElement("gl", {(k, k): ONE for k in range(1, m + 1)})


def _corner_pair(m):
    return LieElement.matrix_unit(1, 2 * m) + LieElement.matrix_unit(2 * m, 1)


def gl_limit_B_example(n=4):
    """Limit of even general linear algebras along trace-twisted
    inclusions, with the distinguished projector direction.

    Checks, level by level up to n+1: the inclusions are injective
    homomorphisms, the projector sequence is embedding-consistent with
    the corner trace correction, the corner pairs form a commuting
    family of semisimple elements, and bracketing against the next
    corner pair forces the projector coefficient of any centralizing
    element to vanish.
    """
    if n < 1:
        raise GalleryError("level must be positive")
    checks = []
    ok = all(
        LimitAlgebraLevel(m, _gl_basis(2 * m), _trace_embed(m),
                          lambda x, y: x.bracket(y),
                          lambda x: x.c).check_embedding()
        for m in range(1, n + 1))
    checks.append(("inclusions are injective homomorphisms", ok))

    ok = all(_trace_embed(m)(_projector(m)) == _projector(m + 1)
             for m in range(1, n + 1))
    checks.append(("projector sequence embeds consistently", ok))
    ok = all(
        _trace_embed(m)(_projector(m)) - _shift_matrix(_projector(m))
        == LieElement.matrix_unit(1, 1)
        for m in range(1, n + 1))
    checks.append(("trace correction is the corner unit", ok))

    ok = True
    for m in range(1, n + 1):
        t = _corner_pair(m + 1)
        embed = _trace_embed(m)
        if any(embed(M).bracket(t) for M in _sl_basis(2 * m)):
            ok = False
        if _projector(m + 1).bracket(t) != (
                LieElement.matrix_unit(1, 2 * m + 2)
                - LieElement.matrix_unit(2 * m + 2, 1)):
            ok = False
        # one dense witness of the displayed identity
        M = LieElement("gl", {(i, j): sc(i * 2 * m + j)
                              for i in range(1, 2 * m + 1)
                              for j in range(1, 2 * m + 1)})
        M = M - (M.trace() / sc(2 * m)) * LieElement(
            "gl", {(i, i): ONE for i in range(1, 2 * m + 1)})
        a = sc(5)
        lhs = (embed(M) + a * _projector(m + 1)).bracket(t)
        rhs = a * (LieElement.matrix_unit(1, 2 * m + 2)
                   - LieElement.matrix_unit(2 * m + 2, 1))
        if lhs != rhs:
            ok = False
    checks.append(("bracket identity per level", ok))

    cubic = (ZERO, -ONE, ZERO, ONE)
    ok = True
    for m in range(1, n + 2):
        # any window strictly containing the support sees the kernel line
        w = Window("gl", 2 * m + 1)
        t = _corner_pair(m)
        if minimal_polynomial(t, w) != cubic or not is_semisimple(t, w):
            ok = False
    checks.append(("corner pairs are semisimple with cubic minimal polynomial", ok))

    ok = True
    for l in range(1, n + 2):
        img = _corner_pair(l)
        for m in range(l, n + 1):
            img = _trace_embed(m)(img)
        if img.bracket(_corner_pair(n + 1)):
            ok = False
    checks.append(("corner family commutes across levels", ok))

    basis = _sl_basis(2 * n)
    embed = _trace_embed(n)
    t = _corner_pair(n + 1)
    T = len(basis)
    eqs = {}
    for idx, M in enumerate(basis):
        for key, cval in embed(M).bracket(t).c.items():
            eqs.setdefault(key, {})[idx] = cval
    for key, cval in _projector(n + 1).bracket(t).c.items():
        eqs.setdefault(key, {})[T] = cval
    sols = kernel_basis(eqs.values(), range(T + 1))
    checks.append(("centralizing elements drop the projector direction",
                   len(sols) == T and all(not s.get(T) for s in sols)))
    return checks


# -- limit with trivial torus intersection ---------------------------------


def _line_coeff(i, j):
    return ONE if (j - i) % (1 << (i - 1)) == 0 else ZERO


def _nested_vector(j):
    return Vec({i: _line_coeff(i, j) for i in range(1, j + 1)})


class _NestedFamily:
    """The recursively nested basis f_j, its drop map p, and the
    stabilized eigenvalue pattern d."""

    def __init__(self):
        self.p = {}
        self.d = {}

    def drop(self, j):
        if j not in self.p:
            target = _nested_vector(j) - Vec.basis(j)
            for i in range(1, j):
                if _nested_vector(i) == target:
                    self.p[j] = i
                    break
            else:
                raise GalleryError("drop relation failed at %d" % j)
        return self.p[j]

    def weight(self, k, l):
        if (k, l) not in self.d:
            self.d[(k, l)] = k if k <= l else self.weight(self.drop(k), l)
        return self.d[(k, l)]

    def weight_sum(self, m, l):
        return sum(self.weight(k, l) for k in range(1, m + 1))

    def gamma(self, i, l):
        return sc(i * self.weight(i + 1, l) - self.weight_sum(i, l)) / sc(i + 1)


def _coeff_matrix(m):
    return [[_line_coeff(i, j) for j in range(1, m + 1)] for i in range(1, m + 1)]


def _torus_image(fam, l, m):
    """Matrix and central coefficient of the l-th torus element at level m."""
    C = _coeff_matrix(m)
    shift = sc(fam.weight_sum(m, l)) / sc(m)
    D = [[sc(fam.weight(i + 1, l)) - shift if i == j else ZERO
          for j in range(m)] for i in range(m)]
    return mat_mul(C, mat_mul(D, mat_inv(C))), shift


def _pair_embed(fam, i):
    def embed(elem):
        mat, central = elem
        out_c = {}
        for l, zl in central.items():
            scale = zl * sc(i) / sc(fam.weight_sum(i, l))
            g = fam.gamma(i, l)
            if g:
                diag = LieElement("gl", dict(
                    [((k, k), -(g / sc(i))) for k in range(1, i + 1)]
                    + [((i + 1, i + 1), g)]))
                mat = mat + scale * diag
            out_c[l] = scale * sc(fam.weight_sum(i + 1, l)) / sc(i + 1)
        return mat, out_c

    return embed


def _pair_bracket(x, y):
    return x[0].bracket(y[0]), {}


def _pair_flatten(elem):
    mat, central = elem
    out = {("m",) + key: c for key, c in mat.c.items()}
    for l, c in central.items():
        if c:
            out[("z", l)] = c
    return out


def _pair_basis(i):
    out = [(M, {}) for M in _sl_basis(i)]
    out.extend((LieElement("gl"), {l: ONE}) for l in range(1, i + 1))
    return out


def _matrix_element(rows):
    return LieElement("gl", {(i + 1, j + 1): v
                             for i, row in enumerate(rows)
                             for j, v in enumerate(row) if v})


def sl_trivial_intersection_example(j=3, L=20):
    """Limit algebra whose maximal torus meets the traceless part only
    in zero.

    Materializes the nested basis, the recursive drop map, the level
    inclusions and the distinguished torus elements; verifies the torus
    elements are commuting semisimple elements with the nested vectors
    as common eigenvectors, that the closed-form level images agree with
    the actual inclusion chain, and that the only traceless block
    element commuting with the whole torus is zero.
    """
    if j > 5:
        raise GalleryError("j must be at most 5")
    if j < 1 or L < j:
        raise GalleryError("L too small to span")
    span = Subspace([
        {i: _line_coeff(i, j + k) for i in range(1, j + 1)}
        for k in range(1, L - j + 1)])
    if span.dim != j:
        raise GalleryError("L too small to span")
    fam = _NestedFamily()
    checks = []

    ok = True
    try:
        for jj in range(2, 13):
            fam.drop(jj)
    except GalleryError:
        ok = False
    checks.append(("dropping the top coordinate lands on an earlier vector", ok))

    M = max(8, j + 2)
    ok = all(
        LimitAlgebraLevel(i, _pair_basis(i), _pair_embed(fam, i),
                          _pair_bracket, _pair_flatten).check_embedding()
        for i in range(1, M))
    checks.append(("inclusions are injective homomorphisms", ok))

    ok = True
    for l in range(1, M):
        rows, shift = _torus_image(fam, l, l)
        elem = (_matrix_element(rows), {l: shift})
        for i in range(l, M):
            elem = _pair_embed(fam, i)(elem)
        rows_M, shift_M = _torus_image(fam, l, M)
        if _pair_flatten(elem) != _pair_flatten(
                (_matrix_element(rows_M), {l: shift_M})):
            ok = False
    checks.append(("closed-form images match the inclusion chain", ok))

    ok = all(
        is_squarefree(matrix_minimal_polynomial(_torus_image(fam, l, l)[0]))
        for l in range(1, min(L, 8) + 1))
    checks.append(("torus elements are semisimple", ok))

    common = min(L, 8)
    mats = [_torus_image(fam, l, common)[0] for l in range(1, common + 1)]
    ok = all(
        mat_mul(mats[a], mats[b]) == mat_mul(mats[b], mats[a])
        for a in range(common) for b in range(a + 1, common))
    checks.append(("torus elements commute", ok))

    ok = True
    for l in range(1, L + 1):
        T, shift = _torus_image(fam, l, L)
        for k in range(1, L + 1):
            f = [_line_coeff(i, k) for i in range(1, L + 1)]
            lam = sc(fam.weight(k, l)) - shift
            if mat_vec(T, f) != [lam * v for v in f]:
                ok = False
    checks.append(("nested vectors are common eigenvectors", ok))

    ok = True
    for l in range(j + 1, L + 1):
        T, _ = _torus_image(fam, l, l)
        for k in range(1, l - j + 1):
            factor = sc(j + k - fam.drop(j + k))
            for i in range(1, j + 1):
                if T[i - 1][j + k - 1] != factor * _line_coeff(i, j + k):
                    ok = False
    checks.append(("upper block columns follow the drop formula", ok))

    eqs = {}

    def accum(eq_key, unknown, value):
        row = eqs.setdefault(eq_key, {})
        row[unknown] = row.get(unknown, ZERO) + value

    unknowns = [(a, b) for a in range(1, j + 1) for b in range(1, j + 1)]
    for l in range(j + 1, L + 1):
        T, _ = _torus_image(fam, l, l)
        for a, b in unknowns:
            for s in range(1, l + 1):
                accum((l, a, s), (a, b), T[b - 1][s - 1])
            for r in range(1, l + 1):
                accum((l, r, b), (a, b), -T[r - 1][a - 1])
    eqs[("tr",)] = {(a, a): ONE for a in range(1, j + 1)}
    sols = kernel_basis(eqs.values(), unknowns)
    checks.append(("only zero commutes with the torus", not sols))
    return checks


# -- splitting dual-bases systems ------------------------------------------


def splitting_examples(kind):
    """Dual-bases systems realizing the splitting Cartan subalgebras,
    paired with their expected standard invariants."""
    if kind == "so":
        return ((DualBases("so"), (0, 0, 0)),
                (DualBases("so", ambient_zero=True), (1, 1, 0)))
    if kind == "sp":
        return ((DualBases("sp"), (0, 0, 0)),)
    if kind in ("gl", "sl"):
        return ((DualBases(kind), (0, 0, 0, 0, 0)),)
    raise GalleryError("unknown kind: %r" % (kind,))


def _run_splitting(kind, size):
    checks = []
    for system, expected in splitting_examples(kind):
        label = system.kind + (" with zero" if system.ambient_zero else "")
        got = standard_invariants(datum_from_system(system))
        checks.append(("invariants of " + label, got == expected))
        ok = all(
            is_splitting_at(system, system.ambient_window(n))
            for n in range(system.min_window, size + 1))
        checks.append(("splitting on all windows for " + label, ok))
    return checks


GALLERY_IDS = (
    "so-nonabelian-odd",
    "gl-limit-B",
    "sl-trivial-torus",
    "splitting-gl",
    "splitting-sl",
    "splitting-so",
    "splitting-sp",
)


def run_gallery(item_id, size=None):
    """Run one gallery item's verification, returning (name, ok) pairs."""
    if item_id == "so-nonabelian-odd":
        return so_nonabelian_example(size if size is not None else 8)[1]
    if item_id == "gl-limit-B":
        return gl_limit_B_example(size if size is not None else 4)
    if item_id == "sl-trivial-torus":
        return sl_trivial_intersection_example(L=size if size is not None else 20)
    if item_id.startswith("splitting-") and item_id[10:] in (
            "gl", "sl", "so", "sp"):
        return _run_splitting(item_id[10:], size if size is not None else 6)
    raise GalleryError("unknown gallery id: %r" % (item_id,))
