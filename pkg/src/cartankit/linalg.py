"""Exact linear algebra over Q(i).

Two representations coexist:

  * sparse rows: dict {key: Scalar} over any homogeneous sortable key space
    (integers for vector coordinates, (i, j) pairs for algebra coordinates);
    the incremental reduced echelon form on these is the workhorse behind
    subspace canonical forms, kernels, and centralizer solves;

  * small dense matrices: list of list of Scalar, used for window action
    matrices, minimal polynomials, and the Jordan split.
"""

from __future__ import annotations

from .poly import deg, plcm, pnormal
from .scalars import ONE, ZERO, Scalar

# -- sparse rows ---------------------------------------------------------


def row_clean(row: dict) -> dict:
    return {k: v for k, v in row.items() if v}


def row_sub(row: dict, coeff: Scalar, other: dict) -> dict:
    out = dict(row)
    for k, v in other.items():
        w = out.get(k, ZERO) - coeff * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def row_scale(coeff: Scalar, row: dict) -> dict:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in row.items()}


class Echelon:
    """Incremental reduced row echelon form with deterministic pivoting.

    Pivot of a row is its minimal key; stored rows are pivot-normalized and
    fully back-substituted, so the row set is a canonical form of the span
    and equality of spans is equality of the pivot -> row maps.
    """

    def __init__(self):
        self.pivots = {}

    def reduce(self, row: dict) -> dict:
        out = row_clean(row)
        while out:
            hit = None
            for k in sorted(out):
                if k in self.pivots:
                    hit = k
                    break
            if hit is None:
                return out
            # pivot rows only carry keys >= their pivot, so the smallest
            # unresolved pivot key strictly increases and this terminates
            out = row_sub(out, out[hit], self.pivots[hit])
        return out

    def add(self, row: dict):
        """Insert a row; return its pivot key, or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        k = min(r)
        r = row_scale(ONE / r[k], r)
        for pk, p in self.pivots.items():
            if k in p:
                self.pivots[pk] = row_sub(p, p[k], r)
        self.pivots[k] = r
        return k

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis_rows(self):
        return [self.pivots[k] for k in sorted(self.pivots)]

    def canonical(self):
        return tuple(
            (k, tuple(sorted(self.pivots[k].items())))
            for k in sorted(self.pivots)
        )


def kernel_basis(equations, unknowns):
    """Basis of {x : for every equation e, sum_k e[k] x[k] = 0}.

    equations: iterable of sparse rows over the given unknown keys.
    Returns canonical sparse vectors, one per free unknown, in key order.
    """
    ech = Echelon()
    for e in equations:
        ech.add(e)
    pivots = ech.pivots
    free = [k for k in unknowns if k not in pivots]
    out = []
    for f in free:
        x = {f: ONE}
        for p, row in pivots.items():
            c = row.get(f)
            if c:
                x[p] = -c
        out.append(x)
    return out


class Subspace:
    """A finite dimensional subspace in canonical (reduced echelon) form."""

    def __init__(self, vectors=()):
        self._ech = Echelon()
        for v in vectors:
            self._ech.add(v)

    def add(self, v: dict):
        self._ech.add(v)

    def contains(self, v: dict) -> bool:
        return self._ech.contains(v)

    def reduce(self, v: dict) -> dict:
        return self._ech.reduce(v)

    @property
    def dim(self) -> int:
        return self._ech.dim

    def basis(self):
        return self._ech.basis_rows()

    def canonical(self):
        return self._ech.canonical()

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.canonical() == other.canonical()

    def __le__(self, other):
        return all(other.contains(b) for b in self.basis())

    def cut_by(self, functional) -> "Subspace":
        """Subspace of vectors killed by a linear functional.

        functional: callable on sparse vectors returning Scalar.
        """
        bas = self.basis()
        vals = [functional(b) for b in bas]
        eq = {i: v for i, v in enumerate(vals) if v}
        coeffs = kernel_basis([eq], range(len(bas)))
        out = []
        for c in coeffs:
            acc = {}
            for i, ci in c.items():
                for k, v in bas[i].items():
                    w = acc.get(k, ZERO) + ci * v
                    if w:
                        acc[k] = w
                    else:
                        acc.pop(k, None)
            out.append(acc)
        return Subspace(out)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Combinations of self's basis that other contains; the residues
        after reducing by other give the linear conditions."""
        bas = self.basis()
        eqs = {}
        for i, b in enumerate(bas):
            res = other.reduce(b)
            for k, v in res.items():
                eqs.setdefault(k, {})[i] = v
        coeffs = kernel_basis(eqs.values(), range(len(bas)))
        vecs = []
        for c in coeffs:
            acc = {}
            for i, ci in c.items():
                for k, v in bas[i].items():
                    w = acc.get(k, ZERO) + ci * v
                    if w:
                        acc[k] = w
                    else:
                        acc.pop(k, None)
            vecs.append(acc)
        return Subspace(vecs)

    def __repr__(self):
        return f"Subspace(dim={self.dim})"


def combine(coeffs: dict, vectors) -> dict:
    """Linear combination of sparse vectors: sum coeffs[i] * vectors[i]."""
    acc = {}
    for i, c in coeffs.items():
        if not c:
            continue
        for k, v in vectors[i].items():
            w = acc.get(k, ZERO) + c * v
            if w:
                acc[k] = w
            else:
                acc.pop(k, None)
    return acc


# -- dense matrices ------------------------------------------------------


def mat_zero(n):
    return [[ZERO] * n for _ in range(n)]


def mat_identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c: Scalar, A):
    return [[c * a for a in row] for row in A]


def mat_mul(A, B):
    n, m = len(A), len(B[0])
    k = len(B)
    Bt = list(zip(*B))
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = ZERO
            Bj = Bt[j]
            for p in range(k):
                a = Ai[p]
                if a:
                    acc = acc + a * Bj[p]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, x):
    out = []
    for row in A:
        acc = ZERO
        for a, b in zip(row, x):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def mat_is_zero(A):
    return all(not a for row in A for a in row)


def mat_eq(A, B):
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def mat_inv(A):
    """Inverse of a square matrix by Gauss-Jordan; raises on singular input."""
    n = len(A)
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = work[col][col].inverse()
        work[col] = [inv * a for a in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                c = work[r][col]
                work[r] = [a - c * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


def mat_eval_poly(f, M):
    """f(M) by Horner."""
    n = len(M)
    out = mat_zero(n)
    for c in reversed(f):
        out = mat_mul(out, M)
        if c:
            for i in range(n):
                out[i][i] = out[i][i] + c
    return out


def vector_annihilator(M, v):
    """Monic generator of {f : f(M) v = 0} as a coefficient tuple."""
    n = len(M)
    basis = []  # (reduced Krylov vector as dict, combination polynomial)
    cur = {i: c for i, c in enumerate(v) if c}
    combo = [ONE]
    raw = list(v)
    while True:
        r = dict(cur)
        cmb = list(combo)
        for b, bc in basis:
            lead = min(b)
            c = r.get(lead)
            if c:
                r = row_sub(r, c, b)
                while len(cmb) < len(bc):
                    cmb.append(ZERO)
                for i, x in enumerate(bc):
                    cmb[i] = cmb[i] - c * x
        if not r:
            return pnormal(cmb)
        lead = min(r)
        inv = ONE / r[lead]
        r = row_scale(inv, r)
        cmb = [inv * x for x in cmb]
        basis.append((r, cmb))
        raw = mat_vec(M, raw)
        cur = {i: c for i, c in enumerate(raw) if c}
        combo = [ZERO] * len(combo) + [ONE]
        if len(combo) > n + 1:
            raise RuntimeError("Krylov chain exceeded dimension bound")


def matrix_minimal_polynomial(M):
    """Monic minimal polynomial of a square matrix, exact."""
    n = len(M)
    out = (ONE,)
    for k in range(n):
        if deg(out) == n:
            break
        v = [ONE if i == k else ZERO for i in range(n)]
        out = plcm(out, vector_annihilator(M, v))
    return out
