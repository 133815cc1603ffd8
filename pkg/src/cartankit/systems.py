"""Dual systems, their truncations, and realizations of complement data.

A dual system is a family of lines indexed by positive integers
(``gl``/``sl``) or by nonzero integers with a sign pairing (``so``/``sp``).
Each catalog family knows its vectors in closed form, so truncated toral
subalgebras and their window centralizers can be generated exactly and
compared against brute-force computations.
"""

from __future__ import annotations

import math

from .complement import (
    ComplementDatum,
    ComplementError,
    is_nondegenerate,
    zero_datum,
)
from .epseq import EPSeq, TwoSidedEPSeq
from .linalg import Subspace, combine, kernel_basis
from .oracle import centralizer_basis
from .scalars import HALF, I, MINUS_ONE, ONE, ZERO, Scalar
from .tensor import KINDS, LieElement, Vec, Window, family, pair

__all__ = [
    "DualSystemError",
    "DualSystem",
    "DualBases",
    "ShiftPattern",
    "CumulativeSum",
    "WorkedExample",
    "NormalFormSystem",
    "toral_generators",
    "torus_basis_at",
    "cartan_basis_at",
    "centralizer_of_torus_at",
    "stable_oracle_restriction",
    "is_splitting_at",
    "maximality_search",
    "system_from_datum",
    "datum_from_system",
    "build_corollary_class_representatives",
]


class DualSystemError(ValueError):
    """A dual-system request that cannot be satisfied."""


def _zero_seq():
    return EPSeq(period=(Vec(),))


def _parity(i: int) -> Scalar:
    return ONE if i % 2 else ZERO


class DualSystem:
    """Common interface for the line families in the catalog."""

    kind: str
    catalog: str
    params: dict

    ambient_zero = False
    min_window = 1
    _stab_pad = 4

    @property
    def two_sided(self) -> bool:
        return self.kind in ("so", "sp")

    def index_ok(self, i: int) -> bool:
        if self.two_sided:
            return i != 0
        return i >= 1

    def index_of_rank(self, k: int) -> int:
        """The k-th positive index, counting from k = 1."""
        return k

    def index_list(self, n: int) -> list:
        out = [i for i in range(1, n + 1) if self.index_ok(i)]
        if self.two_sided:
            out = [-i for i in reversed(out)] + out
        return out

    def _check(self, i: int) -> None:
        if not self.index_ok(i):
            raise DualSystemError("index outside the index set")

    def line(self, i: int) -> Vec:
        raise NotImplementedError

    def dual_line(self, i: int) -> Vec:
        if self.two_sided:
            return self.line(-i)
        raise NotImplementedError

    def support_bound(self, i: int) -> int:
        raise NotImplementedError

    def stab_index(self, w: Window) -> int:
        """Index magnitude past which window restrictions only repeat."""
        return w.n + self._stab_pad

    def ambient_window(self, n: int) -> Window:
        if self.kind == "so":
            return Window("so", n, include_zero=self.ambient_zero)
        return Window(self.kind, n)

    def declared_complement(self):
        return None

    def carriers(self):
        return None

    def validate(self, N: int) -> None:
        """Check the duality normalization for all index pairs up to N."""
        idx = self.index_list(N)
        for i in idx:
            for j in idx:
                if self.two_sided:
                    got = pair(self.kind, self.line(i), self.line(j))
                    if j == -i:
                        want = ONE if (self.kind == "so" or i > 0) else MINUS_ONE
                    else:
                        want = ZERO
                else:
                    got = pair(self.kind, self.line(i), self.dual_line(j))
                    want = ONE if i == j else ZERO
                if got != want:
                    raise DualSystemError(
                        "duality failed at (%d, %d): got %s" % (i, j, got)
                    )


class DualBases(DualSystem):
    """Coordinate lines with their coordinate duals."""

    catalog = "dual-bases"
    min_window = 1
    _stab_pad = 2

    def __init__(self, kind: str, ambient_zero: bool = False):
        if kind not in KINDS:
            raise DualSystemError("unknown kind: %r" % (kind,))
        if ambient_zero and kind != "so":
            raise DualSystemError("ambient zero coordinate only exists for kind so")
        self.kind = kind
        self.ambient_zero = bool(ambient_zero)
        self.params = {"ambient_zero": self.ambient_zero}

    def line(self, i):
        self._check(i)
        return Vec.basis(i)

    def dual_line(self, i):
        self._check(i)
        return Vec.basis(-i) if self.two_sided else Vec.basis(i)

    def support_bound(self, i):
        return abs(i)

    def declared_complement(self):
        if self.kind == "so" and self.ambient_zero:
            lam = TwoSidedEPSeq(_zero_seq(), _zero_seq())
            return ComplementDatum("so", 1, 1, ((ONE,),), lam)
        return zero_datum(self.kind)

    def carriers(self):
        if self.kind == "so" and self.ambient_zero:
            return {1: Vec.basis(0)}, None
        return {}, (None if self.two_sided else {})


class ShiftPattern(DualSystem):
    """Shifted coordinate lines with a recurring anchor coefficient.

    anchor "dual":  v_i = e_{i+1},            v^i = c_i e^1 + e^{i+1}
    anchor "line":  v_i = c_i e_1 + e_{i+1},  v^i = e^{i+1}

    with c_i = 1 throughout (coeff "one") or c_i = i mod 2 (coeff "parity").
    """

    catalog = "shift-pattern"
    min_window = 2
    _stab_pad = 4

    def __init__(self, kind: str, anchor: str, coeff: str):
        if kind not in ("gl", "sl"):
            raise DualSystemError("shift patterns are defined for gl and sl only")
        if anchor not in ("dual", "line"):
            raise DualSystemError("anchor must be 'dual' or 'line'")
        if coeff not in ("one", "parity"):
            raise DualSystemError("coeff must be 'one' or 'parity'")
        self.kind = kind
        self.anchor = anchor
        self.coeff = coeff
        self.params = {"anchor": anchor, "coeff": coeff}

    def _c(self, i):
        return ONE if self.coeff == "one" else _parity(i)

    def line(self, i):
        self._check(i)
        v = Vec.basis(i + 1)
        if self.anchor == "line" and self._c(i):
            v = self._c(i) * Vec.basis(1) + v
        return v

    def dual_line(self, i):
        self._check(i)
        v = Vec.basis(i + 1)
        if self.anchor == "dual" and self._c(i):
            v = self._c(i) * Vec.basis(1) + v
        return v

    def support_bound(self, i):
        return i + 1

    def _coeff_seq(self):
        if self.coeff == "one":
            return EPSeq(period=(Vec.basis(1),))
        return EPSeq(period=(Vec.basis(1), Vec()))

    def declared_complement(self):
        if self.anchor == "dual":
            return ComplementDatum(
                self.kind, 1, 1, ((ONE,),), self._coeff_seq(), _zero_seq()
            )
        return ComplementDatum(
            self.kind, 1, 1, ((ONE,),), _zero_seq(), self._coeff_seq()
        )

    def carriers(self):
        return {1: Vec.basis(1)}, {1: Vec.basis(1)}


class CumulativeSum(DualSystem):
    """Telescoping lines paired with growing partial sums.

    side "dual", variant "full":   v_i = e_i - e_{i+1},  v^i = e^1 + ... + e^i.
    side "dual", variant "parity": v_i = e_i - (i mod 2) e_{i+2} and v^i picks
    up the preceding odd coordinates instead of all of them.  side "line"
    transposes each variant.
    """

    catalog = "cumulative-sum"

    def __init__(self, kind: str, side: str, variant: str):
        if kind not in ("gl", "sl"):
            raise DualSystemError("cumulative sums are defined for gl and sl only")
        if side not in ("dual", "line"):
            raise DualSystemError("side must be 'dual' or 'line'")
        if variant not in ("full", "parity"):
            raise DualSystemError("variant must be 'full' or 'parity'")
        self.kind = kind
        self.side = side
        self.variant = variant
        self.params = {"side": side, "variant": variant}
        self.min_window = 2 if variant == "full" else 3
        self._stab_pad = 3 if variant == "full" else 6

    def _diff(self, i):
        if self.variant == "full":
            return Vec.basis(i) + MINUS_ONE * Vec.basis(i + 1)
        v = Vec.basis(i)
        if i % 2:
            v = v + MINUS_ONE * Vec.basis(i + 2)
        return v

    def _csum(self, i):
        if self.variant == "full":
            return Vec({k: ONE for k in range(1, i + 1)})
        v = Vec.basis(i)
        if i % 2:
            for k in range(1, (i - 1) // 2 + 1):
                v = v + Vec.basis(2 * k - 1)
        return v

    def line(self, i):
        self._check(i)
        return self._diff(i) if self.side == "dual" else self._csum(i)

    def dual_line(self, i):
        self._check(i)
        return self._csum(i) if self.side == "dual" else self._diff(i)

    def support_bound(self, i):
        if self.variant == "full":
            return i + 1
        # even parity rows have no telescoping tail
        return i + 2 if i % 2 else i

    def _coeff_seq(self):
        if self.variant == "full":
            return EPSeq(period=(Vec.basis(1),))
        return EPSeq(period=(Vec.basis(1), Vec()))

    def declared_complement(self):
        if self.side == "dual":
            return ComplementDatum(self.kind, 1, 0, ((),), self._coeff_seq(), _zero_seq())
        return ComplementDatum(self.kind, 0, 1, (), _zero_seq(), self._coeff_seq())

    def carriers(self):
        if self.side == "dual":
            return {1: Vec.basis(1)}, {}
        return {}, {1: Vec.basis(1)}


class WorkedExample(DualSystem):
    """Hand-built showcase systems addressed by a stable identifier.

    "so-nonabelian-odd": lines e_i + e_1 and e_{-i} + e_{-2} for i >= 3,
    whose window centralizers pick up a nonabelian wedge block.

    "coefficient-twist": gl lines b_i e_1 + e_{i+2} with duals
    a_i e^2 + e^{i+2}, for prescribed recurring coefficient sequences.
    """

    catalog = "worked-example"

    def __init__(self, example_id: str, a: EPSeq = None, b: EPSeq = None):
        if example_id == "so-nonabelian-odd":
            if a is not None or b is not None:
                raise DualSystemError("so-nonabelian-odd takes no coefficients")
            self.kind = "so"
            self.ambient_zero = True
            self.min_window = 3
            self._stab_pad = 3
        elif example_id == "coefficient-twist":
            self.kind = "gl"
            a = a if a is not None else EPSeq(period=(ONE,))
            b = b if b is not None else EPSeq(period=(ONE,))
            for seq in (a, b):
                if not all(isinstance(v, Scalar) for v in seq.prefix + seq.period):
                    raise DualSystemError("coefficient sequences must hold scalars")
            self.min_window = 3
            self._stab_pad = (
                2
                + math.lcm(a.period_len, b.period_len)
                + max(a.bound, b.bound)
            )
        else:
            raise DualSystemError("unknown example id: %r" % (example_id,))
        self.example_id = example_id
        self.a = a
        self.b = b
        self.params = {"id": example_id}

    def index_ok(self, i):
        if self.example_id == "so-nonabelian-odd":
            return abs(i) >= 3
        return i >= 1

    def index_of_rank(self, k):
        if self.example_id == "so-nonabelian-odd":
            return k + 2
        return k

    def line(self, i):
        self._check(i)
        if self.example_id == "so-nonabelian-odd":
            anchor = Vec.basis(1) if i > 0 else Vec.basis(-2)
            return Vec.basis(i) + anchor
        v = Vec.basis(i + 2)
        bi = self.b.entry(i)
        if bi:
            v = v + bi * Vec.basis(1)
        return v

    def dual_line(self, i):
        if self.example_id == "so-nonabelian-odd":
            return self.line(-i)
        self._check(i)
        v = Vec.basis(i + 2)
        ai = self.a.entry(i)
        if ai:
            v = v + ai * Vec.basis(2)
        return v

    def support_bound(self, i):
        if self.example_id == "so-nonabelian-odd":
            return abs(i)
        return i + 2

    def declared_complement(self):
        if self.example_id == "so-nonabelian-odd":
            omega = [[ZERO] * 5 for _ in range(5)]
            omega[0][0] = ONE
            omega[1][4] = ONE
            omega[4][1] = ONE
            omega[2][3] = ONE
            omega[3][2] = ONE
            lam = TwoSidedEPSeq(
                EPSeq(period=(Vec.basis(5),)), EPSeq(period=(Vec.basis(4),))
            )
            return ComplementDatum("so", 5, 5, tuple(map(tuple, omega)), lam)
        omega = ((ONE, ZERO), (ZERO, ONE))
        lam = self.a.map(lambda v: Vec({2: v}) if v else Vec())
        mu = self.b.map(lambda v: Vec({1: v}) if v else Vec())
        return ComplementDatum("gl", 2, 2, omega, lam, mu)

    def carriers(self):
        if self.example_id == "so-nonabelian-odd":
            x_map = {
                1: Vec.basis(0),
                2: Vec.basis(1),
                3: Vec.basis(-2),
                4: Vec.basis(2),
                5: Vec.basis(-1),
            }
            return x_map, None
        return {1: Vec.basis(1), 2: Vec.basis(2)}, {1: Vec.basis(1), 2: Vec.basis(2)}


def _single_coordinate(cov: Vec):
    items = [(k, v) for k, v in cov.c.items() if v]
    if not items:
        return None
    if len(items) > 1:
        raise ComplementError(
            "no catalog realization: covector is not supported on a single coordinate"
        )
    return items[0]


class _GLPlan:
    """Coordinates for realizing a gl/sl complement datum as explicit lines.

    Every coordinate of the datum becomes a carrier vector built from
    reserved slots 1..C; index i of the system owns the fresh slot C + i.
    Recurring functionals paired through omega lean on their partner's
    slot, unpaired ones telescope through cumulative chains.
    """

    def __init__(self, datum: ComplementDatum):
        lam, mu = datum.lambdas, datum.mus
        if lam.prefix or mu.prefix:
            raise ComplementError("no catalog realization: prefix entries present")
        self.P = math.lcm(lam.period_len, mu.period_len)
        self.lam_at = [None] + [
            _single_coordinate(lam.entry(r)) for r in range(1, self.P + 1)
        ]
        self.mu_at = [None] + [
            _single_coordinate(mu.entry(r)) for r in range(1, self.P + 1)
        ]
        active_x = {e[0] for e in self.lam_at[1:] if e}
        active_y = {e[0] for e in self.mu_at[1:] if e}

        typ1 = []
        typ2 = {}
        typ3 = {}
        seen_x = {}
        seen_y = {}
        for i in range(1, datum.X_dim + 1):
            for j in range(1, datum.Y_dim + 1):
                c = datum.omega_entry(i, j)
                if not c:
                    continue
                xa, ya = i in active_x, j in active_y
                if xa and ya:
                    raise ComplementError(
                        "no catalog realization: pairing couples two functional streams"
                    )
                seen_x[i] = seen_x.get(i, 0) + 1
                seen_y[j] = seen_y.get(j, 0) + 1
                if not xa and not ya:
                    typ1.append((i, j, c))
                elif ya:
                    typ2[j] = (i, c)
                else:
                    typ3[i] = (j, c)
        if any(v > 1 for v in seen_x.values()) or any(v > 1 for v in seen_y.values()):
            raise ComplementError("no catalog realization: pairing is not a matching")

        self.chain_x = {}
        self.chain_y = {}
        stream_x = sorted(c for c in active_x if c not in typ3)
        stream_y = sorted(c for c in active_y if c not in typ2)
        for r in range(1, self.P + 1):
            le, me = self.lam_at[r], self.mu_at[r]
            if le and me and le[0] in stream_x and me[0] in stream_y:
                raise ComplementError(
                    "no catalog realization: conflicting unpaired streams"
                )

        self.x_map = {}
        self.y_map = {}
        self.lean_lam = {}
        self.lean_mu = {}
        s = 0
        for i, j, c in sorted(typ1):
            s += 1
            self.x_map[i] = Vec.basis(s)
            self.y_map[j] = c * Vec.basis(s)
        for j in sorted(typ2, key=lambda j: typ2[j][0]):
            i, c = typ2[j]
            s += 1
            self.x_map[i] = Vec.basis(s)
            self.y_map[j] = c * Vec.basis(s)
            self.lean_mu[j] = (s, c)
        for i in sorted(typ3, key=lambda i: typ3[i][0]):
            j, c = typ3[i]
            s += 1
            self.y_map[j] = Vec.basis(s)
            self.x_map[i] = c * Vec.basis(s)
            self.lean_lam[i] = (s, c)
        for x in stream_x:
            s += 1
            self.x_map[x] = Vec.basis(s)
            self.chain_x[x] = s
        for y in stream_y:
            s += 1
            self.y_map[y] = Vec.basis(s)
            self.chain_y[y] = s
        self.C = s
        self.use_zero = False

    def _positions(self, side, coord, upto):
        at = self.lam_at if side == "x" else self.mu_at
        out = []
        for i in range(1, upto + 1):
            e = at[(i - 1) % self.P + 1]
            if e and e[0] == coord:
                out.append(i)
        return out

    def line(self, i):
        le = self.lam_at[(i - 1) % self.P + 1]
        me = self.mu_at[(i - 1) % self.P + 1]
        fresh = self.C + i
        if me and me[0] in self.chain_y:
            coord, b = me
            pos = self._positions("y", coord, i)
            slots = [self.chain_y[coord]] + [self.C + p for p in pos[:-1]]
            v = Vec()
            for t in slots:
                v = v + b * Vec.basis(t)
            return v
        v = Vec()
        if me:
            t, c = self.lean_mu[me[0]]
            v = v + (me[1] / c) * Vec.basis(t)
        if le and le[0] in self.chain_x:
            coord, a = le
            pos = self._positions("x", coord, i)
            prev = self.chain_x[coord] if len(pos) == 1 else self.C + pos[-2]
            v = v + (ONE / a) * Vec.basis(prev) + (MINUS_ONE / a) * Vec.basis(fresh)
        else:
            v = v + Vec.basis(fresh)
        return v

    def dual_line(self, i):
        le = self.lam_at[(i - 1) % self.P + 1]
        me = self.mu_at[(i - 1) % self.P + 1]
        fresh = self.C + i
        if le and le[0] in self.chain_x:
            coord, a = le
            pos = self._positions("x", coord, i)
            slots = [self.chain_x[coord]] + [self.C + p for p in pos[:-1]]
            v = Vec()
            for t in slots:
                v = v + a * Vec.basis(t)
            return v
        v = Vec()
        if le:
            t, c = self.lean_lam[le[0]]
            v = v + (le[1] / c) * Vec.basis(t)
        if me and me[0] in self.chain_y:
            coord, b = me
            pos = self._positions("y", coord, i)
            prev = self.chain_y[coord] if len(pos) == 1 else self.C + pos[-2]
            v = v + (ONE / b) * Vec.basis(prev) + (MINUS_ONE / b) * Vec.basis(fresh)
        else:
            v = v + Vec.basis(fresh)
        return v


class _TwoSidedPlan:
    """Realization coordinates for an so/sp complement datum.

    Carriers occupy the symmetric axes 1..C (plus the zero coordinate when
    an odd number of unit norms remains); index i of the system owns the
    fresh coordinates +-(C + |i|).
    """

    def __init__(self, datum: ComplementDatum):
        kind = datum.kind
        self.kind = kind
        lam = datum.lambdas
        if lam.pos.prefix or lam.neg.prefix:
            raise ComplementError("no catalog realization: prefix entries present")
        self.P = math.lcm(lam.pos.period_len, lam.neg.period_len)
        self.pos_at = [None] + [
            _single_coordinate(lam.pos.entry(r)) for r in range(1, self.P + 1)
        ]
        self.neg_at = [None] + [
            _single_coordinate(lam.neg.entry(r)) for r in range(1, self.P + 1)
        ]
        active = {e[0] for e in self.pos_at[1:] if e}
        active |= {e[0] for e in self.neg_at[1:] if e}

        normed = []
        hyper = []
        typ2 = {}
        seen = {}
        for i in range(1, datum.X_dim + 1):
            for j in range(i, datum.X_dim + 1):
                c = datum.omega_entry(i, j)
                if not c:
                    continue
                ia, ja = i in active, j in active
                if ia and ja:
                    raise ComplementError(
                        "no catalog realization: pairing couples two functional streams"
                    )
                seen[i] = seen.get(i, 0) + 1
                if i != j:
                    seen[j] = seen.get(j, 0) + 1
                if i == j:
                    if c != ONE:
                        raise ComplementError(
                            "no catalog realization: unsupported norm value"
                        )
                    normed.append(i)
                elif not ia and not ja:
                    hyper.append((i, j, c))
                elif ja:
                    typ2[j] = (i, datum.omega_entry(i, j))
                else:
                    typ2[i] = (j, datum.omega_entry(j, i))
        if any(v > 1 for v in seen.values()):
            raise ComplementError("no catalog realization: pairing is not a matching")

        # unpaired recurring functionals telescope through one-branch chains;
        # two chains meeting at one phase would fight over a fresh coordinate
        self.chain = {}
        streams = sorted(c for c in active if c not in typ2)
        for coord in streams:
            in_pos = any(e and e[0] == coord for e in self.pos_at[1:])
            in_neg = any(e and e[0] == coord for e in self.neg_at[1:])
            if in_pos and in_neg:
                raise ComplementError(
                    "no catalog realization: conflicting unpaired streams"
                )
            self.chain[coord] = "pos" if in_pos else "neg"
        for r in range(1, self.P + 1):
            pe, ne = self.pos_at[r], self.neg_at[r]
            if pe and ne and pe[0] in self.chain and ne[0] in self.chain:
                raise ComplementError(
                    "no catalog realization: conflicting unpaired streams"
                )

        self.x_map = {}
        self.lean = {}
        w = 0
        for k in range(0, len(normed) - 1, 2):
            n1, n2 = normed[k], normed[k + 1]
            w += 1
            self.x_map[n1] = Vec.basis(w) + HALF * Vec.basis(-w)
            self.x_map[n2] = I * Vec.basis(w) + (MINUS_ONE * I * HALF) * Vec.basis(-w)
        self.use_zero = bool(len(normed) % 2)
        if self.use_zero:
            self.x_map[normed[-1]] = Vec.basis(0)
        for i, j, c in sorted(hyper):
            w += 1
            self.x_map[i] = Vec.basis(w)
            self.x_map[j] = c * Vec.basis(-w)
        for a in sorted(typ2):
            p, c = typ2[a]
            w += 1
            self.x_map[p] = Vec.basis(w)
            self.x_map[a] = c * Vec.basis(-w)
            self.lean[a] = (w, c)
        self.chain_axis = {}
        for coord in streams:
            w += 1
            self.chain_axis[coord] = w
            eps = 1 if self.chain[coord] == "pos" else -1
            q = pair(kind, Vec.basis(-eps * w), Vec.basis(eps * w))
            self.x_map[coord] = (ONE / q) * Vec.basis(-eps * w)
        self.C = w

    def _positions(self, branch, coord, upto):
        at = self.pos_at if branch == "pos" else self.neg_at
        out = []
        for i in range(1, upto + 1):
            e = at[(i - 1) % self.P + 1]
            if e and e[0] == coord:
                out.append(i)
        return out

    def _chain_slots(self, coord, pos_list):
        return [self.chain_axis[coord]] + [self.C + p for p in pos_list[:-1]]

    def line(self, i):
        branch = "pos" if i > 0 else "neg"
        k = abs(i)
        sign = 1 if i > 0 else -1
        r = (k - 1) % self.P + 1
        e = (self.pos_at if i > 0 else self.neg_at)[r]
        leans = Vec()
        if e and e[0] in self.lean:
            coord, a = e
            wax, c = self.lean[coord]
            back = pair(self.kind, Vec.basis(-wax), Vec.basis(wax))
            leans = leans + (a / (c * back)) * Vec.basis(wax)
        if e and e[0] in self.chain:
            # cumulative rows live on the branch carrying the stream
            coord, a = e
            pos = self._positions(branch, coord, k)
            v = leans
            for t in self._chain_slots(coord, pos):
                v = v + a * Vec.basis(sign * t)
            return v
        # the opposite branch of a chain telescopes through differences
        oe = (self.neg_at if i > 0 else self.pos_at)[r]
        if oe and oe[0] in self.chain:
            coord, a = oe
            opp = "neg" if branch == "pos" else "pos"
            pos = self._positions(opp, coord, k)
            prev = self.chain_axis[coord] if len(pos) == 1 else self.C + pos[-2]
            return (
                leans
                + (ONE / a) * Vec.basis(sign * prev)
                + (MINUS_ONE / a) * Vec.basis(sign * (self.C + k))
            )
        return leans + Vec.basis(sign * (self.C + k))


class NormalFormSystem(DualSystem):
    """Explicit dual system realizing a complement datum."""

    catalog = "normal-form"

    def __init__(self, datum: ComplementDatum):
        self.kind = datum.kind
        self.datum = datum
        if datum.two_sided:
            self._plan = _TwoSidedPlan(datum)
        else:
            self._plan = _GLPlan(datum)
        self.ambient_zero = self._plan.use_zero
        self.min_window = self._plan.C + 1
        self._stab_pad = self._plan.C + self._plan.P + 3
        self.params = {"datum": datum}

    def line(self, i):
        self._check(i)
        return self._plan.line(i)

    def dual_line(self, i):
        self._check(i)
        if self.two_sided:
            return self._plan.line(-i)
        return self._plan.dual_line(i)

    def support_bound(self, i):
        return self._plan.C + abs(i)

    def declared_complement(self):
        return self.datum

    def carriers(self):
        if self.two_sided:
            return dict(self._plan.x_map), None
        return dict(self._plan.x_map), dict(self._plan.y_map)


def _verify_realization(system: NormalFormSystem) -> None:
    datum = system.datum
    plan = system._plan
    N = plan.C + 2 * plan.P + 3
    system.validate(N)
    x_map, y_map = system.carriers()
    kind = system.kind
    if not system.two_sided:
        for i in range(1, datum.X_dim + 1):
            for j in range(1, datum.Y_dim + 1):
                if pair(kind, x_map[i], y_map[j]) != datum.omega_entry(i, j):
                    raise ComplementError("realization verification failed: omega")
        for r in range(1, N + 1):
            lam = datum.lambdas.entry(r)
            mu = datum.mus.entry(r)
            for i in range(1, datum.X_dim + 1):
                if pair(kind, x_map[i], system.dual_line(r)) != lam.c.get(i, ZERO):
                    raise ComplementError("realization verification failed: lambda")
            for j in range(1, datum.Y_dim + 1):
                if pair(kind, system.line(r), y_map[j]) != mu.c.get(j, ZERO):
                    raise ComplementError("realization verification failed: mu")
        # chains release their fresh coordinate one period late, so coverage
        # is only demanded up to a two-period tail margin
        cover = plan.C + N - 2 * plan.P
        space = Subspace(
            [x_map[i].c for i in range(1, datum.X_dim + 1)]
            + [system.line(r).c for r in range(1, N + 1)]
        )
        if space.dim != datum.X_dim + N or not all(
            space.contains({k: ONE}) for k in range(1, cover + 1)
        ):
            raise ComplementError(
                "realization verification failed: lines and carriers do not span"
            )
        space = Subspace(
            [y_map[j].c for j in range(1, datum.Y_dim + 1)]
            + [system.dual_line(r).c for r in range(1, N + 1)]
        )
        if space.dim != datum.Y_dim + N or not all(
            space.contains({k: ONE}) for k in range(1, cover + 1)
        ):
            raise ComplementError(
                "realization verification failed: dual lines and carriers do not span"
            )
        return
    for i in range(1, datum.X_dim + 1):
        for j in range(1, datum.X_dim + 1):
            if pair(kind, x_map[i], x_map[j]) != datum.omega_entry(i, j):
                raise ComplementError("realization verification failed: omega")
    for r in range(1, N + 1):
        for idx, branch in ((r, "pos"), (-r, "neg")):
            lam = getattr(datum.lambdas, branch).entry(r)
            for i in range(1, datum.X_dim + 1):
                if pair(kind, x_map[i], system.line(idx)) != lam.c.get(i, ZERO):
                    raise ComplementError("realization verification failed: lambda")
    rows = [x_map[i].c for i in range(1, datum.X_dim + 1)]
    rows += [system.line(r).c for r in range(1, N + 1)]
    rows += [system.line(-r).c for r in range(1, N + 1)]
    space = Subspace(rows)
    cover = plan.C + N - 2 * plan.P
    coords = [s * k for k in range(1, cover + 1) for s in (1, -1)]
    if plan.use_zero:
        coords.append(0)
    if space.dim != datum.X_dim + 2 * N or not all(
        space.contains({k: ONE}) for k in coords
    ):
        raise ComplementError(
            "realization verification failed: lines and carriers do not span"
        )


def system_from_datum(datum: ComplementDatum) -> NormalFormSystem:
    """Realize a complement datum as an explicit dual system.

    The datum must be nondegenerate, purely recurring, and adapted: each
    recurring functional is a scalar multiple of a coordinate covector and
    the pairing matches coordinates one to one.
    """
    if not is_nondegenerate(datum):
        raise ComplementError("degenerate datum")
    system = NormalFormSystem(datum)
    _verify_realization(system)
    return system


def datum_from_system(system: DualSystem) -> ComplementDatum:
    """The complement datum a catalog system declares for its lines."""
    d = system.declared_complement()
    if d is None:
        raise DualSystemError("no declared complement")
    return d


def toral_generators(system: DualSystem, i: int) -> LieElement:
    """The rank-one (gl, so, sp) or difference (sl) generator at index i."""
    kind = system.kind
    if kind == "gl":
        system._check(i)
        return LieElement.outer(system.line(i), system.dual_line(i))
    if kind == "sl":
        system._check(i)
        system._check(i + 1)
        g1 = LieElement.outer(system.line(i), system.dual_line(i))
        g2 = LieElement.outer(system.line(i + 1), system.dual_line(i + 1))
        return LieElement("gl", combine({0: ONE, 1: MINUS_ONE}, [g1.c, g2.c]))
    if i <= 0 or not system.index_ok(i):
        raise DualSystemError("index outside the index set")
    if kind == "so":
        return LieElement.wedge(system.line(i), system.line(-i))
    return LieElement.sym(system.line(i), system.line(-i))


def torus_basis_at(system: DualSystem, w: Window) -> list:
    """Generators of the truncated torus supported inside the window."""
    if w.n < system.min_window:
        raise DualSystemError("window too small")
    kind = system.kind
    pos = [i for i in system.index_list(w.n) if i > 0]
    if kind in ("so", "sp"):
        fit = [
            i
            for i in pos
            if max(system.support_bound(i), system.support_bound(-i)) <= w.n
        ]
        return [toral_generators(system, i) for i in fit]
    fit = [i for i in pos if system.support_bound(i) <= w.n]
    if kind == "gl":
        return [toral_generators(system, i) for i in fit]
    return [
        toral_generators(system, i)
        for i, j in zip(fit, fit[1:])
        if j == i + 1 and system.support_bound(j) <= w.n
    ]


def _window_perp(system: DualSystem, w: Window, side: str) -> list:
    coords = list(w.indices)
    eqs = []
    for i in system.index_list(system.stab_index(w)):
        if not system.two_sided and side == "dual":
            vec = system.dual_line(i)
        else:
            vec = system.line(i)
        row = {}
        if system.two_sided:
            for j, c in vec.c.items():
                k = -j
                if k in w:
                    row[k] = c * pair(system.kind, Vec.basis(k), Vec.basis(j))
        else:
            for k, c in vec.c.items():
                if k in w:
                    row[k] = c
        if row:
            eqs.append(row)
    return kernel_basis(eqs, coords)


def _trace(row) -> Scalar:
    t = ZERO
    for (i, j), v in row.items():
        if i == j:
            t = t + v
    return t


def _complement_blocks(system: DualSystem, w: Window) -> list:
    kind = system.kind
    if kind in ("gl", "sl"):
        A = _window_perp(system, w, "dual")
        B = _window_perp(system, w, "line")
        rows = [LieElement.outer(Vec(a), Vec(b)).c for a in A for b in B]
        if kind == "sl" and any(_trace(r) for r in rows):
            rows = Subspace(rows).cut_by(_trace).basis()
        return rows
    A = _window_perp(system, w, "line")
    vs = [Vec(a) for a in A]
    rows = []
    if kind == "so":
        for r in range(len(vs)):
            for s in range(r + 1, len(vs)):
                rows.append(LieElement.wedge(vs[r], vs[s]).c)
    else:
        for r in range(len(vs)):
            for s in range(r, len(vs)):
                rows.append(LieElement.sym(vs[r], vs[s]).c)
    return [r for r in rows if r]


def cartan_basis_at(system: DualSystem, w: Window) -> Subspace:
    """The predicted self-normalizing subalgebra inside the window.

    Torus generators plus the block built on the window perp of the lines:
    a full matrix corner for gl/sl, a wedge (so) or symmetric (sp) square.
    """
    rows = [g.c for g in torus_basis_at(system, w)]
    rows += _complement_blocks(system, w)
    return Subspace(rows)


def is_splitting_at(system: DualSystem, w: Window) -> bool:
    """Do the truncated lines span the window, up to the so center line?"""
    idx = [i for i in system.index_list(w.n) if system.support_bound(i) <= w.n]
    codim = w.dim - Subspace([system.line(i).c for i in idx]).dim
    if system.kind == "so":
        ok = codim <= 1
    else:
        ok = codim == 0
    if ok and system.kind in ("gl", "sl"):
        codim = w.dim - Subspace([system.dual_line(i).c for i in idx]).dim
        ok = codim == 0
    return ok


def _restrict_rows(rows: list, w: Window) -> Subspace:
    def inside(key):
        return key[0] in w and key[1] in w

    outside = sorted({k for r in rows for k in r if not inside(k)})
    eqs = []
    for k in outside:
        eq = {t: rows[t][k] for t in range(len(rows)) if k in rows[t]}
        eqs.append(eq)
    coeffs = kernel_basis(eqs, list(range(len(rows))))
    return Subspace([combine(c, rows) for c in coeffs])


def centralizer_of_torus_at(system: DualSystem, w: Window, max_rounds: int = 8) -> Subspace:
    """Stable window restriction of the centralizer of the growing torus.

    Computes the centralizer of the truncated torus in progressively larger
    windows, restricts to elements supported in w, and returns the first
    repeated value.  Tail vectors that a single window admits by accident
    die once the torus grows past them.
    """
    prev = None
    for pad in range(1, max_rounds + 1):
        W = system.ambient_window(w.n + pad)
        gens = torus_basis_at(system, W)
        cent = centralizer_basis(gens, system.kind, W)
        sub = _restrict_rows([e.c for e in cent], w)
        if prev is not None and sub == prev:
            return sub
        prev = sub
    raise DualSystemError("window too small")


def stable_oracle_restriction(system: DualSystem, w: Window, op, max_rounds: int = 8) -> Subspace:
    """Stable window restriction of an operator applied to the growing Cartan.

    op(elements, kind, window) -> list of LieElements.  The operator is fed
    the Cartan truncation of progressively larger windows; its output is
    restricted to w until the value repeats.  The same boundary-effect
    suppression as centralizer_of_torus_at, for normalizers and generalized
    zero spaces.
    """
    fam = family(system.kind)
    prev = None
    for pad in range(1, max_rounds + 1):
        W = system.ambient_window(w.n + pad)
        h = centralizer_of_torus_at(system, W)
        elems = [LieElement(fam, dict(row)) for row in h.basis()]
        out = op(elems, system.kind, W)
        sub = _restrict_rows([e.c for e in out], w)
        if prev is not None and sub == prev:
            return sub
        prev = sub
    raise DualSystemError("window too small")


def maximality_search(system: DualSystem, w: Window):
    """Search the predicted centralizer for a semisimple element outside the torus.

    Returns a witness LieElement if one exists among the complement block
    basis and pairwise sums, else None.  A None return together with the
    datum-level maximality test is the expected evidence of maximality.
    """
    from .oracle import is_semisimple

    torus = Subspace([g.c for g in torus_basis_at(system, w)])
    blocks = _complement_blocks(system, w)
    fam = "gl" if system.kind in ("gl", "sl") else system.kind
    pool = [LieElement(fam, dict(r)) for r in blocks]
    for r in range(len(blocks)):
        for s in range(r + 1, len(blocks)):
            pool.append(
                LieElement(fam, combine({0: ONE, 1: ONE}, [blocks[r], blocks[s]]))
            )
    for cand in pool:
        if not cand.c or torus.contains(cand.c):
            continue
        if is_semisimple(cand, w):
            return cand
    return None


def build_corollary_class_representatives(kind: str, invariants: tuple) -> list:
    """Catalog systems realizing a finite equivalence class of invariants.

    Returns one system per class; tuples with two classes are told apart by
    whether the recurring coefficient vanishes infinitely often.
    """
    key = (kind, tuple(invariants))
    if kind in ("gl", "sl"):
        table = {
            (0, 0, 0, 0, 0): [DualBases(kind)],
            (0, 0, 0, 1, 0): [
                CumulativeSum(kind, "dual", "full"),
                CumulativeSum(kind, "dual", "parity"),
            ],
            (0, 0, 0, 0, 1): [
                CumulativeSum(kind, "line", "full"),
                CumulativeSum(kind, "line", "parity"),
            ],
            (0, 0, 1, 1, 0): [
                ShiftPattern(kind, "dual", "one"),
                ShiftPattern(kind, "dual", "parity"),
            ],
            (0, 1, 0, 0, 1): [
                ShiftPattern(kind, "line", "one"),
                ShiftPattern(kind, "line", "parity"),
            ],
        }
        out = table.get(tuple(invariants))
    elif kind == "so":
        table = {
            (0, 0, 0): [DualBases("so", ambient_zero=False)],
            (1, 1, 0): [DualBases("so", ambient_zero=True)],
        }
        out = table.get(tuple(invariants))
    elif kind == "sp":
        out = [DualBases("sp")] if tuple(invariants) == (0, 0, 0) else None
    else:
        raise DualSystemError("unknown kind: %r" % (kind,))
    if out is None:
        raise DualSystemError("not a finite-class tuple")
    return out
