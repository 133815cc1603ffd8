"""Eventually periodic sequences with exact entries.

Sequences are indexed by positive integers.  An ``EPSeq`` stores a finite
prefix and a nonempty repeating block, so entry ``i`` is ``prefix[i-1]``
for ``i <= len(prefix)`` and cycles through ``period`` afterwards.
Entries can be any values supporting ``==`` and ``bool``; in practice they
are :class:`~cartankit.scalars.Scalar` values or sparse covectors.

Comparisons that ignore finitely many entries ("almost equal", "almost
zero", "almost proportional") are decided exactly by inspecting one full
common period past both prefixes.
"""

from __future__ import annotations

import math

from .scalars import Scalar, ZERO, ONE, sc, sort_key

INFINITE = float("inf")


class EPSeq:
    """One-sided eventually periodic sequence, 1-indexed."""

    __slots__ = ("prefix", "period")

    def __init__(self, prefix=(), period=()):
        prefix = tuple(prefix)
        period = tuple(period)
        if not period:
            raise ValueError("period must be nonempty")
        self.prefix = prefix
        self.period = period

    @property
    def bound(self):
        """Index after which the sequence is purely periodic."""
        return len(self.prefix)

    @property
    def period_len(self):
        return len(self.period)

    def entry(self, i):
        if i < 1:
            raise IndexError("index must be positive")
        b = len(self.prefix)
        if i <= b:
            return self.prefix[i - 1]
        return self.period[(i - b - 1) % len(self.period)]

    def map(self, f):
        return EPSeq(tuple(f(v) for v in self.prefix),
                     tuple(f(v) for v in self.period))

    def __eq__(self, other):
        if not isinstance(other, EPSeq):
            return NotImplemented
        return self.prefix == other.prefix and self.period == other.period

    def __hash__(self):
        return hash((self.prefix, self.period))

    def __repr__(self):
        return "EPSeq(prefix=%r, period=%r)" % (self.prefix, self.period)


def constant(value):
    return EPSeq((), (value,))


def merged_params(*seqs):
    """Common (bound, period length) for entrywise comparisons."""
    b = max(s.bound for s in seqs)
    ln = 1
    for s in seqs:
        ln = math.lcm(ln, s.period_len)
    return b, ln


def resample(seq, bound, period_len):
    """The same sequence re-stored with the given prefix/period split.

    ``bound`` must be >= seq.bound and ``period_len`` a multiple of
    seq.period_len, so no information is lost.
    """
    if bound < seq.bound or period_len % seq.period_len:
        raise ValueError("resample parameters must refine the stored split")
    return EPSeq(tuple(seq.entry(i) for i in range(1, bound + 1)),
                 tuple(seq.entry(i) for i in range(bound + 1, bound + period_len + 1)))


def combine(f, *seqs):
    """Entrywise combination f(s1_i, s2_i, ...) as an EPSeq."""
    b, ln = merged_params(*seqs)
    pre = tuple(f(*(s.entry(i) for s in seqs)) for i in range(1, b + 1))
    per = tuple(f(*(s.entry(i) for s in seqs)) for i in range(b + 1, b + ln + 1))
    return EPSeq(pre, per)


def almost_equal(s, t):
    """True when the sequences agree at all but finitely many indices."""
    b, ln = merged_params(s, t)
    return all(s.entry(i) == t.entry(i) for i in range(b + 1, b + ln + 1))


def disagreement_bound(s, t):
    """Last index where the sequences differ, 0 if none, None if infinite.

    A return value B means s and t agree at every index > B.
    """
    b, ln = merged_params(s, t)
    for i in range(b + 1, b + ln + 1):
        if s.entry(i) != t.entry(i):
            return None
    last = 0
    for i in range(1, b + 1):
        if s.entry(i) != t.entry(i):
            last = i
    return last


def first_disagreement(s, t):
    """Smallest index where the sequences differ, or None if equal."""
    b, ln = merged_params(s, t)
    for i in range(1, b + ln + 1):
        if s.entry(i) != t.entry(i):
            return i
    return None


def is_almost_zero(s):
    # only the repeating block matters
    return all(not v for v in s.period)


def value_multiset(s):
    """Map from entry value to multiplicity, INFINITE for recurring values."""
    out = {}
    for v in s.period:
        out[v] = INFINITE
    for v in s.prefix:
        if out.get(v) != INFINITE:
            out[v] = out.get(v, 0) + 1
    return out


def multiset_scaled(ms, c):
    return {(c * v if v else v): n for v, n in ms.items()}


def almost_proportional(s, t):
    """A scalar c with multiset(s at x) = multiset(t at c*x), or None.

    Only the infinitely recurring values constrain c: finite multiplicity
    discrepancies can always be absorbed by an index permutation.  When
    neither sequence has recurring nonzero values the choice is free and
    ONE is returned.  Candidates are tried in canonical scalar order so
    the result is deterministic.
    """
    vs = {v for v in s.period}
    vt = {v for v in t.period}
    zs = any(not v for v in vs)
    zt = any(not v for v in vt)
    if zs != zt:
        return None
    s_nz = {v for v in vs if v}
    t_nz = {v for v in vt if v}
    if not s_nz and not t_nz:
        return ONE
    if not s_nz or not t_nz:
        return None
    cands = sorted({vp / v for v in s_nz for vp in t_nz}, key=sort_key)
    for c in cands:
        if {c * v for v in s_nz} == t_nz:
            return c
    return None


class TwoSidedEPSeq:
    """Pair of EPSeq branches addressed by nonzero integers.

    ``entry(i)`` reads the positive branch for i > 0 and the negative
    branch (at position -i) for i < 0.
    """

    __slots__ = ("pos", "neg")

    def __init__(self, pos, neg):
        if not isinstance(pos, EPSeq) or not isinstance(neg, EPSeq):
            raise TypeError("branches must be EPSeq")
        self.pos = pos
        self.neg = neg

    def entry(self, i):
        if i > 0:
            return self.pos.entry(i)
        if i < 0:
            return self.neg.entry(-i)
        raise IndexError("index must be nonzero")

    def map(self, f):
        return TwoSidedEPSeq(self.pos.map(f), self.neg.map(f))

    def __eq__(self, other):
        if not isinstance(other, TwoSidedEPSeq):
            return NotImplemented
        return self.pos == other.pos and self.neg == other.neg

    def __hash__(self):
        return hash((self.pos, self.neg))

    def __repr__(self):
        return "TwoSidedEPSeq(pos=%r, neg=%r)" % (self.pos, self.neg)
