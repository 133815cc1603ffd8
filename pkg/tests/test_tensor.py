import random

import pytest

from cartankit.scalars import ONE, ZERO, sc
from cartankit.tensor import (
    LieElement,
    Vec,
    Window,
    dual_pair,
    family,
    form_pair,
    pair,
    sgn,
)

e = Vec.basis


def rand_vec(rng, kind, lo=-4, hi=4, terms=3):
    idx = [i for i in range(lo, hi + 1) if i != 0 or kind == "so"]
    if family(kind) == "gl":
        idx = [i for i in idx if i >= 1]
    return Vec({i: sc(rng.randint(-3, 3)) for i in rng.sample(idx, terms)})


def rand_elem(rng, fam):
    if fam == "gl":
        return LieElement(
            "gl",
            {
                (rng.randint(1, 5), rng.randint(1, 5)): sc(rng.randint(-3, 3))
                for _ in range(4)
            },
        )
    if fam == "so":
        return LieElement.wedge(rand_vec(rng, "so"), rand_vec(rng, "so")) + (
            LieElement.wedge(rand_vec(rng, "so"), rand_vec(rng, "so"))
        )
    return LieElement.sym(rand_vec(rng, "sp"), rand_vec(rng, "sp")) + (
        LieElement.sym(rand_vec(rng, "sp"), rand_vec(rng, "sp"))
    )


def test_rank_one_product_rule():
    # (v (x) w)(v' (x) w') = <v', w> v (x) w'
    rng = random.Random(11)
    for _ in range(100):
        v, w = rand_vec(rng, "gl"), rand_vec(rng, "gl")
        vp, wp = rand_vec(rng, "gl"), rand_vec(rng, "gl")
        got = LieElement.from_full(
            "gl", LieElement.outer(v, w).assoc_product(LieElement.outer(vp, wp))
        )
        assert got == dual_pair(vp, w) * LieElement.outer(v, wp)


def test_wedge_action_rule():
    # (u ^ w) v = <v, w> u - <v, u> w
    rng = random.Random(12)
    for _ in range(100):
        u, w, v = (rand_vec(rng, "so") for _ in range(3))
        want = form_pair("so", v, w) * u - form_pair("so", v, u) * w
        assert LieElement.wedge(u, w).act(v) == want


def test_sym_action_rule():
    # (u & w) v = <v, w> u + <v, u> w
    rng = random.Random(13)
    for _ in range(100):
        u, w, v = (rand_vec(rng, "sp") for _ in range(3))
        want = form_pair("sp", v, w) * u + form_pair("sp", v, u) * w
        assert LieElement.sym(u, w).act(v) == want


def test_pinned_actions():
    assert LieElement.wedge(e(1), e(-1)).act(e(1)) == e(1)
    assert LieElement.wedge(e(1), e(-1)).act(e(-1)) == -e(-1)
    assert LieElement.sym(e(1), e(-1)).act(e(1)) == e(1)
    assert LieElement.sym(e(1), e(-1)).act(e(-1)) == -e(-1)
    assert LieElement.matrix_unit(2, 3).act(e(3)) == e(2)
    assert LieElement.matrix_unit(2, 3).act(e(2)) == Vec()


@pytest.mark.parametrize("fam", ["gl", "so", "sp"])
def test_bracket_antisymmetry_and_jacobi(fam):
    rng = random.Random(hash(fam) % 1000)
    for _ in range(200):
        x, y, z = (rand_elem(rng, fam) for _ in range(3))
        assert x.bracket(y) == -ONE * y.bracket(x)
        jac = (
            x.bracket(y.bracket(z))
            + y.bracket(z.bracket(x))
            + z.bracket(x.bracket(y))
        )
        assert not jac


@pytest.mark.parametrize("fam", ["gl", "so", "sp"])
def test_bracket_is_commutator_of_action(fam):
    rng = random.Random(hash(fam) % 997)
    kind = fam
    for _ in range(100):
        x, y = rand_elem(rng, fam), rand_elem(rng, fam)
        v = rand_vec(rng, kind)
        got = x.bracket(y).act(v)
        want = x.act(y.act(v)) - y.act(x.act(v))
        assert got == want


@pytest.mark.parametrize("fam", ["so", "sp"])
def test_form_invariance(fam):
    rng = random.Random(hash(fam) % 991)
    for _ in range(200):
        x = rand_elem(rng, fam)
        u, w = rand_vec(rng, fam), rand_vec(rng, fam)
        assert not (form_pair(fam, x.act(u), w) + form_pair(fam, u, x.act(w)))


def test_bracket_trace_vanishes():
    rng = random.Random(17)
    for _ in range(100):
        x, y = rand_elem(rng, "gl"), rand_elem(rng, "gl")
        assert x.bracket(y).trace() == ZERO


def test_canonical_storage():
    assert not LieElement.wedge(e(3), e(3))
    w = LieElement.wedge(e(2), e(-1))
    assert list(w.c) == [(-1, 2)]
    assert w.c[(-1, 2)] == -ONE
    s = LieElement.sym(e(2), e(2))
    assert s.c[(2, 2)] == sc(2)
    with pytest.raises(ValueError):
        LieElement("so", {(2, 1): ONE})
    with pytest.raises(ValueError):
        LieElement("so", {(1, 1): ONE})
    with pytest.raises(ValueError):
        LieElement("sp", {(2, 1): ONE})


def test_from_full_rejects_asymmetric():
    with pytest.raises(ValueError):
        LieElement.from_full("so", {(1, 2): ONE})
    with pytest.raises(ValueError):
        LieElement.from_full("sp", {(1, 2): ONE, (2, 1): -ONE})
    with pytest.raises(ValueError):
        LieElement.from_full("so", {(1, 1): ONE})


def test_index_domains():
    with pytest.raises(ValueError):
        LieElement("gl", {(0, 1): ONE})
    with pytest.raises(ValueError):
        LieElement("gl", {(-1, 2): ONE})
    with pytest.raises(ValueError):
        LieElement("sp", {(0, 1): ONE})
    LieElement("so", {(0, 1): ONE})  # 0 is a legal so index


def test_pairings():
    assert dual_pair(e(3), e(3)) == ONE
    assert dual_pair(e(3), e(4)) == ZERO
    assert form_pair("so", e(0), e(0)) == ONE
    assert form_pair("so", e(2), e(-2)) == ONE
    assert form_pair("so", e(2), e(2)) == ZERO
    assert form_pair("sp", e(1), e(-1)) == ONE
    assert form_pair("sp", e(-1), e(1)) == -ONE
    assert pair("sl", e(1), e(1)) == ONE


def test_window():
    w = Window("gl", 4)
    assert w.indices == [1, 2, 3, 4]
    assert w.dim == 4
    assert 4 in w and 5 not in w and 0 not in w
    w = Window("so", 2)
    assert w.indices == [-2, -1, 0, 1, 2]
    assert w.dim == 5
    w = Window("sp", 2)
    assert w.indices == [-2, -1, 1, 2]
    assert w.dim == 4
    assert 0 not in w
    x = LieElement.matrix_unit(1, 5)
    assert not Window("gl", 4).contains_support(x)
    assert Window("gl", 5).contains_support(x)


def test_sl_membership():
    x = LieElement.matrix_unit(1, 1) - LieElement.matrix_unit(2, 2)
    assert x.is_sl()
    assert not LieElement.matrix_unit(1, 1).is_sl()
