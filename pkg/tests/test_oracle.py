"""Window oracle: minimal polynomials, Jordan split, centralizers,
normalizers, central series depth, weight and zero-space computations."""

import random

import pytest

from helpers import random_element

from cartankit import oracle as O
from cartankit.linalg import Subspace
from cartankit.oracle import OracleError
from cartankit.scalars import ONE, ZERO, sc
from cartankit.tensor import LieElement, Vec, Window

E = LieElement.matrix_unit
W3 = Window("gl", 3)


def wedge(i, j):
    return LieElement.wedge(Vec.basis(i), Vec.basis(j))


def span(elts):
    return Subspace([e.c for e in elts])


# -- minimal polynomial and classification --------------------------------


def test_minimal_polynomial_pinned():
    assert O.minimal_polynomial(E(1, 1), W3) == (ZERO, -ONE, ONE)
    assert O.minimal_polynomial(E(1, 2), W3) == (ZERO, ZERO, ONE)
    assert O.minimal_polynomial(E(1, 2) + E(2, 1), Window("gl", 2)) == (
        -ONE,
        ZERO,
        ONE,
    )
    x = wedge(1, -1)
    assert O.minimal_polynomial(x, Window("so", 1)) == (ZERO, -ONE, ZERO, ONE)


def test_window_mismatch_errors():
    with pytest.raises(OracleError, match="window too small"):
        O.minimal_polynomial(E(1, 4), W3)
    with pytest.raises(OracleError, match="does not match"):
        O.action_matrix(wedge(1, -1), W3)


def test_semisimple_and_nilpotent_classification():
    # v (x) w with <v, w> = 1 satisfies x^2 = x
    x = LieElement.outer(Vec.basis(1), Vec({1: ONE, 2: ONE}))
    assert O.is_semisimple(x, W3)
    assert O.is_semisimple(E(1, 2) + E(2, 1), W3)
    assert O.is_nilpotent(E(1, 2), W3)
    assert not O.is_nilpotent(E(1, 1), W3)
    # e_1(x)(e^1 + e^2) is idempotent, hence also semisimple
    assert O.is_semisimple(E(1, 1) + E(1, 2), W3)


def test_rank_one_form_wedge_square_cube():
    # x in Wedge^2 W for W = span{e_0, e_1, e_2}: the form has rank 1 on W,
    # so x is nilpotent with cube zero but nonzero square
    x = wedge(0, 1) + wedge(0, 2)
    w = Window("so", 2)
    mp = O.minimal_polynomial(x, w)
    assert mp == (ZERO, ZERO, ZERO, ONE)
    assert O.is_nilpotent(x, w)


# -- jordan parts ---------------------------------------------------------


def test_jordan_parts_pinned():
    d = E(1, 1) + sc(2) * E(2, 2)
    s, n = O.jordan_parts(d, W3)
    assert s == d and not n.c
    u = E(1, 2) + E(1, 3)
    s, n = O.jordan_parts(u, W3)
    assert not s.c and n == u
    x = E(1, 1) + E(1, 2) + E(2, 2)
    s, n = O.jordan_parts(x, W3)
    assert s == E(1, 1) + E(2, 2)
    assert n == E(1, 2)


@pytest.mark.parametrize("kind,n", [("gl", 3), ("sl", 3), ("so", 2), ("sp", 2)])
def test_jordan_parts_random(kind, n):
    rng = random.Random(20260100 + n)
    w = Window(kind, n)
    for _ in range(40):
        x = random_element(rng, kind, w)
        s, nil = O.jordan_parts(x, w)
        assert s + nil == x
        assert not s.bracket(nil).c
        assert O.is_semisimple(s, w)
        assert O.is_nilpotent(nil, w)
        if kind == "sl":
            assert s.is_sl() and nil.is_sl()


def test_commuting_semisimple_sum_is_semisimple():
    # conjugated diagonals commute; their sum must stay semisimple
    from cartankit.linalg import mat_mul

    g = [[ONE, ONE, ZERO], [ZERO, ONE, ONE], [ZERO, ZERO, ONE]]
    ginv = [[ONE, -ONE, ONE], [ZERO, ONE, -ONE], [ZERO, ZERO, ONE]]
    d1 = [[sc(1), ZERO, ZERO], [ZERO, sc(2), ZERO], [ZERO, ZERO, sc(3)]]
    d2 = [[ZERO, ZERO, ZERO], [ZERO, sc(1), ZERO], [ZERO, ZERO, sc(1)]]
    x = O.element_from_matrix("gl", mat_mul(g, mat_mul(d1, ginv)), W3)
    y = O.element_from_matrix("gl", mat_mul(g, mat_mul(d2, ginv)), W3)
    assert not x.bracket(y).c
    assert O.is_semisimple(x, W3) and O.is_semisimple(y, W3)
    assert O.is_semisimple(x + y, W3)


# -- centralizers and normalizers -----------------------------------------


def test_centralizer_diagonal_torus():
    gens = [E(1, 1), E(2, 2), E(3, 3)]
    cz = O.centralizer_basis(gens, "gl", W3)
    assert span(cz) == span(gens)
    cz_sl = O.centralizer_basis(gens, "sl", W3)
    assert len(cz_sl) == 2
    assert all(x.is_sl() for x in cz_sl)


def test_centralizer_empty_gens_is_ambient():
    assert len(O.centralizer_basis([], "gl", W3)) == 9
    assert len(O.centralizer_basis([], "sl", W3)) == 8
    assert len(O.centralizer_basis([], "so", Window("so", 2))) == 10
    assert len(O.centralizer_basis([], "sp", Window("sp", 2))) == 10


def test_centralizer_so_single_torus_generator():
    w = Window("so", 2)
    cz = O.centralizer_basis([wedge(1, -1)], "so", w)
    expect = [wedge(-1, 1), wedge(-2, 0), wedge(-2, 2), wedge(0, 2)]
    assert span(cz) == span(expect)


@pytest.mark.parametrize("kind,n", [("gl", 2), ("so", 2), ("sp", 2)])
def test_centralizer_is_subalgebra(kind, n):
    rng = random.Random(77 + n)
    w = Window(kind, n)
    for _ in range(10):
        gens = [random_element(rng, kind, w, 2)]
        cz = O.centralizer_basis(gens, kind, w)
        sp = span(cz)
        for a in cz:
            for b in cz:
                assert sp.contains(a.bracket(b).c)


def test_normalizer_cases():
    diag = [E(1, 1), E(2, 2), E(3, 3)]
    nz = O.normalizer_basis(diag, "gl", W3)
    assert span(nz) == span(diag)
    strict = [E(1, 2), E(1, 3), E(2, 3)]
    nz = O.normalizer_basis(strict, "gl", W3)
    assert span(nz) == span(strict + diag)


# -- lower central series -------------------------------------------------


def test_lcs_depth_cases():
    assert O.lcs_depth([E(1, 1), E(2, 2)]) == 1
    assert O.lcs_depth([wedge(0, 1), wedge(0, 2), wedge(1, 2)]) == 2
    w4 = [E(i, j) for i in range(1, 5) for j in range(1, 5) if i < j]
    assert O.lcs_depth(w4) == 3
    with pytest.raises(OracleError, match="not nilpotent"):
        O.lcs_depth([E(1, 2), E(2, 1), E(1, 1) - E(2, 2)])
    with pytest.raises(OracleError, match="not a subalgebra"):
        O.lcs_depth([E(1, 2), E(2, 1)])


# -- weight decompositions ------------------------------------------------


def test_weight_decomposition_diagonal_torus():
    gens = [E(1, 1), E(2, 2), E(3, 3)]
    dec = O.weight_decomposition(gens, "gl", W3)
    weights = [wt for wt, _ in dec]
    assert weights == [
        (ZERO, ZERO, ONE),
        (ZERO, ONE, ZERO),
        (ONE, ZERO, ZERO),
    ]
    assert all(len(basis) == 1 for _, basis in dec)


def test_weight_decomposition_gaussian_spectrum():
    x = E(1, 2) - E(2, 1)
    dec = O.weight_decomposition([x], "gl", Window("gl", 2))
    weights = [wt[0] for wt, _ in dec]
    assert weights == [sc(0, -1), sc(0, 1)]
    for wt, basis in dec:
        v = basis[0]
        assert x.act(v) == wt[0] * v


def test_weight_decomposition_errors():
    with pytest.raises(OracleError, match="not split"):
        O.weight_decomposition([sc(2) * E(1, 2) + E(2, 1)], "gl", Window("gl", 2))
    with pytest.raises(OracleError, match="not toral"):
        O.weight_decomposition([E(1, 2)], "gl", Window("gl", 2))
    with pytest.raises(OracleError, match="do not commute"):
        O.weight_decomposition([E(1, 1), E(1, 2)], "gl", Window("gl", 2))


def test_weight_dimensions_sum_to_module_dimension():
    rng = random.Random(5)
    for _ in range(10):
        a = rng.choice([0, 1, -1, 2])
        b = rng.choice([0, 1, -1])
        g1 = sc(a) * E(1, 1) + sc(b) * E(2, 2)
        g2 = sc(b) * E(2, 2) + sc(a) * E(3, 3)
        dec = O.weight_decomposition([g1, g2], "gl", W3)
        assert sum(len(basis) for _, basis in dec) == 3


def test_adjoint_weight_decomposition_gl2():
    w = Window("gl", 2)
    dec = O.weight_decomposition([E(1, 1), E(2, 2)], "gl", w, on="adjoint")
    by_weight = {wt: basis for wt, basis in dec}
    assert len(by_weight[(ZERO, ZERO)]) == 2
    assert by_weight[(ONE, -ONE)][0] == E(1, 2)
    assert by_weight[(-ONE, ONE)][0] == E(2, 1)


# -- generalized zero spaces ----------------------------------------------


def test_generalized_zero_space_vectors():
    z = O.generalized_zero_space([E(1, 1)], "gl", W3)
    assert Subspace([v.c for v in z]) == Subspace([{2: ONE}, {3: ONE}])
    z = O.generalized_zero_space([E(1, 2)], "gl", W3)
    assert len(z) == 3
    z = O.generalized_zero_space([], "gl", W3)
    assert len(z) == 3


def test_generalized_zero_space_adjoint():
    diag = [E(1, 1), E(2, 2), E(3, 3)]
    z = O.generalized_zero_space(diag, "gl", W3, on="adjoint")
    assert span(z) == span(diag)
    sl_gens = [E(1, 1) - E(2, 2), E(2, 2) - E(3, 3)]
    z = O.generalized_zero_space(sl_gens, "sl", W3, on="adjoint")
    assert span(z) == span(sl_gens)
    assert all(x.is_sl() for x in z)
    z = O.generalized_zero_space([], "sl", W3, on="adjoint")
    assert len(z) == 8
