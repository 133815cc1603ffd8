import itertools

import pytest

from cartankit.complement import (
    ComplementDatum, ComplementError, X0_basis, Y0_basis, build_Dz,
    build_representative, check_realizable, cov_apply, in_X0, is_maximal,
    is_nondegenerate, omega_tilde, standard_invariants, zero_datum,
)
from cartankit.epseq import EPSeq, TwoSidedEPSeq
from cartankit.scalars import ONE, ZERO, sc
from cartankit.tensor import Vec


def test_zero_datum_all_kinds():
    for kind in ("gl", "sl"):
        d = zero_datum(kind)
        assert standard_invariants(d) == (0, 0, 0, 0, 0)
        assert is_nondegenerate(d)
        assert is_maximal(d)
    for kind in ("so", "sp"):
        d = zero_datum(kind)
        assert standard_invariants(d) == (0, 0, 0)
        assert is_nondegenerate(d)
        assert is_maximal(d)


def test_representative_round_trip_gl():
    legal = 0
    for tup in itertools.product(range(3), repeat=5):
        try:
            check_realizable("gl", tup)
        except ComplementError:
            continue
        legal += 1
        datum = build_representative("gl", tup)
        assert standard_invariants(datum) == tup
        assert is_nondegenerate(datum)
    assert legal > 10


def test_representative_round_trip_so_sp():
    for kind in ("so", "sp"):
        for tup in itertools.product(range(3), repeat=3):
            try:
                check_realizable(kind, tup)
            except ComplementError:
                continue
            datum = build_representative(kind, tup)
            assert standard_invariants(datum) == tup
            assert is_nondegenerate(datum)


def test_unrealizable_messages():
    with pytest.raises(ComplementError, match=r"violates p - d <= n"):
        build_representative("gl", (0, 1, 0, 1, 0))
    with pytest.raises(ComplementError, match=r"violates 0 <= p - d"):
        build_representative("gl", (2, 1, 2, 0, 0))
    with pytest.raises(ComplementError, match=r"violates q - d <= m"):
        build_representative("sl", (0, 0, 1, 0, 1))
    with pytest.raises(ComplementError, match=r"violates p - d <= m"):
        build_representative("so", (0, 1, 0))
    with pytest.raises(ComplementError, match="d must be even"):
        build_representative("sp", (1, 1, 1))
    with pytest.raises(ComplementError, match="nonnegative"):
        build_representative("gl", (0, 0, 0))


def test_maximality_thresholds():
    # gl: any positive core rank is too much
    assert not is_maximal(build_representative("gl", (1, 1, 1, 0, 0)))
    assert is_maximal(build_representative("gl", (0, 1, 1, 1, 1)))
    # so tolerates core rank exactly 1
    assert is_maximal(build_representative("so", (1, 1, 0)))
    assert not is_maximal(build_representative("so", (2, 2, 0)))
    assert not is_maximal(build_representative("sp", (2, 2, 0)))


def test_build_Dz_shape_and_invariants():
    d = build_Dz(2)
    assert standard_invariants(d) == (0, 1, 1, 1, 1)
    assert is_nondegenerate(d)
    assert is_maximal(d)
    prods = [d.lambdas.entry(i).c[2] * d.mus.entry(i).c[2] for i in (1, 2)]
    assert prods == [sc(1), sc(2)]
    with pytest.raises(ComplementError, match="0 or 1"):
        build_Dz(1)
    with pytest.raises(ComplementError, match="0 or 1"):
        build_Dz(0)
    with pytest.raises(ComplementError, match="unsupported shape"):
        build_Dz(2, shape=(3, 2, 1, 1))


def test_omega_tilde_divergence():
    d = build_Dz(3)
    with pytest.raises(ComplementError, match="divergent"):
        omega_tilde(d, Vec.basis(2), Vec.basis(2))
    # core against anything converges
    assert omega_tilde(d, Vec.basis(1), Vec.basis(2)) == ONE
    assert omega_tilde(d, Vec.basis(1), Vec.basis(1)) == ZERO


def test_omega_tilde_prefix_correction():
    # a prefix covector contributes one finite correction term
    lam = EPSeq((Vec.basis(1),), (Vec.basis(2),))
    mu = EPSeq((), (Vec.basis(2),))
    omega = ((ZERO, ZERO), (ONE, ZERO))
    d = ComplementDatum("gl", 2, 2, omega, lam, mu)
    x0 = [Vec(r) for r in X0_basis(d).basis()]
    assert x0 == [Vec.basis(1)]
    # omega(x0, y_2) = 0 but lambda_1(x0) mu_1(y_2) = 1
    assert omega_tilde(d, Vec.basis(1), Vec.basis(2)) == -ONE


def test_cores_and_membership():
    d = build_representative("gl", (1, 2, 1, 1, 2))
    assert X0_basis(d).dim == 2
    assert Y0_basis(d).dim == 1
    assert in_X0(d, Vec.basis(1))
    assert not in_X0(d, Vec.basis(3))


def test_so_datum_with_rank_one_core():
    # three core coordinates, two active ones, core self-pairing rank 1
    omega = [[ZERO] * 5 for _ in range(5)]
    omega[0][0] = ONE
    omega[1][4] = omega[4][1] = ONE
    omega[3][2] = omega[2][3] = ONE
    lam = TwoSidedEPSeq(EPSeq((), (Vec.basis(5),)), EPSeq((), (Vec.basis(4),)))
    d = ComplementDatum("so", 5, 5, omega, lam)
    assert standard_invariants(d) == (1, 3, 2)
    assert is_nondegenerate(d)
    assert is_maximal(d)
    # corrected pairing is symmetric where defined
    x0 = Vec.basis(1)
    for j in range(1, 6):
        assert omega_tilde(d, x0, Vec.basis(j)) == omega_tilde(d, Vec.basis(j), x0)


def test_sp_alternating_validation():
    with pytest.raises(ComplementError, match="alternating"):
        ComplementDatum("sp", 1, 1, ((ONE,),),
                        TwoSidedEPSeq(EPSeq((), (Vec(),)), EPSeq((), (Vec(),))))


def test_degenerate_datum_detected():
    # a core coordinate pairing trivially with everything
    lam = EPSeq((), (Vec(),))
    mu = EPSeq((), (Vec(),))
    d = ComplementDatum("gl", 1, 0, ((),), lam, mu)
    assert not is_nondegenerate(d)


def test_cov_apply_sparse():
    cov = Vec({1: sc(2), 3: sc(-1)})
    vec = Vec({3: sc(5)})
    assert cov_apply(cov, vec) == sc(-5)
    assert cov_apply(Vec(), vec) == ZERO
