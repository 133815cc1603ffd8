"""Dual-system catalog: duality checks, window truncations, predicted
centralizers against the brute-force oracle, and datum realizations."""

import itertools

import pytest

from cartankit.complement import (
    ComplementDatum,
    ComplementError,
    build_Dz,
    build_representative,
    check_realizable,
    is_maximal,
    is_nondegenerate,
    standard_invariants,
)
from cartankit.epseq import EPSeq, TwoSidedEPSeq
from cartankit.linalg import Subspace
from cartankit.scalars import ONE, ZERO, sc
from cartankit.systems import (
    CumulativeSum,
    DualBases,
    DualSystemError,
    ShiftPattern,
    WorkedExample,
    build_corollary_class_representatives,
    cartan_basis_at,
    centralizer_of_torus_at,
    datum_from_system,
    is_splitting_at,
    maximality_search,
    system_from_datum,
    toral_generators,
    torus_basis_at,
)
from cartankit.tensor import LieElement, Vec, Window

E = LieElement.matrix_unit


def all_catalog_systems():
    out = [DualBases(k) for k in ("gl", "sl", "so", "sp")]
    out.append(DualBases("so", ambient_zero=True))
    for kind in ("gl", "sl"):
        for anchor in ("dual", "line"):
            for coeff in ("one", "parity"):
                out.append(ShiftPattern(kind, anchor, coeff))
        for side in ("dual", "line"):
            for variant in ("full", "parity"):
                out.append(CumulativeSum(kind, side, variant))
    out.append(WorkedExample("so-nonabelian-odd"))
    out.append(WorkedExample("coefficient-twist"))
    out.append(
        WorkedExample(
            "coefficient-twist",
            a=EPSeq(period=(sc(2), sc(0))),
            b=EPSeq(prefix=(sc(3),), period=(sc(1),)),
        )
    )
    return out


# -- duality and index plumbing -------------------------------------------


def test_catalog_duality():
    for sys_ in all_catalog_systems():
        sys_.validate(9)


def test_index_conventions():
    so = DualBases("so")
    assert so.index_list(2) == [-2, -1, 1, 2]
    assert not so.index_ok(0)
    with pytest.raises(DualSystemError, match="index outside"):
        so.line(0)
    gl = DualBases("gl")
    assert gl.index_list(3) == [1, 2, 3]
    with pytest.raises(DualSystemError, match="index outside"):
        gl.line(-1)
    ne = WorkedExample("so-nonabelian-odd")
    assert ne.index_of_rank(1) == 3
    assert not ne.index_ok(2)
    assert ne.ambient_window(3) == Window("so", 3)
    assert DualBases("so").ambient_window(3) == Window("so", 3, include_zero=False)


def test_constructor_rejections():
    with pytest.raises(DualSystemError, match="unknown kind"):
        DualBases("e8")
    with pytest.raises(DualSystemError, match="zero coordinate"):
        DualBases("sp", ambient_zero=True)
    with pytest.raises(DualSystemError, match="gl and sl only"):
        ShiftPattern("so", "dual", "one")
    with pytest.raises(DualSystemError, match="anchor"):
        ShiftPattern("gl", "middle", "one")
    with pytest.raises(DualSystemError, match="variant"):
        CumulativeSum("gl", "dual", "half")
    with pytest.raises(DualSystemError, match="unknown example id"):
        WorkedExample("so-abelian-even")
    with pytest.raises(DualSystemError, match="no coefficients"):
        WorkedExample("so-nonabelian-odd", a=EPSeq(period=(ONE,)))
    with pytest.raises(DualSystemError, match="must hold scalars"):
        WorkedExample("coefficient-twist", a=EPSeq(period=(Vec.basis(1),)))


# -- declared complement data ---------------------------------------------


def test_declared_invariants():
    expect = {
        ("dual-bases", "gl"): (0, 0, 0, 0, 0),
        ("shift-pattern", "dual"): (0, 0, 1, 1, 0),
        ("shift-pattern", "line"): (0, 1, 0, 0, 1),
        ("cumulative-sum", "dual"): (0, 0, 0, 1, 0),
        ("cumulative-sum", "line"): (0, 0, 0, 0, 1),
    }
    for sys_ in all_catalog_systems():
        d = datum_from_system(sys_)
        assert is_nondegenerate(d)
        if sys_.catalog == "dual-bases":
            want = {
                "gl": (0, 0, 0, 0, 0),
                "sl": (0, 0, 0, 0, 0),
                "sp": (0, 0, 0),
            }.get(sys_.kind)
            if sys_.kind == "so":
                want = (1, 1, 0) if sys_.ambient_zero else (0, 0, 0)
            assert standard_invariants(d) == want
        elif sys_.catalog == "shift-pattern":
            assert standard_invariants(d) == expect[(sys_.catalog, sys_.anchor)]
        elif sys_.catalog == "cumulative-sum":
            assert standard_invariants(d) == expect[(sys_.catalog, sys_.side)]


def test_worked_example_data():
    ne = datum_from_system(WorkedExample("so-nonabelian-odd"))
    assert standard_invariants(ne) == (1, 3, 2)
    assert is_maximal(ne)
    tw = datum_from_system(WorkedExample("coefficient-twist"))
    assert standard_invariants(tw) == (0, 1, 1, 1, 1)
    assert is_maximal(tw)
    assert not is_maximal(build_representative("gl", (1, 1, 1, 0, 0)))


def test_carriers_recover_declared_pairing():
    # the carrier vectors must reproduce the declared omega and functionals
    for sys_ in all_catalog_systems():
        d = datum_from_system(sys_)
        x_map, y_map = sys_.carriers()
        from cartankit.tensor import pair

        for i in range(1, d.X_dim + 1):
            for j in range(1, (d.X_dim if d.two_sided else d.Y_dim) + 1):
                other = x_map[j] if d.two_sided else y_map[j]
                assert pair(sys_.kind, x_map[i], other) == d.omega_entry(i, j)
        for r in range(1, 7):
            k = sys_.index_of_rank(r)
            if d.two_sided:
                lam = d.lambdas.pos.entry(r)
                for i in range(1, d.X_dim + 1):
                    assert pair(sys_.kind, x_map[i], sys_.line(k)) == lam[i]
                lam = d.lambdas.neg.entry(r)
                for i in range(1, d.X_dim + 1):
                    assert pair(sys_.kind, x_map[i], sys_.line(-k)) == lam[i]
            else:
                lam = d.lambdas.entry(r)
                mu = d.mus.entry(r)
                for i in range(1, d.X_dim + 1):
                    assert pair(sys_.kind, x_map[i], sys_.dual_line(k)) == lam[i]
                for j in range(1, d.Y_dim + 1):
                    assert pair(sys_.kind, sys_.line(k), y_map[j]) == mu[j]


# -- truncated tori and predicted centralizers ----------------------------


def test_torus_basis_dual_bases():
    gens = torus_basis_at(DualBases("gl"), Window("gl", 4))
    assert [g.c for g in gens] == [E(i, i).c for i in (1, 2, 3, 4)]
    gens = torus_basis_at(DualBases("sl"), Window("gl", 4))
    assert [g.c for g in gens] == [(E(i, i) - E(i + 1, i + 1)).c for i in (1, 2, 3)]
    with pytest.raises(DualSystemError, match="window too small"):
        torus_basis_at(ShiftPattern("gl", "dual", "one"), Window("gl", 1))


def test_parity_fit_includes_short_even_rows():
    # even-index parity rows have no tail, so index 4 fits a width-5 window
    sys_ = CumulativeSum("gl", "dual", "parity")
    gens = torus_basis_at(sys_, Window("gl", 5))
    assert len(gens) == 4
    assert gens[-1].c == E(4, 4).c


def test_sl_generator_is_traceless_difference():
    g = toral_generators(DualBases("sl"), 2)
    assert g.c == (E(2, 2) - E(3, 3)).c
    assert not g.trace()


def test_predicted_centralizer_matches_oracle():
    cases = [
        (DualBases("gl"), 4, 4),
        (DualBases("sl"), 4, 3),
        (DualBases("so"), 3, 3),
        (DualBases("so", ambient_zero=True), 3, 3),
        (DualBases("sp"), 3, 3),
        (ShiftPattern("gl", "dual", "one"), 4, 3),
        (ShiftPattern("gl", "line", "parity"), 5, 4),
        (CumulativeSum("gl", "dual", "full"), 4, 3),
        (CumulativeSum("gl", "line", "full"), 4, 3),
        (CumulativeSum("gl", "dual", "parity"), 5, 4),
        (CumulativeSum("sl", "dual", "full"), 4, 2),
        (WorkedExample("so-nonabelian-odd"), 5, 6),
        (WorkedExample("coefficient-twist"), 5, 4),
    ]
    for sys_, n, dim in cases:
        w = sys_.ambient_window(n)
        pred = cartan_basis_at(sys_, w)
        assert pred.dim == dim, sys_.catalog
        assert pred == centralizer_of_torus_at(sys_, w), sys_.catalog


def test_splitting_statuses():
    splitting = [
        DualBases("gl"),
        DualBases("sl"),
        DualBases("so"),
        DualBases("so", ambient_zero=True),
        DualBases("sp"),
    ]
    not_splitting = [
        ShiftPattern("gl", "dual", "one"),
        ShiftPattern("gl", "line", "one"),
        CumulativeSum("gl", "dual", "full"),
        CumulativeSum("gl", "line", "parity"),
        WorkedExample("so-nonabelian-odd"),
        WorkedExample("coefficient-twist"),
    ]
    for sys_ in splitting:
        assert is_splitting_at(sys_, sys_.ambient_window(5))
    for sys_ in not_splitting:
        assert not is_splitting_at(sys_, sys_.ambient_window(5))


def test_nonabelian_block():
    sys_ = WorkedExample("so-nonabelian-odd")
    for n in (5, 6):
        w = sys_.ambient_window(n)
        h = cartan_basis_at(sys_, w)
        assert h.dim == (n - 2) + 3
        x = LieElement.wedge(Vec.basis(1), Vec.basis(0))
        y = LieElement.wedge(Vec.basis(-2), Vec.basis(0))
        z = x.bracket(y)
        assert z.c == LieElement.wedge(Vec.basis(-2), Vec.basis(1)).c
        for e in (x, y, z):
            assert h.contains(e.c)
    # every candidate in the block is nilpotent, so no semisimple witness
    assert maximality_search(sys_, sys_.ambient_window(5)) is None


def test_centralizer_needs_room():
    with pytest.raises(DualSystemError, match="window too small"):
        centralizer_of_torus_at(
            WorkedExample("so-nonabelian-odd"), Window("so", 3), max_rounds=1
        )


# -- datum realization ----------------------------------------------------


def test_round_trip_gl():
    for t in itertools.product(range(2), repeat=5):
        d, p, q, m, n = t
        try:
            check_realizable("gl", t)
        except ComplementError:
            continue
        datum = build_representative("gl", t)
        if m > q - d and n > p - d:
            with pytest.raises(ComplementError, match="conflicting unpaired"):
                system_from_datum(datum)
            continue
        sys_ = system_from_datum(datum)
        assert datum_from_system(sys_) == datum


def test_round_trip_two_sided():
    for kind in ("so", "sp"):
        for t in itertools.product(range(3), repeat=3):
            d, p, m = t
            try:
                check_realizable(kind, t)
            except ComplementError:
                continue
            datum = build_representative(kind, t)
            if m > p - d:
                with pytest.raises(ComplementError, match="conflicting unpaired"):
                    system_from_datum(datum)
                continue
            sys_ = system_from_datum(datum)
            assert datum_from_system(sys_) == datum


def test_recurring_value_realization():
    sys_ = system_from_datum(build_Dz(sc(2)))
    assert sys_.line(1) == Vec.basis(1) + Vec.basis(3)
    assert sys_.line(2) == Vec.basis(1) + Vec.basis(4)
    assert sys_.dual_line(1) == Vec.basis(2) + Vec.basis(3)
    assert sys_.dual_line(2) == sc(2) * Vec.basis(2) + Vec.basis(4)
    assert sys_.dual_line(3) == Vec.basis(2) + Vec.basis(5)


def test_one_branch_chains():
    # a recurring functional on one branch only telescopes through a chain
    Z = ZERO
    for kind, sign in (("so", ONE), ("sp", -ONE)):
        omega = ((Z, ONE, Z), (sign, Z, Z), (Z, Z, Z))
        for pos_period, neg_period in (
            ((Vec.basis(3),), (Vec(),)),
            ((Vec(),), (Vec({3: sc(2)}),)),
            ((Vec.basis(3), Vec()), (Vec(),)),
        ):
            lam = TwoSidedEPSeq(EPSeq(period=pos_period), EPSeq(period=neg_period))
            datum = ComplementDatum(kind, 3, 3, omega, lam)
            sys_ = system_from_datum(datum)
            assert datum_from_system(sys_) == datum


def test_worked_so_datum_round_trips():
    datum = datum_from_system(WorkedExample("so-nonabelian-odd"))
    sys_ = system_from_datum(datum)
    assert datum_from_system(sys_) == datum
    assert standard_invariants(datum) == (1, 3, 2)


def test_realization_rejections():
    Z = ZERO
    deg = ComplementDatum(
        "gl", 1, 1, ((Z,),), EPSeq(period=(Vec(),)), EPSeq(period=(Vec(),))
    )
    with pytest.raises(ComplementError, match="degenerate"):
        system_from_datum(deg)
    pref = ComplementDatum(
        "gl",
        1,
        1,
        ((ONE,),),
        EPSeq(prefix=(Vec.basis(1),), period=(Vec(),)),
        EPSeq(period=(Vec(),)),
    )
    with pytest.raises(ComplementError, match="prefix entries"):
        system_from_datum(pref)
    wide = ComplementDatum(
        "gl",
        2,
        2,
        ((ONE, Z), (Z, ONE)),
        EPSeq(period=(Vec({1: ONE, 2: ONE}),)),
        EPSeq(period=(Vec(),)),
    )
    with pytest.raises(ComplementError, match="single coordinate"):
        system_from_datum(wide)
    both = ComplementDatum(
        "gl",
        1,
        1,
        ((ONE,),),
        EPSeq(period=(Vec.basis(1),)),
        EPSeq(period=(Vec.basis(1),)),
    )
    with pytest.raises(ComplementError, match="couples two functional streams"):
        system_from_datum(both)
    double = ComplementDatum(
        "gl",
        2,
        2,
        ((ONE, ONE), (Z, ONE)),
        EPSeq(period=(Vec(),)),
        EPSeq(period=(Vec(),)),
    )
    with pytest.raises(ComplementError, match="not a matching"):
        system_from_datum(double)
    norm = ComplementDatum(
        "so",
        1,
        1,
        ((sc(2),),),
        TwoSidedEPSeq(EPSeq(period=(Vec(),)), EPSeq(period=(Vec(),))),
    )
    with pytest.raises(ComplementError, match="unsupported norm value"):
        system_from_datum(norm)
    with pytest.raises(DualSystemError, match="no declared complement"):
        datum_from_system(system_without_datum())


def system_without_datum():
    class Bare(DualBases):
        def declared_complement(self):
            return None

    return Bare("gl")


# -- maximality search ----------------------------------------------------


def test_maximality_witnesses():
    assert maximality_search(DualBases("gl"), Window("gl", 4)) is None
    assert maximality_search(DualBases("sp"), Window("sp", 3)) is None

    s = system_from_datum(build_representative("gl", (1, 1, 1, 0, 0)))
    cand = maximality_search(s, s.ambient_window(s.min_window + 2))
    assert cand is not None and cand.c == E(1, 1).c

    s = system_from_datum(build_representative("so", (1, 1, 0)))
    assert maximality_search(s, s.ambient_window(s.min_window + 2)) is None

    s = system_from_datum(build_representative("so", (2, 2, 0)))
    assert maximality_search(s, s.ambient_window(s.min_window + 2)) is not None

    s = system_from_datum(build_representative("sp", (2, 2, 0)))
    assert maximality_search(s, s.ambient_window(s.min_window + 2)) is not None


# -- finite equivalence classes -------------------------------------------


def test_class_registry():
    reps = build_corollary_class_representatives("gl", (0, 0, 0, 0, 0))
    assert len(reps) == 1 and reps[0].catalog == "dual-bases"
    for tup in ((0, 0, 0, 1, 0), (0, 0, 0, 0, 1), (0, 0, 1, 1, 0), (0, 1, 0, 0, 1)):
        reps = build_corollary_class_representatives("sl", tup)
        assert len(reps) == 2
        d0, d1 = (datum_from_system(s) for s in reps)
        assert standard_invariants(d0) == tup
        assert standard_invariants(d1) == tup
        # the two classes differ by infinite vanishing of the recurring entry
        seqs = []
        for d in (d0, d1):
            seq = d.lambdas if any(map(bool, d.lambdas.period)) else d.mus
            seqs.append(sum(1 for v in seq.period if not v))
        assert sorted(seqs) == [0, 1]
    assert [s.ambient_zero for s in build_corollary_class_representatives("so", (0, 0, 0))] == [False]
    assert [s.ambient_zero for s in build_corollary_class_representatives("so", (1, 1, 0))] == [True]
    assert len(build_corollary_class_representatives("sp", (0, 0, 0))) == 1
    with pytest.raises(DualSystemError, match="not a finite-class tuple"):
        build_corollary_class_representatives("gl", (0, 1, 1, 1, 1))
    with pytest.raises(DualSystemError, match="not a finite-class tuple"):
        build_corollary_class_representatives("so", (0, 2, 2))
