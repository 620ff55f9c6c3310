"""Constraint systems, exact nullspaces, and the worked sl2 cases.

Expected dimensions and coefficient values were derived by hand from the
two constraint families before this module existed; the solver has to
reproduce them exactly.
"""

import pytest

from fracsusy.scalar import Scalar, get_config, parse_scalar
from fracsusy.liealg import builtin_algebra, builtin_representation
from fracsusy.gradesolve import (
    GradedAlgebraSpec,
    build_constraint_system,
    echelon,
    identity_j1,
    identity_j2,
    identity_j3,
    label_str,
    nullspace,
    numeric_rank,
    random_poly,
    residual_rows,
    solve_structure_constants,
    unknown_labels,
    verify_graded_spec,
    verify_identities,
)
from fracsusy.freealg import NCPoly, Q, X

cfg3 = get_config(3)
cfg2 = get_config(2)


def sc(cfg, text):
    return parse_scalar(cfg, text)


def case(cfg, rep_name, N=None):
    g = builtin_algebra(cfg, "sl2")
    r = builtin_representation(cfg, g, rep_name, N=N)
    return g, r


def as_dict(labels, vec):
    return {lab: v for lab, v in zip(labels, vec) if v != 0}


# ---- bookkeeping -----------------------------------------------------------

def test_unknown_counts():
    assert len(unknown_labels(3, 1, 3)) == 3
    assert len(unknown_labels(3, 2, 3)) == 12
    assert len(unknown_labels(3, 3, 3)) == 30
    assert label_str((3, (2, 2, 2))) == "b3_222"
    assert label_str((1, (1, 2, 3))) == "b1_123"


def test_row_merge_counts():
    g, r = case(cfg3, "spinor")
    sys = build_constraint_system(g, r, 3)
    assert sys.counts() == {"snj1": 36, "snj2": 10}
    # every ordered index tuple contributed somewhere
    n_sources_1 = sum(len(src) for tag, _, src in sys.provenance
                      if tag == "snj1")
    n_sources_2 = sum(len(src) for tag, _, src in sys.provenance
                      if tag == "snj2")
    assert n_sources_1 == 9 * 2 ** 3
    assert n_sources_2 == 2 * 2 ** 4

    g, r = case(cfg3, "vector")
    sys = build_constraint_system(g, r, 3)
    assert sys.counts() == {"snj1": 90, "snj2": 45}


# ---- trivial modules force b = 0 -------------------------------------------

@pytest.mark.parametrize("N", [1, 2, 3])
def test_trivial_module_has_no_extension(N):
    g, r = case(cfg3, "scalar", N=N)
    res = solve_structure_constants(g, r, 3)
    assert res.dimension == 0
    assert len(res.labels) == {1: 3, 2: 12, 3: 30}[N]


# ---- two-dimensional module (spinor), n = 3 --------------------------------

def test_spinor_n3_cubic_family_alone():
    g, r = case(cfg3, "spinor")
    res = solve_structure_constants(g, r, 3, include=("snj2",))
    assert res.dimension == 2

    labels = res.labels
    col = {lab: i for i, lab in enumerate(labels)}
    always_zero = [(1, (1, 1, 1)), (1, (1, 1, 2)), (2, (1, 2, 2)),
                   (2, (2, 2, 2)), (3, (1, 1, 1)), (3, (2, 2, 2))]
    for vec in res.basis:
        for lab in always_zero:
            assert vec[col[lab]] == 0, label_str(lab)

    # the two independent solution lines, frozen by hand
    sol1 = {(1, (1, 2, 2)): sc(cfg3, "1"),
            (2, (1, 1, 1)): sc(cfg3, "-3"),
            (3, (1, 1, 2)): sc(cfg3, "1")}
    sol2 = {(1, (2, 2, 2)): sc(cfg3, "3"),
            (2, (1, 1, 2)): sc(cfg3, "-1"),
            (3, (1, 2, 2)): sc(cfg3, "1")}
    for sol in (sol1, sol2):
        vec = [sol.get(lab, Scalar.zero(cfg3)) for lab in labels]
        assert residual_rows(res.system, vec) == []


def test_spinor_n3_full_system_is_rigid():
    g, r = case(cfg3, "spinor")
    res = solve_structure_constants(g, r, 3)
    assert res.dimension == 0


# ---- three-dimensional module (vector), n = 3 ------------------------------

def vector_solution():
    r2 = Scalar.sqrt2(cfg3)
    four = Scalar.from_fraction(cfg3, 4)
    two = Scalar.from_fraction(cfg3, 2)
    return {
        (1, (1, 1, 3)): -(four * r2),
        (1, (1, 2, 2)): two * r2,
        (2, (1, 3, 3)): four * r2,
        (2, (2, 2, 3)): -(two * r2),
        (3, (1, 2, 3)): -two,
        (3, (2, 2, 2)): Scalar.from_fraction(cfg3, 6),
    }


def test_vector_n3_cubic_family_alone():
    g, r = case(cfg3, "vector")
    res = solve_structure_constants(g, r, 3, include=("snj2",))
    assert res.dimension == 6


def test_vector_n3_full_solution():
    g, r = case(cfg3, "vector")
    pin = ((3, (2, 2, 2)), sc(cfg3, "6"))
    res = solve_structure_constants(g, r, 3, pin=pin)
    assert res.dimension == 1
    assert res.normalized == vector_solution()
    assert res.notes == []


def test_vector_n3_sign_adjudication():
    # flipping the sign of b2_133 breaks the first constraint family
    g, r = case(cfg3, "vector")
    good = vector_solution()
    bad = dict(good)
    bad[(2, (1, 3, 3))] = -good[(2, (1, 3, 3))]
    ok_viol, _ = verify_graded_spec(g, r, 3, good)
    bad_viol, _ = verify_graded_spec(g, r, 3, bad)
    assert ok_viol == []
    assert bad_viol != []
    assert any(tag == "snj1" for tag, _, _ in bad_viol)


# ---- spinor + scalar module, n = 3 -----------------------------------------

def spinor_scalar_solution():
    return {
        (1, (2, 2, 3)): sc(cfg3, "1"),
        (2, (1, 1, 3)): sc(cfg3, "-1"),
        (3, (1, 2, 3)): sc(cfg3, "1/2"),
    }


def test_spinor_scalar_n3_full_solution():
    g, r = case(cfg3, "spinor_plus_scalar")
    pin = ((1, (2, 2, 3)), sc(cfg3, "1"))
    res = solve_structure_constants(g, r, 3, pin=pin)
    assert res.dimension == 1
    assert res.normalized == spinor_scalar_solution()


def test_spinor_scalar_n3_support_adjudication():
    # the variant with b2_111 in place of b2_113 fails the constraints
    g, r = case(cfg3, "spinor_plus_scalar")
    good = spinor_scalar_solution()
    bad = {(1, (2, 2, 3)): sc(cfg3, "1"),
           (2, (1, 1, 1)): sc(cfg3, "-1"),
           (3, (1, 2, 3)): sc(cfg3, "1/2")}
    ok_viol, _ = verify_graded_spec(g, r, 3, good)
    bad_viol, _ = verify_graded_spec(g, r, 3, bad)
    assert ok_viol == []
    assert bad_viol != []


# ---- quadratic case n = 2 reproduces the classical pattern -----------------

def test_classical_n2_spinor():
    g, r = case(cfg2, "spinor")
    pin = ((2, (1, 1)), sc(cfg2, "1"))
    res = solve_structure_constants(g, r, 2, pin=pin)
    assert res.dimension == 1
    assert res.normalized == {
        (2, (1, 1)): sc(cfg2, "1"),
        (1, (2, 2)): sc(cfg2, "-1"),
        (3, (1, 2)): sc(cfg2, "-1/2"),
    }


# ---- placement convention flag ---------------------------------------------

def test_symmetric_convention_changes_solutions():
    g, r = case(cfg3, "spinor_plus_scalar")
    good = spinor_scalar_solution()
    viol, _ = verify_graded_spec(g, r, 3, good, convention="symmetric")
    assert viol != []
    res = solve_structure_constants(g, r, 3, convention="symmetric")
    assert res.dimension != 1 or \
        as_dict(res.labels, res.basis[0]).keys() != good.keys()


# ---- pins ------------------------------------------------------------------

def test_pin_on_vanishing_coordinate_is_reported():
    g, r = case(cfg3, "vector")
    pin = ((1, (1, 1, 1)), sc(cfg3, "1"))
    res = solve_structure_constants(g, r, 3, pin=pin)
    assert res.dimension == 1
    assert res.normalized is None
    assert any("vanishes" in note for note in res.notes)


def test_pin_on_rigid_case_is_reported():
    g, r = case(cfg3, "spinor")
    pin = ((1, (1, 1, 1)), sc(cfg3, "1"))
    res = solve_structure_constants(g, r, 3, pin=pin)
    assert res.normalized is None
    assert any("dimension 0" in note for note in res.notes)


def test_pin_out_of_range():
    g, r = case(cfg3, "spinor")
    with pytest.raises(ValueError):
        solve_structure_constants(g, r, 3, pin=((9, (1, 1, 1)),
                                                sc(cfg3, "1")))


# ---- exact linear algebra on a hand nullspace ------------------------------

def test_nullspace_hand_example():
    # x + y + z = 0, x - z = 0  ->  kernel spanned by (1, -2, 1)
    one = Scalar.one(cfg3)
    zero = Scalar.zero(cfg3)
    rows = [[one, one, one], [one, zero, -one]]
    rank, basis = nullspace(rows, 3, cfg3)
    assert rank == 2
    assert len(basis) == 1
    v = basis[0]
    scale = v[2]
    assert [x / scale for x in v] == [one, sc(cfg3, "-2"), one]


def test_echelon_deterministic_pivots():
    one = Scalar.one(cfg3)
    zero = Scalar.zero(cfg3)
    rows = [[zero, one, one], [one, zero, one]]
    _, pivots = echelon(rows, 3, cfg3)
    assert pivots == [0, 1]


# ---- numeric cross-check of exact ranks ------------------------------------

@pytest.mark.parametrize("rep_name,N", [("spinor", None), ("vector", None),
                                        ("spinor_plus_scalar", None),
                                        ("scalar", 2)])
def test_numeric_rank_agrees(rep_name, N):
    g, r = case(cfg3, rep_name, N=N)
    sys = build_constraint_system(g, r, 3)
    rank, _ = nullspace(sys.rows, len(sys.labels), sys.cfg)
    assert rank == numeric_rank(sys.rows)


# ---- generalized Jacobi identities -----------------------------------------

def test_identity_j1_specific():
    a = NCPoly.from_gen(cfg3, X(1))
    b = NCPoly.from_gen(cfg3, X(2))
    c = NCPoly.from_gen(cfg3, Q(1)) * NCPoly.from_gen(cfg3, Q(2))
    assert identity_j1(a, b, c) == NCPoly.zero(cfg3)


def test_identity_j2_j3_specific():
    gens = [NCPoly.from_gen(cfg3, g) for g in (X(1), Q(1), Q(2), X(3))]
    assert identity_j2(gens[0], gens[1:]) == NCPoly.zero(cfg3)
    assert identity_j3(gens) == NCPoly.zero(cfg3)


def test_identities_random_n3():
    report = verify_identities(cfg3, seed=20240812, samples=25)
    assert report["pass"]
    assert {c["name"] for c in report["checks"]} == {"j1", "j2", "j3"}
    assert all(c["max_residual_terms"] == 0 for c in report["checks"])


def test_identities_random_n2():
    report = verify_identities(cfg2, seed=7, samples=15)
    assert report["pass"]


# ---- readable output --------------------------------------------------------

def test_spec_rendering():
    g, r = case(cfg3, "spinor_plus_scalar")
    spec = GradedAlgebraSpec(g, r, 3, spinor_scalar_solution())
    lines = spec.bracket_lines()
    assert "{Q2,Q2,Q3} = X1" in lines
    assert "{Q1,Q1,Q3} = -1*X2" in lines
    assert "{Q1,Q2,Q3} = 1/2*X3" in lines
    comm = spec.commutator_lines()
    assert "[Q1, X1] = Q2" in comm
    assert "[Q3, X1] = 0" in comm
    assert "[Q1, X3] = Q1" in comm
