"""Acceptance gate: one test per criterion, everything exact.

Run `pytest tests/test_acceptance.py -v` for one line per criterion
(add -s to see the printed summaries too).
"""

from fracsusy.scalar import get_config, parse_scalar
from fracsusy.freealg import K as KGEN
from fracsusy.freealg import la
from fracsusy.gradesolve import (
    build_constraint_system,
    label_str,
    nullspace,
    numeric_rank,
    solve_structure_constants,
    unknown_labels,
    verify_graded_spec,
    verify_identities,
)
from fracsusy.hopfcheck import (
    verify_classical_degeneration,
    verify_hopf_axioms,
    verify_invariant_form_primitive,
)
from fracsusy.dualside import (
    LambdaAlgebra,
    Pairing,
    single_generator_rules,
    verify_dual_hopf,
    verify_pairing_well_defined,
)
from fracsusy.liealg import builtin_algebra, builtin_representation
from fracsusy.realize import verify_realization

cfg2 = get_config(2)
cfg3 = get_config(3)


def sc(text, cfg=cfg3):
    return parse_scalar(cfg, text)


def case(cfg, rep_name, N=None):
    g = builtin_algebra(cfg, "sl2")
    return g, builtin_representation(cfg, g, rep_name, N=N)


def test_c1_unknown_counts():
    for N, want in ((1, 3), (2, 12), (3, 30)):
        assert len(unknown_labels(3, N, 3)) == want
    assert label_str((3, (2, 2, 2))) == "b3_222"
    print("PASS criterion 1: unknown counts are 3/12/30 for N=1,2,3")


def test_c2_spinor_staged_solutions():
    g, r = case(cfg3, "spinor")
    staged = solve_structure_constants(g, r, 3, include=("snj2",))
    assert staged.dimension == 2
    sol1 = {(1, (1, 2, 2)): sc("1"), (2, (1, 1, 1)): sc("-3"),
            (3, (1, 1, 2)): sc("1")}
    sol2 = {(1, (2, 2, 2)): sc("3"), (2, (1, 1, 2)): sc("-1"),
            (3, (1, 2, 2)): sc("1")}
    for sol in (sol1, sol2):
        viol, _ = verify_graded_spec(g, r, 3, sol, include=("snj2",))
        assert viol == []
    always_zero = {(1, (1, 1, 1)), (1, (1, 1, 2)), (2, (1, 2, 2)),
                   (2, (2, 2, 2)), (3, (1, 1, 1)), (3, (2, 2, 2))}
    for vec in staged.basis:
        for lab in always_zero:
            assert vec[staged.system.col[lab]] == 0
    full = solve_structure_constants(g, r, 3)
    assert full.dimension == 0
    print("PASS criterion 2: cubic-only spinor family has dimension 2 "
          "with the two frozen solutions; the full system is rigid")


def test_c3_vector_family_and_sign():
    g, r = case(cfg3, "vector")
    res = solve_structure_constants(g, r, 3,
                                    pin=((3, (2, 2, 2)), sc("6")))
    assert res.dimension == 1
    want = {(1, (1, 1, 3)): sc("-4*r2"), (1, (1, 2, 2)): sc("2*r2"),
            (2, (1, 3, 3)): sc("4*r2"), (2, (2, 2, 3)): sc("-2*r2"),
            (3, (1, 2, 3)): sc("-2"), (3, (2, 2, 2)): sc("6")}
    assert res.normalized == want
    flipped = dict(want)
    flipped[(2, (1, 3, 3))] = sc("-4*r2")
    viol, _ = verify_graded_spec(g, r, 3, flipped)
    assert viol
    assert any(tag == "snj1" for tag, _, _ in viol)
    print("PASS criterion 3: vector family is one-dimensional with "
          "b2_133 = +4*r2; the sign-flipped variant violates the mixed "
          "constraint rows")


def test_c4_spinor_plus_scalar_and_rigid_scalars():
    g, r = case(cfg3, "spinor_plus_scalar")
    res = solve_structure_constants(g, r, 3, pin=((1, (2, 2, 3)), sc("1")))
    assert res.dimension == 1
    assert res.normalized == {(1, (2, 2, 3)): sc("1"),
                              (2, (1, 1, 3)): sc("-1"),
                              (3, (1, 2, 3)): sc("1/2")}
    for N in (1, 2, 3):
        gs, rs = case(cfg3, "scalar", N=N)
        assert solve_structure_constants(gs, rs, 3).dimension == 0
    # the superspace operators realize exactly this table and reject the
    # variant that indexes the X2 term by 111
    rep = verify_realization(cfg3, M=8)
    by_name = {c["name"]: c["pass"] for c in rep["checks"]}
    assert by_name["symmetric_bracket_table"]
    assert by_name["variant_111_bracket_rejected"]
    realized = {lab: sc(v) for lab, v in rep["bracket_constants"].items()}
    assert realized == {label_str(lab): v
                        for lab, v in res.normalized.items()}
    print("PASS criterion 4: spinor+scalar family pins to three "
          "constants, scalar modules are rigid, and the operator "
          "realization adjudicates the 113-indexed table")


def test_c5_bracket_identities_random():
    out = verify_identities(cfg3, seed=0, samples=100)
    assert out["pass"]
    assert [c["name"] for c in out["checks"]] == ["j1", "j2", "j3"]
    for c in out["checks"]:
        assert c["samples"] == 100
        assert c["max_residual_terms"] == 0
    print("PASS criterion 5: j1/j2/j3 vanish identically on 100 seeded "
          "random inputs each")


def test_c6_hopf_side():
    assert verify_hopf_axioms(cfg3, seed=0)["pass"]
    for N in (1, 2, 3):
        out = verify_invariant_form_primitive(cfg3, N)
        assert out["pass"]
        assert len(out["tuples"]) == N ** 3
    assert verify_classical_degeneration(cfg2)["pass"]
    print("PASS criterion 6: coproduct axioms hold, the symmetrized "
          "bracket is primitive for every index tuple with N<=3, and the "
          "n=2 degeneration is classical")


def test_c7_dual_side():
    lam = LambdaAlgebra(cfg3, 1)
    assert len(lam.basis_words()) == 9
    rules = single_generator_rules(cfg3)
    assert verify_dual_hopf(rules)["pass"]
    sweep = verify_pairing_well_defined(rules, u_max_len=4, dual_max_len=4)
    assert sweep["pass"]
    assert Pairing(rules).pair_words((la, la, la), (KGEN,)) == 1
    print("PASS criterion 7: one-theta function algebra has dimension 9, "
          "its Hopf structure is exact, the length-4 pairing sweep "
          "passes, and <lambda^3, K> = 1")


def test_c8_realization_window():
    rep = verify_realization(cfg3, M=8)
    assert rep["pass"]
    by_name = {c["name"]: c for c in rep["checks"]}
    assert by_name["grading_counts_theta_degree"]["pass"]
    assert by_name["theta_square_identity"]["pass"]
    assert by_name["grading_has_order_n"]["pass"]
    assert by_name["grading_twists"]["pass"]
    assert by_name["even_bracket_table"]["pass"]
    assert by_name["module_action_table"]["pass"]
    assert by_name["symmetric_bracket_table"]["pass"]
    assert by_name["variant_111_bracket_rejected"]["pass"]
    assert min(c["window"] for c in rep["checks"]) == 5
    print("PASS criterion 8: the M=8 realization satisfies every "
          "relation exactly on its truncation window, the grading "
          "operator counts theta-degree, and the variant bracket is "
          "rejected by name")


def test_c9_exact_vs_float_rank():
    systems = []
    for cfg, rep_name, N, n in ((cfg3, "scalar", 1, 3),
                                (cfg3, "scalar", 2, 3),
                                (cfg3, "scalar", 3, 3),
                                (cfg3, "spinor", None, 3),
                                (cfg3, "vector", None, 3),
                                (cfg3, "spinor_plus_scalar", None, 3),
                                (cfg2, "spinor", None, 2)):
        g, r = case(cfg, rep_name, N=N)
        systems.append(build_constraint_system(g, r, n))
        if rep_name == "spinor" and n == 3:
            systems.append(build_constraint_system(g, r, n,
                                                   include=("snj2",)))
    for system in systems:
        rank, basis = nullspace(system.rows, len(system.labels), system.cfg)
        assert len(system.labels) - len(basis) == rank
        assert numeric_rank(system.rows) == rank
    print("PASS criterion 9: exact ranks agree with floating-point ranks "
          "on every case system")
