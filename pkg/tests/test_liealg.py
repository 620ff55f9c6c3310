"""Structure constants, representations and the input file format."""

import pytest

from fracsusy.liealg import (SpecFileError, builtin_algebra,
                             builtin_representation, check_representation,
                             parse_pin, parse_spec, serialize_spec)
from fracsusy.scalar import Scalar, get_config, parse_scalar

C3 = get_config(3)


def test_sl2_structure_constants():
    g = builtin_algebra(C3, "sl2")
    assert g.dim == 3
    assert g.c[2][0][1] == 1          # [X1,X2] = X3
    assert g.c[0][2][0] == 2          # [X3,X1] = 2 X1
    assert g.c[1][2][1] == -2         # [X3,X2] = -2 X2
    assert g.c[2][1][0] == -1
    assert g.antisymmetry_violations() == []
    assert g.jacobi_violations() == []


@pytest.mark.parametrize("name,N", [("spinor", 2), ("vector", 3),
                                    ("spinor_plus_scalar", 3)])
def test_builtin_reps_satisfy_algebra(name, N):
    g = builtin_algebra(C3, "sl2")
    r = builtin_representation(C3, g, name)
    assert r.N == N
    assert check_representation(g, r) == []


def test_scalar_rep_any_size():
    g = builtin_algebra(C3, "sl2")
    for N in (1, 2, 3):
        r = builtin_representation(C3, g, "scalar", N=N)
        assert check_representation(g, r) == []
        assert all(r.a[j][al][be] == 0 for j in range(3)
                   for al in range(N) for be in range(N))


def test_vector_rep_entries():
    g = builtin_algebra(C3, "sl2")
    r = builtin_representation(C3, g, "vector")
    r2 = Scalar.sqrt2(C3)
    assert r.a[0][1][0] == r2 and r.a[0][2][1] == r2
    assert r.a[2][0][0] == -2 and r.a[2][1][1] == 0 and r.a[2][2][2] == 2


def test_corrupted_rep_reports_quadruple():
    g = builtin_algebra(C3, "sl2")
    r = builtin_representation(C3, g, "spinor")
    r.a[2][1][1] = parse_scalar(C3, "1")   # flip a^3 -> diag(1, 1)
    bad = check_representation(g, r)
    assert bad, "corruption must be detected"
    assert any(v[:4] == (3, 1, 1, 2) for v in bad)


SPEC_TEXT = """
# sl(2) with its vector representation
[algebra]
builtin = sl2

[representation]
builtin = vector

[grading]
n = 3
pin = b3_222=6
convention = cyclic
dual = sl2_spinor
"""


def test_parse_spec_builtin():
    ps = parse_spec(SPEC_TEXT)
    assert ps.n == 3 and ps.algebra.dim == 3 and ps.rep.N == 3
    assert ps.pin == ((3, (2, 2, 2)), parse_scalar(ps.cfg, "6"))
    assert ps.convention == "cyclic"
    assert ps.dual == "sl2_spinor"


def test_parse_spec_alias():
    ps = parse_spec("sl2 spinor n=3\n")
    assert ps.rep.N == 2 and ps.rep.name == "spinor"
    ps = parse_spec("sl2 scalar n=2 N=1")
    assert ps.n == 2 and ps.rep.N == 1


def test_parse_spec_explicit_and_roundtrip():
    text = """
[algebra]
dim = 3
c 3 1 2 = 1
c 1 3 1 = 2
c 2 3 2 = -2

[representation]
N = 2
a 1 1 2 = 1
a 2 2 1 = 1
a 3 1 1 = 1
a 3 2 2 = -1

[grading]
n = 3
"""
    ps = parse_spec(text)
    assert check_representation(ps.algebra, ps.rep) == []
    again = parse_spec(serialize_spec(ps))
    assert again.algebra.c == ps.algebra.c
    assert again.rep.a == ps.rep.a
    assert again.n == ps.n
    # one more lap for stability
    assert serialize_spec(again) == serialize_spec(ps)


def test_antisymmetry_diagnostic_names_triple():
    text = """
[algebra]
dim = 3
c 3 1 2 = 1
c 3 2 1 = 1

[representation]
N = 1

[grading]
n = 3
"""
    with pytest.raises(SpecFileError) as err:
        parse_spec(text)
    assert "c^3_{12}" in str(err.value)


def test_jacobi_diagnostic():
    text = """
[algebra]
dim = 3
c 3 1 2 = 1
c 1 1 3 = 1

[representation]
N = 1

[grading]
n = 3
"""
    with pytest.raises(SpecFileError) as err:
        parse_spec(text)
    assert "Jacobi" in str(err.value)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(SpecFileError) as err:
        parse_spec("[algebra]\nc 1 2 = 5\ndim = 3\n\n[representation]\nN=1\n"
                    "\n[grading]\nn = 3\n")
    assert err.value.diagnostics[0][0] == 2


def test_bad_pin_rejected():
    with pytest.raises(SpecFileError):
        parse_pin(C3, "q3_111=1")
    with pytest.raises(SpecFileError):
        parse_pin(C3, "b3_222")
    label, value = parse_pin(C3, "b1_212 = -4*r2")
    assert label == (1, (1, 2, 2))
    assert value == parse_scalar(C3, "-4*r2")


def test_unknown_builtins_rejected():
    with pytest.raises(SpecFileError):
        builtin_algebra(C3, "e8")
    g = builtin_algebra(C3, "sl2")
    with pytest.raises(SpecFileError):
        builtin_representation(C3, g, "adjoint")
    with pytest.raises(SpecFileError):
        builtin_representation(C3, g, "spinor", N=5)
