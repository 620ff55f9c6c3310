"""Operator realizations on truncated superspace.

The carrier is the span of z^m theta^k with 0 <= m <= M and 0 <= k < n
(theta^n = 0 holds exactly, so the theta direction is not truncated).
Multiplication by z pushes z^M out of the span, so every operator carries
two bookkeeping numbers:

  * s_max -- the largest amount it can raise the z-degree,
  * win   -- the largest source z-degree on which its matrix agrees with
             the untruncated operator.

Composition A * B is exact on degree m when B is exact there (m <= B.win)
and A is exact on everything B can reach (m + B.s_max <= A.win); sums are
exact where both terms are.  Relation checks compare two operators column
by column over the intersection of their windows, so every reported
equality is a statement about the honest, untruncated action.

The built-in realization lives at n = 3: three even vector fields in z, a
fractional derivative and its z-dressed partners, and a grading operator
that is *derived* (the combination -q (2 theta^2 D^2 + D theta^2 D) turns
out to count theta-degree) rather than imposed.
"""

import itertools
from fractions import Fraction

from .gradesolve import multi_indices
from .liealg import builtin_algebra, builtin_representation
from .scalar import Scalar

__all__ = [
    "SuperspaceBasis", "OperatorMatrix", "Realization",
    "verify_realization", "realization_bracket_constants",
]


class SuperspaceBasis:
    """Monomials z^m theta^k, column index m*n + k."""

    def __init__(self, cfg, M):
        assert M >= 1
        self.cfg = cfg
        self.M = M
        self.dim = (M + 1) * cfg.n

    def col(self, m, k):
        assert 0 <= m <= self.M and 0 <= k < self.cfg.n
        return m * self.cfg.n + k

    def degrees(self, j):
        return divmod(j, self.cfg.n)

    def columns(self, m_max=None):
        if m_max is None:
            m_max = self.M
        for m in range(m_max + 1):
            for k in range(self.cfg.n):
                yield m, k


class OperatorMatrix:
    """Sparse column map on a SuperspaceBasis with window bookkeeping."""

    def __init__(self, basis, cols, s_max, win):
        assert len(cols) == basis.dim
        self.basis = basis
        self.cols = cols        # tuple of {row index: Scalar}
        self.s_max = s_max
        self.win = win

    # ---- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, basis):
        return cls(basis, tuple({} for _ in range(basis.dim)),
                   -(basis.M + 1), basis.M)

    @classmethod
    def identity(cls, basis):
        one = Scalar.one(basis.cfg)
        return cls(basis, tuple({j: one} for j in range(basis.dim)),
                   0, basis.M)

    @classmethod
    def from_action(cls, basis, action, s_max, win):
        """action(m, k) -> iterable of ((m2, k2), coeff); images outside
        the carrier are dropped, which is exactly what win accounts for."""
        cols = []
        for m, k in basis.columns():
            col = {}
            for (m2, k2), c in action(m, k):
                if c == 0 or k2 >= basis.cfg.n:
                    continue
                if m2 > basis.M:
                    continue
                j = basis.col(m2, k2)
                col[j] = col[j] + c if j in col else c
            cols.append({j: c for j, c in col.items() if c != 0})
        return cls(basis, tuple(cols), s_max, win)

    @classmethod
    def d_z(cls, basis):
        cfg = basis.cfg

        def action(m, k):
            if m > 0:
                yield (m - 1, k), Scalar.from_fraction(cfg, m)
        return cls.from_action(basis, action, -1, basis.M)

    @classmethod
    def mult_z(cls, basis):
        one = Scalar.one(basis.cfg)

        def action(m, k):
            yield (m + 1, k), one
        return cls.from_action(basis, action, 1, basis.M - 1)

    @classmethod
    def d_theta(cls, basis):
        """D theta^k = [k]_q theta^(k-1)."""
        cfg = basis.cfg

        def action(m, k):
            if k > 0:
                qint = Scalar.zero(cfg)
                for i in range(k):
                    qint = qint + Scalar.q_power(cfg, i)
                yield (m, k - 1), qint
        return cls.from_action(basis, action, 0, basis.M)

    @classmethod
    def mult_theta(cls, basis, power=1):
        one = Scalar.one(basis.cfg)

        def action(m, k):
            yield (m, k + power), one
        return cls.from_action(basis, action, 0, basis.M)

    # ---- arithmetic ---------------------------------------------------------

    def _scale(self, c):
        cols = tuple({} if c == 0 else {j: c * v for j, v in col.items()}
                     for col in self.cols)
        return OperatorMatrix(self.basis, cols, self.s_max, self.win)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self._scale(other)
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        assert self.basis is other.basis
        cols = []
        for col in other.cols:
            out = {}
            for i, c in col.items():
                for r, c2 in self.cols[i].items():
                    v = c2 * c
                    out[r] = out[r] + v if r in out else v
            cols.append({r: v for r, v in out.items() if v != 0})
        return OperatorMatrix(self.basis, tuple(cols),
                              self.s_max + other.s_max,
                              min(other.win, self.win - other.s_max))

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self._scale(other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        assert self.basis is other.basis
        cols = []
        for a, b in zip(self.cols, other.cols):
            out = dict(a)
            for r, v in b.items():
                out[r] = out[r] + v if r in out else v
            cols.append({r: v for r, v in out.items() if v != 0})
        return OperatorMatrix(self.basis, tuple(cols),
                              max(self.s_max, other.s_max),
                              min(self.win, other.win))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._scale(-Scalar.one(self.basis.cfg))

    def commutator(self, other):
        return self * other - other * self

    # ---- comparison on the exact window -------------------------------------

    def agrees_with(self, other):
        """(columns match on the joint window, that window)."""
        assert self.basis is other.basis
        w = min(self.win, other.win)
        for m, k in self.basis.columns(w):
            j = self.basis.col(m, k)
            if self.cols[j] != other.cols[j]:
                return False, w
        return True, w

    def column(self, m, k):
        return dict(self.cols[self.basis.col(m, k)])


def symmetrized_product(ops):
    """Sum of all orderings, composed as matrices."""
    total = None
    for perm in itertools.permutations(range(len(ops))):
        acc = None
        for i in reversed(perm):
            acc = ops[i] if acc is None else ops[i] * acc
        total = acc if total is None else total + acc
    return total


def realization_bracket_constants(cfg):
    """The symmetric-bracket table the superspace operators realize: the
    one-parameter spinor-plus-scalar solution pinned at b1_223 = 1."""
    half = Scalar.from_fraction(cfg, Fraction(1, 2))
    one = Scalar.one(cfg)
    return {(1, (2, 2, 3)): one,
            (2, (1, 1, 3)): -one,
            (3, (1, 2, 3)): half}


class Realization:
    """The n = 3 superspace operators on z^m theta^k."""

    def __init__(self, cfg, M):
        assert cfg.n == 3, "the built-in realization lives at n = 3"
        self.cfg = cfg
        self.basis = SuperspaceBasis(cfg, M)
        basis = self.basis

        q = Scalar.q_power(cfg, 1)
        half = Scalar.from_fraction(cfg, Fraction(1, 2))
        two = Scalar.from_fraction(cfg, 2)

        dz = OperatorMatrix.d_z(basis)
        mz = OperatorMatrix.mult_z(basis)
        D = OperatorMatrix.d_theta(basis)
        t2 = OperatorMatrix.mult_theta(basis, 2)

        # the grading operator is a consequence, not an input
        self.L = -(q * (two * (t2 * D * D) + D * t2 * D))
        self.K = self._grading_exponential()

        self.X = [-(mz * mz * dz) - mz * self.L,
                  dz,
                  two * (mz * dz) + self.L]
        self.Q = [D, -(mz * D), (q * half) * (t2 * dz)]

        self.algebra = builtin_algebra(cfg, "sl2")
        self.rep = builtin_representation(cfg, self.algebra,
                                          "spinor_plus_scalar")
        self.b = realization_bracket_constants(cfg)

    def _grading_exponential(self):
        """q^(-L), defined spectrally; requires L diagonal with integer
        eigenvalues, which agrees_with checks report separately."""
        cfg = self.cfg
        basis = self.basis
        cols = []
        for j in range(basis.dim):
            col = self.L.cols[j]
            assert set(col) <= {j}, "grading operator is not diagonal"
            v = col.get(j, Scalar.zero(cfg))
            for ell in range(cfg.n):
                if v == ell:
                    break
            else:
                raise AssertionError("grading eigenvalue is not an integer"
                                     " in 0..%d" % (cfg.n - 1))
            cols.append({j: Scalar.q_power(cfg, (-ell) % cfg.n)})
        return OperatorMatrix(basis, tuple(cols), 0, basis.M)


def _check(name, ok, window=None):
    out = {"name": name, "pass": bool(ok)}
    if window is not None:
        out["window"] = window
    return out


def verify_realization(cfg, M=8):
    """Exact matrix checks of every defining relation on the truncation
    windows, plus the adjudication of the two competing symmetric-bracket
    tables."""
    assert M >= 4, "windows need room: the cubic products cost 3 degrees"
    real = Realization(cfg, M)
    basis = real.basis
    n = cfg.n
    checks = []

    # L counts theta-degree
    ok = True
    for m, k in basis.columns():
        expect = {} if k == 0 else \
            {basis.col(m, k): Scalar.from_fraction(cfg, k)}
        ok &= real.L.column(m, k) == expect
    checks.append(_check("grading_counts_theta_degree", ok,
                         window=basis.M))

    # theta^2 D^2 + D^2 theta^2 + D theta^2 D = -q^2
    D = OperatorMatrix.d_theta(basis)
    t2 = OperatorMatrix.mult_theta(basis, 2)
    lhs = t2 * D * D + D * D * t2 + D * t2 * D
    rhs = (-Scalar.q_power(cfg, 2)) * OperatorMatrix.identity(basis)
    ok, w = lhs.agrees_with(rhs)
    checks.append(_check("theta_square_identity", ok, window=w))

    # K^n = 1 and the grading twists
    ident = OperatorMatrix.identity(basis)
    kn = real.K
    for _ in range(n - 1):
        kn = kn * real.K
    ok, w = kn.agrees_with(ident)
    checks.append(_check("grading_has_order_n", ok, window=w))

    q = Scalar.q_power(cfg, 1)
    ok = True
    wmin = basis.M
    for Qa in real.Q:
        good, w = (real.K * Qa).agrees_with(q * (Qa * real.K))
        ok &= good
        wmin = min(wmin, w)
    for Xi in real.X:
        good, w = (real.K * Xi).agrees_with(Xi * real.K)
        ok &= good
        wmin = min(wmin, w)
    checks.append(_check("grading_twists", ok, window=wmin))

    # the X bracket table
    g = real.algebra
    ok = True
    wmin = basis.M
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = real.X[i].commutator(real.X[j])
            rhs = OperatorMatrix.zero(basis)
            for k in range(g.dim):
                v = g.c[k][i][j]
                if v != 0:
                    rhs = rhs + v * real.X[k]
            good, w = lhs.agrees_with(rhs)
            ok &= good
            wmin = min(wmin, w)
    checks.append(_check("even_bracket_table", ok, window=wmin))

    # the module action [Q_a, X_j] = sum a^j_ab Q_b
    r = real.rep
    ok = True
    wmin = basis.M
    for a in range(r.N):
        for j in range(g.dim):
            lhs = real.Q[a].commutator(real.X[j])
            rhs = OperatorMatrix.zero(basis)
            for b2 in range(r.N):
                v = r.a[j][a][b2]
                if v != 0:
                    rhs = rhs + v * real.Q[b2]
            good, w = lhs.agrees_with(rhs)
            ok &= good
            wmin = min(wmin, w)
    checks.append(_check("module_action_table", ok, window=wmin))

    # every symmetric bracket, including the vanishing ones
    ok = True
    wmin = basis.M
    for mset in multi_indices(r.N, n):
        lhs = symmetrized_product([real.Q[a - 1] for a in mset])
        rhs = OperatorMatrix.zero(basis)
        for j in range(1, g.dim + 1):
            v = real.b.get((j, mset), Scalar.zero(cfg))
            if v != 0:
                rhs = rhs + v * real.X[j - 1]
        good, w = lhs.agrees_with(rhs)
        ok &= good
        wmin = min(wmin, w)
    checks.append(_check("symmetric_bracket_table", ok, window=wmin))

    # adjudication: the competing table puts the X_2 term on the 111
    # bracket instead of 113; the operators reject it
    s111 = symmetrized_product([real.Q[0]] * 3)
    zero = OperatorMatrix.zero(basis)
    ok_zero, w1 = s111.agrees_with(zero)
    variant_holds, w2 = s111.agrees_with(-real.X[1])
    checks.append(_check("variant_111_bracket_rejected",
                         ok_zero and not variant_holds,
                         window=min(w1, w2)))

    return {"n": n, "M": M, "dim": basis.dim,
            "bracket_constants": {"b%d_%s" % (j, "".join(map(str, m))):
                                  str(v)
                                  for (j, m), v in sorted(real.b.items())},
            "checks": checks,
            "pass": all(c["pass"] for c in checks)}
