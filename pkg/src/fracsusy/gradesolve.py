"""Admissible symmetric structure constants for graded extensions.

The graded bracket {Q_a1, ..., Q_an} = sum_j b^j_{a1..an} X_j is
constrained by two families of linear equations obtained by feeding
generators into the generalized Jacobi identities:

  (one X, n Q's)    sum_s sum_{cyclic} a^k_{a1 s} b^i_{s a2..an}
                        = sum_j c^i_{jk} b^j_{a1..an}
  (n+1 Q's)         sum_k sum_{cyclic} b^k_{a1..an} a^k_{a(n+1) t} = 0

Both are assembled exactly over the scalar field and solved by
fraction-free elimination.  The cyclic placement sum is the default
reading; a "symmetric" convention (full permutation sum, which rescales
the a-side of the first family by (n-1)!) is kept behind a flag.
"""

import itertools
import math
import random

from .freealg import K as _KGEN
from .freealg import NCPoly, Q, X, commutator, s_invariant_form
from .scalar import Scalar


def multi_indices(N, n):
    """Weakly increasing index tuples of length n over 1..N."""
    return list(itertools.combinations_with_replacement(range(1, N + 1), n))


def unknown_labels(dim, N, n):
    return [(j, idx) for j in range(1, dim + 1) for idx in multi_indices(N, n)]


def label_str(label):
    j, idx = label
    return "b%d_%s" % (j, "".join(str(i) for i in idx))


class LinearSystem:
    """Dense rows over the scalar field plus bookkeeping."""

    def __init__(self, cfg, labels):
        self.cfg = cfg
        self.labels = labels
        self.col = {lab: i for i, lab in enumerate(labels)}
        self.rows = []
        self.provenance = []  # (tag, key, [source index tuples])

    def add_row(self, tag, key, sources, coeffs):
        """Merge-aware append: rows from index tuples equivalent under the
        symmetry of b collapse to one row; all source tuples are kept."""
        for k, (t, existing_key, src) in enumerate(self.provenance):
            if t == tag and existing_key == key:
                assert self.rows[k] == coeffs, \
                    "inconsistent duplicate row for %s %s" % (tag, key)
                src.extend(sources)
                return
        self.rows.append(coeffs)
        self.provenance.append((tag, key, list(sources)))

    def counts(self):
        out = {}
        for tag, _, _ in self.provenance:
            out[tag] = out.get(tag, 0) + 1
        return out


def build_constraint_system(g, r, n, include=("snj1", "snj2"),
                            convention="cyclic"):
    assert convention in ("cyclic", "symmetric")
    cfg = g.cfg
    assert cfg.n == n
    N = r.N
    labels = unknown_labels(g.dim, N, n)
    sys = LinearSystem(cfg, labels)
    zero = Scalar.zero(cfg)
    one = Scalar.one(cfg)
    scale1 = (Scalar.from_fraction(cfg, math.factorial(n - 1))
              if convention == "symmetric" else one)
    scale2 = (Scalar.from_fraction(cfg, math.factorial(n))
              if convention == "symmetric" else one)

    if "snj1" in include:
        for tup in itertools.product(range(1, N + 1), repeat=n):
            key = tuple(sorted(tup))
            for i in range(1, g.dim + 1):
                for k in range(1, g.dim + 1):
                    coeffs = [zero] * len(labels)
                    for p in range(n):
                        al = tup[p]
                        rest = tup[:p] + tup[p + 1:]
                        for s in range(1, N + 1):
                            lab = (i, tuple(sorted(rest + (s,))))
                            v = r.a[k - 1][al - 1][s - 1]
                            if v != 0:
                                coeffs[sys.col[lab]] = (coeffs[sys.col[lab]]
                                                        + scale1 * v)
                    for j in range(1, g.dim + 1):
                        v = g.c[i - 1][j - 1][k - 1]
                        if v != 0:
                            lab = (j, key)
                            coeffs[sys.col[lab]] = coeffs[sys.col[lab]] - v
                    sys.add_row("snj1", (i, k, key), [tup], coeffs)

    if "snj2" in include:
        for tup in itertools.product(range(1, N + 1), repeat=n + 1):
            key = tuple(sorted(tup))
            for t in range(1, N + 1):
                coeffs = [zero] * len(labels)
                for p in range(n + 1):
                    al = tup[p]
                    rest = tuple(sorted(tup[:p] + tup[p + 1:]))
                    for k in range(1, g.dim + 1):
                        v = r.a[k - 1][al - 1][t - 1]
                        if v != 0:
                            lab = (k, rest)
                            coeffs[sys.col[lab]] = (coeffs[sys.col[lab]]
                                                    + scale2 * v)
                sys.add_row("snj2", (t, key), [tup], coeffs)

    return sys


# ---- exact linear algebra -------------------------------------------------


def echelon(rows, ncols, cfg):
    """Fraction-free (Bareiss) forward elimination.

    Pivots are chosen deterministically: columns left to right, first row
    with a nonzero entry.  Returns (matrix, pivot column list).
    """
    M = [list(row) for row in rows]
    zero = Scalar.zero(cfg)
    prev = Scalar.one(cfg)
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = None
        for rr in range(rank, len(M)):
            if M[rr][c] != 0:
                piv = rr
                break
        if piv is None:
            continue
        if piv != rank:
            M[rank], M[piv] = M[piv], M[rank]
        for rr in range(rank + 1, len(M)):
            if M[rr][c] == 0:
                continue
            for cc in range(c + 1, ncols):
                M[rr][cc] = (M[rank][c] * M[rr][cc]
                             - M[rr][c] * M[rank][cc]) / prev
            M[rr][c] = zero
        prev = M[rank][c]
        pivots.append(c)
        rank += 1
        if rank == len(M):
            break
    return M, pivots


def rref(rows, ncols, cfg):
    """Reduced row echelon form with unit pivots, deterministic pivoting.
    Returns (nonzero rows, pivot column list)."""
    M = [list(row) for row in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = None
        for rr in range(rank, len(M)):
            if M[rr][c] != 0:
                piv = rr
                break
        if piv is None:
            continue
        if piv != rank:
            M[rank], M[piv] = M[piv], M[rank]
        inv = M[rank][c]
        row = M[rank]
        for cc in range(c, ncols):
            if row[cc] != 0:
                row[cc] = row[cc] / inv
        for rr in range(len(M)):
            if rr == rank or M[rr][c] == 0:
                continue
            f = M[rr][c]
            other = M[rr]
            for cc in range(c, ncols):
                if row[cc] != 0:
                    other[cc] = other[cc] - f * row[cc]
        pivots.append(c)
        rank += 1
        if rank == len(M):
            break
    return M[:rank], pivots


def nullspace(rows, ncols, cfg):
    """Exact nullspace basis; one vector per free column, normalized so the
    free coordinate is 1."""
    M, pivots = echelon(rows, ncols, cfg)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    zero = Scalar.zero(cfg)
    one = Scalar.one(cfg)
    for f in free_cols:
        v = [zero] * ncols
        v[f] = one
        for rk in range(len(pivots) - 1, -1, -1):
            pc = pivots[rk]
            acc = zero
            row = M[rk]
            for cc in range(pc + 1, ncols):
                if row[cc] != 0 and v[cc] != 0:
                    acc = acc + row[cc] * v[cc]
            if acc != 0:
                v[pc] = -acc / row[pc]
        basis.append(v)
    return len(pivots), basis


def numeric_rank(rows, tol=1e-8):
    """Float-image rank through singular values; the cross-check oracle for
    the exact elimination (q -> exp(2 pi i / n), sqrt2 -> float)."""
    import numpy as np
    if not rows:
        return 0
    arr = np.array([[complex(v) for v in row] for row in rows],
                   dtype=complex)
    if arr.size == 0:
        return 0
    svals = np.linalg.svd(arr, compute_uv=False)
    return int((svals > tol).sum())


# ---- results ---------------------------------------------------------------


class GradedAlgebraSpec:
    """A chosen solution: the full symmetric b tensor."""

    def __init__(self, algebra, rep, n, b):
        self.algebra = algebra
        self.rep = rep
        self.n = n
        self.b = {lab: v for lab, v in b.items() if v != 0}

    def coeff(self, j, idx):
        return self.b.get((j, tuple(sorted(idx))),
                          Scalar.zero(self.algebra.cfg))

    def bracket_lines(self):
        """Human-readable {Q...} = sum b^j X_j relations, nonzero only."""
        byidx = {}
        for (j, idx), v in self.b.items():
            byidx.setdefault(idx, []).append((j, v))
        lines = []
        for idx in sorted(byidx):
            lhs = "{%s}" % ",".join("Q%d" % i for i in idx)
            parts = []
            for j, v in sorted(byidx[idx]):
                vs = str(v)
                if vs == "1":
                    parts.append("X%d" % j)
                elif "+" in vs or " - " in vs:
                    parts.append("(%s)*X%d" % (vs, j))
                else:
                    parts.append("%s*X%d" % (vs, j))
            lines.append("%s = %s" % (lhs, " + ".join(parts)))
        return lines

    def commutator_lines(self):
        """The induced [Q_a, X_j] = sum_b a^j_{ab} Q_b table, re-derived
        from the representation data."""
        lines = []
        for al in range(1, self.rep.N + 1):
            for j in range(1, self.algebra.dim + 1):
                parts = []
                for be in range(1, self.rep.N + 1):
                    v = self.rep.a[j - 1][al - 1][be - 1]
                    if v == 0:
                        continue
                    vs = str(v)
                    if vs == "1":
                        parts.append("Q%d" % be)
                    elif "+" in vs or " - " in vs:
                        parts.append("(%s)*Q%d" % (vs, be))
                    else:
                        parts.append("%s*Q%d" % (vs, be))
                rhs = " + ".join(parts) if parts else "0"
                lines.append("[Q%d, X%d] = %s" % (al, j, rhs))
        return lines


class SolveResult:
    def __init__(self, system, rank, basis, pin=None, normalized=None,
                 notes=None, convention="cyclic"):
        self.system = system
        self.rank = rank
        self.basis = basis          # list of coordinate vectors
        self.pin = pin
        self.normalized = normalized  # dict label -> Scalar, or None
        self.notes = notes or []
        self.convention = convention

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def labels(self):
        return self.system.labels

    def basis_dicts(self):
        out = []
        for v in self.basis:
            out.append({lab: c for lab, c in zip(self.labels, v) if c != 0})
        return out

    def spec(self, algebra, rep, n, vector=None):
        if vector is None:
            assert self.normalized is not None
            vector = self.normalized
        return GradedAlgebraSpec(algebra, rep, n, vector)


def solve_structure_constants(g, r, n, include=("snj1", "snj2"),
                              convention="cyclic", pin=None):
    """Build the system, take its exact nullspace, optionally normalize a
    one-parameter family by pinning one coefficient."""
    system = build_constraint_system(g, r, n, include=include,
                                     convention=convention)
    rank, basis = nullspace(system.rows, len(system.labels), system.cfg)
    notes = []
    normalized = None
    if pin is not None:
        label, value = pin
        if label not in system.col:
            raise ValueError("pin label %s out of range" % label_str(label))
        if len(basis) != 1:
            notes.append("pin %s ignored: solution space has dimension %d"
                         % (label_str(label), len(basis)))
        else:
            coord = basis[0][system.col[label]]
            if coord == 0:
                notes.append("pin %s ignored: that coordinate vanishes on "
                             "the solution line" % label_str(label))
            else:
                scale = value / coord
                normalized = {lab: c * scale
                              for lab, c in zip(system.labels, basis[0])
                              if c != 0}
    result = SolveResult(system, rank, basis, pin=pin, normalized=normalized,
                         notes=notes, convention=convention)
    # every basis vector must actually solve the system
    for v in basis:
        bad = residual_rows(system, v)
        assert not bad, "nullspace vector fails rows %s" % bad
    return result


def residual_rows(system, vector):
    """Indices of rows not annihilated by the coordinate vector."""
    bad = []
    for ri, row in enumerate(system.rows):
        acc = Scalar.zero(system.cfg)
        for c, v in zip(row, vector):
            if c != 0 and v != 0:
                acc = acc + c * v
        if acc != 0:
            bad.append(ri)
    return bad


def verify_graded_spec(g, r, n, b, include=("snj1", "snj2"),
                       convention="cyclic"):
    """Substitute a b tensor into the constraint rows.

    Returns (violations, system) where violations lists (tag, key, residual)
    for every row that fails.
    """
    system = build_constraint_system(g, r, n, include=include,
                                     convention=convention)
    vector = [b.get(lab, Scalar.zero(system.cfg)) for lab in system.labels]
    out = []
    for ri in residual_rows(system, vector):
        tag, key, _ = system.provenance[ri]
        acc = Scalar.zero(system.cfg)
        for c, v in zip(system.rows[ri], vector):
            acc = acc + c * v
        out.append((tag, key, acc))
    return out, system


# ---- generalized Jacobi identities in the free algebra ---------------------


def identity_j1(a, b, c):
    """[A,[B,C]] + [C,[A,B]] + [B,[C,A]]; identically zero."""
    return (commutator(a, commutator(b, c))
            + commutator(c, commutator(a, b))
            + commutator(b, commutator(c, a)))


def identity_j2(a, bs):
    """[A,{B1..Bn}] + sum_i {B1,..,[Bi,A],..,Bn}; identically zero."""
    total = commutator(a, s_invariant_form(bs))
    for i in range(len(bs)):
        args = list(bs)
        args[i] = commutator(bs[i], a)
        total = total + s_invariant_form(args)
    return total


def identity_j3(args):
    """n+1 arguments: [A1,{A2..}] + sum over swapping A1 into each slot;
    identically zero."""
    args = list(args)
    head, rest = args[0], args[1:]
    total = commutator(head, s_invariant_form(rest))
    for i in range(len(rest)):
        swapped = list(rest)
        swapped[i] = head
        total = total + commutator(rest[i], s_invariant_form(swapped))
    return total


def random_poly(cfg, rng, letters=None, max_terms=3, max_len=3):
    if letters is None:
        letters = [X(1), X(2), X(3), Q(1), Q(2), _KGEN]
    out = NCPoly.zero(cfg)
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
        c = Scalar.from_fraction(cfg, rng.randint(-3, 3))
        if rng.random() < 0.5:
            c = c + Scalar.q_power(cfg, rng.randint(1, cfg.n - 1))
        if rng.random() < 0.25:
            c = c * Scalar.sqrt2(cfg)
        if c == 0:
            c = Scalar.one(cfg)
        out = out + NCPoly.from_word(cfg, w, c)
    return out


def verify_identities(cfg, seed=0, samples=100):
    """Random free-algebra checks of the three generalized Jacobi
    identities; every residual must be exactly zero."""
    rng = random.Random(seed)
    n = cfg.n
    checks = []
    for name, fn, nargs in (
            ("j1", lambda xs: identity_j1(*xs), 3),
            ("j2", lambda xs: identity_j2(xs[0], xs[1:]), n + 1),
            ("j3", identity_j3, n + 1)):
        worst = 0
        for _ in range(samples):
            xs = [random_poly(cfg, rng) for _ in range(nargs)]
            res = fn(xs)
            worst = max(worst, len(res.terms))
        checks.append({"name": name, "samples": samples,
                       "max_residual_terms": worst, "pass": worst == 0})
    return {"checks": checks, "pass": all(c["pass"] for c in checks)}
