"""Bialgebra structure on the graded envelope and its exact verification.

On generators:

    coproduct(X) = X (x) 1 + 1 (x) X
    coproduct(Q) = Q (x) 1 + K (x) Q
    coproduct(K) = K (x) K
    counit(X) = counit(Q) = 0,   counit(K) = 1
    antipode(X) = -X,  antipode(Q) = -K^(n-1) Q,  antipode(K) = K^(n-1)

The coproduct extends multiplicatively (the tensor product multiplies
componentwise; all grading bookkeeping is carried by the explicit K
letters), the counit multiplicatively, the antipode anti-multiplicatively.
The central fact checked here: the invariant n-linear form of the Q's is
primitive -- every mixed term of its coproduct cancels exactly, through
1 + q + ... + q^(n-1) = 0 and the vanishing Gaussian binomials.
"""

import itertools
import random

from .freealg import K as KGEN
from .freealg import NCPoly, Q, TensorPoly, X, s_invariant_form
from .scalar import Scalar


def gauss_binomial(cfg, m, j, _memo={}):
    """Gaussian binomial coefficient at the grading root of unity, via the
    division-free Pascal recursion  [m,j] = [m-1,j-1] + q^j [m-1,j]."""
    if j < 0 or j > m:
        return Scalar.zero(cfg)
    if j == 0 or j == m:
        return Scalar.one(cfg)
    key = (cfg.n, m, j)
    if key not in _memo:
        _memo[key] = (gauss_binomial(cfg, m - 1, j - 1)
                      + Scalar.q_power(cfg, j) * gauss_binomial(cfg, m - 1, j))
    return _memo[key]


class HopfStructure:
    """Coproduct, counit and antipode on polynomials in X, Q, K."""

    def __init__(self, cfg):
        self.cfg = cfg

    # ---- generators ------------------------------------------------------

    def coproduct_gen(self, g):
        cfg = self.cfg
        one = NCPoly.one(cfg)
        p = NCPoly.from_gen(cfg, g)
        if g.kind == "K":
            return TensorPoly.tensor([p, p])
        if g.kind == "X":
            return TensorPoly.tensor([p, one]) + TensorPoly.tensor([one, p])
        if g.kind == "Q":
            kp = NCPoly.from_gen(cfg, KGEN)
            return TensorPoly.tensor([p, one]) + TensorPoly.tensor([kp, p])
        raise ValueError("no coproduct defined for letter %r" % (g,))

    def counit_gen(self, g):
        if g.kind == "K":
            return Scalar.one(self.cfg)
        if g.kind in ("X", "Q"):
            return Scalar.zero(self.cfg)
        raise ValueError("no counit defined for letter %r" % (g,))

    def antipode_gen(self, g):
        cfg = self.cfg
        kinv = (KGEN,) * (cfg.n - 1)
        if g.kind == "K":
            return NCPoly.from_word(cfg, kinv)
        if g.kind == "X":
            return -NCPoly.from_gen(cfg, g)
        if g.kind == "Q":
            return -NCPoly.from_word(cfg, kinv + (g,))
        raise ValueError("no antipode defined for letter %r" % (g,))

    # ---- multiplicative extensions ----------------------------------------

    def coproduct(self, poly):
        cfg = self.cfg
        out = TensorPoly.zero(cfg, 2)
        for w, c in poly.terms.items():
            acc = TensorPoly.one(cfg, 2)
            for g in w:
                acc = acc * self.coproduct_gen(g)
            out = out + c * acc
        return out.normalize_grading()

    def counit(self, poly):
        total = Scalar.zero(self.cfg)
        for w, c in poly.terms.items():
            for g in w:
                c = c * self.counit_gen(g)
                if c == 0:
                    break
            total = total + c
        return total

    def antipode(self, poly):
        cfg = self.cfg
        out = NCPoly.zero(cfg)
        for w, c in poly.terms.items():
            acc = NCPoly.one(cfg)
            for g in reversed(w):
                acc = acc * self.antipode_gen(g)
            out = out + c * acc
        return out.normalize_grading()

    # ---- iterated coproduct ------------------------------------------------

    def coproduct_in_slot(self, tp, slot):
        """Apply the coproduct to one tensor slot, raising the arity by 1."""
        cfg = self.cfg
        out = {}
        for ws, c in tp.terms.items():
            acc = TensorPoly.one(cfg, 2)
            for g in ws[slot]:
                acc = acc * self.coproduct_gen(g)
            for (w1, w2), c2 in acc.terms.items():
                key = ws[:slot] + (w1, w2) + ws[slot + 1:]
                cc = c * c2
                out[key] = out[key] + cc if key in out else cc
        return TensorPoly(cfg, tp.arity + 1, out).normalize_grading()


# ---- axiom defects ----------------------------------------------------------


def coassociativity_defect(hopf, poly):
    d = hopf.coproduct(poly)
    left = hopf.coproduct_in_slot(d, 0)
    right = hopf.coproduct_in_slot(d, 1)
    return left - right


def counit_defects(hopf, poly):
    cfg = hopf.cfg
    d = hopf.coproduct(poly)
    left = NCPoly.zero(cfg)
    right = NCPoly.zero(cfg)
    for (w1, w2), c in d.terms.items():
        e1 = hopf.counit(NCPoly.from_word(cfg, w1))
        if e1 != 0:
            left = left + NCPoly.from_word(cfg, w2, c * e1)
        e2 = hopf.counit(NCPoly.from_word(cfg, w2))
        if e2 != 0:
            right = right + NCPoly.from_word(cfg, w1, c * e2)
    base = poly.normalize_grading()
    return (left.normalize_grading() - base,
            right.normalize_grading() - base)


def antipode_defects(hopf, poly):
    cfg = hopf.cfg
    d = hopf.coproduct(poly)
    left = NCPoly.zero(cfg)
    right = NCPoly.zero(cfg)
    for (w1, w2), c in d.terms.items():
        left = left + c * (hopf.antipode(NCPoly.from_word(cfg, w1))
                           * NCPoly.from_word(cfg, w2))
        right = right + c * (NCPoly.from_word(cfg, w1)
                             * hopf.antipode(NCPoly.from_word(cfg, w2)))
    target = hopf.counit(poly) * NCPoly.one(cfg)
    return (left.normalize_grading() - target,
            right.normalize_grading() - target)


# ---- structural checks -------------------------------------------------------


def power_coproduct_defect(hopf, m):
    """coproduct(Q^m) against the closed Gaussian form
    sum_j [m,j] Q^(m-j) K^j (x) Q^j."""
    cfg = hopf.cfg
    qw = NCPoly.from_word(cfg, (Q(1),) * m)
    expected = TensorPoly.zero(cfg, 2)
    for j in range(m + 1):
        coeff = gauss_binomial(cfg, m, j)
        if coeff == 0:
            continue
        lhsw = NCPoly.from_word(cfg, (Q(1),) * (m - j) + (KGEN,) * j)
        rhsw = NCPoly.from_word(cfg, (Q(1),) * j)
        expected = expected + coeff * TensorPoly.tensor([lhsw, rhsw])
    return hopf.coproduct(qw) - expected.normalize_grading()


def invariant_form_coproduct(cfg, indices):
    """Coproduct of the invariant form minus its primitive part,
    split by the number of Q letters landing in the right slot.

    A fully cancelling mixed part is the exact statement that the
    symmetrized bracket descends to the tensor square.
    """
    hopf = HopfStructure(cfg)
    n = cfg.n
    assert len(indices) == n
    form = s_invariant_form([NCPoly.from_gen(cfg, Q(a)) for a in indices])
    d = hopf.coproduct(form)
    one = NCPoly.one(cfg)
    primitive = (TensorPoly.tensor([form, one])
                 + TensorPoly.tensor([one, form])).normalize_grading()
    defect = d - primitive
    splits = {j: 0 for j in range(1, n)}
    for (w1, w2), c in defect.terms.items():
        j = sum(1 for g in w2 if g.kind == "Q")
        splits[j] = splits.get(j, 0) + 1
    return defect, splits


def verify_invariant_form_primitive(cfg, N):
    """All index tuples over 1..N: the mixed coproduct terms must vanish."""
    results = []
    for tup in itertools.product(range(1, N + 1), repeat=cfg.n):
        defect, splits = invariant_form_coproduct(cfg, tup)
        results.append({"indices": list(tup),
                        "mixed_terms_by_right_q_count": splits,
                        "residual_terms": len(defect.terms),
                        "pass": defect.is_zero()})
    return {"N": N, "tuples": results,
            "pass": all(r["pass"] for r in results)}


def _random_word_poly(cfg, rng, letters, max_terms=2, max_len=3):
    out = NCPoly.zero(cfg)
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
        c = Scalar.from_fraction(cfg, rng.randint(-2, 2))
        if rng.random() < 0.5:
            c = c + Scalar.q_power(cfg, rng.randint(1, cfg.n - 1))
        if c == 0:
            c = Scalar.one(cfg)
        out = out + NCPoly.from_word(cfg, w, c)
    return out


def verify_hopf_axioms(cfg, seed=0, samples=12):
    """Counit, antipode and coassociativity axioms, exactly, on all
    generators and on seeded random polynomials; plus well-definedness of
    the three maps with respect to the grading rewrite rules."""
    hopf = HopfStructure(cfg)
    letters = [X(1), X(2), X(3), Q(1), Q(2), KGEN]
    gens = [NCPoly.from_gen(cfg, g) for g in letters]
    rng = random.Random(seed)
    polys = list(gens)
    polys.append(NCPoly.from_gen(cfg, Q(1)) * NCPoly.from_gen(cfg, Q(2)))
    polys.append(NCPoly.from_gen(cfg, KGEN) * NCPoly.from_gen(cfg, Q(1)))
    for _ in range(samples):
        polys.append(_random_word_poly(cfg, rng, letters))

    checks = []

    def record(name, ok):
        checks.append({"name": name, "pass": bool(ok)})

    all_counit = all_antipode = all_coassoc = True
    for p in polys:
        cl, cr = counit_defects(hopf, p)
        al, ar = antipode_defects(hopf, p)
        all_counit &= cl.is_zero() and cr.is_zero()
        all_antipode &= al.is_zero() and ar.is_zero()
        all_coassoc &= coassociativity_defect(hopf, p).is_zero()
    record("counit_both_sides", all_counit)
    record("antipode_both_sides", all_antipode)
    record("coassociativity", all_coassoc)

    # antipode reverses products
    ok = True
    for _ in range(samples):
        u = _random_word_poly(cfg, rng, letters)
        v = _random_word_poly(cfg, rng, letters)
        lhs = hopf.antipode(u * v)
        rhs = (hopf.antipode(v) * hopf.antipode(u)).normalize_grading()
        ok &= lhs == rhs
    record("antipode_reverses_products", ok)

    # the maps descend through the grading rewrite (KQ = q QK etc.)
    ok = True
    for _ in range(samples):
        u = _random_word_poly(cfg, rng, letters)
        un = u.normalize_grading()
        ok &= hopf.coproduct(u) == hopf.coproduct(un)
        ok &= hopf.antipode(u) == hopf.antipode(un)
        ok &= hopf.counit(u) == hopf.counit(un)
    record("maps_respect_grading_rewrite", ok)

    # Q-power coproducts match the closed Gaussian form
    ok = True
    for m in range(1, 2 * cfg.n):
        ok &= power_coproduct_defect(hopf, m).is_zero()
    record("q_power_gaussian_form", ok)

    return {"n": cfg.n, "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def verify_classical_degeneration(cfg):
    """At n = 2 the structure collapses to the familiar super one:
    K squares to 1, the antipode sends Q to QK, and the symmetrized
    bracket of two Q's is primitive."""
    assert cfg.n == 2
    hopf = HopfStructure(cfg)
    checks = []

    k2 = NCPoly.from_word(cfg, (KGEN, KGEN)).normalize_grading()
    checks.append({"name": "K_squares_to_one",
                   "pass": k2 == NCPoly.one(cfg)})

    sq = hopf.antipode(NCPoly.from_gen(cfg, Q(1)))
    qk = NCPoly.from_word(cfg, (Q(1), KGEN))
    checks.append({"name": "antipode_Q_is_QK", "pass": sq == qk})

    ok = True
    for a, b in itertools.product((1, 2), repeat=2):
        defect, _ = invariant_form_coproduct(cfg, (a, b))
        ok &= defect.is_zero()
    checks.append({"name": "anticommutator_primitive", "pass": ok})

    return {"n": 2, "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def hopf_report(cfg, N_max=3, seed=0):
    """Everything the service exposes for the enveloping side."""
    report = {"n": cfg.n,
              "axioms": verify_hopf_axioms(cfg, seed=seed),
              "invariant_form": [verify_invariant_form_primitive(cfg, N)
                                 for N in range(1, N_max + 1)]}
    if cfg.n == 2:
        report["classical_degeneration"] = verify_classical_degeneration(cfg)
    report["pass"] = (report["axioms"]["pass"]
                      and all(r["pass"] for r in report["invariant_form"])
                      and report.get("classical_degeneration",
                                     {"pass": True})["pass"])
    return report
