"""Free noncommutative polynomials over the exact scalar field.

Words are tuples of generators from one flat alphabet:

    X<i>   even (Lie) generators
    Q<a>   graded generators
    K      the grading unit
    th<a>  dual graded generators
    la     the dual grading unit
    x<nm>  dual matrix entries (group coordinates)
    z<a>   dual translation parameters

The only rewriting done here is grading normalization: K (resp. la)
letters migrate to the right end of every word, picking up one factor q
for each Q (resp. th) letter they cross, and K^n = la^n = 1.  Everything
else (symmetrized theta products, group relations) lives in the quotient
engines built on top.
"""

import itertools
from typing import NamedTuple

from .scalar import Scalar

U_KINDS = ("X", "Q", "K")
DUAL_KINDS = ("th", "la", "x", "z")
GRADING_KINDS = ("K", "la")   # migrate right
GRADED_KINDS = ("Q", "th")    # q-twist when crossed by a grading letter

_KIND_RANK = {"X": 0, "Q": 1, "K": 2, "th": 3, "la": 4, "x": 5, "z": 6}


class Generator(NamedTuple):
    kind: str
    index: object  # int for X/Q/th/z, (row, col) for x, None for K/la

    def render(self):
        if self.kind == "K":
            return "K"
        if self.kind == "la":
            return "la"
        if self.kind == "x":
            return "x%d%d" % self.index
        return "%s%d" % (self.kind, self.index)

    def sort_key(self):
        idx = self.index
        if idx is None:
            idx = ()
        elif isinstance(idx, int):
            idx = (idx,)
        return (_KIND_RANK[self.kind], idx)

    def __repr__(self):
        return self.render()


def gen(kind, index=None):
    if kind not in _KIND_RANK:
        raise ValueError("unknown generator kind %r" % kind)
    if kind in ("K", "la"):
        assert index is None, "%s carries no index" % kind
    elif kind == "x":
        assert (isinstance(index, tuple) and len(index) == 2
                and all(isinstance(i, int) and i >= 1 for i in index)), \
            "x index must be a pair of positive ints"
    else:
        assert isinstance(index, int) and index >= 1, \
            "%s index must be a positive int" % kind
    return Generator(kind, index)


def X(i):
    return gen("X", i)


def Q(a):
    return gen("Q", a)


K = gen("K")


def th(a):
    return gen("th", a)


la = gen("la")


def xg(n, m):
    return gen("x", (n, m))


def z(a):
    return gen("z", a)


def word_str(word):
    if not word:
        return "1"
    return " ".join(g.render() for g in word)


def word_sort_key(word):
    return (len(word), tuple(g.sort_key() for g in word))


def _normalize_word(cfg, word):
    """Push grading letters right; return (coeff_power_of_q, new_word)."""
    twists = 0
    kcount = 0
    lcount = 0
    rest = []
    for g in word:
        if g.kind == "K":
            kcount += 1
        elif g.kind == "la":
            lcount += 1
        else:
            if g.kind in GRADED_KINDS:
                twists += kcount + lcount
            rest.append(g)
    kcount %= cfg.n
    lcount %= cfg.n
    rest.extend([K] * kcount)
    rest.extend([la] * lcount)
    return twists, tuple(rest)


class NCPoly:
    """Finitely supported map word -> Scalar with concatenation product."""

    __slots__ = ("cfg", "terms")

    def __init__(self, cfg, terms=None):
        self.cfg = cfg
        clean = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[w] = clean[w] + c if w in clean else c
                    if not clean[w]:
                        del clean[w]
        self.terms = clean

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero(cfg):
        return NCPoly(cfg, {})

    @staticmethod
    def one(cfg):
        return NCPoly(cfg, {(): Scalar.one(cfg)})

    @staticmethod
    def from_word(cfg, word, coeff=None):
        coeff = Scalar.one(cfg) if coeff is None else coeff
        return NCPoly(cfg, {tuple(word): coeff})

    @staticmethod
    def from_gen(cfg, g):
        return NCPoly.from_word(cfg, (g,))

    # ---- inspection ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: word_sort_key(kv[0]))

    def kinds(self):
        return {g.kind for w in self.terms for g in w}

    # ---- arithmetic ----------------------------------------------------

    def _check(self, other):
        if other.cfg is not self.cfg:
            from .scalar import ScalarError
            raise ScalarError("mixing polynomials over different configs")

    def __add__(self, other):
        if isinstance(other, (int,)) and other == 0:
            return self
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCPoly(self.cfg, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.cfg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    out[w] = out[w] + c if w in out else c
            return NCPoly(self.cfg, out)
        # scalar multiple
        return NCPoly(self.cfg,
                      {w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, NCPoly):
            return NotImplemented
        return NCPoly(self.cfg,
                      {w: other * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.cfg is other.cfg and self.terms == other.terms

    def __hash__(self):
        return hash((self.cfg.n, frozenset(self.terms.items())))

    # ---- grading normal form -------------------------------------------

    def normalize_grading(self):
        cfg = self.cfg
        out = {}
        for w, c in self.terms.items():
            twists, nw = _normalize_word(cfg, w)
            if twists:
                c = c * Scalar.q_power(cfg, twists)
            out[nw] = out[nw] + c if nw in out else c
        return NCPoly(cfg, out)

    # ---- rendering ------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for w, c in self.sorted_terms():
            cs = str(c)
            ws = word_str(w)
            if ws == "1":
                body = cs
                neg = cs.startswith("-") and "+" not in cs and " - " not in cs
                if neg:
                    body = cs[1:]
                chunks.append((neg, body))
                continue
            if cs == "1":
                chunks.append((False, ws))
            elif cs == "-1":
                chunks.append((True, ws))
            elif "+" in cs or " - " in cs:
                chunks.append((False, "(%s)*%s" % (cs, ws)))
            elif cs.startswith("-"):
                chunks.append((True, "%s*%s" % (cs[1:], ws)))
            else:
                chunks.append((False, "%s*%s" % (cs, ws)))
        out = []
        for i, (neg, body) in enumerate(chunks):
            if i == 0:
                out.append("-" + body if neg else body)
            else:
                out.append(" - " + body if neg else " + " + body)
        return "".join(out)

    def __repr__(self):
        return "<NCPoly %s>" % self


def commutator(a, b):
    return a * b - b * a


def anticommutator(a, b):
    return a * b + b * a


def s_invariant_form(args):
    """S_n invariant bracket: sum over all permutations of the product.

    Takes exactly n = cfg.n arguments.  For n = 2 this is the
    anticommutator; for n = 3 the sum of each argument times the
    anticommutator of the other two (the two expansions agree, and we
    assert as much below).
    """
    args = list(args)
    assert args, "empty invariant form"
    cfg = args[0].cfg
    n = cfg.n
    assert len(args) == n, \
        "invariant form takes n=%d arguments, got %d" % (n, len(args))
    total = NCPoly.zero(cfg)
    for perm in itertools.permutations(range(n)):
        prod = NCPoly.one(cfg)
        for i in perm:
            prod = prod * args[i]
        total = total + prod
    if n == 2:
        assert total == anticommutator(args[0], args[1])
    elif n == 3:
        a, b, c = args
        displayed = (a * anticommutator(b, c) + b * anticommutator(a, c)
                     + c * anticommutator(a, b))
        assert total == displayed
    return total


class TensorPoly:
    """Element of the k-fold tensor power; multiplication is componentwise
    with no crossing signs (the grading is carried by explicit K factors)."""

    __slots__ = ("cfg", "arity", "terms")

    def __init__(self, cfg, arity, terms=None):
        self.cfg = cfg
        self.arity = arity
        clean = {}
        if terms:
            for ws, c in terms.items():
                assert len(ws) == arity
                if c:
                    clean[ws] = clean[ws] + c if ws in clean else c
                    if not clean[ws]:
                        del clean[ws]
        self.terms = clean

    @staticmethod
    def zero(cfg, arity):
        return TensorPoly(cfg, arity, {})

    @staticmethod
    def one(cfg, arity):
        key = tuple(() for _ in range(arity))
        return TensorPoly(cfg, arity, {key: Scalar.one(cfg)})

    @staticmethod
    def tensor(factors):
        """Outer product of NCPolys into a TensorPoly."""
        factors = list(factors)
        assert factors
        cfg = factors[0].cfg
        keys = [((), Scalar.one(cfg))]
        for f in factors:
            nxt = []
            for ws, c in keys:
                for w, c2 in f.terms.items():
                    nxt.append((ws + (w,), c * c2))
            keys = nxt
        return TensorPoly(cfg, len(factors),
                          {ws: c for ws, c in keys})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        assert self.cfg is other.cfg and self.arity == other.arity, \
            "tensor arity/config mismatch"

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for ws, c in other.terms.items():
            out[ws] = out[ws] + c if ws in out else c
        return TensorPoly(self.cfg, self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorPoly(self.cfg, self.arity,
                          {ws: -c for ws, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorPoly):
            self._check(other)
            out = {}
            for ws1, c1 in self.terms.items():
                for ws2, c2 in other.terms.items():
                    ws = tuple(a + b for a, b in zip(ws1, ws2))
                    c = c1 * c2
                    out[ws] = out[ws] + c if ws in out else c
            return TensorPoly(self.cfg, self.arity, out)
        return TensorPoly(self.cfg, self.arity,
                          {ws: c * other for ws, c in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, TensorPoly):
            return NotImplemented
        return self * other

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return (self.cfg is other.cfg and self.arity == other.arity
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.cfg.n, self.arity,
                     frozenset(self.terms.items())))

    def normalize_grading(self):
        cfg = self.cfg
        out = {}
        for ws, c in self.terms.items():
            nws = []
            for w in ws:
                twists, nw = _normalize_word(cfg, w)
                if twists:
                    c = c * Scalar.q_power(cfg, twists)
                nws.append(nw)
            key = tuple(nws)
            out[key] = out[key] + c if key in out else c
        return TensorPoly(cfg, self.arity, out)

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: tuple(word_sort_key(w) for w in kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for ws, c in self.sorted_terms():
            body = " (x) ".join(word_str(w) for w in ws)
            cs = str(c)
            if cs == "1":
                chunks.append(body)
            elif "+" in cs or " - " in cs or cs.startswith("-"):
                chunks.append("(%s)*[%s]" % (cs, body))
            else:
                chunks.append("%s*[%s]" % (cs, body))
        return "  +  ".join(chunks)

    def __repr__(self):
        return "<TensorPoly arity=%d %s>" % (self.arity, self)
