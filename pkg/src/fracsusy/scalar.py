"""Exact coefficient field for the graded kernel.

Elements live in Q(q) (x) Q(sqrt2) where q is a primitive n-th root of
unity.  An element is stored as a grid of rationals indexed by
(power of q, power of sqrt2): q-powers run 0..deg-1 with deg = totient(n)
(reduction modulo the n-th cyclotomic polynomial), sqrt2-powers run 0..1
(reduction via s^2 = 2).  No floating point anywhere in here; the complex
embedding exists only so that tests can cross-check against numerics.
"""

from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


class ScalarError(ArithmeticError):
    """Raised for invalid scalar arithmetic (bad division, config mixing)."""


class ScalarParseError(ValueError):
    """Raised when a scalar literal cannot be parsed."""


def _polydiv_exact(num, den):
    """Divide polynomial num by monic den (coeff lists, low to high).

    The remainder must be zero; used only for building cyclotomics.
    """
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1
    out = [_F0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        out[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert all(c == 0 for c in num[:dn]), "non-exact polynomial division"
    return out


_CYCLO_CACHE = {}


def cyclotomic_coeffs(n):
    """Coefficients (low to high, monic, exact rationals) of the n-th
    cyclotomic polynomial, computed by dividing x^n - 1 by all proper
    cyclotomic divisors."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    poly = [Fraction(-1)] + [_F0] * (n - 1) + [_F1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, cyclotomic_coeffs(d))
    out = tuple(poly)
    _CYCLO_CACHE[n] = out
    return out


_CONFIG_CACHE = {}


class CyclotomicConfig:
    """Shared context: order n, the reduction polynomial and power tables.

    Configs are interned per n, so identity comparison is enough to detect
    mixing of scalars from different gradings.
    """

    def __init__(self, n):
        assert n >= 1
        self.n = n
        self.phi = cyclotomic_coeffs(n)
        self.deg = len(self.phi) - 1
        # q^m reduced mod phi, for every power a product can produce
        top = max(2 * self.deg - 1, n)
        table = []
        vec = [_F1] + [_F0] * (self.deg - 1)
        for _ in range(top):
            table.append(tuple(vec))
            # multiply by q
            carry = vec[-1]
            vec = [_F0] + vec[:-1]
            if carry:
                for j in range(self.deg):
                    vec[j] -= carry * self.phi[j]
        self.qpow_table = table

    def __repr__(self):
        return "CyclotomicConfig(n=%d)" % self.n


def get_config(n):
    if n not in _CONFIG_CACHE:
        _CONFIG_CACHE[n] = CyclotomicConfig(n)
    return _CONFIG_CACHE[n]


def _poly_mul_reduce(a, b, cfg):
    """Product of two q-coefficient vectors, reduced mod phi_n."""
    deg = cfg.deg
    prod = [_F0] * (2 * deg - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                prod[i + j] += ai * bj
    out = [_F0] * deg
    for m, c in enumerate(prod):
        if c:
            row = cfg.qpow_table[m]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return out


def _poly_inv(a, cfg):
    """Inverse of a q-coefficient vector modulo phi_n (extended Euclid)."""
    if all(c == 0 for c in a):
        raise ZeroDivisionError("scalar division by zero")
    # extended gcd over Q[x] of a and phi
    r0 = list(cfg.phi)
    r1 = list(a)
    t0 = [_F0]
    t1 = [_F1]

    def degree(p):
        for i in range(len(p) - 1, -1, -1):
            if p[i]:
                return i
        return -1

    def shrink(p):
        d = degree(p)
        return p[: d + 1] if d >= 0 else [_F0]

    r0, r1 = shrink(r0), shrink(r1)
    while degree(r1) > 0:
        # divide r0 by r1
        quo = [_F0] * (degree(r0) - degree(r1) + 1)
        rem = list(r0)
        lead = r1[degree(r1)]
        for i in range(degree(r0), degree(r1) - 1, -1):
            if i > degree(rem) or not rem[i]:
                continue
            c = rem[i] / lead
            quo[i - degree(r1)] = c
            for j in range(degree(r1) + 1):
                rem[i - degree(r1) + j] -= c * r1[j]
        rem = shrink(rem)
        # t0, t1 = t1, t0 - quo*t1
        qt = [_F0] * (len(quo) + len(t1) - 1)
        for i, qi in enumerate(quo):
            if qi:
                for j, tj in enumerate(t1):
                    if tj:
                        qt[i + j] += qi * tj
        nt = [_F0] * max(len(t0), len(qt))
        for i, c in enumerate(t0):
            nt[i] += c
        for i, c in enumerate(qt):
            nt[i] -= c
        r0, r1, t0, t1 = r1, rem, t1, shrink(nt)
    if degree(r1) != 0 or not r1[0]:
        raise ZeroDivisionError(
            "scalar has no inverse in Q(q) (x) Q(sqrt2) for n=%d" % cfg.n)
    c = r1[0]
    out = [_F0] * cfg.deg
    for i, ti in enumerate(t1):
        if ti:
            out[i] = ti / c
    return out


class Scalar:
    """One exact field element.  Immutable; all ops return new Scalars."""

    __slots__ = ("cfg", "grid", "_hash")

    def __init__(self, cfg, grid):
        self.cfg = cfg
        self.grid = grid  # tuple[deg] of (s0, s1) Fraction pairs
        self._hash = None

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero(cfg):
        return Scalar(cfg, tuple((_F0, _F0) for _ in range(cfg.deg)))

    @staticmethod
    def from_fraction(cfg, value):
        value = Fraction(value)
        rows = [(value, _F0)] + [(_F0, _F0)] * (cfg.deg - 1)
        return Scalar(cfg, tuple(rows))

    @staticmethod
    def one(cfg):
        return Scalar.from_fraction(cfg, 1)

    @staticmethod
    def q_power(cfg, k):
        k %= cfg.n
        vec = cfg.qpow_table[k]
        return Scalar(cfg, tuple((vec[i], _F0) for i in range(cfg.deg)))

    @staticmethod
    def sqrt2(cfg):
        rows = [(_F0, _F1)] + [(_F0, _F0)] * (cfg.deg - 1)
        return Scalar(cfg, tuple(rows))

    # ---- helpers ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.cfg is not self.cfg:
                raise ScalarError("mixing scalars from different configs "
                                  "(n=%d vs n=%d)" % (self.cfg.n, other.cfg.n))
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_fraction(self.cfg, other)
        return None

    def is_zero(self):
        return all(a == 0 and b == 0 for a, b in self.grid)

    def is_one(self):
        return self == 1

    def is_rational(self):
        if self.grid[0][1]:
            return False
        return all(a == 0 and b == 0 for a, b in self.grid[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise ScalarError("scalar %s is not rational" % self)
        return self.grid[0][0]

    def __bool__(self):
        return not self.is_zero()

    # ---- ring ops -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.cfg, tuple(
            (a0 + b0, a1 + b1)
            for (a0, a1), (b0, b1) in zip(self.grid, other.grid)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.cfg, tuple((-a, -b) for a, b in self.grid))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        cfg = self.cfg
        a0 = [r[0] for r in self.grid]
        a1 = [r[1] for r in self.grid]
        b0 = [r[0] for r in other.grid]
        b1 = [r[1] for r in other.grid]
        # (a0 + a1 s)(b0 + b1 s) with s^2 = 2
        c0 = _poly_mul_reduce(a0, b0, cfg)
        cross = _poly_mul_reduce(a1, b1, cfg)
        for i in range(cfg.deg):
            c0[i] += 2 * cross[i]
        c1 = _poly_mul_reduce(a0, b1, cfg)
        c1b = _poly_mul_reduce(a1, b0, cfg)
        for i in range(cfg.deg):
            c1[i] += c1b[i]
        return Scalar(cfg, tuple((c0[i], c1[i]) for i in range(cfg.deg)))

    __rmul__ = __mul__

    def inv(self):
        """Multiplicative inverse.  Raises ZeroDivisionError for zero (and
        for the zero divisors that appear when 8 | n and sqrt2 is already
        in Q(q))."""
        cfg = self.cfg
        a0 = [r[0] for r in self.grid]
        a1 = [r[1] for r in self.grid]
        # (a0 + a1 s)^-1 = (a0 - a1 s) / (a0^2 - 2 a1^2)
        d = _poly_mul_reduce(a0, a0, cfg)
        d2 = _poly_mul_reduce(a1, a1, cfg)
        for i in range(cfg.deg):
            d[i] -= 2 * d2[i]
        if all(c == 0 for c in d):
            if self.is_zero():
                raise ZeroDivisionError("scalar division by zero")
            raise ZeroDivisionError(
                "scalar %s is a zero divisor (sqrt2 lies in Q(q) for n=%d)"
                % (self, cfg.n))
        dinv = _poly_inv(d, cfg)
        c0 = _poly_mul_reduce(a0, dinv, cfg)
        c1 = _poly_mul_reduce([-c for c in a1], dinv, cfg)
        return Scalar(cfg, tuple((c0[i], c1[i]) for i in range(cfg.deg)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = self.inv()
            k = -k
        out = Scalar.one(self.cfg)
        for _ in range(k):
            out = out * base
        return out

    # ---- comparison / hashing -----------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.grid == other.grid

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.grid[0][0])
            else:
                self._hash = hash((self.cfg.n, self.grid))
        return self._hash

    # ---- embeddings / rendering ----------------------------------------

    def __complex__(self):
        import cmath
        q = cmath.exp(2j * cmath.pi / self.cfg.n)
        s = 1.4142135623730951
        total = 0j
        for i, (a, b) in enumerate(self.grid):
            if a or b:
                total += (float(a) + float(b) * s) * q ** i
        return total

    def grid_strings(self):
        """Canonical serialized form: rows by q-power, columns by s-power."""
        return [[str(a), str(b)] for a, b in self.grid]

    def __str__(self):
        parts = []
        for i, (a, b) in enumerate(self.grid):
            for j, c in enumerate((a, b)):
                if not c:
                    continue
                syms = []
                if i == 1:
                    syms.append("q")
                elif i > 1:
                    syms.append("q^%d" % i)
                if j == 1:
                    syms.append("r2")
                if not syms:
                    parts.append((c, str(abs(c))))
                    continue
                if abs(c) == 1:
                    body = "*".join(syms)
                else:
                    body = "*".join([str(abs(c))] + syms)
                parts.append((c, body))
        if not parts:
            return "0"
        out = []
        for k, (c, body) in enumerate(parts):
            if k == 0:
                out.append("-" + body if c < 0 else body)
            else:
                out.append(" - " + body if c < 0 else " + " + body)
        return "".join(out)

    def __repr__(self):
        return "<Scalar %s (n=%d)>" % (self, self.cfg.n)


# ---- literal parser -----------------------------------------------------
#
# grammar:  expr   := term (('+'|'-') term)*
#           term   := factor ('*' factor)*
#           factor := '-' factor | atom
#           atom   := rational | 'q' ['^' int] | 'r2' | '(' expr ')'
#           rational := int ['/' int]


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if text.startswith("r2", i):
            tokens.append(("r2", "r2", i))
            i += 2
            continue
        if ch == "q":
            tokens.append(("q", "q", i))
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ScalarParseError("bad character %r at position %d in scalar "
                               "literal %r" % (ch, i, text))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, cfg, tokens, text):
        self.cfg = cfg
        self.toks = tokens
        self.pos = 0
        self.text = text

    def peek(self):
        return self.toks[self.pos][0]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ScalarParseError(
                "expected %s at position %d in %r, found %r"
                % (kind, tok[2], self.text, tok[1] or "end of input"))
        self.pos += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        if self.peek() == "-":
            self.take()
            return -self.factor()
        return self.atom()

    def atom(self):
        kind = self.peek()
        if kind == "int":
            num = int(self.take()[1])
            if self.peek() == "/":
                self.take()
                den = int(self.take("int")[1])
                if den == 0:
                    raise ScalarParseError(
                        "zero denominator in %r" % self.text)
                return Scalar.from_fraction(self.cfg, Fraction(num, den))
            return Scalar.from_fraction(self.cfg, num)
        if kind == "q":
            self.take()
            k = 1
            if self.peek() == "^":
                self.take()
                neg = False
                if self.peek() == "-":
                    self.take()
                    neg = True
                k = int(self.take("int")[1])
                if neg:
                    k = -k
            return Scalar.q_power(self.cfg, k)
        if kind == "r2":
            self.take()
            return Scalar.sqrt2(self.cfg)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        tok = self.toks[self.pos]
        raise ScalarParseError("unexpected %r at position %d in %r"
                               % (tok[1] or "end of input", tok[2], self.text))


def parse_scalar(cfg, text):
    """Parse a scalar literal such as '-4*r2', '1/2 + q^2' or '(1-q)*r2'."""
    parser = _Parser(cfg, _tokenize(text), text)
    value = parser.expr()
    parser.take("end")
    return value


# ---- q-analogs -----------------------------------------------------------


def q_pochhammer(cfg, k):
    """(q;q)_k = prod_{j=1..k} (1 - q^j).  Zero exactly when k >= n."""
    assert k >= 0
    out = Scalar.one(cfg)
    for j in range(1, k + 1):
        out = out * (Scalar.one(cfg) - Scalar.q_power(cfg, j))
    return out


def q_int(cfg, k):
    """[k]_q = 1 + q + ... + q^(k-1)."""
    assert k >= 0
    out = Scalar.zero(cfg)
    for j in range(k):
        out = out + Scalar.q_power(cfg, j)
    return out
