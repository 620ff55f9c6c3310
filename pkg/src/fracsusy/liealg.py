"""Lie algebra data: structure constants, representations, input files.

Structure constants follow [X_i, X_j] = sum_k c^k_ij X_k and a
representation is a family of matrices with [a^i, a^j] = sum_k c^k_ij a^k,
acting on the graded generators through [Q_alpha, X_j] = sum_beta
a^j_{alpha beta} Q_beta.  Indices are 1-based in files and reports,
0-based in storage.
"""

from .scalar import Scalar, ScalarParseError, get_config, parse_scalar


class SpecFileError(ValueError):
    """Input file rejected; .diagnostics is a list of (line, message)."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join("line %s: %s" % (ln if ln else "?", msg)
                          for ln, msg in self.diagnostics)
        super().__init__(lines)


class LieAlgebraData:
    """dim and the full antisymmetric tensor c[k][i][j] of Scalars."""

    def __init__(self, cfg, dim, c, name=None):
        self.cfg = cfg
        self.dim = dim
        self.c = c
        self.name = name

    def antisymmetry_violations(self):
        out = []
        for k in range(self.dim):
            for i in range(self.dim):
                for j in range(self.dim):
                    if self.c[k][i][j] + self.c[k][j][i] != 0:
                        out.append((k + 1, i + 1, j + 1))
        return out

    def jacobi_violations(self):
        out = []
        d = self.dim
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    for l in range(d):
                        total = Scalar.zero(self.cfg)
                        for m in range(d):
                            total = (total
                                     + self.c[m][i][j] * self.c[l][m][k]
                                     + self.c[m][j][k] * self.c[l][m][i]
                                     + self.c[m][k][i] * self.c[l][m][j])
                        if total != 0:
                            out.append((i + 1, j + 1, k + 1, l + 1))
        return out

    def validate(self):
        diags = []
        for k, i, j in self.antisymmetry_violations():
            diags.append((None, "antisymmetry fails at c^%d_{%d%d}" % (k, i, j)))
        if not diags:
            for i, j, k, l in self.jacobi_violations():
                diags.append((None, "Jacobi identity fails at (%d,%d,%d;%d)"
                              % (i, j, k, l)))
        if diags:
            raise SpecFileError(diags)
        return self


class RepresentationData:
    """Matrices a[j], each N x N, over the scalar field."""

    def __init__(self, cfg, dim, N, a, name=None):
        self.cfg = cfg
        self.dim = dim
        self.N = N
        self.a = a
        self.name = name


def _zeros(cfg, rows, cols):
    return [[Scalar.zero(cfg) for _ in range(cols)] for _ in range(rows)]


def builtin_algebra(cfg, name):
    if name != "sl2":
        raise SpecFileError([(None, "unknown builtin algebra %r" % name)])
    dim = 3
    c = [[[Scalar.zero(cfg) for _ in range(dim)] for _ in range(dim)]
         for _ in range(dim)]

    def put(k, i, j, value):
        v = parse_scalar(cfg, value)
        c[k - 1][i - 1][j - 1] = v
        c[k - 1][j - 1][i - 1] = -v

    # [X1,X2] = X3, [X3,X1] = 2 X1, [X3,X2] = -2 X2
    put(3, 1, 2, "1")
    put(1, 3, 1, "2")
    put(2, 3, 2, "-2")
    return LieAlgebraData(cfg, dim, c, name=name).validate()


_BUILTIN_REPS = {
    # name: (N, entries {(j, alpha, beta): literal})
    "spinor": (2, {(1, 1, 2): "1", (2, 2, 1): "1",
                   (3, 1, 1): "1", (3, 2, 2): "-1"}),
    "vector": (3, {(1, 2, 1): "r2", (1, 3, 2): "r2",
                   (2, 1, 2): "r2", (2, 2, 3): "r2",
                   (3, 1, 1): "-2", (3, 3, 3): "2"}),
    "spinor_plus_scalar": (3, {(1, 1, 2): "1", (2, 2, 1): "1",
                               (3, 1, 1): "1", (3, 2, 2): "-1"}),
}


def builtin_representation(cfg, g, name, N=None):
    if name == "scalar":
        if N is None:
            raise SpecFileError([(None, "scalar representation needs N")])
        a = [_zeros(cfg, N, N) for _ in range(g.dim)]
        return RepresentationData(cfg, g.dim, N, a, name="scalar")
    if name not in _BUILTIN_REPS:
        raise SpecFileError([(None, "unknown builtin representation %r" % name)])
    size, entries = _BUILTIN_REPS[name]
    if N is not None and N != size:
        raise SpecFileError([(None, "representation %r has N=%d, got N=%d"
                              % (name, size, N))])
    a = [_zeros(cfg, size, size) for _ in range(g.dim)]
    for (j, al, be), lit in entries.items():
        a[j - 1][al - 1][be - 1] = parse_scalar(cfg, lit)
    return RepresentationData(cfg, g.dim, size, a, name=name)


def check_representation(g, r):
    """Verify [a^i, a^j] = sum_k c^k_ij a^k entrywise.

    Returns a list of violations (i, j, alpha, beta, residual), empty when
    the matrices really do represent the algebra.
    """
    cfg = g.cfg
    out = []
    N = r.N
    for i in range(g.dim):
        for j in range(g.dim):
            for al in range(N):
                for be in range(N):
                    acc = Scalar.zero(cfg)
                    for s in range(N):
                        acc = (acc + r.a[i][al][s] * r.a[j][s][be]
                               - r.a[j][al][s] * r.a[i][s][be])
                    for k in range(g.dim):
                        acc = acc - g.c[k][i][j] * r.a[k][al][be]
                    if acc != 0:
                        out.append((i + 1, j + 1, al + 1, be + 1, acc))
    return out


class ParsedSpec:
    """Everything a run needs: algebra, representation, grading order, and
    the optional knobs from the [grading] section."""

    def __init__(self, cfg, algebra, rep, n, pin=None, convention=None,
                 dual=None):
        self.cfg = cfg
        self.algebra = algebra
        self.rep = rep
        self.n = n
        self.pin = pin              # (label, Scalar) or None
        self.convention = convention
        self.dual = dual


def parse_pin(cfg, text):
    """Pin syntax:  b3_222=6  (coefficient label = scalar literal)."""
    if "=" not in text:
        raise SpecFileError([(None, "pin must look like b3_222=6, got %r"
                              % text)])
    label, _, lit = text.partition("=")
    label = label.strip()
    lit = lit.strip()
    if not (label.startswith("b") and "_" in label):
        raise SpecFileError([(None, "bad pin label %r" % label)])
    head, _, tail = label[1:].partition("_")
    try:
        j = int(head)
        idx = tuple(int(ch) for ch in tail)
    except ValueError:
        raise SpecFileError([(None, "bad pin label %r" % label)])
    if not idx or j < 1 or any(i < 1 for i in idx):
        raise SpecFileError([(None, "bad pin label %r" % label)])
    try:
        value = parse_scalar(cfg, lit)
    except ScalarParseError as exc:
        raise SpecFileError([(None, "bad pin value: %s" % exc)])
    return (j, tuple(sorted(idx))), value


def _strip(line):
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def parse_spec(text):
    """Parse the sectioned input format (or the one-line alias form).

    Sections: [algebra] (builtin=... or dim=... plus 'c k i j = value'
    lines), [representation] (builtin=... or N=... plus 'a j al be = value'
    lines), [grading] (n=..., optional pin/convention/dual).  Raises
    SpecFileError carrying line-numbered diagnostics.
    """
    lines = text.splitlines()
    meaningful = [(i + 1, _strip(l)) for i, l in enumerate(lines)]
    meaningful = [(ln, l) for ln, l in meaningful if l]
    if not meaningful:
        raise SpecFileError([(None, "empty input")])

    # alias form: a single line like "sl2 spinor n=3" or "sl2 scalar n=3 N=2"
    if len(meaningful) == 1 and not meaningful[0][1].startswith("["):
        return _parse_alias(meaningful[0])

    sections = {"algebra": [], "representation": [], "grading": []}
    current = None
    diags = []
    for ln, line in meaningful:
        if line.startswith("["):
            name = line.strip("[]").strip()
            if name not in sections:
                diags.append((ln, "unknown section [%s]" % name))
                current = None
            else:
                current = name
            continue
        if current is None:
            diags.append((ln, "entry outside any section: %r" % line))
            continue
        sections[current].append((ln, line))
    if diags:
        raise SpecFileError(diags)

    def kv(entry):
        ln, line = entry
        if "=" not in line:
            return ln, None, None
        key, _, value = line.partition("=")
        return ln, key.strip(), value.strip()

    # grading first: n decides the scalar config
    n = 3
    pin_text = None
    convention = None
    dual = None
    for entry in sections["grading"]:
        ln, key, value = kv(entry)
        if key == "n":
            try:
                n = int(value)
            except (TypeError, ValueError):
                diags.append((ln, "bad n value %r" % value))
        elif key == "pin":
            pin_text = value
        elif key == "convention":
            if value not in ("cyclic", "symmetric"):
                diags.append((ln, "convention must be cyclic or symmetric"))
            convention = value
        elif key == "dual":
            dual = value
        else:
            diags.append((ln, "unknown grading entry %r" % entry[1]))
    if n < 2:
        diags.append((None, "grading order n must be at least 2"))
    if diags:
        raise SpecFileError(diags)
    cfg = get_config(n)

    algebra = _parse_algebra_section(cfg, sections["algebra"])
    rep = _parse_rep_section(cfg, algebra, sections["representation"])

    pin = parse_pin(cfg, pin_text) if pin_text else None
    if pin is not None:
        (j, idx), _ = pin
        if j > algebra.dim or any(i > rep.N for i in idx) or len(idx) != n:
            raise SpecFileError([(None, "pin label out of range for "
                                  "dim=%d N=%d n=%d" % (algebra.dim, rep.N, n))])
    return ParsedSpec(cfg, algebra, rep, n, pin=pin, convention=convention,
                      dual=dual)


def _parse_alias(entry):
    ln, line = entry
    words = line.split()
    if len(words) < 2:
        raise SpecFileError([(ln, "alias form needs 'algebra rep [n=..]'")])
    alg_name, rep_name = words[0], words[1]
    n = 3
    N = None
    for w in words[2:]:
        if w.startswith("n="):
            n = int(w[2:])
        elif w.startswith("N="):
            N = int(w[2:])
        else:
            raise SpecFileError([(ln, "bad alias token %r" % w)])
    cfg = get_config(n)
    g = builtin_algebra(cfg, alg_name)
    r = builtin_representation(cfg, g, rep_name, N=N)
    return ParsedSpec(cfg, g, r, n)


def _parse_algebra_section(cfg, entries):
    diags = []
    builtin = None
    dim = None
    raw = []  # (ln, k, i, j, literal)
    for ln, line in entries:
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "builtin":
            builtin = value
        elif key == "dim":
            try:
                dim = int(value)
            except ValueError:
                diags.append((ln, "bad dim %r" % value))
        elif key.startswith("c "):
            parts = key.split()
            if len(parts) != 4:
                diags.append((ln, "c entries look like 'c k i j = value'"))
                continue
            try:
                k, i, j = (int(p) for p in parts[1:])
            except ValueError:
                diags.append((ln, "bad c indices in %r" % line))
                continue
            raw.append((ln, k, i, j, value))
        else:
            diags.append((ln, "unknown algebra entry %r" % line))
    if diags:
        raise SpecFileError(diags)
    if builtin:
        return builtin_algebra(cfg, builtin)
    if dim is None:
        raise SpecFileError([(None, "[algebra] needs builtin=... or dim=...")])
    c = [[[Scalar.zero(cfg) for _ in range(dim)] for _ in range(dim)]
         for _ in range(dim)]
    explicit = {}
    for ln, k, i, j, lit in raw:
        if not all(1 <= t <= dim for t in (k, i, j)):
            diags.append((ln, "c index out of range in c %d %d %d" % (k, i, j)))
            continue
        try:
            v = parse_scalar(cfg, lit)
        except ScalarParseError as exc:
            diags.append((ln, str(exc)))
            continue
        if i == j and v != 0:
            diags.append((ln, "antisymmetry fails at c^%d_{%d%d}: diagonal "
                          "entry must vanish" % (k, i, j)))
            continue
        explicit[(k, i, j)] = (ln, v)
    for (k, i, j), (ln, v) in explicit.items():
        mirror = explicit.get((k, j, i))
        if mirror is not None and i < j and mirror[1] != -v:
            diags.append((ln, "antisymmetry fails between c^%d_{%d%d} and "
                          "c^%d_{%d%d}" % (k, i, j, k, j, i)))
    if diags:
        raise SpecFileError(diags)
    for (k, i, j), (ln, v) in explicit.items():
        c[k - 1][i - 1][j - 1] = v
        if (k, j, i) not in explicit:
            c[k - 1][j - 1][i - 1] = -v
    return LieAlgebraData(cfg, dim, c).validate()


def _parse_rep_section(cfg, g, entries):
    diags = []
    builtin = None
    N = None
    raw = []
    for ln, line in entries:
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "builtin":
            builtin = value
        elif key == "N":
            try:
                N = int(value)
            except ValueError:
                diags.append((ln, "bad N %r" % value))
        elif key.startswith("a "):
            parts = key.split()
            if len(parts) != 4:
                diags.append((ln, "a entries look like 'a j al be = value'"))
                continue
            try:
                j, al, be = (int(p) for p in parts[1:])
            except ValueError:
                diags.append((ln, "bad a indices in %r" % line))
                continue
            raw.append((ln, j, al, be, value))
        else:
            diags.append((ln, "unknown representation entry %r" % line))
    if diags:
        raise SpecFileError(diags)
    if builtin:
        return builtin_representation(cfg, g, builtin, N=N)
    if N is None:
        raise SpecFileError([(None, "[representation] needs builtin=... or "
                              "N=...")])
    a = [_zeros(cfg, N, N) for _ in range(g.dim)]
    for ln, j, al, be, lit in raw:
        if not (1 <= j <= g.dim and 1 <= al <= N and 1 <= be <= N):
            diags.append((ln, "a index out of range in a %d %d %d" % (j, al, be)))
            continue
        try:
            a[j - 1][al - 1][be - 1] = parse_scalar(cfg, lit)
        except ScalarParseError as exc:
            diags.append((ln, str(exc)))
    if diags:
        raise SpecFileError(diags)
    return RepresentationData(cfg, g.dim, N, a)


def serialize_spec(ps):
    """Canonical text form; parse(serialize(parse(f))) == parse(f)."""
    out = ["[algebra]", "dim = %d" % ps.algebra.dim]
    for k in range(ps.algebra.dim):
        for i in range(ps.algebra.dim):
            for j in range(i + 1, ps.algebra.dim):
                v = ps.algebra.c[k][i][j]
                if v != 0:
                    out.append("c %d %d %d = %s" % (k + 1, i + 1, j + 1, v))
    out.append("")
    out.append("[representation]")
    out.append("N = %d" % ps.rep.N)
    for j in range(ps.algebra.dim):
        for al in range(ps.rep.N):
            for be in range(ps.rep.N):
                v = ps.rep.a[j][al][be]
                if v != 0:
                    out.append("a %d %d %d = %s" % (j + 1, al + 1, be + 1, v))
    out.append("")
    out.append("[grading]")
    out.append("n = %d" % ps.n)
    if ps.pin is not None:
        (j, idx), value = ps.pin
        out.append("pin = b%d_%s = %s"
                   % (j, "".join(str(i) for i in idx), value))
    if ps.convention:
        out.append("convention = %s" % ps.convention)
    if ps.dual:
        out.append("dual = %s" % ps.dual)
    return "\n".join(out) + "\n"
