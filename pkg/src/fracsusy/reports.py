"""JSON-ready reports over the exact kernel (schema report_v1).

Every report is a plain dict with "schema", "kind" and "pass" keys; all
scalars are rendered as parseable literals (parse_scalar inverts them).
report_all stitches the individual reports together and re-checks the
built-in worked cases against their frozen solutions.
"""

from .dualside import dual_report, dual_rules
from .gradesolve import label_str, solve_structure_constants, \
    verify_identities
from .hopfcheck import hopf_report
from .liealg import parse_pin, parse_spec
from .realize import verify_realization
from .scalar import get_config, parse_scalar

SCHEMA = "report_v1"

_DUAL_DEFAULT_N = {"translation": 2, "single_generator": 3, "sl2_spinor": 3}


def _wrap(kind, payload):
    out = {"schema": SCHEMA, "kind": kind}
    out.update(payload)
    return out


def solve_report(ps, include=("snj1", "snj2"), convention=None, pin=None):
    """Solve one graded-extension problem given a ParsedSpec; explicit
    arguments override whatever the spec text carried."""
    convention = convention or ps.convention or "cyclic"
    pin = pin if pin is not None else ps.pin
    res = solve_structure_constants(ps.algebra, ps.rep, ps.n,
                                    include=tuple(include),
                                    convention=convention, pin=pin)
    payload = {
        "n": ps.n,
        "algebra": ps.algebra.name,
        "representation": ps.rep.name,
        "dim": ps.algebra.dim,
        "N": ps.rep.N,
        "include": list(include),
        "convention": convention,
        "unknowns": len(res.labels),
        "rows": res.system.counts(),
        "rank": res.rank,
        "dimension": res.dimension,
        "basis": [{label_str(lab): str(v) for lab, v in d.items()}
                  for d in res.basis_dicts()],
        "pin": label_str(pin[0]) + "=" + str(pin[1]) if pin else None,
        "normalized": ({label_str(lab): str(v)
                        for lab, v in sorted(res.normalized.items())}
                       if res.normalized is not None else None),
        "notes": list(res.notes),
        "pass": True,
    }
    if res.normalized is not None:
        spec = res.spec(ps.algebra, ps.rep, ps.n)
        payload["bracket_lines"] = spec.bracket_lines()
        payload["commutator_lines"] = spec.commutator_lines()
    return _wrap("solve", payload)


def identities_report(n=3, seed=0, samples=100):
    cfg = get_config(n)
    rep = verify_identities(cfg, seed=seed, samples=samples)
    rep.update({"n": n, "seed": seed, "samples": samples})
    return _wrap("identities", rep)


def hopf_report_json(n=3, N_max=3, seed=0):
    cfg = get_config(n)
    rep = hopf_report(cfg, N_max=N_max, seed=seed)
    rep.update({"N_max": N_max, "seed": seed})
    return _wrap("hopf", rep)


def dual_report_json(name, n=None, N=None, u_max_len=None,
                     dual_max_len=None):
    if n is None:
        n = _DUAL_DEFAULT_N.get(name, 3)
    cfg = get_config(n)
    rules = dual_rules(cfg, name, N=N)
    rep = dual_report(rules, u_max_len=u_max_len, dual_max_len=dual_max_len)
    return _wrap("dual", rep)


def realization_report(n=3, M=8):
    if n != 3:
        raise ValueError("the built-in realization lives at n = 3")
    cfg = get_config(n)
    return _wrap("realization", verify_realization(cfg, M=M))


# ---- the built-in worked cases, with their frozen solutions -----------------


KNOWN_CASES = [
    {"key": "scalar_N1", "spec": "sl2 scalar n=3 N=1", "dimension": 0},
    {"key": "scalar_N2", "spec": "sl2 scalar n=3 N=2", "dimension": 0},
    {"key": "scalar_N3", "spec": "sl2 scalar n=3 N=3", "dimension": 0},
    {"key": "spinor_cubic_only", "spec": "sl2 spinor n=3",
     "include": ("snj2",), "dimension": 2},
    {"key": "spinor_full", "spec": "sl2 spinor n=3", "dimension": 0},
    {"key": "vector_full", "spec": "sl2 vector n=3", "pin": "b3_222=6",
     "dimension": 1,
     "normalized": {"b1_113": "-4*r2", "b1_122": "2*r2",
                    "b2_133": "4*r2", "b2_223": "-2*r2",
                    "b3_123": "-2", "b3_222": "6"}},
    {"key": "spinor_plus_scalar_full", "spec": "sl2 spinor_plus_scalar n=3",
     "pin": "b1_223=1", "dimension": 1,
     "normalized": {"b1_223": "1", "b2_113": "-1", "b3_123": "1/2"}},
    {"key": "classical_spinor_n2", "spec": "sl2 spinor n=2",
     "pin": "b2_11=1", "dimension": 1,
     "normalized": {"b1_22": "-1", "b2_11": "1", "b3_12": "-1/2"}},
]


def known_case_report(case):
    ps = parse_spec(case["spec"])
    pin = parse_pin(ps.cfg, case["pin"]) if case.get("pin") else None
    rep = solve_report(ps, include=case.get("include", ("snj1", "snj2")),
                       pin=pin)
    ok = rep["dimension"] == case["dimension"]
    if "normalized" in case:
        want = {lab: parse_scalar(ps.cfg, v)
                for lab, v in case["normalized"].items()}
        got = rep["normalized"]
        ok &= got is not None and \
            {lab: parse_scalar(ps.cfg, v) for lab, v in got.items()} == want
    rep["expected_dimension"] = case["dimension"]
    rep["matches_expected"] = bool(ok)
    rep["pass"] = bool(ok)
    return rep


def report_all(seed=0, samples=100, M=8):
    """Everything: identities, both Hopf sides, the three duals, the
    operator realization, and the worked solve cases."""
    sections = {
        "identities": {str(n): identities_report(n=n, seed=seed,
                                                 samples=samples)
                       for n in (2, 3)},
        "hopf": {str(n): hopf_report_json(n=n, seed=seed) for n in (2, 3)},
        "dual": {name: dual_report_json(name)
                 for name in ("translation", "single_generator",
                              "sl2_spinor")},
        "realization": realization_report(M=M),
        "solve": {case["key"]: known_case_report(case)
                  for case in KNOWN_CASES},
    }
    ok = True
    for group in ("identities", "hopf", "dual", "solve"):
        ok &= all(rep["pass"] for rep in sections[group].values())
    ok &= sections["realization"]["pass"]
    return _wrap("all", {"seed": seed, "sections": sections,
                         "pass": bool(ok)})
