"""Command-line client for the verification service.

Every subcommand posts to the HTTP API and renders the report_v1 reply.
By default the service is mounted in-process, so no server needs to be
running; --server points the same client at a remote instance (see the
serve subcommand).

Exit codes: 0 all checks passed, 1 a verification failed, 2 bad input or
transport trouble.  FRACSUSY_SEED sets the default seed for the
randomized identity checks.
"""

import argparse
import asyncio
import json
import os
import sys

import httpx

from . import __version__


class UsageError(Exception):
    pass


def _env_seed():
    raw = os.environ.get("FRACSUSY_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError("FRACSUSY_SEED must be an integer, got %r" % raw)


def _seed(args):
    return args.seed if args.seed is not None else _env_seed()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=None, metavar="URL",
                        help="use a running service instead of the "
                             "in-process one")
    common.add_argument("--format", choices=("text", "json"),
                        default="text", help="output format")

    parser = argparse.ArgumentParser(
        prog="fracsusy",
        description="exact checks for fractionally graded algebra "
                    "extensions, their Hopf structure, duals and "
                    "operator realizations")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common],
                       help="solve for admissible symmetric brackets")
    p.add_argument("spec", nargs="?", default=None,
                   help="spec file path ('-' for stdin)")
    p.add_argument("--inline", default=None, metavar="TEXT",
                   help="spec text given directly, e.g. 'sl2 spinor n=3'")
    p.add_argument("--pin", default=None, metavar="LABEL=VALUE",
                   help="normalize a one-parameter family, e.g. b3_222=6")
    p.add_argument("--convention", choices=("cyclic", "symmetric"),
                   default=None)
    p.add_argument("--include", action="append", choices=("snj1", "snj2"),
                   default=None,
                   help="restrict the constraint families (repeatable)")

    p = sub.add_parser("verify-identities", parents=[common],
                       help="randomized exact checks of the bracket "
                            "identities")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("verify-hopf", parents=[common],
                       help="coproduct/counit/antipode axioms and the "
                            "primitivity of the symmetric bracket")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--n-max", dest="N_max", type=int, default=3,
                   help="largest module size for the primitivity sweep")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("verify-dual", parents=[common],
                       help="function-algebra Hopf axioms, derivatives "
                            "and the duality pairing")
    p.add_argument("--dual", required=True,
                   choices=("translation", "single_generator",
                            "sl2_spinor"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--depth", type=int, default=None,
                   help="word length bound for the pairing sweep "
                            "(sets both sides)")
    p.add_argument("--u-max-len", type=int, default=None)
    p.add_argument("--dual-max-len", type=int, default=None)

    p = sub.add_parser("verify-realization", parents=[common],
                       help="operator realization on truncated superspace")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--M", type=int, default=8,
                   help="z-degree truncation")

    p = sub.add_parser("report-all", parents=[common],
                       help="every verification plus the worked solve "
                            "cases")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--M", type=int, default=8)

    p = sub.add_parser("serve", parents=[common],
                       help="run the service under uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _read_spec(args):
    if (args.spec is None) == (args.inline is None):
        raise UsageError("solve needs a spec file or --inline text "
                         "(exactly one)")
    if args.inline is not None:
        return args.inline
    if args.spec == "-":
        return sys.stdin.read()
    try:
        with open(args.spec) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError("cannot read spec file: %s" % exc)


def _request(args):
    """(method, path, payload) for the chosen subcommand."""
    cmd = args.command
    if cmd == "solve":
        payload = {"spec": _read_spec(args)}
        if args.pin:
            payload["pin"] = args.pin
        if args.convention:
            payload["convention"] = args.convention
        if args.include:
            payload["include"] = args.include
        return "POST", "/v1/solve", payload
    if cmd == "verify-identities":
        return "POST", "/v1/verify/identities", \
            {"n": args.n, "seed": _seed(args), "samples": args.samples}
    if cmd == "verify-hopf":
        return "POST", "/v1/verify/hopf", \
            {"n": args.n, "N_max": args.N_max, "seed": _seed(args)}
    if cmd == "verify-dual":
        payload = {"name": args.dual}
        if args.n is not None:
            payload["n"] = args.n
        if args.N is not None:
            payload["N"] = args.N
        u_len = args.u_max_len if args.u_max_len is not None else args.depth
        d_len = (args.dual_max_len if args.dual_max_len is not None
                 else args.depth)
        if u_len is not None:
            payload["u_max_len"] = u_len
        if d_len is not None:
            payload["dual_max_len"] = d_len
        return "POST", "/v1/verify/dual", payload
    if cmd == "verify-realization":
        return "POST", "/v1/verify/realization", \
            {"n": args.n, "M": args.M}
    if cmd == "report-all":
        return "POST", "/v1/report-all", \
            {"seed": _seed(args), "samples": args.samples, "M": args.M}
    raise UsageError("unknown command %r" % cmd)


async def fetch(server, method, path, payload):
    """One request against a remote server or the in-process app."""
    if server:
        async with httpx.AsyncClient(base_url=server.rstrip("/"),
                                     timeout=600.0) as client:
            return await client.request(method, path, json=payload)
    from .service import create_app
    transport = httpx.ASGITransport(app=create_app())
    async with httpx.AsyncClient(transport=transport,
                                 base_url="http://fracsusy",
                                 timeout=None) as client:
        return await client.request(method, path, json=payload)


# ---- text rendering -----------------------------------------------------------


def _check_line(c):
    status = "PASS" if c.get("pass") else "FAIL"
    extras = ["%s=%s" % (k, c[k])
              for k in ("samples", "window", "failures", "u_words",
                        "dual_words", "max_residual_terms")
              if k in c]
    tail = " (%s)" % ", ".join(extras) if extras else ""
    return "%s %s%s" % (status, c["name"], tail)


def _render_checks(rep, out):
    for c in rep.get("checks", ()):
        out.append("  " + _check_line(c))


def _render_solve(rep, out):
    out.append("solve %s / %s  n=%d N=%d  convention=%s"
               % (rep["algebra"], rep["representation"], rep["n"],
                  rep["N"], rep["convention"]))
    rows = " ".join("%s=%d" % kv for kv in sorted(rep["rows"].items()))
    out.append("  unknowns=%d rows: %s rank=%d"
               % (rep["unknowns"], rows, rep["rank"]))
    out.append("  solution dimension: %d" % rep["dimension"])
    for i, vec in enumerate(rep["basis"]):
        body = ", ".join("%s=%s" % kv for kv in sorted(vec.items()))
        out.append("  basis[%d]: %s" % (i, body))
    if rep.get("normalized") is not None:
        out.append("  pinned %s:" % rep["pin"])
        for lab, v in sorted(rep["normalized"].items()):
            out.append("    %s = %s" % (lab, v))
        for line in rep.get("bracket_lines", ()):
            out.append("  %s" % line)
        for line in rep.get("commutator_lines", ()):
            out.append("  %s" % line)
    for note in rep.get("notes", ()):
        out.append("  note: %s" % note)


def _render_hopf(rep, out):
    out.append("hopf axioms, n=%d" % rep["n"])
    _render_checks(rep["axioms"], out)
    for item in rep["invariant_form"]:
        status = "PASS" if item["pass"] else "FAIL"
        out.append("  %s invariant_form_primitive N=%d (%d tuples)"
                   % (status, item["N"], len(item["tuples"])))
    if "classical_degeneration" in rep:
        _render_checks(rep["classical_degeneration"], out)


def _render_dual(rep, out):
    out.append("dual %s, n=%d N=%d" % (rep["name"], rep["n"], rep["N"]))
    out.append("  theta dimensions: %s" % rep["theta_dimensions"])
    _render_checks(rep["hopf"], out)
    _render_checks(rep["derivative"], out)
    pairing = rep["pairing"]
    out.append("  pairing sweep (u<=%d, dual<=%d):"
               % (pairing["u_max_len"], pairing["dual_max_len"]))
    for c in pairing["checks"]:
        out.append("    " + _check_line(c))
    for lab, v in sorted(pairing["derived_bracket"].items()):
        out.append("  derived %s = %s" % (lab, v))


def _render_realization(rep, out):
    out.append("realization n=%d, truncation M=%d (dim %d)"
               % (rep["n"], rep["M"], rep["dim"]))
    _render_checks(rep, out)
    for lab, v in sorted(rep["bracket_constants"].items()):
        out.append("  realized %s = %s" % (lab, v))


def _render_identities(rep, out):
    out.append("bracket identities, n=%d seed=%d" % (rep["n"], rep["seed"]))
    _render_checks(rep, out)


def _summary_line(key, rep):
    status = "PASS" if rep["pass"] else "FAIL"
    extra = ""
    if rep["kind"] == "solve":
        extra = " (dimension %d)" % rep["dimension"]
    return "%s %s%s" % (status, key, extra)


def _render_all(rep, out):
    sections = rep["sections"]
    for group in ("identities", "hopf"):
        for n, sub in sorted(sections[group].items()):
            out.append(_summary_line("%s n=%s" % (group, n), sub))
    for name, sub in sorted(sections["dual"].items()):
        out.append(_summary_line("dual %s" % name, sub))
    out.append(_summary_line("realization", sections["realization"]))
    for key, sub in sections["solve"].items():
        out.append(_summary_line("solve %s" % key, sub))


_RENDERERS = {"solve": _render_solve, "identities": _render_identities,
              "hopf": _render_hopf, "dual": _render_dual,
              "realization": _render_realization, "all": _render_all}


def render_text(rep):
    out = []
    renderer = _RENDERERS.get(rep.get("kind"))
    if renderer is None:
        return json.dumps(rep, indent=2)
    renderer(rep, out)
    out.append("overall: %s" % ("PASS" if rep["pass"] else "FAIL"))
    return "\n".join(out)


# ---- entry point -----------------------------------------------------------------


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import create_app
        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    try:
        method, path, payload = _request(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2

    try:
        resp = asyncio.run(fetch(args.server, method, path, payload))
    except httpx.HTTPError as exc:
        print("error: service unreachable: %s" % exc, file=sys.stderr)
        return 2

    if resp.status_code == 422:
        detail = resp.json().get("detail")
        if isinstance(detail, dict) and detail.get("diagnostics"):
            print("error: invalid input", file=sys.stderr)
            for ln, msg in detail["diagnostics"]:
                where = "line %s: " % ln if ln else ""
                print("  %s%s" % (where, msg), file=sys.stderr)
        elif isinstance(detail, dict):
            print("error: %s" % detail.get("error", detail),
                  file=sys.stderr)
        else:
            print("error: %s" % detail, file=sys.stderr)
        return 2
    if resp.status_code != 200:
        print("error: service returned %d: %s"
              % (resp.status_code, resp.text), file=sys.stderr)
        return 2

    report = resp.json()
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return 0 if report.get("pass") else 1


if __name__ == "__main__":
    sys.exit(main())
