"""The verification service: a thin HTTP layer over the report builders.

Input problems arrive as spec text or small parameter sets; every
response is a report_v1 envelope.  Malformed input (bad spec text, labels
out of range, unknown duals) comes back as 422 with diagnostics; a
response that arrives with pass=false is a genuine verification failure,
not an input error.
"""

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..liealg import SpecFileError, parse_pin, parse_spec
from ..reports import (dual_report_json, hopf_report_json,
                       identities_report, realization_report, report_all,
                       solve_report)
from .schemas import (DualRequest, Health, HopfRequest, IdentitiesRequest,
                      Report, ReportAllRequest, RealizationRequest,
                      SolveRequest)


def _bad_input(message, diagnostics=None):
    detail = {"error": message}
    if diagnostics:
        detail["diagnostics"] = [[ln, msg] for ln, msg in diagnostics]
    return HTTPException(status_code=422, detail=detail)


def create_app():
    app = FastAPI(title="fracsusy", version=__version__,
                  description="exact verification of fractionally graded "
                              "algebra extensions and their duals")

    @app.get("/v1/health", response_model=Health)
    def health():
        return Health(status="ok", version=__version__)

    @app.post("/v1/solve", response_model=Report)
    def solve(req: SolveRequest):
        include = tuple(req.include)
        if not include or any(tag not in ("snj1", "snj2")
                              for tag in include):
            raise _bad_input("include must be a nonempty subset of "
                             "snj1, snj2")
        if req.convention not in (None, "cyclic", "symmetric"):
            raise _bad_input("convention must be cyclic or symmetric")
        try:
            ps = parse_spec(req.spec)
            pin = parse_pin(ps.cfg, req.pin) if req.pin else None
            return solve_report(ps, include=include,
                                convention=req.convention, pin=pin)
        except SpecFileError as exc:
            raise _bad_input(str(exc), exc.diagnostics)
        except ValueError as exc:
            raise _bad_input(str(exc))

    @app.post("/v1/verify/identities", response_model=Report)
    def verify_identities(req: IdentitiesRequest):
        return identities_report(n=req.n, seed=req.seed,
                                 samples=req.samples)

    @app.post("/v1/verify/hopf", response_model=Report)
    def verify_hopf(req: HopfRequest):
        return hopf_report_json(n=req.n, N_max=req.N_max, seed=req.seed)

    @app.post("/v1/verify/dual", response_model=Report)
    def verify_dual(req: DualRequest):
        try:
            return dual_report_json(req.name, n=req.n, N=req.N,
                                    u_max_len=req.u_max_len,
                                    dual_max_len=req.dual_max_len)
        except (ValueError, AssertionError) as exc:
            raise _bad_input(str(exc))

    @app.post("/v1/verify/realization", response_model=Report)
    def verify_realization(req: RealizationRequest):
        try:
            return realization_report(n=req.n, M=req.M)
        except ValueError as exc:
            raise _bad_input(str(exc))

    @app.post("/v1/report-all", response_model=Report)
    def all_reports(req: ReportAllRequest):
        return report_all(seed=req.seed, samples=req.samples, M=req.M)

    return app
