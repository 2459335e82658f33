"""Stateless compute service exposing the simulator over HTTP.

Every endpoint is a pure function of its request body, so responses are
reproducible given the same seeds. The CLI drives this app in-process by
default and over the network with --server.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__, report, verify
from ..errors import UnotSimError
from ..gate import apply_unot, check_pairwise_separability, gate_report
from ..qubit import PureQubit, haar_sample_pure
from ..restricted import gap_report
from . import schemas


def _matrix_model(entries: np.ndarray) -> schemas.MatrixModel:
    return schemas.MatrixModel(re=np.real(entries).tolist(), im=np.imag(entries).tolist())


def create_app() -> FastAPI:
    app = FastAPI(
        title="unotsim",
        description="Universal qubit-complementation (U-NOT) gate simulator",
        version=__version__,
    )

    @app.exception_handler(UnotSimError)
    async def _domain_error(_, exc: UnotSimError):
        raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/sweep", response_model=schemas.SweepResponse)
    def sweep(req: schemas.SweepRequest):
        config = report.SweepConfig(
            n_min=req.n_min,
            n_max=req.n_max,
            m_min=req.m_min,
            m_max=req.m_max,
            samples=req.samples,
            seed=req.seed,
        )
        rows = report.run_sweep(config)
        return schemas.SweepResponse(
            rows=[schemas.ReportRowModel(**row.as_dict()) for row in rows]
        )

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def run_verify(req: schemas.VerifyRequest):
        result = verify.run_checks(level=req.level, seed=req.seed)
        return schemas.VerifyResponse(
            level=result.level,
            passed=result.passed,
            checks=[
                schemas.CheckResultModel(
                    name=c.name,
                    deviation=c.deviation,
                    tolerance=c.tolerance,
                    passed=c.passed,
                    detail=c.detail,
                )
                for c in result.checks
            ],
        )

    @app.post("/report-real", response_model=schemas.RealCaseResponse)
    def report_real(req: schemas.RealCaseRequest):
        rows = []
        for n in range(req.n_min, req.n_max + 1):
            rep = gap_report(n)
            rows.append(
                schemas.RealCaseRow(
                    N=n, quantum=rep.quantum, classical=rep.classical, gap=rep.gap
                )
            )
        return schemas.RealCaseResponse(rows=rows)

    @app.post("/gate-report", response_model=schemas.GateReportResponse)
    def gate_report_endpoint(req: schemas.GateReportRequest):
        if req.state is not None:
            psi = PureQubit(req.state.alpha.to_complex(), req.state.beta.to_complex())
        else:
            psi = haar_sample_pure([req.seed, req.n, req.m])
        rep = gate_report(psi, req.n, req.m)
        separable = min_ev = None
        if req.m >= 2:
            check = check_pairwise_separability(apply_unot(psi, req.n, req.m))
            separable, min_ev = check.ppt, check.min_eigenvalue
        return schemas.GateReportResponse(
            fidelity_not=rep.fidelity_not,
            fidelity_clone=rep.fidelity_clone,
            scaling_not=rep.scaling_not,
            scaling_clone=rep.scaling_clone,
            c_single=_matrix_model(rep.c_single.entries),
            ab_single=_matrix_model(rep.ab_single.entries),
            separable=separable,
            min_pt_eigenvalue=min_ev,
        )

    return app


app = create_app()
