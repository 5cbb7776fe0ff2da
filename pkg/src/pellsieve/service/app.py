"""HTTP facade over the toolkit.

Every endpoint is stateless and pure computation; domain errors surface as
400 with a plain-text detail instead of a stack trace.
"""

from __future__ import annotations

import sys

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..certificate import certificate_to_json
from ..harness import classify_pair, replay_suite, scan_pairs, search_pair
from ..lucas import LucasParams, lucas_uv, lucas_uv_mod
from ..pell import pell_fundamental
from ..prover import DEFAULT_CONFIG, Pair, SieveConfig, sieve
from ..verifier import verify_certificate
from . import schemas

# size guards: keep single requests to a few megabits of exact arithmetic
_EXPONENT_BIT_BUDGET = 4_000_000
_EXACT_LUCAS_LIMIT = 200_000


def _config_from_model(model: schemas.SieveConfigModel | None) -> SieveConfig:
    if model is None:
        return DEFAULT_CONFIG
    given = {k: v for k, v in model.model_dump().items() if v is not None}
    for key in ("moduli_pool", "split_sequence"):
        if key in given:
            given[key] = tuple(given[key])
    return SieveConfig(**given)


def create_app() -> FastAPI:
    try:
        # accept decimal strings of unbounded size
        sys.set_int_max_str_digits(0)
    except (AttributeError, ValueError):
        pass
    app = FastAPI(
        title="pellsieve",
        version=__version__,
        description="Lucas sequences, Pell equations, and square-product certificates.",
    )

    @app.exception_handler(ValueError)
    async def _domain_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(version=__version__)

    @app.post("/search", response_model=schemas.SearchResponse)
    def search(req: schemas.SearchRequest):
        if max(req.a, req.b).bit_length() * req.n_max > _EXPONENT_BIT_BUDGET:
            raise ValueError("a, b and n_max together exceed the size budget")
        hits = search_pair(req.a, req.b, req.n_max)
        return schemas.SearchResponse(
            hits=[schemas.HitModel(a=h.a, b=h.b, n=h.n, x=h.x) for h in hits]
        )

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(req: schemas.ClassifyRequest):
        return schemas.ClassifyResponse(tag=classify_pair(req.a, req.b).value)

    @app.post("/prove", response_model=schemas.ProveResponse)
    def prove(req: schemas.ProveRequest):
        config = _config_from_model(req.config)
        if req.b.bit_length() * config.explicit_bound > _EXPONENT_BIT_BUDGET:
            raise ValueError("bases too large for the explicit-check bound")
        cert = sieve(Pair(req.a, req.b), config)
        return schemas.ProveResponse(
            status=cert.status.value,
            known_solutions=[
                schemas.SolutionModel(n=n, x=x) for n, x in cert.known_solutions
            ],
            surviving_classes=len(cert.surviving_classes),
            certificate=certificate_to_json(cert),
        )

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest):
        report = verify_certificate(req.certificate)
        return schemas.VerifyResponse(
            ok=report.ok,
            items=[
                schemas.VerifyItemModel(
                    name=i.name, status=i.status.value, detail=i.detail
                )
                for i in report.items
            ],
        )

    @app.get("/pell/{d}", response_model=schemas.PellResponse)
    def pell(d: int):
        fund = pell_fundamental(d)
        return schemas.PellResponse(d=d, x1=fund.x1, y1=fund.y1)

    @app.post("/lucas", response_model=schemas.LucasResponse)
    def lucas(req: schemas.LucasRequest):
        params = LucasParams(req.p, req.q)
        if req.mod is not None:
            u, v = lucas_uv_mod(params, req.n, req.mod)
        else:
            if req.n > _EXACT_LUCAS_LIMIT:
                raise ValueError("exact values above n = 200000 need --mod")
            pair = lucas_uv(params, req.n)
            u, v = pair.u, pair.v
        return schemas.LucasResponse(u=u, v=v)

    @app.post("/scan", response_model=schemas.SearchResponse)
    def scan(req: schemas.ScanRequest):
        hits = scan_pairs(req.a_max, req.b_max, req.n_max)
        return schemas.SearchResponse(
            hits=[schemas.HitModel(a=h.a, b=h.b, n=h.n, x=h.x) for h in hits]
        )

    @app.get("/replay", response_model=schemas.ReplayResponse)
    def replay():
        report = replay_suite()
        return schemas.ReplayResponse(
            ok=report.ok,
            pairs=[
                schemas.ReplayPairModel(
                    a=p.a,
                    b=p.b,
                    status=p.status.value,
                    known_solutions=[
                        schemas.SolutionModel(n=n, x=x) for n, x in p.known_solutions
                    ],
                    surviving_classes=p.surviving,
                    verified=p.verified,
                    matches_expected=p.matches_expected,
                    elapsed=p.elapsed,
                )
                for p in report.pairs
            ],
            goldens=[
                schemas.GoldenFactModel(fact=f, passed=ok) for f, ok in report.goldens
            ],
        )

    return app


app = create_app()
