"""
Main API routes for the etale-modules toolkit
Contains all FastAPI endpoints and route handlers.
"""

import logging
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from config.settings import config
from src.models.errors import EtaleError
from src.models.schemas import (
    CastleRequest, CastlingReportSchema, DimsTableSchema, FamilyReportSchema,
    StabilizerReportSchema, StabilizerRequest, VerificationReportSchema, VerifyRequest,
)
from src.services.verification_service import VerificationService

logger = logging.getLogger(__name__)


class APIRouter:
    """Main API router for the etale-modules toolkit."""

    def __init__(self, service: Optional[VerificationService] = None):
        self.app = FastAPI(
            title=config.app_name,
            description=config.description,
            version=config.version
        )

        self.service = service or VerificationService()

        self._setup_middleware()
        self._setup_error_handlers()
        self._register_routes()

    def _setup_middleware(self):
        """Setup CORS middleware."""
        self.app.add_middleware(
            CORSMiddleware,
            allow_origins=config.api.cors_origins,
            allow_credentials=True,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    def _setup_error_handlers(self):
        @self.app.exception_handler(EtaleError)
        async def etale_error_handler(request: Request, exc: EtaleError):
            logger.warning(f"Rejected {request.url.path}: {exc}")
            return JSONResponse(status_code=400, content={"error": type(exc).__name__, "detail": str(exc)})

    def _register_routes(self):
        """Register all API routes."""

        @self.app.get("/health")
        async def health_check():
            return {"status": "healthy", "version": config.version}

        # Handlers are sync so FastAPI runs the exact arithmetic in its threadpool
        @self.app.post("/api/verify", response_model=VerificationReportSchema)
        def verify(request: VerifyRequest):
            return self.service.verify_spec(request.spec, request.point, request.seed, request.bound)

        @self.app.get("/api/family/{name}", response_model=FamilyReportSchema)
        def family(
            name: str,
            n: Optional[int] = Query(None),
            chain_report: bool = Query(False),
            seed: Optional[int] = Query(None, ge=0),
            bound: Optional[int] = Query(None, ge=1),
        ):
            return self.service.family(name, n, chain_report, seed, bound)

        @self.app.get("/api/dims", response_model=DimsTableSchema)
        def dims(n_max: int = Query(..., ge=1, le=200)):
            return self.service.dims(n_max)

        @self.app.post("/api/castle", response_model=CastlingReportSchema)
        def castle(request: CastleRequest):
            return self.service.castle(request.spec, request.twice, request.seed, request.bound, request.draws)

        @self.app.post("/api/stabilizer", response_model=StabilizerReportSchema)
        def stabilizer(request: StabilizerRequest):
            try:
                return self.service.stabilizer(
                    request.spec, request.point, request.seed, request.bound, request.line
                )
            except EtaleError:
                raise
            except Exception as e:
                logger.error(f"Error computing stabilizer: {e}")
                raise HTTPException(status_code=500, detail=str(e))

    def get_app(self) -> FastAPI:
        """Get the FastAPI application instance."""
        return self.app


def create_app(service: Optional[VerificationService] = None) -> FastAPI:
    return APIRouter(service).get_app()


# Create the router instance
router = APIRouter()
app = router.get_app()
