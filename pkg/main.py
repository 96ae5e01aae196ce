"""
S-Hypersimplex Toolkit - FastAPI Backend
Main application entry point
"""
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from contextlib import asynccontextmanager
import logging

# --- IMPORTS ---
from app.core.routes import router as core_router
from app.permutahedra.routes import router as permutahedra_router
from app.triangulation.routes import router as triangulation_router
from app.verify.routes import router as verify_router

from app.config import settings
from app.deps import http_error
from app.errors import ShypError

# Logging
logging.basicConfig(level=logging.DEBUG if settings.DEBUG else settings.LOG_LEVEL)
logger = logging.getLogger(__name__)

@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"{settings.APP_NAME} API booting up (MAX_D={settings.MAX_D}, ORACLE_MAX_D={settings.ORACLE_MAX_D})")
    yield
    logger.info(f"{settings.APP_NAME} API shutting down")

app = FastAPI(title=settings.APP_NAME, version="1.0.0", lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origin_regex="https?://.*",
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

@app.exception_handler(ShypError)
async def shyp_error_handler(request: Request, exc: ShypError):
    error = http_error(exc)
    return JSONResponse(status_code=error.status_code, content={"detail": error.detail})

# --- REGISTER ROUTERS ---
app.include_router(core_router, prefix="/api/core", tags=["Core"])
app.include_router(permutahedra_router, prefix="/api/permutahedra", tags=["Permutahedra"])
app.include_router(triangulation_router, prefix="/api/triangulation", tags=["Triangulation"])
app.include_router(verify_router, prefix="/api/verify", tags=["Verify"])

@app.get("/health")
def health_check():
    return {"status": "healthy"}

@app.get("/")
def read_root():
    return {"message": settings.APP_NAME}
