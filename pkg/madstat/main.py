"""
FastAPI Main Application

HTTP entry point of madstat. Exposes the estimators, intervals, expansion
check and Monte Carlo verification under /api/v1.

To run the server:
    uvicorn madstat.main:app --reload --port 8000
    (or: python -m madstat serve --port 8000)

Then visit:
    - http://localhost:8000/docs - Interactive API documentation (Swagger UI)
    - http://localhost:8000/redoc - Alternative API documentation (ReDoc)
"""

import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from madstat import REPORT_SCHEMA_VERSION, __version__
from madstat.api import estimates, studies
from madstat.config import configure_logging, get_settings

settings = get_settings()

# Configure logging to track requests and long-running studies
configure_logging(settings.log_level)
logger = logging.getLogger(__name__)

app = FastAPI(
    title=settings.api_title,
    description="""
    Sample mean absolute deviation about the mean, with its asymptotic theory.

    ## Features
    * **Estimates** - Sample MAD, mean and sign balance
    * **Intervals** - Confidence intervals for theta (iid, mixing, stable; optional atom at the mean)
    * **Expansions** - Exact decomposition of sample MAD minus oracle MAD
    * **Studies** - Seeded Monte Carlo verification against the limit law
    """,
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.on_event("startup")
async def startup_event():
    """Run when server starts up."""
    logger.info("=" * 60)
    logger.info("MADSTAT API STARTING")
    logger.info("=" * 60)
    logger.info("API Documentation available at: /docs")
    logger.info("=" * 60)


@app.get("/")
async def root():
    """
    Root endpoint.

    Returns basic information about the API.
    """
    return {
        "status": "online",
        "message": settings.api_title,
        "version": __version__,
        "spec_version": REPORT_SCHEMA_VERSION,
        "docs": "/docs",
        "endpoints": {
            "estimates": "/api/v1/estimates",
            "intervals": "/api/v1/intervals",
            "expansions": "/api/v1/expansions",
            "studies": "/api/v1/studies/verify",
        },
    }


@app.get("/health")
async def health_check():
    """Health check endpoint used by monitoring."""
    return {"status": "healthy"}


app.include_router(estimates.router, prefix="/api/v1", tags=["Estimates"])
app.include_router(studies.router, prefix="/api/v1", tags=["Studies"])

logger.info("All routes loaded successfully")
