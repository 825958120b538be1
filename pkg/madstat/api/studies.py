"""
Study API Endpoints

Runs an mc-verify configuration posted inline and returns the report.
Runs synchronously; keep the study small for HTTP use.
"""

import logging

from fastapi import APIRouter, HTTPException, status

from madstat.config import get_settings
from madstat.models.study import VerifyConfig
from madstat.services.data_io import with_version
from madstat.services.errors import ConfigError, DomainError
from madstat.services.verification import mc_verify

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/studies/verify", response_model=dict)
def verify_study(cfg: VerifyConfig):
    """
    Run the study and compare it with its limit law.

    The body is the same JSON as an mc-verify study file. Sample vectors are
    not returned; the report holds the KS distance and quantile table.
    """
    logger.info("=" * 60)
    logger.info(f"VERIFY REQUEST: {cfg.study.generator.kind}, n={cfg.study.n}, reps={cfg.study.reps}")
    logger.info("=" * 60)
    try:
        outcome = mc_verify(cfg, workers=get_settings().workers)
    except (ConfigError, DomainError) as exc:
        logger.warning(f"Verification rejected: {exc}")
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc))
    return with_version(outcome.report)
