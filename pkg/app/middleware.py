"""
Middlewares pour la robustesse de l'API: erreurs du domaine et délai d'exécution
"""
import asyncio
import logging
from fastapi import Request, HTTPException
from fastapi.responses import JSONResponse
from starlette.responses import Response

from .config import get_settings
from .exceptions import GuardError, HeavyCycleError

logger = logging.getLogger(__name__)


def status_for(error: HeavyCycleError) -> int:
    """422 pour une garde de taille dépassée, 500 pour un invariant violé, 400 sinon"""
    if isinstance(error, GuardError):
        return 422
    if isinstance(error, RuntimeError):
        return 500
    return 400


async def error_handling_middleware(request: Request, call_next):
    """
    Middleware pour traduire les erreurs du domaine en réponses JSON et éviter les plantages
    """
    try:
        response = await call_next(request)
        return response
    except HTTPException as e:
        raise e
    except HeavyCycleError as e:
        status = status_for(e)
        log = logger.error if status == 500 else logger.warning
        log(f"❌ {type(e).__name__} sur {request.url.path}: {e.detail}")
        return JSONResponse(status_code=status, content={"detail": e.detail, "error": type(e).__name__})
    except Exception as e:
        logger.error(f"Erreur non gérée dans {request.url}: {str(e)}")

        if request.url.path.startswith("/api/"):
            return JSONResponse(
                status_code=500,
                content={"detail": "Erreur interne du serveur"}
            )

        return Response(
            content="Erreur interne du serveur",
            status_code=500,
            media_type="text/plain"
        )


async def timeout_middleware(request: Request, call_next):
    """
    Middleware pour limiter le temps d'exécution des requêtes
    """
    timeout_seconds = get_settings().api_timeout_seconds

    try:
        response = await asyncio.wait_for(
            call_next(request),
            timeout=timeout_seconds
        )
        return response
    except asyncio.TimeoutError:
        logger.warning(f"⚠️ Timeout sur {request.url} après {timeout_seconds}s")

        if request.url.path.startswith("/api/"):
            return JSONResponse(
                status_code=408,
                content={"detail": "Délai d'attente dépassé"}
            )

        return Response(
            content="Délai d'attente dépassé",
            status_code=408,
            media_type="text/plain"
        )
