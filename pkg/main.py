from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
import logging
from dotenv import load_dotenv

# Charger les variables d'environnement
load_dotenv()

from app.config import get_settings
from app.middleware import error_handling_middleware, timeout_middleware
from app.routers import cache, corpus, extremal, graphs, theorems

settings = get_settings()
logging.basicConfig(level=settings.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
logger = logging.getLogger(__name__)

# Créer l'application FastAPI
app = FastAPI(
    title="heavycycle",
    description="Cycles lourds, circonférence exacte et vérification des énoncés sur les petits graphes",
    version="1.0.0"
)

# Origines autorisées: domaine configuré (HEAVYCYCLE_STORE_DOMAIN) et développement local
ALLOWED_ORIGINS = sorted({
    settings.store_domain,
    "http://localhost:3000",
    "http://localhost:3001",
})

app.add_middleware(
    CORSMiddleware,
    allow_origins=ALLOWED_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Le délai est appliqué à l'intérieur de la gestion d'erreurs
app.middleware("http")(timeout_middleware)
app.middleware("http")(error_handling_middleware)


@app.on_event("startup")
async def startup_event():
    logger.info(f"✅ heavycycle démarré (timeout {settings.api_timeout_seconds}s, cache {settings.cache_ttl_minutes} min)")


app.include_router(graphs.router)
app.include_router(extremal.router)
app.include_router(theorems.router)
app.include_router(corpus.router)
app.include_router(cache.router)


# Route API de test
@app.get("/api")
async def api_status():
    return {
        "message": "API heavycycle",
        "status": "running",
        "version": "1.0.0",
        "framework": "FastAPI"
    }
