from fastapi import APIRouter

from ..cache import cache

router = APIRouter(prefix="/api/cache", tags=["cache"])


@router.get("/stats")
def get_cache_stats():
    """Retourne les statistiques du cache"""
    stats = cache.stats()
    lookups = stats["hits"] + stats["misses"]
    stats["hit_rate"] = round(stats["hits"] * 100 / lookups) if lookups else 0
    return stats


@router.post("/clear-expired")
def clear_expired_entries():
    """Nettoie les entrées expirées"""
    return {"removed": cache.clear_expired()}


@router.delete("/entries")
def clear_all_cache():
    """Vide tout le cache"""
    cache.clear()
    return {"message": "Cache vidé avec succès"}
