"""
Système de cache pour les résultats coûteux (circonférence, analyses) de l'API
"""

from typing import Any, Dict, Optional, Tuple
import hashlib
import json
import logging
from datetime import datetime, timedelta

from .config import get_settings

logger = logging.getLogger(__name__)


class CacheManager:
    """Cache mémoire à durée de vie limitée, indexé par une empreinte md5 de la requête"""

    def __init__(self, ttl_minutes: Optional[int] = None):
        self.ttl_minutes = ttl_minutes
        self._entries: Dict[str, Tuple[datetime, str]] = {}
        self.hits = 0
        self.misses = 0

    @staticmethod
    def _generate_key(prefix: str, *args, **kwargs) -> str:
        """Génère une clé de cache unique"""
        data = f"{prefix}:{args}:{sorted(kwargs.items())}"
        return hashlib.md5(data.encode()).hexdigest()

    def get(self, key: str) -> Optional[Any]:
        """Récupère une valeur du cache (None si absente ou expirée)"""
        entry = self._entries.get(key)
        if entry is None or entry[0] <= datetime.now():
            self.misses += 1
            return None
        self.hits += 1
        return json.loads(entry[1])

    def set(self, key: str, value: Any, ttl_minutes: Optional[int] = None) -> None:
        """Stocke une valeur sérialisable en JSON"""
        ttl = ttl_minutes or self.ttl_minutes or get_settings().cache_ttl_minutes
        expires_at = datetime.now() + timedelta(minutes=ttl)
        self._entries[key] = (expires_at, json.dumps(value, default=str))

    def clear_expired(self) -> int:
        """Nettoie les entrées expirées du cache"""
        now = datetime.now()
        expired = [key for key, (expires_at, _) in self._entries.items() if expires_at <= now]
        for key in expired:
            del self._entries[key]
        if expired:
            logger.info(f"🧹 {len(expired)} entrées de cache expirées supprimées")
        return len(expired)

    def clear(self) -> None:
        self._entries.clear()
        self.hits = self.misses = 0

    def stats(self) -> Dict[str, int]:
        return {"entries": len(self._entries), "hits": self.hits, "misses": self.misses}


cache = CacheManager()
