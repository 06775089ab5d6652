"""
Configuration de l'application (variables d'environnement HEAVYCYCLE_*, fichier .env)
"""
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="HEAVYCYCLE_", env_file=".env", extra="ignore")

    # Parallélisme des balayages
    jobs: int = 1

    # Moteurs de circonférence
    dp_max_n: int = 18
    bnb_node_limit: int = 10**8
    bnb_time_limit_seconds: float = 600.0
    transposition_limit: int = 2_000_000

    # Gardes de complexité
    all_cycles_max_n: int = 14
    all_cycles_limit: int = 100_000
    fallback_max_n: int = 16
    theorem2_max_n: int = 10
    enumerate_max_n: int = 9
    default_max_n: int = 8

    # Suite de propriétés du lemme de réalisation
    lemma1_instances: int = 1000
    lemma1_max_n: int = 12

    # API
    cache_ttl_minutes: int = 15
    api_timeout_seconds: int = 30
    store_domain: str = "http://localhost:3000"

    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    return Settings()
