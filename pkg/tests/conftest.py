import pytest
from hypothesis import HealthCheck, settings

from app.config import get_settings

settings.register_profile(
    "heavycycle",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("heavycycle")


@pytest.fixture(autouse=True)
def fresh_settings():
    """Chaque test relit l'environnement (monkeypatch.setenv compris)"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
