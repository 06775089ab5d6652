from app.cache import CacheManager
from app.middleware import status_for
from app.exceptions import GraphError, GuardError, InvariantViolation


def test_cache_round_trip():
    store = CacheManager(ttl_minutes=5)
    key = store._generate_key("circumference", "C~", all=True)
    assert key == CacheManager._generate_key("circumference", "C~", all=True)
    assert store.get(key) is None
    store.set(key, {"length": 4})
    assert store.get(key) == {"length": 4}
    assert store.stats() == {"entries": 1, "hits": 1, "misses": 1}


def test_expired_entries_are_removed():
    store = CacheManager()
    store.set("old", [1, 2], ttl_minutes=-1)
    store.set("fresh", [3])
    assert store.get("old") is None
    assert store.clear_expired() == 1
    assert store.stats()["entries"] == 1


def test_error_status_codes():
    assert status_for(GuardError("too big")) == 422
    assert status_for(InvariantViolation("broken")) == 500
    assert status_for(GraphError("bad vertex")) == 400
