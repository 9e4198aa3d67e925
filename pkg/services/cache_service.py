# services/cache_service.py
"""Result cache for rendered tables and suite runs, Redis-backed with an in-process fallback"""

import json
import logging
import os
import time
from contextlib import asynccontextmanager
from typing import Any, Dict, Optional, Tuple

import redis.asyncio as redis

# Minimal logging
logger = logging.getLogger(__name__)
logger.setLevel(logging.WARNING)

KEY_PREFIX = "qcalc:result"


class CacheConfig:
    """Redis configuration handler"""

    def __init__(self):
        self.redis_host = os.environ.get("REDIS_HOST", "localhost")
        self.redis_port = int(os.environ.get("REDIS_PORT", 6379))
        self.redis_password = os.environ.get("REDIS_PASSWORD", None)
        self.redis_db = int(os.environ.get("REDIS_DB", 0))
        self.redis_ssl = os.environ.get("REDIS_SSL", "false").lower() == "true"
        # empty string turns Redis off and keeps only the local store
        self.enabled = os.environ.get("REDIS_HOST", "localhost") != ""

        # results are pure functions of their key, so the TTL only bounds memory
        self.result_ttl = int(os.environ.get("CACHE_TTL_HOURS", 24)) * 3600
        self.max_pool_connections = int(os.environ.get("REDIS_MAX_CONNECTIONS", 20))
        # bound on the in-process fallback store
        self.max_local_entries = int(os.environ.get("CACHE_MAX_LOCAL_ENTRIES", 512))

    def get_connection_params(self) -> Dict[str, Any]:
        """Get Redis connection parameters"""
        params = {
            "host": self.redis_host,
            "port": self.redis_port,
            "db": self.redis_db,
            "decode_responses": True,
            "socket_connect_timeout": 2,
            "socket_timeout": 5,
            "retry_on_timeout": True,
            "health_check_interval": 30,
        }

        if self.redis_password:
            params["password"] = self.redis_password

        if self.redis_ssl:
            params["ssl"] = True
            params["ssl_cert_reqs"] = "required"

        return params


class ResultSerializer:
    """JSON with fixed key order, so cached and fresh payloads are byte-identical"""

    @staticmethod
    def dumps(payload: Dict[str, Any]) -> str:
        return json.dumps(payload, separators=(",", ":"))

    @staticmethod
    def loads(data: str) -> Dict[str, Any]:
        return json.loads(data)


class AsyncRedisCacheManager:
    """Result cache; falls back to a process-local dict when Redis is unreachable"""

    def __init__(self, config: Optional[CacheConfig] = None):
        self.config = config or CacheConfig()
        self.pool = None
        self.redis_client = None
        self.serializer = ResultSerializer()
        self._local: Dict[str, Tuple[float, str]] = {}
        self._initialized = False

    async def initialize(self):
        """Initialize Redis connection pool"""
        if self._initialized:
            return

        if not self.config.enabled:
            self._initialized = True
            return

        try:
            self.pool = redis.ConnectionPool(
                **self.config.get_connection_params(),
                max_connections=self.config.max_pool_connections,
            )
            self.redis_client = redis.Redis(connection_pool=self.pool)

            # Test connection
            await self.redis_client.ping()

        except (redis.ConnectionError, redis.TimeoutError, OSError) as e:
            logger.warning(f"Redis unavailable, using the local result store: {e}")
            self.redis_client = None
        self._initialized = True

    async def close(self):
        """Close Redis connections"""
        if self.redis_client:
            await self.redis_client.close()
            if self.pool:
                await self.pool.disconnect()
        self.redis_client = None
        self._initialized = False

    @asynccontextmanager
    async def get_redis(self):
        """Yields the client, or None when running on the local store"""
        if not self._initialized:
            await self.initialize()
        yield self.redis_client

    @staticmethod
    def make_key(kind: str, **params: Any) -> str:
        """Stable key: parameters sorted by name"""
        body = ":".join(f"{k}={params[k]}" for k in sorted(params))
        return f"{KEY_PREFIX}:{kind}:{body}"

    def _local_get(self, key: str) -> Optional[str]:
        entry = self._local.get(key)
        if entry is None:
            return None
        expires, data = entry
        if expires < time.monotonic():
            self._local.pop(key, None)
            return None
        return data

    async def get_json(self, key: str) -> Optional[Dict[str, Any]]:
        """Cached payload or None"""
        async with self.get_redis() as r:
            data = None
            if r is not None:
                try:
                    data = await r.get(key)
                except redis.RedisError as e:
                    logger.warning(f"Redis read failed for {key}: {e}")
            if data is None:
                data = self._local_get(key)
            return self.serializer.loads(data) if data is not None else None

    def _local_set(self, key: str, data: str):
        """Insert into the local store, dropping expired entries and then the oldest"""
        now = time.monotonic()
        for stale in [k for k, (expires, _) in self._local.items() if expires < now]:
            del self._local[stale]
        self._local.pop(key, None)
        while self._local and len(self._local) >= self.config.max_local_entries:
            del self._local[next(iter(self._local))]
        if self.config.max_local_entries > 0:
            self._local[key] = (now + self.config.result_ttl, data)

    async def set_json(self, key: str, payload: Dict[str, Any]) -> bool:
        """Store in Redis; the local store only takes what Redis could not"""
        data = self.serializer.dumps(payload)
        async with self.get_redis() as r:
            if r is not None:
                try:
                    await r.setex(key, self.config.result_ttl, data)
                    return True
                except redis.RedisError as e:
                    logger.warning(f"Redis write failed for {key}: {e}")
            self._local_set(key, data)
            return False

    async def delete(self, key: str) -> bool:
        removed = self._local.pop(key, None) is not None
        async with self.get_redis() as r:
            if r is None:
                return removed
            try:
                return await r.delete(key) > 0 or removed
            except redis.RedisError as e:
                logger.warning(f"Redis delete failed for {key}: {e}")
                return removed

    async def health_check(self) -> Dict[str, Any]:
        """Check Redis connection health"""
        async with self.get_redis() as r:
            if r is None:
                return {
                    "status": "local",
                    "redis_available": False,
                    "local_entries": len(self._local),
                }

            try:
                await r.ping()
                info = await r.info()

                return {
                    "status": "healthy",
                    "redis_available": True,
                    "redis_version": info.get("redis_version"),
                    "used_memory_human": info.get("used_memory_human"),
                }

            except Exception as e:
                return {
                    "status": "error",
                    "redis_available": False,
                    "error": str(e),
                }


# Create singleton instance
cache_manager = AsyncRedisCacheManager()
