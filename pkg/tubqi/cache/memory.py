# Copyright 2024 Nicholas Jackson
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Bounded in-memory memo for pure pattern computations."""

import logging
from collections import OrderedDict
from threading import Lock
from typing import Any, Callable, Dict, Hashable, Optional

from ..utils.exceptions import CacheError

logger = logging.getLogger(__name__)


class MemoryCache:
    """Thread-safe memo with oldest-first eviction.

    Values never expire: everything stored here is a pure function of
    immutable keys (slope tuples, type references).
    """

    def __init__(self, max_size: int = 4096):
        """
        Initialize the memory cache.

        Args:
            max_size: Maximum number of entries to store.
        """
        if max_size < 1:
            raise CacheError(f"max_size must be positive, got {max_size}")
        self._cache: "OrderedDict[Hashable, Any]" = OrderedDict()
        self._lock = Lock()
        self.max_size = max_size
        self._hits = 0
        self._misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        """
        Retrieve a value from the cache.

        Args:
            key: The cache key.

        Returns:
            The cached value or None if not present.
        """
        with self._lock:
            if key in self._cache:
                self._hits += 1
                return self._cache[key]

            self._misses += 1
            return None

    def set(self, key: Hashable, value: Any) -> None:
        """
        Store a value in the cache.

        Args:
            key: The cache key.
            value: The value to cache (must not be None).
        """
        if value is None:
            raise CacheError("None cannot be cached")

        with self._lock:
            if key not in self._cache and len(self._cache) >= self.max_size:
                self._evict_oldest()

            self._cache[key] = value

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """
        Return the cached value for key, computing and storing it on a miss.

        Args:
            key: The cache key.
            compute: Zero-argument callable producing the value.

        Returns:
            The cached or freshly computed value.
        """
        value = self.get(key)
        if value is not None:
            return value

        value = compute()
        self.set(key, value)
        return value

    def delete(self, key: Hashable) -> bool:
        """
        Remove a key from the cache.

        Args:
            key: The cache key.

        Returns:
            True if the key was removed, False if not found.
        """
        with self._lock:
            if key in self._cache:
                del self._cache[key]
                return True
            return False

    def clear(self) -> None:
        """Clear all entries from the cache."""
        with self._lock:
            self._cache.clear()
            self._hits = 0
            self._misses = 0

    def _evict_oldest(self) -> None:
        """Remove the oldest entry from the cache."""
        if not self._cache:
            return

        key, _ = self._cache.popitem(last=False)
        logger.debug(f"Evicted cache entry {key!r}")

    def get_stats(self) -> Dict[str, int]:
        """Get cache statistics."""
        with self._lock:
            return {
                "hits": self._hits,
                "misses": self._misses,
                "size": len(self._cache),
                "max_size": self.max_size,
            }
