"""Cache module for tubqi."""

from .memory import MemoryCache

__all__ = ["MemoryCache"]
