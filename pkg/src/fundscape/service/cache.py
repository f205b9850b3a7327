"""Bounded LRU cache with per-key computation locks.

Concurrent requests for the same key coalesce: one thread computes, the
rest wait on that key's lock and then read the cached value. Different
keys never block each other.
"""

from __future__ import annotations

import threading
from collections import OrderedDict


class ComputeCache:
    def __init__(self, maxsize: int = 32):
        if maxsize < 1:
            raise ValueError("maxsize must be >= 1")
        self.maxsize = maxsize
        self._values: OrderedDict = OrderedDict()
        self._locks: dict = {}
        self._mutex = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get_or_compute(self, key, compute):
        with self._mutex:
            if key in self._values:
                self._values.move_to_end(key)
                self.hits += 1
                return self._values[key]
            key_lock = self._locks.setdefault(key, threading.Lock())
        with key_lock:
            with self._mutex:
                if key in self._values:
                    self._values.move_to_end(key)
                    self.hits += 1
                    return self._values[key]
            value = compute()
            with self._mutex:
                self.misses += 1
                self._values[key] = value
                self._values.move_to_end(key)
                while len(self._values) > self.maxsize:
                    self._values.popitem(last=False)
                self._locks.pop(key, None)
            return value

    def __len__(self) -> int:
        with self._mutex:
            return len(self._values)

    def clear(self):
        with self._mutex:
            self._values.clear()
            self._locks.clear()
            self.hits = self.misses = 0
