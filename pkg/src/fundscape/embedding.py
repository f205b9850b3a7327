"""Text embedding providers.

A provider maps text to a fixed 768-dim vector. The default is a seeded
feature-hashing bag-of-words encoder: deterministic, dependency-free, and
good enough to separate vocabularies at desk scale. External encoders
(subprocess or HTTP, line-delimited JSON) plug in behind the same contract.
"""

from __future__ import annotations

import hashlib
import json
import re
import subprocess
import urllib.request
import warnings

import numpy as np

from .errors import ValidationError

EMBED_DIM = 768
TOKEN_LIMIT = 512

_TOKEN_RE = re.compile(r"[a-z]+")


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


class HashingEmbedder:
    """Seeded feature hashing of unigrams into a 768-dim unit vector.

    Each token hashes to one coordinate with sign +-1; a document is the
    L2-normalized mean of its token vectors (order-invariant by design).
    """

    def __init__(self, dim: int = EMBED_DIM, seed: int = 0):
        if dim < 1:
            raise ValidationError("embedding dim must be >= 1")
        self.dim = dim
        self.seed = seed
        self._salt = str(seed).encode()
        self._cache: dict[str, tuple[int, float]] = {}

    def _slot(self, token: str) -> tuple[int, float]:
        found = self._cache.get(token)
        if found is None:
            digest = hashlib.blake2b(
                token.encode(), digest_size=9, salt=self._salt
            ).digest()
            value = int.from_bytes(digest, "big")
            found = (value >> 1) % self.dim, 1.0 if value & 1 else -1.0
            self._cache[token] = found
        return found

    def embed(self, text: str) -> np.ndarray:
        tokens = tokenize(text)[:TOKEN_LIMIT]
        vector = np.zeros(self.dim)
        if not tokens:
            warnings.warn("embedding empty text -> zero vector", stacklevel=2)
            return vector
        for token in tokens:
            index, sign = self._slot(token)
            vector[index] += sign
        vector /= len(tokens)
        norm = float(np.linalg.norm(vector))
        if norm > 0.0:
            vector /= norm
        return vector


class SubprocessEmbeddingProvider:
    """Bridge to an external encoder: one JSON request line on stdin,
    one ``{"vector": [...]}`` line back on stdout per call."""

    def __init__(self, command: list[str], dim: int = EMBED_DIM):
        self.command = list(command)
        self.dim = dim
        self._proc: subprocess.Popen | None = None

    def _process(self) -> subprocess.Popen:
        if self._proc is None or self._proc.poll() is not None:
            self._proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
            )
        return self._proc

    def embed(self, text: str) -> np.ndarray:
        proc = self._process()
        proc.stdin.write(json.dumps({"text": text}) + "\n")
        proc.stdin.flush()
        line = proc.stdout.readline()
        if not line:
            raise ValidationError("embedding subprocess closed its stream")
        return _checked_vector(json.loads(line)["vector"], self.dim)

    def close(self):
        if self._proc is not None and self._proc.poll() is None:
            self._proc.stdin.close()
            self._proc.wait(timeout=5)


class HTTPEmbeddingProvider:
    """Bridge to an external encoder over HTTP: POST {"text": ...},
    expect {"vector": [...]} back."""

    def __init__(self, url: str, dim: int = EMBED_DIM, timeout: float = 30.0):
        self.url = url
        self.dim = dim
        self.timeout = timeout

    def embed(self, text: str) -> np.ndarray:
        request = urllib.request.Request(
            self.url,
            data=json.dumps({"text": text}).encode(),
            headers={"Content-Type": "application/json"},
        )
        with urllib.request.urlopen(request, timeout=self.timeout) as response:
            payload = json.loads(response.read().decode())
        return _checked_vector(payload["vector"], self.dim)


def _checked_vector(values, dim: int) -> np.ndarray:
    vector = np.asarray(values, dtype=float)
    if vector.shape != (dim,):
        raise ValidationError(
            f"provider returned shape {vector.shape}, expected ({dim},)"
        )
    if not np.all(np.isfinite(vector)):
        raise ValidationError("provider returned non-finite components")
    return vector


def embed_abstract(text: str, provider=None) -> np.ndarray:
    """Embed one abstract through the given provider (default: hashing)."""
    provider = provider or HashingEmbedder()
    return _checked_vector(provider.embed(text), provider.dim)
