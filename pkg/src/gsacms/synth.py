"""Synthetic collections of similar strings for tests and benchmarks."""
from __future__ import annotations

import numpy as np

DNA = "ACGT"
DNA_N = "ACGTN"


def random_text(length: int, alphabet: str = DNA, rng=None) -> str:
    rng = np.random.default_rng(rng)
    letters = np.frombuffer(alphabet.encode(), dtype=np.uint8)
    return rng.choice(letters, size=length).tobytes().decode()


def mutate(seed: str, rate: float, alphabet: str = DNA_N, rng=None) -> str:
    """Point substitutions at each position with probability ``rate``.

    A substituted symbol may coincide with the original one.
    """
    rng = np.random.default_rng(rng)
    buf = np.frombuffer(seed.encode(), dtype=np.uint8).copy()
    hit = rng.random(len(buf)) < rate
    letters = np.frombuffer(alphabet.encode(), dtype=np.uint8)
    buf[hit] = rng.choice(letters, size=int(hit.sum()))
    return buf.tobytes().decode()


def mutated_copies(seed: str, copies: int, rate: float, alphabet: str = DNA_N, rng=None) -> list[str]:
    rng = np.random.default_rng(rng)
    return [mutate(seed, rate, alphabet, rng) for _ in range(copies)]


def similar_collection(length: int, copies: int, rate: float, alphabet: str = DNA_N,
                       rng=None) -> tuple[str, list[str]]:
    """``(seed, docs)``: a random seed and ``copies`` mutated versions of it."""
    rng = np.random.default_rng(rng)
    seed = random_text(length, DNA, rng)
    return seed, mutated_copies(seed, copies, rate, alphabet, rng)
