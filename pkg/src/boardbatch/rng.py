"""Splittable deterministic random keys.

A key is an immutable 64-bit value. Derived keys are produced by folding a
child index into the state with a splitmix64 finalizer, so every stream is
a pure function of the root seed. The discipline is the usual one for
splittable RNGs: a key is consumed either by deriving children from it or
by a single draw, never both.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

_FACTORIALS = [1, 1, 2, 6, 24, 120, 720, 5040]


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    x &= _MASK
    x ^= x >> 30
    x = (x * _MUL1) & _MASK
    x ^= x >> 27
    x = (x * _MUL2) & _MASK
    return x ^ (x >> 31)


def mix64_array(x: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 finalizer over a uint64 array."""
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MUL1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MUL2)
    x ^= x >> np.uint64(31)
    return x


def child_state(state: int, index: int) -> int:
    """State of the index-th child of a key with the given state."""
    return mix64((state + (index + 1) * _GOLDEN) & _MASK)


def child_states(state: int, n: int) -> np.ndarray:
    """States of children 0..n-1 as a uint64 array (vectorized child_state)."""
    idx = np.arange(1, n + 1, dtype=np.uint64)
    return mix64_array(np.uint64(state) + idx * np.uint64(_GOLDEN))


def child_states_at(states: np.ndarray, index: int) -> np.ndarray:
    """For each state in the array, the state of its index-th child."""
    off = np.uint64(((index + 1) * _GOLDEN) & _MASK)
    return mix64_array(states.astype(np.uint64) + off)


class RngKey:
    """Immutable splittable random key.

    ``RngKey(seed)`` builds a root key from an arbitrary integer seed.
    ``child(i)`` / ``split(n)`` derive independent keys; ``randint`` and
    friends consume the key for a single draw.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        object.__setattr__(self, "state", mix64((seed + _GOLDEN) & _MASK))

    @classmethod
    def _from_state(cls, state: int) -> "RngKey":
        key = cls.__new__(cls)
        object.__setattr__(key, "state", state)
        return key

    def __setattr__(self, name, value):
        raise AttributeError("RngKey is immutable")

    def __repr__(self) -> str:
        return f"RngKey(state={self.state:#018x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RngKey) and self.state == other.state

    def __hash__(self) -> int:
        return hash(("RngKey", self.state))

    def child(self, index: int) -> "RngKey":
        return RngKey._from_state(child_state(self.state, index))

    def split(self, n: int = 2) -> tuple["RngKey", ...]:
        return tuple(RngKey._from_state(s) for s in (child_state(self.state, i) for i in range(n)))

    def randint(self, bound: int) -> int:
        """Uniform draw in [0, bound). Consumes the key."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.state % bound

    def bernoulli(self, numerator: int, denominator: int) -> bool:
        """True with probability numerator/denominator. Consumes the key."""
        return self.state % denominator < numerator

    def permutation(self, n: int) -> tuple[int, ...]:
        """Uniform permutation of range(n) via Lehmer decoding. Consumes the key."""
        if n > len(_FACTORIALS) - 1:
            raise ValueError(f"permutation supports n <= {len(_FACTORIALS) - 1}")
        code = self.state % _FACTORIALS[n]
        pool = list(range(n))
        out = []
        for radix in range(n - 1, -1, -1):
            digit, code = divmod(code, _FACTORIALS[radix])
            out.append(pool.pop(digit))
        return tuple(out)
