"""Random test instances: seeds with weights ``2cos(pi k/n)`` and random mutation words."""
from __future__ import annotations

import random

from .quiver import Quiver, mutate, mutate_word
from .scalar import FloatScalar, cyclo

DEFAULT_MAX_WEIGHT = 1e6


def random_word(rng: random.Random, length: int) -> list:
    """Uniform word over ``{1,2,3}``."""
    return [rng.choice((1, 2, 3)) for _ in range(length)]


def bounded_random_word(rng: random.Random, Q: Quiver, length: int,
                        max_weight: float = DEFAULT_MAX_WEIGHT) -> list:
    """Random walk of ``length`` mutations that keeps every weight at most ``max_weight``.

    Each letter is uniform among the vertices whose mutation respects the cap.
    Undoing the previous mutation always qualifies, so the walk never stalls.
    Without a cap, weights in classes with ``C > 4`` grow doubly exponentially
    along typical words.
    """
    word = []
    cur = Q
    for _ in range(length):
        options = []
        for k in (1, 2, 3):
            nxt = mutate(cur, k)
            if max(float(x) for x in nxt.weights()) <= max_weight:
                options.append((k, nxt))
        if not options:
            k = word[-1]
            options = [(k, mutate(cur, k))]
        k, cur = rng.choice(options)
        word.append(k)
    return word


def random_angle_weights(rng: random.Random, max_n: int = 12) -> tuple:
    """Three weights ``2cos(pi k/n)`` with ``0 <= k <= n/2`` sharing one ``n <= max_n``."""
    n = rng.randint(2, max_n)
    return tuple(cyclo(rng.randint(0, n // 2), n) for _ in range(3))


def random_seed(rng: random.Random, exact: bool = True, max_n: int = 12,
                cyclic: bool | None = None, eps: float = 1e-9) -> Quiver:
    """Acyclic (or, if ``cyclic``, cyclic) quiver with angle weights."""
    w = random_angle_weights(rng, max_n)
    if not exact:
        w = tuple(FloatScalar(float(x), eps) for x in w)
    if cyclic is None:
        cyclic = False
    return Quiver.cyclic(*w) if cyclic else Quiver.acyclic(*w)


def random_integer_quiver(rng: random.Random, hi: int = 12, exact: bool = True) -> Quiver:
    w = [rng.randint(0, hi) for _ in range(3)]
    if not exact:
        w = [FloatScalar(float(x)) for x in w]
    return Quiver.cyclic(*w) if rng.random() < 0.5 else Quiver.acyclic(*w)


def random_quiver(rng: random.Random, exact: bool = True, max_n: int = 12,
                  max_length: int = 12) -> tuple:
    """``(quiver, seed, word)``: a random acyclic seed moved by a random word."""
    seed = random_seed(rng, exact=exact, max_n=max_n)
    word = random_word(rng, rng.randint(0, max_length))
    return mutate_word(seed, word), seed, word
