"""Search for acyclic representatives with the known mutation-distance bounds."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .classify import MUTATION_CYCLIC, ClassReport, classify
from .errors import CapExceeded, DomainError
from .quiver import Quiver, markov_constant, mutate, mutate_word

DEFAULT_DEPTH_CAP = 25
DEFAULT_NODE_CAP = 200_000
FLOOR_SLACK = 1e-9


class SearchCapExceeded(CapExceeded):
    code = "no_acyclic_found_within_cap"


@dataclass
class SearchResult:
    word: list | None
    quiver: Quiver | None
    bound_used: int | None
    strategy: str
    verdict_if_none: ClassReport | None = None

    @property
    def found(self) -> bool:
        return self.word is not None

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "word": " ".join(str(k) for k in self.word) if self.word is not None else None,
            "quiver": self.quiver.text() if self.quiver is not None else None,
            "bound": self.bound_used,
            "strategy": self.strategy,
            "certificate": self.verdict_if_none.to_json() if self.verdict_if_none else None,
        }


def spherical_bound(C) -> int:
    """``floor(pi / arcsin(sqrt(4 - C) / 2))`` for ``0 < C < 4``."""
    if C.sign() <= 0 or (C - 4).sign() >= 0:
        raise DomainError("spherical bound needs 0 < C < 4", code="bound_domain")
    x = math.sqrt(4.0 - float(C)) / 2.0
    return math.floor(math.pi / math.asin(min(1.0, x)) + FLOOR_SLACK)


def line_bound(p) -> int:
    """``floor(pi / arccos(p / 2))`` for ``0 <= p < 2``."""
    if (p - 2).sign() >= 0 or p.sign() < 0:
        raise DomainError("line bound needs 0 <= p < 2", code="bound_domain")
    return math.floor(math.pi / math.acos(float(p) / 2.0) + FLOOR_SLACK)


_PAIRS = ((1, 2), (2, 3), (1, 3))


def _pair_weight(Q: Quiver, pair):
    i, j = pair
    return abs(Q.entry(i, j))


def line_strategy(Q: Quiver, pair=None, budget: int | None = None):
    """Alternate the two mutations at the ends of an edge of weight ``< 2``.

    Both starting orders are tried; the shortest word reaching an acyclic
    quiver within ``budget`` (default the line bound) is returned, or None.
    """
    if pair is None:
        candidates = [pr for pr in _PAIRS if (_pair_weight(Q, pr) - 2).sign() < 0]
        if not candidates:
            raise DomainError("no weight below 2", code="bound_domain")
        pair = min(candidates, key=lambda pr: line_bound(_pair_weight(Q, pr)))
    p = _pair_weight(Q, pair)
    if budget is None:
        budget = line_bound(p)
    if not Q.is_cyclic():
        return [], pair, budget
    best = None
    for first, second in (pair, pair[::-1]):
        cur = Q
        word = []
        for step in range(budget):
            k = first if step % 2 == 0 else second
            cur = mutate(cur, k)
            word.append(k)
            if not cur.is_cyclic():
                if best is None or len(word) < len(best):
                    best = list(word)
                break
    return best, pair, budget


def bfs_acyclic(Q: Quiver, depth_cap: int, node_cap: int = DEFAULT_NODE_CAP):
    """Shortest mutation word to an acyclic quiver, searching all three directions."""
    if not Q.is_cyclic():
        return []
    seen = {Q}
    frontier = deque([(Q, [])])
    while frontier:
        cur, word = frontier.popleft()
        if len(word) >= depth_cap:
            continue
        for k in (1, 2, 3):
            if word and word[-1] == k:
                continue
            nxt = mutate(cur, k)
            if not nxt.is_cyclic():
                return word + [k]
            if nxt in seen:
                continue
            seen.add(nxt)
            if len(seen) > node_cap:
                raise SearchCapExceeded(f"node cap {node_cap} reached without an acyclic quiver")
            frontier.append((nxt, word + [k]))
    return None


def _greedy_descent(Q: Quiver, limit: int = 200):
    """Mutate opposite the largest weight while the weight sum decreases."""
    word = []
    cur = Q
    total = sum(float(x) for x in cur.weights())
    for _ in range(limit):
        if not cur.is_cyclic():
            return word, cur
        w = [float(_pair_weight(cur, pr)) for pr in _PAIRS]
        pair = _PAIRS[max(range(3), key=lambda i: w[i])]
        k = ({1, 2, 3} - set(pair)).pop()
        nxt = mutate(cur, k)
        new_total = sum(float(x) for x in nxt.weights())
        if new_total >= total and nxt.is_cyclic():
            break
        word.append(k)
        cur, total = nxt, new_total
    return (word, cur) if not cur.is_cyclic() else (None, cur)


def find_acyclic(Q: Quiver, depth_cap: int = DEFAULT_DEPTH_CAP,
                 node_cap: int = DEFAULT_NODE_CAP) -> SearchResult:
    """Mutation word from ``Q`` to an acyclic quiver, or a mutation-cyclic certificate."""
    if not Q.is_cyclic():
        return SearchResult([], Q, 0, "already_acyclic")
    report = classify(Q)
    if report.verdict == MUTATION_CYCLIC:
        return SearchResult(None, None, None, "certificate", verdict_if_none=report)
    C = markov_constant(Q)
    if C.sign() > 0 and (C - 4).sign() < 0:
        bound = spherical_bound(C)
        word = bfs_acyclic(Q, bound, node_cap)
        if word is None:
            raise SearchCapExceeded(f"no acyclic quiver within the spherical bound {bound}")
        return SearchResult(word, mutate_word(Q, word), bound, "spherical_bfs")
    if any((x - 2).sign() < 0 for x in Q.weights()):
        word, _, budget = line_strategy(Q)
        if word is not None:
            return SearchResult(word, mutate_word(Q, word), budget, "line")
    word, _ = _greedy_descent(Q)
    if word is not None:
        return SearchResult(word, mutate_word(Q, word), None, "descent")
    word = bfs_acyclic(Q, depth_cap, node_cap)
    if word is None:
        raise SearchCapExceeded(f"no acyclic quiver within depth {depth_cap}")
    return SearchResult(word, mutate_word(Q, word), depth_cap, "bfs")
