"""Rank-3 quivers as skew-symmetric exchange matrices.

Vertices are numbered 1, 2, 3.  ``b[i][j] > 0`` is an arrow ``i -> j`` of
weight ``b[i][j]``.  Weights are named ``p = |b12|``, ``q = |b23|``,
``r = |b31|``; ``cyc(p, q, r)`` is the oriented cycle ``1 -> 2 -> 3 -> 1`` and
``acyc(p, q, r)`` is the acyclic quiver with signed triple ``(p, q, -r)``.
"""
from __future__ import annotations

import functools
import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .scalar import (
    DEFAULT_EPS,
    CycloScalar,
    FloatScalar,
    Scalar,
    coerce_all,
    format_scalar,
    parse_scalar,
)

PERMUTATIONS = tuple(itertools.permutations(range(3)))


def _cmp(a, b) -> int:
    return (a - b).sign()


def _zero_like(s):
    return s * 0


@dataclass(frozen=True, eq=False)
class Quiver:
    """Immutable rank-3 quiver; ``b`` is a 3x3 tuple of scalars."""

    b: tuple

    # ------------------------------------------------------------------ build

    @classmethod
    def from_signed(cls, b12, b23, b31, eps: float | None = None) -> "Quiver":
        """Build from the signed entries ``b12, b23, b31``."""
        b12, b23, b31 = coerce_all((b12, b23, b31), eps)
        z = _zero_like(b12)
        return cls(((z, b12, -b31), (-b12, z, b23), (b31, -b23, z)))

    @classmethod
    def cyclic(cls, p, q, r, eps: float | None = None) -> "Quiver":
        _check_magnitudes(p, q, r)
        return cls.from_signed(p, q, r, eps)

    @classmethod
    def acyclic(cls, p, q, r, eps: float | None = None) -> "Quiver":
        _check_magnitudes(p, q, r)
        p, q, r = coerce_all((p, q, r), eps)
        return cls.from_signed(p, q, -r)

    @classmethod
    def from_matrix(cls, rows, exact: bool = True, eps: float = DEFAULT_EPS) -> "Quiver":
        """Build from a 3x3 nested list of scalars or scalar text; must be skew-symmetric."""
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise DomainError("exchange matrix must be 3x3", code="bad_matrix")
        parsed = [
            [v if isinstance(v, Scalar) else parse_scalar(v, exact=exact, eps=eps) for v in row]
            for row in rows
        ]
        flat = coerce_all([v for row in parsed for v in row])
        m = [flat[0:3], flat[3:6], flat[6:9]]
        for i in range(3):
            if m[i][i].sign() != 0:
                raise DomainError("diagonal entries must vanish", code="bad_matrix")
            for j in range(i + 1, 3):
                if (m[i][j] + m[j][i]).sign() != 0:
                    raise DomainError("matrix is not skew-symmetric", code="bad_matrix")
        return cls.from_signed(m[0][1], m[1][2], m[2][0])

    @classmethod
    def from_json(cls, data, exact: bool = True, eps: float = DEFAULT_EPS) -> "Quiver":
        if isinstance(data, str):
            data = json.loads(data)
        if "b" not in data:
            raise DomainError("quiver JSON needs a 'b' matrix", code="bad_matrix")
        return cls.from_matrix(data["b"], exact=exact, eps=eps)

    # ---------------------------------------------------------------- queries

    def entry(self, i: int, j: int):
        """Signed entry ``b_ij`` with 1-based indices."""
        return self.b[i - 1][j - 1]

    @property
    def signed(self) -> tuple:
        return (self.b[0][1], self.b[1][2], self.b[2][0])

    def weights(self) -> tuple:
        """``(p, q, r) = (|b12|, |b23|, |b31|)``."""
        return tuple(abs(x) for x in self.signed)

    def is_exact(self) -> bool:
        return isinstance(self.b[0][1], CycloScalar)

    @property
    def eps(self) -> float:
        x = self.b[0][1]
        return x.eps if isinstance(x, FloatScalar) else 0.0

    def is_cyclic(self) -> bool:
        signs = [x.sign() for x in self.signed]
        return 0 not in signs and signs[0] == signs[1] == signs[2]

    def mutate(self, k: int) -> "Quiver":
        return mutate(self, k)

    def markov_constant(self):
        return markov_constant(self)

    def relabel(self, perm) -> "Quiver":
        """Quiver with vertex ``perm[i]`` renamed to ``i`` (0-based permutation)."""
        b = self.b
        return Quiver(tuple(tuple(b[perm[i]][perm[j]] for j in range(3)) for i in range(3)))

    def to_json(self) -> dict:
        return {"b": [[scalar_to_json(v) for v in row] for row in self.b]}

    def text(self) -> str:
        return quiver_text(self)

    def __str__(self):
        return quiver_text(self)

    def __repr__(self):
        return f"Quiver({quiver_text(self)})"

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return all(a == b for a, b in zip(self.signed, other.signed))

    def __hash__(self):
        return hash(tuple(x.key() for x in self.signed))


def _check_magnitudes(*values):
    for v in values:
        s = v.sign() if isinstance(v, Scalar) else (v > 0) - (v < 0)
        if s < 0:
            raise DomainError("weights must be non-negative; orientation is given by cyc/acyc",
                              code="negative_weight")


def scalar_to_json(v):
    """JSON value of a scalar: an int when integral and exact, else text."""
    if isinstance(v, FloatScalar):
        x = v.value
        return int(x) if x.is_integer() and abs(x) < 2**53 else x
    if isinstance(v, CycloScalar):
        n = v.normalized()
        if n.n == 1 and n.coeffs[0].denominator == 1:
            return int(n.coeffs[0])
        return format_scalar(v)
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v if isinstance(v, int) else str(v)


# ------------------------------------------------------------------- mutation


def mutate(Q: Quiver, k: int) -> Quiver:
    """Matrix mutation at vertex ``k`` (1-based)."""
    if k not in (1, 2, 3):
        raise DomainError(f"vertex must be 1, 2 or 3, got {k!r}", code="bad_vertex")
    k -= 1
    b = Q.b
    out = [list(row) for row in b]
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            if i == k or j == k:
                out[i][j] = -b[i][j]
                continue
            bik, bkj = b[i][k], b[k][j]
            si, sj = bik.sign(), bkj.sign()
            if si > 0 and sj > 0:
                out[i][j] = b[i][j] + bik * bkj
            elif si < 0 and sj < 0:
                out[i][j] = b[i][j] - bik * bkj
    return Quiver(tuple(tuple(row) for row in out))


def mutate_word(Q: Quiver, word) -> Quiver:
    for k in word:
        Q = mutate(Q, k)
    return Q


def is_cyclic(Q: Quiver) -> bool:
    return Q.is_cyclic()


def markov_constant(Q: Quiver):
    """``p^2+q^2+r^2-pqr`` for a cyclic quiver and ``p^2+q^2+r^2+pqr`` otherwise."""
    p, q, r = Q.weights()
    s = p * p + q * q + r * r
    return s - p * q * r if Q.is_cyclic() else s + p * q * r


def markov_scale(Q: Quiver) -> float:
    """``p^2+q^2+r^2+pqr`` as a float: the natural magnitude for drift checks."""
    p, q, r = (float(x) for x in Q.weights())
    return p * p + q * q + r * r + p * q * r


# ------------------------------------------------------------- canonical forms


@dataclass(frozen=True)
class CanonicalKey:
    cyclic: bool
    entries: tuple


def _transforms(Q: Quiver):
    """All 12 images of ``Q`` under relabeling and passing to the opposite quiver."""
    for flip in (1, -1):
        for perm in PERMUTATIONS:
            yield flip, perm


def _image_key(b, flip, perm):
    entries = (b[perm[0]][perm[1]], b[perm[0]][perm[2]], b[perm[1]][perm[2]])
    return tuple((x if flip > 0 else -x).key() for x in entries)


def canonical_key(Q: Quiver) -> CanonicalKey:
    """Key shared by all relabelings of ``Q`` and of its opposite quiver.

    Reversing every arrow commutes with mutation, so identifying a quiver with
    its opposite is compatible with the mutation graph; it is needed for the
    two orientations of a cycle with distinct weights to be identified.
    """
    best = min(_image_key(Q.b, flip, perm) for flip, perm in _transforms(Q))
    return CanonicalKey(Q.is_cyclic(), best)


def canonical_form(Q: Quiver) -> Quiver:
    """The image of ``Q`` attaining its canonical key."""
    flip, perm = min(_transforms(Q), key=lambda t: _image_key(Q.b, *t))
    R = Q.relabel(perm)
    return R if flip > 0 else opposite(R)


def opposite(Q: Quiver) -> Quiver:
    """The quiver with every arrow reversed."""
    return Quiver(tuple(tuple(-x for x in row) for row in Q.b))


def standard_form(Q: Quiver) -> Quiver:
    """An image of ``Q`` written as ``cyc(p,q,r)`` or ``acyc(p,q,r)`` (all entries ``>= 0`` except ``b31``)."""
    for flip, perm in _transforms(Q):
        R = Q.relabel(perm)
        if flip < 0:
            R = opposite(R)
        s = [x.sign() for x in R.signed]
        if s == [1, 1, 1] or (s[0] >= 0 and s[1] >= 0 and s[2] <= 0):
            return R
    raise AssertionError("every rank-3 quiver has a standard form")  # pragma: no cover


def triple_text(Q: Quiver) -> str:
    """``cyc(...)``/``acyc(...)`` shorthand of ``Q`` up to relabeling and reversal."""
    return quiver_text(standard_form(Q))


@dataclass(frozen=True, eq=False)
class WeightTriple:
    """Weights ``p >= q >= r`` with a flag: ``oriented`` means cyclic."""

    p: object
    q: object
    r: object
    oriented: bool

    def as_tuple(self) -> tuple:
        return (self.p, self.q, self.r)

    def key(self) -> tuple:
        return (self.oriented,) + tuple(x.key() for x in self.as_tuple())

    def __eq__(self, other):
        if not isinstance(other, WeightTriple):
            return NotImplemented
        return self.oriented == other.oriented and all(
            a == b for a, b in zip(self.as_tuple(), other.as_tuple())
        )

    def __hash__(self):
        return hash(self.key())

    def text(self) -> str:
        body = ",".join(format_scalar(x) for x in self.as_tuple())
        return f"cyc({body})" if self.oriented else f"acyc({body})"

    def __repr__(self):
        return f"WeightTriple({self.text()})"

    def to_json(self) -> dict:
        return {"weights": [scalar_to_json(x) for x in self.as_tuple()], "cyclic": self.oriented}


def sort_desc(values) -> list:
    return sorted(values, key=functools.cmp_to_key(_cmp), reverse=True)


def sink_source_class(Q: Quiver) -> WeightTriple:
    """Sorted weight multiset plus the cyclic flag (the class up to sink/source moves)."""
    p, q, r = sort_desc(Q.weights())
    return WeightTriple(p, q, r, Q.is_cyclic())


def weight_triple(Q: Quiver) -> WeightTriple:
    p, q, r = Q.weights()
    return WeightTriple(p, q, r, Q.is_cyclic())


# ---------------------------------------------------------- Chebyshev sequence


def chebyshev_u(x, n: int):
    """Second-kind recurrence ``u_0 = 1, u_1 = x, u_{n+1} = x u_n - u_{n-1}``; ``u_{-1} = 0``."""
    prev, cur = x * 0, x * 0 + 1
    for _ in range(n):
        prev, cur = cur, x * cur - prev
    return cur


def chebyshev_sequence(p, q, r, N: int) -> list:
    """``f_n = u_n(r) q - u_{n-1}(r) p`` for ``n = 1..N``.

    These are the successive new weights of the alternating mutations
    ``mu_3, mu_1, mu_3, ...`` applied to ``cyc(p, q, r)`` while every
    intermediate quiver stays cyclic.
    """
    if N < 0:
        raise DomainError("N must be non-negative", code="bad_length")
    p, q, r = coerce_all((p, q, r))
    out = []
    prev_u, u = r * 0, r * 0 + 1
    for _ in range(N):
        prev_u, u = u, r * u - prev_u
        out.append(u * q - prev_u * p)
    return out


def alternating_weights(p, q, r, N: int) -> list:
    """New weights produced by ``mu_3, mu_1, mu_3, ...`` on ``cyc(p, q, r)``, stopping once acyclic."""
    Q = Quiver.cyclic(p, q, r)
    out = []
    for n in range(N):
        k = 3 if n % 2 == 0 else 1
        Q = mutate(Q, k)
        if not Q.is_cyclic():
            break
        pair = (0, 1) if k == 3 else (1, 2)
        out.append(abs(Q.b[pair[0]][pair[1]]))
    return out


# ------------------------------------------------------------------- text form

_TRIPLE = re.compile(r"^\s*(cyc|acyc|signed)\s*\((.*)\)\s*$", re.IGNORECASE | re.DOTALL)


def _split_args(body: str) -> list:
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def parse_quiver(text: str, exact: bool = True, eps: float = DEFAULT_EPS) -> Quiver:
    """Parse ``cyc(p,q,r)``, ``acyc(p,q,r)``, ``signed(b12,b23,b31)`` or quiver JSON."""
    text = text.strip()
    if text.startswith("{"):
        return Quiver.from_json(text, exact=exact, eps=eps)
    m = _TRIPLE.match(text)
    if not m:
        raise DomainError(f"cannot parse quiver {text!r}", code="parse_error")
    args = _split_args(m.group(2))
    if len(args) != 3:
        raise DomainError(f"expected three weights in {text!r}", code="parse_error")
    values = [parse_scalar(a, exact=exact, eps=eps) for a in args]
    kind = m.group(1).lower()
    if kind == "signed":
        return Quiver.from_signed(*values)
    if kind == "cyc":
        return Quiver.cyclic(*values)
    # acyc also accepts the signed spelling with a non-positive third entry
    if values[2].sign() < 0:
        values[2] = -values[2]
    return Quiver.acyclic(*values)


def quiver_text(Q: Quiver) -> str:
    """Faithful text form: ``cyc``/``acyc`` when the labels allow it, else ``signed``."""
    b12, b23, b31 = Q.signed
    s = [x.sign() for x in (b12, b23, b31)]
    fmt = format_scalar
    if s == [1, 1, 1]:
        return f"cyc({fmt(b12)},{fmt(b23)},{fmt(b31)})"
    if s[0] >= 0 and s[1] >= 0 and s[2] <= 0:
        return f"acyc({fmt(b12)},{fmt(b23)},{fmt(-b31)})"
    return f"signed({fmt(b12)},{fmt(b23)},{fmt(b31)})"
