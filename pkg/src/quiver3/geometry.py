"""Realizations of rank-3 quivers in three-dimensional quadratic spaces.

A reflection realization is a triple of vectors of norm 2 whose pairwise
products are ``+-|b_ij|``; mutation acts by partial reflections.  A rotation
realization is a triple of points on the hyperboloid ``(v, v) = -2`` with
products ``-|b_ij|``; mutation acts by partial pi-rotations.

Gram matrices are kept in the quiver's scalar backend and updated exactly.
Vector coordinates are floats and are used for drawing and for trace
computations only.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .quiver import Quiver, markov_constant
from .scalar import CycloScalar, angle_fraction, coerce_all

EIGEN_TOL = 1e-10


class Kind(str, enum.Enum):
    REFLECTION = "Reflection"
    ROTATION = "Rotation"


@dataclass(frozen=True)
class QuadraticSpace:
    """Diagonal form with ``n_plus`` ones, ``n_zero`` zeros and ``n_minus`` minus ones."""

    signature: tuple

    def __post_init__(self):
        if tuple(self.signature) not in SPACES:
            raise DomainError(f"unsupported signature {self.signature}", code="bad_signature")

    @property
    def name(self) -> str:
        return SPACES[tuple(self.signature)]

    @property
    def form(self) -> np.ndarray:
        n_plus, n_zero, n_minus = self.signature
        return np.diag([1.0] * n_plus + [0.0] * n_zero + [-1.0] * n_minus)

    def inner(self, u, v) -> float:
        return float(np.asarray(u) @ self.form @ np.asarray(v))


SPACES = {(3, 0, 0): "S2", (2, 1, 0): "E2", (2, 0, 1): "H2"}
SPHERE = QuadraticSpace((3, 0, 0))
EUCLIDEAN = QuadraticSpace((2, 1, 0))
HYPERBOLIC = QuadraticSpace((2, 0, 1))


@dataclass(eq=False)
class Realization:
    """Three vectors (rows of ``vectors``) with their exact Gram matrix."""

    kind: Kind
    space: QuadraticSpace
    vectors: np.ndarray
    gram: tuple
    quiver: Quiver | None = field(default=None)

    def numeric_gram(self) -> np.ndarray:
        v = self.vectors
        return v @ self.space.form @ v.T

    def gram_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.gram])

    def to_json(self) -> dict:
        from .quiver import scalar_to_json

        return {
            "kind": self.kind.value,
            "signature": list(self.space.signature),
            "vectors": [[float(x) for x in row] for row in self.vectors],
            "gram": [[scalar_to_json(x) for x in row] for row in self.gram],
        }


# ----------------------------------------------------------------------- Gram


def gram_of(Q: Quiver, rotation: bool = False) -> tuple:
    """``M(B)``: diagonal 2 and off-diagonal ``-|b_ij|``; the rotation variant has diagonal -2."""
    w = Q.weights()
    two = w[0] * 0 + 2
    d = -two if rotation else two
    m = [[d, -w[0], -w[2]], [-w[0], d, -w[1]], [-w[2], -w[1], d]]
    return tuple(tuple(row) for row in m)


def det3(m):
    """Determinant of a 3x3 matrix of scalars, exactly in their backend."""
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _reflection_gram(Q: Quiver) -> tuple:
    """Gram with norms 2: all products negative for acyclic, all positive for cyclic quivers."""
    w = Q.weights()
    two = w[0] * 0 + 2
    s = 1 if Q.is_cyclic() else -1
    a, b, c = (x * s for x in w)
    return ((two, a, c), (a, two, b), (c, b, two))


def _signature_counts(g: np.ndarray):
    vals = np.linalg.eigvalsh(g)
    scale = max(1.0, float(np.max(np.abs(vals))))
    tol = EIGEN_TOL * scale
    return vals, int(np.sum(vals > tol)), int(np.sum(np.abs(vals) <= tol)), int(np.sum(vals < -tol))


def _coordinates(g: np.ndarray, space: QuadraticSpace) -> np.ndarray:
    """Rows ``v_i`` with ``v_i . form . v_j = g_ij`` in the given space."""
    vals, vecs = np.linalg.eigh(g)
    scale = max(1.0, float(np.max(np.abs(vals))))
    tol = EIGEN_TOL * scale
    order = np.argsort(-vals)
    vals, vecs = vals[order], vecs[:, order]
    out = np.zeros((3, 3))
    n_plus, n_zero, n_minus = space.signature
    pos = [i for i in range(3) if vals[i] > tol]
    neg = [i for i in range(3) if vals[i] < -tol]
    if len(pos) > n_plus or len(neg) > n_minus:
        raise DomainError("not realizable by reflections", code="not_realizable_by_reflections")
    for col, i in enumerate(pos):
        out[:, col] = vecs[:, i] * math.sqrt(vals[i])
    for col, i in zip(range(3 - n_minus, 3), neg):
        out[:, col] = vecs[:, i] * math.sqrt(-vals[i])
    return out


def build_reflection_realization(Q: Quiver) -> Realization:
    """Normals of three lines realizing ``Q`` by reflections.

    The space follows the exact sign of ``det`` together with the signature of
    the Gram matrix: positive definite gives S2, positive semidefinite and
    singular gives E2, one negative direction gives H2.
    """
    g = _reflection_gram(Q)
    d = det3(g)
    ds = d.sign()
    gf = np.array([[float(x) for x in row] for row in g])
    minors = [(g[i][i] * g[j][j] - g[i][j] * g[i][j]).sign() for i, j in ((0, 1), (1, 2), (0, 2))]
    if ds > 0:
        if min(minors) > 0:
            space = SPHERE
        else:
            raise DomainError("not realizable by reflections", code="not_realizable_by_reflections")
    elif ds < 0:
        space = HYPERBOLIC
    else:
        if min(minors) >= 0:
            space = EUCLIDEAN
        else:
            _, _, _, n_minus = _signature_counts(gf)
            if n_minus > 1:
                raise DomainError("not realizable by reflections",
                                  code="not_realizable_by_reflections")
            space = HYPERBOLIC
    vectors = _coordinates(gf, space)
    if space is EUCLIDEAN:
        # the degenerate coordinate places each line at unit distance from the origin
        vectors[:, 2] = -math.sqrt(2.0)
    return Realization(Kind.REFLECTION, space, vectors, g, Q)


def build_rotation_realization(p, q, r) -> Realization:
    """Three points on ``(v, v) = -2`` with products ``-p``, ``-q``, ``-r`` for pairs 12, 23, 31.

    ``v1`` sits at the hyperboloid vertex, ``v2`` at distance ``d_p`` along the
    first axis, and ``v3`` at distance ``d_r`` from ``v1`` with its direction
    chosen by the hyperbolic cosine rule so that it is ``d_q`` from ``v2``.
    """
    p, q, r = coerce_all((p, q, r))
    tri = triangle_data(p, q, r)
    if tri.delta_sign < 0:
        raise DomainError("triangle inequality fails", code="triangle_inequality_fails")
    dp, dq, dr = (_arccosh_half(x) for x in (p, q, r))
    root2 = math.sqrt(2.0)
    v1 = np.array([0.0, 0.0, root2])
    v2 = root2 * np.array([math.sinh(dp), 0.0, math.cosh(dp)])
    if dp == 0.0 or dr == 0.0:
        cos_phi = 1.0
    else:
        cos_phi = (math.cosh(dp) * math.cosh(dr) - math.cosh(dq)) / (math.sinh(dp) * math.sinh(dr))
        cos_phi = max(-1.0, min(1.0, cos_phi))
    if tri.delta_sign == 0:
        cos_phi = 1.0 if abs(dq - abs(dp - dr)) <= abs(dq - (dp + dr)) else -1.0
    sin_phi = math.sqrt(max(0.0, 1.0 - cos_phi * cos_phi))
    v3 = root2 * np.array([math.sinh(dr) * cos_phi, math.sinh(dr) * sin_phi, math.cosh(dr)])
    Q = Quiver.cyclic(p, q, r)
    return Realization(Kind.ROTATION, HYPERBOLIC, np.vstack([v1, v2, v3]), gram_of(Q, rotation=True), Q)


def realize(Q: Quiver) -> Realization:
    """Realization by pi-rotations for mutation-cyclic quivers, by reflections otherwise.

    Mutation-cyclic means cyclic with every weight at least 2 and ``C <= 4``.
    """
    w = Q.weights()
    if Q.is_cyclic() and all((x - 2).sign() >= 0 for x in w) and (markov_constant(Q) - 4).sign() <= 0:
        R = build_rotation_realization(*w)
        R.quiver = Q
        return R
    return build_reflection_realization(Q)


def _arccosh_half(x) -> float:
    return math.acosh(max(1.0, float(x) / 2.0))


# ------------------------------------------------------------------ mutation


def mutation_matrix(R: Realization, Q: Quiver, k: int) -> tuple:
    """Exact matrix ``T`` with ``v' = T v`` for the partial reflection/rotation at ``k``."""
    k -= 1
    g = R.gram
    zero = g[0][0] * 0
    one = zero + 1
    t = [[one if i == j else zero for j in range(3)] for i in range(3)]
    rotation = R.kind is Kind.ROTATION
    for j in range(3):
        if j == k:
            continue
        if Q.b[j][k].sign() > 0:
            t[j][j] = -one if rotation else one
            t[j][k] = -g[j][k]
    if not rotation:
        t[k][k] = -one
    return tuple(tuple(row) for row in t)


def _dot(pairs):
    """Sum of products, skipping exact zero factors; None when every term vanishes."""
    total = None
    for x, y in pairs:
        if _is_exact_zero(x) or _is_exact_zero(y):
            continue
        term = x * y
        total = term if total is None else total + term
    return total


def _is_exact_zero(x) -> bool:
    return isinstance(x, CycloScalar) and x.is_zero()


def mutate_realization(R: Realization, Q: Quiver, k: int) -> Realization:
    """Apply the partial reflection (or rotation) at vertex ``k``; the Gram is updated exactly."""
    if k not in (1, 2, 3):
        raise DomainError(f"vertex must be 1, 2 or 3, got {k!r}", code="bad_vertex")
    t = mutation_matrix(R, Q, k)
    g = R.gram
    zero = g[0][0] * 0
    # the moved vectors (v_k and the tails of arrows into k) undergo one isometry,
    # so only products between a moved and a fixed vector change
    moved = {i for i in range(3) if i == k - 1 or Q.b[i][k - 1].sign() > 0}
    new_g = [[g[i][j] for j in range(3)] for i in range(3)]
    for i in moved:
        for j in range(3):
            if j not in moved:
                value = _dot((t[i][a], g[a][j]) for a in range(3)) or zero
                new_g[i][j] = value
                new_g[j][i] = value
    new_g = tuple(tuple(row) for row in new_g)
    tf = np.array([[float(x) for x in row] for row in t])
    return Realization(R.kind, R.space, tf @ R.vectors, new_g, Q.mutate(k))


# ----------------------------------------------------------------- conditions


def reflection_conditions(gram, Q: Quiver) -> list:
    """Violations of the reflection conditions for ``Q``; empty when all hold."""
    problems = []
    w = Q.weights()
    pairs = ((0, 1, w[0]), (1, 2, w[1]), (0, 2, w[2]))
    for i in range(3):
        if (gram[i][i] - 2).sign() != 0:
            problems.append(f"norm of v{i + 1} is not 2")
    for i, j, x in pairs:
        if (abs(gram[i][j]) - x).sign() != 0:
            problems.append(f"|(v{i + 1},v{j + 1})| differs from the weight")
        if (gram[i][j] - gram[j][i]).sign() != 0:
            problems.append("Gram is not symmetric")
    signs = [gram[i][j].sign() for i, j, _ in pairs]
    if 0 not in signs:
        even = sum(1 for s in signs if s > 0) % 2 == 0
        if even == Q.is_cyclic():
            problems.append("parity of positive products does not match cyclicity")
    return problems


def rotation_conditions(gram, Q: Quiver) -> list:
    problems = []
    w = Q.weights()
    for i in range(3):
        if (gram[i][i] + 2).sign() != 0:
            problems.append(f"norm of v{i + 1} is not -2")
    for i, j, x in ((0, 1, w[0]), (1, 2, w[1]), (0, 2, w[2])):
        if (gram[i][j] + x).sign() != 0 or (gram[j][i] + x).sign() != 0:
            problems.append(f"(v{i + 1},v{j + 1}) differs from -weight")
    return problems


def check_realization(R: Realization, Q: Quiver | None = None) -> list:
    Q = Q if Q is not None else R.quiver
    if R.kind is Kind.REFLECTION:
        return reflection_conditions(R.gram, Q)
    return rotation_conditions(R.gram, Q)


def positive_count_is_even(R: Realization) -> bool | None:
    """Parity of positive off-diagonal Gram entries, or None if one of them vanishes."""
    signs = [R.gram[i][j].sign() for i, j in ((0, 1), (1, 2), (0, 2))]
    if 0 in signs:
        return None
    return sum(1 for s in signs if s > 0) % 2 == 0


# ------------------------------------------------------------------ triangles


@dataclass(frozen=True)
class TriangleData:
    """Distances ``d_x = arccosh(x/2)`` for the sorted weights and ``delta = d_p + d_q - d_r``."""

    d_p: float
    d_q: float
    d_r: float
    delta: float
    delta_sign: int


def delta_sign(p, q, r) -> int:
    """Sign of ``d_p + d_q - d_r`` for weights ``2 <= p <= q <= r``, decided without arccosh."""
    s = 2 * r - p * q
    ss = s.sign()
    if ss < 0:
        return 1
    if ss == 0:
        return 0 if ((p - 2).sign() == 0 or (q - 2).sign() == 0) else 1
    return (((p * p - 4) * (q * q - 4)) - s * s).sign()


def triangle_data(p, q, r) -> TriangleData:
    p, q, r = coerce_all((p, q, r))
    if min((x - 2).sign() for x in (p, q, r)) < 0:
        raise DomainError("weight below 2", code="weight_below_2")
    a, b, c = sorted((p, q, r), key=functools.cmp_to_key(lambda x, y: (x - y).sign()))
    da, db, dc = (_arccosh_half(x) for x in (a, b, c))
    return TriangleData(da, db, dc, da + db - dc, delta_sign(a, b, c))


# --------------------------------------------------------------------- angles


@dataclass(frozen=True)
class Angle:
    radians: float
    pi_multiple: object  # Fraction when exactly known, else None


def angles_of(Q: Quiver) -> tuple:
    """``theta_x = arccos(x/2)`` for each weight; exact multiples of pi when available."""
    out = []
    for x in Q.weights():
        if (x - 2).sign() > 0:
            raise DomainError("weight exceeds 2", code="weight_exceeds_2")
        frac = angle_fraction(x) if isinstance(x, CycloScalar) else None
        rad = math.pi * float(frac) if frac is not None else math.acos(max(-1.0, min(1.0, float(x) / 2)))
        out.append(Angle(rad, frac))
    return tuple(out)


# ------------------------------------------------------------------- isometry


def hyperboloid_to_half_plane(v) -> complex:
    """Point of the upper half-plane for a timelike vector of the (2,0,1) space."""
    v = np.asarray(v, dtype=float)
    x1, x2, x0 = v
    norm = math.sqrt(max(x0 * x0 - x1 * x1 - x2 * x2, 0.0))
    if norm == 0.0:
        raise DomainError("vector is not timelike", code="not_timelike")
    x1, x2, x0 = x1 / norm, x2 / norm, x0 / norm
    if x0 < 0:
        x1, x2, x0 = -x1, -x2, -x0
    w = complex(x1, x2) / (1.0 + x0)
    return 1j * (1 + w) / (1 - w)


def half_turn_matrix(z: complex) -> np.ndarray:
    """SL(2,R) matrix of the pi-rotation about ``z`` in the upper half-plane."""
    x, y = z.real, z.imag
    sy = math.sqrt(y)
    a = np.array([[sy, x / sy], [0.0, 1.0 / sy]])
    a_inv = np.array([[1.0 / sy, -x / sy], [0.0, sy]])
    s = np.array([[0.0, -1.0], [1.0, 0.0]])
    return a @ s @ a_inv


def composed_isometry_matrix(R: Realization) -> np.ndarray:
    if R.kind is not Kind.ROTATION:
        raise DomainError("need a rotation realization", code="not_rotation")
    m = np.eye(2)
    for v in R.vectors:
        m = m @ half_turn_matrix(hyperboloid_to_half_plane(v))
    return m


def composed_isometry_trace(R: Realization) -> float:
    """``|trace|`` of the product of the three pi-rotations, as a 2x2 matrix product."""
    return abs(float(np.trace(composed_isometry_matrix(R))))


@dataclass(frozen=True)
class IsometryInfo:
    trace: float
    isometry_type: str
    angle_trace_is_2cos: float | None  # alpha with |tr| = 2cos(alpha)
    angle_trace_is_2cos_half: float | None  # theta with |tr| = 2cos(theta/2)
    translation_length: float | None

    def to_json(self) -> dict:
        return {
            "trace": self.trace,
            "isometry": self.isometry_type,
            "rotation_angle_if_trace_is_2cos_angle": self.angle_trace_is_2cos,
            "rotation_angle_if_trace_is_2cos_half_angle": self.angle_trace_is_2cos_half,
            "translation_length": self.translation_length,
        }


def isometry_type_from_markov(C) -> str:
    s = C.sign()
    return "Elliptic" if s > 0 else ("Parabolic" if s == 0 else "Hyperbolic")


def isometry_info(R: Realization) -> IsometryInfo:
    """Trace plus the rotation angle under both trace conventions, or the translation length."""
    t = composed_isometry_trace(R)
    C = markov_constant(R.quiver) if R.quiver is not None else None
    kind = isometry_type_from_markov(C) if C is not None else (
        "Elliptic" if t < 2 else ("Parabolic" if t == 2 else "Hyperbolic"))
    alpha = theta = length = None
    if kind == "Elliptic":
        alpha = math.acos(min(1.0, t / 2))
        theta = 2 * alpha
    elif kind == "Hyperbolic":
        length = 2 * math.acosh(max(1.0, t / 2))
    return IsometryInfo(t, kind, alpha, theta, length)


def lorentz_boost(t: float, axis: int = 0) -> np.ndarray:
    """Isometry of the (2,0,1) form: a boost along coordinate ``axis``."""
    m = np.eye(3)
    c, s = math.cosh(t), math.sinh(t)
    m[axis, axis] = c
    m[2, 2] = c
    m[axis, 2] = s
    m[2, axis] = s
    return m


def transform(R: Realization, m: np.ndarray) -> Realization:
    """Apply an ambient isometry ``m`` to every vector of ``R``."""
    return Realization(R.kind, R.space, R.vectors @ m.T, R.gram, R.quiver)


__all__ = [
    "realize",
    "Angle",
    "IsometryInfo",
    "Kind",
    "QuadraticSpace",
    "Realization",
    "TriangleData",
    "angles_of",
    "build_reflection_realization",
    "build_rotation_realization",
    "check_realization",
    "composed_isometry_trace",
    "delta_sign",
    "det3",
    "gram_of",
    "isometry_info",
    "mutate_realization",
    "reflection_conditions",
    "rotation_conditions",
    "triangle_data",
]
