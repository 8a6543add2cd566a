"""Closed-form classification of mutation classes and discreteness reports."""
from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .geometry import delta_sign
from .quiver import Quiver, markov_constant, scalar_to_json, sort_desc
from .scalar import FloatScalar, angle_fraction

MUTATION_ACYCLIC = "MutationAcyclic"
MUTATION_CYCLIC = "MutationCyclic"

DEFAULT_RATIO_CAP = 64
DEFAULT_LAMBDA_CAP = 1000

SPHERICAL_EXCEPTIONS = (
    (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)),
    (Fraction(1, 3), Fraction(1, 3), Fraction(2, 5)),
    (Fraction(1, 2), Fraction(1, 5), Fraction(2, 5)),
    (Fraction(2, 5), Fraction(2, 5), Fraction(2, 5)),
)


@dataclass
class ClassReport:
    verdict: str
    markov: object
    geometry: str
    realizations: str
    isometry_type: str | None = None
    minimal_hint: str | None = None
    boundary_within_tolerance: bool = False
    quiver: Quiver | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "C": scalar_to_json(self.markov),
            "geometry": self.geometry,
            "realizations": self.realizations,
            "isometry": self.isometry_type,
            "minimal_hint": self.minimal_hint,
            "boundary_within_tolerance": self.boundary_within_tolerance,
            "quiver": self.quiver.text() if self.quiver is not None else None,
        }


@dataclass
class DiscretenessReport:
    status: str  # Discrete, NotDiscrete or Indeterminate
    code: str
    reason: str
    signature: str | None = None
    tilings: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"status": self.status, "code": self.code, "reason": self.reason}
        if self.signature is not None:
            out["signature"] = self.signature
        if self.tilings:
            out["tilings"] = self.tilings
        return out


def _geometry_of(C) -> str:
    s = (C - 4).sign()
    return "Hyperbolic" if s > 0 else ("Euclidean" if s == 0 else "Sphere")


def _isometry_of(C) -> str:
    s = C.sign()
    return "Elliptic" if s > 0 else ("Parabolic" if s == 0 else "Hyperbolic")


def _boundary_flag(Q: Quiver, C) -> bool:
    if isinstance(C, FloatScalar):
        return abs(C.value - 4.0) <= 10 * C.eps
    return False


def classify(Q: Quiver) -> ClassReport:
    """Verdict, Markov constant, geometry and realization type of the class of ``Q``."""
    C = markov_constant(Q)
    flag = _boundary_flag(Q, C)
    if not Q.is_cyclic():
        return ClassReport(MUTATION_ACYCLIC, C, _geometry_of(C), "ReflectionsOnly",
                           boundary_within_tolerance=flag, quiver=Q)
    w = sort_desc(Q.weights())
    smallest = w[2]
    s = (smallest - 2).sign()
    if s < 0 or (s == 0 and (w[0] - w[1]).sign() != 0):
        return ClassReport(MUTATION_ACYCLIC, C, _geometry_of(C), "ReflectionsOnly",
                           boundary_within_tolerance=flag, quiver=Q)
    c4 = (C - 4).sign()
    if c4 > 0:
        return ClassReport(MUTATION_ACYCLIC, C, "Hyperbolic", "ReflectionsOnly",
                           boundary_within_tolerance=flag, quiver=Q)
    report = ClassReport(MUTATION_CYCLIC, C, "RotationH2",
                         "Both" if c4 == 0 else "RotationsOnly",
                         isometry_type=_isometry_of(C), boundary_within_tolerance=flag, quiver=Q)
    report.minimal_hint = minimality_note(Q, report)
    return report


def is_mutation_cyclic(Q: Quiver) -> bool:
    return classify(Q).verdict == MUTATION_CYCLIC


# ------------------------------------------------------------- rationality


def dickson(x, n: int):
    """``D_n(x) = 2 T_n(x/2)``; for ``x = 2cosh d`` this is ``2cosh(n d)``."""
    prev, cur = x * 0 + 2, x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, x * cur - prev
    return cur


def distance_ratio(a, b, cap: int = DEFAULT_RATIO_CAP):
    """Decide ``d_a / d_b`` for exact weights ``a, b > 2``.

    Returns ``Fraction(m, n)`` when ``D_n(a) = D_m(b)`` for some ``m, n <= cap``,
    and None when no such pair exists within the cap.
    """
    da, db = math.acosh(float(a) / 2), math.acosh(float(b) / 2)
    for n in range(1, cap + 1):
        for m in range(1, cap + 1):
            if math.gcd(m, n) != 1:
                continue
            if abs(n * da - m * db) > 1e-6 * max(1.0, n * da):
                continue
            if dickson(a, n) == dickson(b, m):
                return Fraction(m, n)
    return None


def _collinear_rationality(Q: Quiver, cap: int):
    """(status, detail) for the rationality of distance ratios of a collinear configuration."""
    w = [x for x in sort_desc(Q.weights()) if (x - 2).sign() > 0]
    if len(w) < 2:
        return "rational", "at most one nonzero distance"
    if not Q.is_exact():
        return "unknown", "rationality of distance ratios cannot be decided from floats"
    a, b = w[-1], w[-2]
    ratio = distance_ratio(b, a, cap)
    if ratio is None:
        return "unknown", f"no relation D_n = D_m with m, n <= {cap}"
    return "rational", f"d ratio {ratio}"


# -------------------------------------------------------------- minimality


def minimality_note(Q: Quiver, report: ClassReport | None = None, cap: int = DEFAULT_RATIO_CAP):
    """Existence of a minimal quiver (smallest weight sum) in a mutation-cyclic class."""
    C = markov_constant(Q)
    w = sort_desc(Q.weights())
    if all((x - 2).sign() == 0 for x in w):
        return "(2,2,2): all distances vanish, trivially minimal"
    if (C - 4).sign() != 0:
        return "minimal element exists (C != 4)"
    if (w[2] - 2).sign() == 0 and (w[0] - w[1]).sign() == 0:
        return "(q,q,2) is minimal"
    status, detail = _collinear_rationality(Q, cap)
    if status == "rational":
        return f"minimal element exists ({detail})"
    return f"Indeterminate: {detail}"


# ------------------------------------------------------------ discreteness


def _lambda_condition(C, cap: int):
    """Match ``lambda = sqrt(4-C)/2`` against cos(pi/k), cos(2pi/k), cos(3pi/k)."""
    t = angle_fraction(2 - C, max_denominator=2 * cap)
    if t is None:
        return None
    theta = t / 2  # lambda = cos(pi * theta), 0 <= theta <= 1/2
    a, b = theta.numerator, theta.denominator
    if b > cap:
        return None
    ok = (a == 1 and b >= 3) or (a == 2 and b >= 5) or (a == 3 and b >= 7)
    return theta if ok else False


def discreteness(Q: Quiver, R=None, ratio_cap: int = DEFAULT_RATIO_CAP,
                 lambda_cap: int = DEFAULT_LAMBDA_CAP) -> DiscretenessReport:
    """Discreteness of the group generated by the realizing reflections or pi-rotations."""
    report = classify(Q)
    if report.verdict == MUTATION_CYCLIC:
        return _rotation_discreteness(Q, report, ratio_cap, lambda_cap)
    return _reflection_discreteness(Q, report)


def _rotation_discreteness(Q, report, ratio_cap, lambda_cap) -> DiscretenessReport:
    C = report.markov
    a, b, c = sorted(Q.weights(), key=functools.cmp_to_key(lambda x, y: (x - y).sign()))
    if delta_sign(a, b, c) == 0:
        status, detail = _collinear_rationality(Q, ratio_cap)
        if status == "rational":
            return DiscretenessReport("Discrete", "collinear_rational_ratio",
                                      f"collinear centres, {detail}")
        return DiscretenessReport("Indeterminate", "collinear_ratio_undecided",
                                  f"collinear centres, {detail}")
    s = C.sign()
    if s < 0:
        return DiscretenessReport("Discrete", "negative_markov", "C < 0", signature="(0:2,2,2;0;1)")
    if s == 0:
        return DiscretenessReport("Discrete", "zero_markov", "C = 0", signature="(0:2,2,2;1;0)")
    if not Q.is_exact():
        return DiscretenessReport("Indeterminate", "float_lambda",
                                  "lambda condition needs exact weights")
    match = _lambda_condition(C, lambda_cap)
    if match is None or match is False:
        return DiscretenessReport("NotDiscrete", "lambda_not_listed",
                                  f"lambda is not cos(pi/k), cos(2pi/k) or cos(3pi/k) with k <= {lambda_cap}")
    return DiscretenessReport("Indeterminate", "lambda_necessary_condition_met",
                              f"lambda = cos({match}*pi) meets the necessary condition")


def _reflection_discreteness(Q, report) -> DiscretenessReport:
    from .search import find_acyclic

    if Q.is_cyclic():
        result = find_acyclic(Q)
        if result.quiver is None:
            return DiscretenessReport("Indeterminate", "no_acyclic_representative",
                                      "no acyclic representative found within the search cap")
        Q = result.quiver
    weights = Q.weights()
    exact = Q.is_exact()
    fractions = []
    for x in weights:
        if (x - 2).sign() >= 0:
            fractions.append(None)
            continue
        t = angle_fraction(x) if exact else None
        if exact and t is None:
            return DiscretenessReport("NotDiscrete", "necessary_condition_fails",
                                      f"weight {x} is not 2cos(k*pi/l)")
        if not exact:
            t = angle_fraction(x)
            if t is None or t.numerator != 1:
                return DiscretenessReport("Indeterminate", "float_angles",
                                          "angle rationality cannot be decided from floats")
        fractions.append(t)
    if all(t is None or t.numerator == 1 for t in fractions):
        return DiscretenessReport("Discrete", "sufficient_condition",
                                  "every weight is >= 2 or 2cos(pi/k)")
    geometry = report.geometry
    if geometry == "Sphere":
        triple = tuple(sorted(fractions))
        if any(sorted(e) == list(triple) for e in SPHERICAL_EXCEPTIONS):
            return DiscretenessReport("Discrete", "spherical_exception",
                                      f"angles {tuple(str(t) for t in triple)} are exceptional")
        return DiscretenessReport("NotDiscrete", "spherical_not_listed",
                                  "rational angles outside the spherical list")
    if geometry == "Euclidean":
        return DiscretenessReport("NotDiscrete", "euclidean_rational_angle",
                                  "an angle k*pi/l with k > 1 in the Euclidean plane")
    angles = [t if t is not None else Fraction(0) for t in fractions]
    return DiscretenessReport("Indeterminate", "hyperbolic_open",
                              "hyperbolic case with a non-integer-part angle",
                              tilings=match_tilings(angles))


# ---------------------------------------------------------------- tilings


@functools.lru_cache(maxsize=1)
def tiling_table() -> list:
    text = resources.files("quiver3").joinpath("data/tilings.json").read_text()
    return json.loads(text)["entries"]


def _term(text):
    num, den = text.split("/")
    return int(num), (int(den) if den.isdigit() else den)


def _check_condition(cond: str, env: dict) -> bool:
    if ">" in cond:
        name, bound = cond.split(">")
        return env[name] == math.inf or env[name] > int(bound)
    lhs, rhs = cond.split("<")
    total = Fraction(0)
    for part in lhs.split("+"):
        num, den = _term(part)
        value = env[den] if isinstance(den, str) else den
        if value != math.inf:
            total += Fraction(num, value)
    return total < Fraction(rhs)


def match_tilings(angles) -> list:
    """Entries of the tiling table whose tiled triangle has the given angles (in units of pi)."""
    found = []
    for entry in tiling_table():
        pattern = [_term(t) for t in entry["tiled"]]
        for perm in set(itertools.permutations(angles)):
            env = {}
            ok = True
            for (num, den), t in zip(pattern, perm):
                if isinstance(den, int):
                    ok = Fraction(num, den) == t
                elif t == 0:
                    value = math.inf
                    ok = env.setdefault(den, value) == value
                else:
                    value = Fraction(num) / t
                    ok = value.denominator == 1 and env.setdefault(den, int(value)) == int(value)
                if not ok:
                    break
            if ok and all(_check_condition(c, env) for c in entry["conditions"]):
                params = {k: ("inf" if v == math.inf else v) for k, v in sorted(env.items())}
                found.append({"tiled": entry["tiled"], "tile": entry["tile"],
                              "tiles": entry["tiles"], "parameters": params})
                break
    return found

