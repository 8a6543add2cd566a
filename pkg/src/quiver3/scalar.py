"""Real scalars used as quiver weights.

Two backends share one small interface (``+ - *``, ``abs``, ``sign()``,
``key()``, ``float()``):

* :class:`FloatScalar` wraps an IEEE double and compares with an absolute
  tolerance ``eps``.
* :class:`CycloScalar` is an exact element of the ring ``Q[2cos(pi/n)]``,
  stored as the reduced residue of a polynomial in ``x = 2cos(pi/n)`` modulo
  the minimal polynomial of ``x``.  Signs are decided exactly.

Plain ``int`` and ``Fraction`` values combine with either backend; mixing the
two backends raises :class:`MixedBackendError`.
"""
from __future__ import annotations

import contextlib
import contextvars
import math
import re
import threading
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import iv

from .errors import DomainError

DEFAULT_EPS = 1e-9
DEFAULT_CONDUCTOR_CAP = 360
SIGN_PRECISIONS = (64, 256, 1024)

_conductor_cap = contextvars.ContextVar("conductor_cap", default=DEFAULT_CONDUCTOR_CAP)
_iv_lock = threading.Lock()


class PrecisionBudgetExceeded(DomainError, ArithmeticError):
    code = "precision_budget_exceeded"


class MixedBackendError(DomainError, TypeError):
    code = "mixed_backends"


def conductor_cap() -> int:
    return _conductor_cap.get()


@contextlib.contextmanager
def conductor_limit(cap: int):
    """Temporarily change the largest conductor arithmetic may merge into."""
    token = _conductor_cap.set(int(cap))
    try:
        yield
    finally:
        _conductor_cap.reset(token)


# ---------------------------------------------------------------------------
# integer polynomials (coefficient lists, lowest degree first)


def _integral(coeffs):
    """Integer numerators over a common denominator."""
    d = 1
    for c in coeffs:
        if c.denominator != 1:
            d = math.lcm(d, c.denominator)
    if d == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (d // c.denominator) for c in coeffs], d


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_div_exact(num, den):
    num = list(num)
    lead = den[-1]
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c, rem = divmod(num[k + len(den) - 1], lead)
        assert rem == 0
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    assert not any(num[: len(den) - 1])
    return q


@lru_cache(maxsize=None)
def _cyclotomic(N: int) -> tuple:
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_div_exact(poly, list(_cyclotomic(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def minimal_polynomial(n: int) -> tuple:
    """Monic integer minimal polynomial of ``2cos(pi/n)``, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return (2, 1)
    phi = _cyclotomic(2 * n)
    d = (len(phi) - 1) // 2
    # phi(z) / z^d = a_d + sum_j a_{d+j} (z^j + z^-j), and z^j + z^-j = D_j(z + 1/z)
    result = [phi[d]]
    d_prev, d_cur = [2], [0, 1]
    for j in range(1, d + 1):
        coef = phi[d + j]
        if coef:
            result += [0] * (len(d_cur) - len(result))
            for i, c in enumerate(d_cur):
                result[i] += coef * c
        d_prev, d_cur = d_cur, _dickson_step(d_cur, d_prev)
    return tuple(result)


def _dickson_step(cur, prev):
    nxt = [0] + list(cur)
    for i, c in enumerate(prev):
        nxt[i] -= c
    return nxt


def degree(n: int) -> int:
    return len(minimal_polynomial(n)) - 1


def _reduce(poly, n):
    """Reduce a coefficient list modulo the minimal polynomial of conductor n."""
    mp = minimal_polynomial(n)
    d = len(mp) - 1
    poly = list(poly)
    for k in range(len(poly) - 1, d - 1, -1):
        c = poly[k]
        if c:
            base = k - d
            for i in range(d):
                poly[base + i] -= c * mp[i]
    poly = poly[:d]
    poly += [0] * (d - len(poly))
    return poly


@lru_cache(maxsize=None)
def _float_x(n: int) -> float:
    return 2.0 * math.cos(math.pi / n)


@lru_cache(maxsize=None)
def _two_cos_coeffs(k: int, n: int) -> tuple:
    """Power-basis coefficients of 2cos(k pi/n) at conductor n."""
    prev = _reduce([2], n)
    cur = _reduce([0, 1], n)
    if k == 0:
        return tuple(Fraction(c) for c in prev)
    for _ in range(k - 1):
        shifted = _reduce([0] + cur, n)
        prev, cur = cur, [s - p for s, p in zip(shifted, prev)]
    return tuple(Fraction(c) for c in cur)


@lru_cache(maxsize=None)
def _lift_images(m: int, n: int) -> tuple:
    """Images of (2cos(pi/m))^j, j < degree(m), in the basis of conductor n (m | n)."""
    y = list(_two_cos_coeffs(n // m, n))
    images = []
    power = _reduce([1], n)
    for _ in range(degree(m)):
        images.append(tuple(Fraction(c) for c in power))
        power = _reduce(_poly_mul(power, y), n)
    return tuple(images)


@lru_cache(maxsize=None)
def _subfield_solver(m: int, n: int):
    """Pivot columns and inverse block to read coordinates over the subfield of conductor m."""
    rows = [list(r) for r in _lift_images(m, n)]
    dm, d = len(rows), len(rows[0])
    # choose dm independent columns
    work = [r[:] for r in rows]
    pivots = []
    r = 0
    for col in range(d):
        if r == dm:
            break
        piv = next((i for i in range(r, dm) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(dm):
            if i != r and work[i][col] != 0:
                f = work[i][col] / work[r][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    block = [[rows[i][c] for c in pivots] for i in range(dm)]
    return tuple(pivots), _invert(block)


def _invert(mat):
    size = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(mat)]
    for col in range(size):
        piv = next(i for i in range(col, size) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(size):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[size:] for row in aug]


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=65536)
def _normalize(n: int, coeffs: tuple) -> tuple:
    """Smallest conductor m | n whose ring contains the element, with its coordinates."""
    if not any(coeffs[1:]):
        return 1, (coeffs[0],)
    for m in _divisors(n):
        if m <= 3:
            continue
        if m == n:
            return n, coeffs
        pivots, inv = _subfield_solver(m, n)
        target = [coeffs[c] for c in pivots]
        coords = [sum(t * inv[i][j] for i, t in enumerate(target)) for j in range(len(inv))]
        images = _lift_images(m, n)
        recon = [sum(coords[j] * images[j][c] for j in range(len(coords))) for c in range(len(coeffs))]
        if recon == list(coeffs):
            return m, tuple(coords)
    return n, coeffs


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """Common operator plumbing; subclasses define the arithmetic."""

    __slots__ = ()

    def __radd__(self, other):
        return self.__add__(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __str__(self):
        return format_scalar(self)


class FloatScalar(Scalar):
    """An IEEE double compared with absolute tolerance ``eps``."""

    __slots__ = ("value", "eps")

    def __init__(self, value, eps: float = DEFAULT_EPS):
        value = float(value)
        if not math.isfinite(value):
            raise DomainError(f"non-finite weight {value!r}", code="non_finite")
        self.value = value + 0.0  # drops the sign of -0.0
        self.eps = eps

    def _other(self, other):
        if isinstance(other, FloatScalar):
            return other.value
        if isinstance(other, (int, float, Fraction)):
            return float(other)
        if isinstance(other, CycloScalar):
            raise MixedBackendError("cannot combine float and exact scalars")
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(self.value + o, self.eps)

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(self.value - o, self.eps)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(self.value * o, self.eps)

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FloatScalar(self.value / o, self.eps)

    def __neg__(self):
        return FloatScalar(-self.value, self.eps)

    def __float__(self):
        return self.value

    def sign(self) -> int:
        if abs(self.value) <= self.eps:
            return 0
        return 1 if self.value > 0 else -1

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return abs(self.value - o) <= self.eps

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return ("f", bucket(self.value, self.eps))

    def is_exact(self) -> bool:
        return False

    def __repr__(self):
        return f"FloatScalar({self.value!r})"


def bucket(value: float, eps: float) -> int:
    return math.floor(value / eps)


class CycloScalar(Scalar):
    """Exact element of Q[2cos(pi/n)] in the power basis of ``x = 2cos(pi/n)``."""

    __slots__ = ("n", "coeffs", "_approx")

    def __init__(self, coeffs, n: int = 1):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != degree(n):
            raise ValueError(f"conductor {n} needs {degree(n)} coefficients, got {len(coeffs)}")
        self.n = n
        self.coeffs = coeffs
        self._approx = None

    @classmethod
    def _make(cls, n, coeffs):
        obj = object.__new__(cls)
        obj.n = n
        obj.coeffs = tuple(coeffs)
        obj._approx = None
        return obj

    @classmethod
    def rational(cls, value) -> "CycloScalar":
        return cls._make(1, (Fraction(value),))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_exact(self) -> bool:
        return True

    def lift(self, n: int) -> tuple:
        """Coefficients of this element at conductor ``n`` (a multiple of self.n)."""
        if n == self.n:
            return self.coeffs
        if self.is_rational():
            return (self.coeffs[0],) + (Fraction(0),) * (degree(n) - 1)
        if n % self.n:
            raise ValueError(f"cannot lift conductor {self.n} to {n}")
        out = [Fraction(0)] * degree(n)
        for c, img in zip(self.coeffs, _lift_images(self.n, n)):
            if c:
                for i, v in enumerate(img):
                    out[i] += c * v
        return tuple(out)

    def _coerce(self, other):
        if isinstance(other, CycloScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloScalar.rational(other)
        if isinstance(other, (float, FloatScalar)):
            raise MixedBackendError("cannot combine exact and float scalars")
        return None

    def _aligned(self, other):
        if self.n == other.n:
            return self.n, self.coeffs, other.coeffs
        if other.is_rational():
            return self.n, self.coeffs, other.lift(self.n)
        if self.is_rational():
            return other.n, self.lift(other.n), other.coeffs
        n = math.lcm(self.n, other.n)
        if n > conductor_cap():
            raise PrecisionBudgetExceeded(
                f"conductor lcm({self.n}, {other.n}) = {n} exceeds cap {conductor_cap()}"
            )
        return n, self.lift(n), other.lift(n)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n, a, b = self._aligned(other)
        return CycloScalar._make(n, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n, a, b = self._aligned(other)
        return CycloScalar._make(n, [x - y for x, y in zip(a, b)])

    def __neg__(self):
        return CycloScalar._make(self.n, [-c for c in self.coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            return self._scaled(other.coeffs[0])
        if self.is_rational():
            return other._scaled(self.coeffs[0])
        n, a, b = self._aligned(other)
        ia, da = _integral(a)
        ib, db = _integral(b)
        d = da * db
        prod = _reduce(_poly_mul(ia, ib), n)
        if d == 1:
            return CycloScalar._make(n, [Fraction(v) for v in prod])
        return CycloScalar._make(n, [Fraction(v, d) for v in prod])

    def _scaled(self, c):
        if c == 1:
            return self
        if c == 0:
            return CycloScalar._make(self.n, [Fraction(0)] * len(self.coeffs))
        if c == -1:
            return -self
        return CycloScalar._make(self.n, [c * v for v in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(1) / Fraction(other)
            return CycloScalar._make(self.n, [c * v for v in self.coeffs])
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        _, a, b = self._aligned(other)
        return a == b

    def __hash__(self):
        return hash(self.key())

    def key(self):
        m, coeffs = _normalize(self.n, self.coeffs)
        return ("c", m, coeffs)

    def normalized(self) -> "CycloScalar":
        m, coeffs = _normalize(self.n, self.coeffs)
        return CycloScalar._make(m, coeffs)

    def __float__(self):
        if self._approx is None:
            x = _float_x(self.n)
            ax = abs(x)
            acc = mag = 0.0
            try:
                for c in reversed(self.coeffs):
                    cf = float(c)
                    acc = acc * x + cf
                    mag = mag * ax + abs(cf)
                finite = math.isfinite(acc) and math.isfinite(mag)
            except OverflowError:
                finite = False
            bound = mag * (4 * len(self.coeffs) + 8) * 2.3e-16 if finite else math.inf
            if bound > 1e-16 * abs(acc) and any(self.coeffs[1:]):
                # large coefficients cancel: redo the sum with enough digits
                digits = 25 + (int(math.log10(mag)) if finite and mag > 1 else 0)
                value = self.evaluate(digits)
                if not finite:
                    digits = 25 + max(0, int(mpmath.log10(abs(value) + 1))) + self._coeff_digits()
                    value = self.evaluate(digits)
                acc = float(value)
            self._approx = acc
        return self._approx

    def _coeff_digits(self) -> int:
        return max(len(str(abs(c.numerator))) + len(str(c.denominator)) for c in self.coeffs)

    def evaluate(self, dps: int = 50):
        """High-precision value as an ``mpmath.mpf``."""
        with mpmath.workdps(dps + 10):
            x = 2 * mpmath.cos(mpmath.pi / self.n)
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
            return +acc

    def sign(self) -> int:
        if not any(self.coeffs):
            return 0
        if self.is_rational():
            return 1 if self.coeffs[0] > 0 else -1
        quick = self._float_sign()
        if quick:
            return quick
        for bits in SIGN_PRECISIONS:
            s = self._interval_sign(bits)
            if s:
                return s
        bits = SIGN_PRECISIONS[-1]
        while bits < 1 << 16:
            bits *= 2
            s = self._interval_sign(bits)
            if s:
                return s
        raise ArithmeticError("sign undecided for a nonzero element")  # pragma: no cover

    def _float_sign(self) -> int:
        x = _float_x(self.n)
        ax = abs(x)
        acc = mag = 0.0
        try:
            for c in reversed(self.coeffs):
                cf = float(c)
                acc = acc * x + cf
                mag = mag * ax + abs(cf)
        except OverflowError:
            return 0
        bound = mag * (4 * len(self.coeffs) + 8) * 2.3e-16
        if not math.isfinite(acc) or abs(acc) <= bound:
            return 0
        return 1 if acc > 0 else -1

    def _interval_sign(self, bits: int) -> int:
        with _iv_lock:
            old = iv.prec
            iv.prec = bits
            try:
                x = 2 * iv.cos(iv.pi / self.n)
                acc = iv.mpf(0)
                for c in reversed(self.coeffs):
                    acc = acc * x + iv.mpf(c.numerator) / c.denominator
                if acc.a > 0:
                    return 1
                if acc.b < 0:
                    return -1
                return 0
            finally:
                iv.prec = old

    def __repr__(self):
        return f"CycloScalar({format_scalar(self)!r})"


# ---------------------------------------------------------------------------
# constructors and helpers


def rational(value) -> CycloScalar:
    return CycloScalar.rational(value)


def cyclo(k: int, n: int) -> CycloScalar:
    """Exact ``2cos(k*pi/n)`` for ``0 <= k <= n``."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"conductor must be a positive integer, got {n!r}", code="bad_angle")
    if not isinstance(k, int) or not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k!r}, n={n}", code="bad_angle")
    if n > conductor_cap():
        raise PrecisionBudgetExceeded(f"conductor {n} exceeds cap {conductor_cap()}")
    return CycloScalar._make(n, _two_cos_coeffs(k, n))


def mul(a, b):
    return a * b


def sign(a) -> int:
    if isinstance(a, Scalar):
        return a.sign()
    if isinstance(a, float):
        return 0 if abs(a) <= DEFAULT_EPS else (1 if a > 0 else -1)
    return (a > 0) - (a < 0)


def is_exact(a) -> bool:
    return isinstance(a, (CycloScalar, int, Fraction))


def coerce_all(values, eps: float | None = None):
    """Turn a collection of numbers into scalars of a single backend."""
    values = list(values)
    has_float = any(isinstance(v, (float, FloatScalar)) for v in values)
    has_exact = any(isinstance(v, CycloScalar) for v in values)
    if has_float and has_exact:
        raise MixedBackendError("cannot mix float and exact weights")
    if has_float:
        if eps is None:
            eps = max((v.eps for v in values if isinstance(v, FloatScalar)), default=DEFAULT_EPS)
        return [v if isinstance(v, FloatScalar) else FloatScalar(v, eps) for v in values]
    out = []
    for v in values:
        if isinstance(v, CycloScalar):
            out.append(v)
        elif isinstance(v, (int, Fraction)):
            out.append(CycloScalar.rational(v))
        else:
            raise TypeError(f"not a scalar: {v!r}")
    return out


def angle_fraction(s, max_denominator: int = 1000):
    """Return ``t`` with ``s == 2cos(pi*t)`` and ``0 <= t <= 1``, or None.

    For exact scalars the answer is decided exactly: an element of the form
    ``2cos(pi*a/b)`` generates the ring of conductor ``b``, so only angles with
    denominator equal to the element's minimal conductor need checking.  For
    floats the match is within ``eps`` and limited to ``max_denominator``.
    """
    if isinstance(s, (int, Fraction)):
        s = CycloScalar.rational(s)
    if isinstance(s, float):
        s = FloatScalar(s)
    if (s - 2).sign() > 0 or (s + 2).sign() < 0:
        return None
    if isinstance(s, FloatScalar):
        t = math.acos(max(-1.0, min(1.0, s.value / 2))) / math.pi
        frac = Fraction(t).limit_denominator(max_denominator)
        if abs(2 * math.cos(math.pi * frac) - s.value) <= s.eps:
            return frac
        return None
    norm = s.normalized()
    if norm.n == 1:
        table = {2: Fraction(0), 1: Fraction(1, 3), 0: Fraction(1, 2), -1: Fraction(2, 3), -2: Fraction(1)}
        return table.get(norm.coeffs[0]) if norm.coeffs[0].denominator == 1 else None
    m = norm.n
    t = math.acos(max(-1.0, min(1.0, float(norm) / 2))) / math.pi
    guess = round(t * m)
    for k in (guess, guess - 1, guess + 1):
        if 0 <= k <= m and math.gcd(k, m) != m and CycloScalar._make(m, _two_cos_coeffs(k, m)) == norm:
            return Fraction(k, m)
    return None


# ---------------------------------------------------------------------------
# text form


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_two_cos(k: int, n: int) -> str:
    g = math.gcd(k, n)
    k, n = k // g, n // g
    return f"2cos(pi/{n})" if k == 1 else f"2cos({k}*pi/{n})"


def format_scalar(s) -> str:
    """Text form: a rational, ``2cos(k*pi/n)``, or a rational combination of those."""
    if isinstance(s, FloatScalar):
        v = s.value
        return str(int(v)) if v.is_integer() and abs(v) < 2**53 else repr(v)
    if isinstance(s, (int, Fraction)):
        return _format_fraction(Fraction(s))
    norm = s.normalized()
    if norm.n == 1:
        return _format_fraction(norm.coeffs[0])
    order = ((1, norm), (-1, -norm)) if float(norm) >= 0 else ((-1, -norm), (1, norm))
    for sgn, val in order:
        t = angle_fraction(val)
        if t is not None and t.denominator > 3 and t.numerator:
            text = _format_two_cos(t.numerator, t.denominator)
            return text if sgn > 0 else "-" + text
    # triangular change of basis from powers of x to 2cos(j*pi/m)
    m = norm.n
    rest = list(norm.coeffs)
    basis = []
    for j in range(len(rest) - 1, 0, -1):
        a = rest[j]
        basis.append((j, a))
        if a:
            poly = _chebyshev_power_poly(j)
            for i, c in enumerate(poly):
                rest[i] -= a * c
    terms = [(0, rest[0])] + sorted(basis)
    parts = []
    for j, a in terms:
        if not a:
            continue
        if j == 0:
            body, coef = _format_fraction(abs(a)), None
        else:
            body = _format_two_cos(j, m)
            coef = abs(a)
            body = body if coef == 1 else f"{_format_fraction(coef)}*{body}"
        sign_text = "-" if a < 0 else "+"
        parts.append((sign_text, body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign_text, body in parts[1:]:
        text += f" {sign_text} {body}"
    return text


@lru_cache(maxsize=None)
def _chebyshev_power_poly(j: int) -> tuple:
    """Coefficients of 2cos(j*theta) as a polynomial in 2cos(theta)."""
    prev, cur = [2], [0, 1]
    for _ in range(j - 1):
        prev, cur = cur, _dickson_step(cur, prev)
    return tuple(cur) if j else (2,)


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<cos>2\s*cos\s*\(\s*(?:(?P<k>\d+)\s*\*?\s*)?pi\s*(?:/\s*(?P<n>\d+))?\s*\))
      | (?P<sqrt>sqrt\s*\(\s*(?P<radicand>\d+)\s*\))
      | (?P<dec>\d+\.\d*(?:[eE][-+]?\d+)?|\d+[eE][-+]?\d+|\.\d+)
      | (?P<rat>\d+\s*/\s*\d+)
      | (?P<int>\d+)
      | (?P<op>[-+*/()])
    )""",
    re.VERBOSE,
)

_SQRT_EXACT = {2: (1, 4), 3: (1, 6)}


class _Parser:
    def __init__(self, text, exact, eps):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise DomainError(f"cannot parse scalar {text!r} at position {pos}", code="parse_error")
            self.tokens.append(m)
            pos = m.end()
        self.i = 0
        self.exact = exact
        self.eps = eps
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise DomainError(f"trailing input in {self.text!r}", code="parse_error")
        return value

    def expr(self):
        value = self.term()
        while (tok := self.peek()) is not None and tok.group("op") in ("+", "-"):
            self.i += 1
            rhs = self.term()
            value = value + rhs if tok.group("op") == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while (tok := self.peek()) is not None and tok.group("op") in ("*", "/"):
            self.i += 1
            rhs = self.factor()
            if tok.group("op") == "*":
                value = value * rhs
                continue
            if isinstance(rhs, CycloScalar):
                rhs = rhs.normalized()
                if rhs.n != 1:
                    raise DomainError("exact division only by rationals", code="parse_error")
                rhs = rhs.coeffs[0]
            if rhs == 0:
                raise DomainError("division by zero", code="parse_error")
            value = value / rhs
        return value

    def factor(self):
        tok = self.peek()
        if tok is None:
            raise DomainError(f"unexpected end of {self.text!r}", code="parse_error")
        self.i += 1
        op = tok.group("op")
        if op == "-":
            return -self.factor()
        if op == "+":
            return self.factor()
        if op == "(":
            value = self.expr()
            close = self.peek()
            if close is None or close.group("op") != ")":
                raise DomainError(f"unbalanced parentheses in {self.text!r}", code="parse_error")
            self.i += 1
            return value
        if tok.group("cos"):
            k = int(tok.group("k") or 1)
            n = int(tok.group("n") or 1)
            if k > n:
                k = k % (2 * n)
                if k > n:
                    k = 2 * n - k
            return cyclo(k, n) if self.exact else FloatScalar(2 * math.cos(math.pi * k / n), self.eps)
        if tok.group("sqrt"):
            rad = int(tok.group("radicand"))
            root = math.isqrt(rad)
            if not self.exact:
                return FloatScalar(math.sqrt(rad), self.eps)
            if root * root == rad:
                return CycloScalar.rational(root)
            if rad in _SQRT_EXACT:
                return cyclo(*_SQRT_EXACT[rad])
            if rad == 5:
                return 2 * cyclo(1, 5) - 1
            raise DomainError(f"sqrt({rad}) has no exact form here", code="parse_error")
        if tok.group("dec"):
            if self.exact:
                raise MixedBackendError(f"decimal literal {tok.group('dec')!r} in exact mode")
            return FloatScalar(float(tok.group("dec")), self.eps)
        if tok.group("rat"):
            q = Fraction(tok.group("rat").replace(" ", ""))
            return CycloScalar.rational(q) if self.exact else FloatScalar(float(q), self.eps)
        if tok.group("int"):
            v = int(tok.group("int"))
            return CycloScalar.rational(v) if self.exact else FloatScalar(v, self.eps)
        raise DomainError(f"unexpected token {tok.group(0)!r} in {self.text!r}", code="parse_error")


def parse_scalar(text, exact: bool = True, eps: float = DEFAULT_EPS):
    """Parse the scalar text form.

    Exact mode produces :class:`CycloScalar` and rejects decimals; float mode
    evaluates everything to :class:`FloatScalar`.
    """
    if isinstance(text, bool):
        raise DomainError("booleans are not scalars", code="parse_error")
    if isinstance(text, int):
        return CycloScalar.rational(text) if exact else FloatScalar(text, eps)
    if isinstance(text, float):
        if exact:
            raise MixedBackendError(f"float {text!r} in exact mode")
        return FloatScalar(text, eps)
    return _Parser(str(text), exact, eps).parse()
