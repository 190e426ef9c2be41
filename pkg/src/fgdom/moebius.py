"""PSL(2,C) matrices acting on the Riemann sphere and on upper half-space.

Points of the sphere are plain Python complex numbers; the point at infinity
is :data:`INF`.  Internally most formulas work with homogeneous pairs
``(x, y)`` so that infinity needs no special casing.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateQuadruple, NonpositiveHeight

INF = complex(math.inf, 0.0)

#: |tr^2 - 4| below this counts as parabolic (or identity).
PARABOLIC_TOL = 1e-9
DISTINCT_TOL = 1e-12


def is_inf(z) -> bool:
    return isinstance(z, str) or cmath.isinf(z)


def point(z) -> complex:
    """Coerce ``z`` (number, ``"inf"`` or a homogeneous pair) to a sphere point."""
    if isinstance(z, str):
        if z.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        raise ValueError(f"not a sphere point: {z!r}")
    if isinstance(z, tuple):
        x, y = z
        if abs(y) <= 1e-300 * max(1.0, abs(x)) or abs(y) < 1e-15 * abs(x):
            return INF
        return complex(x / y)
    z = complex(z)
    return INF if cmath.isinf(z) else z


def homogeneous(z) -> tuple[complex, complex]:
    z = point(z)
    return (1.0 + 0j, 0j) if is_inf(z) else (z, 1.0 + 0j)


def _det(p, q) -> complex:
    return p[0] * q[1] - p[1] * q[0]


def chordal_distance(z, w) -> float:
    p, q = homogeneous(z), homogeneous(w)
    np_ = math.hypot(abs(p[0]), abs(p[1]))
    nq = math.hypot(abs(q[0]), abs(q[1]))
    return abs(_det(p, q)) / (np_ * nq)


def same_point(z, w, tol=1e-9) -> bool:
    return chordal_distance(z, w) <= tol


@dataclass(frozen=True)
class MoebiusMap:
    """A determinant-one 2x2 complex matrix, read projectively.

    The constructor rescales by a square root of the determinant, so any
    invertible matrix may be passed in.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if det == 0:
            raise ValueError("singular matrix")
        s = cmath.sqrt(det)
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, v / s)

    @classmethod
    def from_array(cls, m) -> "MoebiusMap":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @classmethod
    def _unit(cls, a, b, c, d) -> "MoebiusMap":
        # entries already of determinant one (products, inverses): skip the
        # rescale, which loses the determinant to cancellation for large entries
        m = object.__new__(cls)
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(m, name, complex(v))
        return m

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap._unit(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap._unit(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "MoebiusMap":
        base = self if n >= 0 else self.inverse()
        out = MoebiusMap.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def trace_sq(self) -> complex:
        return self.trace ** 2

    def __call__(self, z) -> complex:
        x, y = homogeneous(z)
        return point((self.a * x + self.b * y, self.c * x + self.d * y))

    def conj(self, g: "MoebiusMap") -> "MoebiusMap":
        """``g @ self @ g^-1``."""
        return g @ self @ g.inverse()

    def close_to(self, other: "MoebiusMap", tol=1e-8) -> bool:
        """Entrywise comparison up to the global sign."""
        m, n = self.to_array(), other.to_array()
        return min(np.abs(m - n).max(), np.abs(m + n).max()) <= tol

    def distance_from_identity(self) -> float:
        m = self.to_array()
        eye = np.eye(2)
        return float(min(np.abs(m - eye).max(), np.abs(m + eye).max()))

    def act_h3(self, z: complex, t: float) -> tuple[complex, float]:
        """Action on the upper half-space point ``z + t j``."""
        cz_d = self.c * z + self.d
        den = abs(cz_d) ** 2 + abs(self.c) ** 2 * t * t
        zz = ((self.a * z + self.b) * cz_d.conjugate() + self.a * self.c.conjugate() * t * t) / den
        return zz, t / den


def cross_ratio(p1, p2, p3, p4) -> complex:
    """Cross-ratio normalised so that ``(inf, -1, 0, 1)`` gives 1.

    ``p1, p3`` are the ends of the shared diagonal and ``p2, p4`` the far
    vertices of the two triangles.  Four points in cyclic order on the real
    line give a positive value.
    """
    pts = [homogeneous(p) for p in (p1, p2, p3, p4)]
    for i in range(4):
        for j in range(i + 1, 4):
            if chordal_distance(pts[i], pts[j]) < DISTINCT_TOL:
                raise DegenerateQuadruple("cross-ratio of non-distinct points", indices=[i, j])
    d12 = _det(pts[0], pts[1])
    d34 = _det(pts[2], pts[3])
    d23 = _det(pts[1], pts[2])
    d41 = _det(pts[3], pts[0])
    return -(d12 * d34) / (d23 * d41)


def to_zero_one_inf(z1, z2, z3) -> MoebiusMap:
    """The map sending ``z1, z2, z3`` to ``0, 1, inf``."""
    p1, p2, p3 = (homogeneous(z) for z in (z1, z2, z3))
    d23 = _det(p2, p3)
    d21 = _det(p2, p1)
    return MoebiusMap(p1[1] * d23, -p1[0] * d23, p3[1] * d21, -p3[0] * d21)


def map_triple(src, dst) -> MoebiusMap:
    """The unique map sending the three points ``src`` to ``dst``."""
    return to_zero_one_inf(*dst).inverse() @ to_zero_one_inf(*src)


class IsometryClass(str, Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


def classify(m: MoebiusMap, tol: float = PARABOLIC_TOL) -> IsometryClass:
    if m.distance_from_identity() <= tol:
        return IsometryClass.IDENTITY
    t2 = m.trace_sq
    if abs(t2 - 4) <= tol:
        return IsometryClass.PARABOLIC
    if abs(t2.imag) <= tol and -tol <= t2.real < 4:
        return IsometryClass.ELLIPTIC
    return IsometryClass.LOXODROMIC


def eigenvalues(m: MoebiusMap) -> tuple[complex, complex]:
    """Eigenvalues ordered by decreasing modulus."""
    t = m.trace
    s = cmath.sqrt(t * t - 4)
    l1, l2 = (t + s) / 2, (t - s) / 2
    return (l1, l2) if abs(l1) >= abs(l2) else (l2, l1)


def translation_length(m: MoebiusMap, tol: float = PARABOLIC_TOL) -> float:
    """Minimal displacement in H^3: ``2 |ln |lambda||`` for the top eigenvalue."""
    if classify(m, tol) is not IsometryClass.LOXODROMIC:
        return 0.0
    lam = eigenvalues(m)[0]
    return 2.0 * abs(math.log(abs(lam)))


def complex_length(m: MoebiusMap) -> complex:
    lam = eigenvalues(m)[0]
    return 2.0 * cmath.log(lam)


def fixed_points(m: MoebiusMap) -> list[complex]:
    """Fixed points; the attracting one first for loxodromics.

    Identity returns an empty list (every point is fixed).
    """
    cls = classify(m)
    if cls is IsometryClass.IDENTITY:
        return []
    pts = []
    for lam in eigenvalues(m):
        v1 = (m.b, lam - m.a)
        v2 = (lam - m.d, m.c)
        v = v1 if abs(v1[0]) + abs(v1[1]) >= abs(v2[0]) + abs(v2[1]) else v2
        pts.append(point(v))
    if cls is IsometryClass.PARABOLIC:
        # average the two numerically split roots of a double eigenvalue
        if is_inf(pts[0]) or is_inf(pts[1]):
            return [INF if abs(m.c) < 1e-7 else pts[0]]
        return [(pts[0] + pts[1]) / 2]
    return pts


def bend_angle_beta(alpha: float, theta: float) -> float:
    """Angle at the bending point between two arms of a straight segment.

    The segment meets the bending line at angle ``alpha`` and the plane is
    folded by ``theta`` along that line.
    """
    c = -math.cos(alpha) ** 2 - math.sin(alpha) ** 2 * math.cos(theta)
    return math.acos(max(-1.0, min(1.0, c)))


def bent_endpoint_distance(dx: float, dy: float, beta: float) -> float:
    """Third side of a hyperbolic triangle with sides ``dx, dy`` meeting at ``beta``."""
    if beta >= math.pi:
        return dx + dy
    if beta <= 0:
        return abs(dx - dy)
    # cosh(xy) = cosh(dx+dy) - sinh dx sinh dy (1 + cos beta); this form keeps
    # precision when beta is close to pi
    ch = math.cosh(dx + dy) - math.sinh(dx) * math.sinh(dy) * (1 + math.cos(beta))
    return math.acosh(max(1.0, ch))


def h3_distance(x: tuple[complex, float], y: tuple[complex, float]) -> float:
    (z1, t1), (z2, t2) = x, y
    if t1 <= 0 or t2 <= 0:
        raise NonpositiveHeight("upper half-space heights must be positive")
    num = abs(complex(z1) - complex(z2)) ** 2 + (t1 - t2) ** 2
    # acosh(1 + u) = 2 asinh(sqrt(u/2)) is stable for small u
    return 2.0 * math.asinh(math.sqrt(num / (4.0 * t1 * t2)))
