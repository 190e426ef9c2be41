"""Plane hyperbolic geometry in the upper half-plane.

Geodesics are pairs of ideal endpoints on the extended real line (``INF``
allowed).  Used for the straightened, real configurations only.
"""
from __future__ import annotations

import math

import numpy as np

from .moebius import INF, MoebiusMap, is_inf, point, to_zero_one_inf


def _real(z) -> float:
    return math.inf if is_inf(z) else complex(z).real


def normalizer(a, b) -> MoebiusMap:
    """Orientation-preserving real map sending ``a -> 0`` and ``b -> inf``."""
    a, b = point(a), point(b)
    if is_inf(a):
        x = _real(b) - 1.0
    elif is_inf(b):
        x = _real(a) + 1.0
    elif _real(a) < _real(b):
        x = 0.5 * (_real(a) + _real(b))
    else:
        x = _real(a) + 1.0
    return to_zero_one_inf(a, x, b)


def _pair(m: MoebiusMap, g):
    return tuple(_real(m(z)) for z in g)


def geodesics_cross(g, h) -> bool:
    """True when the two geodesics meet in the interior of H^2."""
    m = normalizer(*g)
    c, d = _pair(m, h)
    if any(math.isinf(v) or abs(v) < 1e-14 for v in (c, d)):
        return False
    return c * d < 0


def intersection(g, h) -> tuple[complex, float]:
    """Crossing point of two geodesics and their acute angle."""
    m = normalizer(*g)
    c, d = _pair(m, h)
    if not c * d < 0:
        raise ValueError("geodesics do not cross")
    y = math.sqrt(-c * d)
    centre, radius = 0.5 * (c + d), 0.5 * abs(d - c)
    angle = math.acos(min(1.0, abs(centre) / radius))
    return m.inverse()(complex(0.0, y)), angle


def geodesic_distance(g, h) -> float:
    """Distance between two geodesics; zero if they meet or share an end."""
    m = normalizer(*g)
    c, d = _pair(m, h)
    if any(math.isinf(v) or abs(v) < 1e-300 for v in (c, d)):
        return 0.0
    if c * d <= 0:
        return 0.0
    c, d = sorted((abs(c), abs(d)))
    return math.acosh((d + c) / (d - c)) if d > c else math.inf


def point_distance(z, w) -> float:
    z, w = complex(z), complex(w)
    num = abs(z - w) ** 2
    return 2.0 * math.asinh(math.sqrt(num / (4.0 * z.imag * w.imag)))


def horoball_distance(g, p, height_map: MoebiusMap, height: float) -> float:
    """Signed distance from geodesic ``g`` to a horoball based at ``p``.

    ``height_map`` sends ``p`` to infinity; the horoball is ``Im > height``
    in that chart.  Negative values mean the geodesic enters the horoball.
    """
    a, b = _pair(height_map, g)
    if math.isinf(a) or math.isinf(b):
        return -math.inf
    return math.log(height / (0.5 * abs(a - b)))


def common_perpendicular(g, h):
    """Endpoints of the geodesic orthogonal to both disjoint geodesics."""
    # the reflection in the common perpendicular swaps the ends of g and of h;
    # as a Moebius involution [[p, q], [r, -p]] its fixed points are the answer
    rows = []
    for u, v in (g, h):
        if is_inf(u):
            u, v = v, u
        if is_inf(v):
            rows.append([1.0, 0.0, -_real(u)])
        else:
            u, v = _real(u), _real(v)
            rows.append([u + v, 1.0, -u * v])
    p, q, r = np.cross(rows[0], rows[1])
    # fixed points: r z^2 - 2 p z - q = 0
    if abs(r) < 1e-14 * max(abs(p), abs(q), 1.0):
        return (INF, complex(-q / (2 * p)))
    disc = p * p + q * r
    if disc <= 0:
        raise ValueError("geodesics are not ultraparallel")
    s = math.sqrt(disc)
    return (complex((p - s) / r), complex((p + s) / r))


def foot_of_perpendicular(g, perp) -> complex:
    return intersection(g, perp)[0]


def perpendicular_through(g, z):
    """The geodesic through ``z`` (on ``g``) meeting ``g`` at a right angle."""
    m = normalizer(*g)
    w = m(z)
    r = abs(w)
    inv = m.inverse()
    return (inv(complex(-r)), inv(complex(r)))


def project(g, z) -> complex:
    """Nearest point of geodesic ``g`` to ``z``."""
    m = normalizer(*g)
    return m.inverse()(complex(0.0, abs(m(z))))


def side_of(g, z) -> int:
    """+1 or -1 according to the half-plane of ``g`` containing ``z``."""
    w = normalizer(*g)(z)
    if is_inf(w):
        return 0
    x = complex(w).real
    return 0 if x == 0 else (1 if x > 0 else -1)


def translation_along(g, distance: float) -> MoebiusMap:
    """Hyperbolic translation by ``distance`` along ``g`` towards ``g[1]``."""
    m = normalizer(*g)
    e = math.exp(distance / 2.0)
    return m.inverse() @ MoebiusMap(e, 0, 0, 1.0 / e) @ m


def ideal_triangle_centre(u, v, w) -> complex:
    """Centre of the ideal triangle ``u, v, w`` (image of the centre of 0, 1, inf)."""
    z = to_zero_one_inf(u, v, w).inverse()(complex(0.5, math.sqrt(3) / 2))
    return z if z.imag > 0 else z.conjugate()
