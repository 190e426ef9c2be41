"""Figures written next to the tabular output.  Agg backend only."""
from __future__ import annotations

import cmath
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .moebius import is_inf  # noqa: E402

# fixed ids and no timestamps, so repeated runs write identical files
matplotlib.rcParams["svg.hashsalt"] = "fgdom"
_META = {"svg": {"Date": None, "Creator": None}, "png": {"Software": None}}


def to_disk(p) -> complex:
    """Cayley map of the closed upper half-plane onto the closed unit disk."""
    if is_inf(p):
        return 1 + 0j
    p = complex(p)
    return (p - 1j) / (p + 1j)


def geodesic_curve(p: complex, q: complex, n: int = 64) -> np.ndarray:
    """Points on the disk geodesic joining two boundary points."""
    cos_t = (p * q.conjugate()).real
    if abs(1 + cos_t) < 1e-9 or abs(p - q) < 1e-12:
        return np.array([p, q])
    centre = (p + q) / (1 + cos_t)
    a0, a1 = cmath.phase(p - centre), cmath.phase(q - centre)
    if a1 - a0 > math.pi:
        a1 -= 2 * math.pi
    elif a0 - a1 > math.pi:
        a1 += 2 * math.pi
    radius = abs(p - centre)
    return centre + radius * np.exp(1j * np.linspace(a0, a1, n))


def _save(fig, path):
    fmt = str(path).rsplit(".", 1)[-1].lower()
    fig.savefig(path, format=fmt, metadata=_META.get(fmt))
    plt.close(fig)


def develop_figure(triangles, path, title=None):
    """Draw developed triangles in the disk model (real configurations)."""
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.add_patch(plt.Circle((0, 0), 1, fill=False, lw=0.8, color="0.4"))
    real = all(is_inf(p) or abs(complex(p).imag) < 1e-9 for t in triangles for p in t.vertices)
    for k, t in enumerate(triangles):
        colour = plt.cm.viridis(k / max(1, len(triangles) - 1))
        if real:
            pts = [to_disk(complex(p).real if not is_inf(p) else p) for p in t.vertices]
            for i in range(3):
                z = geodesic_curve(pts[i], pts[(i + 1) % 3])
                ax.plot(z.real, z.imag, color=colour, lw=1.0)
        else:
            # complex configuration: vertices on the sphere, seen from above
            pts = [to_disk(p) if not is_inf(p) else 1 + 0j for p in t.vertices]
            z = np.array(pts + pts[:1])
            ax.plot(z.real, z.imag, color=colour, lw=0.8, ls="--")
        z = np.array(pts)
        ax.plot(z.real, z.imag, "o", ms=3, color=colour)
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=9)
    _save(fig, path)


def length_scatter(reports, path, xlabel="l_j", ylabel="l_rho"):
    """Scatter of the two length functions with the diagonal for reference."""
    x = np.array([r.l_j for r in reports], dtype=float)
    y = np.array([r.l_rho for r in reports], dtype=float)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    top = float(max(x.max(initial=1.0), y.max(initial=1.0))) * 1.05
    ax.plot([0, top], [0, top], color="0.6", lw=0.8, ls=":")
    ax.scatter(x, y, s=8, color="C0")
    ax.set_xlim(0, top)
    ax.set_ylim(0, top)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    fig.tight_layout()
    _save(fig, path)
