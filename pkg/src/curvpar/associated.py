"""Associated regular surfaces and the transfer of second-order geometry.

A prenormal singular germ lifts to an immersion into R^5 by re-inserting the
kernel coordinate, and projects to a regular surface in R^4 spanned by the
tangent plane of the lift and the distinguished plane.  The lift shares the
singular surface's second fundamental form; the projection shares its
asymptotic directions and point type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .directions import AsymptoticSet, point_type
from .forms import SecondForm
from .germs import TruncatedPoly2
from .parabola import ParabolaProfile

__all__ = [
    "RegularSurfaceR5",
    "RegularSurfaceR4",
    "lift_to_r5",
    "project_to_s",
    "s_asymptotic_directions",
    "curvature_ellipse",
    "verify_transfer",
    "TransferVerdict",
]


@dataclass(frozen=True)
class RegularSurfaceR5:
    """Immersion into R^5 with its 3x3 second-form matrix at the origin."""

    components: tuple
    alpha: SecondForm


@dataclass(frozen=True)
class RegularSurfaceR4:
    """Immersion into R^4 with second-form coefficients (l, m, n) per normal vector."""

    components: tuple
    coeffs: tuple  # ((l1, m1, n1), (l2, m2, n2))


def _jacobian(components):
    return np.array(
        [[float(p.coefficient(1, 0)), float(p.coefficient(0, 1))] for p in components]
    )


def lift_to_r5(adapted) -> RegularSurfaceR5:
    """Insert the kernel coordinate: (x, y) -> (x, y, f2, f3, f4).

    Dropping the second output coordinate recovers the germ exactly, and the
    lift's second form equals the germ's entrywise.
    """
    g = adapted.germ if hasattr(adapted, "germ") else adapted
    order = g.order
    comps = (
        g.components[0],
        TruncatedPoly2.variable("y", order),
        g.components[1],
        g.components[2],
        g.components[3],
    )
    rows = []
    for p in comps[2:]:
        rows.append(
            (2 * p.coefficient(2, 0), p.coefficient(1, 1), 2 * p.coefficient(0, 2))
        )
    return RegularSurfaceR5(components=comps, alpha=SecondForm(rows))


def surface_second_form_r4(components):
    """Second-form coefficients of an immersed surface in R^4 at the origin.

    Builds an orthonormal adapted frame from the 1-jet (tangent vectors
    first) and projects the second derivatives onto the two normal vectors.
    """
    jac = _jacobian(components)
    if np.linalg.matrix_rank(jac, tol=1e-10) != 2:
        raise ValueError("parametrisation is not an immersion at the origin")
    q, _ = np.linalg.qr(
        np.hstack([jac, np.eye(4)]),
    )
    frame = q.T  # rows: two tangent, then two normal vectors
    for i in range(4):  # fix signs so the frame is reproducible
        for c in frame[i]:
            if abs(c) > 1e-12:
                if c < 0:
                    frame[i] = -frame[i]
                break
    sxx = np.array([2.0 * float(p.coefficient(2, 0)) for p in components])
    sxy = np.array([float(p.coefficient(1, 1)) for p in components])
    syy = np.array([2.0 * float(p.coefficient(0, 2)) for p in components])
    coeffs = []
    for i in (2, 3):
        normal = frame[i]
        coeffs.append(
            (
                float(np.dot(sxx, normal)),
                float(np.dot(sxy, normal)),
                float(np.dot(syy, normal)),
            )
        )
    return tuple(coeffs)


def project_to_s(adapted, pp: ParabolaProfile) -> RegularSurfaceR4:
    """Regular surface spanned by the lift's tangent plane and the distinguished plane.

    The germ's normal components are rotated so the distinguished plane
    becomes the first two normal coordinates; the surface keeps those two.
    When the plane already is the first coordinate plane the components pass
    through unchanged (exactness preserved).
    """
    g = adapted.germ if hasattr(adapted, "germ") else adapted
    order = g.order
    rows = pp.ep.rows()
    if np.array_equal(rows, np.eye(3)):
        rotated = list(g.components[1:])
    else:
        rotated = []
        for frame_vec in rows:
            acc = TruncatedPoly2.zero(order)
            for w, comp in zip(frame_vec, g.components[1:]):
                if w != 0.0:
                    acc = acc + comp.map_coeffs(float) * float(w)
            rotated.append(acc)
    comps = (
        g.components[0],
        TruncatedPoly2.variable("y", order),
        rotated[0],
        rotated[1],
    )
    return RegularSurfaceR4(components=comps, coeffs=surface_second_form_r4(comps))


def s_asymptotic_directions(s: RegularSurfaceR4, tol: Tolerances = DEFAULT_TOL):
    """Solutions of the asymptotic binary differential equation at the origin.

    Returns "all" when the equation vanishes identically, otherwise unit
    projective tangent directions (dx, dy).
    """
    (l1, m1, n1), (l2, m2, n2) = s.coeffs
    a = l1 * m2 - l2 * m1
    b = l1 * n2 - l2 * n1
    c = m1 * n2 - m2 * n1
    scale = max(abs(l1), abs(m1), abs(n1), abs(l2), abs(m2), abs(n2), 1.0)
    thresh = tol.eps_rank * scale * scale
    if abs(a) <= thresh and abs(b) <= thresh and abs(c) <= thresh:
        return "all"
    dirs = []
    if abs(c) <= thresh:
        dirs.append((0.0, 1.0))
        if abs(b) > thresh:
            slope = -a / b
            dirs.append(_unit_dir(1.0, slope))
        # a == 0 too would have been "all"; with only c ~ 0 the (0,1) root is double
    else:
        disc = b * b - 4.0 * a * c
        threshold = tol.eps_disc * max(b * b, abs(4.0 * a * c))
        if abs(disc) <= threshold:
            dirs.append(_unit_dir(1.0, -b / (2.0 * c)))
        elif disc > 0:
            sq = math.sqrt(disc)
            dirs.append(_unit_dir(1.0, (-b - sq) / (2.0 * c)))
            dirs.append(_unit_dir(1.0, (-b + sq) / (2.0 * c)))
    return dirs


def _unit_dir(dx, dy):
    n = math.hypot(dx, dy)
    return (dx / n, dy / n)


def curvature_ellipse(s: RegularSurfaceR4, theta: float) -> np.ndarray:
    """Normal curvature vector of the normal section at angle theta (two normal coords)."""
    (l1, m1, n1), (l2, m2, n2) = s.coeffs
    c, sn = math.cos(theta), math.sin(theta)
    return np.array(
        [
            l1 * c * c + 2.0 * m1 * c * sn + n1 * sn * sn,
            l2 * c * c + 2.0 * m2 * c * sn + n2 * sn * sn,
        ]
    )


@dataclass(frozen=True)
class TransferVerdict:
    m_directions: object
    s_directions: object
    directions_match: bool
    m_point_type: str
    s_point_type: str
    types_match: bool

    @property
    def passed(self) -> bool:
        return self.directions_match and self.types_match


def _angular_mismatch(a, b) -> float:
    # |sin(angle)| between projective unit directions
    return abs(a[0] * b[1] - a[1] * b[0])


def verify_transfer(
    adapted,
    pp: ParabolaProfile,
    aset: AsymptoticSet,
    s: RegularSurfaceR4,
    angular_tol: float = 1e-7,
    tol: Tolerances = DEFAULT_TOL,
) -> TransferVerdict:
    """Check that asymptotic directions and point type transfer to the projection."""
    s_dirs = s_asymptotic_directions(s, tol)
    if aset.kind == "all":
        m_dirs = "all"
        directions_match = s_dirs == "all"
        s_type = "inflection" if s_dirs == "all" else _type_from_count(len(s_dirs))
    else:
        m_dirs = [_unit_dir(*d) for d in aset.directions()]
        if s_dirs == "all":
            directions_match = False
            s_type = "inflection"
        else:
            directions_match = len(m_dirs) == len(s_dirs)
            if directions_match:
                remaining = list(s_dirs)
                for d in m_dirs:
                    best = min(
                        range(len(remaining)),
                        key=lambda i: _angular_mismatch(d, remaining[i]),
                        default=None,
                    )
                    if best is None or _angular_mismatch(d, remaining[best]) > angular_tol:
                        directions_match = False
                        break
                    remaining.pop(best)
            s_type = _type_from_count(len(s_dirs))
    m_type = point_type(aset)
    return TransferVerdict(
        m_directions=m_dirs,
        s_directions=s_dirs,
        directions_match=bool(directions_match),
        m_point_type=m_type,
        s_point_type=s_type,
        types_match=m_type == s_type,
    )


def _type_from_count(n: int) -> str:
    return {0: "elliptic", 1: "parabolic", 2: "hyperbolic"}[n]
