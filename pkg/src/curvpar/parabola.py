"""Curvature parabola: shape, affine hull, distinguished plane, orbit, stratum.

The parabola trace is eta(y) = L + 2 M y + N y^2 in normal-frame coordinates,
where L, M, N are the columns of the second-form matrix.  Shape decisions run
exactly on rational input; the frames attached to the profile are float.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .forms import SecondForm, rank_second_form
from .germs import Jet2
from .linalg import collinear3, dot3, orthonormal_extension, scale_of, unit, vec_is_zero

__all__ = [
    "ORBIT_PARABOLA",
    "ORBIT_HALF_LINE",
    "ORBIT_LINE",
    "ORBIT_POINT",
    "ParabolaShape",
    "AffineSubspace",
    "PlaneBasis",
    "ParabolaProfile",
    "build_parabola",
    "classify_two_jet",
    "ReducedTwoJet",
    "reduce_to_normal_form",
    "sample_parabola",
]

ORBIT_PARABOLA = "(x,xy,y^2,0)"
ORBIT_HALF_LINE = "(x,y^2,0,0)"
ORBIT_LINE = "(x,xy,0,0)"
ORBIT_POINT = "(x,0,0,0)"


@dataclass(frozen=True)
class ParabolaShape:
    """Geometric type of the parabola trace.

    ``kind`` is one of "parabola", "half_line", "line", "point".  The radial
    flag tells whether the line containing the trace passes through the
    origin; for half-lines the vertex data is recorded separately because the
    binormal count distinguishes a radial half-line with vertex at the origin
    from one with the vertex elsewhere.
    """

    kind: str
    radial: bool | None = None
    vertex_param: object | None = None
    vertex_is_origin: bool | None = None
    is_origin: bool | None = None

    @property
    def degenerate(self) -> bool:
        return self.kind != "parabola"

    def label(self) -> str:
        if self.kind == "parabola":
            return "nondegenerate parabola"
        if self.kind == "half_line":
            return ("radial" if self.radial else "non-radial") + " half-line"
        if self.kind == "line":
            return ("radial" if self.radial else "non-radial") + " line"
        return "point at origin" if self.is_origin else "point away from origin"


@dataclass(frozen=True)
class AffineSubspace:
    """Affine subspace of the normal space: base point + orthonormal directions."""

    point: np.ndarray
    basis: np.ndarray
    dim: int


@dataclass(frozen=True)
class PlaneBasis:
    """Orthonormal basis (u1, u2) of the distinguished plane and its unit normal.

    ``forced`` records whether the plane was determined by the geometry or
    completed by the canonical free choice (radial and point cases).
    """

    u1: np.ndarray
    u2: np.ndarray
    nu3: np.ndarray
    forced: bool

    def rows(self) -> np.ndarray:
        return np.array([self.u1, self.u2, self.nu3])

    def to_plane_coords(self, v) -> np.ndarray:
        arr = np.asarray([float(c) for c in v])
        return np.array([float(np.dot(self.u1, arr)), float(np.dot(self.u2, arr))])

    def from_plane_coords(self, a, b) -> np.ndarray:
        return a * self.u1 + b * self.u2


@dataclass(frozen=True)
class ParabolaProfile:
    Lvec: tuple
    Mvec: tuple
    Nvec: tuple
    shape: ParabolaShape
    orbit: str
    aff: AffineSubspace
    ep: PlaneBasis
    stratum: int

    def eta(self, y):
        return tuple(
            l + 2 * m * y + n * y * y
            for l, m, n in zip(self.Lvec, self.Mvec, self.Nvec)
        )

    def eta_prime(self, y):
        return tuple(2 * m + 2 * n * y for m, n in zip(self.Mvec, self.Nvec))


_SHAPE_TO_ORBIT = {
    "parabola": ORBIT_PARABOLA,
    "half_line": ORBIT_HALF_LINE,
    "line": ORBIT_LINE,
    "point": ORBIT_POINT,
}


def _decide_shape(L, M, N, tol: Tolerances) -> ParabolaShape:
    scale = scale_of(L, M, N)
    n_zero = vec_is_zero(N, tol.eps_rank, scale)
    m_zero = vec_is_zero(M, tol.eps_rank, scale)
    l_zero = vec_is_zero(L, tol.eps_rank, scale)
    if n_zero and m_zero:
        return ParabolaShape(kind="point", is_origin=l_zero)
    if n_zero:
        radial = l_zero or collinear3(L, M, tol.eps_rank)
        return ParabolaShape(kind="line", radial=radial)
    if m_zero or collinear3(M, N, tol.eps_rank):
        mu = dot3(M, N) / dot3(N, N)
        vertex = tuple(l - mu * mu * n for l, n in zip(L, N))
        vertex_zero = vec_is_zero(vertex, tol.eps_rank, scale)
        radial = vertex_zero or collinear3(vertex, N, tol.eps_rank)
        return ParabolaShape(
            kind="half_line",
            radial=radial,
            vertex_param=-mu,
            vertex_is_origin=vertex_zero,
        )
    return ParabolaShape(kind="parabola")


def _float_vec(v) -> np.ndarray:
    return np.asarray([float(c) for c in v], dtype=float)


def _plane_basis_from_normal(nu3: np.ndarray, forced: bool) -> PlaneBasis:
    """Canonical right-handed basis of the plane with unit normal nu3.

    The first basis vector is the projection of the lowest-index coordinate
    axis that is not close to the normal, so coordinate planes keep their
    coordinate bases.
    """
    for c in nu3:
        if abs(c) > 1e-13:
            if c < 0:
                nu3 = -nu3
            break
    k = next(i for i in range(3) if abs(nu3[i]) < 0.9)
    axis = np.zeros(3)
    axis[k] = 1.0
    u1 = axis - nu3[k] * nu3
    u1 /= np.linalg.norm(u1)
    u2 = np.cross(nu3, u1)
    return PlaneBasis(u1=u1, u2=u2, nu3=nu3, forced=forced)


def _build_frames(L, M, N, shape: ParabolaShape, tol: Tolerances):
    lf, mf, nf = _float_vec(L), _float_vec(M), _float_vec(N)
    if shape.kind == "parabola":
        nu3 = unit(np.cross(mf, nf))
        ep = _plane_basis_from_normal(nu3, forced=True)
        aff = AffineSubspace(point=lf, basis=np.array([ep.u1, ep.u2]), dim=2)
        return aff, ep
    if shape.kind == "half_line":
        direction = unit(nf)
        mu = float(dot3(M, N)) / float(dot3(N, N))
        vertex = lf - mu * mu * nf
        aff = AffineSubspace(point=vertex, basis=np.array([direction]), dim=1)
        if shape.radial:
            rows = orthonormal_extension([direction], 3)
            ep = PlaneBasis(rows[0], rows[1], np.cross(rows[0], rows[1]), forced=False)
        else:
            rows = orthonormal_extension([direction, vertex], 3)
            ep = PlaneBasis(rows[0], rows[1], np.cross(rows[0], rows[1]), forced=True)
        return aff, ep
    if shape.kind == "line":
        direction = unit(mf)
        aff = AffineSubspace(point=lf, basis=np.array([direction]), dim=1)
        if shape.radial:
            rows = orthonormal_extension([direction], 3)
            ep = PlaneBasis(rows[0], rows[1], np.cross(rows[0], rows[1]), forced=False)
        else:
            rows = orthonormal_extension([direction, lf], 3)
            ep = PlaneBasis(rows[0], rows[1], np.cross(rows[0], rows[1]), forced=True)
        return aff, ep
    # point: the plane must contain the segment from the origin to the trace
    aff = AffineSubspace(point=lf, basis=np.zeros((0, 3)), dim=0)
    if shape.is_origin:
        rows = np.eye(3)
    else:
        rows = orthonormal_extension([unit(lf)], 3)
    ep = PlaneBasis(rows[0], rows[1], np.cross(rows[0], rows[1]), forced=False)
    return aff, ep


def build_parabola(sf: SecondForm, tol: Tolerances = DEFAULT_TOL) -> ParabolaProfile:
    """Classify the parabola trace of a second form and attach hull, plane, stratum."""
    L, M, N = sf.L, sf.M, sf.N
    shape = _decide_shape(L, M, N, tol)
    aff, ep = _build_frames(L, M, N, shape, tol)
    return ParabolaProfile(
        Lvec=L,
        Mvec=M,
        Nvec=N,
        shape=shape,
        orbit=_SHAPE_TO_ORBIT[shape.kind],
        aff=aff,
        ep=ep,
        stratum=rank_second_form(sf, tol),
    )


# ---------------------------------------------------------------------------
# Coefficient-level orbit classification
# ---------------------------------------------------------------------------


def classify_two_jet(j2: Jet2, tol: Tolerances = DEFAULT_TOL) -> str:
    """Orbit label from the 2-jet coefficient criteria, independent of geometry.

    Decided exactly on rational coefficients; float input falls back to
    scaled zero tests.
    """
    g1 = j2.a11 * j2.b02 - j2.a02 * j2.b11
    g2 = j2.a11 * j2.c02 - j2.a02 * j2.c11
    g3 = j2.c11 * j2.b02 - j2.c02 * j2.b11
    xy_col = (j2.a11, j2.b11, j2.c11)
    yy_col = (j2.a02, j2.b02, j2.c02)
    if j2.is_exact:
        gamma_zero = g1 == 0 and g2 == 0 and g3 == 0
        yy_zero = all(v == 0 for v in yy_col)
        xy_zero = all(v == 0 for v in xy_col)
    else:
        scale = scale_of(xy_col, yy_col)
        thresh = tol.eps_rank * max(scale * scale, 1.0)
        gamma_zero = max(abs(float(g1)), abs(float(g2)), abs(float(g3))) <= thresh
        zero_thresh = tol.eps_rank * max(scale, 1.0)
        yy_zero = scale_of(yy_col) <= zero_thresh
        xy_zero = scale_of(xy_col) <= zero_thresh
    if not gamma_zero:
        return ORBIT_PARABOLA
    if not yy_zero:
        return ORBIT_HALF_LINE
    if not xy_zero:
        return ORBIT_LINE
    return ORBIT_POINT


# ---------------------------------------------------------------------------
# Reduction to the normal forms of the four orbits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedTwoJet:
    """Normal-form 2-jet with the witnessing source change and target rotation.

    ``target_rotation @ jet  composed with  source_matrix`` reproduces the
    reduced coefficients.  The source change is (x, y) -> (x, lam*x + mu*y).
    """

    jet2: Jet2
    orbit: str
    source_matrix: np.ndarray
    target_rotation: np.ndarray


def _jet_matrix(j2: Jet2):
    return [list(row) for row in j2.rows()]


def _jet_from_matrix(rows) -> Jet2:
    flat = [v for row in rows for v in row]
    return Jet2(*flat)


def apply_source_to_jet(rows, lam, mu):
    """Coefficient action of the source change (x, y) -> (x, lam*x + mu*y)."""
    out = []
    for a, b, c in rows:
        out.append(
            [
                a + lam * b + lam * lam * c,
                mu * b + 2 * lam * mu * c,
                mu * mu * c,
            ]
        )
    return out


def apply_target_to_jet(rows, rot3):
    """Coefficient action of a target rotation acting on components 2..4."""
    out = []
    for i in range(3):
        out.append(
            [
                sum(rot3[i][k] * rows[k][col] for k in range(3))
                for col in range(3)
            ]
        )
    return out


def _already_reduced(j2: Jet2, orbit: str) -> bool:
    r = j2.rows()
    if orbit == ORBIT_PARABOLA:
        return (
            r[0] == (0, 1, 0)
            and j2.c11 == 0
            and j2.c02 == 0
            and j2.b02 > 0
        )
    if orbit == ORBIT_HALF_LINE:
        return (
            j2.a11 == 0
            and j2.a02 == 1
            and r[1][1] == 0
            and r[1][2] == 0
            and r[2] == (0, 0, 0)
        )
    if orbit == ORBIT_LINE:
        return (
            r[0] == (0, 1, 0)
            and r[1][1] == 0
            and r[1][2] == 0
            and r[2] == (0, 0, 0)
        )
    return (
        r[0] == (0, 0, 0)
        and r[1][1] == 0
        and r[1][2] == 0
        and r[2] == (0, 0, 0)
    )


def reduce_to_normal_form(j2: Jet2, tol: Tolerances = DEFAULT_TOL) -> ReducedTwoJet:
    """Reduce a prenormal 2-jet to its orbit normal form by a source change
    and a target rotation, returning both witnesses.

    Already-reduced jets come back unchanged with identity witnesses.
    """
    orbit = classify_two_jet(j2, tol)
    if _already_reduced(j2, orbit):
        return ReducedTwoJet(
            jet2=j2,
            orbit=orbit,
            source_matrix=np.eye(2),
            target_rotation=np.eye(4),
        )

    rows = [[float(v) for v in row] for row in j2.rows()]
    col = lambda k: np.array([rows[i][k] for i in range(3)])
    A, B, C = col(0), col(1), col(2)

    def right_handed(w1, w2):
        return np.array([w1, w2, np.cross(w1, w2)])

    def secondary_axis(w1, v):
        # unit vector orthogonal to w1, following v when v has a usable
        # component off the w1-line, the canonical extension otherwise
        off_line = np.linalg.norm(v - np.dot(v, w1) * w1)
        if off_line > 1e-13 * max(np.linalg.norm(v), 1.0):
            return orthonormal_extension([w1, v], 3)[1]
        return orthonormal_extension([w1], 3)[1]

    if orbit == ORBIT_PARABOLA:
        n_hat = unit(C)
        rot3 = right_handed(unit(B - np.dot(B, n_hat) * n_hat), n_hat)
        rotated = apply_target_to_jet(rows, rot3)
        lam = -rotated[0][0] / rotated[0][1]
        mu = 1.0 / rotated[0][1]
    elif orbit == ORBIT_HALF_LINE:
        w1 = unit(C)
        rot3 = right_handed(w1, secondary_axis(w1, A))
        rotated = apply_target_to_jet(rows, rot3)
        lam = -rotated[0][1] / (2.0 * rotated[0][2])
        mu = 1.0 / np.sqrt(rotated[0][2])
    elif orbit == ORBIT_LINE:
        w1 = unit(B)
        rot3 = right_handed(w1, secondary_axis(w1, A))
        rotated = apply_target_to_jet(rows, rot3)
        lam = -rotated[0][0] / rotated[0][1]
        mu = 1.0 / rotated[0][1]
    else:  # ORBIT_POINT: move the x^2 column onto the second normal direction
        a_hat = unit(A)
        rot3 = right_handed(orthonormal_extension([a_hat], 3)[1], a_hat)
        rotated = apply_target_to_jet(rows, rot3)
        lam, mu = 0.0, 1.0

    reduced = apply_source_to_jet(rotated, lam, mu)
    target = np.eye(4)
    target[1:, 1:] = rot3
    source = np.array([[1.0, 0.0], [lam, mu]])
    return ReducedTwoJet(
        jet2=_jet_from_matrix(reduced),
        orbit=orbit,
        source_matrix=source,
        target_rotation=target,
    )


def sample_parabola(pp: ParabolaProfile, lo: float = -5.0, hi: float = 5.0, n: int = 401):
    """Sample (y, eta1, eta2, eta3) rows in normal-frame coordinates."""
    rows = []
    if n == 1:
        ys = [lo]
    else:
        ys = [lo + (hi - lo) * k / (n - 1) for k in range(n)]
    for y in ys:
        e = pp.eta(float(y))
        rows.append((float(y), float(e[0]), float(e[1]), float(e[2])))
    return rows
