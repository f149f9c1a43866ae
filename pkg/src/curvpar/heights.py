"""Height-function analysis: Hessians, the degenerate-direction cone, corank-2 loci.

The height function along a normal direction has the second form as its
Hessian at the singular point, so its degeneracy locus is a quadratic cone
over the normal space and its corank-2 locus is the common kernel of the
coefficient columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .directions import AsymptoticSet, BinormalSet
from .forms import SecondForm, rank_second_form
from .linalg import orthonormal_extension, subspace_distance, unit

__all__ = [
    "DegeneracyCone",
    "Corank2Verdict",
    "height_hessian",
    "degeneracy_cone",
    "corank2_conditions",
    "cone_parabola_orthogonality",
    "sample_cone",
]


@dataclass(frozen=True)
class DegeneracyCone:
    """Quadratic form of det H(h_nu) over normal coordinates plus the corank-2 locus.

    ``quad`` is symmetric 3x3 with nu . quad . nu = det of the height Hessian
    along nu; ``corank2_basis`` rows span the directions whose Hessian
    vanishes entirely.
    """

    quad: tuple
    corank2_dim: int
    corank2_basis: np.ndarray

    def det_value(self, nu) -> float:
        v = np.asarray([float(c) for c in nu], dtype=float)
        q = np.asarray([[float(x) for x in row] for row in self.quad], dtype=float)
        return float(v @ q @ v)


def height_hessian(sf: SecondForm, nu):
    """Hessian [[l_nu, m_nu], [m_nu, n_nu]] of the height function along nu.

    ``nu`` is given in normal-frame coordinates; entries stay exact when both
    the form and nu are rational.
    """
    l = sum(v * c for v, c in zip(nu, sf.L))
    m = sum(v * c for v, c in zip(nu, sf.M))
    n = sum(v * c for v, c in zip(nu, sf.N))
    return ((l, m), (m, n))


def _half(value):
    if isinstance(value, int):
        return Fraction(value, 2)
    return value / 2


def degeneracy_cone(sf: SecondForm, tol: Tolerances = DEFAULT_TOL) -> DegeneracyCone:
    """Expand det H(h_nu) = <L,nu><N,nu> - <M,nu>^2 and solve the corank-2 system."""
    L, M, N = sf.L, sf.M, sf.N
    quad = tuple(
        tuple(_half(L[i] * N[j] + N[i] * L[j]) - M[i] * M[j] for j in range(3))
        for i in range(3)
    )
    dim = 3 - rank_second_form(sf, tol)
    arr = np.asarray([[float(v) for v in row] for row in (L, M, N)], dtype=float)
    if dim == 3:
        basis = np.eye(3)
    else:
        _, _, vt = np.linalg.svd(arr)
        basis = vt[3 - dim :]
    return DegeneracyCone(quad=quad, corank2_dim=dim, corank2_basis=basis)


@dataclass(frozen=True)
class Corank2Verdict:
    """Comparison of the solved corank-2 locus against the case analysis.

    Expected locus per case: nondegenerate parabola gives the plane normal
    (or nothing) depending on whether the umbilic curvature vanishes;
    half-lines and lines give the plane normal when it is nonzero and the
    full orthogonal complement of the trace line when it vanishes; points
    give the complement of the segment direction, or all of the normal space
    when the trace is the origin itself.
    """

    case: str
    expected_dim: int
    expected_basis: np.ndarray
    computed_dim: int
    computed_basis: np.ndarray
    agrees: bool


def corank2_conditions(
    pp,
    dc: DegeneracyCone,
    ur,
    tol: Tolerances = DEFAULT_TOL,
    basis_tol: float = 1e-9,
) -> Corank2Verdict:
    shape = pp.shape
    nonzero = not ur.is_zero
    if shape.kind == "parabola":
        if nonzero:
            case = "parabola, nonzero umbilic curvature: trivial locus"
            expected = np.zeros((0, 3))
        else:
            case = "parabola, zero umbilic curvature: plane normal"
            expected = np.array([pp.ep.nu3])
    elif shape.kind in ("half_line", "line"):
        direction = pp.aff.basis[0]
        if nonzero:
            case = f"{shape.kind}, nonzero umbilic curvature: plane normal"
            expected = np.array([pp.ep.nu3])
        else:
            case = f"{shape.kind}, zero umbilic curvature: complement of the trace line"
            expected = orthonormal_extension([direction], 3)[1:]
    else:
        if nonzero:
            case = "point away from origin: complement of the segment direction"
            expected = orthonormal_extension([unit(pp.Lvec)], 3)[1:]
        else:
            case = "point at origin: all normal directions"
            expected = np.eye(3)
    agrees = (
        expected.shape[0] == dc.corank2_dim
        and subspace_distance(expected, dc.corank2_basis) <= basis_tol
    )
    return Corank2Verdict(
        case=case,
        expected_dim=expected.shape[0],
        expected_basis=expected,
        computed_dim=dc.corank2_dim,
        computed_basis=dc.corank2_basis,
        agrees=bool(agrees),
    )


def cone_parabola_orthogonality(
    pp,
    aset: AsymptoticSet,
    bset: BinormalSet,
    tol: Tolerances = DEFAULT_TOL,
) -> bool:
    """Every finite asymptotic parameter's parabola point is orthogonal to its binormal."""
    if bset.kind == "all":
        return True
    ok = True
    for b in bset.items:
        if b.param is None or isinstance(b.param, str):
            continue
        eta = np.asarray([float(c) for c in pp.eta(float(b.param))])
        inner = abs(float(np.dot(eta, b.vector)))
        ok = ok and inner <= 1e-8 * (1.0 + float(np.linalg.norm(eta)))
    return ok


def sample_cone(
    dc: DegeneracyCone,
    n_theta: int = 36,
    n_phi: int = 19,
    tol: Tolerances = DEFAULT_TOL,
):
    """Sample (theta, phi, det_sign, det_value) on a spherical grid of the normal space."""
    q = np.asarray([[float(x) for x in row] for row in dc.quad], dtype=float)
    scale = max(float(np.max(np.abs(q))), 1e-300)
    rows = []
    for i in range(n_theta):
        theta = 2.0 * np.pi * i / n_theta
        for j in range(n_phi):
            phi = np.pi * j / (n_phi - 1)
            nu = np.array(
                [np.sin(phi) * np.cos(theta), np.sin(phi) * np.sin(theta), np.cos(phi)]
            )
            value = float(nu @ q @ nu)
            if abs(value) <= tol.eps_rank * scale:
                sign = 0
            else:
                sign = 1 if value > 0 else -1
            rows.append((theta, phi, sign, value))
    return rows
