"""First and second fundamental forms of the singular surface at the origin.

The forms are evaluated only at the singular point, in the adapted frame of
the prenormal germ: the tangent line is the first coordinate axis and the
normal frame is the remaining three axes, so coefficient extraction is exact
when the germ is.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_TOL, Tolerances
from .linalg import rank3

__all__ = ["FirstForm", "SecondForm", "first_form", "second_form", "II_along", "rank_second_form"]


@dataclass(frozen=True)
class FirstForm:
    """Pseudometric coefficients at the singular point."""

    E: object
    F: object
    G: object

    def value(self, u):
        a, b = u
        return a * a * self.E + 2 * a * b * self.F + b * b * self.G


class SecondForm:
    """3x3 coefficient matrix of the second fundamental form.

    Rows follow the normal frame (nu1, nu2, nu3); columns hold the
    coefficients (l, m, n) of x^2, xy and y^2 directions.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        rows = tuple(tuple(row) for row in matrix)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("second form matrix must be 3x3")
        object.__setattr__(self, "matrix", rows)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("SecondForm is immutable")

    def __eq__(self, other):
        if not isinstance(other, SecondForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __repr__(self):
        return f"SecondForm({self.matrix!r})"

    @property
    def is_exact(self) -> bool:
        from .linalg import is_exact_scalar

        return all(is_exact_scalar(v) for row in self.matrix for v in row)

    # column views: the parabola eta(y) = L + 2 M y + N y^2 in frame coordinates
    @property
    def L(self):
        return tuple(row[0] for row in self.matrix)

    @property
    def M(self):
        return tuple(row[1] for row in self.matrix)

    @property
    def N(self):
        return tuple(row[2] for row in self.matrix)

    def row(self, i: int):
        return self.matrix[i]

    def eta(self, y):
        """Parabola point in normal-frame coordinates at parameter y."""
        return tuple(l + 2 * m * y + n * y * y for l, m, n in self.matrix)

    def eta_prime(self, y):
        return tuple(2 * m + 2 * n * y for _, m, n in self.matrix)

    def value_along(self, nu, u, v):
        """Bilinear value II_nu(u, v) for a normal-frame vector nu."""
        a, b = u
        c, d = v
        total = 0
        for w, (l, m, n) in zip(nu, self.matrix):
            if w != 0:
                total = total + w * (a * c * l + (a * d + b * c) * m + b * d * n)
        return total

    def reframe(self, frame_rows) -> "SecondForm":
        """Coefficients w.r.t. a new orthonormal normal frame (rows, floats)."""
        new = []
        for frame_vec in frame_rows:
            row = []
            for col in range(3):
                row.append(
                    sum(float(frame_vec[i]) * float(self.matrix[i][col]) for i in range(3))
                )
            new.append(tuple(row))
        return SecondForm(new)

    def to_float(self) -> "SecondForm":
        return SecondForm([[float(v) for v in row] for row in self.matrix])


def first_form(adapted) -> FirstForm:
    """Coefficients (E, F, G) of the pseudometric at the origin."""
    g = getattr(adapted, "germ", adapted)
    fx = [p.coefficient(1, 0) for p in g.components]
    fy = [p.coefficient(0, 1) for p in g.components]
    dot = lambda a, b: sum(x * y for x, y in zip(a, b))
    return FirstForm(E=dot(fx, fx), F=dot(fx, fy), G=dot(fy, fy))


def second_form(adapted) -> SecondForm:
    """Second-form coefficient matrix of a prenormal germ in its adapted frame.

    Row i is (2*[x^2], [xy], 2*[y^2]) of component i+1; exact on the rational
    path.
    """
    g = getattr(adapted, "germ", adapted)
    rows = []
    for p in g.components[1:]:
        rows.append(
            (
                2 * p.coefficient(2, 0),
                p.coefficient(1, 1),
                2 * p.coefficient(0, 2),
            )
        )
    return SecondForm(rows)


def II_along(adapted, nu, u, v):
    """II_nu(u, v) for tangent pairs u, v and a normal-frame vector nu."""
    return second_form(adapted).value_along(nu, u, v)


def rank_second_form(sf: SecondForm, tol: Tolerances = DEFAULT_TOL) -> int:
    """Matrix rank; exact over rationals, singular-value threshold otherwise."""
    return rank3(sf.matrix, tol.eps_rank)
