"""Numeric classification of hyperbolic isometries via 2x2 complex matrices.

An isometry of hyperbolic 3-space is encoded by a determinant-1 complex
matrix acting on the boundary sphere, as z -> (az+b)/(cz+d) when
orientation preserving, or z -> M(conj(z)) when the ``reversing`` flag is
set.  Matrices are taken up to a global sign, and every equality test is
an absolute comparison against a configurable tolerance (default 1e-9)
after determinant normalisation.

Orientation-preserving elements fall into four classes by the squared
trace: identity, elliptic (real in [0,4)), parabolic (exactly 4 and not
the identity), loxodromic (everything else).  Two nontrivial preserving
isometries commute exactly in one of three geometric configurations:
both parabolic with a common fixed point, both non-parabolic with a
common axis, or two half-turn rotations about perpendicular axes.
``commuting_criterion`` detects which configuration holds and ``commute``
checks the commutator directly, so the equivalence of the two is a
testable property rather than an assumption.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

DEFAULT_TOL = 1e-9

INF = complex(math.inf, 0.0)


def is_inf(z: complex) -> bool:
    return cmath.isinf(z)


@dataclass(frozen=True)
class Tolerance:
    """Comparison tolerance; every numeric equality in this module is
    |difference| <= tol after determinant normalisation."""

    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")


def _tol_value(tol: float | Tolerance | None) -> float:
    if tol is None:
        return DEFAULT_TOL
    if isinstance(tol, Tolerance):
        return tol.tol
    return float(tol)


class Isometry:
    """A determinant-normalised 2x2 complex matrix with a reversing flag."""

    __slots__ = ("a", "b", "c", "d", "reversing")

    def __init__(self, a: complex, b: complex, c: complex, d: complex,
                 reversing: bool = False):
        det = a * d - b * c
        if abs(det) < 1e-14:
            raise ValueError("matrix is not invertible")
        s = 1 / cmath.sqrt(det)
        self.a, self.b, self.c, self.d = a * s, b * s, c * s, d * s
        self.reversing = reversing

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[complex]], reversing: bool = False) -> "Isometry":
        (a, b), (c, d) = (tuple(r) for r in rows)
        return cls(a, b, c, d, reversing)

    def matrix(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return ((self.a, self.b), (self.c, self.d))

    def trace(self) -> complex:
        return self.a + self.d

    def compose(self, other: "Isometry") -> "Isometry":
        """Composition self after other; conjugation flags compose by
        (M, r1) o (N, r2) = (M * conj^r1(N), r1 xor r2)."""
        if self.reversing:
            na, nb, nc, nd = (other.a.conjugate(), other.b.conjugate(),
                              other.c.conjugate(), other.d.conjugate())
        else:
            na, nb, nc, nd = other.a, other.b, other.c, other.d
        return Isometry(
            self.a * na + self.b * nc, self.a * nb + self.b * nd,
            self.c * na + self.d * nc, self.c * nb + self.d * nd,
            self.reversing != other.reversing)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return self.compose(other)

    def inverse(self) -> "Isometry":
        inv = (self.d, -self.b, -self.c, self.a)
        if self.reversing:
            inv = tuple(z.conjugate() for z in inv)
        return Isometry(*inv, reversing=self.reversing)

    def apply(self, z: complex) -> complex:
        """Act on a boundary point (INF is the point at infinity)."""
        if self.reversing and not is_inf(z):
            z = z.conjugate()
        if is_inf(z):
            return INF if abs(self.c) == 0 else self.a / self.c
        denom = self.c * z + self.d
        if abs(denom) == 0:
            return INF
        return (self.a * z + self.b) / denom

    def is_identity(self, tol: float | Tolerance | None = None) -> bool:
        """Equal to +identity or -identity within tolerance (and preserving)."""
        t = _tol_value(tol)
        if self.reversing:
            return False
        for sign in (1, -1):
            if (abs(self.a - sign) <= t and abs(self.d - sign) <= t
                    and abs(self.b) <= t and abs(self.c) <= t):
                return True
        return False

    def approx_equal(self, other: "Isometry", tol: float | Tolerance | None = None) -> bool:
        """Equality in the sign quotient: min over +-1 of the entry distance."""
        if self.reversing != other.reversing:
            return False
        t = _tol_value(tol)
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        return any(all(abs(x - sign * y) <= t for x, y in zip(mine, theirs))
                   for sign in (1, -1))

    def __repr__(self) -> str:
        rev = ", reversing" if self.reversing else ""
        return f"Isometry([[{self.a}, {self.b}], [{self.c}, {self.d}]]{rev})"


class ElementClass(Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


def classify(g: Isometry, tol: float | Tolerance | None = None) -> ElementClass:
    """Conjugacy class of an orientation-preserving isometry by its trace."""
    if g.reversing:
        raise ValueError("classification applies to orientation-preserving isometries")
    t = _tol_value(tol)
    if g.is_identity(t):
        return ElementClass.IDENTITY
    t2 = g.trace() ** 2
    if abs(t2 - 4) <= t:
        return ElementClass.PARABOLIC
    if abs(t2.imag) <= t and -t <= t2.real < 4:
        return ElementClass.ELLIPTIC
    return ElementClass.LOXODROMIC


@dataclass(frozen=True)
class FixedPointSet:
    """Boundary fixed-point set: none, one point, two points, a circle or
    line (plane reflections), or the whole sphere."""

    kind: str  # "empty" | "point" | "pair" | "circle" | "line" | "all"
    points: tuple[complex, ...] = ()
    center: complex | None = None
    radius: float | None = None
    line_point: complex | None = None
    line_direction: complex | None = None


def fixed_points(g: Isometry, tol: float | Tolerance | None = None) -> FixedPointSet:
    """Fixed points of the boundary action.

    Preserving isometries have 1 or 2 boundary fixed points (or all of the
    sphere for the identity).  For reversing involutions the set is either
    empty (reflection in an interior point) or a circle/line (reflection in
    a geodesic plane).  Other reversing isometries are not supported.
    """
    t = _tol_value(tol)
    if not g.reversing:
        return _fixed_points_preserving(g, t)
    square = g @ g
    if not square.is_identity(max(t, 1e-9) * 10):
        raise ValueError(
            "fixed-point sets of reversing isometries are computed only for involutions")
    a, b, c, d = g.a, g.b, g.c, g.d
    if abs(c) <= t:
        # z = mu*conj(z) + nu with |mu| = 1: reflection in a line.
        mu = a / d
        nu = b / d
        direction = cmath.sqrt(mu)
        return FixedPointSet(kind="line", line_point=nu / 2, line_direction=direction)
    z0 = a / c
    r2 = (b / c + z0 * z0.conjugate()).real
    if r2 > t:
        return FixedPointSet(kind="circle", center=z0, radius=math.sqrt(r2))
    if r2 < -t:
        # Inversion with negative squared radius: the antipodal type, no
        # boundary fixed points (its fixed point is interior).
        return FixedPointSet(kind="empty")
    raise ValueError("degenerate reversing involution")


def _fixed_points_preserving(g: Isometry, t: float) -> FixedPointSet:
    if g.is_identity(t):
        return FixedPointSet(kind="all")
    a, b, c, d = g.a, g.b, g.c, g.d
    if abs(c) <= t:
        # Infinity is fixed; the finite fixed point solves (a-d) z + b = 0.
        if abs(a - d) <= t:
            return FixedPointSet(kind="point", points=(INF,))
        return FixedPointSet(kind="pair", points=(b / (d - a), INF))
    disc = (d - a) ** 2 + 4 * b * c
    if abs(disc) <= t * t * 4:
        return FixedPointSet(kind="point", points=((a - d) / (2 * c),))
    root = cmath.sqrt(disc)
    z1 = ((a - d) + root) / (2 * c)
    z2 = ((a - d) - root) / (2 * c)
    return FixedPointSet(kind="pair", points=(z1, z2))


def chordal(p: complex, q: complex) -> float:
    """Chordal distance on the boundary sphere, handling infinity."""
    if is_inf(p) and is_inf(q):
        return 0.0
    if is_inf(p):
        return 2 / math.sqrt(1 + abs(q) ** 2)
    if is_inf(q):
        return 2 / math.sqrt(1 + abs(p) ** 2)
    return 2 * abs(p - q) / math.sqrt((1 + abs(p) ** 2) * (1 + abs(q) ** 2))


def _homogeneous(p: complex) -> tuple[complex, complex]:
    return (1, 0) if is_inf(p) else (p, 1)


def cross_ratio(a: complex, b: complex, c: complex, d: complex) -> complex:
    """Cross ratio (a,b; c,d); equals -1 when the geodesic with endpoints
    a,b meets the geodesic with endpoints c,d perpendicularly."""
    pa, pb, pc, pd = (_homogeneous(x) for x in (a, b, c, d))

    def det(p, q):
        return p[0] * q[1] - p[1] * q[0]

    denom = det(pa, pd) * det(pb, pc)
    if abs(denom) == 0:
        return INF
    return det(pa, pc) * det(pb, pd) / denom


def commute(a: Isometry, b: Isometry, tol: float | Tolerance | None = None) -> bool:
    """Is the commutator a b a^-1 b^-1 equal to +-identity within tolerance?"""
    comm = a @ b @ a.inverse() @ b.inverse()
    return comm.is_identity(tol)


class CommutingCase(Enum):
    SHARED_PARABOLIC_POINT = "shared_parabolic_point"
    SHARED_AXIS = "shared_axis"
    PERPENDICULAR_PI_ROTATIONS = "perpendicular_pi_rotations"
    NONE = "none"


def commuting_criterion(a: Isometry, b: Isometry,
                        tol: float | Tolerance | None = None) -> CommutingCase:
    """Which commuting configuration two nontrivial preserving isometries
    are in, if any.

    The tags cover: parabolics with the same boundary fixed point, a shared
    axis between non-parabolics, and half-turns about perpendicular axes
    (detected by squared trace 0 on both and cross-ratio -1 of the axis
    endpoint pairs).  Commuting is equivalent to the tag being != NONE.
    """
    t = _tol_value(tol)
    if a.reversing or b.reversing:
        raise ValueError("criterion applies to orientation-preserving isometries")
    if a.is_identity(t) or b.is_identity(t):
        raise ValueError("criterion needs nontrivial isometries")
    # Chordal point matching tolerance: fixed points come out of a square
    # root, so allow the square-root loss relative to the matrix tolerance.
    pt_tol = math.sqrt(t)
    ca, cb = classify(a, t), classify(b, t)
    if ca is ElementClass.PARABOLIC and cb is ElementClass.PARABOLIC:
        pa = fixed_points(a, t).points[0]
        pb = fixed_points(b, t).points[0]
        if chordal(pa, pb) <= pt_tol:
            return CommutingCase.SHARED_PARABOLIC_POINT
        return CommutingCase.NONE
    if ca is ElementClass.PARABOLIC or cb is ElementClass.PARABOLIC:
        return CommutingCase.NONE
    pa = fixed_points(a, t).points
    pb = fixed_points(b, t).points
    if len(pa) == 2 and len(pb) == 2:
        direct = max(chordal(pa[0], pb[0]), chordal(pa[1], pb[1]))
        crossed = max(chordal(pa[0], pb[1]), chordal(pa[1], pb[0]))
        if min(direct, crossed) <= pt_tol:
            return CommutingCase.SHARED_AXIS
        if (ca is ElementClass.ELLIPTIC and cb is ElementClass.ELLIPTIC
                and abs(a.trace()) <= pt_tol and abs(b.trace()) <= pt_tol):
            cr = cross_ratio(pa[0], pa[1], pb[0], pb[1])
            if not is_inf(cr) and abs(cr + 1) <= pt_tol:
                return CommutingCase.PERPENDICULAR_PI_ROTATIONS
    return CommutingCase.NONE


class FixType(Enum):
    TRIVIAL = "e"
    CYCLIC = "Z"
    RANK_TWO_ABELIAN = "Z+Z"
    WHOLE_GROUP = "G"
    SURFACE = "pi1(S)"


def fix_type_table(orientation_preserving: bool, phi_squared_identity: bool,
                   manifold_closed: bool) -> frozenset[FixType]:
    """The possible isomorphism types of the fixed subgroup of an
    automorphism of a hyperbolic 3-manifold group, by case."""
    if orientation_preserving:
        if manifold_closed:
            return frozenset({FixType.CYCLIC, FixType.WHOLE_GROUP})
        return frozenset({FixType.TRIVIAL, FixType.CYCLIC,
                          FixType.RANK_TWO_ABELIAN, FixType.WHOLE_GROUP})
    if not phi_squared_identity:
        return frozenset({FixType.TRIVIAL, FixType.CYCLIC})
    return frozenset({FixType.TRIVIAL, FixType.SURFACE})


# -- constructors used by the property suites ---------------------------------


def _frame(p: complex, q: complex) -> Isometry:
    """An isometry sending 0 to p and infinity to q (p != q)."""
    if is_inf(p) and is_inf(q):
        raise ValueError("frame endpoints must differ")
    if is_inf(p):
        return Isometry(q, 1, 1, 0)
    if is_inf(q):
        return Isometry(1, p, 0, 1)
    if abs(p - q) == 0:
        raise ValueError("frame endpoints must differ")
    return Isometry(q, p, 1, 1)


def make_loxodromic(p: complex, q: complex, eigenvalue: complex) -> Isometry:
    """Loxodromic (or elliptic, for |eigenvalue| = 1) with axis p..q."""
    if abs(eigenvalue) == 0:
        raise ValueError("eigenvalue must be nonzero")
    f = _frame(p, q)
    return f @ Isometry(eigenvalue, 0, 0, 1 / eigenvalue) @ f.inverse()


def make_elliptic(p: complex, q: complex, angle: float) -> Isometry:
    """Rotation by ``angle`` about the axis p..q."""
    return make_loxodromic(p, q, cmath.exp(1j * angle / 2))


def make_pi_rotation(p: complex, q: complex) -> Isometry:
    return make_elliptic(p, q, math.pi)


def make_parabolic(p: complex, translation: complex = 1) -> Isometry:
    """Parabolic fixing the single boundary point p."""
    if abs(translation) == 0:
        raise ValueError("translation must be nonzero")
    shear = Isometry(1, translation, 0, 1)
    if is_inf(p):
        return shear
    f = Isometry(p, 1, 1, 0)  # sends infinity to p
    return f @ shear @ f.inverse()


def random_isometry(rng, reversing: bool = False, scale: float = 1.0) -> Isometry:
    """A random isometry with entries in a box, rejecting near-singular draws."""
    while True:
        entries = [complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
                   for _ in range(4)]
        a, b, c, d = entries
        if abs(a * d - b * c) >= 0.1:
            return Isometry(a, b, c, d, reversing)
