"""Closed-form group determinant for SmallGroup(16,13).

The eight linear characters send X, Y, Z to +-1 and contribute
M = prod F(x, y, z). The two degree-two representations agree on X and Z
(the D8 representation) and send Y to +-i times the identity; their
determinants are U + iV and U - iV with U, V integers. Hence

    D(F) = M * A^2,   A = U^2 + V^2.

The scalar functions use Python integers. ``LINEAR_FORMS`` and
``values_from_forms`` are the vectorised versions used by the scans.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvariantViolation
from .groups import GroupRingElement, build_group

# (x, y, z) order of the eight sign points
SIGN_POINTS = (
    (1, 1, 1), (-1, 1, 1), (1, -1, 1), (-1, -1, 1),
    (1, 1, -1), (-1, 1, -1), (1, -1, -1), (-1, -1, -1),
)


@dataclass(frozen=True)
class CoefficientTuple:
    """F = f(Z) + g(Z)X + h(Z)Y + t(Z)XY with f = a0 + a1 x + a2 x^2 + a3 x^3, etc."""

    a: tuple[int, int, int, int]
    b: tuple[int, int, int, int]
    c: tuple[int, int, int, int]
    d: tuple[int, int, int, int]

    def __post_init__(self):
        for name in "abcd":
            block = tuple(int(v) for v in getattr(self, name))
            if len(block) != 4:
                raise ValueError(f"block {name} needs 4 coefficients, got {len(block)}")
            object.__setattr__(self, name, block)

    @classmethod
    def from_flat(cls, values: Iterable[int]) -> CoefficientTuple:
        v = [int(x) for x in values]
        if len(v) != 16:
            raise ValueError(f"expected 16 coefficients (a0..a3,b0..b3,c0..c3,d0..d3), got {len(v)}")
        return cls(tuple(v[0:4]), tuple(v[4:8]), tuple(v[8:12]), tuple(v[12:16]))

    @classmethod
    def identity(cls) -> CoefficientTuple:
        return cls.from_flat([1] + [0] * 15)

    @property
    def flat(self) -> tuple[int, ...]:
        return self.a + self.b + self.c + self.d

    def __add__(self, other: CoefficientTuple) -> CoefficientTuple:
        return CoefficientTuple.from_flat(x + y for x, y in zip(self.flat, other.flat))

    def __sub__(self, other: CoefficientTuple) -> CoefficientTuple:
        return CoefficientTuple.from_flat(x - y for x, y in zip(self.flat, other.flat))

    def __rmul__(self, k: int) -> CoefficientTuple:
        return CoefficientTuple.from_flat(k * x for x in self.flat)

    def __neg__(self) -> CoefficientTuple:
        return (-1) * self


# Z^i -> a_i (index i), Z^i Y -> c_i (i + 4), Z^i X -> b_i (i + 8), Z^i XY -> d_i (i + 12);
# the sg16_13 element index is a + 4b + 8c for Z^a Y^b X^c.
_ELEMENT_OF_SLOT = tuple(range(0, 4)) + tuple(range(8, 12)) + tuple(range(4, 8)) + tuple(range(12, 16))


def element_from_tuple(t: CoefficientTuple) -> GroupRingElement:
    coeffs = [0] * 16
    for slot, value in enumerate(t.flat):
        coeffs[_ELEMENT_OF_SLOT[slot]] = value
    return GroupRingElement(build_group("sg16_13"), tuple(coeffs))


def tuple_from_element(u: GroupRingElement) -> CoefficientTuple:
    if u.group is not build_group("sg16_13"):
        raise ValueError(f"expected an element of sg16_13, got {u.group.name}")
    return CoefficientTuple.from_flat(u.coeffs[_ELEMENT_OF_SLOT[slot]] for slot in range(16))


def fold_to_z2cubed(t: CoefficientTuple) -> GroupRingElement:
    """Push F forward along the abelianisation Z -> z, Y -> y, X -> x.

    The kernel is the commutator subgroup {1, Z^2}, so the result is
    alpha1 + alpha2 z + beta1 x + beta2 xz + ..., and its Z2^3 group
    determinant is the product of the eight sign-point values.
    """
    coeffs = [0] * 8
    for block, (i, j) in zip((t.a, t.b, t.c, t.d), ((0, 0), (1, 0), (0, 1), (1, 1))):
        for power, value in enumerate(block):
            coeffs[i + 2 * j + 4 * (power % 2)] += value
    return GroupRingElement(build_group("z2cubed"), tuple(coeffs))


class GaussianInt:
    """re + im*i with exact integer parts. Immutable by convention."""

    __slots__ = ("re", "im")

    def __init__(self, re: int, im: int = 0):
        self.re = re
        self.im = im

    def __add__(self, other):
        if not isinstance(other, GaussianInt):
            other = _gauss(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianInt):
            other = _gauss(other)
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _gauss(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianInt):
            other = _gauss(other)
        return GaussianInt(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


def _gauss(x) -> GaussianInt:
    if isinstance(x, GaussianInt):
        return x
    if isinstance(x, int):
        return GaussianInt(x, 0)
    raise TypeError(f"cannot treat {type(x).__name__} as a Gaussian integer")


I = GaussianInt(0, 1)


def gaussian_eval(cubic: Sequence[int], sign: int) -> GaussianInt:
    """Evaluate c0 + c1 w + c2 w^2 + c3 w^3 at w = sign * i."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c0, c1, c2, c3 = cubic
    return GaussianInt(c0 - c2, sign * (c1 - c3))


def sign_point_values(t: CoefficientTuple) -> tuple[int, ...]:
    """F(x, y, z) at the eight points of ``SIGN_POINTS``."""
    out = []
    for z in (1, -1):
        f, g, h, k = (p[0] + p[2] + z * (p[1] + p[3]) for p in (t.a, t.b, t.c, t.d))
        for s_h, s_k in ((f + h, g + k), (f - h, g - k)):
            out.append(s_h + s_k)
            out.append(s_h - s_k)
    return tuple(out)


def char_product_M(t: CoefficientTuple) -> int:
    m = 1
    for v in sign_point_values(t):
        m *= v
    return m


def compute_UV(t: CoefficientTuple) -> tuple[int, int]:
    f, g, h, k = ((gaussian_eval(p, 1), gaussian_eval(p, -1)) for p in (t.a, t.b, t.c, t.d))
    U = f[0] * f[1] - g[0] * g[1] - h[0] * h[1] + k[0] * k[1]
    V = f[0] * h[1] + f[1] * h[0] - g[0] * k[1] - g[1] * k[0]
    if U.im or V.im:
        raise InvariantViolation(f"U = {U}, V = {V} not real for {t}")
    return U.re, V.re


@dataclass(frozen=True)
class FactoredDeterminant:
    M: int
    U: int
    V: int
    A: int
    value: int


def factored_determinant(t: CoefficientTuple) -> FactoredDeterminant:
    M = char_product_M(t)
    U, V = compute_UV(t)
    A = U * U + V * V
    return FactoredDeterminant(M, U, V, A, M * A * A)


# -- degree-two representations ---------------------------------------------

Rep2Matrix = tuple[tuple[GaussianInt, GaussianInt], tuple[GaussianInt, GaussianInt]]

_ZERO, _ONE = GaussianInt(0), GaussianInt(1)
_RHO_X = ((_ZERO, _ONE), (_ONE, _ZERO))
_RHO_Z = ((I, _ZERO), (_ZERO, -I))


def _mat_mul(p: Rep2Matrix, q: Rep2Matrix) -> Rep2Matrix:
    return tuple(
        tuple(p[r][0] * q[0][col] + p[r][1] * q[1][col] for col in range(2)) for r in range(2)
    )


def _scalar(s: GaussianInt) -> Rep2Matrix:
    return ((s, _ZERO), (_ZERO, s))


def _rho(which: int) -> list[Rep2Matrix]:
    """rho(g) for every sg16_13 element index (Z^a Y^b X^c -> rho(Z)^a rho(Y)^b rho(X)^c)."""
    lam = I if which == 1 else -I
    images = []
    for index in range(16):
        a, b, c = index % 4, (index // 4) % 2, index // 8
        m = _scalar(_ONE)
        for _ in range(a):
            m = _mat_mul(m, _RHO_Z)
        if b:
            m = _mat_mul(m, _scalar(lam))
        if c:
            m = _mat_mul(m, _RHO_X)
        images.append(m)
    return images


def rep2_matrix(t: CoefficientTuple, which: int) -> Rep2Matrix:
    """sum_g a_g rho(g) for rho_1 (``which=1``, Y -> iI) or rho_2 (``which=2``, Y -> -iI)."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    total = [[_ZERO, _ZERO], [_ZERO, _ZERO]]
    for coeff, image in zip(element_from_tuple(t).coeffs, _rho(which)):
        if coeff:
            for r in range(2):
                for col in range(2):
                    total[r][col] = total[r][col] + coeff * image[r][col]
    return tuple(tuple(row) for row in total)


def rep2_det(t: CoefficientTuple, which: int) -> GaussianInt:
    m = rep2_matrix(t, which)
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


# -- vectorised fast path ----------------------------------------------------

# Rows: 8 sign-point values, then Re/Im of f(i), g(i), h(i), t(i).
# Columns: the 16 flat coefficients.
def _linear_forms() -> np.ndarray:
    rows = []
    for x, y, z in SIGN_POINTS:
        zp = [z ** p for p in range(4)]
        rows.append(zp + [x * w for w in zp] + [y * w for w in zp] + [x * y * w for w in zp])
    for block in range(4):
        re = [0] * 16
        im = [0] * 16
        re[4 * block], re[4 * block + 2] = 1, -1
        im[4 * block + 1], im[4 * block + 3] = 1, -1
        rows.extend([re, im])
    return np.array(rows, dtype=np.int64)


LINEAR_FORMS = _linear_forms()


def max_abs_value(bound: int) -> int:
    """Upper bound on |D(F)| when every coefficient satisfies |c| <= bound."""
    sign_point = 16 * bound
    uv = 8 * (2 * bound) ** 2
    a = 2 * uv * uv
    return sign_point ** 8 * a * a


def int64_safe(bound: int) -> bool:
    return max_abs_value(bound) < 2 ** 63


def values_from_forms(forms: np.ndarray) -> np.ndarray:
    """Determinant values from an (N, 16) array of ``LINEAR_FORMS`` images.

    Works on int64 (caller must check ``int64_safe``) or object arrays.
    """
    M = forms[:, 0]
    for j in range(1, 8):
        M = M * forms[:, j]
    fr, fi, gr, gi, hr, hi, tr, ti = (forms[:, 8 + j] for j in range(8))
    U = fr * fr + fi * fi - gr * gr - gi * gi - hr * hr - hi * hi + tr * tr + ti * ti
    V = 2 * (fr * hr + fi * hi - gr * tr - gi * ti)
    A = U * U + V * V
    return M * A * A


def batch_values(coeffs: np.ndarray) -> np.ndarray:
    """Determinant values for an (N, 16) coefficient array, exact.

    Uses int64 when the entries are small enough for the product to be
    provably in range and Python integers otherwise.
    """
    coeffs = np.asarray(coeffs)
    bound = int(np.abs(coeffs).max()) if coeffs.size else 0
    if int64_safe(bound):
        return values_from_forms(coeffs.astype(np.int64) @ LINEAR_FORMS.T)
    obj = coeffs.astype(object)
    return values_from_forms(obj.dot(LINEAR_FORMS.T.astype(object)))
