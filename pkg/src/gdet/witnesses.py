"""Explicit elements of Z[SmallGroup(16,13)] realising every achievable determinant.

Each family is a fixed base element plus integer multiples of

    W  = W1 = (z + 1)(z^2 + 1)(1 + x)(1 + y)
    W2      = (z + 1)(z^2 + 1)(1 + x)(1 - y)

and every recipe is checked against the closed-form determinant before
it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classification import AchievabilityResult, factor_pair_search, is_achievable
from .errors import InvariantViolation
from .frobenius import CoefficientTuple, factored_determinant


class NotAchievable(ValueError):
    """Raised by ``witness_for`` when no element has the requested determinant."""

    def __init__(self, n: int, result: AchievabilityResult):
        super().__init__(f"{n} is not an integer group determinant ({result.reason})")
        self.n = n
        self.result = result


def _pmul(*polys):
    out = [1]
    for p in polys:
        prod = [0] * (len(out) + len(p) - 1)
        for i, u in enumerate(out):
            for j, v in enumerate(p):
                prod[i + j] += u * v
        out = prod
    while len(out) > 4 and out[-1] == 0:
        out.pop()
    if len(out) > 4:
        raise ValueError("cubic expected")
    return tuple(out + [0] * (4 - len(out)))


def _element(f, g, h, t) -> CoefficientTuple:
    """f(Z) + g(Z)X + h(Z)Y + t(Z)XY from coefficient lists in z."""
    return CoefficientTuple(_pmul(f), _pmul(g), _pmul(h), _pmul(t))


_CUBE = _pmul([1, 1], [1, 0, 1])  # (z + 1)(z^2 + 1)
_NEG_CUBE = tuple(-v for v in _CUBE)


def base_polynomials() -> tuple[CoefficientTuple, CoefficientTuple, CoefficientTuple]:
    """(W, W1, W2) as coefficient tuples."""
    W = CoefficientTuple(_CUBE, _CUBE, _CUBE, _CUBE)
    W2 = CoefficientTuple(_CUBE, _CUBE, _NEG_CUBE, _NEG_CUBE)
    return W, W, W2


# base element, sign of the m W term, whether a k W2 term is present, target(m, k)
_FAMILIES = {
    "even_2_18": (
        _element([1, 1, 1], [1, 0, -1, -1], [0, 0, 0, -1], [0, -1, -1, 1]),
        -1, False, lambda m, k: 2 ** 18 * m,
    ),
    "even_2_17": (
        _element(_CUBE, [1, 0, 1, -1], [1, 1], [1]),
        1, False, lambda m, k: 2 ** 17 * (1 + 2 * m),
    ),
    "even_2_16_plus": (
        _element(_CUBE, _pmul([1, 1], [1, 0, -1]), [1, 0, 0, -1], _pmul([1, -1], [1, 0, -1])),
        1, False, lambda m, k: 2 ** 16 * (1 + 4 * m),
    ),
    "even_2_16_minus": (
        _element([1, 1, 1], [1, 0, 0, -1], [1, 0, 0, -1], [1, 0, -1, 1]),
        -1, False, lambda m, k: 2 ** 16 * (-1 + 4 * m),
    ),
    "odd_1mod16": (
        CoefficientTuple.identity(),
        1, False, lambda m, k: 1 + 16 * m,
    ),
    "odd_5family": (
        _element([1, 1, 1], [1, 1], [0, 1, 0, -1], [1, 0, -1]),
        1, True, lambda m, k: (5 + 16 * k) * (5 + 16 * m),
    ),
    "odd_3family": (
        _element([1, 1], [1, 1, 0, -1], [1, 0, -1], [-c for c in _pmul([1, -1], [1, 0, -1])]),
        1, True, lambda m, k: (3 + 16 * k) * (3 + 16 * m),
    ),
}

FAMILIES = tuple(_FAMILIES)


@dataclass(frozen=True)
class WitnessRecipe:
    family: str
    params: dict = field(hash=False)
    target: int
    tuple: CoefficientTuple

    def to_record(self) -> dict:
        return {
            "family": self.family,
            "params": dict(self.params),
            "target": self.target,
            "tuple": list(self.tuple.flat),
        }


def witness(family: str, m: int, k: int | None = None) -> WitnessRecipe:
    """The verified witness of ``family`` with parameters m (and k for the 9 mod 16 families)."""
    try:
        base, m_sign, uses_k, target_of = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}") from None
    if uses_k and k is None:
        raise ValueError(f"{family} needs k")
    if not uses_k and k is not None:
        raise ValueError(f"{family} takes no k")
    W, W1, W2 = base_polynomials()
    tup = base + (m_sign * m) * W1
    params = {"m": m}
    if uses_k:
        tup = tup + k * W2
        params["k"] = k
    target = target_of(m, k)
    value = factored_determinant(tup).value
    if value != target:
        raise InvariantViolation(f"{family}{params}: determinant {value} != target {target}")
    return WitnessRecipe(family, params, target, tup)


def witness_for(n: int) -> WitnessRecipe:
    """A verified witness for n, or NotAchievable carrying the failed condition.

    >>> witness_for(25).family, witness_for(25).params
    ('odd_5family', {'m': 0, 'k': 0})
    """
    n = int(n)
    verdict = is_achievable(n)
    if not verdict.achievable:
        raise NotAchievable(n, verdict)
    if n % 2 == 0:
        t = n >> 16
        r = t % 4
        if r == 0:
            return witness("even_2_18", t // 4)
        if r == 2:
            return witness("even_2_17", (t // 2 - 1) // 2)
        if r == 1:
            return witness("even_2_16_plus", (t - 1) // 4)
        return witness("even_2_16_minus", (t + 1) // 4)
    if n % 16 == 1:
        return witness("odd_1mod16", (n - 1) // 16)
    pair = factor_pair_search(n)
    if pair is None:
        raise InvariantViolation(f"{n} has a flex prime but no factor pair")
    d, e = pair
    r = d % 16
    family = "odd_3family" if r == 3 else "odd_5family"
    return witness(family, m=(e - r) // 16, k=(d - r) // 16)
