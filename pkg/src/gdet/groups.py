"""Finite groups as Cayley data, group-ring arithmetic and the exact group determinant.

Everything here is the slow, generic ground truth: the group determinant is
the determinant of the matrix (a_{g h^-1}) computed by fraction-free
elimination over Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

GROUP_IDS = ("sg16_13", "z2xd8", "z2cubed")


@dataclass(frozen=True)
class GroupSpec:
    """A finite group given by its multiplication table.

    Construction verifies the group axioms exhaustively, which is cheap for
    the orders handled here (at most 16^3 associativity checks).
    """

    name: str
    labels: tuple[str, ...]
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int

    def __post_init__(self):
        n = len(self.labels)
        if len(self.mul) != n or any(len(row) != n for row in self.mul) or len(self.inv) != n:
            raise ValueError(f"{self.name}: table shapes do not match {n} labels")
        full = set(range(n))
        for g in range(n):
            if set(self.mul[g]) != full or {self.mul[h][g] for h in range(n)} != full:
                raise ValueError(f"{self.name}: multiplication table is not a Latin square")
        e = self.identity
        for g in range(n):
            if self.mul[e][g] != g or self.mul[g][e] != g:
                raise ValueError(f"{self.name}: {self.labels[e]} is not an identity")
            if self.mul[g][self.inv[g]] != e:
                raise ValueError(f"{self.name}: bad inverse for {self.labels[g]}")
        mul = self.mul
        for g in range(n):
            for h in range(n):
                gh = mul[g][h]
                for k in range(n):
                    if mul[gh][k] != mul[g][mul[h][k]]:
                        raise ValueError(f"{self.name}: multiplication is not associative")

    @property
    def order(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def quotient_table(self) -> tuple[tuple[int, ...], ...]:
        """quotient_table[g][h] = g * h^-1, the index pattern of the Cayley matrix."""
        return tuple(tuple(self.mul[g][self.inv[h]] for h in range(self.order)) for g in range(self.order))


def _from_normal_form(name, elements, labeler, product) -> GroupSpec:
    index = {el: i for i, el in enumerate(elements)}
    mul = tuple(tuple(index[product(g, h)] for h in elements) for g in elements)
    identity = index[elements[0]]
    inv = tuple(row.index(identity) for row in mul)
    return GroupSpec(name, tuple(labeler(el) for el in elements), mul, inv, identity)


def _monomial(*parts) -> str:
    out = []
    for sym, exp in parts:
        if exp == 1:
            out.append(sym)
        elif exp:
            out.append(f"{sym}^{exp}")
    return "".join(out) or "e"


def _sg16_13() -> GroupSpec:
    # Z^a Y^b X^c stored as (a, b, c); index = a + 4b + 8c.
    elements = [(a, b, c) for c in range(2) for b in range(2) for a in range(4)]

    def product(g, h):
        a, b, c = g
        a2, b2, c2 = h
        # X Z^a = Z^-a X, Y central
        z = a + (-a2 if c else a2)
        y = b + b2
        if y == 2:
            y, z = 0, z + 2  # Y^2 = Z^2
        return (z % 4, y, (c + c2) % 2)

    return _from_normal_form(
        "sg16_13", elements, lambda el: _monomial(("Z", el[0]), ("Y", el[1]), ("X", el[2])), product
    )


def _z2xd8() -> GroupSpec:
    # (t, r^a s^c) stored as (a, c, t); index = a + 4c + 8t.
    elements = [(a, c, t) for t in range(2) for c in range(2) for a in range(4)]

    def product(g, h):
        a, c, t = g
        a2, c2, t2 = h
        return ((a + (-a2 if c else a2)) % 4, (c + c2) % 2, (t + t2) % 2)

    return _from_normal_form(
        "z2xd8", elements, lambda el: _monomial(("r", el[0]), ("s", el[1]), ("t", el[2])), product
    )


def _z2cubed() -> GroupSpec:
    # x^i y^j z^k stored as (i, j, k); index = i + 2j + 4k.
    elements = [(i, j, k) for k in range(2) for j in range(2) for i in range(2)]

    def product(g, h):
        return tuple((u + v) % 2 for u, v in zip(g, h))

    return _from_normal_form(
        "z2cubed", elements, lambda el: _monomial(("x", el[0]), ("y", el[1]), ("z", el[2])), product
    )


_BUILDERS = {"sg16_13": _sg16_13, "z2xd8": _z2xd8, "z2cubed": _z2cubed}


@lru_cache(maxsize=None)
def build_group(spec_id: str) -> GroupSpec:
    """Build one of the supported groups (``sg16_13``, ``z2xd8``, ``z2cubed``).

    >>> G = build_group("sg16_13")
    >>> G.labels[multiply(G, G.index("Y"), G.index("Y"))]
    'Z^2'
    """
    try:
        builder = _BUILDERS[spec_id]
    except KeyError:
        raise ValueError(f"unknown group {spec_id!r}; expected one of {', '.join(GROUP_IDS)}") from None
    return builder()


def multiply(G: GroupSpec, g: int, h: int) -> int:
    n = G.order
    if not (0 <= g < n and 0 <= h < n):
        raise ValueError(f"element index out of range for group of order {n}: {g}, {h}")
    return G.mul[g][h]


@dataclass(frozen=True)
class GroupRingElement:
    """sum_g coeffs[g] * g in Z[G]."""

    group: GroupSpec = field(repr=False)
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise ValueError(f"expected {self.group.order} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        return convolve(self, other)


def delta(G: GroupSpec, g: int | str) -> GroupRingElement:
    """The group element g viewed in Z[G]."""
    if isinstance(g, str):
        g = G.index(g)
    coeffs = [0] * G.order
    coeffs[g] = 1
    return GroupRingElement(G, tuple(coeffs))


def convolve(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    G = u.group
    if v.group is not G:
        raise ValueError(f"cannot multiply elements of {u.group.name} and {v.group.name}")
    out = [0] * G.order
    for g, ug in enumerate(u.coeffs):
        if ug:
            row = G.mul[g]
            for h, vh in enumerate(v.coeffs):
                if vh:
                    out[row[h]] += ug * vh
    return GroupRingElement(G, tuple(out))


def cayley_matrix(u: GroupRingElement) -> list[list[int]]:
    """Row g, column h holds coeffs[g h^-1]."""
    c = u.coeffs
    return [[c[k] for k in row] for row in u.group.quotient_table]


def determinant_exact(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    Every intermediate entry is a minor of the input, so the divisions are
    exact and no rational arithmetic is needed.

    >>> determinant_exact([[2, 3], [1, 4]])
    5
    """
    a = [list(row) for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot_row = a[k]
        pivot = pivot_row[k]
        for i in range(k + 1, n):
            row = a[i]
            lead = row[k]
            if lead == 0:
                if pivot != prev:
                    for j in range(k + 1, n):
                        row[j] = row[j] * pivot // prev
            else:
                for j in range(k + 1, n):
                    row[j] = (row[j] * pivot - lead * pivot_row[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def group_determinant(u: GroupRingElement) -> int:
    return determinant_exact(cayley_matrix(u))
