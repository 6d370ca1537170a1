"""Exact identities and congruences behind the 2-adic and mod 16 exclusion arguments.

With z = +-1 the cubics collapse to f(z) = alpha1 + z alpha2 (and likewise
g, h, t with beta, gamma, delta), so every sign-point value is a linear form
in the eight sums of ``GreekVector``. The checks below are the
unconditional forms of the relations between those sums, the pair sums
l_i = F(1,.,.)^2 + F(-1,.,.)^2, the pair products m_i = F(1,.,.) F(-1,.,.),
and the integers U, V of the degree-two factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frobenius import CoefficientTuple, compute_UV, sign_point_values

IDENTITY_NAMES = (
    "ell_forms",
    "ell_pair_sums",
    "ell_total_is_8_U2",
    "ell_difference_is_16_V1",
    "m_difference_of_squares",
    "U_congruent_U1_mod_4",
    "V_even_and_half_V_congruent_V1_mod_2",
    "m_sum_mod_16",
    "M_is_product_of_m",
)


@dataclass(frozen=True)
class GreekVector:
    alpha1: int
    alpha2: int
    beta1: int
    beta2: int
    gamma1: int
    gamma2: int
    delta1: int
    delta2: int

    def astuple(self) -> tuple[int, ...]:
        return (self.alpha1, self.alpha2, self.beta1, self.beta2,
                self.gamma1, self.gamma2, self.delta1, self.delta2)


@dataclass(frozen=True)
class EllQuadruple:
    l1: int
    l2: int
    l3: int
    l4: int


@dataclass(frozen=True)
class EmQuadruple:
    m1: int
    m2: int
    m3: int
    m4: int


@dataclass(frozen=True)
class AuxSums:
    U1: int
    U2: int
    V1: int


def greek_vector(t: CoefficientTuple) -> GreekVector:
    return GreekVector(*(p[i] + p[i + 2] for p in (t.a, t.b, t.c, t.d) for i in (0, 1)))


def _ell(s) -> EllQuadruple:
    return EllQuadruple(s[0] * s[0] + s[1] * s[1], s[2] * s[2] + s[3] * s[3],
                        s[4] * s[4] + s[5] * s[5], s[6] * s[6] + s[7] * s[7])


def _em(s) -> EmQuadruple:
    return EmQuadruple(s[0] * s[1], s[2] * s[3], s[4] * s[5], s[6] * s[7])


def ell_values(t: CoefficientTuple) -> EllQuadruple:
    return _ell(sign_point_values(t))


def em_values(t: CoefficientTuple) -> EmQuadruple:
    return _em(sign_point_values(t))


def aux_sums(g: GreekVector) -> AuxSums:
    a1, a2, b1, b2, c1, c2, d1, d2 = g.astuple()
    return AuxSums(
        U1=a1 * a1 + a2 * a2 - b1 * b1 - b2 * b2 - c1 * c1 - c2 * c2 + d1 * d1 + d2 * d2,
        U2=a1 * a1 + a2 * a2 + b1 * b1 + b2 * b2 + c1 * c1 + c2 * c2 + d1 * d1 + d2 * d2,
        V1=a1 * c1 + a2 * c2 + b1 * d1 + b2 * d2,
    )


@dataclass
class IdentityReport:
    tuple: CoefficientTuple
    results: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, passed in self.results.items() if not passed]


def m_sum_holds(m_sum: int, g: GreekVector, pq) -> bool:
    """Sum of the m_i against 4(alpha1^2 + alpha2^2 + gamma1^2 + gamma2^2).

    Exactly, the sum is 4(alpha1^2 + alpha2^2 + gamma1^2 + gamma2^2)
    - 4(beta1^2 + beta2^2 + delta1^2 + delta2^2). The mod 16 congruence without
    the beta/delta term needs 4 | Q_i for all four (y, z) pairs and is only
    checked when that holds.
    """
    a1, a2, b1, b2, c1, c2, d1, d2 = g.astuple()
    ag = a1 * a1 + a2 * a2 + c1 * c1 + c2 * c2
    bd = b1 * b1 + b2 * b2 + d1 * d1 + d2 * d2
    if m_sum != 4 * ag - 4 * bd:
        return False
    if all(q % 4 == 0 for _, q in pq):
        return (m_sum - 4 * ag) % 16 == 0
    return True


def check_identities(t: CoefficientTuple) -> IdentityReport:
    """Evaluate the nine identities on one tuple; every integer tuple must pass all of them."""
    g = greek_vector(t)
    a1, a2, b1, b2, c1, c2, d1, d2 = g.astuple()
    s = sign_point_values(t)
    ell = _ell(s)
    em = _em(s)
    aux = aux_sums(g)
    U, V = compute_UV(t)
    M = s[0] * s[1] * s[2] * s[3] * s[4] * s[5] * s[6] * s[7]
    l1, l2, l3, l4 = ell.l1, ell.l2, ell.l3, ell.l4
    m1, m2, m3, m4 = em.m1, em.m2, em.m3, em.m4

    # (P_i, Q_i): F(+-1, y, z) = P_i +- Q_i for the four (y, z)
    pq = (
        (a1 + a2 + c1 + c2, b1 + b2 + d1 + d2),
        (a1 + a2 - c1 - c2, b1 + b2 - d1 - d2),
        (a1 - a2 + c1 - c2, b1 - b2 + d1 - d2),
        (a1 - a2 - c1 + c2, b1 - b2 - d1 + d2),
    )
    results = {
        "ell_forms": all(l == 2 * p * p + 2 * q * q for l, (p, q) in zip((l1, l2, l3, l4), pq)),
        "ell_pair_sums": (
            l1 + l3 == 4 * ((a1 + c1) ** 2 + (a2 + c2) ** 2 + (b1 + d1) ** 2 + (b2 + d2) ** 2)
            and l2 + l4 == 4 * ((a1 - c1) ** 2 + (a2 - c2) ** 2 + (b1 - d1) ** 2 + (b2 - d2) ** 2)
        ),
        "ell_total_is_8_U2": l1 + l2 + l3 + l4 == 8 * aux.U2,
        "ell_difference_is_16_V1": l1 + l3 - l2 - l4 == 16 * aux.V1,
        "m_difference_of_squares": all(m == p * p - q * q for m, (p, q) in zip((m1, m2, m3, m4), pq)),
        "U_congruent_U1_mod_4": (U - aux.U1) % 4 == 0,
        "V_even_and_half_V_congruent_V1_mod_2": V % 2 == 0 and (V // 2 - aux.V1) % 2 == 0,
        "m_sum_mod_16": m_sum_holds(m1 + m2 + m3 + m4, g, pq),
        "M_is_product_of_m": M == m1 * m2 * m3 * m4,
    }
    return IdentityReport(t, results)
