"""Assembly of the superspecial mass, the p-independent constant, and
the final upper bound on the number of prime-to-p Hecke eigensystems,
plus the Siegel-case specialization and growth-in-p diagnostics.

All assembly is exact; integrality of the mass and the factorization
identity final = mass * irr * dim are asserted, and a violation is an
implementation fault, never an input error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import bernoulli, euler_phi, factorize, is_prime, zeta_special_value
from .groups import dim_bound, irr_count, level_group_order, sp_order
from .numberfield import SettingError, ShimuraSetting

__all__ = [
    "InternalCheckError",
    "BoundReport",
    "bound_constant",
    "superspecial_mass",
    "final_bound",
    "siegel_bound",
    "asymptotic_exponent",
    "asymptotic_check",
    "detect_p_degree",
]


class InternalCheckError(RuntimeError):
    """An exact identity the formulas guarantee failed to hold: the
    implementation (not the input) is at fault."""


@dataclass(frozen=True)
class BoundReport:
    """Every quantity computed on the way to the final bound."""

    setting: ShimuraSetting
    zeta_values: tuple[Fraction, ...]
    constant: Fraction
    level_group_order: int
    mass: int
    irr_count: int
    dim_bound: int
    final_bound: int
    asymptotic_exponent: int


def asymptotic_exponent(degree: int, m: int) -> int:
    """Growth exponent of the bound in p: d*m^2 + d*m + 1."""
    return degree * m * m + degree * m + 1


def _sign_factor(setting: ShimuraSetting) -> Fraction:
    d, m = setting.degree, setting.m
    sign = -1 if (d * m * (m + 1) // 2) % 2 else 1
    return Fraction(sign, 2 ** (m * d))


def bound_constant(setting: ShimuraSetting) -> Fraction:
    """The p-independent rational constant of the final bound:

        (-1)^(dm(m+1)/2) / 2^(md)
            * prod_{i=1}^{m} zeta_F(1-2i) * prod_{v ramified, v away from p} (q_v^i + (-1)^i).

    Positive for every valid setting (the zeta signs cancel the leading
    sign), which is asserted.
    """
    value = _sign_factor(setting)
    for i in range(1, setting.m + 1):
        term = zeta_special_value(setting.field, i)
        for v in setting.delta_prime_away:
            term *= v.residue_cardinality**i + (-1) ** i
        value *= term
    if value <= 0:
        raise InternalCheckError(f"bound constant {value} is not positive")
    return value


def _mass_rational(setting: ShimuraSetting) -> Fraction:
    inside, outside = setting.split_places_over_p()
    value = Fraction(level_group_order(setting)) * _sign_factor(setting)
    for j in range(1, setting.m + 1):
        term = zeta_special_value(setting.field, j)
        # the divisor part runs over the whole derived discriminant,
        # both over p and away from p
        for v in list(inside) + list(setting.delta_prime_away):
            term *= v.residue_cardinality**j + (-1) ** j
        for v in outside:
            term *= v.residue_cardinality**j + 1
        value *= term
    return value


def superspecial_mass(setting: ShimuraSetting) -> int:
    """Cardinality of the superspecial locus at the given level.

    The closed form is a signed product of zeta values and local
    factors; being a cardinality it must come out a positive integer,
    and anything else raises InternalCheckError.
    """
    value = _mass_rational(setting)
    if value.denominator != 1 or value <= 0:
        raise InternalCheckError(
            f"superspecial mass came out {value}, not a positive integer"
        )
    return int(value)


def final_bound(setting: ShimuraSetting) -> BoundReport:
    """Evaluate the full bound and every intermediate quantity.

    The bound is assembled from the closed form
        C * |G(Z/NZ)| * p^(d(m+2)(m-1)/2) * (p-1)
          * prod (q_v -+ 1) * prod_j prod_v (q_v^j +- 1)
    and must agree exactly with mass * irr_count * dim_bound; the two
    routes are computed independently and compared.
    """
    d, m, p = setting.degree, setting.m, setting.p
    inside, outside = setting.split_places_over_p()

    constant = bound_constant(setting)
    group_order = level_group_order(setting)

    value = constant * group_order
    value *= Fraction(p) ** (d * (m + 2) * (m - 1) // 2)
    value *= p - 1
    for v in outside:
        value *= v.residue_cardinality - 1
    for v in inside:
        value *= v.residue_cardinality + 1
    for j in range(1, m + 1):
        for v in outside:
            value *= v.residue_cardinality**j + 1
        for v in inside:
            value *= v.residue_cardinality**j + (-1) ** j
    if value.denominator != 1 or value <= 0:
        raise InternalCheckError(
            f"final bound came out {value}, not a positive integer"
        )
    bound = int(value)

    mass = superspecial_mass(setting)
    irr = irr_count(setting)
    dim = dim_bound(setting)
    if bound != mass * irr * dim:
        raise InternalCheckError(
            f"factorization identity violated: bound {bound} != "
            f"mass {mass} * irr {irr} * dim {dim}"
        )
    return BoundReport(
        setting=setting,
        zeta_values=tuple(
            zeta_special_value(setting.field, j) for j in range(1, m + 1)
        ),
        constant=constant,
        level_group_order=group_order,
        mass=mass,
        irr_count=irr,
        dim_bound=dim,
        final_bound=bound,
        asymptotic_exponent=asymptotic_exponent(d, m),
    )


def siegel_bound(m: int, level: int, p: int) -> int:
    """The bound in the principally polarized (Siegel) case, written out
    on its own rather than delegating to final_bound, so that agreement
    between the two over the rationals is a genuine cross-check:

        C * |GSp_2m(Z/NZ)| * p^((m+2)(m-1)/2) * (p-1)(p+1)
          * prod_{j=1}^{m} (p^j + (-1)^j),
        C = (-1)^(m(m+1)/2) / 2^m * prod_{i=1}^{m} zeta(1-2i).
    """
    if m < 1:
        raise SettingError("m_not_positive", f"genus m must be >= 1, got {m}")
    if level < 3:
        raise SettingError("level_too_small", f"level must be >= 3, got {level}")
    if not is_prime(p):
        raise SettingError("p_not_prime", f"p must be prime, got {p}")
    if level % p == 0:
        raise SettingError("p_divides_level", f"p = {p} divides the level {level}")

    constant = Fraction((-1) ** (m * (m + 1) // 2), 2**m)
    for i in range(1, m + 1):
        constant *= -bernoulli(2 * i) / (2 * i)

    gsp = 1
    for ell, a in factorize(level):
        gsp *= (
            euler_phi(ell**a)
            * sp_order(m, ell)
            * ell ** ((a - 1) * (2 * m * m + m))
        )

    value = constant * gsp
    value *= Fraction(p) ** ((m + 2) * (m - 1) // 2)
    value *= (p - 1) * (p + 1)
    for j in range(1, m + 1):
        value *= p**j + (-1) ** j
    if value.denominator != 1 or value <= 0:
        raise InternalCheckError(
            f"Siegel bound came out {value}, not a positive integer"
        )
    return int(value)


def _check_shared_inputs(settings: list[ShimuraSetting]) -> None:
    first = settings[0]
    for s in settings[1:]:
        if (
            s.field != first.field
            or s.quaternion != first.quaternion
            or s.level != first.level
        ):
            raise ValueError("settings must share field, ramification, m and level")
    ps = [s.p for s in settings]
    if any(b <= a for a, b in zip(ps, ps[1:])):
        raise ValueError("settings must have strictly increasing p")


def asymptotic_check(settings: list[ShimuraSetting]) -> bool:
    """Exact finite-sample test that the bound grows like O(p^E) with
    E = d*m^2 + d*m + 1, over settings sharing everything but p.

    Two conditions, both exact rational comparisons:
      * every sampled bound is below an explicit constant times p^E
        (each local factor q^j + 1 is at most twice its leading term,
        giving the cap constant * 2^(d(m+1)) valid for all p); and
      * the empirical log-slope between consecutive primes stays below
        the next integer exponent E + 1, so the detected growth degree
        never reaches E + 1.

    The slope is compared via bound2 * p1^(E+1) < bound1 * p2^(E+1),
    one integer comparison per consecutive pair.
    """
    if len(settings) < 3:
        raise ValueError("need at least 3 sample primes")
    _check_shared_inputs(settings)
    reports = [final_bound(s) for s in settings]
    d, m = settings[0].degree, settings[0].m
    exp = asymptotic_exponent(d, m)
    cap = (
        reports[0].constant
        * reports[0].level_group_order
        * 2 ** (d * (m + 1))
    )
    for r in reports:
        if r.final_bound > cap * Fraction(r.setting.p) ** exp:
            return False
    for r1, r2 in zip(reports, reports[1:]):
        p1, p2 = r1.setting.p, r2.setting.p
        if r2.final_bound * p1 ** (exp + 1) >= r1.final_bound * p2 ** (exp + 1):
            return False
    return True


def detect_p_degree(settings: list[ShimuraSetting]) -> int:
    """Degree of the exact interpolating polynomial through the points
    (p, final_bound(p)).

    On samples where every place over p has residue degree 1 the bound
    is a single polynomial in p, so feeding E + 2 primes certifies that
    its degree is exactly E.  Newton divided differences over Fraction.
    """
    if len(settings) < 2:
        raise ValueError("need at least 2 sample primes")
    _check_shared_inputs(settings)
    xs = [Fraction(s.p) for s in settings]
    ys = [Fraction(final_bound(s).final_bound) for s in settings]

    # divided-difference coefficients of the Newton form
    coeffs = list(ys)
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])

    # expand to monomial coefficients: prod (x - x_k) accumulated exactly
    poly = [Fraction(0)] * n
    basis = [Fraction(1)]
    for k in range(n):
        for idx, c in enumerate(basis):
            poly[idx] += coeffs[k] * c
        new_basis = [Fraction(0)] * (len(basis) + 1)
        for idx, c in enumerate(basis):
            new_basis[idx] -= xs[k] * c
            new_basis[idx + 1] += c
        basis = new_basis
    degree = 0
    for idx, c in enumerate(poly):
        if c != 0:
            degree = idx
    return degree
