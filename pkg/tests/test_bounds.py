from fractions import Fraction
from math import gcd

import pytest

from heckebound.bounds import (
    asymptotic_check,
    asymptotic_exponent,
    bound_constant,
    detect_p_degree,
    final_bound,
    siegel_bound,
    superspecial_mass,
)
from heckebound.groups import dim_bound, irr_count
from heckebound.numberfield import (
    FieldSpec,
    QuaternionData,
    SettingError,
    resolve_ramification,
    validate_setting,
)

Q = FieldSpec.rationals()
R5 = FieldSpec.real_quadratic(5)
R8 = FieldSpec.real_quadratic(8)


def setting(fld, m, level, p, ram=()):
    places = resolve_ramification(fld, list(ram))
    return validate_setting(QuaternionData(fld, places, m), level, p)


def sweep(fld, m, level, pmax, ram=()):
    out = []
    for p in range(2, pmax + 1):
        try:
            out.append(setting(fld, m, level, p, ram))
        except SettingError:
            pass
    return out


def test_bound_constant_values():
    assert bound_constant(setting(Q, 1, 3, 5)) == Fraction(1, 24)
    assert bound_constant(setting(Q, 2, 3, 5)) == Fraction(1, 5760)
    assert bound_constant(setting(R5, 1, 3, 2)) == Fraction(1, 120)


def test_bound_constant_with_away_ramification():
    # away factors (q^i + (-1)^i) for each ramified place
    s = setting(Q, 1, 5, 11, ram=[(2, 1), (3, 1)])
    assert bound_constant(s) == Fraction(1, 24) * (2 - 1) * (3 - 1)


def test_mass_values():
    assert superspecial_mass(setting(Q, 1, 3, 5)) == 8
    assert superspecial_mass(setting(Q, 1, 3, 2)) == 2
    # |GSp_4(Z/3)| * (2-1)(2^2+1) / 5760
    assert superspecial_mass(setting(Q, 2, 3, 2)) == 103680 * 5 // 5760
    assert superspecial_mass(setting(R5, 1, 3, 2)) == 60
    assert superspecial_mass(setting(Q, 1, 5, 7, ram=[(2, 1), (3, 1)])) == 240


def test_mass_m2_pinned_by_enumerated_symplectic_order():
    # |GSp_4(Z/3)| = phi(3) * |Sp_4(F_3)| with the symplectic order taken
    # from the brute-force count, not the closed form
    from heckebound.oracle import count_symplectic_matrices

    gsp4_mod3 = 2 * count_symplectic_matrices(2, 3)
    assert superspecial_mass(setting(Q, 2, 3, 2)) * 5760 == gsp4_mod3 * 5


def test_final_bound_values():
    r = final_bound(setting(Q, 1, 3, 5))
    assert (r.mass, r.irr_count, r.dim_bound, r.final_bound) == (8, 24, 1, 192)
    r = final_bound(setting(Q, 1, 3, 2))
    assert (r.mass, r.irr_count, r.dim_bound, r.final_bound) == (2, 3, 1, 6)
    assert r.asymptotic_exponent == 3


def grid_settings():
    out = []
    ram_choices = {
        1: [[], [(11, 1), (13, 1)]],
        5: [[], [(7, 2), (13, 2)], [(11, 1), (11, 1)]],
        8: [[], [(7, 1), (7, 1)]],
    }
    for fld in (Q, R5, R8):
        for m in (1, 2, 3):
            for level in (3, 4, 5):
                for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
                    for ram in ram_choices[fld.discriminant]:
                        try:
                            out.append(setting(fld, m, level, p, ram))
                        except SettingError:
                            pass
    return out


def test_factorization_identity_on_grid():
    grid = grid_settings()
    assert len(grid) >= 50
    for s in grid:
        r = final_bound(s)
        assert r.final_bound == r.mass * r.irr_count * r.dim_bound
        assert r.mass == superspecial_mass(s)
        assert r.irr_count == irr_count(s)
        assert r.dim_bound == dim_bound(s)


def test_mass_positive_integral_on_grid():
    for s in grid_settings():
        mass = superspecial_mass(s)
        assert mass >= 1
        assert bound_constant(s) > 0


def test_siegel_equality():
    for m in (1, 2, 3):
        for level in (3, 4, 5):
            for p in (2, 3, 5, 7, 11, 13):
                if level % p == 0:
                    continue
                r = final_bound(setting(Q, m, level, p))
                assert siegel_bound(m, level, p) == r.final_bound, (m, level, p)


def test_siegel_validation():
    with pytest.raises(SettingError):
        siegel_bound(1, 2, 5)
    with pytest.raises(SettingError):
        siegel_bound(1, 3, 6)
    with pytest.raises(SettingError):
        siegel_bound(1, 10, 5)


def test_asymptotic_check_true_cases():
    assert asymptotic_check(sweep(Q, 1, 3, 97))
    assert asymptotic_check(sweep(Q, 2, 3, 97))
    assert asymptotic_check(sweep(R5, 1, 3, 97))
    assert asymptotic_exponent(1, 2) == 7


def test_asymptotic_check_requires_sample():
    with pytest.raises(ValueError):
        asymptotic_check(sweep(Q, 1, 3, 5))  # only p = 2, 5
    with pytest.raises(ValueError):
        asymptotic_check([setting(Q, 1, 3, 5), setting(Q, 1, 3, 2), setting(Q, 1, 3, 7)])


def test_asymptotic_check_rejects_mixed_inputs():
    mixed = sweep(Q, 1, 3, 30)[:2] + sweep(Q, 2, 3, 30)[2:4]
    with pytest.raises(ValueError):
        asymptotic_check(mixed)


def test_asymptotic_check_detects_wrong_exponent():
    # feeding m = 2 reports under an m = 1 exponent must fail the slope test
    samples = sweep(Q, 2, 3, 60)
    exp_wrong = asymptotic_exponent(1, 1)
    reports = [final_bound(s) for s in samples]
    violated = any(
        r2.final_bound * r1.setting.p ** (exp_wrong + 1)
        >= r1.final_bound * r2.setting.p ** (exp_wrong + 1)
        for r1, r2 in zip(reports, reports[1:])
    )
    assert violated


def test_detect_p_degree():
    assert detect_p_degree(sweep(Q, 1, 3, 13)) == 3
    assert detect_p_degree(sweep(Q, 2, 3, 29)) == 7
    split_primes = [11, 19, 29, 31, 41, 59, 61]
    split = [setting(R5, 1, 3, p) for p in split_primes]
    assert detect_p_degree(split) == 5


def test_detect_p_degree_interpolation_is_exact():
    # more sample points than the degree needs must not change the answer
    assert detect_p_degree(sweep(Q, 1, 3, 43)) == 3


def test_zeta_values_in_report():
    r = final_bound(setting(Q, 2, 3, 5))
    assert r.zeta_values == (Fraction(-1, 12), Fraction(1, 120))


def test_grid_covers_all_fields_and_ramifications():
    grid = grid_settings()
    discs = {s.field.discriminant for s in grid}
    assert discs == {1, 5, 8}
    assert any(s.delta_prime_away for s in grid)
    assert any(len(s.delta_prime_away) == 2 for s in grid)
    assert any(
        len({v.residue_prime for v in s.delta_prime_away}) == 1
        and len(s.delta_prime_away) == 2
        for s in grid
    )
