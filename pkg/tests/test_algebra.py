from fractions import Fraction as Q

import pytest

from metaracah.algebra import (
    Params,
    algebraic_heun,
    build_V,
    build_X,
    build_Z,
    casimir,
    central_params,
    check_casimir_central,
    check_defining_relations,
    check_subalgebras,
    heun_bidiagonal,
    validate_params,
)
from metaracah.matrices import RationalMatrix, commutator, determinant

P2 = Params(N=2, alpha=Q(1, 3), beta=Q(1, 5), zeta=Q(1, 7))

# frozen from an independent symbolic solve of the two inhomogeneous
# relations for (xi, eta) at the P2 parameters
XI_P2 = Q(-3616, 1575)
ETA_P2 = Q(27266, 11025)
CASIMIR_SCALAR_P2 = Q(-21842, 99225)


def test_central_params_frozen_values():
    cp = central_params(P2)
    assert cp.xi == XI_P2
    assert cp.eta == ETA_P2


def test_relations_hold_on_defaults(p5):
    rep = check_defining_relations(p5)
    assert rep.passed
    assert sorted(c.id for c in rep.checks) == [
        "relation-VZ", "relation-XV", "relation-ZX",
    ]


def test_relations_hold_on_negative_parameters(p_other):
    assert check_defining_relations(p_other).passed


def test_relations_fail_under_matrix_override(p3):
    Z = build_Z(p3)
    bumped = RationalMatrix(
        [[Z[i, j] + (1 if (i, j) == (1, 1) else 0) for j in range(p3.N + 1)]
         for i in range(p3.N + 1)]
    )
    rep = check_defining_relations(p3, Z=bumped)
    assert not rep.passed
    # the detail carries the location of the first bad entry
    assert any("(" in c.detail for c in rep.failures)


def test_casimir_is_scalar_at_p2():
    C = casimir(P2)
    assert C == CASIMIR_SCALAR_P2 * RationalMatrix.identity(3)


def test_casimir_commutes(p5):
    rep = check_casimir_central(p5)
    assert rep.passed
    C = casimir(p5)
    assert commutator(C, build_V(p5)).is_zero()


def test_subalgebra_report(p5, fp):
    rep = check_subalgebras(p5, fp.rho)
    assert rep.passed
    ids = {c.id for c in rep.checks}
    assert {"shifted-ZX", "hahn-1", "racah-1", "borel"} <= ids


def test_racah_member_spectrum_via_determinant(fp):
    # X + rho Z has eigenvalues (n - alpha - rho)(alpha - n); checked
    # through the characteristic determinant, not through any basis code
    W = build_X(P2) + fp.rho * build_Z(P2)
    ident = RationalMatrix.identity(3)
    expected = [(n - P2.alpha - fp.rho) * (P2.alpha - n) for n in range(3)]
    assert sorted(expected) == sorted([Q(-310, 117), Q(-46, 117), Q(-16, 117)])
    for nu in expected:
        assert determinant(W - nu * ident) == 0
    # a value off the spectrum must not annihilate the determinant
    assert determinant(W - Q(1, 2) * ident) != 0


def test_heun_bidiagonal_slice(p5):
    for h0, h1, h4 in [(1, 2, 3), (0, 1, 1), (Q(1, 2), Q(-2, 3), Q(5, 7))]:
        m, ok = heun_bidiagonal(p5, h0, h1, h4)
        assert ok
        assert m.is_lower_bidiagonal()


def test_heun_generic_combination_is_not_bidiagonal(p5):
    # leaving the h2 = h3 = -h4 slice reintroduces the upper fill
    m = algebraic_heun(p5, 1, 1, 1, 0, 1)
    assert not m.is_lower_bidiagonal()


def test_validate_params_flags_integer_alpha():
    p = Params(N=3, alpha=Q(1), beta=Q(1, 5), zeta=Q(1, 7))
    offenders = validate_params(p)
    assert offenders
    assert any("alpha" in o or "(-" in o or ")" in o for o in offenders)


def test_params_reject_bad_N():
    with pytest.raises(ValueError):
        Params(N=0, alpha=Q(1, 3), beta=Q(1, 5), zeta=Q(1, 7))
