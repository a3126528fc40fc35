"""Racah polynomials as overlaps between the V eigenbases and the
(X + rho Z) eigenbases.

The transition coefficients

    S_m(n) = <f*_n|e_m>        Stilde_m(n) = <f_n|e*_m>

factor as an explicit Pochhammer prefactor times a terminating 4F3,
i.e. a Racah polynomial R_m(n) evaluated on the integer grid.  The
hatted parameters feeding the 4F3 are

    alpha_hat = -beta - rho - 1
    beta_hat  = -beta + rho - 2 zeta - 1
    gamma_hat = N - 2 alpha - rho

Every function below works over Fraction and every identity is an exact
equality: the dot-product and closed-form routes for S and Stilde are
compared entry by entry, the weights/norms reproduce the Gram relation,
and the three-term recurrence and difference equations have residual
exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Params
from .eigenbases import FParams, cached_basis, eigenvalue
from .errors import PreconditionViolated
from .hyper import multi_pochhammer, pochhammer, terminating_hyp
from .matrices import dot
from .matrixreps import TridiagonalCoeffs, coeffs_V_on_f, coeffs_X_on_e, coeffs_Z_on_e
from .report import VerificationReport

Q = Fraction


@dataclass(frozen=True)
class RacahParams:
    """The four parameters of the Racah polynomial family."""

    alpha_hat: Fraction
    beta_hat: Fraction
    gamma_hat: Fraction
    N: int

    def __post_init__(self):
        object.__setattr__(self, "alpha_hat", Q(self.alpha_hat))
        object.__setattr__(self, "beta_hat", Q(self.beta_hat))
        object.__setattr__(self, "gamma_hat", Q(self.gamma_hat))
        if not (isinstance(self.N, int) and self.N >= 1):
            raise PreconditionViolated("N must be a positive integer")

    @classmethod
    def from_params(cls, p: Params, fp: FParams) -> "RacahParams":
        rho = fp.rho
        return cls(
            alpha_hat=-p.beta - rho - 1,
            beta_hat=-p.beta + rho - 2 * p.zeta - 1,
            gamma_hat=p.N - 2 * p.alpha - rho,
            N=p.N,
        )


def racah(i: int, x: int, rp: RacahParams) -> Fraction:
    """R_i(x) = 4F3(-i, i+a+b+1, -x, x+g-N; a+1, b+g+1, -N; 1)."""
    if not (0 <= i <= rp.N and 0 <= x <= rp.N):
        raise PreconditionViolated("racah indices must lie in 0..N")
    a, b, g = rp.alpha_hat, rp.beta_hat, rp.gamma_hat
    return terminating_hyp(
        upper=(Q(-i), i + a + b + 1, Q(-x), x + g - rp.N),
        lower=(a + 1, b + g + 1, Q(-rp.N)),
    )


def closed_form_S(m: int, n: int, rp: RacahParams) -> Fraction:
    """Prefactor times R_m(n) for S_m(n) = <f*_n|e_m>."""
    a, b, g, N = rp.alpha_hat, rp.beta_hat, rp.gamma_hat, rp.N
    pre = (
        pochhammer(a + 1, n)
        * multi_pochhammer((Q(-N), b + g + 1), m)
        / (
            pochhammer(Q(1), n)
            * pochhammer(n - N + g, n)
            * pochhammer(m + a + b + 1, m)
        )
    )
    return pre * racah(m, n, rp)


def closed_form_Stilde(m: int, n: int, rp: RacahParams) -> Fraction:
    """Prefactor times R_m(n) for Stilde_m(n) = <f_n|e*_m>."""
    a, b, g, N = rp.alpha_hat, rp.beta_hat, rp.gamma_hat, rp.N
    sign = Q(-1) ** N
    num = (
        multi_pochhammer((Q(-N), g - a - N, -b - N), N - m)
        * pochhammer(a + 1, m)
        * pochhammer(-g - b - n, n)
    )
    den = (
        pochhammer(-N - m - a - b - 1, N - m)
        * multi_pochhammer((Q(n - N), -g - n), N - n)
        * multi_pochhammer((g - a - N, -N - b), n)
    )
    return sign * num / den * racah(m, n, rp)


def overlap_S(m: int, n: int, p: Params, fp: FParams) -> Fraction:
    """<f*_n|e_m> as a dot product; asserted equal to the closed form."""
    e = cached_basis(p, fp, "e")
    fstar = cached_basis(p, fp, "fStar")
    value = dot(fstar.column(n), e.column(m))
    closed = closed_form_S(m, n, RacahParams.from_params(p, fp))
    assert value == closed, f"S_{m}({n}): dot product {value} != closed form {closed}"
    return value


def overlap_Stilde(m: int, n: int, p: Params, fp: FParams) -> Fraction:
    """<f_n|e*_m> as a dot product; asserted equal to the closed form."""
    f = cached_basis(p, fp, "f")
    estar = cached_basis(p, fp, "eStar")
    value = dot(f.column(n), estar.column(m))
    closed = closed_form_Stilde(m, n, RacahParams.from_params(p, fp))
    assert value == closed, f"St_{m}({n}): dot product {value} != closed form {closed}"
    return value


def weight(n: int, rp: RacahParams) -> Fraction:
    """Discrete orthogonality weight W_n of the Racah family."""
    a, b, g, N = rp.alpha_hat, rp.beta_hat, rp.gamma_hat, rp.N
    num = multi_pochhammer((-b - g - n, a + 1), n)
    den = (
        pochhammer(Q(1), n)
        * multi_pochhammer((Q(n - N), -g - n), N - n)
        * multi_pochhammer((g - a - N, -N - b, n - N + g), n)
    )
    return num / den


def norm(m: int, rp: RacahParams) -> Fraction:
    """Diagonal Gram value N_m in sum_n W_n R_k(n) R_m(n) = N_m delta_km."""
    a, b, g, N = rp.alpha_hat, rp.beta_hat, rp.gamma_hat, rp.N
    sign = Q(-1) ** N
    num = pochhammer(-N - m - a - b - 1, N - m) * pochhammer(m + a + b + 1, m)
    den = multi_pochhammer((Q(-N), g - a - N, -b - N), N - m) * multi_pochhammer(
        (a + 1, Q(-N), b + g + 1), m
    )
    return sign * num / den


def racah_orthogonality(p: Params, fp: FParams) -> VerificationReport:
    """Orthogonality of the S overlaps and of the bare polynomials.

    Checks, all exact:
      * sum_n Stilde_k(n) S_m(n) = delta_km  (closed forms on both slots);
      * sum_n W_n R_k(n) R_m(n) = N_m delta_km with the explicit weight
        and norm;
      * the weight/norm pair is consistent with the overlap Gram:
        N_m * Stilde_m(n) * S_m(n) = W_n * R_m(n)^2.

    Signs of W_n and N_m are recorded for information only; positivity
    needs parameter restrictions this library does not impose.
    """
    rp = RacahParams.from_params(p, fp)
    N = p.N
    rep = VerificationReport(suite="racah-orthogonality", params={**p.as_dict(), "rho": str(fp.rho)})

    S = [[closed_form_S(m, n, rp) for n in range(N + 1)] for m in range(N + 1)]
    St = [[closed_form_Stilde(m, n, rp) for n in range(N + 1)] for m in range(N + 1)]
    R = [[racah(m, n, rp) for n in range(N + 1)] for m in range(N + 1)]
    W = [weight(n, rp) for n in range(N + 1)]
    Nm = [norm(m, rp) for m in range(N + 1)]

    bad = [
        (k, m)
        for k in range(N + 1)
        for m in range(N + 1)
        if sum(St[k][n] * S[m][n] for n in range(N + 1)) != (1 if k == m else 0)
    ]
    rep.add(
        "gram-S",
        "sum_n Stilde_k(n) S_m(n) = delta_km",
        not bad,
        detail="" if not bad else f"failing (k, m): {bad[:4]}",
    )

    bad = [
        (k, m)
        for k in range(N + 1)
        for m in range(N + 1)
        if sum(W[n] * R[k][n] * R[m][n] for n in range(N + 1))
        != (Nm[m] if k == m else 0)
    ]
    rep.add(
        "weight-orthogonality",
        "sum_n W_n R_k(n) R_m(n) = N_m delta_km",
        not bad,
        detail="" if not bad else f"failing (k, m): {bad[:4]}",
    )

    bad = [
        (m, n)
        for m in range(N + 1)
        for n in range(N + 1)
        if Nm[m] * St[m][n] * S[m][n] != W[n] * R[m][n] ** 2
    ]
    rep.add(
        "weight-norm-consistency",
        "N_m Stilde_m(n) S_m(n) = W_n R_m(n)^2",
        not bad,
        detail="" if not bad else f"failing (m, n): {bad[:4]}",
    )

    signs = "".join("+" if w > 0 else ("-" if w < 0 else "0") for w in W)
    rep.add_info("weight-signs", f"signs of W_0..W_{N}: {signs} (positivity not asserted)")
    signs = "".join("+" if v > 0 else ("-" if v < 0 else "0") for v in Nm)
    rep.add_info("norm-signs", f"signs of N_0..N_{N}: {signs} (positivity not asserted)")
    return rep


def racah_recurrence(m: int, n: int, p: Params, fp: FParams,
                     vf: TridiagonalCoeffs | None = None) -> Fraction:
    """Residual of the three-term recurrence in n.

    mu_m S_m(n) = VF_{n,n-1} S_m(n-1) + VF_{n,n} S_m(n) + VF_{n,n+1} S_m(n+1)

    where VF is the tridiagonal action of V on the f family and
    mu_m the V eigenvalue.  Out-of-range neighbours never contribute:
    VF_{0,-1} and VF_{N,N+1} do not exist because the band vectors
    stop at the edge.  Returns LHS - RHS, exactly zero when the
    identity holds.  ``vf`` overrides the coefficients (fault injection).
    """
    rp = RacahParams.from_params(p, fp)
    if vf is None:
        vf = coeffs_V_on_f(p, fp)
    mu_m = eigenvalue("e", p, fp, m)
    rhs = vf.diag[n] * closed_form_S(m, n, rp)
    if n >= 1:
        rhs += vf.sup[n - 1] * closed_form_S(m, n - 1, rp)
    if n <= p.N - 1:
        rhs += vf.sub[n] * closed_form_S(m, n + 1, rp)
    return mu_m * closed_form_S(m, n, rp) - rhs


def racah_difference(m: int, n: int, p: Params, fp: FParams) -> Fraction:
    """Residual of the difference equation in m.

    <f*_n|(X + rho Z)|e_m> evaluated two ways: through the f* eigenvalue
    nu_n on the left, and through the tridiagonal actions of X and Z on
    the e family on the right.  Returns the difference, exactly zero.
    """
    rp = RacahParams.from_params(p, fp)
    xe = coeffs_X_on_e(p)
    ze = coeffs_Z_on_e(p)
    rho = fp.rho
    nu_n = eigenvalue("f", p, fp, n)
    rhs = (xe.diag[m] + rho * ze.diag[m]) * closed_form_S(m, n, rp)
    if m >= 1:
        # (X + rho Z)^{(e)}_{m-1,m} is the sub coefficient at index m-1.
        rhs += (xe.sub[m - 1] + rho * ze.sub[m - 1]) * closed_form_S(m - 1, n, rp)
    if m <= p.N - 1:
        rhs += (xe.sup[m] + rho * ze.sup[m]) * closed_form_S(m + 1, n, rp)
    return nu_n * closed_form_S(m, n, rp) - rhs


def verify_racah(p: Params, fp: FParams) -> VerificationReport:
    """Full identification + bispectrality suite on the (m, n) grid."""
    rp = RacahParams.from_params(p, fp)
    N = p.N
    rep = VerificationReport(suite="racah", params={**p.as_dict(), "rho": str(fp.rho)})

    bad = [
        (m, n)
        for m in range(N + 1)
        for n in range(N + 1)
        if dot(cached_basis(p, fp, "fStar").column(n), cached_basis(p, fp, "e").column(m))
        != closed_form_S(m, n, rp)
    ]
    rep.add(
        "identify-S",
        "<f*_n|e_m> = prefactor * R_m(n) on the full grid",
        not bad,
        detail="" if not bad else f"failing (m, n): {bad[:4]}",
    )

    bad = [
        (m, n)
        for m in range(N + 1)
        for n in range(N + 1)
        if dot(cached_basis(p, fp, "f").column(n), cached_basis(p, fp, "eStar").column(m))
        != closed_form_Stilde(m, n, rp)
    ]
    rep.add(
        "identify-Stilde",
        "<f_n|e*_m> = prefactor * R_m(n) on the full grid",
        not bad,
        detail="" if not bad else f"failing (m, n): {bad[:4]}",
    )

    for check_id, fn in (("recurrence", racah_recurrence), ("difference", racah_difference)):
        bad = [
            (m, n)
            for m in range(N + 1)
            for n in range(N + 1)
            if fn(m, n, p, fp) != 0
        ]
        rep.add(
            check_id,
            f"{check_id} residual vanishes on the full grid",
            not bad,
            detail="" if not bad else f"failing (m, n): {bad[:4]}",
        )

    for check in racah_orthogonality(p, fp).checks:
        rep.checks.append(check)
    return rep
