"""The eight (generalized) eigenbases of the bidiagonal realization.

Four operators are diagonalized, each together with its transpose:

    family  equation                      eigenvalue at index n
    d, d*   X|d_n> = lambda_n Z|d_n>      lambda_n = alpha - n   (pencil)
    e, e*   V|e_n> = mu_n |e_n>           mu_n = (n-beta-zeta-1)(beta+zeta-n)
    f, f*   (X+rho Z)|f_n> = nu_n |f_n>   nu_n = (n-alpha-rho)(alpha-n)
    z, z*   Z|z_n> = (n-alpha)|z_n>

Every basis vector has an explicit expansion over the standard basis with
Pochhammer-ratio coefficients; build_basis evaluates those closed forms,
while oracle_basis recomputes each vector from scratch as a kernel of the
relevant matrix pencil and only borrows the closed form's normalization.

Pairings are bilinear (no conjugation).  The families pair up as

    <e*_m|e_n> = <f*_m|f_n> = <z*_m|z_n> = delta_mn,   <d*_m|Z|d_n> = delta_mn

with matching resolutions of identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import Params, build_Z, build_V, build_X, build_transposes, require_generic
from .errors import NondegenerateSpectrumViolated, PreconditionViolated
from .hyper import pochhammer
from .matrices import RationalMatrix, nullspace
from .report import VerificationReport

Q = Fraction

LABELS = ("d", "dStar", "e", "eStar", "f", "fStar", "z", "zStar")


@dataclass(frozen=True)
class FParams:
    """The extra parameter rho entering the pencil W = X + rho Z."""

    rho: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho", Q(self.rho))


@dataclass(frozen=True)
class BasisFamily:
    """A full eigenbasis: column n of ``vectors`` is the n-th basis vector."""

    label: str
    vectors: RationalMatrix
    eigenvalues: tuple

    def column(self, n: int):
        return self.vectors.column(n)


def eigenvalue(label: str, p: Params, fp: FParams | None, n: int) -> Fraction:
    a, b, z = p.alpha, p.beta, p.zeta
    if label in ("d", "dStar"):
        return a - n
    if label in ("e", "eStar"):
        return (n - b - z - 1) * (b + z - n)
    if label in ("f", "fStar"):
        return (n - a - fp.rho) * (a - n)
    if label in ("z", "zStar"):
        return n - a
    raise PreconditionViolated(f"unknown basis label {label!r}")


# -- closed-form columns ------------------------------------------------------
# Each function returns the coefficient of |l> in the n-th basis vector.


def _coeff_d(p, n, l):
    N, a, b = p.N, p.alpha, p.beta
    pref = pochhammer(n - N - a + b + 1, N - n) / (
        pochhammer(n - N, N - n) * pochhammer(a - N, N - n)
    )
    return pref * pochhammer(n - N, N - l) * pochhammer(a - N, N - l) / pochhammer(
        n - N - a + b + 1, N - l
    )


def _coeff_dstar(p, n, l):
    a, b = p.alpha, p.beta
    pref = pochhammer(-n + a - b, n) / (pochhammer(1, n) * pochhammer(-a, n + 1))
    return (
        pref
        * (-1) ** l
        * pochhammer(-n, l)
        * pochhammer(-a, l)
        / pochhammer(-n + a - b, l)
    )


def _coeff_e(p, n, l):
    N, a, b, z = p.N, p.alpha, p.beta, p.zeta
    pref = (
        pochhammer(-N, n)
        * pochhammer(N - 2 * a - b - 2 * z, n)
        / pochhammer(n - 2 * b - 2 * z - 1, n)
    )
    return (
        pref
        * (-1) ** l
        * pochhammer(-n, l)
        * pochhammer(n - 2 * b - 2 * z - 1, l)
        / (pochhammer(1, l) * pochhammer(-N, l) * pochhammer(N - 2 * a - b - 2 * z, l))
    )


def _coeff_estar(p, n, l):
    N, a, b, z = p.N, p.alpha, p.beta, p.zeta
    pref = (
        pochhammer(-N, N - n)
        * pochhammer(n + N - 2 * a - b - 2 * z, N - n)
        / pochhammer(2 * b + 2 * z - N - n + 1, N - n)
    )
    return (
        pref
        * pochhammer(n - N, N - l)
        * pochhammer(2 * b + 2 * z - N - n + 1, N - l)
        / (
            pochhammer(1, N - l)
            * pochhammer(-N, N - l)
            * pochhammer(2 * a + b + 2 * z - 2 * N + 1, N - l)
        )
    )


def _coeff_f(p, n, l, rho):
    N, a, b = p.N, p.alpha, p.beta
    pref = pochhammer(b + rho - N + 1, N - n) / (
        pochhammer(n - N, N - n) * pochhammer(2 * a + rho - N - n, N - n)
    )
    return (
        pref
        * pochhammer(n - N, N - l)
        * pochhammer(2 * a + rho - N - n, N - l)
        / pochhammer(b + rho - N + 1, N - l)
    )


def _coeff_fstar(p, n, l, rho):
    a, b = p.alpha, p.beta
    pref = pochhammer(-b - rho, n) / (pochhammer(1, n) * pochhammer(n - 2 * a - rho, n))
    return (
        pref
        * (-1) ** l
        * pochhammer(-n, l)
        * pochhammer(n - 2 * a - rho, l)
        / pochhammer(-b - rho, l)
    )


def _coeff_z(p, n, l):
    N = p.N
    return pochhammer(n - N, N - l) / pochhammer(n - N, N - n)


def _coeff_zstar(p, n, l):
    return (-1) ** (l + n) * pochhammer(-n, l) / pochhammer(-n, n)


def closed_form_coefficient(label: str, p: Params, fp: FParams | None, n: int, l: int) -> Fraction:
    if label == "d":
        return _coeff_d(p, n, l)
    if label == "dStar":
        return _coeff_dstar(p, n, l)
    if label == "e":
        return _coeff_e(p, n, l)
    if label == "eStar":
        return _coeff_estar(p, n, l)
    if label == "f":
        return _coeff_f(p, n, l, fp.rho)
    if label == "fStar":
        return _coeff_fstar(p, n, l, fp.rho)
    if label == "z":
        return _coeff_z(p, n, l)
    if label == "zStar":
        return _coeff_zstar(p, n, l)
    raise PreconditionViolated(f"unknown basis label {label!r}")


def build_basis(p: Params, fp: FParams | None, label: str) -> BasisFamily:
    """Evaluate the closed-form expansion of every vector in the family."""
    rho = fp.rho if fp is not None else None
    if label in ("f", "fStar") and fp is None:
        raise PreconditionViolated(f"label {label!r} needs FParams")
    require_generic(p, rho)
    N = p.N
    cols = [
        [closed_form_coefficient(label, p, fp, n, l) for l in range(N + 1)]
        for n in range(N + 1)
    ]
    eigs = tuple(eigenvalue(label, p, fp, n) for n in range(N + 1))
    return BasisFamily(label=label, vectors=RationalMatrix.from_columns(cols), eigenvalues=eigs)


# Overlap grids rebuild the same four families for every (m, n) pair.
cached_basis = lru_cache(maxsize=256)(build_basis)


def _pencil(label: str, p: Params, fp: FParams | None):
    """(A, B) such that the family solves A v = eigenvalue * B v."""
    Z, V, X = build_Z(p), build_V(p), build_X(p)
    Zt, Vt, Xt = build_transposes(p)
    ident = RationalMatrix.identity(p.N + 1)
    if label == "d":
        return X, Z
    if label == "dStar":
        return Xt, Zt
    if label == "e":
        return V, ident
    if label == "eStar":
        return Vt, ident
    if label == "f":
        return X + fp.rho * Z, ident
    if label == "fStar":
        return Xt + fp.rho * Zt, ident
    if label == "z":
        return Z, ident
    if label == "zStar":
        return Zt, ident
    raise PreconditionViolated(f"unknown basis label {label!r}")


def oracle_basis(p: Params, fp: FParams | None, label: str) -> BasisFamily:
    """Recompute each basis vector as a kernel of (A - eigenvalue B).

    Fraction-free elimination must return a one-dimensional kernel for every
    index (NondegenerateSpectrumViolated otherwise); the solution is scaled
    so its component on |n> matches the closed form's, which is the only use
    made of the closed-form data.
    """
    rho = fp.rho if fp is not None else None
    require_generic(p, rho)
    A, B = _pencil(label, p, fp)
    N = p.N
    cols = []
    for n in range(N + 1):
        lam = eigenvalue(label, p, fp, n)
        kernel = nullspace(A - lam * B)
        if len(kernel) != 1:
            raise NondegenerateSpectrumViolated(
                f"family {label}, index {n}: kernel dimension {len(kernel)}, expected 1"
            )
        v = list(kernel[0])
        anchor = closed_form_coefficient(label, p, fp, n, n)
        if v[n] == 0 or anchor == 0:
            raise NondegenerateSpectrumViolated(
                f"family {label}, index {n}: vanishing component on |{n}>"
            )
        scale = anchor / v[n]
        cols.append([scale * x for x in v])
    eigs = tuple(eigenvalue(label, p, fp, n) for n in range(N + 1))
    return BasisFamily(label=label, vectors=RationalMatrix.from_columns(cols), eigenvalues=eigs)


def z_action_on_d(p: Params, n: int):
    """Closed-form expansion of Z applied to the n-th pencil vector:

    Z d_n = (alpha - beta - 1) * pref(n)
            * sum_l (n-N)_(N-l) (alpha-N)_(N-l+1) / (n-N-alpha+beta+1)_(N-l+1) |l>

    with pref(n) the same prefactor as in the d-family closed form.
    """
    require_generic(p)
    N, a, b = p.N, p.alpha, p.beta
    pref = (
        (a - b - 1)
        * pochhammer(n - N - a + b + 1, N - n)
        / (pochhammer(n - N, N - n) * pochhammer(a - N, N - n))
    )
    return tuple(
        pref
        * pochhammer(n - N, N - l)
        * pochhammer(a - N, N - l + 1)
        / pochhammer(n - N - a + b + 1, N - l + 1)
        for l in range(N + 1)
    )


def check_orthogonality(p: Params, fp: FParams) -> VerificationReport:
    """Gram and completeness relations for all four basis pairs.

    Self-dual pairs use the plain bilinear Gram; the pencil pair is paired
    through Z.  Completeness bundles the three plain resolutions of identity
    and the Z-weighted one for the pencil family.
    """
    require_generic(p, fp.rho)
    ident = RationalMatrix.identity(p.N + 1)
    Z = build_Z(p)
    rep = VerificationReport(
        suite="eigenbases:orthogonality", params={**p.as_dict(), "rho": str(fp.rho)}
    )
    fams = {label: build_basis(p, fp, label).vectors for label in LABELS}
    for label in ("e", "f", "z"):
        dual = fams[label + "Star"]
        rep.add_matrix_zero(
            f"gram-{label}",
            f"<{label}*_m|{label}_n> = delta_mn",
            dual.transpose() * fams[label] - ident,
        )
        rep.add_matrix_zero(
            f"completeness-{label}",
            f"sum_n |{label}_n><{label}*_n| = I",
            fams[label] * dual.transpose() - ident,
        )
    rep.add_matrix_zero(
        "gram-d", "<d*_m|Z|d_n> = delta_mn", fams["dStar"].transpose() * Z * fams["d"] - ident
    )
    rep.add_matrix_zero(
        "completeness-d", "sum_n Z|d_n><d*_n| = I", Z * fams["d"] * fams["dStar"].transpose() - ident
    )
    for label in ("d", "e", "f", "z"):
        eigs = [eigenvalue(label, p, fp, n) for n in range(p.N + 1)]
        distinct = len(set(eigs)) == p.N + 1
        rep.add(
            f"distinct-eigenvalues-{label}",
            f"family {label}: eigenvalues pairwise distinct",
            distinct,
            "" if distinct else "repeated eigenvalue",
        )
    return rep
