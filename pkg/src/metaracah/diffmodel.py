"""Differential model on Laurent polynomials.

The three generators act on polynomials of degree at most N as
second-order differential operators with polynomial coefficients:

    Z = x(1-x) d/dx + (Nx - alpha)
    V = x(1-x) d^2/dx^2 + (2x(beta+zeta) + N-2alpha-beta-2zeta) d/dx
        - (beta+zeta)(beta+zeta+1)
    X = -x^2(1-x) d^2/dx^2 - x((N+beta-1)x - 2alpha+1) d/dx
        + (N beta x - alpha^2)

The monomials g_n(x) = (-1)^n (-N)_n x^n reproduce the bidiagonal
matrices of the abstract representation, and the dual space is modelled
by g*_n(x) = (-1)^n x^(-n-1)/(-N)_n under the residue pairing

    <f, g> = coefficient of x^(-1) in f*g

(the contour integral around 0 collapses to residue extraction, which
is exact).  The transposed differential operators agree with the
abstract transposes only modulo the ghost elements g*_(-1) ~ x^0 and
g*_(N+1) ~ x^(-N-2); those never contribute to pairings against
polynomials of degree <= N, and the quotient by them is what matches
the abstract matrices.

Everything is exact: no quadrature, no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Params, build_transposes, build_V, build_X, build_Z, require_generic
from .eigenbases import FParams, LABELS, cached_basis
from .errors import PreconditionViolated
from .hyper import multi_pochhammer, pochhammer
from .matrices import RationalMatrix
from .racahpoly import RacahParams, closed_form_S
from .rationalfns import closed_form_U, dual_hahn, dual_hahn_params
from .report import VerificationReport

Q = Fraction


@dataclass(frozen=True)
class LaurentPoly:
    """coeffs[i] is the coefficient of x**(min_exp + i); trimmed on both ends."""

    min_exp: int
    coeffs: tuple

    def __post_init__(self):
        cs = [Q(c) for c in self.coeffs]
        lo = self.min_exp
        while cs and cs[-1] == 0:
            cs.pop()
        while cs and cs[0] == 0:
            cs.pop(0)
            lo += 1
        if not cs:
            lo = 0
        object.__setattr__(self, "min_exp", lo)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(0, ())

    @classmethod
    def monomial(cls, exp: int, coeff=Q(1)) -> "LaurentPoly":
        return cls(exp, (Q(coeff),))

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        if not terms:
            return cls.zero()
        lo = min(terms)
        hi = max(terms)
        return cls(lo, tuple(terms.get(e, Q(0)) for e in range(lo, hi + 1)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                yield self.min_exp + i, c

    def coefficient(self, exp: int) -> Fraction:
        i = exp - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Q(0)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        terms = dict(self.items())
        for e, c in other.items():
            terms[e] = terms.get(e, Q(0)) + c
        return LaurentPoly.from_dict(terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.min_exp, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly(self.min_exp, tuple(Q(other) * c for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return LaurentPoly.zero()
        out = [Q(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LaurentPoly(self.min_exp + other.min_exp, tuple(out))

    def __rmul__(self, other):
        return self.__mul__(other)

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly.from_dict({e - 1: e * c for e, c in self.items() if e != 0})


@dataclass(frozen=True)
class DiffOp:
    """a2 d^2/dx^2 + a1 d/dx + a0, all coefficients Laurent polynomials."""

    a2: LaurentPoly
    a1: LaurentPoly
    a0: LaurentPoly

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        df = f.derivative()
        return self.a2 * df.derivative() + self.a1 * df + self.a0 * f


def apply_diffop(D: DiffOp, f: LaurentPoly) -> LaurentPoly:
    return D.apply(f)


def residue_pair(f: LaurentPoly, g: LaurentPoly) -> Fraction:
    """<f, g>: the coefficient of 1/x in the product."""
    return (f * g).coefficient(-1)


_X = LaurentPoly.monomial(1)
_X2 = LaurentPoly.monomial(2)
_X3 = LaurentPoly.monomial(3)


def _const(c) -> LaurentPoly:
    return LaurentPoly.monomial(0, c)


def diff_Z(p: Params) -> DiffOp:
    return DiffOp(a2=LaurentPoly.zero(), a1=_X - _X2, a0=p.N * _X - _const(p.alpha))


def diff_V(p: Params) -> DiffOp:
    s = p.beta + p.zeta
    return DiffOp(
        a2=_X - _X2,
        a1=2 * s * _X + _const(p.N - 2 * p.alpha - p.beta - 2 * p.zeta),
        a0=_const(-s * (s + 1)),
    )


def diff_X(p: Params) -> DiffOp:
    return DiffOp(
        a2=_X3 - _X2,
        a1=(2 * p.alpha - 1) * _X - (p.N + p.beta - 1) * _X2,
        a0=p.N * p.beta * _X - _const(p.alpha**2),
    )


def diff_Zt(p: Params) -> DiffOp:
    return DiffOp(
        a2=LaurentPoly.zero(),
        a1=_X2 - _X,
        a0=(p.N + 2) * _X - _const(p.alpha + 1),
    )


def diff_Vt(p: Params) -> DiffOp:
    s = p.beta + p.zeta
    return DiffOp(
        a2=_X - _X2,
        a1=-2 * (s + 2) * _X - _const(p.N - 2 * p.alpha - p.beta - 2 * p.zeta - 2),
        a0=_const(-(s + 1) * (s + 2)),
    )


def diff_Xt(p: Params) -> DiffOp:
    return DiffOp(
        a2=_X3 - _X2,
        a1=(p.N + p.beta + 5) * _X2 - (2 * p.alpha + 3) * _X,
        a0=(p.beta + 2) * (p.N + 2) * _X - _const((p.alpha + 1) ** 2),
    )


def g_poly(p: Params, n: int) -> LaurentPoly:
    """g_n(x) = (-1)^n (-N)_n x^n, the model of |n>."""
    return LaurentPoly.monomial(n, Q(-1) ** n * pochhammer(Q(-p.N), n))


def g_dual_poly(p: Params, n: int) -> LaurentPoly:
    """g*_n(x) = (-1)^n x^(-n-1) / (-N)_n, the model of <n|."""
    return LaurentPoly.monomial(-n - 1, Q(-1) ** n / pochhammer(Q(-p.N), n))


def matrix_in_monomial_basis(op: DiffOp, p: Params) -> RationalMatrix:
    """Matrix of op on g_0..g_N; raises if the image leaves the span."""
    N = p.N
    cols = []
    for n in range(N + 1):
        h = op.apply(g_poly(p, n))
        col = []
        for k in range(N + 1):
            gk = Q(-1) ** k * pochhammer(Q(-N), k)
            col.append(h.coefficient(k) / gk)
        leftover = h - LaurentPoly.from_dict(
            {k: col[k] * (Q(-1) ** k * pochhammer(Q(-N), k)) for k in range(N + 1)}
        )
        if not leftover.is_zero:
            raise PreconditionViolated(
                f"image of g_{n} leaves span(g_0..g_N): exponents "
                f"{[e for e, _ in leftover.items()]}"
            )
        cols.append(col)
    return RationalMatrix.from_columns(cols)


def dual_matrix_in_monomial_basis(op_t: DiffOp, p: Params):
    """Matrix of op_t on g*_0..g*_N in the quotient by the ghosts.

    Returns (matrix, ghosts) where ghosts maps n to the leftover Laurent
    polynomial supported outside span(g*_0..g*_N).  The quotient
    convention g*_(-1) = g*_(N+1) = 0 means the leftovers may only live
    at exponents 0 and -N-2.
    """
    N = p.N
    cols = []
    ghosts = {}
    for n in range(N + 1):
        h = op_t.apply(g_dual_poly(p, n))
        col = []
        recon = {}
        for k in range(N + 1):
            gk = Q(-1) ** k / pochhammer(Q(-N), k)
            c = h.coefficient(-k - 1) / gk
            col.append(c)
            recon[-k - 1] = c * gk
        leftover = h - LaurentPoly.from_dict(recon)
        if not leftover.is_zero:
            bad = [e for e, _ in leftover.items() if e not in (0, -N - 2)]
            if bad:
                raise PreconditionViolated(
                    f"dual image of g*_{n} has non-ghost leftover exponents {bad}"
                )
            ghosts[n] = leftover
        cols.append(col)
    return RationalMatrix.from_columns(cols), ghosts


# -- model bases ---------------------------------------------------------------


def _hyp2f1_window(A, B, C, window: int) -> LaurentPoly:
    # 2F1(A, B; C; x) truncated after x^window; enough whenever the
    # integrand pairs against monomials of exponent >= -window-1.
    terms = {}
    term = Q(1)
    for k in range(window + 1):
        terms[k] = term
        term = term * (A + k) * (B + k) / ((C + k) * (k + 1))
    return LaurentPoly.from_dict(terms)


def jacobi_poly(n: int, a, b) -> LaurentPoly:
    """J_n^(a,b)(x) = (a+1)_n/n! 2F1(-n, n+a+b+1; a+1; x) on (0, 1)."""
    a, b = Q(a), Q(b)
    pre = pochhammer(a + 1, n) / pochhammer(Q(1), n)
    terms = {}
    term = pre
    for k in range(n + 1):
        terms[k] = term
        term = term * (-n + k) * (n + a + b + 1 + k) / ((a + 1 + k) * (k + 1))
    return LaurentPoly.from_dict(terms)


def model_basis(label: str, p: Params, fp: FParams | None = None) -> list:
    """The printed Laurent-polynomial model of one eigenbasis family."""
    require_generic(p, fp.rho if fp is not None else None)
    if label in ("f", "fStar") and fp is None:
        raise PreconditionViolated(f"label {label!r} needs FParams")
    a, b, z, N = p.alpha, p.beta, p.zeta, p.N
    out = []
    for n in range(N + 1):
        if label == "e":
            pre = multi_pochhammer((Q(-N), N - 2 * a - b - 2 * z), n) / pochhammer(
                n - 2 * b - 2 * z - 1, n
            )
            terms = {}
            term = pre
            for k in range(n + 1):
                terms[k] = term
                term = (
                    term
                    * (-n + k)
                    * (n - 2 * b - 2 * z - 1 + k)
                    / ((N - 2 * a - b - 2 * z + k) * (k + 1))
                )
            out.append(LaurentPoly.from_dict(terms))
        elif label == "d":
            head = Q(-1) ** n * pochhammer(Q(-N), n)
            f21 = _hyp2f1_window(Q(n - N), a - b, -a + n + 1, N - n)
            out.append(LaurentPoly.monomial(n, head) * f21)
        elif label == "f":
            head = Q(-1) ** n * pochhammer(Q(-N), n)
            f21 = _hyp2f1_window(Q(n - N), n - b - fp.rho, 2 * n - 2 * a - fp.rho + 1, N - n)
            out.append(LaurentPoly.monomial(n, head) * f21)
        elif label == "z":
            head = Q(-1) ** n * pochhammer(Q(-N), n)
            onemx = LaurentPoly.from_dict({0: Q(1), 1: Q(-1)})
            acc = LaurentPoly.monomial(n, head)
            for _ in range(N - n):
                acc = acc * onemx
            out.append(acc)
        elif label == "dStar":
            pre = Q(-1) ** (n + 1) / pochhammer(Q(-N), n)
            terms = {}
            for l in range(n + 1):
                terms[l - n - 1] = (
                    pre
                    * multi_pochhammer((b - a + 1, 1 + N - n), l)
                    / (pochhammer(Q(1), l) * pochhammer(a - n, l + 1))
                )
            out.append(LaurentPoly.from_dict(terms))
        elif label == "eStar":
            pre = Q(-1) ** n / pochhammer(Q(-N), n)
            terms = {}
            for l in range(N - n + 1):
                terms[-n - 1 - l] = (
                    pre
                    * multi_pochhammer((Q(n + 1), N + n - 2 * a - b - 2 * z), l)
                    / (pochhammer(Q(1), l) * pochhammer(2 * n - 2 * b - 2 * z, l))
                )
            out.append(LaurentPoly.from_dict(terms))
        elif label == "fStar":
            pre = Q(-1) ** n / pochhammer(Q(-N), n)
            terms = {}
            for l in range(n + 1):
                terms[l - n - 1] = (
                    pre
                    * multi_pochhammer((b + fp.rho + 1 - n, 1 + N - n), l)
                    / (pochhammer(Q(1), l) * pochhammer(1 + 2 * a + fp.rho - 2 * n, l))
                )
            out.append(LaurentPoly.from_dict(terms))
        elif label == "zStar":
            # expansion of x^(-n-1)(1-x)^(n-1-N) cut at the dual-range edge
            pre = Q(-1) ** n / pochhammer(Q(-N), n)
            terms = {}
            for l in range(n + 1):
                terms[l - n - 1] = pre * pochhammer(Q(1 + N - n), l) / pochhammer(Q(1), l)
            out.append(LaurentPoly.from_dict(terms))
        else:
            raise PreconditionViolated(f"unknown basis label {label!r}")
    return out


def _in_g_basis(f: LaurentPoly, p: Params) -> list:
    return [
        f.coefficient(k) / (Q(-1) ** k * pochhammer(Q(-p.N), k)) for k in range(p.N + 1)
    ]


def _in_gstar_basis(f: LaurentPoly, p: Params) -> list:
    return [
        f.coefficient(-k - 1) / (Q(-1) ** k / pochhammer(Q(-p.N), k))
        for k in range(p.N + 1)
    ]


def verify_model_bases(p: Params, fp: FParams) -> VerificationReport:
    """Model families expand to exactly the abstract closed-form columns."""
    rep = VerificationReport(suite="model-bases", params={**p.as_dict(), "rho": str(fp.rho)})
    for label in LABELS:
        fam = model_basis(label, p, fp)
        abstract = cached_basis(p, fp, label)
        expand = _in_gstar_basis if label.endswith("Star") else _in_g_basis
        bad = [
            n
            for n in range(p.N + 1)
            if expand(fam[n], p) != list(abstract.column(n))
        ]
        rep.add(
            f"model-{label}",
            f"model family {label} matches the abstract expansion columnwise",
            not bad,
            detail="" if not bad else f"failing n: {bad}",
        )

    a_jac = p.N - 2 * p.alpha - p.beta - 2 * p.zeta - 1
    b_jac = 2 * p.alpha - p.beta - p.N - 1
    e_fam = model_basis("e", p, fp)
    bad = [
        n
        for n in range(p.N + 1)
        if e_fam[n]
        != (
            pochhammer(Q(1), n)
            * pochhammer(Q(-p.N), n)
            / pochhammer(n - 2 * p.beta - 2 * p.zeta - 1, n)
        )
        * jacobi_poly(n, a_jac, b_jac)
    ]
    rep.add(
        "model-e-jacobi",
        "e_n(x) is a Jacobi polynomial up to the stated prefactor",
        not bad,
        detail="" if not bad else f"failing n: {bad}",
    )
    return rep


def model_orthogonality(p: Params, fp: FParams) -> VerificationReport:
    """The four residue-pairing Grams are exactly the identity."""
    rep = VerificationReport(suite="model-orthogonality",
                             params={**p.as_dict(), "rho": str(fp.rho)})
    N = p.N
    pairs = [
        ("f", "fStar"),
        ("e", "eStar"),
        ("z", "zStar"),
    ]
    for label, dual in pairs:
        fam = model_basis(label, p, fp)
        dual_fam = model_basis(dual, p, fp)
        bad = [
            (m, n)
            for m in range(N + 1)
            for n in range(N + 1)
            if residue_pair(dual_fam[m], fam[n]) != (1 if m == n else 0)
        ]
        rep.add(
            f"gram-{label}",
            f"<{dual}_m, {label}_n> = delta_mn under the residue pairing",
            not bad,
            detail="" if not bad else f"failing (m, n): {bad[:4]}",
        )

    d_fam = model_basis("d", p, fp)
    dstar_fam = model_basis("dStar", p, fp)
    Zop = diff_Z(p)
    bad = [
        (m, n)
        for m in range(N + 1)
        for n in range(N + 1)
        if residue_pair(dstar_fam[m], Zop.apply(d_fam[n])) != (1 if m == n else 0)
    ]
    rep.add(
        "gram-d",
        "<d*_m, Z d_n> = delta_mn under the residue pairing",
        not bad,
        detail="" if not bad else f"failing (m, n): {bad[:4]}",
    )

    plain = RationalMatrix.from_columns(
        [[residue_pair(dstar_fam[m], d_fam[n]) for m in range(N + 1)] for n in range(N + 1)]
    )
    rep.add_info(
        "gram-d-no-Z",
        "<d*_m, d_n> without the Z insertion is not the identity",
        detail=(
            "identity" if plain == RationalMatrix.identity(N + 1)
            else f"differs from identity, e.g. entry (0, 0) = {plain[0, 0]}"
        ),
    )
    return rep


def integral_representations(p: Params, fp: FParams) -> VerificationReport:
    """Residue formulas for S, U and the dual Hahn values, full grid."""
    rep = VerificationReport(suite="model-integrals",
                             params={**p.as_dict(), "rho": str(fp.rho)})
    a, b, z, N = p.alpha, p.beta, p.zeta, p.N
    rho = fp.rho
    a_jac = N - 2 * a - b - 2 * z - 1
    b_jac = 2 * a - b - N - 1
    jac = [jacobi_poly(m, a_jac, b_jac) for m in range(N + 1)]
    rp = RacahParams.from_params(p, fp)

    bad = []
    for m in range(N + 1):
        for n in range(N + 1):
            integrand = (
                LaurentPoly.monomial(-n - 1)
                * jac[m]
                * _hyp2f1_window(1 + b + rho - n, Q(1 + N - n), 1 + 2 * a + rho - 2 * n, n)
            )
            val = (
                Q(-1) ** n
                * pochhammer(Q(1), m)
                * pochhammer(Q(-N), m)
                / (
                    pochhammer(Q(-N), n)
                    * pochhammer(m - 2 * b - 2 * z - 1, m)
                )
                * integrand.coefficient(-1)
            )
            if val != closed_form_S(m, n, rp):
                bad.append((m, n))
    rep.add("integral-S", "residue formula reproduces S_m(n) on the full grid",
            not bad, detail="" if not bad else f"failing (m, n): {bad[:4]}")

    bad = []
    for m in range(N + 1):
        for n in range(N + 1):
            integrand = (
                LaurentPoly.monomial(-n - 1)
                * jac[m]
                * _hyp2f1_window(Q(N + 1 - n), b - a + 1, a - n + 1, n)
            )
            val = (
                Q(-1) ** n
                * pochhammer(Q(1), m)
                * pochhammer(Q(-N), m)
                / (
                    pochhammer(Q(-N), n)
                    * (n - a)
                    * pochhammer(m - 2 * b - 2 * z - 1, m)
                )
                * integrand.coefficient(-1)
            )
            if val != closed_form_U(m, n, p):
                bad.append((m, n))
    rep.add("integral-U", "residue formula reproduces U_m(n) on the full grid",
            not bad, detail="" if not bad else f"failing (m, n): {bad[:4]}")

    rho_dh = dual_hahn_params(p)
    bad = []
    for m in range(N + 1):
        for k in range(N + 1):
            # (1-x)^(k-1-N) expanded to the window that can reach x^(-1)
            onemx = LaurentPoly.from_dict(
                {l: pochhammer(Q(N + 1 - k), l) / pochhammer(Q(1), l) for l in range(k + 1)}
            )
            integrand = LaurentPoly.monomial(-k - 1) * onemx * jac[m]
            val = (
                Q(-1) ** k
                * pochhammer(Q(1), m)
                * pochhammer(Q(1), k)
                / (
                    pochhammer(N - 2 * a - b - 2 * z, m)
                    * pochhammer(Q(-N), k)
                )
                * integrand.coefficient(-1)
            )
            if val != dual_hahn(k, m, rho_dh):
                bad.append((m, k))
    rep.add("integral-dual-hahn",
            "residue formula reproduces R^(dH)_k(m) on the full grid",
            not bad, detail="" if not bad else f"failing (m, k): {bad[:4]}")
    return rep


def model_transposes(p: Params) -> VerificationReport:
    """Adjoint property of the transposed differential operators."""
    rep = VerificationReport(suite="model-transposes", params=p.as_dict())
    N = p.N
    Zt_m, Vt_m, Xt_m = build_transposes(p)
    table = [
        ("Z", diff_Z(p), diff_Zt(p), Zt_m),
        ("V", diff_V(p), diff_Vt(p), Vt_m),
        ("X", diff_X(p), diff_Xt(p), Xt_m),
    ]
    for name, op, op_t, abstract_t in table:
        bad = [
            (m, n)
            for m in range(N + 1)
            for n in range(N + 1)
            if residue_pair(op_t.apply(g_dual_poly(p, m)), g_poly(p, n))
            != residue_pair(g_dual_poly(p, m), op.apply(g_poly(p, n)))
        ]
        rep.add(
            f"adjoint-{name}",
            f"<{name}t g*_m, g_n> = <g*_m, {name} g_n> for all m, n",
            not bad,
            detail="" if not bad else f"failing (m, n): {bad[:4]}",
        )

        quotient, ghosts = dual_matrix_in_monomial_basis(op_t, p)
        rep.add(
            f"quotient-{name}",
            f"matrix of {name}t on g*_n modulo ghosts equals the abstract transpose",
            quotient == abstract_t,
            detail="" if quotient == abstract_t else "matrix mismatch",
        )
        ghost_exps = sorted({e for g in ghosts.values() for e, _ in g.items()})
        rep.add(
            f"ghosts-{name}",
            f"boundary leftovers of {name}t lie on the ghost exponents only",
            all(e in (0, -N - 2) for e in ghost_exps),
            detail=f"ghost exponents: {ghost_exps}" if ghost_exps else "no ghosts",
        )
    return rep


def verify_model(p: Params, fp: FParams) -> VerificationReport:
    """Aggregate suite for the differential model."""
    rep = VerificationReport(suite="model", params={**p.as_dict(), "rho": str(fp.rho)})
    for name, builder in (("Z", build_Z), ("V", build_V), ("X", build_X)):
        op = {"Z": diff_Z, "V": diff_V, "X": diff_X}[name](p)
        got = matrix_in_monomial_basis(op, p)
        want = builder(p)
        rep.add(
            f"g-basis-{name}",
            f"differential {name} on g_n equals the abstract matrix",
            got == want,
            detail="" if got == want else "matrix mismatch",
        )
    for sub in (
        verify_model_bases(p, fp),
        model_orthogonality(p, fp),
        integral_representations(p, fp),
        model_transposes(p),
    ):
        rep.checks.extend(sub.checks)
    return rep
