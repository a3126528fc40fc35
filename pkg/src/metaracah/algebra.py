"""The three-generator algebra in its bidiagonal standard-basis realization.

Generators X, V, Z act on basis vectors |0>, ..., |N> by

    Z|n> = (n - alpha)|n> + |n+1>
    V|n> = (n - beta - zeta - 1)(beta + zeta - n)|n>
           + n(N + 1 - n)(n - 1 - 2 alpha - beta - 2 zeta + N)|n-1>
    X|n> = -(n - alpha)^2 |n> - (n - beta)|n+1>

with |N+1> and |-1> understood as zero.  The defining relations are

    [Z, X] = Z^2 + X
    [X, V] = {V, Z} + 2 zeta X + 2 zeta^2 Z + xi I
    [V, Z] = V + 2 X + 2 zeta Z + eta I

where the two central parameters attached to this realization are

    xi  = (beta + 1)(beta + 2 zeta - N)(N - 2 alpha) + 2 alpha zeta (alpha + 1)
    eta = (N - zeta)(N - 2 alpha - beta - zeta)
          + (beta + zeta)(beta + 1) + 2 alpha^2.

(xi is the unique scalar closing the [X, V] relation for this action; it can
be cross-derived from the zeta-free presentation, where the shifted
generators have xi_b = (beta_b + 1)(beta_b - N)(N - 2 alpha_b) and
xi = xi_b + eta zeta with alpha_b = alpha + zeta/2, beta_b = beta + zeta.)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateParameters
from .hyper import pochhammer
from .matrices import RationalMatrix, anticommutator, commutator
from .report import VerificationReport, describe_matrix_mismatch

Q = Fraction


@dataclass(frozen=True)
class Params:
    """Representation parameters: truncation order N plus alpha, beta, zeta."""

    N: int
    alpha: Fraction
    beta: Fraction
    zeta: Fraction

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise ValueError(f"N must be an integer >= 1, got {self.N!r}")
        object.__setattr__(self, "alpha", Q(self.alpha))
        object.__setattr__(self, "beta", Q(self.beta))
        object.__setattr__(self, "zeta", Q(self.zeta))

    def as_dict(self):
        out = {"N": str(self.N), "alpha": str(self.alpha), "beta": str(self.beta),
               "zeta": str(self.zeta)}
        return out


@dataclass(frozen=True)
class CentralParams:
    xi: Fraction
    eta: Fraction


def central_params(p: Params) -> CentralParams:
    """The xi and eta attached to the bidiagonal realization."""
    a, b, z, N = p.alpha, p.beta, p.zeta, p.N
    xi = (b + 1) * (b + 2 * z - N) * (N - 2 * a) + 2 * a * z * (a + 1)
    eta = (N - z) * (N - 2 * a - b - z) + (b + z) * (b + 1) + 2 * a * a
    return CentralParams(xi=xi, eta=eta)


def genericity_registry(p: Params, rho=None):
    """Denominator expressions that must stay nonzero, as (label, value) pairs.

    The list is the union, over basis indices 0 <= n <= N, of every
    denominator appearing in the closed-form bases, tridiagonal
    coefficients, overlap prefactors, weights and norms used downstream.
    Expressions involving rho are included only when rho is given.
    """
    N, a, b, z = p.N, p.alpha, p.beta, p.zeta
    items = []
    for n in range(N + 1):
        items.append((f"(-alpha)_({n}+1)", pochhammer(-a, n + 1)))
        items.append((f"(alpha-beta-{n})_{n}", pochhammer(a - b - n, n)))
        items.append(
            (f"({n}-N-alpha+beta+1)_(N-{n})", pochhammer(n - N - a + b + 1, N - n))
        )
        for k in range(-3, 4):
            items.append((f"(2*{n}-2beta-2zeta-({k}))", 2 * n - 2 * b - 2 * z - k))
        items.append((f"({n}-alpha)", n - a))
        items.append((f"({n}-alpha+beta)", n - a + b))
        items.append((f"({n}-2beta-2zeta-1)_{n}", pochhammer(n - 2 * b - 2 * z - 1, n)))
        items.append(
            (f"(2beta+2zeta-N-{n}+1)_(N-{n})", pochhammer(2 * b + 2 * z - N - n + 1, N - n))
        )
        items.append(
            (
                f"(2alpha+beta+2zeta-2N+1)_(N-{n})",
                pochhammer(2 * a + b + 2 * z - 2 * N + 1, N - n),
            )
        )
        items.append((f"({n}-1-2beta-2zeta)_(N+1)", pochhammer(n - 1 - 2 * b - 2 * z, N + 1)))
        if rho is not None:
            r = Q(rho)
            for k in range(-1, 3):
                items.append((f"(2*{n}-2alpha-rho+({k}))", 2 * n - 2 * a - r + k))
            items.append((f"({n}-2alpha-rho)_{n}", pochhammer(n - 2 * a - r, n)))
            items.append((f"(-beta-rho)_{n}", pochhammer(-b - r, n)))
            items.append((f"(beta+rho-N+1)_(N-{n})", pochhammer(b + r - N + 1, N - n)))
    return items


def validate_params(p: Params, rho=None) -> list[str]:
    """Empty list when the parameters are generic, else the vanishing labels."""
    return [label for label, value in genericity_registry(p, rho) if value == 0]


def require_generic(p: Params, rho=None) -> None:
    offenders = validate_params(p, rho)
    if offenders:
        raise DegenerateParameters(offenders)


# -- generator matrices -------------------------------------------------------


def build_Z(p: Params) -> RationalMatrix:
    require_generic(p)
    N, a = p.N, p.alpha
    m = [[Q(0)] * (N + 1) for _ in range(N + 1)]
    for n in range(N + 1):
        m[n][n] = n - a
        if n < N:
            m[n + 1][n] = Q(1)
    return RationalMatrix(m)


def build_V(p: Params) -> RationalMatrix:
    require_generic(p)
    N, a, b, z = p.N, p.alpha, p.beta, p.zeta
    m = [[Q(0)] * (N + 1) for _ in range(N + 1)]
    for n in range(N + 1):
        m[n][n] = (n - b - z - 1) * (b + z - n)
        if n >= 1:
            m[n - 1][n] = n * (N + 1 - n) * (n - 1 - 2 * a - b - 2 * z + N)
    return RationalMatrix(m)


def build_X(p: Params) -> RationalMatrix:
    require_generic(p)
    N, a, b = p.N, p.alpha, p.beta
    m = [[Q(0)] * (N + 1) for _ in range(N + 1)]
    for n in range(N + 1):
        m[n][n] = -((n - a) ** 2)
        if n < N:
            m[n + 1][n] = -(n - b)
    return RationalMatrix(m)


def build_transposes(p: Params):
    """Matrices of the transposed actions, built from their own closed forms:

        Zt|n> = (n - alpha)|n> + |n-1>
        Vt|n> = (n - beta - zeta - 1)(beta + zeta - n)|n>
                + (n + 1)(N - n)(n - 2 alpha - beta - 2 zeta + N)|n+1>
        Xt|n> = -(n - alpha)^2 |n> - (n - 1 - beta)|n-1>

    Each equals the matrix transpose of the corresponding builder output.
    """
    require_generic(p)
    N, a, b, z = p.N, p.alpha, p.beta, p.zeta
    zt = [[Q(0)] * (N + 1) for _ in range(N + 1)]
    vt = [[Q(0)] * (N + 1) for _ in range(N + 1)]
    xt = [[Q(0)] * (N + 1) for _ in range(N + 1)]
    for n in range(N + 1):
        zt[n][n] = n - a
        vt[n][n] = (n - b - z - 1) * (b + z - n)
        xt[n][n] = -((n - a) ** 2)
        if n >= 1:
            zt[n - 1][n] = Q(1)
            xt[n - 1][n] = -(n - 1 - b)
        if n < N:
            vt[n + 1][n] = (n + 1) * (N - n) * (n - 2 * a - b - 2 * z + N)
    return RationalMatrix(zt), RationalMatrix(vt), RationalMatrix(xt)


def casimir(p: Params) -> RationalMatrix:
    """The central element 2ZVZ + {X,V} + 2 zeta {X,Z} + 2X^2 + 2 zeta^2 Z^2
    + 2 eta X + V + 2 xi Z as a matrix."""
    Z, V, X = build_Z(p), build_V(p), build_X(p)
    z = p.zeta
    cp = central_params(p)
    return (
        2 * (Z * V * Z)
        + anticommutator(X, V)
        + 2 * z * anticommutator(X, Z)
        + 2 * (X * X)
        + 2 * z * z * (Z * Z)
        + 2 * cp.eta * X
        + V
        + 2 * cp.xi * Z
    )


# -- relation checks ----------------------------------------------------------


def check_defining_relations(p: Params, Z=None, V=None, X=None) -> VerificationReport:
    """Verify the three defining relations on the generator matrices.

    Matrices may be overridden (fault injection in tests and the CLI).
    """
    Z = build_Z(p) if Z is None else Z
    V = build_V(p) if V is None else V
    X = build_X(p) if X is None else X
    cp = central_params(p)
    z = p.zeta
    ident = RationalMatrix.identity(p.N + 1)
    rep = VerificationReport(suite="algebra:relations", params=p.as_dict())
    rep.add_matrix_zero(
        "relation-ZX", "[Z,X] - (Z^2 + X) = 0", commutator(Z, X) - (Z * Z + X)
    )
    rep.add_matrix_zero(
        "relation-XV",
        "[X,V] - ({V,Z} + 2 zeta X + 2 zeta^2 Z + xi I) = 0",
        commutator(X, V)
        - (anticommutator(V, Z) + 2 * z * X + 2 * z * z * Z + cp.xi * ident),
    )
    rep.add_matrix_zero(
        "relation-VZ",
        "[V,Z] - (V + 2 X + 2 zeta Z + eta I) = 0",
        commutator(V, Z) - (V + 2 * X + 2 * z * Z + cp.eta * ident),
    )
    return rep


def check_casimir_central(p: Params) -> VerificationReport:
    """Verify that the Casimir matrix commutes with all three generators."""
    Z, V, X = build_Z(p), build_V(p), build_X(p)
    C = casimir(p)
    rep = VerificationReport(suite="algebra:casimir", params=p.as_dict())
    for name, g in (("Z", Z), ("V", V), ("X", X)):
        rep.add_matrix_zero(f"casimir-{name}", f"[C,{name}] = 0", commutator(C, g))
    return rep


def check_subalgebras(p: Params, rho) -> VerificationReport:
    """Verify the derived presentations living inside the algebra.

    (a) the shifted generators Zb = Z - zeta/2, Xb = X + zeta Z - zeta^2/4,
        Vb = V satisfy the zeta-free relations with
        xib = xi - eta zeta and etab = eta + zeta^2/2;
    (b) the Hahn-type pair (Zb, Vb):
            [[Vb,Zb],Vb] = 2{Vb,Zb} + 2 xib I
            [Zb,[Vb,Zb]] = 2 Zb^2 - Vb - etab I;
    (c) the Racah-type pair (W, V) with W = X + rho Z:
            [V,[W,V]] = 2{W,V} + 2V^2 + 2(eta + zeta(zeta - rho))V
                        + 2(rho xi + zeta(zeta eta - xi - eta rho))I
            [[W,V],W] = 2{W,V} + 2W^2 + 2(eta + zeta(zeta - rho))W
                        + (1 - rho^2)V - C + rho(xi - rho eta)I;
    (d) the solvable pair E = X + Z^2, H = Z with [H,E] = E.
    """
    rho = Q(rho)
    Z, V, X = build_Z(p), build_V(p), build_X(p)
    cp = central_params(p)
    z = p.zeta
    ident = RationalMatrix.identity(p.N + 1)
    rep = VerificationReport(suite="algebra:subalgebras", params={**p.as_dict(), "rho": str(rho)})

    Zb = Z - (z / 2) * ident
    Xb = X + z * Z - (z * z / 4) * ident
    Vb = V
    xib = cp.xi - cp.eta * z
    etab = cp.eta + z * z / 2
    rep.add_matrix_zero(
        "shifted-ZX", "[Zb,Xb] = Zb^2 + Xb", commutator(Zb, Xb) - (Zb * Zb + Xb)
    )
    rep.add_matrix_zero(
        "shifted-XV",
        "[Xb,Vb] = {Vb,Zb} + xib I",
        commutator(Xb, Vb) - (anticommutator(Vb, Zb) + xib * ident),
    )
    rep.add_matrix_zero(
        "shifted-VZ",
        "[Vb,Zb] = Vb + 2 Xb + etab I",
        commutator(Vb, Zb) - (Vb + 2 * Xb + etab * ident),
    )

    K = commutator(Vb, Zb)
    rep.add_matrix_zero(
        "hahn-1",
        "[[Vb,Zb],Vb] = 2{Vb,Zb} + 2 xib I",
        commutator(K, Vb) - (2 * anticommutator(Vb, Zb) + 2 * xib * ident),
    )
    rep.add_matrix_zero(
        "hahn-2",
        "[Zb,[Vb,Zb]] = 2 Zb^2 - Vb - etab I",
        commutator(Zb, K) - (2 * (Zb * Zb) - Vb - etab * ident),
    )

    W = X + rho * Z
    C = casimir(p)
    e1 = cp.eta + z * (z - rho)
    rep.add_matrix_zero(
        "racah-1",
        "[V,[W,V]] = 2{W,V} + 2V^2 + 2(eta+zeta(zeta-rho))V + 2(rho xi + zeta(zeta eta - xi - eta rho))I",
        commutator(V, commutator(W, V))
        - (
            2 * anticommutator(W, V)
            + 2 * (V * V)
            + 2 * e1 * V
            + 2 * (rho * cp.xi + z * (z * cp.eta - cp.xi - cp.eta * rho)) * ident
        ),
    )
    rep.add_matrix_zero(
        "racah-2",
        "[[W,V],W] = 2{W,V} + 2W^2 + 2(eta+zeta(zeta-rho))W + (1-rho^2)V - C + rho(xi - rho eta)I",
        commutator(commutator(W, V), W)
        - (
            2 * anticommutator(W, V)
            + 2 * (W * W)
            + 2 * e1 * W
            + (1 - rho * rho) * V
            - C
            + rho * (cp.xi - rho * cp.eta) * ident
        ),
    )

    E = X + Z * Z
    rep.add_matrix_zero("borel", "[Z, X + Z^2] = X + Z^2", commutator(Z, E) - E)
    return rep


# -- operators with bidiagonal action -----------------------------------------


def algebraic_heun(p: Params, h0, h1, h2, h3, h4) -> RationalMatrix:
    """The combination h0 I + h1 Z + h2 V + h3 ZV + h4 VZ."""
    Z, V = build_Z(p), build_V(p)
    ident = RationalMatrix.identity(p.N + 1)
    return h0 * ident + h1 * Z + h2 * V + h3 * (Z * V) + h4 * (V * Z)

def heun_bidiagonal(p: Params, h0, h1, h4):
    """The lower-bidiagonal member h0 I + h1 Z - h4 V + h4 [V, Z].

    Expanding the commutator, this is the h2 = h3 = -h4 slice of the generic
    five-parameter combination; that slice is exactly the one whose V and ZV
    contributions cancel the super-diagonal fill.  Returns the matrix and
    whether its nonzero pattern is confined to the diagonal and first
    subdiagonal.
    """
    h0, h1, h4 = Q(h0), Q(h1), Q(h4)
    m = algebraic_heun(p, h0, h1, -h4, -h4, h4)
    return m, m.is_lower_bidiagonal()
