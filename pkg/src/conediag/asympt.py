"""Log-space quadratic data at a cone point and the diagonal asymptotic law.

Pipeline: build the quadratic form q of w -> P(Zstar * exp(w)) at the cone
point, check its signature is Lorentzian (one plus, the rest minus), invert
it exactly to get the dual form q*, and assemble the leading asymptotic
term C * prod rho_j^n * n^alpha for the diagonal coefficients of P^(-beta).
All linear algebra on the form matrix is exact rational; floating point
enters only through Gamma, pi, and the final square root, so every sign
decision is exact. A Gamma pole at either argument is a first-class
degenerate outcome, not a crash.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .geometry import ConePoint, MinimalityCertificate
from .polycore import Polynomial, Rat, evaluate, is_exact, partial_derivative, to_rat

Matrix = Tuple[Tuple[Rat, ...], ...]


class GammaPoleError(ArithmeticError):
    """Gamma evaluated at a nonpositive integer."""


class DegenerateGammaError(RuntimeError):
    """A Gamma argument in the asymptotic constant hits a pole.

    The leading term vanishes at this beta and the method is silent about
    the sign; callers map this to an Inconclusive verdict.
    """


class MethodInapplicableError(RuntimeError):
    """A structural hypothesis of the asymptotic method fails."""


# -- Gamma ----------------------------------------------------------------

def gamma_value(x) -> float:
    """Gamma(x) as a double, with exact pole detection for rational x."""
    if is_exact(x):
        xr = to_rat(x)
        if xr <= 0 and xr.denominator == 1:
            raise GammaPoleError(f"Gamma pole at {xr}")
        return math.gamma(float(xr))
    xf = float(x)
    if xf <= 0 and xf == int(xf):
        raise GammaPoleError(f"Gamma pole at {xf}")
    return math.gamma(xf)


# -- exact symmetric-matrix utilities --------------------------------------

def _as_rows(M: Sequence[Sequence]) -> List[List[Rat]]:
    rows = [[to_rat(v) for v in row] for row in M]
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise ValueError("square matrix expected")
    for i in range(d):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ValueError("symmetric matrix expected")
    return rows


def _freeze(rows: Sequence[Sequence[Rat]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def _identity(d: int) -> List[List[Rat]]:
    return [[Rat(1) if i == j else Rat(0) for j in range(d)] for i in range(d)]


def congruence_diagonalize(M: Sequence[Sequence]) -> Tuple[List[Rat], Matrix]:
    """Lagrange diagonalization by symmetric congruence over the rationals.

    Returns (diag, S) with S^T M S equal to diag(diag). Zero pivots are
    repaired by swapping in a later index with nonzero diagonal when one
    exists, and otherwise by adding a row and column with a nonzero
    off-diagonal entry into the pivot position (the resulting pivot is then
    twice that entry, necessarily nonzero).
    """
    A = _as_rows(M)
    d = len(A)
    S = _identity(d)

    def swap(i: int, k: int) -> None:
        for r in range(d):
            A[r][i], A[r][k] = A[r][k], A[r][i]
        A[i], A[k] = A[k], A[i]
        for r in range(d):
            S[r][i], S[r][k] = S[r][k], S[r][i]

    def add_into(i: int, j: int) -> None:
        # column i += column j, then row i += row j
        for r in range(d):
            A[r][i] += A[r][j]
        for c in range(d):
            A[i][c] += A[j][c]
        for r in range(d):
            S[r][i] += S[r][j]

    def eliminate(i: int, k: int, f: Rat) -> None:
        # column k -= f * column i, then row k -= f * row i
        for r in range(d):
            A[r][k] -= f * A[r][i]
        for c in range(d):
            A[k][c] -= f * A[i][c]
        for r in range(d):
            S[r][k] -= f * S[r][i]

    for i in range(d):
        if A[i][i] == 0:
            k = next((k for k in range(i + 1, d) if A[k][k] != 0), None)
            if k is not None:
                swap(i, k)
            else:
                j = next((j for j in range(i + 1, d) if A[i][j] != 0), None)
                if j is not None:
                    add_into(i, j)
        if A[i][i] == 0:
            continue
        for k in range(i + 1, d):
            if A[i][k] != 0:
                eliminate(i, k, A[i][k] / A[i][i])
    return [A[i][i] for i in range(d)], _freeze(S)


def inertia(M: Sequence[Sequence]) -> Tuple[int, int, int]:
    """Signature (n_plus, n_minus, n_zero) of a symmetric rational matrix."""
    diag, _ = congruence_diagonalize(M)
    np_ = sum(1 for v in diag if v > 0)
    nm = sum(1 for v in diag if v < 0)
    return np_, nm, len(diag) - np_ - nm


def _inverse_and_det(M: Sequence[Sequence]) -> Tuple[Optional[Matrix], Rat]:
    """Exact inverse and determinant by Gauss-Jordan elimination."""
    A = [[to_rat(v) for v in row] for row in M]
    d = len(A)
    B = _identity(d)
    det = Rat(1)
    for col in range(d):
        pivot = next((r for r in range(col, d) if A[r][col] != 0), None)
        if pivot is None:
            return None, Rat(0)
        if pivot != col:
            A[col], A[pivot] = A[pivot], A[col]
            B[col], B[pivot] = B[pivot], B[col]
            det = -det
        p = A[col][col]
        det *= p
        inv = 1 / p
        A[col] = [v * inv for v in A[col]]
        B[col] = [v * inv for v in B[col]]
        for r in range(d):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
                B[r] = [a - f * b for a, b in zip(B[r], B[col])]
    return _freeze(B), det


@dataclass(frozen=True)
class QuadraticData:
    """Exact data of the log-space quadratic form and its dual.

    M is the matrix of q, Minv the matrix of the dual form q*, det the
    determinant of M, and qstar_one the dual form at the all-ones vector.
    """

    M: Matrix
    inertia: Tuple[int, int, int]
    det: Rat
    Minv: Matrix
    qstar_one: Rat

    @property
    def dim(self) -> int:
        return len(self.M)

    def q(self, r: Sequence) -> Rat:
        v = [to_rat(x) for x in r]
        return sum(v[i] * self.M[i][j] * v[j] for i in range(self.dim) for j in range(self.dim))

    def qstar(self, r: Sequence) -> Rat:
        v = [to_rat(x) for x in r]
        return sum(
            v[i] * self.Minv[i][j] * v[j] for i in range(self.dim) for j in range(self.dim)
        )


def dual_form(M: Sequence[Sequence]) -> QuadraticData:
    """Invert the form matrix exactly and package signature and dual data.

    A singular matrix means the quadratic is degenerate and the method does
    not apply.
    """
    rows = _as_rows(M)
    Minv, det = _inverse_and_det(rows)
    if Minv is None:
        raise MethodInapplicableError("quadratic form matrix is singular")
    sig = inertia(rows)
    d = len(rows)
    ones = [Rat(1)] * d
    qstar_one = sum(Minv[i][j] for i in range(d) for j in range(d))
    del ones
    return QuadraticData(M=_freeze(rows), inertia=sig, det=det, Minv=Minv, qstar_one=qstar_one)


def diagonal_in_cone(qd: QuadraticData) -> bool:
    """Whether the diagonal direction lies in the positive dual cone.

    Requires Lorentzian signature (1, d-1, 0); then the test is simply
    q*(1, ..., 1) > 0.
    """
    d = qd.dim
    if qd.inertia != (1, d - 1, 0):
        raise MethodInapplicableError(
            f"signature {qd.inertia} is not Lorentzian (1, {d - 1}, 0)"
        )
    return qd.qstar_one > 0


# -- the log-space Hessian --------------------------------------------------

def log_hessian(P: Polynomial, cone: ConePoint) -> Matrix:
    """Matrix of the quadratic part of w -> P(Zstar * exp(w)).

    Entry (j, k) is (1/2) Zstar_j Zstar_k d2P/dZj dZk at Zstar off the
    diagonal; the diagonal gains (1/2) Zstar_j dP/dZj, which vanishes at a
    cone point. Requires a rational cone point and a verified zero gradient.
    """
    if not cone.is_rational:
        raise MethodInapplicableError("exact log-space form needs a rational cone point")
    d = P.dim
    Z = tuple(to_rat(z) for z in cone.Zstar)
    grads = [partial_derivative(P, j) for j in range(1, d + 1)]
    gvals = [evaluate(g, Z) for g in grads]
    if any(v != 0 for v in gvals):
        raise ValueError("gradient does not vanish at the given point")
    half = Rat(1, 2)
    rows = []
    for j in range(d):
        row = []
        for k in range(d):
            second = evaluate(partial_derivative(grads[j], k + 1), Z)
            entry = half * Z[j] * Z[k] * second
            if j == k:
                entry += half * Z[j] * gvals[j]
            row.append(entry)
        rows.append(row)
    if all(v == 0 for row in rows for v in row):
        raise MethodInapplicableError("leading log-space form is not quadratic")
    return _freeze(rows)


# -- the asymptotic estimate -------------------------------------------------

@dataclass(frozen=True)
class AsymptoticEstimate:
    """Leading term C_full * prod rho_j^n * n^alpha of the diagonal.

    C_exact_square is the exact square of the Gamma- and pi-free part of
    C_full, available whenever 2*beta is an integer. gamma_args records the
    two Gamma arguments (beta, beta + 1 - d/2).
    """

    C_full: float
    C_exact_square: Optional[Rat]
    rho: Tuple[Rat, ...]
    alpha: Rat
    qstar_one: Rat
    gamma_args: Tuple[Rat, Rat]

    def predicted(self, n: int) -> float:
        base = self.C_full
        for r in self.rho:
            base *= float(r) ** n
        a = float(self.alpha)
        if n == 0:
            if a > 0:
                return 0.0
            if a == 0:
                return base
            return math.copysign(math.inf, base) if base != 0 else 0.0
        return base * float(n) ** a


def asymptotic_estimate(spec, cone: ConePoint, qd: QuadraticData) -> AsymptoticEstimate:
    """Assemble the leading diagonal asymptotics of P^(-beta).

    Hypotheses checked here: Lorentzian signature with the diagonal in the
    positive dual cone, dimension at least 3, positive radicand
    (-1)^(d-1) det M, and a rational cone point. Gamma poles raise the
    degenerate-case error; other failures raise method-inapplicable.
    """
    d = qd.dim
    beta = spec.beta
    if d < 3:
        raise MethodInapplicableError(f"dimension {d} < 3: quadratic cannot be irreducible")
    if qd.inertia != (1, d - 1, 0):
        raise MethodInapplicableError(
            f"signature {qd.inertia} is not Lorentzian (1, {d - 1}, 0)"
        )
    if not diagonal_in_cone(qd):
        raise MethodInapplicableError(
            f"diagonal direction outside the positive dual cone: q*(1) = {qd.qstar_one}"
        )
    radicand = (Rat(-1) ** (d - 1)) * qd.det
    if radicand <= 0:
        raise MethodInapplicableError(f"(-1)^(d-1) det M = {radicand} is not positive")
    if not cone.is_rational:
        raise MethodInapplicableError("exact exponential bases need a rational cone point")

    exact_beta = spec.has_exact_beta
    if exact_beta:
        b = to_rat(beta)
        g1 = b
        g2 = b + 1 - Rat(d, 2)
        alpha = 2 * b - d
    else:
        g1 = float(beta)
        g2 = float(beta) + 1 - d / 2
        alpha = 2 * float(beta) - d
    try:
        gam1 = gamma_value(g1)
        gam2 = gamma_value(g2)
    except GammaPoleError as exc:
        raise DegenerateGammaError(
            f"DegenerateGamma: {exc}; the leading constant vanishes at beta = {beta}"
        ) from exc

    bf = float(beta)
    c_base = float(radicand) ** -0.5 / (
        2.0 ** (2 * bf - 1) * math.pi ** (d / 2 - 1) * gam1 * gam2
    )
    c_full = c_base * float(qd.qstar_one) ** (bf - d / 2)

    c_exact_sq: Optional[Rat] = None
    if exact_beta:
        b = to_rat(beta)
        two_beta = 2 * b
        if two_beta.denominator == 1:
            k2 = int(two_beta.numerator)
            c_exact_sq = (qd.qstar_one ** (k2 - d)) / (radicand * Rat(2) ** (2 * k2 - 2))

    rho = tuple(1 / to_rat(z) for z in cone.Zstar)
    return AsymptoticEstimate(
        C_full=c_full,
        C_exact_square=c_exact_sq,
        rho=rho,
        alpha=alpha,
        qstar_one=qd.qstar_one,
        gamma_args=(g1, g2),
    )


# -- verdict ------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    """One named hypothesis check with human-readable evidence."""

    name: str
    passed: bool
    evidence: str


@dataclass(frozen=True)
class Verdict:
    """Ultimate-positivity conclusion with its supporting checklist."""

    status: str
    conditional: bool
    reason: Optional[str]
    checklist: Tuple[Check, ...] = field(default=())


def verdict(
    est: Optional[AsymptoticEstimate],
    cert: Optional[MinimalityCertificate],
    checklist: Sequence[Check],
) -> Verdict:
    """Combine the estimate, the minimality certificate, and the checklist.

    UltimatelyPositive or UltimatelyNegative only when every checklist item
    passes and the leading constant has a definite sign; a NotFalsified
    minimality certificate downgrades the conclusion to conditional. Any
    failed item yields Inconclusive naming that item.
    """
    checks = tuple(checklist)
    for c in checks:
        if not c.passed:
            return Verdict(
                status="Inconclusive",
                conditional=False,
                reason=f"{c.name}: {c.evidence}",
                checklist=checks,
            )
    if est is None:
        return Verdict(
            status="Inconclusive",
            conditional=False,
            reason="no asymptotic estimate available",
            checklist=checks,
        )
    if est.C_full == 0:
        return Verdict(
            status="Inconclusive",
            conditional=False,
            reason="leading constant is zero",
            checklist=checks,
        )
    conditional = cert is not None and cert.status == "NotFalsified"
    status = "UltimatelyPositive" if est.C_full > 0 else "UltimatelyNegative"
    reason = "conditional on minimality (certificate NotFalsified)" if conditional else None
    return Verdict(status=status, conditional=conditional, reason=reason, checklist=checks)
