"""Spectral checks: the K_n matrix, its characteristic polynomial and top
eigenvector, dominant-pole constants of the moment generating functions,
and the mixed-moment growth survey.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .arith import (
    RationalFunction,
    charpoly,
    poly_eval,
    poly_exact_div,
    poly_mul,
    poly_trim,
)
from .errors import DominanceError, MultiplicityError
from .recurrence import Recurrence
from .scheme import DEFAULT_CAP, build_scheme, genfun, iterate_sequence, moment_genfun

# relative guard band for the floating-point root-modulus checks
ROOT_GUARD = 1e-6
MONTGOMERY_MIN_KMAX = 40


def k_entry(n: int, m: int, r: int) -> int:
    s = sum((-1) ** i * comb(m, i) * comb(n - m, r - i) for i in range(r + 1))
    return s * s


def k_matrix(n: int) -> list[list[int]]:
    """(n+1)x(n+1) matrix of K_n(m, r): squared alternating binomial convolutions."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [[k_entry(n, m, r) for r in range(n + 1)] for m in range(n + 1)]


def k_eigenvalues(n: int) -> list[int]:
    """Nonzero eigenvalues of K_n from the closed-form factorization."""
    pos = [2 ** (n - 4 * j) * comb(4 * j, 2 * j) for j in range(n // 4 + 1)]
    neg = [-(2 ** (n - 4 * j - 2)) * comb(4 * j + 2, 2 * j + 1) for j in range((n - 2) // 4 + 1)]
    return pos + neg


def closed_form_charpoly(n: int) -> tuple:
    p = (0,) * ((n + 1) // 2) + (1,)
    for lam in k_eigenvalues(n):
        p = poly_mul(p, (-lam, 1))
    return p


def check_charpoly(n: int) -> bool:
    return charpoly(k_matrix(n)) == closed_form_charpoly(n)


def check_eigenvector(n: int) -> bool:
    """sum_r K_n(m, r) / C(n, r) == 2^n / C(n, m) for every row m."""
    K = k_matrix(n)
    c = [Fraction(1, comb(n, r)) for r in range(n + 1)]
    return all(
        sum(K[m][r] * c[r] for r in range(n + 1)) == 2 ** n * c[m]
        for m in range(n + 1)
    )


# ---------------------------------------------------------------------------
# Dominant poles
# ---------------------------------------------------------------------------

def min_root_modulus(p, scale_log2: int = 0) -> float:
    """Smallest |root| of the polynomial p(t), inf for constants.

    Coefficients are rescaled exactly by t = s / 2^scale_log2 before the
    companion-matrix eigenvalue solve, which keeps them in float range.
    """
    p = poly_trim(p)
    if len(p) <= 1:
        return float("inf")
    scaled = [float(Fraction(c, 2 ** (scale_log2 * j))) for j, c in enumerate(p)]
    big = max(abs(x) for x in scaled)
    roots = np.roots([x / big for x in reversed(scaled)])
    return float(np.min(np.abs(roots))) / 2 ** scale_log2


def pole_constant(rf: RationalFunction, lam: int) -> tuple[Fraction, tuple]:
    """Coefficient c with series ~ c * lam^k from a simple pole at t = 1/lam.

    Returns ``(c, q)`` where den = (1 - lam t) q.
    """
    t0 = Fraction(1, lam)
    if poly_eval(rf.den, t0) != 0:
        raise DominanceError(f"1/{lam} is not a root of the denominator {rf.den}")
    q = poly_exact_div(rf.den, (1, -lam))
    q_t0 = poly_eval(q, t0)
    if q_t0 == 0:
        raise MultiplicityError(f"1/{lam} is a multiple root of the denominator")
    return Fraction(poly_eval(rf.num, t0)) / q_t0, q


@dataclass
class SaffariReport:
    n: int
    genfun: RationalFunction
    dominant_root_ok: bool
    residue: Fraction
    expected: Fraction
    match: bool


def saffari_residue(n: int, rf: RationalFunction | None = None, cap: int = DEFAULT_CAP) -> SaffariReport:
    """Leading constant of M_n(k) ~ c (2^n)^k from the pole of R_n at 2^-n."""
    if rf is None:
        rf = moment_genfun(n, n, cap=cap)
    residue, q = pole_constant(rf, 2 ** n)
    dominant = min_root_modulus(q, n) > (1 + ROOT_GUARD) / 2 ** n
    expected = Fraction(2 ** n, n + 1)
    return SaffariReport(n, rf, dominant, residue, expected, residue == expected)


def prop3_expected(n: int, m: int) -> Fraction:
    return Fraction(2 ** n, (n + 1) * comb(n, m))


def prop3_residue(n: int, m: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Leading constant of CT[(aA)^m (bB)^(n-m)](k) ~ c (2^n)^k."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    rf = genfun(build_scheme((0, m, m, n - m, n - m), cap=cap))
    return pole_constant(rf, 2 ** n)[0]


def saffari_gap(n: int, k: int, value: int) -> Fraction:
    """|M_n(k) (n+1) 2^(-n(k+1)) - 1|, the relative distance from the asymptotic."""
    return abs(Fraction(value * (n + 1), 2 ** (n * (k + 1))) - 1)


# ---------------------------------------------------------------------------
# Mixed moments
# ---------------------------------------------------------------------------

@dataclass
class MontgomeryReport:
    """Heuristic check that M_{m,n}(k) = o(2^((m+n)k/2)).

    ``ratios[k]`` is |M_{m,n}(k)| / 2^((m+n)k/2), or its square when m+n is
    odd (``squared``), kept exact.
    """

    m: int
    n: int
    k_max: int
    genfun: RationalFunction
    states: int
    sequence: list[int]
    ratios: list[Fraction]
    squared: bool
    window_ok: bool
    min_root: float
    root_ok: bool
    low_confidence: bool = False
    label: str = field(default="HEURISTIC")

    @property
    def passed(self) -> bool:
        return self.window_ok and self.root_ok

    def ratio_float(self, k: int) -> float:
        x = float(self.ratios[k])
        return x ** 0.5 if self.squared else x


def montgomery_check(m: int, n: int, k_max: int = 60, rec: Recurrence | None = None,
                     cap: int = DEFAULT_CAP, strict: bool = True) -> MontgomeryReport:
    """Window rule plus root-modulus check for the mixed moment M_{m,n}.

    Passes when the largest ratio over the last 11 levels is below the
    largest over levels 0..20, and every denominator root lies outside the
    disc of radius 2^(-(m+n)/2). With ``strict=False`` a short ``k_max`` is
    accepted and the report is flagged low-confidence.
    """
    if m == n:
        raise ValueError("montgomery_check needs m != n")
    if k_max < MONTGOMERY_MIN_KMAX and strict:
        raise ValueError(f"k_max must be at least {MONTGOMERY_MIN_KMAX}")
    ts = build_scheme((0, m, n, 0, 0), rec, cap)
    rf = genfun(ts)
    seq = iterate_sequence(ts, k_max)
    w = m + n
    squared = w % 2 == 1
    if squared:
        ratios = [Fraction(v * v, 2 ** (w * k)) for k, v in enumerate(seq)]
    else:
        ratios = [Fraction(abs(v), 2 ** (w * k // 2)) for k, v in enumerate(seq)]
    late = max(ratios[max(k_max - 10, 0):])
    early = max(ratios[:min(20, k_max) + 1])
    window_ok = late < early
    min_root = min_root_modulus(rf.den, w // 2)
    root_ok = min_root > 2 ** (-w / 2) * (1 + ROOT_GUARD)
    return MontgomeryReport(
        m, n, k_max, rf, ts.size, seq, ratios, squared, window_ok, min_root, root_ok,
        low_confidence=k_max < MONTGOMERY_MIN_KMAX,
    )
