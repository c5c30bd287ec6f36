"""Brute-force ground truth: build P_k explicitly and take constant terms.

Nothing here touches the rewriting scheme, so it can be used to check it.
"""
from __future__ import annotations

from functools import lru_cache

from .arith import LaurentPoly
from .errors import CapacityError
from .recurrence import Recurrence

DEFAULT_BUDGET = 2 ** 26

Monomial = tuple  # (e, a, A, b, B): z^e P(z)^a P(1/z)^A P(-z)^b P(-1/z)^B


@lru_cache(maxsize=64)
def rs_poly(k: int, rec: Recurrence | None = None) -> LaurentPoly:
    """P_k for the given recurrence (classic Rudin-Shapiro by default)."""
    if k < 0:
        raise ValueError("level must be nonnegative")
    rec = rec or Recurrence.classic()
    if k == 0:
        return LaurentPoly.constant(1)
    return rec.step(rs_poly(k - 1, rec))


def span_bound(k: int, rec: Recurrence) -> int:
    """Upper bound on the exponent span of P_k, without building it."""
    reach = 0
    for _ in range(k):
        reach = rec.r * reach + rec.r - 1
    return 2 * reach + 1


def estimate_cost(mono: Monomial, k: int, rec: Recurrence) -> int:
    """Rough count of coefficient operations for one brute-force moment.

    Products are dense (Kronecker-packed), so each multiplication costs
    about the length of its output; there are ``d`` of them for total
    degree ``d``, each at most ``d`` spans long.
    """
    d = sum(mono[1:])
    return max(d, 1) ** 2 * span_bound(k, rec)


def _check_budget(mono, k, rec, budget):
    cost = estimate_cost(mono, k, rec)
    if cost > budget:
        raise CapacityError(
            f"brute-force CT of {tuple(mono)} at k={k} needs ~{cost} operations (budget {budget})",
            count=cost, cap=budget,
        )


def ct_moment_brute(
    mono: Monomial,
    k: int,
    rec: Recurrence | None = None,
    budget: int = DEFAULT_BUDGET,
    method: str = "correlation",
) -> int:
    """E[mono](k) = CT[z^e a^i A^j b^p B^q] at level k, computed from P_k itself.

    ``method="full"`` multiplies everything out and reads off the constant
    term; ``method="correlation"`` only forms X = a^i b^p and Y = a^j b^q and
    sums X_m * Y_(m+e), which is the same number with far less work.
    """
    rec = rec or Recurrence.classic()
    e, i, j, p, q = mono
    if min(i, j, p, q) < 0:
        raise ValueError(f"letter exponents must be nonnegative: {mono}")
    _check_budget(mono, k, rec, budget)
    a = rs_poly(k, rec)
    b = a.substitute(-1, 1)
    if method == "full":
        A = a.substitute(1, -1)
        B = a.substitute(-1, -1)
        prod = LaurentPoly.monomial(e) * a ** i * A ** j * b ** p * B ** q
        return prod.ct()
    if method != "correlation":
        raise ValueError(f"unknown method {method!r}")
    X = a ** i * b ** p
    Y = a ** j * b ** q
    if len(X) > len(Y):
        return sum(c * X.coeff(m - e) for m, c in Y.items())
    return sum(c * Y.coeff(m + e) for m, c in X.items())


def mixed_moment_brute(m: int, n: int, k: int, rec: Recurrence | None = None,
                       budget: int = DEFAULT_BUDGET) -> int:
    """M_{m,n}(k) = CT[P_k(z)^m P_k(1/z)^n]."""
    return ct_moment_brute((0, m, n, 0, 0), k, rec, budget)


def parseval_check(k: int, budget: int = DEFAULT_BUDGET) -> bool:
    """P_k(z)P_k(1/z) + P_k(-z)P_k(-1/z) == 2^(k+1), as Laurent polynomials."""
    rec = Recurrence.classic()
    _check_budget((0, 1, 1, 0, 0), k, rec, budget)
    a = rs_poly(k, rec)
    lhs = a * a.substitute(1, -1) + a.substitute(-1, 1) * a.substitute(-1, -1)
    return lhs == LaurentPoly.constant(2 ** (k + 1))
