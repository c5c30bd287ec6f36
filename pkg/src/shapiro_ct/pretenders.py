"""Important monomials and false pretenders.

For a fixed n the important monomials are (aA)^m (bB)^(n-m), 0 <= m <= n.
A false pretender is an unimportant monomial whose going-down step has an
important child with nonzero coefficient.

Counting convention: the closure is built over full dihedral canonical
forms, then every pretender orbit is split into classes under z -> 1/z
alone. That identification keeps the n+1 important monomials distinct
(each is fixed by z -> 1/z), whereas z -> -z would merge m with n-m; the
census reports both counts.
"""
from __future__ import annotations

from dataclasses import dataclass

from .recurrence import Recurrence
from .scheme import DEFAULT_CAP, Monomial, build_closure, canonical_key, expand_step, orbit, rewrite_step


def important(n: int) -> list[Monomial]:
    return [(0, m, m, n - m, n - m) for m in range(n + 1)]


def is_important(mono: Monomial, n: int) -> bool:
    e, i, j, p, q = mono
    return e == 0 and i == j and p == q and i + p == n


def classify(mono: Monomial, n: int) -> str:
    """'important' or 'unimportant'; dihedral images of important monomials are important."""
    return "important" if is_important(mono, n) else "unimportant"


def important_children(mono: Monomial, n: int, rec: Recurrence | None = None) -> list:
    return [t for t in rewrite_step(mono, rec) if is_important(t.mono, n)]


def important_coefficients(n: int, m: int, rec: Recurrence | None = None) -> list[int]:
    """Raw (uncanonicalized) coefficient of each (aA)^r (bB)^(n-r) in the step of (aA)^m (bB)^(n-m)."""
    raw = expand_step((0, m, m, n - m, n - m), rec or Recurrence.classic())
    return [raw.get((0, r, r, n - r, n - r), 0) for r in range(n + 1)]


def _inversion(mono: Monomial) -> Monomial:
    e, i, j, p, q = mono
    return (-e, j, i, q, p)


def inversion_classes(mono: Monomial) -> list[Monomial]:
    """Representatives of the classes, under z -> 1/z, of the dihedral orbit of ``mono``."""
    reps = set()
    for t in orbit(mono):
        pair = (t.mono, _inversion(t.mono))
        reps.add(min(pair, key=canonical_key))
    return sorted(reps, key=canonical_key)


def expected_pretenders(n: int) -> int:
    return (n // 2) ** 2 - 1 if n % 2 == 0 else (n * n - 1) // 4


@dataclass
class PretenderCensus:
    n: int
    universe_size: int
    important_count: int
    canonical_pretenders: list
    false_pretenders: list
    expected_count: int

    @property
    def match(self) -> bool:
        return len(self.false_pretenders) == self.expected_count


def census(n: int, cap: int = DEFAULT_CAP, rec: Recurrence | None = None) -> PretenderCensus:
    """Pretender census over the closure of all n+1 important monomials."""
    if n < 2:
        raise ValueError("census needs n >= 2")
    ts = build_closure(important(n), rec, cap)
    canonical = [
        s for s in ts.states
        if not is_important(s, n) and important_children(s, n, rec)
    ]
    classes = [rep for s in canonical for rep in inversion_classes(s)]
    important_count = len({
        rep for s in ts.states if is_important(s, n) for rep in inversion_classes(s)
    })
    return PretenderCensus(n, ts.size, important_count, canonical, classes, expected_pretenders(n))
