"""The rewriting scheme: canonical monomials, the going-down step, closure
into a finite transition system, exact iteration and generating functions.

A monomial ``(e, i, j, p, q)`` stands for z^e a^i A^j b^p B^q with
a = P_k(z), A = P_k(1/z), b = P_k(-z), B = P_k(-1/z); its constant term at
level k is written E[mono](k).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .arith import RationalFunction, reconstruct_rational, RECONSTRUCTION_GUARD
from .errors import CapacityError
from .recurrence import Recurrence

DEFAULT_CAP = 1000

Monomial = tuple


class Term(NamedTuple):
    coeff: int
    mono: Monomial


def canonical_key(mono: Monomial) -> tuple:
    """Total order on monomials; the orbit minimum is the canonical form.

    Smallest |e| first, then e >= 0 before e < 0, then the largest power of
    a, then of A, b, B.
    """
    e, i, j, p, q = mono
    return (abs(e), e < 0, -i, -j, -p, -q)


def orbit(mono: Monomial) -> list[Term]:
    """The four images of ``mono`` under z -> z, -z, 1/z, -1/z, with signs."""
    e, i, j, p, q = mono
    s = -1 if e % 2 else 1
    return [
        Term(1, (e, i, j, p, q)),
        Term(s, (e, p, q, i, j)),      # z -> -z: a <-> b, A <-> B
        Term(1, (-e, j, i, q, p)),     # z -> 1/z: a <-> A, b <-> B
        Term(s, (-e, q, p, j, i)),     # z -> -1/z
    ]


@lru_cache(maxsize=None)
def _canonical(mono: Monomial) -> tuple[int, Monomial]:
    images = orbit(mono)
    best = min(images, key=lambda t: canonical_key(t.mono))
    for t in images:
        if t.mono == best.mono and t.coeff != best.coeff:
            # fixed by a sign-flipping symmetry: the constant term is zero
            return 0, best.mono
    return best.coeff, best.mono


def canonicalize(term: Term | Monomial) -> Term:
    """Orbit representative with the symmetry sign folded into the coefficient.

    Monomials whose constant term vanishes by symmetry (e.g. z a A b B) come
    back with coefficient 0.
    """
    if not isinstance(term, Term):
        term = Term(1, tuple(term))
    sign, mono = _canonical(tuple(term.mono))
    return Term(sign * term.coeff, mono)


def is_canonical(mono: Monomial) -> bool:
    sign, canon = _canonical(tuple(mono))
    return canon == tuple(mono) and sign == 1


# ---------------------------------------------------------------------------
# The going-down step
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _form_power(rec: Recurrence, letter: int, power: int) -> dict:
    """(letter form)^power as {(z_exp, i, j, p, q): coeff}."""
    if power == 0:
        return {(0, 0, 0, 0, 0): 1}
    prev = _form_power(rec, letter, power - 1)
    out: dict = {}
    for (ze, *ex), c in prev.items():
        for target, e, c2 in rec.letter_forms[letter]:
            ex2 = list(ex)
            ex2[target - 1] += 1
            key = (ze + e, *ex2)
            out[key] = out.get(key, 0) + c * c2
    return {k: v for k, v in out.items() if v}


def _mul_forms(x: dict, y: dict) -> dict:
    out: dict = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            key = tuple(u + v for u, v in zip(kx, ky))
            out[key] = out.get(key, 0) + cx * cy
    return {k: v for k, v in out.items() if v}


def expand_step(mono: Monomial, rec: Recurrence) -> dict[Monomial, int]:
    """Level-k monomial as a combination of level-(k-1) monomials, uncanonicalized.

    Substitutes every letter by its form in the level-(k-1) letters at
    argument z^r, expands, keeps the z-exponents divisible by r and divides
    them by r.
    """
    e0 = mono[0]
    acc = {(e0, 0, 0, 0, 0): 1}
    for letter in (1, 2, 3, 4):
        if mono[letter]:
            acc = _mul_forms(acc, _form_power(rec, letter, mono[letter]))
    r = rec.r
    out: dict = {}
    for (ze, *ex), c in acc.items():
        if ze % r == 0:
            key = (ze // r, *ex)
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _rewrite(mono: Monomial, rec: Recurrence) -> tuple[Term, ...]:
    combined: dict = {}
    for child, c in expand_step(mono, rec).items():
        sign, canon = _canonical(child)
        if sign:
            combined[canon] = combined.get(canon, 0) + sign * c
    return tuple(
        Term(c, m)
        for m, c in sorted(combined.items(), key=lambda kv: canonical_key(kv[0]))
        if c
    )


def rewrite_step(mono: Monomial, rec: Recurrence | None = None) -> list[Term]:
    """E[mono](k) = sum(coeff * E[child](k-1)) over the returned terms.

    Children are canonical, combined, nonzero and sorted by canonical key.
    """
    return list(_rewrite(tuple(mono), rec or Recurrence.classic()))


# ---------------------------------------------------------------------------
# Transition systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransitionSystem:
    """E(k) = A E(k-1), E(0) = v over the canonical states.

    ``rows[s]`` holds the ``(coeff, target)`` pairs of state ``s``; state 0
    is the canonical seed and ``seed_sign`` relates it to the seed as given
    (E[seed] = seed_sign * E[state 0]).
    """

    states: tuple
    rows: tuple
    init: tuple
    rec: Recurrence
    seed_sign: int = 1

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self, mono: Monomial) -> int:
        return self.states.index(tuple(mono))

    def dense_matrix(self) -> list[list[int]]:
        n = self.size
        M = [[0] * n for _ in range(n)]
        for s, row in enumerate(self.rows):
            for c, t in row:
                M[s][t] = c
        return M


def build_closure(seeds: Iterable[Monomial], rec: Recurrence | None = None,
                  cap: int = DEFAULT_CAP) -> TransitionSystem:
    """Breadth-first closure of the canonical seeds under ``rewrite_step``.

    States are numbered in discovery order (seeds first, children in
    canonical-key order). More than ``cap`` states raises CapacityError.
    """
    rec = rec or Recurrence.classic()
    if cap < 1:
        raise ValueError("cap must be at least 1")
    states: list = []
    index: dict = {}

    def add(mono):
        if mono not in index:
            index[mono] = len(states)
            states.append(mono)
            if len(states) > cap:
                raise CapacityError(
                    f"FAIL: scheme exceeded {cap} states; retry with a larger cap",
                    count=len(states), cap=cap,
                )

    signs = []
    for seed in seeds:
        t = canonicalize(Term(1, tuple(seed)))
        signs.append(t.coeff)
        add(t.mono)
    if not states:
        raise ValueError("at least one seed is required")

    rows = []
    queue = deque(range(len(states)))
    while queue:
        s = queue.popleft()
        row = []
        for coeff, child in _rewrite(states[s], rec):
            if child not in index:
                add(child)
                queue.append(index[child])
            row.append((coeff, index[child]))
        rows.append(tuple(row))
    init = tuple(1 if m[0] == 0 else 0 for m in states)
    return TransitionSystem(tuple(states), tuple(rows), init, rec, signs[0])


def build_scheme(seed: Monomial, rec: Recurrence | None = None,
                 cap: int = DEFAULT_CAP) -> TransitionSystem:
    return build_closure([seed], rec, cap)


def iterate_states(ts: TransitionSystem, k_max: int) -> list[tuple[int, ...]]:
    """Full state vectors E(0), ..., E(k_max)."""
    v = ts.init
    out = [v]
    rows = ts.rows
    for _ in range(k_max):
        v = tuple(sum(c * v[t] for c, t in row) for row in rows)
        out.append(v)
    return out


def iterate_sequence(ts: TransitionSystem, k_max: int) -> list[int]:
    """E[seed](0), ..., E[seed](k_max)."""
    v = ts.init
    out = [ts.seed_sign * v[0]]
    rows = ts.rows
    for _ in range(k_max):
        v = [sum(c * v[t] for c, t in row) for row in rows]
        out.append(ts.seed_sign * v[0])
    return out


def genfun(ts: TransitionSystem) -> RationalFunction:
    """Rational generating function of the seed sequence.

    Iterates 2S+8 terms (S states) and reconstructs the minimal rational
    function with order bound S; the result reproduces every iterated term.
    """
    S = ts.size
    seq = iterate_sequence(ts, 2 * S + RECONSTRUCTION_GUARD - 1)
    return reconstruct_rational(seq, S)


def genfun_at(ts: TransitionSystem, t: Fraction) -> Fraction:
    """First component of (I - tA)^-1 v at a rational point, by exact elimination.

    Independent of ``genfun``; meant as a cross-check on small systems.
    """
    n = ts.size
    t = Fraction(t)
    M = [[Fraction(int(i == j)) for j in range(n)] + [Fraction(ts.init[i])] for i in range(n)]
    for i, row in enumerate(ts.rows):
        for c, j in row:
            M[i][j] -= t * c
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("I - tA is singular at this point")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return ts.seed_sign * M[0][n]


def moment_genfun(m: int, n: int, rec: Recurrence | None = None,
                  cap: int = DEFAULT_CAP) -> RationalFunction:
    """Generating function of M_{m,n}(k) = CT[P_k(z)^m P_k(1/z)^n]."""
    if m < 0 or n < 0 or m == n == 0:
        raise ValueError("need m, n >= 0, not both zero")
    return genfun(build_scheme((0, m, n, 0, 0), rec, cap))
