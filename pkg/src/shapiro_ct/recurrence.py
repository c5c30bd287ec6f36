"""Rudin-Shapiro-type recurrences

    P_k(z) = c1(z) P_{k-1}(z^r) + c2(z) P_{k-1}(-z^r)
           + c3(z) P_{k-1}(z^-r) + c4(z) P_{k-1}(-z^-r),   P_0 = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .arith import LaurentPoly

# Letters of a monomial z^e a^i A^j b^p B^q, by position in the exponent tuple.
# Each letter is P_k evaluated at sign * z^orient.
LETTERS = {1: (1, 1), 2: (1, -1), 3: (-1, 1), 4: (-1, -1)}
LETTER_NAMES = {1: "a", 2: "A", 3: "b", 4: "B"}
_LETTER_OF = {v: k for k, v in LETTERS.items()}

# (sign, orientation) of the P_{k-1} argument multiplying c1..c4.
_BRANCHES = ((1, 1), (-1, 1), (1, -1), (-1, -1))


@dataclass(frozen=True)
class Recurrence:
    r: int
    c1: LaurentPoly = field(default_factory=LaurentPoly)
    c2: LaurentPoly = field(default_factory=LaurentPoly)
    c3: LaurentPoly = field(default_factory=LaurentPoly)
    c4: LaurentPoly = field(default_factory=LaurentPoly)

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 2:
            raise ValueError(f"radix must be an integer >= 2, got {self.r!r}")
        for name, c in zip(("c1", "c2", "c3", "c4"), self.coeffs):
            for e, _ in c.items():
                if not -self.r < e < self.r:
                    raise ValueError(
                        f"{name} has exponent {e}; coefficients need -r < exponent < r (r={self.r})"
                    )

    @classmethod
    def classic(cls) -> "Recurrence":
        return cls(2, LaurentPoly.constant(1), LaurentPoly.monomial(1))

    @property
    def coeffs(self) -> tuple[LaurentPoly, ...]:
        return (self.c1, self.c2, self.c3, self.c4)

    @property
    def is_classic(self) -> bool:
        return self == Recurrence.classic()

    @cached_property
    def letter_forms(self) -> dict[int, tuple[tuple[int, int, int], ...]]:
        """Each level-k letter as a linear form in the level-(k-1) letters.

        ``letter_forms[x]`` lists ``(target_letter, z_exponent, coeff)``; the
        target letters are understood at argument z^r.
        """
        forms = {}
        for letter, (eps, delta) in LETTERS.items():
            acc: dict[tuple[int, int], int] = {}
            for c, (s, rho) in zip(self.coeffs, _BRANCHES):
                if not c:
                    continue
                # P_{k-1}(s * (eps z^delta)^(rho r)) = P_{k-1}(s eps^r z^(delta rho r))
                target = _LETTER_OF[(s * eps ** self.r, delta * rho)]
                for e, coeff in c.substitute(eps, delta).items():
                    key = (target, e)
                    acc[key] = acc.get(key, 0) + coeff
            forms[letter] = tuple(
                (t, e, c) for (t, e), c in sorted(acc.items()) if c
            )
        return forms

    def step(self, p: LaurentPoly) -> LaurentPoly:
        """One application of the recurrence: P_{k-1} -> P_k."""
        out = LaurentPoly()
        for c, (s, rho) in zip(self.coeffs, _BRANCHES):
            if c:
                out = out + c * p.substitute(s, rho * self.r)
        return out
