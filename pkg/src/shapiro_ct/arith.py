"""Exact arithmetic: Laurent polynomials in z, integer polynomials in t,
normalized rational functions, minimal-recurrence reconstruction and
characteristic polynomials.

No floating point is used anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import ReconstructionError

# Laurent products go through Kronecker packing once both operands have at
# least this many terms and fill at least a quarter of their exponent span.
_DENSE_MIN_TERMS = 32

RECONSTRUCTION_GUARD = 8


# ---------------------------------------------------------------------------
# Dense integer convolution via Kronecker substitution
# ---------------------------------------------------------------------------

def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    pos = b"".join(
        (c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs
    )
    neg = b"".join(
        (-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs
    )
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def dense_convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact convolution of two integer sequences.

    Both operands are packed into single big integers and multiplied once,
    so the cost is that of one big-integer product.
    """
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    bound = min(len(a), len(b)) * max(map(abs, a)) * max(map(abs, b))
    if bound == 0:
        return [0] * n
    nbytes = (bound.bit_length() + 2 + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * n, "little")
    raw = (prod + bias).to_bytes(nbytes * n, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(n)
    ]


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Sparse Laurent polynomial in z with integer coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = {e: c for e, c in (coeffs or {}).items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def from_dense(cls, coeffs: Sequence[int], offset: int = 0) -> "LaurentPoly":
        return cls({offset + i: c for i, c in enumerate(coeffs) if c})

    # -- inspection ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def items(self):
        return self._c.items()

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def ct(self) -> int:
        """Constant term: the coefficient of z^0."""
        return self._c.get(0, 0)

    @property
    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of the zero polynomial")
        return max(self._c)

    @property
    def low_degree(self) -> int:
        if not self._c:
            raise ValueError("low degree of the zero polynomial")
        return min(self._c)

    def to_dense(self) -> tuple[int, list[int]]:
        """Return ``(offset, coeffs)`` with ``coeffs[i]`` the coefficient of z^(offset+i)."""
        if not self._c:
            return 0, []
        lo, hi = self.low_degree, self.degree
        out = [0] * (hi - lo + 1)
        for e, c in self._c.items():
            out[e - lo] = c
        return lo, out

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        p, q = self._c, other._c
        if not p or not q:
            return LaurentPoly()
        if _is_dense(self) and _is_dense(other):
            lo_p, dp = self.to_dense()
            lo_q, dq = other.to_dense()
            return LaurentPoly.from_dense(dense_convolve(dp, dq), lo_p + lo_q)
        out: dict[int, int] = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers of Laurent polynomials are not supported")
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def substitute(self, sign: int, power: int) -> "LaurentPoly":
        """Return p(sign * z**power)."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if power == 0:
            raise ValueError("power must be nonzero")
        if sign == 1:
            return LaurentPoly({e * power: c for e, c in self._c.items()})
        return LaurentPoly(
            {e * power: (-c if e % 2 else c) for e, c in self._c.items()}
        )

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self._c.items()))})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            c = self._c[e]
            if e == 0:
                mono = str(abs(c))
            else:
                zpart = "z" if e == 1 else f"z^{e}" if e > 0 else f"z^({e})"
                mono = zpart if abs(c) == 1 else f"{abs(c)}*{zpart}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text


def _is_dense(p: LaurentPoly) -> bool:
    n = len(p)
    if n < _DENSE_MIN_TERMS:
        return False
    return 4 * n >= p.degree - p.low_degree + 1


# ---------------------------------------------------------------------------
# Integer polynomials in t, stored as tuples (coefficient of t^0 first)
# ---------------------------------------------------------------------------

IntPoly = tuple


def poly_trim(p: Iterable) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_degree(p: Sequence) -> int:
    p = poly_trim(p)
    return len(p) - 1  # -1 for the zero polynomial


def poly_add(p: Sequence, q: Sequence) -> tuple:
    n = max(len(p), len(q))
    return poly_trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def poly_sub(p: Sequence, q: Sequence) -> tuple:
    return poly_add(p, [-c for c in q])


def poly_scale(p: Sequence, c) -> tuple:
    return poly_trim(x * c for x in p)


def poly_mul(p: Sequence, q: Sequence) -> tuple:
    p, q = poly_trim(p), poly_trim(q)
    if not p or not q:
        return ()
    if all(isinstance(x, int) for x in p) and all(isinstance(x, int) for x in q):
        return poly_trim(dense_convolve(p, q))
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_eval(p: Sequence, x):
    """Horner evaluation; exact for int and Fraction arguments."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def poly_primitive(p: Sequence[int]) -> tuple:
    """Primitive part with positive leading coefficient."""
    p = poly_trim(p)
    if not p:
        return ()
    g = poly_content(p)
    if p[-1] < 0:
        g = -g
    return tuple(c // g for c in p)


def poly_divmod(p: Sequence, q: Sequence) -> tuple[tuple, tuple]:
    """Division with remainder over the rationals (Fraction coefficients)."""
    p, q = poly_trim(p), poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    for i in range(len(p) - len(q), -1, -1):
        c = rem[i + len(q) - 1] / lead
        quot[i] = c
        if c:
            for j, b in enumerate(q):
                rem[i + j] -= c * b
    return poly_trim(quot), poly_trim(rem)


def poly_exact_div(p: Sequence[int], q: Sequence[int]) -> tuple:
    """Exact quotient p / q over the integers; raises if q does not divide p."""
    p, q = poly_trim(p), poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [0] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    for i in range(len(p) - len(q), -1, -1):
        c, r = divmod(rem[i + len(q) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[i] = c
        if c:
            for j, b in enumerate(q):
                rem[i + j] -= c * b
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return poly_trim(quot)


def _pseudo_rem(a: Sequence[int], b: Sequence[int]) -> tuple:
    a, b = list(a), list(b)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1]
        shift = len(a) - len(b)
        a = [x * lead for x in a]
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        a = list(poly_trim(a))
    return tuple(a)


def _gcd_degree_mod(a: Sequence[int], b: Sequence[int], p: int) -> int:
    a = [c % p for c in a]
    b = [c % p for c in b]
    while b and b[-1] == 0:
        b.pop()
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, y in enumerate(b):
                a[shift + j] = (a[shift + j] - c * y) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


_COPRIME_PRIME = (1 << 61) - 1


def poly_gcd(p: Sequence[int], q: Sequence[int]) -> tuple:
    """Primitive gcd over the integers (primitive remainder sequence)."""
    a, b = poly_primitive(p), poly_primitive(q)
    if not a:
        return b
    if not b:
        return a
    # an integer gcd of positive degree survives reduction mod any prime
    # that misses both leading coefficients
    P = _COPRIME_PRIME
    if a[-1] % P and b[-1] % P and _gcd_degree_mod(a, b, P) == 0:
        return (1,)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, poly_primitive(_pseudo_rem(a, b))
    return poly_primitive(a)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

def _clear_denominators(p: Sequence) -> tuple[tuple, int]:
    den = 1
    for c in p:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return tuple(int(c * den) for c in p), den


@dataclass(frozen=True)
class RationalFunction:
    """num(t)/den(t) in normal form: coprime, den(0) == 1, integer coefficients.

    Build instances with :meth:`normalize`; equality is then structural.
    """

    num: tuple
    den: tuple

    @classmethod
    def normalize(cls, num: Sequence, den: Sequence) -> "RationalFunction":
        num, den = poly_trim(num), poly_trim(den)
        if not den or den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        if not num:
            return cls((), (1,))
        num, a = _clear_denominators(num)
        den, b = _clear_denominators(den)
        num, den = poly_scale(num, b), poly_scale(den, a)
        g = poly_gcd(num, den)
        if len(g) > 1:
            num, den = poly_exact_div(num, g), poly_exact_div(den, g)
        d0 = den[0]
        if any(c % d0 for c in num) or any(c % d0 for c in den):
            raise ValueError("rational function cannot be normalized to den(0) = 1 over the integers")
        return cls(tuple(c // d0 for c in num), tuple(c // d0 for c in den))

    def series(self, n_terms: int) -> list[int]:
        """First ``n_terms`` Taylor coefficients at t = 0."""
        num, den = self.num, self.den
        out: list[int] = []
        for k in range(n_terms):
            acc = num[k] if k < len(num) else 0
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * out[k - j]
            out.append(acc)  # den[0] == 1
        return out

    def __call__(self, t):
        return Fraction(poly_eval(self.num, t)) / poly_eval(self.den, t)

    def __str__(self):
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def format_poly(p: Sequence[int], var: str = "t") -> str:
    p = poly_trim(p)
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        if i == 0:
            mono = str(abs(c))
        else:
            v = var if i == 1 else f"{var}^{i}"
            mono = v if abs(c) == 1 else f"{abs(c)}*{v}"
        parts.append(("-" if c < 0 else "+", mono))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, mono in parts[1:]:
        text += f" {sign} {mono}"
    return text


def berlekamp_massey(seq: Sequence) -> tuple[int, list[Fraction]]:
    """Shortest linear recurrence over the rationals.

    Returns ``(L, C)`` with ``C[0] == 1``, ``len(C) <= L + 1`` and
    ``sum(C[j] * seq[k - j]) == 0`` for every ``L <= k < len(seq)``.
    """
    C: list = [Fraction(1)]
    B: list = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n, s_n in enumerate(seq):
        d = s_n
        for i in range(1, min(L, len(C) - 1) + 1):
            if C[i]:
                d += C[i] * seq[n - i]
        if d == 0:
            m += 1
            continue
        coef = Fraction(d) / b
        T = C
        C = C + [Fraction(0)] * max(0, len(B) + m - len(C))
        for i, x in enumerate(B):
            C[i + m] -= coef * x
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, Fraction(d), 1
        else:
            m += 1
    C = list(poly_trim(C))
    return L, C


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:  # deterministic below 3.3e24
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(n: int):
    n -= 1
    while True:
        if _is_prime(n):
            yield n
        n -= 2 if n % 2 else 1


def berlekamp_massey_mod(seq: Sequence[int], p: int) -> tuple[int, list[int]]:
    """Berlekamp-Massey over GF(p); same contract as :func:`berlekamp_massey`."""
    C, B = [1], [1]
    L, m, b = 0, 1, 1
    for n in range(len(seq)):
        d = seq[n] % p
        for i in range(1, min(L, len(C) - 1) + 1):
            d = (d + C[i] * seq[n - i]) % p
        if d == 0:
            m += 1
            continue
        coef = d * pow(b, -1, p) % p
        T = C
        C = C + [0] * max(0, len(B) + m - len(C))
        for i, x in enumerate(B):
            C[i + m] = (C[i + m] - coef * x) % p
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return L, C


def _modular_connection(seq: list[int], max_primes: int = 400) -> tuple[int, list[int]] | None:
    """Integer connection polynomial by CRT over word-size primes, or None.

    Stops once the symmetric CRT lift is unchanged by a fresh prime; the
    caller certifies the lift exactly, so a wrong guess is never returned.
    """
    modulus, lift, L_best = 1, None, -1
    for count, p in enumerate(_primes_below(1 << 62)):
        if count >= max_primes:
            return None
        L, C = berlekamp_massey_mod(seq, p)
        if L < L_best:
            continue  # unlucky prime
        if L > L_best:
            modulus, lift, L_best = 1, None, L
        C = C + [0] * (L + 1 - len(C))
        if lift is None:
            new = [c % p for c in C]
        else:
            inv = pow(modulus, -1, p)
            new = [x + modulus * ((c - x) * inv % p) for x, c in zip(lift, C)]
        prev_sym = None if lift is None else [x if 2 * x <= modulus else x - modulus for x in lift]
        modulus *= p
        lift = [x % modulus for x in new]
        sym = [x if 2 * x <= modulus else x - modulus for x in lift]
        if sym == prev_sym:
            return L_best, list(poly_trim(sym))
    return None


def _try_connection(seq: list[int], L: int, C: Sequence) -> RationalFunction | None:
    num = poly_mul(C, seq[:L])[:L] if L else ()
    try:
        rf = RationalFunction.normalize(num, C)
    except (ValueError, ArithmeticError):
        return None
    return rf if rf.series(len(seq)) == seq else None


def reconstruct_rational(seq: Sequence[int], order_bound: int) -> RationalFunction:
    """Minimal rational generating function of an integer sequence.

    The sequence must have at least ``2 * order_bound + 8`` terms; the result
    is certified by re-expanding it against every supplied term.

    An integral connection polynomial is first guessed by Berlekamp-Massey
    modulo word-size primes and CRT; if that guess does not certify, the
    recurrence is recomputed over the rationals.
    """
    need = 2 * order_bound + RECONSTRUCTION_GUARD
    if len(seq) < need:
        raise ValueError(f"need at least {need} terms for order bound {order_bound}, got {len(seq)}")
    seq = [int(s) for s in seq]
    guess = _modular_connection(seq)
    if guess is not None and guess[0] <= order_bound:
        rf = _try_connection(seq, *guess)
        if rf is not None:
            return rf
    L, C = berlekamp_massey(seq)
    if L > order_bound:
        raise ReconstructionError(
            f"no linear recurrence of order <= {order_bound} fits (linear complexity {L})"
        )
    rf = _try_connection(seq, L, C)
    if rf is None:
        raise ReconstructionError("reconstructed rational function does not reproduce the sequence")
    return rf


# ---------------------------------------------------------------------------
# Characteristic polynomial
# ---------------------------------------------------------------------------

def charpoly(M: Sequence[Sequence[int]]) -> tuple:
    """det(z I - M) as an IntPoly (constant term first), Berkowitz's division-free method."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    p = [1]  # highest degree first
    for k in range(n - 1, -1, -1):
        a = M[k][k]
        R = M[k][k + 1:]
        v = [M[i][k] for i in range(k + 1, n)]
        sub = [row[k + 1:] for row in M[k + 1:]]
        m = n - k - 1
        col = [1, -a]
        for _ in range(m):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(x * y for x, y in zip(row, v)) for row in sub]
        p = [sum(col[i - j] * p[j] for j in range(min(i, m) + 1)) for i in range(m + 2)]
    return tuple(reversed(p))
