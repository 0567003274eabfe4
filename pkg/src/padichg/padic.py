"""Exact arithmetic in Z/p^N with valuation and precision tracking.

Values of Z_p are represented by a residue known modulo p^prec.  All
number-theoretic primitives used elsewhere in the package live here:
rational embedding, exact division, binomials and Pochhammer symbols,
Dwork prime chains, braced products and the Iwasawa logarithm.

Rational parameters are plain ``fractions.Fraction`` objects throughout;
a parameter is embeddable at p iff p does not divide its denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

Rational = Union[int, Fraction]


class PadicError(ArithmeticError):
    """Base class for arithmetic failures in this package."""


class DenominatorDivisibleByP(PadicError):
    """A rational with p in its denominator cannot be embedded in Z_p."""


class NotDivisible(PadicError):
    """Exact division requested but the residue is not divisible."""


class PrecisionExhausted(PadicError):
    """An operation would leave no significant digits."""


class CNotOneModP(PadicError):
    """The twist constant c is not congruent to 1 at the required depth."""


_KNOWN_PRIMES: set[int] = set()


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p in _KNOWN_PRIMES:
        return True
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    _KNOWN_PRIMES.add(p)
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def parse_rational(text: str) -> Fraction:
    """Parse "n/d" or "n" into a Fraction."""
    return Fraction(str(text).strip())


def vp(x: Rational, p: int) -> Optional[int]:
    """p-adic valuation of a rational; None for x = 0 (infinite)."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _inv_mod(u: int, m: int) -> int:
    return pow(u, -1, m)


@dataclass(frozen=True)
class Padic:
    """An element of Z_p known modulo p^prec."""

    p: int
    prec: int
    residue: int

    def __post_init__(self):
        check_prime(self.p)
        if self.prec < 0:
            raise ValueError("precision must be nonnegative")
        if not 0 <= self.residue < self.p ** self.prec:
            raise ValueError("residue out of range for stated precision")

    @property
    def modulus(self) -> int:
        return self.p ** self.prec

    def _check_compatible(self, other: "Padic") -> int:
        if self.p != other.p:
            raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
        return min(self.prec, other.prec)

    def __add__(self, other: "Padic") -> "Padic":
        n = self._check_compatible(other)
        return Padic(self.p, n, (self.residue + other.residue) % self.p ** n)

    def __sub__(self, other: "Padic") -> "Padic":
        n = self._check_compatible(other)
        return Padic(self.p, n, (self.residue - other.residue) % self.p ** n)

    def __mul__(self, other: "Padic") -> "Padic":
        n = self._check_compatible(other)
        return Padic(self.p, n, (self.residue * other.residue) % self.p ** n)

    def __neg__(self) -> "Padic":
        return Padic(self.p, self.prec, (-self.residue) % self.modulus)

    def __pow__(self, k: int) -> "Padic":
        if k < 0:
            return self.inverse() ** (-k)
        return Padic(self.p, self.prec, pow(self.residue, k, self.modulus))

    def is_unit(self) -> bool:
        return self.prec > 0 and self.residue % self.p != 0

    def inverse(self) -> "Padic":
        if not self.is_unit():
            raise NotDivisible("cannot invert a non-unit")
        return Padic(self.p, self.prec, _inv_mod(self.residue, self.modulus))

    def valuation(self) -> tuple[int, bool]:
        """(v, exact): v = min(v_p(residue), prec); exact is False when the
        residue vanishes, meaning only v >= prec is known."""
        if self.residue == 0:
            return self.prec, False
        v = vp(self.residue, self.p)
        assert v is not None
        return min(v, self.prec), v < self.prec

    def exact_divide(self, d: Union["Padic", Rational]) -> "Padic":
        """Divide by d, shifting out its p-part and reducing precision by
        v_p(d).  Raises NotDivisible when the quotient is not in Z_p at the
        known precision, PrecisionExhausted when no digits would remain."""
        p = self.p
        if isinstance(d, Padic):
            if d.p != p:
                raise ValueError("prime mismatch")
            v, exact = d.valuation()
            if not exact:
                raise NotDivisible("divisor is indistinguishable from zero")
            unit = d.residue // p ** v
            new_prec = min(self.prec, d.prec - v) - v
            if new_prec <= 0:
                raise PrecisionExhausted("division leaves no digits")
            r = (self.residue * _inv_mod(unit % p ** self.prec, p ** self.prec)) % p ** self.prec
            if r % p ** v:
                raise NotDivisible(f"residue not divisible by {p}^{v}")
            return Padic(p, new_prec, (r // p ** v) % p ** new_prec)
        d = Fraction(d)
        if d == 0:
            raise ZeroDivisionError("division by zero")
        v = vp(d, p)
        assert v is not None
        unit = d / Fraction(p) ** v
        new_prec = self.prec - v
        if new_prec <= 0:
            raise PrecisionExhausted("division leaves no digits")
        m = p ** self.prec
        inv_unit = (unit.denominator * _inv_mod(unit.numerator % m, m)) % m
        r = (self.residue * inv_unit) % m
        if v > 0:
            if r % p ** v:
                raise NotDivisible(f"residue not divisible by {p}^{v}")
            return Padic(p, new_prec, (r // p ** v) % p ** new_prec)
        return Padic(p, new_prec, (r * p ** (-v)) % p ** new_prec)

    def reduce(self, prec: int) -> "Padic":
        if prec > self.prec:
            raise PrecisionExhausted(f"only {self.prec} digits known, {prec} requested")
        return Padic(self.p, prec, self.residue % self.p ** prec)

    def congruent(self, other: "Padic", n: int) -> bool:
        """True iff self ≡ other mod p^n (both must carry >= n digits)."""
        if self.p != other.p:
            return False
        if min(self.prec, other.prec) < n:
            raise PrecisionExhausted(f"need {n} digits to compare")
        return (self.residue - other.residue) % self.p ** n == 0

    def is_zero_mod(self, n: int) -> bool:
        if self.prec < n:
            raise PrecisionExhausted(f"need {n} digits to compare")
        return self.residue % self.p ** n == 0

    def digits(self) -> list[int]:
        """Base-p digits, little-endian, length prec."""
        out, r = [], self.residue
        for _ in range(self.prec):
            out.append(r % self.p)
            r //= self.p
        return out

    def __str__(self) -> str:
        return f"{self.residue} mod {self.p}^{self.prec}"


def embed_rational(r: Rational, p: int, prec: int) -> Padic:
    """Embed a rational with p-free denominator into Z/p^prec."""
    check_prime(p)
    r = Fraction(r)
    if r.denominator % p == 0:
        raise DenominatorDivisibleByP(f"{r} has denominator divisible by {p}")
    m = p ** prec
    res = (r.numerator * _inv_mod(r.denominator % m, m)) % m if prec > 0 else 0
    return Padic(p, prec, res)


def zero(p: int, prec: int) -> Padic:
    return Padic(p, prec, 0)


def one(p: int, prec: int) -> Padic:
    return embed_rational(1, p, prec)


# ---------------------------------------------------------------------------
# binomials and Pochhammer symbols


def pochhammer(alpha: Rational, k: int) -> Fraction:
    """Rising factorial alpha(alpha+1)...(alpha+k-1), with ()_0 = 1."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = Fraction(1)
    a = Fraction(alpha)
    for i in range(k):
        out *= a + i
    return out


def binomial(alpha: Rational, i: int) -> Fraction:
    """Generalized binomial coefficient alpha(alpha-1)...(alpha-i+1)/i!."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    a = Fraction(alpha)
    out = Fraction(1)
    for j in range(i):
        out *= (a - j) / (j + 1)
    return out


def padic_binomial(alpha: Rational, i: int, p: int, prec: int, *, rising: bool = False) -> Padic:
    """binom(alpha, i) (or the Pochhammer symbol (alpha)_i with rising=True)
    embedded at full precision; alpha must have p-free denominator."""
    value = pochhammer(alpha, i) if rising else binomial(alpha, i)
    return embed_rational(value, p, prec)


# ---------------------------------------------------------------------------
# powers of the twist constant and the Iwasawa logarithm


def c_power_frac(c: Rational, alpha: Rational, p: int, prec: int) -> Fraction:
    """A rational congruent to c^alpha mod p^prec, via the binomial series
    in c - 1.  Requires v_p(c-1) >= 1 (any alpha with p-free denominator)."""
    c = Fraction(c)
    alpha = Fraction(alpha)
    if alpha.denominator == 1:
        k = int(alpha)
        return c ** k
    if alpha.denominator % p == 0:
        raise DenominatorDivisibleByP(f"exponent {alpha} not in Z_{p}")
    x = c - 1
    if x == 0:
        return Fraction(1)
    v = vp(x, p)
    if v is None or v < 1:
        raise CNotOneModP(f"c = {c} is not in 1 + {p}Z_{p}")
    total = Fraction(1)
    xi = Fraction(1)
    i = 1
    while i * v < prec:
        xi *= x
        total += binomial(alpha, i) * xi
        i += 1
    return total


def c_power(c: Padic, alpha: Rational, prec: Optional[int] = None) -> Padic:
    """c^alpha for c ≡ 1 mod p, as a Padic at min(prec of c, prec)."""
    p = c.p
    n = c.prec if prec is None else min(prec, c.prec)
    alpha = Fraction(alpha)
    if alpha.denominator == 1:
        return (c ** int(alpha)).reduce(n)
    approx = c_power_frac(Fraction(c.residue), alpha, p, n)
    return embed_rational(approx, p, n)


def iwasawa_log(c: Padic) -> Padic:
    """p-adic logarithm of c on 1 + pZ_p (1 + 4Z_2 at p = 2), at the
    precision carried by c."""
    p, n = c.p, c.prec
    x = c.residue - 1
    if x == 0:
        return zero(p, n)
    v = vp(x, p)
    assert v is not None
    need = 2 if p == 2 else 1
    if v < need:
        raise CNotOneModP(f"{c} is not in 1 + {p ** need}Z_{p}")
    total = Fraction(0)
    xi = 1
    i = 1
    # terms have valuation i*v - v_p(i); stop once that floor passes n
    while True:
        floor_vpi = 0
        q = p
        while q <= i:
            floor_vpi += 1
            q *= p
        if i * v - floor_vpi >= n:
            break
        xi *= x
        total += Fraction((-1) ** (i + 1) * xi, i)
        i += 1
    return embed_rational(total, p, n)


# ---------------------------------------------------------------------------
# braced products


def braced_product(alpha: Rational, n: int, p: int) -> Fraction:
    """{alpha}_n: product of alpha + i - 1 over 1 <= i <= n, omitting the
    factors of positive p-adic valuation.  {alpha}_0 = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = Fraction(1)
    a = Fraction(alpha)
    for i in range(1, n + 1):
        f = a + i - 1
        if f != 0 and vp(f, p) == 0:
            out *= f
    return out


def braced_table(alpha: Rational, n_max: int, p: int) -> list[Fraction]:
    """[{alpha}_0, ..., {alpha}_n_max] built incrementally."""
    a = Fraction(alpha)
    out = [Fraction(1)]
    acc = Fraction(1)
    for i in range(1, n_max + 1):
        f = a + i - 1
        if f != 0 and vp(f, p) == 0:
            acc *= f
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Dwork prime chains


def _l_for(a: Fraction, p: int, modulus: int) -> int:
    """The unique l in [0, modulus) with a + l ≡ 0 mod modulus."""
    if a.denominator % p == 0:
        raise DenominatorDivisibleByP(f"{a} not in Z_{p}")
    return (-a.numerator * _inv_mod(a.denominator % modulus, modulus)) % modulus


@dataclass(frozen=True)
class DworkChain:
    """The Dwork-prime orbit of a, together with l, l', q and e."""

    a: Fraction
    p: int
    l: int
    q: int
    l_prime: int
    e: int
    chain: tuple[Fraction, ...]
    period: Optional[int]

    def a_at(self, i: int) -> Fraction:
        """The i-th Dwork prime a^{(i)}, following the eventual cycle."""
        if i < len(self.chain):
            return self.chain[i]
        # locate the cycle: the last entry repeats an earlier one
        last = self.chain[-1]
        start = self.chain.index(last)
        cycle = len(self.chain) - 1 - start
        if cycle <= 0:
            raise ValueError("Dwork chain did not close; increase max_steps")
        return self.chain[start + (i - start) % cycle]

    def l_at(self, i: int) -> int:
        return _l_for(self.a_at(i), self.p, self.p)


def dwork_chain(a: Rational, p: int, max_steps: int = 64) -> DworkChain:
    """Iterate a -> (a + l)/p, detecting the period r with a^{(r)} = a when
    it exists within max_steps."""
    check_prime(p)
    a = Fraction(a)
    q = 4 if p == 2 else p
    l = _l_for(a, p, p)
    l_prime = _l_for(a, p, q)
    e = l_prime - l_prime // p
    chain = [a]
    seen = {a}
    period = None
    cur = a
    for step in range(1, max_steps + 1):
        cur = (cur + _l_for(cur, p, p)) / p
        chain.append(cur)
        if period is None and cur == a:
            period = step
        if cur in seen:
            break
        seen.add(cur)
    return DworkChain(a=a, p=p, l=l, q=q, l_prime=l_prime, e=e,
                      chain=tuple(chain), period=period)
