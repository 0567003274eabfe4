"""Interpolated functions beta and beta-hat on Z_p.

The coefficient ratios B_k/A_k and Bhat_k/A_k are p-adically continuous
in k, so evaluating at the smallest positive integer witness congruent to
lambda mod p^n gives the interpolated value mod p^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .padic import Padic, Rational, embed_rational, vp
from .hyper import FrobeniusSpec, HGParams, b_exact, bhat_approx, coeff_exact


@dataclass(frozen=True)
class InterpPoint:
    """A target point lambda with its chosen positive integer witness."""

    lam: Fraction
    n: int
    k_witness: int


def witness_for(lam: Rational, p: int, n: int) -> int:
    """Smallest positive integer congruent to lambda mod p^n."""
    r = embed_rational(lam, p, n).residue
    return r if r >= 1 else p ** n


def interp_point(lam: Rational, p: int, n: int) -> InterpPoint:
    lam = Fraction(lam)
    return InterpPoint(lam=lam, n=n, k_witness=witness_for(lam, p, n))


def _ratio_at(k: int, params: HGParams, frob: FrobeniusSpec, n: int, hat: bool) -> Padic:
    ak = coeff_exact(params, k)
    loss = vp(ak, params.p)
    assert loss is not None
    if hat:
        value = bhat_approx(params, frob, k, n + loss + 1) / ak
    else:
        value = b_exact(params, frob, k) / ak
    return embed_rational(value, params.p, n)


def beta_at(lam: Rational, params: HGParams, frob: FrobeniusSpec, n: int,
            *, hat: bool = False, check_witness: bool = False) -> Padic:
    """beta_lambda (or beta-hat with hat=True) mod p^n.

    With check_witness=True the value is recomputed at the witness shifted
    by p^n and the two are asserted congruent."""
    if n < 1:
        raise ValueError("n must be positive")
    k = witness_for(lam, params.p, n)
    out = _ratio_at(k, params, frob, n, hat)
    if check_witness:
        other = _ratio_at(k + params.p ** n, params, frob, n, hat)
        if not out.congruent(other, n):
            raise AssertionError(
                f"witness dependence at lambda={lam}: {out} vs {other}")
    return out


def ratio_identity_check(x: int, params: HGParams) -> bool:
    """Exact identity linking A^{(1)} to braced-product ratios.

    For p | x (and likewise x ≡ l mod p) this is the bare ratio
    A^{(1)}_{x/p}/A_x = ({1}_x/{a}_x)^s.  For the remaining residues the
    p-divisible factor counts m = floor(x/p) of (1)_x and
    m_a = #{0 <= j : l + jp <= x-1} of (a)_x differ by one, and the exact
    identity carries the correction (m_a!/m!) p^{m_a - m}:

        A^{(1)}_{m_a} ({a}_x)^s (m_a!/m! * p^{m_a-m})^s = A_x ({1}_x)^s
    """
    from math import factorial

    from .padic import braced_product

    if x < 1:
        raise ValueError("x must be positive")
    p, s, a, l = params.p, params.s, params.a, params.l
    m = x // p
    m_a = (x - 1 - l) // p + 1 if x - 1 >= l else 0
    corr = Fraction(factorial(m_a), factorial(m)) * Fraction(p) ** (m_a - m)
    lhs = coeff_exact(params, m_a, 1) * braced_product(a, x, p) ** s * corr ** s
    rhs = coeff_exact(params, x) * braced_product(1, x, p) ** s
    return lhs == rhs
