"""Exact integer and rational helpers.

Everything in the library computes over `fractions.Fraction`; nothing here
(or anywhere else) rounds.  The one place where irrational quantities show
up, sums of tenth roots of rationals, is decided exactly by interval
refinement: a sum of real n-th roots of nonnegative rationals is itself
rational only when every summand is, so a sum with an irrational term can
never sit exactly on a rational threshold and the refinement terminates.
"""

from __future__ import annotations

from fractions import Fraction


def parse_rational(s: str) -> Fraction:
    """Parse the interchange form "p/q" (or "p" when q == 1)."""
    if isinstance(s, int):
        return Fraction(s)
    text = s.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    """Inverse of parse_rational; omits the denominator when it is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer, by Newton iteration."""
    if n < 0:
        raise ValueError("iroot of negative integer")
    if k < 1:
        raise ValueError("root order must be positive")
    if n in (0, 1) or k == 1:
        return n
    # Initial guess from the bit length, then monotone Newton descent.
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


def is_perfect_power(n: int, k: int) -> bool:
    return iroot(n, k) ** k == n


def ceil_log2(k: int) -> int:
    """Smallest integer e with 2**e >= k (k >= 1)."""
    if k < 1:
        raise ValueError("ceil_log2 needs k >= 1")
    return (k - 1).bit_length()


def root_floor_scaled(x: Fraction, k: int, scale_bits: int) -> int:
    """floor(x**(1/k) * 2**scale_bits) for a nonnegative rational x."""
    if x < 0:
        raise ValueError("negative radicand")
    p, q = x.numerator, x.denominator
    return iroot((p << (k * scale_bits)) // q, k)


def sum_kth_roots_compare(weights, k: int, threshold: Fraction) -> int:
    """Sign of (sum_i w_i**(1/k)) - threshold, decided exactly.

    Returns -1, 0 or +1.  weights are nonnegative rationals.
    """
    threshold = Fraction(threshold)
    exact = Fraction(0)
    irrational: list[Fraction] = []
    for w in weights:
        w = Fraction(w)
        if w < 0:
            raise ValueError("negative weight")
        if w == 0:
            continue
        p, q = w.numerator, w.denominator
        rp, rq = iroot(p, k), iroot(q, k)
        if rp ** k == p and rq ** k == q:
            exact += Fraction(rp, rq)
        else:
            irrational.append(w)
    if not irrational:
        if exact > threshold:
            return 1
        if exact < threshold:
            return -1
        return 0
    bits = 16
    while bits <= 4096:
        scale = 1 << bits
        lo = exact
        hi = exact
        for w in irrational:
            m = root_floor_scaled(w, k, bits)
            lo += Fraction(m, scale)
            hi += Fraction(m + 1, scale)
        if lo > threshold:
            return 1
        if hi < threshold:
            return -1
        bits *= 2
    # Unreachable: with an irrational summand the sum is irrational, so one
    # side must eventually win.
    raise ArithmeticError("kth-root sum did not separate from threshold")


def sum_tenth_roots_at_least_one(weights) -> bool:
    return sum_kth_roots_compare(weights, 10, Fraction(1)) >= 0
