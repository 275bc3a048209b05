"""Catalan numbers, Dyck paths, non-crossing pairings and the polynomials

    pi_n(d) = sum over Dyck paths w of order n of d**touch_count(w).

Four routes to ``pi_n`` are provided (enumeration, convolution recurrence,
linear recurrence by exact division, Catalan-triangle closed form) and they
are meant to be checked against each other. Everything here is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator

from dyckweyl.polynomial import D, ONE, IntPolynomial, InexactDivisionError

ENUMERATION_CAP = 16


class EnumerationCapError(ValueError):
    pass


class InternalConsistencyError(AssertionError):
    """Two exact routes disagreed; always an implementation bug."""


def _check_cap(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > cap:
        raise EnumerationCapError(
            f"n={n} exceeds the enumeration cap of {cap}; use the recurrence "
            "or closed-form routes instead")


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class DyckPath:
    steps: tuple[int, ...]

    def __post_init__(self):
        h = 0
        for s in self.steps:
            if s not in (1, -1):
                raise ValueError(f"steps must be +1/-1, got {s}")
            h += s
            if h < 0:
                raise ValueError("prefix sum went negative")
        if h != 0:
            raise ValueError("path does not return to the axis")

    @property
    def order(self) -> int:
        return len(self.steps) // 2

    @classmethod
    def _trusted(cls, steps: tuple[int, ...]) -> DyckPath:
        # skips validation; for paths valid by construction
        w = object.__new__(cls)
        object.__setattr__(w, "steps", steps)
        return w

    @classmethod
    def from_string(cls, s: str) -> DyckPath:
        return cls(tuple(1 if ch == "+" else -1 for ch in s))

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.steps)


def enumerate_dyck_paths(n: int, cap: int = ENUMERATION_CAP) -> Iterator[DyckPath]:
    """Yield every Dyck path of order ``n`` once, in lexicographic order (+ before -)."""
    _check_cap(n, cap)
    steps = [0] * (2 * n)

    def rec(pos: int, height: int, ups: int):
        if pos == 2 * n:
            yield tuple(steps)
            return
        if ups < n:
            steps[pos] = 1
            yield from rec(pos + 1, height + 1, ups + 1)
        if height > 0:
            steps[pos] = -1
            yield from rec(pos + 1, height - 1, ups)

    for s in rec(0, 0, 0):
        yield DyckPath._trusted(s)


def touch_count(w: DyckPath) -> int:
    """Number of positions ``0..2n-1`` at which the path sits on the axis.

    Position 0 counts and the terminal point does not, which is the reading
    that gives ``pi_1 = d``.
    """
    if not w.steps:
        raise ValueError("touch_count needs a nonempty path")
    h, count = 0, 0
    for s in w.steps:
        if h == 0:
            count += 1
        h += s
    return count


def pi_enumerate(n: int, cap: int = ENUMERATION_CAP) -> IntPolynomial:
    _check_cap(n, cap)
    if n == 0:
        return ONE
    tally = [0] * (n + 1)
    for w in enumerate_dyck_paths(n, cap):
        tally[touch_count(w)] += 1
    return IntPolynomial(tuple(tally))


def pi_convolution(n_max: int) -> list[IntPolynomial]:
    """``pi_0..pi_{n_max}`` from ``pi_n = d * sum_k c_{k-1} pi_{n-k}``."""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    pis = [ONE]
    for n in range(1, n_max + 1):
        acc = IntPolynomial()
        for k in range(1, n + 1):
            acc = acc + catalan(k - 1) * pis[n - k]
        pis.append(acc.shift(1))
    return pis


_ONE_MINUS_D = ONE - D


def pi_linear_step(prev: IntPolynomial, n: int) -> IntPolynomial:
    """``pi_n = (c_{n-1} d - d^2 pi_{n-1}) / (1 - d)`` as an exact ring division."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    numerator = catalan(n - 1) * D - prev.shift(2)
    try:
        return numerator.exact_div(_ONE_MINUS_D)
    except InexactDivisionError as exc:
        raise InternalConsistencyError(
            f"linear step {n} did not divide exactly: {exc}") from exc


def pi_linear(n: int) -> IntPolynomial:
    p = ONE
    for k in range(1, n + 1):
        p = pi_linear_step(p, k)
    return p


@lru_cache(maxsize=None)
def _triangle_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _triangle_row(n - 1)
    row, acc = [], 0
    for k in range(n + 1):
        acc += prev[k] if k < len(prev) else 0
        row.append(acc)
    return tuple(row)


def catalan_triangle_recursive(n: int, k: int) -> int:
    row = _triangle_row(n)
    return row[k] if k < len(row) else 0


def catalan_triangle_binomial(n: int, k: int) -> int:
    if k > n:
        return 0
    return comb(n + k, k) - (comb(n + k, k - 1) if k >= 1 else 0)


def catalan_triangle(n: int, k: int) -> int:
    """Ballot number ``t_{n,k}``: row partial sums of the previous row, zero for ``k > n``.

    Computed by the row-sum recursion and by the binomial formula
    ``C(n+k, k) - C(n+k, k-1)``; the two must agree.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    a = catalan_triangle_recursive(n, k)
    b = catalan_triangle_binomial(n, k)
    if a != b:
        raise InternalConsistencyError(f"t_({n},{k}): recursion {a} != binomial {b}")
    return a


@lru_cache(maxsize=None)
def pi_closed_form(n: int) -> IntPolynomial:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return ONE
    return IntPolynomial((0,) + tuple(catalan_triangle(n - 1, n - k) for k in range(1, n + 1)))


@dataclass(frozen=True)
class PairPartition:
    """Non-crossing pairing of ``{1..2n}``; ``outer[i]`` flags ``blocks[i]``."""

    blocks: tuple[tuple[int, int], ...]
    outer: tuple[bool, ...]

    @property
    def n_outer(self) -> int:
        return sum(self.outer)

    @property
    def n_inner(self) -> int:
        return len(self.blocks) - self.n_outer


def _pairings(lo: int, hi: int) -> Iterator[list[tuple[int, int]]]:
    # non-crossing pairings of the integer range [lo, hi)
    if lo >= hi:
        yield []
        return
    for j in range(lo + 1, hi, 2):
        for inside in _pairings(lo + 1, j):
            for outside in _pairings(j + 1, hi):
                yield [(lo, j)] + inside + outside


def _is_outer(block: tuple[int, int], blocks) -> bool:
    s1, s2 = block
    return not any(s3 < s1 and s2 < s4 for s3, s4 in blocks)


def enumerate_nc_pair_partitions(n: int, cap: int = ENUMERATION_CAP) -> Iterator[PairPartition]:
    _check_cap(n, cap)
    for blocks in _pairings(1, 2 * n + 1):
        blocks = tuple(sorted(blocks))
        yield PairPartition(blocks, tuple(_is_outer(b, blocks) for b in blocks))


def _nc_tally(n: int, cap: int, attr: str) -> IntPolynomial:
    tally = [0] * (n + 1)
    for nu in enumerate_nc_pair_partitions(n, cap):
        tally[getattr(nu, attr)] += 1
    return IntPolynomial(tuple(tally))


def c_poly(n: int, cap: int = ENUMERATION_CAP) -> IntPolynomial:
    """``C_n(d)``: sum over NC pairings of ``d**(number of inner blocks)``."""
    return _nc_tally(n, cap, "n_inner")


def pi_outer(n: int, cap: int = ENUMERATION_CAP) -> IntPolynomial:
    """Sum over NC pairings of ``d**(number of outer blocks)``."""
    return _nc_tally(n, cap, "n_outer")


def rev(p: IntPolynomial, n: int) -> IntPolynomial:
    if p.degree > n:
        raise ValueError(f"degree {p.degree} exceeds bound {n}")
    return IntPolynomial(tuple(reversed(p.padded(n + 1))))


def generalized_catalan_neg1(n: int) -> int:
    """``a_n = 2**-n (1 + sum_{k<n} c_k (-2)**k)``; satisfies ``pi_n(-1) = (-1)**n a_n``."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    total = 1 + sum(catalan(k) * (-2) ** k for k in range(n))
    a = Fraction(total, 2 ** n)
    if a.denominator != 1:
        raise InternalConsistencyError(f"a_{n} = {a} is not an integer")
    return a.numerator


def pi_all_methods(n: int, cap: int = ENUMERATION_CAP) -> dict[str, IntPolynomial]:
    """Every available route for ``pi_n``; enumeration is skipped above ``cap``."""
    out = {}
    if n <= cap:
        out["enum"] = pi_enumerate(n, cap)
    out["conv"] = pi_convolution(n)[n]
    out["linear"] = pi_linear(n)
    out["closed"] = pi_closed_form(n)
    return out
