"""Signature arithmetic for tower-height decompositions.

A signature is a finite set of allowed tower heights h_1 < ... < h_n.  The
tower engine needs, for a nontrivial primitive signature and a positive
rational eps, the least N such that every integer m >= N can be written as
m = sum(alpha_i * h_i) with nonnegative integers alpha_i under the strict
mass constraint alpha_1 * h_1 < eps * m.  Everything here is exact integer
and rational arithmetic; the strict inequality at the boundary decides
correctness, so floats are never used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasibleDecomposition, SignatureError


@dataclass(frozen=True, order=True)
class Signature:
    """Strictly increasing positive tower heights."""

    heights: tuple[int, ...]

    def __post_init__(self):
        hs = self.heights
        if not hs:
            raise SignatureError("signature must be nonempty")
        if any(not isinstance(h, int) or h < 1 for h in hs):
            raise SignatureError(f"heights must be positive integers: {hs}")
        if list(hs) != sorted(set(hs)):
            raise SignatureError(f"heights must be strictly increasing: {hs}")

    @classmethod
    def of(cls, *heights: int) -> "Signature":
        return cls(tuple(sorted(set(heights))))

    def __iter__(self):
        return iter(self.heights)

    def __len__(self):
        return len(self.heights)

    def __str__(self):
        return "{" + ",".join(str(h) for h in self.heights) + "}"


def is_primitive(sig: Signature) -> bool:
    """True iff the heights are jointly relatively prime."""
    return math.gcd(*sig.heights) == 1


def is_trivial(sig: Signature) -> bool:
    """True iff the signature is exactly {1}."""
    return sig.heights == (1,)


def _require_usable(sig: Signature) -> None:
    if is_trivial(sig):
        raise SignatureError(f"signature {sig} is trivial")
    if not is_primitive(sig):
        raise SignatureError(f"signature {sig} is not primitive (gcd {math.gcd(*sig.heights)})")


def _reachable_table(heights, limit: int) -> list[bool]:
    """table[v] == True iff v is a nonnegative integer combination of heights, v <= limit."""
    table = [False] * (limit + 1)
    table[0] = True
    for h in heights:
        for v in range(h, limit + 1):
            if table[v - h]:
                table[v] = True
    return table


def _conductor(heights) -> int:
    """Least c such that every integer >= c is reachable; heights must be coprime."""
    if 1 in heights:
        return 0
    # Schur bound: the largest gap is below (min-1)*(max-1).
    bound = (min(heights) - 1) * (max(heights) - 1) + max(heights)
    table = _reachable_table(heights, bound)
    last_gap = 0
    for v in range(bound + 1):
        if not table[v]:
            last_gap = v
    return last_gap + 1


def _min_low_mass(m: int, h1: int, rest_table: list[bool]) -> int | None:
    """Minimal alpha_1*h_1 over all decompositions of m, or None if m is not decomposable."""
    a1 = 0
    while a1 * h1 <= m:
        if rest_table[m - a1 * h1]:
            return a1 * h1
        a1 += 1
    return None


def _scan_bound(sig: Signature, eps: Fraction) -> int:
    """Certified bound: every m beyond it admits a decomposition within the eps constraint.

    With g = gcd(h_2..h_n), any decomposition forces alpha_1*h_1 = m mod g (h_1 is
    invertible mod g), so the minimal alpha_1 is below g once the remainder clears
    the conductor of <h_2/g, ..., h_n/g>.  Beyond that point the low mass is at most
    (g-1)*h_1, a constant, while eps*m grows.
    """
    h1, rest = sig.heights[0], sig.heights[1:]
    g = math.gcd(*rest)
    cond = _conductor([h // g for h in rest])
    stable_from = (g - 1) * h1 + g * cond
    mass_cap = (g - 1) * h1
    constraint_from = int(mass_cap / eps) + 1 if mass_cap else 0
    return max(stable_from, constraint_from, 1)


def representation_threshold(sig: Signature, eps) -> int:
    """Least N such that every m >= N splits over sig with alpha_1*h_1 < eps*m (strict)."""
    eps = Fraction(eps)
    if eps <= 0:
        raise SignatureError(f"eps must be positive, got {eps}")
    _require_usable(sig)
    h1, rest = sig.heights[0], sig.heights[1:]
    bound = _scan_bound(sig, eps)
    rest_table = _reachable_table(rest, bound)
    worst = 0
    for m in range(1, bound + 1):
        mass = _min_low_mass(m, h1, rest_table)
        if mass is None or not (mass < eps * m):
            worst = m
    return worst + 1


@dataclass(frozen=True)
class HeightDecomposition:
    """m = sum over heights of count*height, with the low-height mass recorded."""

    counts: tuple[tuple[int, int], ...]  # (height, count), ascending heights
    total: int

    def __post_init__(self):
        if sum(h * c for h, c in self.counts) != self.total:
            raise ValueError("counts do not sum to the decomposed total")
        if any(c < 0 for _, c in self.counts):
            raise ValueError("negative multiplicity")

    def count(self, height: int) -> int:
        return dict(self.counts).get(height, 0)

    def as_dict(self) -> dict[int, int]:
        return {h: c for h, c in self.counts if c}

    def blocks_ascending(self) -> list[int]:
        """The decomposition spelled out as a list of heights, smallest first."""
        out = []
        for h, c in self.counts:
            out.extend([h] * c)
        return out


def _fill_greedy(rem: int, heights_desc: list[int]) -> dict[int, int] | None:
    """Write rem over heights, maximizing larger heights first. None if impossible."""
    if not heights_desc:
        return {} if rem == 0 else None
    h = heights_desc[0]
    smaller = heights_desc[1:]
    table = _reachable_table(smaller, rem) if smaller else None
    for c in range(rem // h, -1, -1):
        left = rem - c * h
        if smaller:
            if table[left]:
                sub = _fill_greedy(left, smaller)
                if sub is not None:
                    sub[h] = c
                    return sub
        elif left == 0:
            return {h: c}
    return None


def decompose_height(m: int, sig: Signature, eps) -> HeightDecomposition:
    """Split m over the signature with alpha_1*h_1 < eps*m.

    Tie-break: minimize the lowest-height count, then maximize counts of the
    larger heights from the top down.  Deterministic for fixed inputs.
    """
    eps = Fraction(eps)
    _require_usable(sig)
    if m < 1:
        raise InfeasibleDecomposition(m, sig.heights, eps * m)
    h1, rest = sig.heights[0], sig.heights[1:]
    rest_table = _reachable_table(rest, m)
    best = _min_low_mass(m, h1, rest_table)
    a1 = 0
    while Fraction(a1 * h1) < eps * m and a1 * h1 <= m:
        if rest_table[m - a1 * h1]:
            fill = _fill_greedy(m - a1 * h1, sorted(rest, reverse=True))
            assert fill is not None
            fill[h1] = a1
            counts = tuple((h, fill.get(h, 0)) for h in sig.heights)
            return HeightDecomposition(counts, m)
        a1 += 1
    raise InfeasibleDecomposition(m, sig.heights, eps * m, best=best)


def decompose_unbounded(sig: Signature) -> int:
    """Height used to cut a tower of unbounded height: the largest one.

    A singleton signature leaves no way to avoid its lowest height.
    """
    if len(sig) < 2:
        raise SignatureError(f"signature {sig} has a single height; cannot avoid it")
    return sig.heights[-1]
