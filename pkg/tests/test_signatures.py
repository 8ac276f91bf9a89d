"""Signature arithmetic against an independent brute-force oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adic.errors import InfeasibleDecomposition, SignatureError
from adic.signatures import (
    HeightDecomposition,
    Signature,
    decompose_height,
    decompose_unbounded,
    is_primitive,
    is_trivial,
    representation_threshold,
)


# -- oracle ------------------------------------------------------------------
# Exhaustive search, written independently of the implementation: enumerate
# every decomposition of m and keep the minimal low-height mass.


def oracle_min_low_mass(m, heights):
    best = None

    def rec(rem, idx, low_mass):
        nonlocal best
        if idx == len(heights):
            if rem == 0 and (best is None or low_mass < best):
                best = low_mass
            return
        h = heights[idx]
        for count in range(rem // h + 1):
            rec(rem - count * h, idx + 1, low_mass + (count * h if idx == 0 else 0))

    rec(m, 0, 0)
    return best


def oracle_threshold(heights, eps, scan_to):
    worst = 0
    for m in range(1, scan_to + 1):
        mass = oracle_min_low_mass(m, heights)
        if mass is None or not (mass < eps * m):
            worst = m
    return worst + 1


# A faster oracle variant for the wide acceptance scan (same definition,
# representability precomputed once).
def oracle_threshold_fast(heights, eps, scan_to):
    h1, rest = heights[0], heights[1:]
    table = [False] * (scan_to + 1)
    table[0] = True
    for h in rest:
        for v in range(h, scan_to + 1):
            if table[v - h]:
                table[v] = True
    worst = 0
    for m in range(1, scan_to + 1):
        mass = None
        a1 = 0
        while a1 * h1 <= m:
            if table[m - a1 * h1]:
                mass = a1 * h1
                break
            a1 += 1
        if mass is None or not (mass < eps * m):
            worst = m
    return worst + 1


# -- predicates --------------------------------------------------------------


def test_primitive_examples():
    assert is_primitive(Signature.of(2, 3))
    assert not is_primitive(Signature.of(2, 4))
    assert is_primitive(Signature.of(6, 10, 15))


def test_trivial_examples():
    assert is_trivial(Signature.of(1))
    assert not is_trivial(Signature.of(2, 3))
    assert not is_trivial(Signature.of(1, 2))


def test_signature_validation():
    with pytest.raises(SignatureError):
        Signature(())
    with pytest.raises(SignatureError):
        Signature((3, 2))
    with pytest.raises(SignatureError):
        Signature((0, 2))
    assert Signature.of(3, 2, 3).heights == (2, 3)


# -- threshold ---------------------------------------------------------------


def test_threshold_spot_values():
    # Frozen from the exhaustive oracle.
    assert oracle_threshold([2, 3], Fraction(1, 10), 600) == 41
    assert representation_threshold(Signature.of(2, 3), Fraction(1, 10)) == 41
    assert oracle_threshold([2, 3], Fraction(1), 100) == 5
    assert representation_threshold(Signature.of(2, 3), Fraction(1)) == 5
    assert oracle_threshold([3, 5], Fraction(9, 10), 200) == 13
    assert representation_threshold(Signature.of(3, 5), Fraction(9, 10)) == 13


def test_threshold_oracle_matrix():
    sigs = [(2, 3), (3, 5), (2, 5), (3, 4, 5)]
    epses = [Fraction(1, 20), Fraction(1, 10), Fraction(1, 2), Fraction(1)]
    for hs in sigs:
        for eps in epses:
            got = representation_threshold(Signature.of(*hs), eps)
            want = oracle_threshold(hs, eps, 400)
            assert got == want, (hs, eps)


def test_threshold_requires_usable_signature():
    with pytest.raises(SignatureError):
        representation_threshold(Signature.of(1), Fraction(1, 2))
    with pytest.raises(SignatureError):
        representation_threshold(Signature.of(2, 4), Fraction(1, 2))
    with pytest.raises(SignatureError):
        representation_threshold(Signature.of(2, 3), Fraction(0))


@given(
    st.sets(st.integers(min_value=2, max_value=9), min_size=2, max_size=3),
    st.fractions(min_value=Fraction(1, 8), max_value=Fraction(3, 2)),
)
@settings(max_examples=40, deadline=None)
def test_threshold_matches_oracle_random(heights, eps):
    import math

    hs = sorted(heights)
    if math.gcd(*hs) != 1:
        return
    sig = Signature.of(*hs)
    assert representation_threshold(sig, eps) == oracle_threshold(hs, eps, 900)


def test_threshold_antitone_in_eps():
    sig = Signature.of(2, 3)
    values = [
        representation_threshold(sig, e)
        for e in [Fraction(1, 20), Fraction(1, 10), Fraction(1, 2), Fraction(1), Fraction(2)]
    ]
    assert values == sorted(values, reverse=True)


# -- decompositions ----------------------------------------------------------


def test_decompose_examples():
    d = decompose_height(41, Signature.of(2, 3), Fraction(1, 10))
    assert d.as_dict() == {2: 1, 3: 13}
    d = decompose_height(6, Signature.of(2, 3), Fraction(1))
    assert d.as_dict() == {3: 2}
    d = decompose_height(42, Signature.of(2, 3), Fraction(1, 10))
    assert d.as_dict() == {3: 14}


def test_decompose_minimizes_low_mass():
    sig = Signature.of(2, 3)
    for m in range(41, 80):
        d = decompose_height(m, sig, Fraction(1, 10))
        assert d.total == m
        assert d.count(2) * 2 == oracle_min_low_mass(m, [2, 3])
        assert d.count(2) * 2 < Fraction(1, 10) * m


def test_decompose_infeasible():
    with pytest.raises(InfeasibleDecomposition):
        decompose_height(4, Signature.of(2, 3), Fraction(1))  # 4 = 2+2 forces mass 4
    with pytest.raises(InfeasibleDecomposition):
        decompose_height(1, Signature.of(2, 3), Fraction(1))  # not representable


def test_decomposition_invariants_random():
    sig = Signature.of(3, 4, 5)
    eps = Fraction(1, 2)
    start = representation_threshold(sig, eps)
    for m in range(start, start + 60):
        d = decompose_height(m, sig, eps)
        assert sum(h * c for h, c in d.counts) == m
        assert d.count(3) * 3 < eps * m
        blocks = d.blocks_ascending()
        assert sum(blocks) == m
        assert all(b in sig.heights for b in blocks)


def test_blocks_ascending_order():
    d = HeightDecomposition(((2, 2), (3, 1)), 7)
    assert d.blocks_ascending() == [2, 2, 3]


def test_decompose_unbounded():
    assert decompose_unbounded(Signature.of(2, 3)) == 3
    assert decompose_unbounded(Signature.of(3, 5)) == 5
    with pytest.raises(SignatureError):
        decompose_unbounded(Signature.of(2))
