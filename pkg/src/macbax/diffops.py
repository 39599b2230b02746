"""Subset difference operators applied by clearing to the Vandermonde denominator.

Both operator families below sum rational-coefficient q-shift terms over
r-element variable subsets.  Each term's denominator divides the Vandermonde
prod_{a<b} (x_a - x_b); the sum of cleared numerators is divided back exactly,
and a nonzero remainder is a hard error (the sum of terms is always polynomial
on symmetric inputs).
"""

from __future__ import annotations

from itertools import combinations

from .laurent import LaurentSeries, vandermonde
from .symfunc import SymFunc, from_laurent, to_laurent


def _cofactor(field, n: int, subset: frozenset) -> tuple:
    """(sign-free cofactor poly, separated-pair count helper data).

    Returns prod over unordered pairs {a<b} NOT separated by the subset of
    (x_a - x_b), together with the list of separated ordered pairs.
    """
    cof = LaurentSeries.one(field, n)
    separated = []
    for a in range(n):
        for b in range(a + 1, n):
            if (a in subset) == (b in subset):
                e1 = [0] * n
                e1[a] = 1
                e2 = [0] * n
                e2[b] = 1
                cof = cof * LaurentSeries(field, n, {tuple(e1): field.one,
                                                     tuple(e2): -field.one})
            else:
                separated.append((a, b))
    return cof, separated


def apply_macdonald_diffop(f: SymFunc, r: int) -> SymFunc:
    """M_r f = t^{r(r-1)/2} sum_{|I|=r} prod_{i in I, j not in I} (t x_i - x_j)/(x_i - x_j) T_I f."""
    n = f.rank
    if not (1 <= r <= n):
        raise ValueError(f"operator index r={r} outside 1..{n}")
    F = f.field
    t = F.gen("t")
    fl = to_laurent(f)
    V = vandermonde(F, n)
    acc = LaurentSeries.zero(F, n)
    for subset in map(frozenset, combinations(range(n), r)):
        shifted = fl
        for i in subset:
            shifted = shifted.q_shift(i)
        cof, separated = _cofactor(F, n, subset)
        # prod_{i in I, j notin I} (x_i - x_j) = sign * prod_{separated a<b} (x_a - x_b),
        # sign = (-1)^{# separated pairs with the subset element second}
        sign = 1
        numer = LaurentSeries.one(F, n)
        for a, b in separated:
            i, j = (a, b) if a in subset else (b, a)
            if i == b:
                sign = -sign
            e_i = [0] * n
            e_i[i] = 1
            e_j = [0] * n
            e_j[j] = 1
            numer = numer * LaurentSeries(F, n, {tuple(e_i): t, tuple(e_j): -F.one})
        term = numer * cof * shifted
        if sign < 0:
            term = -term
        acc = acc + term
    res = acc.div_exact_vandermonde()
    res = res.scale(t ** (r * (r - 1) // 2))
    return from_laurent(F, n, res)


def apply_toda_dual_diffop(f: SymFunc, r: int) -> SymFunc:
    """H^v_r f = sum_{|I|=r} prod_{i in I, j notin I} x_j/(x_j - x_i) T_I f."""
    n = f.rank
    if not (1 <= r <= n):
        raise ValueError(f"operator index r={r} outside 1..{n}")
    F = f.field
    fl = to_laurent(f)
    acc = LaurentSeries.zero(F, n)
    for subset in map(frozenset, combinations(range(n), r)):
        shifted = fl
        for i in subset:
            shifted = shifted.q_shift(i)
        cof, separated = _cofactor(F, n, subset)
        # prod_{i in I, j notin I} (x_j - x_i) = sign * prod_{separated a<b} (x_a - x_b),
        # where the ordered factor (x_j - x_i) equals +(x_a - x_b) iff j = a.
        sign = 1
        numer = LaurentSeries.one(F, n)
        for a, b in separated:
            i, j = (a, b) if a in subset else (b, a)
            if j == b:
                sign = -sign
            e_j = [0] * n
            e_j[j] = 1
            numer = numer * LaurentSeries.monomial(F, tuple(e_j))
        term = numer * cof * shifted
        if sign < 0:
            term = -term
        acc = acc + term
    res = acc.div_exact_vandermonde()
    return from_laurent(F, n, res)
