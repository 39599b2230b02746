"""Jack polynomials: Sekiguchi operators, dual Hamiltonians, Pieri/Cauchy,
Baxter operators, recursions, and the explicit two-variable example.

Computational regimes split by kappa: symbolic Q(kappa) wherever Gamma slopes
pair (construction, Pieri, dual Baxter, branching), positive integer kappa for
torus-integral operators and unpaired integer-Gamma eigenvalues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .baxter_macdonald import _torus_pair_kernel
from .fields import KAPPA, RatFunc
from .gammakit import gamma_int_ratio, gamma_kappa_coeff, gamma_kappa_ratio
from .laurent import LaurentSeries, vandermonde
from .partitions import Partition, PartitionFunction, interlaces, partitions_of
from .reports import Report
from .symfunc import (SymFunc, WeightKind, elementary_sym, from_laurent,
                      monomial_sym, sp_kappa, to_laurent, weight_delta)


@dataclass
class JackEntry:
    lam: Partition
    rank: int
    polynomial: SymFunc


# -- construction -------------------------------------------------------------------


def _lex_key(lam: Partition):
    return lam.parts


def _alt_key(lam: Partition):
    return (-lam.length, lam.parts)


@lru_cache(maxsize=None)
def _jack_gs_family(weight: int, order: str) -> dict:
    key = {"lex": _lex_key, "alt": _alt_key}[order]
    n = max(weight, 1)
    out = {}
    done = []
    norms = []
    for lam in sorted(partitions_of(weight), key=key):
        p = monomial_sym(KAPPA, lam, n)
        for mu_poly, mu_norm in zip(done, norms):
            c = sp_kappa(monomial_sym(KAPPA, lam, n), mu_poly) / mu_norm
            if not c.is_zero:
                p = p - mu_poly.scale(c)
        out[lam] = p
        done.append(p)
        norms.append(sp_kappa(p, p))
    return out


def jack_gs(lam: Partition, n: int, order: str = "lex") -> JackEntry:
    if lam.length > n:
        raise ValueError(f"partition {lam} longer than rank {n}")
    return JackEntry(lam, n, _jack_gs_family(lam.weight, order)[lam].restrict(n))


def jack_poly(lam: Partition, n: int) -> SymFunc:
    return _jack_branch(lam.parts, n)


def jack_poly_at(lam: Partition, n: int, kappa: int) -> SymFunc:
    """P^(kappa)_lam with kappa evaluated at a positive integer (constants in Q)."""
    return jack_poly(lam, n).map_coeffs(
        lambda c: KAPPA.from_fraction(c.eval_fraction({"kappa": kappa})))


def kappa_limit_ratio(a: int, b: int, slope: int) -> RatFunc:
    """The kappa-degeneration of Gamma_{q,t/q}(t^s q^{a+1}) / Gamma_{q,t/q}(t^s q^{b+1}):

        Gamma(s kappa + a + 1) Gamma((s+1) kappa + b)
      / Gamma(s kappa + b + 1) Gamma((s+1) kappa + a),

    exact in Q(kappa) by rising factorials.
    """
    return gamma_kappa_ratio(a + 1, b + 1, slope) * gamma_kappa_ratio(b, a, slope + 1)


def jack_branching_psi(lam: Partition, mu: Partition, n: int) -> RatFunc:
    """Branching coefficient for P^(kappa)_lam(x_1..x_n) over P^(kappa)_mu.

    The kappa-degeneration of the Macdonald branching coefficient; the printed
    rank-raising kernel in the source coincides with the Pieri shape and does
    not reproduce the two-variable example, while this degeneration does
    (up to the example's stray global Gamma(kappa)).
    """
    if lam.length > n or mu.length > n - 1:
        raise ValueError("rank mismatch in branching coefficient")
    if not interlaces(lam, mu):
        return KAPPA.zero
    out = KAPPA.one
    ell = n - 1
    for i in range(1, ell + 1):
        for j in range(i, ell + 1):
            s = j - i
            out = out * kappa_limit_ratio(
                mu.part(i) - mu.part(j), lam.part(i) - mu.part(j), s)
            out = out * kappa_limit_ratio(
                lam.part(i) - lam.part(j + 1), mu.part(i) - lam.part(j + 1), s)
    return out


@lru_cache(maxsize=None)
def _jack_branch(lam_parts: tuple, n: int) -> SymFunc:
    from .macdonald import _branch_mu_candidates

    lam = Partition(lam_parts)
    if n == 1:
        return SymFunc(KAPPA, 1, {lam: KAPPA.one})
    acc = LaurentSeries.zero(KAPPA, n)
    for mu in _branch_mu_candidates(lam, n):
        psi = jack_branching_psi(lam, mu, n)
        if psi.is_zero:
            continue
        sub = to_laurent(_jack_branch(mu.parts, n - 1)).promote(n, 0)
        e_last = [0] * n
        e_last[n - 1] = lam.weight - mu.weight
        acc = acc + sub.mul_monomial(tuple(e_last), psi)
    return from_laurent(KAPPA, n, acc)


# -- Sekiguchi operators -----------------------------------------------------------------


def sekiguchi_apply(f: SymFunc, n: int) -> list:
    """D_n(X) f as a list of SymFunc coefficients of X^0..X^n.

    Antisymmetrization formula: sum over permutations of signed monomial
    multipliers x^{rho sigma} acting by degree shifts, divided exactly by the
    Vandermonde (zero remainder asserted).
    """
    if f.field is not KAPPA:
        raise ValueError("Sekiguchi operators act on kappa-field polynomials")
    k = KAPPA.gen("kappa")
    fl = to_laurent(f)
    rho = [n - 1 - i for i in range(n)]
    acc = [LaurentSeries.zero(KAPPA, n) for _ in range(n + 1)]
    for sigma in permutations(range(n)):
        sign = _perm_sign(sigma)
        shift = tuple(rho[sigma[i]] for i in range(n))
        for e, c in fl.terms.items():
            # prod_i (X + rho_{sigma(i)} kappa + e_i), expanded in X
            elem = [KAPPA.one]
            for i in range(n):
                root = k * rho[sigma[i]] + e[i]
                new = [KAPPA.zero] * (len(elem) + 1)
                for d, cc in enumerate(elem):
                    new[d] = new[d] + cc * root
                    new[d + 1] = new[d + 1] + cc
                elem = new
            target = tuple(a + b for a, b in zip(e, shift))
            for d, cc in enumerate(elem):
                val = cc * c
                if sign < 0:
                    val = -val
                if not val.is_zero:
                    mono = LaurentSeries(KAPPA, n, {target: val})
                    acc[d] = acc[d] + mono
    out = []
    for d in range(n + 1):
        out.append(from_laurent(KAPPA, n, acc[d].div_exact_vandermonde()))
    return out


def _perm_sign(sigma) -> int:
    sign = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j]:
                sign = -sign
    return sign


def sekiguchi_eigenvalue_coeffs(lam: Partition, n: int) -> list:
    """X-coefficients of prod_i (X + lam_i + rho_i kappa)."""
    k = KAPPA.gen("kappa")
    elem = [KAPPA.one]
    for i in range(1, n + 1):
        root = KAPPA.from_int(lam.part(i)) + k * (n - i)
        new = [KAPPA.zero] * (len(elem) + 1)
        for d, cc in enumerate(elem):
            new[d] = new[d] + cc * root
            new[d + 1] = new[d + 1] + cc
        elem = new
    return elem


def sekiguchi_eigen_check(lam: Partition, n: int) -> Report:
    p = jack_poly(lam, n)
    got = sekiguchi_apply(p, n)
    want = [p.scale(c) for c in sekiguchi_eigenvalue_coeffs(lam, n)]
    bad = None
    for d in range(n + 1):
        if got[d] != want[d]:
            bad = d
            break
    return Report(
        name="jack.sekiguchi_eigen",
        params={"lam": lam.parts, "n": n},
        passed=bad is None,
        witness=None if bad is None else {"X_power": bad},
    )


def hamiltonian_h1(f: SymFunc) -> SymFunc:
    """H_1 = sum_i (x_i d_i + rho_i kappa)."""
    n = f.rank
    k = KAPPA.gen("kappa")
    fl = to_laurent(f)
    out = LaurentSeries.zero(KAPPA, n)
    rho_sum = sum(n - 1 - i for i in range(n))
    for e, c in fl.terms.items():
        out = out + LaurentSeries(KAPPA, n, {e: c * (sum(e) + k * rho_sum)})
    return from_laurent(KAPPA, n, out)


def hamiltonian_h2(f: SymFunc) -> SymFunc:
    """The printed second Hamiltonian, with the pair terms cleared exactly."""
    n = f.rank
    k = KAPPA.gen("kappa")
    fl = to_laurent(f)
    rho = [n - 1 - i for i in range(n)]
    out = LaurentSeries.zero(KAPPA, n)
    for e, c in fl.terms.items():
        coeff = KAPPA.zero
        for i in range(n):
            for j in range(i + 1, n):
                coeff = coeff + (e[i] + k * rho[i]) * (e[j] + k * rho[j])
        for i in range(n):
            coeff = coeff + k * rho[i] * e[i]
        out = out + LaurentSeries(KAPPA, n, {e: c * coeff})
    # kappa * sum_{i<j} [x_i (x_i d_i f) - x_j (x_j d_j f)] / (x_j - x_i)
    for i in range(n):
        for j in range(i + 1, n):
            num = LaurentSeries.zero(KAPPA, n)
            for e, c in fl.terms.items():
                ei = list(e)
                ei[i] += 1
                num = num + LaurentSeries(KAPPA, n, {tuple(ei): c * e[i]})
                ej = list(e)
                ej[j] += 1
                num = num + LaurentSeries(KAPPA, n, {tuple(ej): -(c * e[j])})
            quot = num.div_exact_linear_diff(i, j)
            out = out + quot.scale(-k)
    return from_laurent(KAPPA, n, out)


# -- dual Hamiltonians ----------------------------------------------------------------


def jack_dual_terms(r: int, lam: Partition, n: int) -> list:
    """H^v_r coefficients at lam, as the kappa-degeneration of the Macdonald
    dual operator: prod over i in I, j notin I with j < i of

        ((i-j+1) kappa + lam_j - lam_i - 1) / ((i-j) kappa + lam_j - lam_i - 1)
      * ((i-j-1) kappa + lam_j - lam_i)     / ((i-j) kappa + lam_j - lam_i).

    Coefficients vanish exactly on shifts leaving the partition cone.
    """
    k = KAPPA.gen("kappa")
    out = []
    for subset in combinations(range(1, n + 1), r):
        sset = set(subset)
        coeff = KAPPA.one
        for i in subset:
            for j in range(1, i):
                if j in sset:
                    continue
                d = lam.part(j) - lam.part(i)
                coeff = coeff * (k * (i - j + 1) + d - 1) / (k * (i - j) + d - 1)
                coeff = coeff * (k * (i - j - 1) + d) / (k * (i - j) + d)
        out.append((subset, coeff))
    return out


def _shift_up(lam: Partition, subset, n: int):
    ps = list(lam.padded(n))
    for i in subset:
        ps[i - 1] += 1
    if any(ps[a] < ps[a + 1] for a in range(n - 1)):
        return None
    return Partition(ps)


def apply_jack_dual(r: int, F: PartitionFunction, n: int) -> PartitionFunction:
    """H^v_r on a partition function; shifts off the cone give zero (guarded T)."""
    candidates = set()
    for mu in F.support:
        for subset in combinations(range(1, n + 1), r):
            ps = list(mu.padded(n))
            for i in subset:
                ps[i - 1] -= 1
            if min(ps) >= 0 and all(ps[a] >= ps[a + 1] for a in range(n - 1)):
                candidates.add(Partition(ps))
    out = {}
    for lam in candidates:
        total = KAPPA.zero
        for subset, coeff in jack_dual_terms(r, lam, n):
            shifted = _shift_up(lam, subset, n)
            if shifted is None:
                continue
            total = total + coeff * F(shifted)
        if not total.is_zero:
            out[lam] = total
    return PartitionFunction(out, KAPPA.zero)


def jack_dual_eigen_check(lam: Partition, r: int, n: int) -> Report:
    lhs = SymFunc.zero(KAPPA, n)
    for subset, coeff in jack_dual_terms(r, lam, n):
        shifted = _shift_up(lam, subset, n)
        if shifted is None:
            continue
        lhs = lhs + jack_poly(shifted, n).scale(coeff)
    rhs = elementary_sym(KAPPA, r, n) * jack_poly(lam, n)
    diff = lhs - rhs
    return Report(
        name="jack.dual_eigen",
        params={"lam": lam.parts, "r": r, "n": n},
        passed=diff.is_zero(),
        witness=None if diff.is_zero() else repr(diff),
    )


# -- Pieri and Cauchy ---------------------------------------------------------------------


def jack_pieri_phi(mu: Partition, lam: Partition, n: int) -> RatFunc:
    """phi^(kappa)_{mu/lam}, exact in Q(kappa) on the interlacing cone, else 0."""
    if mu.length > n or lam.length > n:
        raise ValueError("jack_pieri_phi rank mismatch")
    if not interlaces(mu, lam):
        return KAPPA.zero
    out = KAPPA.one
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            s = j - i
            out = out * kappa_limit_ratio(
                mu.part(i) - mu.part(j), mu.part(i) - lam.part(j), s)
            if j < n:
                out = out * kappa_limit_ratio(
                    lam.part(i) - lam.part(j + 1), lam.part(i) - mu.part(j + 1), s)
    return out


def jack_b(lam: Partition) -> RatFunc:
    """b^(kappa)_lam: the box product (kappa-degeneration of the (q,t) norm)."""
    k = KAPPA.gen("kappa")
    conj = lam.conjugate()
    out = KAPPA.one
    for (i, j) in lam.cells():
        arm = lam.part(i) - j
        leg = conj.part(j) - i
        out = out * (k * (leg + 1) + arm) / (k * leg + arm + 1)
    return out


def jack_pieri_check(m0: int, lam: Partition, n: int) -> Report:
    from .macdonald import pieri_mu_candidates

    lhs = jack_poly(Partition((m0,)), n) * jack_poly(lam, n)
    rhs = SymFunc.zero(KAPPA, n)
    for mu in pieri_mu_candidates(lam, m0, n):
        phi = jack_pieri_phi(mu, lam, n)
        if not phi.is_zero:
            rhs = rhs + jack_poly(mu, n).scale(phi)
    rhs = rhs.scale(1 / jack_b(Partition((m0,))))
    diff = lhs - rhs
    return Report(
        name="jack.pieri",
        params={"m0": m0, "lam": lam.parts, "n": n},
        passed=diff.is_zero(),
        witness=None if diff.is_zero() else repr(diff),
    )


def jack_cauchy_check(n: int, m: int, D: int, kappa: int) -> Report:
    """prod (1-x_i y_j)^(-kappa) = sum b^(kappa)_lam P_lam(x) P_lam(y), degree <= D.

    The kernel is expanded independently as a kappa-fold product of geometric
    series at the given positive integer kappa.
    """
    F = KAPPA
    nv = n + m
    kernel = LaurentSeries.one(F, nv)
    for i in range(n):
        for j in range(m):
            geom_terms = {}
            for a in range(D + 1):
                e = [0] * nv
                e[i] = a
                e[n + j] = a
                geom_terms[tuple(e)] = F.one
            geom = LaurentSeries(F, nv, geom_terms)
            for _ in range(kappa):
                kernel = kernel.mul_truncated(geom, total_cap=2 * D)
    sum_side = LaurentSeries.zero(F, nv)
    for d in range(D + 1):
        for lam in partitions_of(d, max_length=min(n, m)):
            px = to_laurent(jack_poly_at(lam, n, kappa)).promote(nv, 0)
            py = to_laurent(jack_poly_at(lam, m, kappa)).promote(nv, n)
            b_val = F.from_fraction(jack_b(lam).eval_fraction({"kappa": kappa}))
            sum_side = sum_side + (px * py).scale(b_val)
    diff = kernel - sum_side
    witness = None
    for e, c in sorted(diff.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        xdeg = sum(e[:n])
        if xdeg <= D and not c.is_zero:
            witness = {"bidegree": [xdeg, sum(e[n:])], "monomial": list(e)}
            break
    return Report(
        name="jack.cauchy",
        params={"n": n, "m": m, "D": D, "kappa": kappa},
        passed=witness is None,
        witness=witness,
    )


# -- torus norm ----------------------------------------------------------------------------


def jack_torus_norm(lam: Partition, n: int, kappa: int) -> Fraction:
    """<P,P>'_kappa at integer kappa via the double product of integer-Gamma ratios."""
    out = Fraction(1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = lam.part(i) - lam.part(j)
            s = j - i
            out *= gamma_int_ratio(d + kappa * (s + 1), d + kappa * s)
            out *= gamma_int_ratio(d + 1 + kappa * (s - 1), d + 1 + kappa * s)
    return out


# -- Baxter operators -----------------------------------------------------------------------


def _letters_kappa(n: int, kappa: int, field):
    out = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        for _ in range(kappa):
            out.append((tuple(e), field.one))
    return out


def jack_baxter_apply(f: SymFunc, gamma: int, kappa: int, D: int = 64) -> SymFunc:
    """Q^(kappa)_gamma f: torus integral with the finite jack weight, exact.

    The kernel prod (1 - x_i y_j)^(-kappa) contributes complete homogeneous
    functions of the alphabet holding kappa copies of each x_i.
    """
    if f.field is not KAPPA:
        raise ValueError("jack Baxter needs kappa-field input")
    if f.degree() > D:
        raise ValueError("degree cap exceeded")
    n = f.rank
    delta = _jack_delta(n, kappa)
    G = delta * to_laurent(f).invert_vars()
    G = G.mul_monomial((gamma,) * n)
    res = _torus_pair_kernel(G, n, 0, KAPPA,
                             letters=_letters_kappa(n, kappa, KAPPA))
    res = res.mul_monomial((gamma,) * n)
    res = res.scale(KAPPA.from_fraction(Fraction(1, math.factorial(n))))
    return from_laurent(KAPPA, n, res)


@lru_cache(maxsize=None)
def _jack_delta(n: int, kappa: int) -> LaurentSeries:
    return weight_delta(WeightKind("jack", n, kappa=kappa))


def jack_baxter_eigenvalue(lam: Partition, gamma: int, n: int, kappa: int) -> RatFunc:
    """L_gamma(lam) = prod_i Gamma(lam_i - gamma + (rho_i + 1) kappa)
                             / Gamma(lam_i - gamma + rho_i kappa + 1),

    evaluated by rising factorials of length kappa - 1 (all factors positive
    inside the support); zero when gamma > lam_n.

    The support edge differs from the stated one (lam_n + kappa): the torus
    integral annihilates P_lam as soon as gamma exceeds lam_n, because the
    shifted weight leaves the dominant cone and Laurent orthogonality kills
    the pairing.  With this cut the difference equation below holds at every
    gamma; with the wider cut both fail at gamma = lam_n + kappa + 1.
    """
    if gamma > lam.part(n):
        return KAPPA.zero
    val = Fraction(1)
    for i in range(1, n + 1):
        base = lam.part(i) - gamma + (n - i) * kappa + 1
        for r in range(kappa - 1):
            val *= base + r
    return KAPPA.from_fraction(val)


def jack_baxter_action_check(lam: Partition, gamma: int, n: int, kappa: int) -> Report:
    p = jack_poly_at(lam, n, kappa)
    got = jack_baxter_apply(p, gamma, kappa)
    want = p.scale(jack_baxter_eigenvalue(lam, gamma, n, kappa))
    diff = got - want
    return Report(
        name="jack.baxter_action",
        params={"lam": lam.parts, "gamma": gamma, "n": n, "kappa": kappa},
        passed=diff.is_zero(),
        witness=None if diff.is_zero() else repr(diff),
    )


def jack_baxter_equation_check(lam: Partition, gamma: int, n: int, kappa: int) -> Report:
    """Spectral form, cross-multiplied to avoid dividing by vanishing factors:

    prod_i (kappa - gamma + lam_i + rho_i kappa) * L_gamma(lam)
      = prod_i (1 - gamma + lam_i + rho_i kappa) * L_{gamma-1}(lam).
    """
    lhs = jack_baxter_eigenvalue(lam, gamma, n, kappa)
    rhs = jack_baxter_eigenvalue(lam, gamma - 1, n, kappa)
    for i in range(1, n + 1):
        lhs = lhs * (kappa - gamma + lam.part(i) + (n - i) * kappa)
        rhs = rhs * (1 - gamma + lam.part(i) + (n - i) * kappa)
    eq = lhs == rhs
    return Report(
        name="jack.baxter_equation",
        params={"lam": lam.parts, "gamma": gamma, "n": n, "kappa": kappa},
        passed=eq,
        witness=None if eq else {"lhs": lhs.pretty(), "rhs": rhs.pretty()},
    )


def gamma_kappa_coeff_shifted(n: int, shift: int) -> RatFunc:
    """Coefficient of z^n in (1-z)^(-(kappa+shift)): rising factorial of kappa+shift."""
    k = KAPPA.gen("kappa")
    out = KAPPA.one
    for r in range(n):
        out = out * (k + shift + r)
    return out / KAPPA.from_int(math.factorial(n))


def jack_row_coeff(m: int, n: int, shift: int = 0) -> SymFunc:
    """[z^m] prod_i (1 - z x_i)^(-(kappa+shift)), symbolic in kappa."""
    F = KAPPA
    layers = [SymFunc.zero(F, n) for _ in range(m + 1)]
    layers[0] = SymFunc.one(F, n)
    for i in range(n):
        nxt = [SymFunc.zero(F, n) for _ in range(m + 1)]
        for c in range(m + 1):
            for a in range(c + 1):
                prev = layers[c - a]
                if prev.is_zero():
                    continue
                mono = LaurentSeries.monomial(
                    F, tuple(a if v == i else 0 for v in range(n)),
                    gamma_kappa_coeff_shifted(a, shift))
                nxt[c] = nxt[c] + from_laurent(F, n, to_laurent(prev) * mono)
        layers = nxt
    return layers[m]


def jack_dual_baxter_apply(lam: Partition, n: int, M: int) -> list:
    """z-coefficients 0..M: [z^m] = sum over interlaced mu of phi^(kappa) P_mu."""
    from .macdonald import pieri_mu_candidates

    out = []
    for m in range(M + 1):
        acc = SymFunc.zero(KAPPA, n)
        for mu in pieri_mu_candidates(lam, m, n):
            phi = jack_pieri_phi(mu, lam, n)
            if not phi.is_zero:
                acc = acc + jack_poly(mu, n).scale(phi)
        out.append(acc)
    return out


def jack_dual_baxter_action_check(lam: Partition, n: int, M: int) -> Report:
    got = jack_dual_baxter_apply(lam, n, M)
    p = jack_poly(lam, n)
    first_bad = None
    for m in range(M + 1):
        if got[m] != jack_row_coeff(m, n) * p:
            first_bad = m
            break
    return Report(
        name="jack.dual_baxter_action",
        params={"lam": lam.parts, "n": n, "M": M},
        passed=first_bad is None,
        witness=None if first_bad is None else {"z_order": first_bad},
    )


def jack_dual_baxter_equation_check(n: int, M: int) -> Report:
    """D^v(-z) o vQ^(kappa)_z = vQ^(kappa-1)_z, per z-order in Q(kappa):

    sum_j (-1)^j e_j h^(kappa)_{m-j} = h^(kappa-1)_m.
    """
    first_bad = None
    for m in range(M + 1):
        lhs = SymFunc.zero(KAPPA, n)
        for j in range(min(m, n) + 1):
            sign = KAPPA.one if j % 2 == 0 else -KAPPA.one
            lhs = lhs + (elementary_sym(KAPPA, j, n) * jack_row_coeff(m - j, n)).scale(sign)
        if lhs != jack_row_coeff(m, n, shift=-1):
            first_bad = m
            break
    return Report(
        name="jack.dual_baxter_equation",
        params={"n": n, "M": M},
        passed=first_bad is None,
        witness=None if first_bad is None else {"z_order": first_bad},
    )


# -- recursions and the explicit example -----------------------------------------------------


def jack_recursion_sum(lam: Partition, n: int) -> SymFunc:
    """Sum-mode recursion with the branching coefficients; symbolic in kappa."""
    return jack_poly(lam, n)


def jack_recursion_integral(lam_last: int, f: SymFunc, kappa: int) -> SymFunc:
    """Integral-mode rank-raising recursion at integer kappa, exactly normalized.

    As in the Macdonald layer, the printed kernel produces the rank-l Baxter
    scalar b^(kappa)_nu <P_nu, P_nu>'; it is divided out.
    """
    from .baxter_macdonald import leading_partition

    if f.field is not KAPPA:
        raise ValueError("integral recursion needs kappa-field input")
    ell = f.rank
    n = ell + 1
    if ell == 0:
        return SymFunc(KAPPA, 1, {Partition((lam_last,)): KAPPA.one})
    lam_prime = leading_partition(f)
    if lam_prime.part(ell) < lam_last:
        raise ValueError("lam_last must interlace below the input's leading row")
    nu = lam_prime.shifted(-lam_last, ell)

    delta = _jack_delta(ell, kappa)
    G = delta * to_laurent(f).invert_vars()
    G = G.mul_monomial((lam_last,) * ell)
    res = _torus_pair_kernel(G, n, 0, KAPPA,
                             letters=_letters_kappa(n, kappa, KAPPA))
    res = res.mul_monomial((lam_last,) * n)
    norm = Fraction(math.factorial(ell)) \
        * jack_b(nu).eval_fraction({"kappa": kappa}) \
        * jack_torus_norm(nu, ell, kappa)
    res = res.scale(KAPPA.from_fraction(Fraction(1) / norm))
    return from_laurent(KAPPA, n, res)


def jack_mixed_representation(lam: Partition, n: int, eps, kappa: int) -> SymFunc:
    """Compose sum-mode and integral-mode recursive steps at integer kappa."""
    from .macdonald import _branch_mu_candidates

    eps = tuple(eps)
    if len(eps) != n - 1:
        raise ValueError("eps must have length n-1")
    cache = {}

    def build(target: Partition, rank: int) -> SymFunc:
        key = (target, rank)
        if key in cache:
            return cache[key]
        if rank == 1:
            out = SymFunc(KAPPA, 1, {target: KAPPA.one})
        else:
            step = eps[rank - 2]
            if step == "II":
                acc = LaurentSeries.zero(KAPPA, rank)
                for mu in _branch_mu_candidates(target, rank):
                    psi = jack_branching_psi(target, mu, rank)
                    if psi.is_zero:
                        continue
                    psi = KAPPA.from_fraction(psi.eval_fraction({"kappa": kappa}))
                    sub = to_laurent(build(mu, rank - 1)).promote(rank, 0)
                    e_last = [0] * rank
                    e_last[rank - 1] = target.weight - mu.weight
                    acc = acc + sub.mul_monomial(tuple(e_last), psi)
                out = from_laurent(KAPPA, rank, acc)
            elif step == "I":
                prefix = Partition(target.padded(rank)[: rank - 1])
                out = jack_recursion_integral(target.part(rank),
                                              build(prefix, rank - 1), kappa)
            else:
                raise ValueError(f"bad recursion type {step!r}")
        cache[key] = out
        return out

    return build(lam, n)


def gl2_example(lam1: int, lam2: int) -> SymFunc:
    """The explicit two-variable sum, normalized into Q(kappa).

    The printed sum equals Gamma(kappa) times this value; the Gamma(kappa) is
    stripped via Gamma(kappa+a)Gamma(kappa+b)/Gamma(kappa+a+b) =
    Gamma(kappa) (kappa)_a (kappa)_b / (kappa)_{a+b}, so the result is an
    exact rational function comparable with the monic Jack polynomial.
    """
    if lam1 < lam2:
        raise ValueError("needs lam1 >= lam2")
    d = lam1 - lam2
    out = LaurentSeries.zero(KAPPA, 2)
    for mu in range(lam2, lam1 + 1):
        a, b = lam1 - mu, mu - lam2
        coeff = gamma_kappa_ratio(a, 0, 1) * gamma_kappa_ratio(b, 0, 1) \
            / gamma_kappa_ratio(d, 0, 1)
        coeff = coeff * KAPPA.from_fraction(
            Fraction(math.factorial(d), math.factorial(a) * math.factorial(b)))
        out = out + LaurentSeries(KAPPA, 2, {(mu, lam1 + lam2 - mu): coeff})
    return from_laurent(KAPPA, 2, out)
