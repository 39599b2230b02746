"""Class-one q-Whittaker polynomials and the q-deformed Toda chain layer.

P^{qW}_lam = P_lam(x; q, t=0) / Delta_q(lam), the t = 0 specialization taken
exactly at coefficient level.  Naming follows the source convention: H_r acts
on the partition argument, H^v_r on the x variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial

from .baxter_macdonald import _letters_qk, _torus_pair_kernel
from .diffops import apply_toda_dual_diffop
from .fields import QONLY, RatFunc
from .gammakit import qfactorial
from .laurent import LaurentSeries
from .macdonald import b_norm, macdonald_poly
from .partitions import Partition, PartitionFunction, interlaces
from .reports import Report
from .symfunc import (SymFunc, WeightKind, elementary_sym, equal_mod_q,
                      from_laurent, to_laurent, weight_delta)


@dataclass
class QWhittakerEntry:
    lam: Partition
    rank: int
    polynomial: SymFunc
    delta_q: RatFunc


def delta_q(lam: Partition, n: int) -> RatFunc:
    """Delta_q(lam) = prod_{i=1}^{n-1} (lam_i - lam_{i+1})_q!  (rank-sensitive)."""
    out = QONLY.one
    for i in range(1, n):
        out = out * qfactorial(lam.part(i) - lam.part(i + 1))
    return out


@lru_cache(maxsize=None)
def _qwhit_poly(lam_parts: tuple, n: int) -> SymFunc:
    lam = Partition(lam_parts)
    spec = macdonald_poly(lam, n).map_coeffs(lambda c: c.subs_t_zero(), QONLY)
    return spec.scale(QONLY.one / delta_q(lam, n))


def qwhit(lam: Partition, n: int) -> QWhittakerEntry:
    if lam.length > n:
        raise ValueError(f"partition {lam} longer than rank {n}")
    return QWhittakerEntry(lam, n, _qwhit_poly(lam.parts, n), delta_q(lam, n))


def qwhit_poly(lam: Partition, n: int) -> SymFunc:
    return _qwhit_poly(lam.parts, n)


# -- norms --------------------------------------------------------------------------


def qwhit_norm_alg(lam: Partition, n: int) -> RatFunc:
    """<P^qW, P^qW>_q = (lam_n)_q! / Delta_q(lam), exact."""
    return qfactorial(lam.part(n)) / delta_q(lam, n)


def qwhit_norm_torus_truncated(lam: Partition, n: int, K: int) -> RatFunc:
    """<P^qW, P^qW>'_q = Gamma_q(q)^(n-1) / Delta_q(lam) modulo q^(K+1).

    Gamma_q(q) = 1/(q;q)_inf enters with a POSITIVE power: both the direct
    constant-term evaluation and the t -> 0 limit of the Macdonald torus norm
    give Gamma_q(q)^(n-1), with only the consecutive-row Gamma factors
    surviving the specialization.
    """
    euler_inv = euler_factor_inverse(K)
    return (euler_inv ** (n - 1)).truncate_q(K) / delta_q(lam, n)


def qwhit_norms(lam: Partition, n: int, K: int) -> tuple:
    return (qwhit_norm_alg(lam, n), qwhit_norm_torus_truncated(lam, n, K))


# -- the dual pair of Toda Hamiltonians ------------------------------------------------


def toda_terms(r: int, lam: Partition, n: int) -> list:
    """H_r terms at the point lam: [(I, coeff)] with the adjacency rule.

    coeff = prod_k (1 - q^{lam_{i_k} - lam_{i_k + 1} + 1}) over selected rows i_k
    whose successor index i_{k+1} is not adjacent (i_{r+1} := n+1).
    """
    q = QONLY.gen("q")
    out = []
    for subset in combinations(range(1, n + 1), r):
        coeff = QONLY.one
        for pos, i in enumerate(subset):
            nxt = subset[pos + 1] if pos + 1 < len(subset) else n + 1
            if nxt - i != 1:
                coeff = coeff * (1 - q ** (lam.part(i) - lam.part(i + 1) + 1))
        out.append((subset, coeff))
    return out


def apply_toda(r: int, F: PartitionFunction, n: int) -> PartitionFunction:
    """q-Toda Hamiltonian H_r on a finitely supported partition function."""
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
        total = QONLY.zero
        for subset, coeff in toda_terms(r, lam, n):
            ps = list(lam.padded(n))
            for i in subset:
                ps[i - 1] += 1
            if any(ps[a] < ps[a + 1] for a in range(n - 1)):
                continue  # P^{qW} vanishes off the partition cone
            total = total + coeff * F(Partition(ps))
        if not total.is_zero:
            out[lam] = total
    return PartitionFunction(out, QONLY.zero)


def toda_eigen_check(lam: Partition, r: int, n: int) -> Report:
    """H_r on mu -> P^qW_mu(x) equals chi_r(x) = e_r(x) times P^qW_lam(x)."""
    lhs = SymFunc.zero(QONLY, n)
    for subset, coeff in toda_terms(r, lam, n):
        ps = list(lam.padded(n))
        for i in subset:
            ps[i - 1] += 1
        if any(ps[a] < ps[a + 1] for a in range(n - 1)):
            continue
        lhs = lhs + qwhit_poly(Partition(ps), n).scale(coeff)
    rhs = elementary_sym(QONLY, r, n) * qwhit_poly(lam, n)
    diff = lhs - rhs
    return Report(
        name="qwhittaker.toda_eigen",
        params={"lam": lam.parts, "r": r, "n": n},
        passed=diff.is_zero(),
        witness=None if diff.is_zero() else repr(diff),
    )


def apply_toda_dual(r: int, f: SymFunc) -> SymFunc:
    """H^v_r = sum_{|I|=r} prod_{i in I, j notin I} x_j/(x_j - x_i) T_I."""
    if f.field is not QONLY:
        raise ValueError("H^v acts on q-field polynomials")
    return apply_toda_dual_diffop(f, r)


def toda_dual_eigenvalue(lam: Partition, r: int, n: int) -> RatFunc:
    """q^(lam_{n+1-r} + ... + lam_n): the sum of the last r parts."""
    q = QONLY.gen("q")
    return q ** sum(lam.part(i) for i in range(n + 1 - r, n + 1))


def toda_dual_eigen_check(lam: Partition, r: int, n: int) -> Report:
    p = qwhit_poly(lam, n)
    diff = apply_toda_dual(r, p) - p.scale(toda_dual_eigenvalue(lam, r, n))
    return Report(
        name="qwhittaker.toda_dual_eigen",
        params={"lam": lam.parts, "r": r, "n": n},
        passed=diff.is_zero(),
        witness=None if diff.is_zero() else repr(diff),
    )


# -- Pieri and Cauchy ----------------------------------------------------------------


def qwhit_pieri_phi(mu: Partition, lam: Partition, n: int) -> RatFunc:
    """phi^q_{mu/lam}: Delta_q(mu) over the interlacing q-factorials; zero off cone."""
    if not interlaces(mu, lam):
        return QONLY.zero
    out = delta_q(mu, n) / qfactorial(mu.part(1) - lam.part(1))
    for i in range(1, n):
        out = out / qfactorial(lam.part(i) - mu.part(i + 1))
        out = out / qfactorial(mu.part(i + 1) - lam.part(i + 1))
    return out


def qwhit_pieri_check(m0: int, lam: Partition, n: int) -> Report:
    """P^qW_(m0) * P^qW_lam = sum phi^q_{mu/lam} P^qW_mu."""
    from .macdonald import pieri_mu_candidates

    lhs = qwhit_poly(Partition((m0,)), n) * qwhit_poly(lam, n)
    rhs = SymFunc.zero(QONLY, n)
    for mu in pieri_mu_candidates(lam, m0, n):
        phi = qwhit_pieri_phi(mu, lam, n)
        if not phi.is_zero:
            rhs = rhs + qwhit_poly(mu, n).scale(phi)
    diff = lhs - rhs
    return Report(
        name="qwhittaker.pieri",
        params={"m0": m0, "lam": lam.parts, "n": n},
        passed=diff.is_zero(),
        witness=None if diff.is_zero() else repr(diff),
    )


def qwhit_b(lam: Partition, n: int, m: int) -> RatFunc:
    """Cauchy coefficient for ranks (n, m): Delta_q^{(n)} Delta_q^{(m)} b_lam(q, 0).

    For n = m this is the printed Delta_q(lam)/(lam_n)_q!.
    """
    return delta_q(lam, n) * delta_q(lam, m) * b_norm(lam).subs_t_zero()


def qwhit_cauchy_check(n: int, m: int, D: int) -> Report:
    """prod Gamma_q(x_i y_j) = sum b^q_lam P^qW_lam(x) P^qW_lam(y) through degree D."""
    from .partitions import partitions_of

    F = QONLY
    nv = n + m
    kernel = LaurentSeries.one(F, nv)
    coeffs = [F.one / qfactorial(a) for a in range(D + 1)]
    for i in range(n):
        for j in range(m):
            terms = {}
            for a in range(D + 1):
                e = [0] * nv
                e[i] = a
                e[n + j] = a
                terms[tuple(e)] = coeffs[a]
            kernel = kernel.mul_truncated(LaurentSeries(F, nv, terms),
                                          total_cap=2 * D)
    sum_side = LaurentSeries.zero(F, nv)
    for d in range(D + 1):
        for lam in partitions_of(d, max_length=min(n, m)):
            px = to_laurent(qwhit_poly(lam, n)).promote(nv, 0)
            py = to_laurent(qwhit_poly(lam, m)).promote(nv, n)
            sum_side = sum_side + (px * py).scale(qwhit_b(lam, n, m))
    diff = kernel - sum_side
    witness = None
    for e, c in sorted(diff.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        xdeg = sum(e[:n])
        if xdeg <= D and not c.is_zero:
            witness = {"bidegree": [xdeg, sum(e[n:])], "monomial": list(e)}
            break
    return Report(
        name="qwhittaker.cauchy",
        params={"n": n, "m": m, "D": D},
        passed=witness is None,
        witness=witness,
    )


# -- Baxter operator (partition side) ---------------------------------------------------


def qwhit_baxter_apply(lam: Partition, n: int, M: int) -> list:
    """z-coefficients 0..M of Q_z on P^qW_lam: [z^m] = sum phi^q_{mu/lam} P^qW_mu."""
    from .macdonald import pieri_mu_candidates

    out = []
    for m in range(M + 1):
        acc = SymFunc.zero(QONLY, n)
        for mu in pieri_mu_candidates(lam, m, n):
            phi = qwhit_pieri_phi(mu, lam, n)
            if not phi.is_zero:
                acc = acc + qwhit_poly(mu, n).scale(phi)
        out.append(acc)
    return out


def qwhit_row_coeff(m: int, n: int) -> SymFunc:
    """[z^m] prod_i Gamma_q(z x_i): the normalized one-row slice g^q_m."""
    F = QONLY
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
                    F.one / qfactorial(a))
                nxt[c] = nxt[c] + from_laurent(F, n, to_laurent(prev) * mono)
        layers = nxt
    return layers[m]


def qwhit_baxter_action_check(lam: Partition, n: int, M: int) -> Report:
    got = qwhit_baxter_apply(lam, n, M)
    p = qwhit_poly(lam, n)
    first_bad = None
    for m in range(M + 1):
        if got[m] != qwhit_row_coeff(m, n) * p:
            first_bad = m
            break
    return Report(
        name="qwhittaker.baxter_action",
        params={"lam": lam.parts, "n": n, "M": M},
        passed=first_bad is None,
        witness=None if first_bad is None else {"z_order": first_bad},
    )


def qwhit_baxter_equation_check(n: int, M: int) -> Report:
    """D(-z) o Q_z = Q_{qz}: per z-order, sum_j (-1)^j e_j g^q_{m-j} = q^m g^q_m."""
    q = QONLY.gen("q")
    gs = [qwhit_row_coeff(m, n) for m in range(M + 1)]
    first_bad = None
    for m in range(M + 1):
        lhs = SymFunc.zero(QONLY, n)
        for j in range(min(m, n) + 1):
            sign = QONLY.one if j % 2 == 0 else -QONLY.one
            lhs = lhs + (elementary_sym(QONLY, j, n) * gs[m - j]).scale(sign)
        if lhs != gs[m].scale(q ** m):
            first_bad = m
            break
    return Report(
        name="qwhittaker.baxter_equation",
        params={"n": n, "M": M},
        passed=first_bad is None,
        witness=None if first_bad is None else {"z_order": first_bad},
    )


# -- dual Baxter operator (torus side) ---------------------------------------------------


def _letters_q_inf(n: int, K: int, field):
    """Alphabet {x_i q^j : 0 <= j <= K} realizing Gamma_q kernels mod q^(K+1)."""
    q = field.gen("q")
    out = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        for j in range(K + 1):
            out.append((tuple(e), q ** j))
    return out


def qwhit_dual_baxter_apply(f: SymFunc, gamma: int, K: int) -> SymFunc:
    """Torus operator with kernel prod (x_i y_i)^gamma Gamma_q(x_i y_j), mod q^(K+1).

    The measure carries the Euler normalization (q;q)_inf^(n-1)/n!, under which
    the stated eigenvalue 1/(lam_n - gamma)_q! is exact; the raw constant term
    produces an extra Gamma_q(q)^(n-1) (from the torus norms).
    """
    if f.field is not QONLY:
        raise ValueError("dual Baxter needs q-field input")
    n = f.rank
    delta = _qwhit_delta(n, K)
    G = delta.mul_truncated(to_laurent(f).invert_vars(), qmax=K)
    G = G.mul_monomial((gamma,) * n)
    res = _torus_pair_kernel(G, n, 0, QONLY,
                             letters=_letters_q_inf(n, K, QONLY), qmax=K)
    res = res.mul_monomial((gamma,) * n)
    norm = (euler_factor(K) ** (n - 1)).truncate_q(K)
    res = res.scale(norm / QONLY.from_int(factorial(n)))
    return from_laurent(QONLY, n, res.q_truncate(K))


@lru_cache(maxsize=None)
def _qwhit_delta(n: int, K: int) -> LaurentSeries:
    return weight_delta(WeightKind("qwhittaker", n, q_order=K))


def qwhit_dual_baxter_eigenvalue(lam: Partition, gamma: int, n: int) -> RatFunc:
    """L^v_gamma(lam) = 1/(lam_n - gamma)_q! for gamma <= lam_n, else 0."""
    if gamma > lam.part(n):
        return QONLY.zero
    return QONLY.one / qfactorial(lam.part(n) - gamma)


def qwhit_dual_baxter_action_check(lam: Partition, gamma: int, n: int, K: int) -> Report:
    p = qwhit_poly(lam, n)
    got = qwhit_dual_baxter_apply(p, gamma, K)
    want = p.scale(qwhit_dual_baxter_eigenvalue(lam, gamma, n))
    diff = got - want
    bad = None
    for mu, c in diff.coeffs.items():
        if not equal_mod_q(c, QONLY.zero, K):
            bad = {"partition": mu.parts, "coeff": c.pretty()}
            break
    return Report(
        name="qwhittaker.dual_baxter_action",
        params={"lam": lam.parts, "gamma": gamma, "n": n, "K": K},
        passed=bad is None,
        witness=bad,
    )


def qwhit_dual_baxter_equation_check(lam: Partition, gamma: int, n: int) -> Report:
    """{1 - q^{-gamma} H^v_1} o vQ_gamma = vQ_{gamma+1} on eigenvalues:

    (1 - q^{lam_n - gamma}) L^v_gamma(lam) = L^v_{gamma+1}(lam), exactly.
    """
    q = QONLY.gen("q")
    lhs = (1 - q ** (lam.part(n) - gamma)) * qwhit_dual_baxter_eigenvalue(lam, gamma, n)
    rhs = qwhit_dual_baxter_eigenvalue(lam, gamma + 1, n)
    eq = lhs == rhs
    return Report(
        name="qwhittaker.dual_baxter_equation",
        params={"lam": lam.parts, "gamma": gamma, "n": n},
        passed=eq,
        witness=None if eq else {"lhs": lhs.pretty(), "rhs": rhs.pretty()},
    )


# -- recursions ------------------------------------------------------------------------


def qwhit_recursion_sum(lam: Partition, n: int) -> SymFunc:
    """Sum-mode recursion: exact weighted sum over interlaced lower rows."""
    if n == 1:
        return SymFunc(QONLY, 1, {lam: QONLY.one})
    from .macdonald import _branch_mu_candidates

    acc = LaurentSeries.zero(QONLY, n)
    for mu in _branch_mu_candidates(lam, n):
        coeff = delta_q(mu, n - 1)
        for i in range(1, n):
            coeff = coeff / qfactorial(lam.part(i) - mu.part(i))
            coeff = coeff / qfactorial(mu.part(i) - lam.part(i + 1))
        sub = to_laurent(qwhit_recursion_sum(mu, n - 1)).promote(n, 0)
        e_last = [0] * n
        e_last[n - 1] = lam.weight - mu.weight
        acc = acc + sub.mul_monomial(tuple(e_last), coeff)
    return from_laurent(QONLY, n, acc)


def euler_factor_inverse(K: int) -> RatFunc:
    """(q;q)_inf^{-1} = Gamma_q(q) as a truncated series: sum p(j) q^j mod q^(K+1)."""
    parts = [0] * (K + 1)
    parts[0] = 1
    for j in range(1, K + 1):
        for s in range(j, K + 1):
            parts[s] += parts[s - j]
    q = QONLY.gen("q")
    out = QONLY.zero
    for j, c in enumerate(parts):
        out = out + QONLY.from_int(c) * q ** j
    return out


def euler_factor(K: int) -> RatFunc:
    """(q;q)_inf truncated: prod_{j=1}^{K} (1-q^j) mod q^(K+1)."""
    q = QONLY.gen("q")
    out = QONLY.one
    for j in range(1, K + 1):
        out = (out * (1 - q ** j)).truncate_q(K)
    return out


def qwhit_recursion_torus(lam: Partition, f: SymFunc, K: int) -> SymFunc:
    """Torus-mode recursion mod q^(K+1): rank l -> l+1 with gamma = lam_{l+1}.

    The kernel integral reproduces Gamma_q(q)^(l-1) P^qW_lam; the Euler factors
    are cancelled (as truncated series) so the step is exactly normalized.
    """
    ell = f.rank
    n = ell + 1
    gamma = lam.part(n)
    if ell == 0:
        return SymFunc(QONLY, 1, {lam: QONLY.one})
    delta = _qwhit_delta(ell, K)
    G = delta.mul_truncated(to_laurent(f).invert_vars(), qmax=K)
    G = G.mul_monomial((gamma,) * ell)
    res = _torus_pair_kernel(G, n, 0, QONLY,
                             letters=_letters_q_inf(n, K, QONLY), qmax=K)
    res = res.mul_monomial((gamma,) * n)
    norm = (euler_factor(K) ** (ell - 1)).truncate_q(K)
    res = res.scale(norm / QONLY.from_int(factorial(ell)))
    return from_laurent(QONLY, n, res.q_truncate(K))


def qwhit_mixed_representation(lam: Partition, n: int, eps, K: int) -> SymFunc:
    """Compose sum-mode and torus-mode recursive steps; every array agrees
    with the direct construction (mod q^(K+1) when any torus step appears)."""
    eps = tuple(eps)
    if len(eps) != n - 1:
        raise ValueError("eps must have length n-1")
    cache = {}

    def build(target: Partition, rank: int) -> SymFunc:
        key = (target, rank)
        if key in cache:
            return cache[key]
        if rank == 1:
            out = SymFunc(QONLY, 1, {target: QONLY.one})
        else:
            step = eps[rank - 2]
            if step == "II":
                from .macdonald import _branch_mu_candidates

                acc = LaurentSeries.zero(QONLY, rank)
                for mu in _branch_mu_candidates(target, rank):
                    coeff = delta_q(mu, rank - 1)
                    for i in range(1, rank):
                        coeff = coeff / qfactorial(target.part(i) - mu.part(i))
                        coeff = coeff / qfactorial(mu.part(i) - target.part(i + 1))
                    sub = to_laurent(build(mu, rank - 1)).promote(rank, 0)
                    e_last = [0] * rank
                    e_last[rank - 1] = target.weight - mu.weight
                    acc = acc + sub.mul_monomial(tuple(e_last), coeff)
                out = from_laurent(QONLY, rank, acc)
            elif step == "I":
                prefix = Partition(target.padded(rank)[: rank - 1])
                out = qwhit_recursion_torus(target, build(prefix, rank - 1), K)
            else:
                raise ValueError(f"bad recursion type {step!r}")
        cache[key] = out
        return out

    return build(lam, n)
