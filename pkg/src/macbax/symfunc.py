"""Monomial and power-sum bases, three scalar-product families, torus weights.

SymFunc stores a symmetric polynomial of fixed rank n as a finitely supported
map Partition -> RatFunc in the monomial basis m_lambda.  The algebraic scalar
products are evaluated through the power-sum basis in the stable ring (the
expansion rank is raised to the weight when it exceeds the variable count, so
that inner products of Macdonald-type families remain exact at every weight).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .fields import KAPPA, QONLY, QT, ParamField, RatFunc
from .laurent import LaurentSeries


class StableRangeError(ValueError):
    """Degree exceeds the rank: the requested basis is not independent."""


# -- monomial machinery ----------------------------------------------------------


@lru_cache(maxsize=None)
def _mono_perms(padded: tuple) -> tuple:
    """All distinct permutations of a padded exponent tuple."""
    return tuple(sorted(set(permutations(padded))))


class SymFunc:
    __slots__ = ("field", "rank", "coeffs")

    def __init__(self, field: ParamField, rank: int, coeffs: dict | None = None):
        self.field = field
        self.rank = rank
        self.coeffs = {}
        if coeffs:
            for lam, c in coeffs.items():
                if c.is_zero:
                    continue
                if lam.length > rank:
                    raise ValueError(f"partition {lam} too long for rank {rank}")
                self.coeffs[lam] = c

    @classmethod
    def zero(cls, field, rank):
        return cls(field, rank)

    @classmethod
    def one(cls, field, rank):
        from .partitions import Partition

        return cls(field, rank, {Partition(): field.one})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((lam.weight for lam in self.coeffs), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, SymFunc)
            and self.rank == other.rank
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        bits = [f"({c.pretty()})*m{lam.parts}" for lam, c in sorted(
            self.coeffs.items(), key=lambda kv: kv[0].sort_key())]
        return "SymFunc[" + " + ".join(bits[:6]) + (" + ..." if len(bits) > 6 else "") + "]"

    def coefficient(self, lam) -> RatFunc:
        return self.coeffs.get(lam, self.field.zero)

    def _check(self, other):
        if self.rank != other.rank or self.field is not other.field:
            raise ValueError("incompatible symmetric functions")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            s = out.get(lam, self.field.zero) + c
            if s.is_zero:
                out.pop(lam, None)
            else:
                out[lam] = s
        return SymFunc(self.field, self.rank, out)

    def __sub__(self, other):
        return self + other.scale(-self.field.one)

    def scale(self, c: RatFunc):
        if c.is_zero:
            return SymFunc.zero(self.field, self.rank)
        return SymFunc(self.field, self.rank, {l: c * v for l, v in self.coeffs.items()})

    def __mul__(self, other):
        self._check(other)
        return from_laurent(self.field, self.rank, to_laurent(self) * to_laurent(other))

    def restrict(self, rank: int) -> "SymFunc":
        """Set x_{rank+1} = ... = 0: drop monomial terms longer than rank."""
        return SymFunc(self.field, rank,
                       {l: c for l, c in self.coeffs.items() if l.length <= rank})

    def map_coeffs(self, fn, field: ParamField | None = None) -> "SymFunc":
        return SymFunc(field or self.field, self.rank,
                       {l: fn(c) for l, c in self.coeffs.items()})

    def eval_points(self, points) -> RatFunc:
        """Evaluate at RatFunc points (length = rank)."""
        if len(points) != self.rank:
            raise ValueError("point count must equal the rank")
        total = self.field.zero
        for lam, c in self.coeffs.items():
            msum = self.field.zero
            for e in _mono_perms(lam.padded(self.rank)):
                term = self.field.one
                for p, a in zip(points, e):
                    if a:
                        term = term * p ** a
                msum = msum + term
            total = total + c * msum
        return total


def to_laurent(f: SymFunc) -> LaurentSeries:
    terms = {}
    for lam, c in f.coeffs.items():
        for e in _mono_perms(lam.padded(f.rank)):
            terms[e] = c
    return LaurentSeries(f.field, f.rank, terms)


def from_laurent(field: ParamField, rank: int, ls: LaurentSeries, check: bool = False) -> SymFunc:
    """Collect a symmetric Laurent polynomial back into the monomial basis."""
    from .partitions import Partition

    if check and not ls.is_symmetric():
        raise ValueError("polynomial is not symmetric")
    out = {}
    for e, c in ls.terms.items():
        if any(x < 0 for x in e):
            raise ValueError("negative exponents cannot be collected into m-basis")
        if all(e[i] >= e[i + 1] for i in range(len(e) - 1)):
            out[Partition(e)] = c
    return SymFunc(field, rank, out)


def monomial_sym(field: ParamField, lam, n: int) -> SymFunc:
    if lam.length > n:
        raise ValueError(f"monomial_sym: partition {lam} longer than rank {n}")
    return SymFunc(field, n, {lam: field.one})


def elementary_sym(field: ParamField, r: int, n: int) -> SymFunc:
    """e_r = m_(1^r)."""
    from .partitions import Partition

    if r == 0:
        return SymFunc.one(field, n)
    if r > n:
        return SymFunc.zero(field, n)
    return monomial_sym(field, Partition((1,) * r), n)


@lru_cache(maxsize=None)
def _power_expansion(lam_parts: tuple, n: int) -> tuple:
    """p_lambda in the m-basis at rank n, as ((partition_parts, int_coeff), ...)."""
    from .partitions import Partition

    exp = {(0,) * n: 1}
    for part in lam_parts:
        nxt = {}
        for e, c in exp.items():
            for i in range(n):
                ne = list(e)
                ne[i] += part
                ne = tuple(ne)
                nxt[ne] = nxt.get(ne, 0) + c
        exp = nxt
    out = []
    for e, c in exp.items():
        if all(e[i] >= e[i + 1] for i in range(n - 1)):
            out.append((Partition(e).parts, c))
    return tuple(out)


def power_sum(field: ParamField, lam, n: int) -> SymFunc:
    """p_lambda = prod p_{lambda_i} expanded into the monomial basis."""
    from .partitions import Partition

    coeffs = {}
    for parts, c in _power_expansion(tuple(lam.parts), n):
        coeffs[Partition(parts)] = field.from_int(c)
    return SymFunc(field, n, coeffs)


def z_lambda(lam) -> int:
    mults = {}
    for p in lam.parts:
        mults[p] = mults.get(p, 0) + 1
    out = 1
    for p, m in mults.items():
        out *= p ** m * math.factorial(m)
    return out


def _power_coeffs_weight(field, coeffs: dict, d: int, exp_rank: int) -> dict:
    """Solve f = sum c_lambda p_lambda for one weight-d homogeneous component."""
    from .partitions import Partition, partitions_of

    residual = dict(coeffs)
    out = {}
    for lam in sorted(partitions_of(d), key=lambda p: p.parts):
        if not residual:
            break
        cur = residual.get(lam)
        if cur is None:
            continue
        expansion = _power_expansion(tuple(lam.parts), exp_rank)
        diag = next(c for parts, c in expansion if parts == lam.parts)
        c = cur / field.from_int(diag)
        out[lam] = c
        for parts, icoeff in expansion:
            mu = Partition(parts)
            s = residual.get(mu, field.zero) - c * field.from_int(icoeff)
            if s.is_zero:
                residual.pop(mu, None)
            else:
                residual[mu] = s
    if residual:
        raise ArithmeticError("power-sum solve left a nonzero residual")
    return out


def to_power_basis(f: SymFunc) -> dict:
    """Coefficients c_lambda with f = sum c_lambda p_lambda at rank n.

    Only valid in the stable range degree <= rank, where the p_lambda are
    linearly independent.
    """
    if f.degree() > f.rank:
        raise StableRangeError(
            f"degree {f.degree()} exceeds rank {f.rank}: power sums are not independent")
    out = {}
    for d, comp in _split_by_weight(f).items():
        out.update(_power_coeffs_weight(f.field, comp, d, f.rank))
    return out


def _split_by_weight(f: SymFunc) -> dict:
    by_w = {}
    for lam, c in f.coeffs.items():
        by_w.setdefault(lam.weight, {})[lam] = c
    return by_w


def _stable_power_coeffs(f: SymFunc) -> dict:
    """Power-sum coefficients of the stable (infinite-rank) lift of f.

    The monomial coefficient dict of f is read as an element of the universal
    ring; each weight component is expanded at rank = weight, where the basis
    is unconditionally independent.
    """
    out = {}
    for d, comp in _split_by_weight(f).items():
        out.update(_power_coeffs_weight(f.field, comp, d, max(d, 1)))
    return out


# -- the three algebraic scalar products --------------------------------------------


def sp_qt(f: SymFunc, g: SymFunc) -> RatFunc:
    """<p_lam, p_mu> = delta * z_lam * prod (1-q^{lam_i})/(1-t^{lam_i}), bilinear.

    Computed on the stable lifts, so weights above the rank are exact as well.
    """
    if f.field is not QT or g.field is not QT:
        raise ValueError("sp_qt needs qt-field operands")
    q, t = QT.gen("q"), QT.gen("t")

    def factor(lam):
        out = QT.from_int(z_lambda(lam))
        for p in lam.parts:
            out = out * (1 - q ** p) / (1 - t ** p)
        return out

    return _sp_diagonal(f, g, factor)


def sp_q(f: SymFunc, g: SymFunc) -> RatFunc:
    """<p_lam, p_mu> = delta * z_lam * prod (1-q^{lam_i}); the t=0 degeneration."""
    if f.field is not QONLY or g.field is not QONLY:
        raise ValueError("sp_q needs q-field operands")
    q = QONLY.gen("q")

    def factor(lam):
        out = QONLY.from_int(z_lambda(lam))
        for p in lam.parts:
            out = out * (1 - q ** p)
        return out

    return _sp_diagonal(f, g, factor)


def sp_kappa(f: SymFunc, g: SymFunc) -> RatFunc:
    """<p_lam, p_mu> = kappa^(-l(lam)) * delta * z_lam."""
    if f.field is not KAPPA or g.field is not KAPPA:
        raise ValueError("sp_kappa needs kappa-field operands")
    k = KAPPA.gen("kappa")

    def factor(lam):
        return KAPPA.from_int(z_lambda(lam)) / k ** lam.length

    return _sp_diagonal(f, g, factor)


def _sp_diagonal(f: SymFunc, g: SymFunc, factor) -> RatFunc:
    cf = _stable_power_coeffs(f)
    cg = _stable_power_coeffs(g)
    out = f.field.zero
    for lam, a in cf.items():
        b = cg.get(lam)
        if b is not None:
            out = out + a * b * factor(lam)
    return out


# -- torus weights and the constant-term scalar product -------------------------------


class WeightKind:
    """Torus weight selector: macdonald(t=q^k) | qwhittaker(q-order K) | jack(kappa)."""

    __slots__ = ("kind", "rank", "k", "q_order", "kappa")

    def __init__(self, kind: str, rank: int, k: int | None = None,
                 q_order: int | None = None, kappa: int | None = None):
        if kind == "macdonald":
            if not (isinstance(k, int) and k >= 1):
                raise ValueError("macdonald weight needs integer k >= 1")
        elif kind == "qwhittaker":
            if not (isinstance(q_order, int) and q_order >= 0):
                raise ValueError("qwhittaker weight needs q-order K >= 0")
        elif kind == "jack":
            if not (isinstance(kappa, int) and kappa >= 1):
                raise ValueError("jack weight needs integer kappa >= 1")
        else:
            raise ValueError(f"unknown weight kind {kind!r}")
        self.kind = kind
        self.rank = rank
        self.k = k
        self.q_order = q_order
        self.kappa = kappa

    @property
    def field(self) -> ParamField:
        return KAPPA if self.kind == "jack" else QONLY


def weight_delta(w: WeightKind) -> LaurentSeries:
    """The weight function on the torus.

    macdonald(k):  prod_{i != j} prod_{r=0}^{k-1} (1 - q^r z_i/z_j)   (exact;
                   1/Gamma_{q,q^k}(x) telescopes to k factors),
    qwhittaker(K): prod_{i != j} (z_i^{-1} z_j; q)_inf  mod q^(K+1),
    jack(kappa):   prod_{i != j} (1 - z_i^{-1} z_j)^kappa             (exact).
    """
    n = w.rank
    F = w.field
    out = LaurentSeries.one(F, n)
    if w.kind == "macdonald":
        q = F.gen("q")
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for r in range(w.k):
                    e = [0] * n
                    e[i] = 1
                    e[j] = -1
                    out = out * LaurentSeries(F, n, {(0,) * n: F.one,
                                                     tuple(e): -(q ** r)})
    elif w.kind == "jack":
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                e = [0] * n
                e[i] = 1
                e[j] = -1
                f = LaurentSeries(F, n, {(0,) * n: F.one, tuple(e): -F.one})
                for _ in range(w.kappa):
                    out = out * f
    else:
        q = F.gen("q")
        K = w.q_order
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for m in range(K + 1):
                    e = [0] * n
                    e[j] = 1
                    e[i] = -1
                    out = out.mul_truncated(
                        LaurentSeries(F, n, {(0,) * n: F.one, tuple(e): -(q ** m)}),
                        qmax=K)
    return out


def sp_torus(f: SymFunc, g: SymFunc, w: WeightKind, delta: LaurentSeries | None = None) -> RatFunc:
    """(1/n!) * constant term of f(z) g(z^{-1}) Delta(z).

    Exact for the macdonald and jack kinds; modulo q^(K+1) for qwhittaker.
    """
    if f.rank != w.rank or g.rank != w.rank:
        raise ValueError("rank mismatch between operands and weight")
    if f.field is not w.field or g.field is not w.field:
        raise ValueError("operands must live in the weight's coefficient field")
    d = weight_delta(w) if delta is None else delta
    prod = to_laurent(f) * to_laurent(g).invert_vars()
    if w.kind == "qwhittaker":
        ct = prod.mul_truncated(d, qmax=w.q_order).constant_term()
        ct = ct.truncate_q(w.q_order)
    else:
        ct = (prod * d).constant_term()
    return ct * f.field.from_fraction(Fraction(1, math.factorial(w.rank)))


def equal_mod_q(a: RatFunc, b: RatFunc, K: int) -> bool:
    """a = b modulo q^(K+1) (denominators must be units at q=0)."""
    d = a - b
    if d.is_zero:
        return True
    return d.q_valuation() > K
