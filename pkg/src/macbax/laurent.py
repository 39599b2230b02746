"""Sparse Laurent polynomials in torus variables with RatFunc coefficients.

The same type carries both exact finite Laurent polynomials and graded
truncations of infinite products: a truncated object simply stores exact
rational coefficients for the retained terms, and identities involving it
are asserted modulo the truncation ideal (see RatFunc.truncate_q).
"""

from __future__ import annotations

from itertools import permutations

from .fields import ParamField, RatFunc


class LaurentSeries:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: ParamField, nvars: int, terms: dict | None = None):
        self.field = field
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def one(cls, field, nvars):
        return cls(field, nvars, {(0,) * nvars: field.one})

    @classmethod
    def monomial(cls, field, exps, coeff=None):
        exps = tuple(exps)
        c = field.one if coeff is None else coeff
        if c.is_zero:
            return cls(field, len(exps), {})
        return cls(field, len(exps), {exps: c})

    def clone(self):
        return LaurentSeries(self.field, self.nvars, dict(self.terms))

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and self.nvars == other.nvars
            and self.field is other.field
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "LaurentSeries(0)"
        bits = []
        for e, c in sorted(self.terms.items())[:8]:
            bits.append(f"({c.pretty()})*z^{e}")
        suffix = " + ..." if len(self.terms) > 8 else ""
        return "LaurentSeries(" + " + ".join(bits) + suffix + ")"

    def coefficient(self, exps) -> RatFunc:
        return self.terms.get(tuple(exps), self.field.zero)

    def constant_term(self) -> RatFunc:
        """Coefficient of the zero exponent vector: the torus integral of self."""
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def var_range(self, i: int):
        """(min, max) exponent of variable i over the support; (0, 0) if empty."""
        if not self.terms:
            return (0, 0)
        es = [e[i] for e in self.terms]
        return (min(es), max(es))

    def total_degree_range(self):
        if not self.terms:
            return (0, 0)
        ds = [sum(e) for e in self.terms]
        return (min(ds), max(ds))

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars or self.field is not other.field:
            raise ValueError("incompatible Laurent series")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            s = c if acc is None else acc + c
            if s.is_zero:
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentSeries(self.field, self.nvars, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentSeries(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def scale(self, c: RatFunc):
        if c.is_zero:
            return LaurentSeries.zero(self.field, self.nvars)
        return LaurentSeries(self.field, self.nvars, {e: c * v for e, v in self.terms.items()})

    def mul_monomial(self, exps, coeff=None):
        exps = tuple(exps)
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a + b for a, b in zip(e, exps))
            out[ne] = c if coeff is None else c * coeff
        return LaurentSeries(self.field, self.nvars, out)

    def __mul__(self, other):
        self._check(other)
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out = {}
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                acc = out.get(e)
                s = p if acc is None else acc + p
                if s.is_zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentSeries(self.field, self.nvars, out)

    def mul_truncated(self, other, qmax: int | None = None, window=None,
                      total_cap: int | None = None):
        """Product with pruning: coefficients cut modulo q^(qmax+1), exponents
        outside a per-variable (lo, hi) window dropped, and/or terms above a
        total-degree cap dropped."""
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if total_cap is not None and sum(e) > total_cap:
                    continue
                if window is not None and any(
                    not (w[0] <= x <= w[1]) for x, w in zip(e, window)
                ):
                    continue
                p = c1 * c2
                acc = out.get(e)
                s = p if acc is None else acc + p
                if s.is_zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        res = LaurentSeries(self.field, self.nvars, out)
        if qmax is not None:
            res = res.q_truncate(qmax)
        return res

    def q_truncate(self, K: int):
        out = {}
        for e, c in self.terms.items():
            tc = c.truncate_q(K)
            if not tc.is_zero:
                out[e] = tc
        return LaurentSeries(self.field, self.nvars, out)

    # -- variable operations -----------------------------------------------------

    def q_shift(self, i: int):
        """x_i -> q*x_i: each monomial x_i^a picks up q^a."""
        return self.dilate(i, self.field.gen("q"))

    def dilate(self, i: int, c: RatFunc):
        """x_i -> c*x_i for an invertible scalar c."""
        if not (0 <= i < self.nvars):
            raise IndexError(f"variable index {i} out of range")
        out = {}
        for e, v in self.terms.items():
            nv = v * c ** e[i] if e[i] else v
            out[e] = nv
        return LaurentSeries(self.field, self.nvars, out)

    def invert_vars(self):
        """x -> x^(-1) in every variable."""
        return LaurentSeries(
            self.field, self.nvars, {tuple(-x for x in e): c for e, c in self.terms.items()}
        )

    def permute_vars(self, perm):
        """perm maps old index -> new index."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for old, new in enumerate(perm):
                ne[new] = e[old]
            out[tuple(ne)] = c
        return LaurentSeries(self.field, self.nvars, out)

    def promote(self, nvars: int, offset: int = 0):
        """Embed into a larger variable list, occupying [offset, offset + self.nvars)."""
        if offset + self.nvars > nvars:
            raise ValueError("promotion window out of range")
        out = {}
        for e, c in self.terms.items():
            ne = (0,) * offset + e + (0,) * (nvars - offset - self.nvars)
            out[ne] = c
        return LaurentSeries(self.field, nvars, out)

    def drop_vars(self, keep):
        """Project onto the variables in `keep` (all dropped exponents must be 0)."""
        out = {}
        for e, c in self.terms.items():
            if any(e[i] != 0 for i in range(self.nvars) if i not in keep):
                raise ValueError("dropping a variable with nonzero exponent")
            out[tuple(e[i] for i in keep)] = c
        return LaurentSeries(self.field, len(keep), out)

    def eval_monomials(self, points):
        """Substitute x_i = points[i] (RatFunc values, invertible when needed)."""
        total = self.field.zero
        for e, c in self.terms.items():
            term = c
            for p, a in zip(points, e):
                if a:
                    term = term * p ** a
            total = total + term
        return total

    def is_symmetric(self) -> bool:
        """Invariance under all adjacent transpositions of the variables."""
        for i in range(self.nvars - 1):
            for e, c in self.terms.items():
                se = list(e)
                se[i], se[i + 1] = se[i + 1], se[i]
                if self.terms.get(tuple(se), self.field.zero) != c:
                    return False
        return True

    # -- exact division -------------------------------------------------------------

    def subs_var_equal(self, i: int, j: int):
        """Substitute x_i = x_j (exponent of i moved onto j)."""
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[j] += ne[i]
            ne[i] = 0
            ne = tuple(ne)
            acc = out.get(ne)
            s = c if acc is None else acc + c
            if s.is_zero:
                out.pop(ne, None)
            else:
                out[ne] = s
        return LaurentSeries(self.field, self.nvars, out)

    def div_exact_linear_diff(self, i: int, j: int):
        """Exact division by (x_i - x_j); raises ExactDivisionError on remainder."""
        rem = self.subs_var_equal(i, j)
        if not rem.is_zero():
            raise ExactDivisionError(f"nonzero remainder dividing by (x_{i} - x_{j})")
        out = {}

        def accumulate(e, c):
            acc = out.get(e)
            s = c if acc is None else acc + c
            if s.is_zero:
                out.pop(e, None)
            else:
                out[e] = s

        # x_i^d = (x_i - x_j) * s_d + x_j^d with
        #   s_d = sum_{a+b=d-1, a,b>=0} x_i^a x_j^b          (d >= 0)
        #   s_d = -sum_{a+b=d-1, a,b<0... } handled below     (d < 0)
        for e, c in self.terms.items():
            d = e[i]
            base = list(e)
            base[i] = 0
            if d >= 0:
                for a in range(d):
                    ne = list(base)
                    ne[i] = a
                    ne[j] += d - 1 - a
                    accumulate(tuple(ne), c)
            else:
                for a in range(d, 0):
                    ne = list(base)
                    ne[i] = a
                    ne[j] += d - 1 - a
                    accumulate(tuple(ne), -c)
        return LaurentSeries(self.field, self.nvars, out)

    def div_exact_vandermonde(self):
        """Exact division by prod_{i<j} (x_i - x_j)."""
        res = self
        for i in range(self.nvars):
            for j in range(i + 1, self.nvars):
                res = res.div_exact_linear_diff(i, j)
        return res


class ExactDivisionError(ArithmeticError):
    """An exact polynomial division left a nonzero remainder."""


def vandermonde(field: ParamField, n: int) -> LaurentSeries:
    """prod_{i<j} (x_i - x_j)."""
    out = LaurentSeries.one(field, n)
    for i in range(n):
        for j in range(i + 1, n):
            ei = [0] * n
            ei[i] = 1
            ej = [0] * n
            ej[j] = 1
            diff = LaurentSeries(
                field, n, {tuple(ei): field.one, tuple(ej): -field.one}
            )
            out = out * diff
    return out


def alternant_schur(field: ParamField, lam, n: int) -> LaurentSeries:
    """Schur polynomial as det(x_i^(lam_j + n - j)) / Vandermonde.

    Independent oracle used by tests at the t = q (resp. kappa = 1) point.
    """
    num = LaurentSeries.zero(field, n)
    exps = [lam.part(j + 1) + n - 1 - j for j in range(n)]
    for sigma in permutations(range(n)):
        sign = _perm_sign(sigma)
        e = tuple(exps[sigma[i]] for i in range(n))
        coeff = field.from_int(sign)
        num = num + LaurentSeries.monomial(field, e, coeff)
    return num.div_exact_vandermonde()


def _perm_sign(sigma) -> int:
    sign = 1
    n = len(sigma)
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[i] > sigma[j]:
                sign = -sign
    return sign
