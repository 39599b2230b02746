"""Deformed Gamma functions: (q,t)-Gamma, q-Gamma, kappa-Gamma, and theta.

Infinite products are never materialized.  Everything downstream consumes one
of three finite forms: Taylor coefficients, finite telescoped ratios, or
truncated series at t = q^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .fields import KAPPA, QONLY, QT, RatFunc
from .laurent import LaurentSeries
from .reports import Report


# -- coefficient forms ---------------------------------------------------------


def gamma_qt_coeff(n: int) -> RatFunc:
    """Coefficient of x^n in Gamma_{q,t}(x): prod_{i=1}^{n} (1-t q^{n-i})/(1-q^{n+1-i})."""
    if n < 0:
        raise ValueError("gamma_qt_coeff needs n >= 0")
    q, t = QT.gen("q"), QT.gen("t")
    out = QT.one
    for i in range(1, n + 1):
        out = out * (1 - t * q ** (n - i)) / (1 - q ** (n + 1 - i))
    return out


def qfactorial(n: int) -> RatFunc:
    """(n)_q! = prod_{j=1}^{n} (1 - q^j)."""
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    q = QONLY.gen("q")
    out = QONLY.one
    for j in range(1, n + 1):
        out = out * (1 - q ** j)
    return out


def gamma_q_coeff(n: int) -> RatFunc:
    """Coefficient of z^n in Gamma_q(z): 1/(n)_q!."""
    return QONLY.one / qfactorial(n)


def gamma_kappa_coeff(n: int) -> RatFunc:
    """Coefficient of z^n in (1-z)^(-kappa): kappa(kappa+1)...(kappa+n-1)/n!."""
    if n < 0:
        raise ValueError("gamma_kappa_coeff needs n >= 0")
    k = KAPPA.gen("kappa")
    out = KAPPA.one
    for r in range(n):
        out = out * (k + r)
    return out / KAPPA.from_int(math.factorial(n))


# -- finite telescoped ratios ---------------------------------------------------


def gamma_qt_finite_ratio(x: RatFunc, n: int, t_shift: int = 0) -> RatFunc:
    """Gamma_{q, t*q^t_shift}(x*q^n) / Gamma_{q, t*q^t_shift}(x), exactly.

    For n >= 0 this is prod_{j=0}^{n-1} (1 - x q^j)/(1 - tau x q^j) with
    tau = t*q^t_shift; for n < 0 the reciprocal shifted product.
    """
    q, t = QT.gen("q"), QT.gen("t")
    tau = t * q ** t_shift
    out = QT.one
    if n >= 0:
        for j in range(n):
            out = out * (1 - x * q ** j) / (1 - tau * x * q ** j)
    else:
        for j in range(n, 0):
            out = out * (1 - tau * x * q ** j) / (1 - x * q ** j)
    return out


def gamma_kappa_ratio(c1: Fraction | int, c2: Fraction | int, slope: int) -> RatFunc:
    """Gamma(slope*kappa + c1) / Gamma(slope*kappa + c2) for integer c1 - c2, in Q(kappa)."""
    m = c1 - c2
    if m != int(m):
        raise ValueError("gamma_kappa_ratio needs an integer offset difference")
    m = int(m)
    k = KAPPA.gen("kappa")
    base = k * slope + KAPPA.from_fraction(Fraction(c2))
    out = KAPPA.one
    if m >= 0:
        for r in range(m):
            out = out * (base + r)
    else:
        for r in range(m, 0):
            out = out / (base + r)
    return out


def gamma_int_ratio(a: int, b: int) -> Fraction:
    """Gamma(a)/Gamma(b) for integers via rising factorials; zeros allowed, poles raise."""
    out = Fraction(1)
    if a >= b:
        for r in range(b, a):
            out *= r
    else:
        for r in range(a, b):
            if r == 0:
                raise ZeroDivisionError("Gamma pole at a nonpositive integer")
            out /= r
    return out


# -- formal Gamma products -------------------------------------------------------


class GammaProduct:
    """A formal product prefactor * prod Gamma_{q, t*q^t_shift}(t^s q^m)^e.

    Factors with equal t-slope s telescope into exact rational functions;
    residual unpaired factors survive symbolically and collapse to RatFunc
    under the t = q^k specialization.
    """

    __slots__ = ("prefactor", "factors", "t_shift")

    def __init__(self, prefactor: RatFunc | None = None, factors: dict | None = None,
                 t_shift: int = 0):
        self.prefactor = QT.one if prefactor is None else prefactor
        self.factors = dict(factors or {})  # (slope, offset) -> integer exponent
        self.t_shift = t_shift

    def times_gamma(self, slope: int, offset: int, exp: int = 1) -> "GammaProduct":
        f = dict(self.factors)
        key = (slope, offset)
        f[key] = f.get(key, 0) + exp
        if f[key] == 0:
            del f[key]
        return GammaProduct(self.prefactor, f, self.t_shift)

    def times(self, c: RatFunc) -> "GammaProduct":
        return GammaProduct(self.prefactor * c, self.factors, self.t_shift)

    def __mul__(self, other: "GammaProduct") -> "GammaProduct":
        if self.t_shift != other.t_shift:
            raise ValueError("mixed Gamma second parameters")
        f = dict(self.factors)
        for key, e in other.factors.items():
            f[key] = f.get(key, 0) + e
            if f[key] == 0:
                del f[key]
        return GammaProduct(self.prefactor * other.prefactor, f, self.t_shift)

    def inverse(self) -> "GammaProduct":
        return GammaProduct(1 / self.prefactor,
                            {k: -e for k, e in self.factors.items()}, self.t_shift)

    def reduce(self) -> "GammaProduct":
        """Telescope all equal-slope factors against a common base per slope."""
        q, t = QT.gen("q"), QT.gen("t")
        pre = self.prefactor
        residual = {}
        slopes = {}
        for (s, m), e in self.factors.items():
            slopes.setdefault(s, []).append((m, e))
        for s, items in slopes.items():
            base = min(m for m, _ in items)
            net = 0
            x = t ** s * q ** base
            for m, e in items:
                # Gamma(t^s q^m) = Gamma(t^s q^base) * ratio(base -> m)
                pre = pre * gamma_qt_finite_ratio(x, m - base, self.t_shift) ** e
                net += e
            if net:
                residual[(s, base)] = net
        return GammaProduct(pre, residual, self.t_shift)

    @property
    def is_rational(self) -> bool:
        return not self.reduce().factors

    def to_ratfunc(self) -> RatFunc:
        red = self.reduce()
        if red.factors:
            raise ValueError(f"unpaired Gamma factors remain: {sorted(red.factors)}")
        return red.prefactor

    def specialize_t_qk(self, k: int) -> RatFunc:
        """Collapse at t = q^k: every factor becomes a finite q-product."""
        qq = QONLY.gen("q")
        out = self.prefactor.subs_t_qk(k)
        c = k + self.t_shift
        for (s, m), e in self.factors.items():
            a = k * s + m
            piece = QONLY.one
            if c >= 0:
                for r in range(c):
                    if a + r == 0:
                        raise ZeroDivisionError("Gamma pole at t=q^k specialization")
                    piece = piece / (1 - qq ** (a + r))
            else:
                for r in range(c, 0):
                    piece = piece * (1 - qq ** (a + r))
            out = out * piece ** e
        return out

    def __repr__(self):
        bits = [f"({self.prefactor.pretty()})"]
        for (s, m), e in sorted(self.factors.items()):
            bits.append(f"Gamma[tq^{self.t_shift}](t^{s} q^{m})^{e}")
        return " * ".join(bits)


# -- theta ------------------------------------------------------------------------


@dataclass
class ThetaSeries:
    """theta_1 through q-order K: formal markers q^(1/4) and 1/i times a body series.

    The body lives in the function's own argument u (integer exponents); callers
    evaluating at z^(1/2) work in the variable w with u = w.
    """

    body: LaurentSeries
    q_quarter_power: int = 1
    i_power: int = -1
    order: int = 0


def theta1_series(K: int) -> ThetaSeries:
    """(u - u^{-1}) * prod_{j=1}^{K} (1-q^j)(1-u^2 q^j)(1-u^{-2} q^j) mod q^{K+1}."""
    if K < 0:
        raise ValueError("theta1_series needs K >= 0")
    F = QONLY
    q = F.gen("q")
    body = LaurentSeries(F, 1, {(1,): F.one, (-1,): -F.one})
    for j in range(1, K + 1):
        qj = q ** j
        f1 = LaurentSeries(F, 1, {(0,): F.one - qj})
        f2 = LaurentSeries(F, 1, {(0,): F.one, (2,): -qj})
        f3 = LaurentSeries(F, 1, {(0,): F.one, (-2,): -qj})
        body = body.mul_truncated(f1 * f2 * f3, qmax=K)
    return ThetaSeries(body=body, order=K)


def _pochhammer_series(F, coeff: RatFunc, exp: int, j_from: int, j_to: int, K: int) -> LaurentSeries:
    """prod_{j=j_from}^{j_to} (1 - coeff * q^j * w^exp) truncated mod q^{K+1}."""
    q = F.gen("q")
    out = LaurentSeries.one(F, 1)
    for j in range(j_from, j_to + 1):
        if exp == 0:
            f = LaurentSeries(F, 1, {(0,): F.one - coeff * q ** j})
        else:
            f = LaurentSeries(F, 1, {(0,): F.one, (exp,): -(coeff * q ** j)})
        out = out.mul_truncated(f, qmax=K)
    return out


def reflection_check(K: int, k: int = 1, perturb: bool = False) -> Report:
    """Both deformed reflection identities through q-order K at t = q^k.

    (q,t) variant:  Gamma_{q,t}(z) Gamma_{q,t^{-1}}(q z^{-1})
                      = t^{1/2} theta_1((tz)^{1/2}; q) / theta_1(z^{1/2}; q),
    checked cross-multiplied in the variable w = z^{1/2} with both Gamma factors
    telescoped exactly at t = q^k (principal branch (tz)^{1/2} = t^{1/2} z^{1/2}).

    q-only variant:  Gamma_q(z) Gamma_q(q z^{-1})
                      = q^{1/4} Gamma_q(q)^{-1} i z^{-1/2} / theta_1(z^{1/2}; q),
    reduced to a body identity for the theta series.
    """
    if K < 0 or k < 1:
        raise ValueError("reflection_check needs K >= 0 and k >= 1")
    F = QONLY
    q = F.gen("q")

    # (q,t) variant, z = w^2.  Both Gamma factors telescope exactly at t = q^k.
    lhs_num = LaurentSeries.one(F, 1)   # prod_{j=0}^{k-1} (1 - q^{j+1-k} z^{-1})
    lhs_den = LaurentSeries.one(F, 1)   # prod_{j=0}^{k-1} (1 - z q^j)
    for j in range(k):
        lhs_num = lhs_num * LaurentSeries(F, 1, {(0,): F.one, (-2,): -(q ** (j + 1 - k))})
        lhs_den = lhs_den * LaurentSeries(F, 1, {(0,): F.one, (2,): -(q ** j)})

    # Negative q-orders are bounded below by -V on either side.
    V = k * (k - 1) // 2
    B = K + V
    theta = theta1_series(B)

    # t^(1/2) * theta_1((tz)^(1/2)) built as its own truncated product: factors
    # with negative q-order (j < k) multiply exactly first, the rest mod q^(B+1).
    t_half = F.monomial({"q": Fraction(k, 2)})
    rhs_poly = LaurentSeries(F, 1, {(1,): t_half ** 2, (-1,): -F.one})
    for j in range(1, k):
        rhs_poly = rhs_poly * LaurentSeries(F, 1, {(0,): F.one, (-2,): -(q ** (j - k))})
    tail = _pochhammer_series(F, F.one, 0, 1, B, B)
    tail = tail.mul_truncated(_pochhammer_series(F, q ** k, 2, 1, max(0, B - k), B), qmax=B)
    tail = tail.mul_truncated(_pochhammer_series(F, q ** (-k), -2, k, B + k, B), qmax=B)
    rhs_poly = rhs_poly.mul_truncated(tail, qmax=None)

    left = lhs_num.mul_truncated(theta.body, qmax=None)
    right = lhs_den.mul_truncated(rhs_poly, qmax=None)
    if perturb:
        left = left.scale(F.one + q)
    diff = left - right
    witness = _first_qz_mismatch(diff, K)
    qt_pass = witness is None

    # q-only variant: body identity B(w) = -w^{-1} (w^2;q)_inf (q w^{-2};q)_inf (q;q)_inf.
    rhs = _pochhammer_series(F, F.one, 2, 0, K, K)
    rhs = rhs.mul_truncated(_pochhammer_series(F, F.one, -2, 1, K, K), qmax=K)
    rhs = rhs.mul_truncated(_pochhammer_series(F, F.one, 0, 1, K, K), qmax=K)
    rhs = rhs.mul_monomial((-1,)).scale(-F.one)
    body = theta1_series(K).body
    diff_q = body - rhs
    witness_q = _first_qz_mismatch(diff_q, K)
    q_pass = witness_q is None

    passed = qt_pass and q_pass
    wit = None if passed else {"qt_variant": witness, "q_variant": witness_q}
    return Report(
        name="gamma.reflection",
        params={"K": K, "k": k, "perturbed": perturb},
        passed=passed,
        witness=wit,
        details="both reflection identities hold mod q^(K+1)" if passed else "",
    )


def _first_qz_mismatch(diff: LaurentSeries, K: int):
    """First (q-power, z-power) where a series fails to vanish mod q^(K+1)."""
    worst = None
    for e, c in diff.terms.items():
        tc = c.truncate_q(K)
        if tc.is_zero:
            continue
        v = tc.q_valuation()
        key = (v, e[0])
        if worst is None or key < worst[0]:
            worst = (key, (str(v), e[0]))
    return None if worst is None else {"q_order": worst[1][0], "z_power": worst[1][1]}


# -- asymptotic degeneration -------------------------------------------------------


def jack_limit_check(x0: Fraction, kappa: int, hbars, tol_ratio: float = 0.2) -> Report:
    """Numeric check of Gamma_{q,t}(x0) -> (1-x0)^(-kappa) and b_(n) -> Gamma ratios.

    Uses q = exp(-hbar), t = q^kappa so that |q| < 1; infinite products are cut
    once |q|^N < 1e-15.  Reports the error sequence and its decay ratios, which
    should approach 2 under hbar-halving (first order in hbar).
    """
    if not (0 < x0 < 1):
        raise ValueError("x0 must lie in (0,1)")
    if kappa < 1:
        raise ValueError("kappa must be a positive integer")
    hbars = list(hbars)
    if any(b >= a for a, b in zip(hbars, hbars[1:])):
        raise ValueError("hbar values must decrease")
    x = float(x0)
    target = (1.0 - x) ** (-kappa)
    errors = []
    for hb in hbars:
        qv = math.exp(-hb)
        if qv >= 1.0 - 1e-12:
            return Report("gamma.jack_limit", {"x0": str(x0), "kappa": kappa},
                          False, witness={"hbar": hb}, details="|q| too close to 1")
        tv = qv ** kappa
        val = _gamma_qt_numeric(x, qv, tv)
        errors.append(abs(val - target))
    if all(e < 1e-12 for e in errors):
        # exactly telescoping case (kappa = 1): errors are pure round-off
        ratio_ok = decreasing = True
        ratios = []
    else:
        ratios = [errors[i] / errors[i + 1] for i in range(len(errors) - 1)
                  if errors[i + 1] > 0]
        # expected ratio ~ h_i / h_{i+1} (first-order error)
        expected = [hbars[i] / hbars[i + 1] for i in range(len(hbars) - 1)]
        ratio_ok = all(abs(r - e) <= tol_ratio * e for r, e in zip(ratios, expected))
        decreasing = all(a > b for a, b in zip(errors, errors[1:]))

    # x^n coefficient limit at the smallest hbar: the target is the n-th Taylor
    # coefficient of (1-x)^(-kappa), i.e. Gamma(n+kappa)/(n! Gamma(kappa)).
    hb = hbars[-1]
    qv = math.exp(-hb)
    tv = qv ** kappa
    b_ok = True
    b_wit = None
    for n in range(1, 5):
        bn = gamma_qt_coeff(n).eval_numeric({"q": qv, "t": tv})
        tgt = math.gamma(n + kappa) / (math.factorial(n) * math.gamma(kappa))
        if abs(bn - tgt) > 1e-2 * max(1.0, abs(tgt)):
            b_ok = False
            b_wit = {"n": n, "value": bn, "target": tgt}
            break

    passed = ratio_ok and decreasing and b_ok
    return Report(
        name="gamma.jack_limit",
        params={"x0": str(x0), "kappa": kappa, "hbars": hbars},
        passed=passed,
        witness=None if passed else {"errors": errors, "ratios": ratios, "b": b_wit},
        details=f"errors={errors} ratios={ratios}",
    )


def _gamma_qt_numeric(x: float, qv: float, tv: float) -> float:
    out = 1.0
    qn = 1.0
    while abs(qn) > 1e-15:
        out *= (1.0 - tv * x * qn) / (1.0 - x * qn)
        qn *= qv
    return out
