"""Exact rational-function coefficients over the declared formal parameters.

Three coefficient fields are used throughout: Q(q,t), Q(q) and Q(kappa).
For q and t the exponent lattice is (1/2)Z: internally each letter is
represented by its square root (the generator named ``q2`` stands for
q^(1/2)), so every half-integer power is an ordinary integer monomial of
the backing sympy sparse field.  kappa needs no half powers and is kept on
the integer lattice.
"""

from __future__ import annotations

from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.fields import field as _sympy_field


class ParamField:
    """A coefficient field with declared parameters and exponent lattice."""

    def __init__(self, tag: str, params: tuple, lattice_den: int):
        self.tag = tag
        self.params = params
        self.lattice_den = lattice_den
        gen_names = ",".join(f"{p}{lattice_den}" if lattice_den > 1 else p for p in params)
        self._field, *gens = _sympy_field(gen_names, QQ)
        self._gens = tuple(gens)
        self._ring = self._field.ring
        self.zero = RatFunc(self, self._field.zero)
        self.one = RatFunc(self, self._field.one)

    def __repr__(self):
        return f"ParamField({self.tag})"

    def __eq__(self, other):
        return isinstance(other, ParamField) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    # -- constructors ------------------------------------------------------

    def from_int(self, n: int) -> "RatFunc":
        return RatFunc(self, self._field(n))

    def from_fraction(self, fr) -> "RatFunc":
        fr = Fraction(fr)
        return RatFunc(self, self._field(QQ(fr.numerator, fr.denominator)))

    def _internal_exp(self, e) -> int:
        ie = Fraction(e) * self.lattice_den
        if ie.denominator != 1:
            raise ValueError(
                f"exponent {e} not on the (1/{self.lattice_den})Z lattice of {self.tag}"
            )
        return int(ie)

    def monomial(self, exponents: dict, coeff=1) -> "RatFunc":
        """c * prod(param^e); e may be a Fraction on the declared lattice."""
        iexp = [0] * len(self.params)
        for name, e in exponents.items():
            iexp[self.params.index(name)] = self._internal_exp(e)
        co = Fraction(coeff)
        num = {tuple(max(e, 0) for e in iexp): QQ(co.numerator, co.denominator)}
        den = {tuple(-min(e, 0) for e in iexp): QQ(1)}
        fe = self._field.new(self._ring.from_dict(num), self._ring.from_dict(den))
        return RatFunc(self, fe)

    def gen(self, name: str) -> "RatFunc":
        return self.monomial({name: 1})

    def wrap(self, fe) -> "RatFunc":
        return RatFunc(self, fe)

    def from_json(self, obj: dict) -> "RatFunc":
        num = self._poly_from_json(obj["num"])
        den = self._poly_from_json(obj["den"])
        return RatFunc(self, self._field.new(num, den))

    def _poly_from_json(self, terms):
        d = {}
        for row in terms:
            c, exps = int(row[0]), row[1:]
            iexp = tuple(self._internal_exp(_exp_from_json(e)) for e in exps)
            d[iexp] = QQ(c)
        return self._ring.from_dict(d)


def _exp_to_json(internal: int, latden: int):
    if internal % latden == 0:
        return internal // latden
    return f"{internal}/{latden}"


def _exp_from_json(e):
    if isinstance(e, str):
        num, den = e.split("/")
        return Fraction(int(num), int(den))
    return Fraction(e)


class RatFunc:
    """Element of a ParamField in canonical form (num/den coprime, canonical sign)."""

    __slots__ = ("field", "fe")

    def __init__(self, field: ParamField, fe):
        self.field = field
        self.fe = fe

    # -- ring/field operations --------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise ValueError(f"mixed fields: {self.field.tag} vs {other.field.tag}")
            return other.fe
        if isinstance(other, int):
            return self.field._field(other)
        if isinstance(other, Fraction):
            return self.field._field(QQ(other.numerator, other.denominator))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f, g = self.fe, o
        ring_one = self.field._ring.one
        if f.denom == ring_one and g.denom == ring_one:
            return RatFunc(self.field, f.raw_new(f.numer + g.numer, ring_one))
        return RatFunc(self.field, f + g)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.fe)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f, g = self.fe, o
        ring_one = self.field._ring.one
        if f.denom == ring_one and g.denom == ring_one:
            return RatFunc(self.field, f.raw_new(f.numer - g.numer, ring_one))
        return RatFunc(self.field, f - g)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        f, g = self.fe, o
        ring_one = self.field._ring.one
        if f.denom == ring_one and g.denom == ring_one:
            return RatFunc(self.field, f.raw_new(f.numer * g.numer, ring_one))
        return RatFunc(self.field, f * g)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero RatFunc")
        return RatFunc(self.field, self.fe / o)

    def __rtruediv__(self, other):
        if not self.fe:
            raise ZeroDivisionError("division by zero RatFunc")
        o = self._coerce(other)
        return RatFunc(self.field, o / self.fe)

    def __pow__(self, n: int):
        return RatFunc(self.field, self.fe ** n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.fe == self._coerce(other)
        return isinstance(other, RatFunc) and self.field is other.field and self.fe == other.fe

    def __hash__(self):
        return hash((self.field.tag, self.fe))

    def __bool__(self):
        return bool(self.fe)

    def __repr__(self):
        return self.pretty()

    def pretty(self) -> str:
        s = str(self.fe)
        latden = self.field.lattice_den
        for p in self.field.params:
            if latden > 1:
                s = s.replace(f"{p}{latden}**2", p).replace(f"{p}{latden}", f"{p}^(1/{latden})")
        return s

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.fe

    def numer_terms(self):
        return self.fe.numer.terms()

    def denom_terms(self):
        return self.fe.denom.terms()

    def q_valuation(self) -> Fraction:
        """Order of vanishing at q=0 (external units); requires denominator unit at q=0."""
        qi = self.field.params.index("q")
        if self.is_zero:
            raise ValueError("q_valuation of zero")
        den_val = min(m[qi] for m, _ in self.fe.denom.terms())
        num_val = min(m[qi] for m, _ in self.fe.numer.terms())
        return Fraction(num_val - den_val, self.field.lattice_den)

    def truncate_q(self, K: int) -> "RatFunc":
        """Representative of this element modulo q^(K+1).

        Monomials of the numerator whose q-order relative to the denominator's
        q-adic valuation exceeds K are dropped; the difference then lies in
        q^(K+1) * Q[[q]][t-part].
        """
        if self.is_zero:
            return self
        qi = self.field.params.index("q")
        den_val = min(m[qi] for m, _ in self.fe.denom.terms())
        bound = K * self.field.lattice_den + den_val
        kept = {m: c for m, c in self.fe.numer.terms() if m[qi] <= bound}
        num = self.field._ring.from_dict(kept)
        return RatFunc(self.field, self.field._field.new(num, self.fe.denom))

    # -- substitutions -------------------------------------------------------

    def _subst_monomials(self, target: ParamField, mapper):
        """Rebuild num/den by mapping internal exponent tuples; clears negatives."""
        ring = target._ring
        nvars = len(target.params)

        def transform(poly):
            out = {}
            for mono, c in poly.terms():
                key = mapper(mono)
                out[key] = out.get(key, QQ(0)) + c
            return {k: v for k, v in out.items() if v}

        num = transform(self.fe.numer)
        den = transform(self.fe.denom)
        if not den:
            raise ZeroDivisionError("substitution annihilates the denominator")
        shift = [0] * nvars
        for i in range(nvars):
            lo = min(min(m[i] for m in num) if num else 0, min(m[i] for m in den))
            shift[i] = -lo if lo < 0 else 0
        if any(shift):
            num = {tuple(e + s for e, s in zip(m, shift)): c for m, c in num.items()}
            den = {tuple(e + s for e, s in zip(m, shift)): c for m, c in den.items()}
        if not num:
            return target.zero
        return RatFunc(target, target._field.new(ring.from_dict(num), ring.from_dict(den)))

    def subs_t_qk(self, k: int) -> "RatFunc":
        """t = q^k specialization: Q(q,t) -> Q(q)."""
        if self.field is not QT:
            raise ValueError("subs_t_qk applies to the qt field")
        return self._subst_monomials(QONLY, lambda m: (m[0] + k * m[1],))

    def subs_t_zero(self) -> "RatFunc":
        """t = 0 specialization; raises if the denominator vanishes at t=0."""
        if self.field is not QT:
            raise ValueError("subs_t_zero applies to the qt field")
        ring = QONLY._ring

        def transform(poly):
            out = {}
            for mono, c in poly.terms():
                if mono[1] == 0:
                    key = (mono[0],)
                    out[key] = out.get(key, QQ(0)) + c
            return {k: v for k, v in out.items() if v}

        num = transform(self.fe.numer)
        den = transform(self.fe.denom)
        if not den:
            raise ZeroDivisionError("pole at t=0")
        if not num:
            return QONLY.zero
        return RatFunc(QONLY, QONLY._field.new(ring.from_dict(num), ring.from_dict(den)))

    def subs_t_times_qpow(self, r: int) -> "RatFunc":
        """t -> t*q^r inside Q(q,t)."""
        if self.field is not QT:
            raise ValueError("subs_t_times_qpow applies to the qt field")
        return self._subst_monomials(QT, lambda m: (m[0] + r * m[1], m[1]))

    def lift_q_to_qt(self) -> "RatFunc":
        """Embed Q(q) into Q(q,t)."""
        if self.field is not QONLY:
            raise ValueError("lift_q_to_qt applies to the q field")
        return self._subst_monomials(QT, lambda m: (m[0], 0))

    def eval_numeric(self, values: dict) -> float:
        """Evaluate at float parameter values (external units)."""
        vals = [float(values[p]) for p in self.field.params]
        latden = self.field.lattice_den

        def ev(poly):
            total = 0.0
            for mono, c in poly.terms():
                term = float(Fraction(c.numerator, c.denominator))
                for v, e in zip(vals, mono):
                    term *= v ** (e / latden)
                total += term
            return total

        den = ev(self.fe.denom)
        return ev(self.fe.numer) / den

    def eval_fraction(self, values: dict) -> Fraction:
        """Evaluate at exact rational parameter values (integer lattice only)."""
        vals = [Fraction(values[p]) for p in self.field.params]
        latden = self.field.lattice_den

        def ev(poly):
            total = Fraction(0)
            for mono, c in poly.terms():
                term = Fraction(int(c.numerator), int(c.denominator))
                for v, e in zip(vals, mono):
                    if e % latden:
                        raise ValueError("half-integer exponent in exact evaluation")
                    term *= v ** (e // latden)
                total += term
            return total

        return ev(self.fe.numer) / ev(self.fe.denom)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        num, den = self.fe.numer, self.fe.denom
        denoms = [Fraction(int(c.numerator), int(c.denominator)).denominator
                  for _, c in list(num.terms()) + list(den.terms())]
        scale = 1
        for d in denoms:
            scale = scale * d // _gcd(scale, d)

        def encode(poly):
            rows = []
            for mono, c in sorted(poly.terms()):
                ci = Fraction(int(c.numerator), int(c.denominator)) * scale
                assert ci.denominator == 1
                rows.append([str(ci.numerator)]
                            + [_exp_to_json(e, self.field.lattice_den) for e in mono])
            return rows

        return {"num": encode(num), "den": encode(den)}


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


QT = ParamField("qt", ("q", "t"), 2)
QONLY = ParamField("q", ("q",), 2)
KAPPA = ParamField("kappa", ("kappa",), 1)
