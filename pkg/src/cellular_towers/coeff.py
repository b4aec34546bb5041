"""Exact coefficient arithmetic.

Two rings cover every algebra in the package:

* :class:`LaurentPoly` -- multivariate Laurent polynomials with arbitrary
  precision integer coefficients, in canonical form (no zero terms, fixed
  indeterminate order).
* :class:`RationalFunction` -- reduced fractions of Laurent polynomials,
  normalized so equal values compare structurally equal.

The indeterminates used in practice are q, z and δ, always in this order
when they appear together.  `delta_eliminate` is the quotient map onto
Q(q, z) that sends δ to (z⁻¹ − z)/(q⁻¹ − q) + 1.
"""

from __future__ import annotations

import json
from functools import reduce
from math import gcd as int_gcd

from ._kernel import (
    terms_add,
    terms_mul,
    terms_mul_monomial,
    terms_neg,
    terms_scale,
    terms_sub,
)
from .errors import CoefficientRingError, SpecializationError

Q = "q"
Z = "z"
DELTA = "δ"

#: canonical global ordering of the symbols (design decision: fixed order
#: makes term maps canonical, so structural equality works as an oracle)
SYMBOL_ORDER = (Q, Z, DELTA)

QV = (Q,)
DV = (DELTA,)
QZV = (Q, Z)
QZDV = (Q, Z, DELTA)


def ordered_vars(names):
    extra = [v for v in names if v not in SYMBOL_ORDER]
    return tuple(v for v in SYMBOL_ORDER if v in names) + tuple(sorted(extra))


class LaurentPoly:
    """A Laurent polynomial as a map exponent-vector -> integer coefficient."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        t = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    e = tuple(exp)
                    if len(e) != len(self.vars):
                        raise CoefficientRingError(
                            f"exponent vector {e} does not match vars {self.vars}"
                        )
                    t[e] = t.get(e, 0) + c
                    if not t[e]:
                        del t[e]
        self.terms = t
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def one(cls, vars):
        return cls.const(vars, 1)

    @classmethod
    def const(cls, vars, k):
        vars = tuple(vars)
        if not k:
            return cls(vars)
        return cls(vars, {(0,) * len(vars): k})

    @classmethod
    def gen(cls, vars, name, power=1):
        """The monomial name**power."""
        vars = tuple(vars)
        if name not in vars:
            raise CoefficientRingError(f"{name!r} is not among vars {vars}")
        exp = tuple(power if v == name else 0 for v in vars)
        return cls(vars, {exp: 1})

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise CoefficientRingError(
                    f"mismatched indeterminates {self.vars} vs {other.vars}"
                )
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.vars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LaurentPoly._raw(self.vars, terms_add(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LaurentPoly._raw(self.vars, terms_sub(self.terms, o.terms))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LaurentPoly._raw(self.vars, terms_sub(o.terms, self.terms))

    def __neg__(self):
        return LaurentPoly._raw(self.vars, terms_neg(self.terms))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, int):
            return LaurentPoly._raw(self.vars, terms_scale(self.terms, other))
        return LaurentPoly._raw(self.vars, terms_mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            u = self.as_unit()
            if u is None:
                raise CoefficientRingError(f"negative power of non-unit {self}")
            exp, c = u
            if c not in (1, -1):
                raise CoefficientRingError(f"negative power of non-unit {self}")
            return LaurentPoly._raw(
                self.vars, {tuple(k * x for x in exp): c if k % 2 == 0 or c == 1 else -1}
            )
        out = LaurentPoly.one(self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    @classmethod
    def _raw(cls, vars, terms):
        self = object.__new__(cls)
        self.vars = vars
        self.terms = terms
        self._hash = None
        return self

    # -- predicates & inspection -------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * len(self.vars): 1}

    def as_unit(self):
        """Return (exp, coef) if this is a single monomial, else None."""
        if len(self.terms) != 1:
            return None
        return next(iter(self.terms.items()))

    def is_ordinary(self):
        return all(x >= 0 for exp in self.terms for x in exp)

    def min_exponents(self):
        n = len(self.vars)
        if not self.terms:
            return (0,) * n
        return tuple(min(exp[i] for exp in self.terms) for i in range(n))

    def max_exponents(self):
        n = len(self.vars)
        if not self.terms:
            return (0,) * n
        return tuple(max(exp[i] for exp in self.terms) for i in range(n))

    def constant_value(self):
        if not self.terms:
            return 0
        exp, c = next(iter(self.terms.items()))
        if len(self.terms) != 1 or any(exp):
            raise CoefficientRingError(f"{self} is not constant")
        return c

    def int_content(self):
        """gcd of the integer coefficients, with the sign of the lex-leading one."""
        if not self.terms:
            return 0
        g = reduce(int_gcd, (abs(c) for c in self.terms.values()))
        return g if self.lead_coeff() > 0 else -g

    def lead_exp(self):
        return max(self.terms) if self.terms else None

    def lead_coeff(self):
        return self.terms[max(self.terms)] if self.terms else 0

    def extend_vars(self, vars):
        """Reinterpret over a larger variable tuple (must contain self.vars)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for v in self.vars:
            if v not in vars:
                raise CoefficientRingError(f"{v!r} missing from target vars {vars}")
            pos.append(vars.index(v))
        n = len(vars)
        terms = {}
        for exp, c in self.terms.items():
            e = [0] * n
            for p, x in zip(pos, exp):
                e[p] = x
            terms[tuple(e)] = c
        return LaurentPoly._raw(vars, terms)

    # -- comparisons, hashing, display -------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, tuple(sorted(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                f"{v}^{x}" if x != 1 else v for v, x in zip(self.vars, exp) if x
            )
            if mono:
                lead = {1: "", -1: "-"}.get(c, f"{c}*")
                bits.append(f"{lead}{mono}")
            else:
                bits.append(str(c))
        s = " + ".join(bits)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self})"

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(exp), "coef": str(self.terms[exp])}
                for exp in sorted(self.terms)
            ],
        }

    @classmethod
    def from_json(cls, data):
        vars = tuple(data["vars"])
        return cls(vars, {tuple(t["exp"]): int(t["coef"]) for t in data["terms"]})

    def dumps(self):
        return json.dumps(self.to_json(), ensure_ascii=False, sort_keys=True)


# ---------------------------------------------------------------------------
# polynomial gcd machinery (ordinary polynomials, integer coefficients)
# ---------------------------------------------------------------------------


def _to_univar(p, k):
    """View p as univariate in variable index k: dict degree -> LaurentPoly."""
    n = len(p.vars)
    out = {}
    for exp, c in p.terms.items():
        d = exp[k]
        rest = exp[:k] + (0,) + exp[k + 1 :]
        coeff = out.setdefault(d, {})
        coeff[rest] = coeff.get(rest, 0) + c
    return {
        d: LaurentPoly._raw(p.vars, {e: c for e, c in t.items() if c})
        for d, t in out.items()
        if any(t.values())
    }


def _from_univar(u, vars, k):
    terms = {}
    for d, coeff in u.items():
        for exp, c in coeff.terms.items():
            e = exp[:k] + (d,) + exp[k + 1 :]
            terms[e] = terms.get(e, 0) + c
    return LaurentPoly._raw(tuple(vars), {e: c for e, c in terms.items() if c})


def _uni_deg(u):
    return max(u) if u else -1


def _uni_scale(u, f):
    return {d: c * f for d, c in u.items() if not (c * f).is_zero()}


def _uni_sub(a, b):
    out = dict(a)
    for d, c in b.items():
        s = out.get(d)
        s = c.__neg__() if s is None else s - c
        if s.is_zero():
            out.pop(d, None)
        else:
            out[d] = s
    return out


def _uni_shift_mul(u, s, f):
    """u * f * x^s in the main variable."""
    return {d + s: c * f for d, c in u.items()}


def _pseudo_rem(a, b):
    """Pseudo-remainder of a by b (univariate with LaurentPoly coefficients)."""
    da, db = _uni_deg(a), _uni_deg(b)
    lb = b[db]
    r = dict(a)
    while r and _uni_deg(r) >= db:
        dr = _uni_deg(r)
        lr = r[dr]
        r = _uni_sub(_uni_scale(r, lb), _uni_shift_mul(b, dr - db, lr))
    return r


def poly_content_pp(p, k):
    """Content (gcd of coefficients) and primitive part of p in main variable k."""
    u = _to_univar(p, k)
    coeffs = sorted(u.values(), key=lambda c: len(c.terms))
    cont = coeffs[0]
    for c in coeffs[1:]:
        if cont.is_one():
            break
        cont = poly_gcd(cont, c)
    cont = _pos_normal(cont)
    return cont, divexact(p, cont)


def poly_gcd(a, b):
    """gcd of two ordinary (non-negative exponent) polynomials over Z.

    Normalized so the lex-leading coefficient is positive.  Uses the
    primitive PRS; fine at the degrees this package meets.
    """
    if a.vars != b.vars:
        raise CoefficientRingError("gcd across different rings")
    if a.is_zero():
        return _pos_normal(b)
    if b.is_zero():
        return _pos_normal(a)
    ca, cb = a.int_content(), b.int_content()
    cg = int_gcd(abs(ca), abs(cb))
    a = LaurentPoly._raw(a.vars, {e: c // ca for e, c in a.terms.items()})
    b = LaurentPoly._raw(b.vars, {e: c // cb for e, c in b.terms.items()})
    g = _poly_gcd_prim(a, b)
    return _pos_normal(g * cg)


def _active_var(a, b):
    ma, mb = a.max_exponents(), b.max_exponents()
    for k in range(len(a.vars) - 1, -1, -1):
        if ma[k] > 0 or mb[k] > 0:
            return k
    return None


def _poly_gcd_prim(a, b):
    k = _active_var(a, b)
    if k is None:
        return LaurentPoly.one(a.vars)
    conta, ppa = poly_content_pp(a, k)
    contb, ppb = poly_content_pp(b, k)
    cont = poly_gcd(conta, contb)
    ua, ub = _to_univar(ppa, k), _to_univar(ppb, k)
    if _uni_deg(ua) < _uni_deg(ub):
        ua, ub = ub, ua
    # primitive PRS in the main variable
    while True:
        r = _pseudo_rem(ua, ub)
        if not r:
            g_uni = ub
            break
        rp = _from_univar(r, a.vars, k)
        _, rp = poly_content_pp(rp, k)
        ua, ub = ub, _to_univar(rp, k)
    g = _from_univar(g_uni, a.vars, k)
    _, g = poly_content_pp(g, k)
    return cont * g


def _pos_normal(p):
    if p.lead_coeff() < 0:
        return -p
    return p


def divexact(a, b):
    """Exact division a / b for LaurentPoly; raises if not exact."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    u = b.as_unit()
    if u is not None:
        exp, c = u
        out = {}
        nexp = tuple(-x for x in exp)
        for e, k in a.terms.items():
            q, r = divmod(k, c)
            if r:
                raise CoefficientRingError(f"{a} not divisible by {b}")
            out[tuple(x + y for x, y in zip(e, nexp))] = q
        return LaurentPoly._raw(a.vars, out)
    rem = a
    quot = {}
    lb = b.lead_exp()
    cb = b.terms[lb]
    while rem.terms:
        la = rem.lead_exp()
        q, r = divmod(rem.terms[la], cb)
        e = tuple(x - y for x, y in zip(la, lb))
        if r:
            raise CoefficientRingError(f"{a} not divisible by {b}")
        quot[e] = quot.get(e, 0) + q
        rem = LaurentPoly._raw(
            rem.vars, terms_sub(rem.terms, terms_mul_monomial(b.terms, e, q))
        )
    return LaurentPoly(a.vars, quot)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """A reduced fraction of Laurent polynomials over a fixed variable tuple.

    Canonical form: numerator and denominator are ordinary polynomials with
    no common (polynomial or monomial) factor, integer contents coprime, and
    the denominator's lex-leading coefficient positive.  Equal values are
    structurally equal.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, int):
            if den is None:
                raise CoefficientRingError("integer numerator needs an explicit denominator")
            num = LaurentPoly.const(den.vars, num)
        if den is None:
            den = LaurentPoly.one(num.vars)
        if num.vars != den.vars:
            raise CoefficientRingError(
                f"mismatched indeterminates {num.vars} vs {den.vars}"
            )
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            num, den = _reduce_fraction(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_poly(cls, p):
        n, d = _reduce_fraction(p, LaurentPoly.one(p.vars))
        return cls(n, d, _reduced=True)

    @classmethod
    def zero(cls, vars):
        return cls.from_poly(LaurentPoly.zero(vars))

    @classmethod
    def one(cls, vars):
        return cls.from_poly(LaurentPoly.one(vars))

    @classmethod
    def const(cls, vars, k):
        return cls.from_poly(LaurentPoly.const(vars, k))

    @classmethod
    def gen(cls, vars, name, power=1):
        return cls.from_poly(LaurentPoly.gen(vars, name, power))

    @property
    def vars(self):
        return self.num.vars

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.vars != self.vars:
                raise CoefficientRingError(
                    f"mismatched indeterminates {self.vars} vs {other.vars}"
                )
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction.from_poly(other.extend_vars(self.vars)
                                              if other.vars != self.vars else other)
        if isinstance(other, int):
            return RationalFunction.const(self.vars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num - o.num, self.den)
        return RationalFunction(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num.terms or not o.num.terms:
            return RationalFunction.zero(self.vars)
        # cross-reduce first; keeps intermediate gcds small
        a, b = _reduce_fraction(self.num, o.den)
        c, d = _reduce_fraction(o.num, self.den)
        return RationalFunction(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFunction.one(self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            o = other
        else:
            try:
                o = self._coerce(other)
            except CoefficientRingError:
                return False
            if o is None:
                return NotImplemented
        return self.vars == o.vars and self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _reduce_fraction(num, den):
    """Canonicalize a Laurent fraction; see RationalFunction docstring."""
    if num.is_zero():
        return num, LaurentPoly.one(num.vars)
    n = len(num.vars)
    mn, md = num.min_exponents(), den.min_exponents()
    shift = tuple(-min(a, b) for a, b in zip(mn, md))
    if any(shift):
        num = LaurentPoly._raw(num.vars, terms_mul_monomial(num.terms, shift, 1))
        den = LaurentPoly._raw(den.vars, terms_mul_monomial(den.terms, shift, 1))
    ud = den.as_unit()
    if ud is not None:
        exp, c = ud
        # denominator is a monomial: fold it into the numerator where possible
        g = int_gcd(abs(num.int_content()), abs(c))
        if c < 0:
            g = -g
        num = LaurentPoly._raw(
            num.vars,
            terms_mul_monomial(
                {e: k // g for e, k in num.terms.items()}, tuple(-x for x in exp), 1
            ),
        )
        den = LaurentPoly.const(num.vars, c // g)
        mn = num.min_exponents()
        if any(x < 0 for x in mn):
            shift = tuple(-min(x, 0) for x in mn)
            num = LaurentPoly._raw(num.vars, terms_mul_monomial(num.terms, shift, 1))
            den = LaurentPoly._raw(den.vars, terms_mul_monomial(den.terms, shift, 1))
        return num, den
    cn, cd = num.int_content(), den.int_content()
    cg = int_gcd(abs(cn), abs(cd))
    if cg > 1:
        num = LaurentPoly._raw(num.vars, {e: c // cg for e, c in num.terms.items()})
        den = LaurentPoly._raw(den.vars, {e: c // cg for e, c in den.terms.items()})
    g = poly_gcd(num, den)
    if not g.is_one():
        num = divexact(num, g)
        den = divexact(den, g)
    if den.lead_coeff() < 0:
        num, den = -num, -den
    return num, den


# ---------------------------------------------------------------------------
# specialization
# ---------------------------------------------------------------------------


def specialize(p, assignment, target_vars=None):
    """Substitute RationalFunction values for some indeterminates of p.

    `assignment` maps symbol names to RationalFunction (or LaurentPoly/int)
    values over a common target variable tuple; unassigned symbols are
    retained and must appear among the target variables.  Substitution is a
    ring homomorphism; a zero denominator raises SpecializationError.
    """
    if isinstance(p, RationalFunction):
        den = specialize(p.den, assignment, target_vars)
        if den.is_zero():
            raise SpecializationError(f"denominator {p.den} vanishes under {assignment}")
        return specialize(p.num, assignment, target_vars) / den
    if target_vars is None:
        names = set()
        for v in assignment.values():
            if isinstance(v, (LaurentPoly, RationalFunction)):
                names.update(v.vars)
        names.update(v for v in p.vars if v not in assignment)
        target_vars = ordered_vars(names)
    target_vars = tuple(target_vars)
    values = []
    for v in p.vars:
        if v in assignment:
            val = assignment[v]
            if isinstance(val, int):
                val = RationalFunction.const(target_vars, val)
            elif isinstance(val, LaurentPoly):
                val = RationalFunction.from_poly(val.extend_vars(target_vars))
            elif val.vars != target_vars:
                raise CoefficientRingError(
                    f"assignment for {v} is over {val.vars}, expected {target_vars}"
                )
        else:
            if v not in target_vars:
                raise CoefficientRingError(f"retained symbol {v} missing from target")
            val = RationalFunction.gen(target_vars, v)
        values.append(val)
    out = RationalFunction.zero(target_vars)
    for exp, c in p.terms.items():
        term = RationalFunction.const(target_vars, c)
        for val, x in zip(values, exp):
            if x:
                if x < 0 and val.is_zero():
                    raise SpecializationError("negative power of zero under specialization")
                term = term * val ** x
        out = out + term
    return out


def delta_as_qz():
    """δ's image (z⁻¹ − z)/(q⁻¹ − q) + 1 in Q(q, z)."""
    zi = LaurentPoly.gen(QZV, Z, -1) - LaurentPoly.gen(QZV, Z)
    qi = LaurentPoly.gen(QZV, Q, -1) - LaurentPoly.gen(QZV, Q)
    return RationalFunction(zi, qi) + RationalFunction.one(QZV)


def delta_eliminate(p):
    """Image of p (over any subset of {q, z, δ}) in Q(q, z) with δ eliminated."""
    if isinstance(p, RationalFunction):
        den = delta_eliminate(p.den)
        if den.is_zero():
            raise SpecializationError("denominator vanishes under delta elimination")
        return delta_eliminate(p.num) / den
    if DELTA not in p.vars:
        return specialize(p, {}, QZV)
    return specialize(p, {DELTA: delta_as_qz()}, QZV)
