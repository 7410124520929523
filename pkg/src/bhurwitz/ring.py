"""Exact scalars and truncated sparse series.

Two kinds of coefficients appear throughout the package:

* ``ParamScalar`` -- an element of Q(s), the field of rational functions in
  the deformation symbol ``s`` (with alpha = s**2 and frakb = 1/s - s).
* polynomial coefficients in ``frakb`` and named symbols such as ``P1``,
  ``Q1`` (backed by python-flint ``fmpq_mpoly``), or plain ``Fraction``
  values once every parameter has been specialised.

A ``Domain`` object bundles the operations the series layer needs from a
coefficient type.  ``SeriesElem`` is a sparse map from exponent keys
``(t, hbar, Lambda, monomial)`` to coefficients, with an attached
``TruncSpec`` that decides which keys survive.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Optional, Tuple

import flint


@contextmanager
def flint_context(bits: Optional[int] = None, series_length: Optional[int] = None):
    """Temporarily set flint's ball precision and its global power-series cap.

    flint truncates every ``*_series`` result to ``ctx.cap`` terms regardless
    of the requested ``prec``, so series code must raise the cap first.
    """
    old_prec, old_cap = flint.ctx.prec, flint.ctx.cap
    try:
        if bits is not None:
            flint.ctx.prec = int(bits)
        if series_length is not None:
            flint.ctx.cap = max(int(series_length), old_cap)
        yield
    finally:
        flint.ctx.prec, flint.ctx.cap = old_prec, old_cap


_S_GEN = flint.fmpq_poly([0, 1])
_ONE_POLY = flint.fmpq_poly([1])


class ConfigurationError(ValueError):
    """Incompatible truncation or variable universes."""


class DomainError(ValueError):
    """An operation was called outside its domain (e.g. exp of a unit)."""


class NotAFrakbPolynomial(ValueError):
    """Raised when a Laurent polynomial in s is not invariant under s -> -1/s."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__("not-a-frakb-polynomial; residual: %s" % (residual,))


def to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, flint.fmpz):
        return flint.fmpq(x)
    raise TypeError("cannot convert %r to a rational" % (x,))


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    raise TypeError("cannot convert %r to a Fraction" % (x,))


# ---------------------------------------------------------------------------
# ParamScalar: the field Q(s)
# ---------------------------------------------------------------------------


class ParamScalar:
    """Reduced fraction num/den of univariate polynomials in s over Q.

    The denominator is monic and coprime to the numerator, so equality is
    coefficient-wise comparison.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, reduced: bool = False):
        if not isinstance(num, flint.fmpq_poly):
            num = flint.fmpq_poly([to_fmpq(num)])
        if den is None:
            self.num, self.den = num, _ONE_POLY
            return
        if not isinstance(den, flint.fmpq_poly):
            den = flint.fmpq_poly([to_fmpq(den)])
        if den.is_zero():
            raise ZeroDivisionError("ParamScalar with zero denominator")
        if not reduced:
            if num.is_zero():
                num, den = num, _ONE_POLY
            elif den.degree() > 0:
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num, self.den = num, den

    # constructors -------------------------------------------------------
    @classmethod
    def s(cls) -> "ParamScalar":
        return cls(_S_GEN)

    @classmethod
    def alpha(cls) -> "ParamScalar":
        return cls(_S_GEN * _S_GEN)

    @classmethod
    def frakb(cls) -> "ParamScalar":
        # 1/s - s = (1 - s^2)/s
        return cls(flint.fmpq_poly([1, 0, -1]), _S_GEN, reduced=True)

    @classmethod
    def from_laurent(cls, terms: Dict[int, object]) -> "ParamScalar":
        """Build sum c_e s^e from a dict exponent -> rational."""
        if not terms:
            return cls(0)
        low = min(terms)
        shift = -low if low < 0 else 0
        coeffs = [flint.fmpq(0)] * (max(terms) + shift + 1)
        for e, c in terms.items():
            coeffs[e + shift] = to_fmpq(c)
        num = flint.fmpq_poly(coeffs)
        if shift:
            return cls(num, _S_GEN ** shift)
        return cls(num)

    @staticmethod
    def coerce(x) -> "ParamScalar":
        if isinstance(x, ParamScalar):
            return x
        return ParamScalar(x)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = _coerce_ps(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return ParamScalar(self.num + o.num, None)
        if self.den == o.den:
            return ParamScalar(self.num + o.num, self.den)
        return ParamScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = _coerce_ps(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_ps(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, flint.fmpq)):
            if other == 0:
                return ParamScalar(0)
            return ParamScalar(self.num * to_fmpq(other), self.den, reduced=True)
        o = _coerce_ps(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return ParamScalar(self.num * o.num, None)
        return ParamScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "ParamScalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero ParamScalar")
        return ParamScalar(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce_ps(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_ps(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ParamScalar(self.num ** k, self.den ** k, reduced=True)

    # comparisons --------------------------------------------------------
    def __eq__(self, other):
        o = _coerce_ps(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(str(c) for c in self.num.coeffs()),
                     tuple(str(c) for c in self.den.coeffs())))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    # inspection ---------------------------------------------------------
    def is_laurent(self) -> bool:
        """True when the denominator is a power of s."""
        d = self.den.degree()
        return d == 0 or self.den == _S_GEN ** d

    def laurent_terms(self) -> Dict[int, Fraction]:
        if not self.is_laurent():
            raise DomainError("ParamScalar %s is not a Laurent polynomial in s" % self)
        shift = self.den.degree()
        out = {}
        for i, c in enumerate(self.num.coeffs()):
            if c != 0:
                out[i - shift] = to_fraction(c)
        return out

    def evaluate(self, s_value) -> Fraction:
        v = to_fmpq(s_value)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError("pole of ParamScalar at s = %s" % s_value)
        return to_fraction(self.num(v) / d)

    def substitute_s(self, f: Callable) -> "ParamScalar":
        """Apply an automorphism s -> f(s) given as a function on ParamScalar."""
        s_img = f(ParamScalar.s())
        return _poly_at(self.num, s_img) / _poly_at(self.den, s_img)

    def __repr__(self):
        return "ParamScalar(%s)" % self

    def __str__(self):
        n = _poly_str(self.num)
        if self.den.is_one():
            return n
        return "(%s)/(%s)" % (n, _poly_str(self.den))


def _coerce_ps(x) -> Optional[ParamScalar]:
    if isinstance(x, ParamScalar):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq)):
        return ParamScalar(x)
    return None


def _poly_at(p: flint.fmpq_poly, x: ParamScalar) -> ParamScalar:
    acc = ParamScalar(0)
    for c in reversed(p.coeffs()):
        acc = acc * x + ParamScalar(c)
    return acc


def _poly_str(p: flint.fmpq_poly) -> str:
    parts = []
    for i, c in enumerate(p.coeffs()):
        if c == 0:
            continue
        power = "s" if i == 1 else "s^%d" % i
        if i == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(power)
        elif c == -1:
            parts.append("-" + power)
        else:
            parts.append("%s*%s" % (c, power))
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# frakb re-expression
# ---------------------------------------------------------------------------


def _frakb_power_laurent(d: int) -> Dict[int, int]:
    """(1/s - s)^d as a dict exponent -> integer coefficient."""
    from math import comb

    out = {}
    for i in range(d + 1):
        # choose i factors of (-s), d - i factors of 1/s
        out[i - (d - i)] = comb(d, i) * (-1) ** i
    return out


def laurent_to_frakb(terms: Dict[int, object], zero=0) -> Dict[int, object]:
    """Rewrite sum c_e s^e as a polynomial in frakb = 1/s - s.

    Coefficients may be any ring elements supporting +, -, * by int.
    Returns dict degree -> coefficient; raises NotAFrakbPolynomial with the
    leftover terms when the input is not invariant under s -> -1/s.
    """
    work = {e: c for e, c in terms.items() if not _is_zero(c)}
    out = {}
    while work:
        d = max(work)
        if d < 0:
            break
        c = work[d]
        lead = c if d % 2 == 0 else -c
        out[d] = lead
        for e, k in _frakb_power_laurent(d).items():
            v = work.get(e, zero) - lead * k
            if _is_zero(v):
                work.pop(e, None)
            else:
                work[e] = v
    if work:
        raise NotAFrakbPolynomial(work)
    return out


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


def reexpress_in_frakb(f: ParamScalar):
    """Return the coefficient list [q0, q1, ...] with q(1/s - s) = f."""
    f = ParamScalar.coerce(f)
    if not f.is_laurent():
        raise NotAFrakbPolynomial({"denominator": str(f.den)})
    poly = laurent_to_frakb(f.laurent_terms(), Fraction(0))
    if not poly:
        return []
    return [poly.get(i, Fraction(0)) for i in range(max(poly) + 1)]


# ---------------------------------------------------------------------------
# Coefficient domains
# ---------------------------------------------------------------------------


class ScalarDomain:
    """Coefficients in Q(s); frakb = 1/s - s.  Symbols must be numeric."""

    name = "Q(s)"

    def __init__(self, values: Optional[Dict[str, object]] = None):
        self.values = dict(values or {})

    def zero(self):
        return ParamScalar(0)

    def one(self):
        return ParamScalar(1)

    def const(self, q):
        return ParamScalar(q)

    def frakb(self):
        return ParamScalar.frakb()

    def symbol(self, name: str):
        if name in self.values:
            return ParamScalar(self.values[name])
        raise ConfigurationError("symbol %s needs a numeric value in Q(s) domain" % name)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def mul_int(self, x, k):
        return x * k

    def fmt(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, ScalarDomain) and self.values == other.values

    def __hash__(self):
        return hash(("ScalarDomain", tuple(sorted(self.values.items()))))


class PolyDomain:
    """Polynomials over Q in frakb (generator 'b') and named symbols.

    A symbol listed in ``values`` is replaced by that rational.  If
    ``frakb_value`` is given, frakb is a constant instead of a generator.
    """

    name = "Q[b, symbols]"

    def __init__(self, symbols: Iterable[str] = (), frakb_value=None,
                 values: Optional[Dict[str, object]] = None):
        self.symbols = tuple(symbols)
        self.frakb_value = None if frakb_value is None else to_fraction(frakb_value)
        self.values = dict(values or {})
        gens = (() if self.frakb_value is not None else ("b",)) + self.symbols
        self.gen_names = gens
        self.ctx = flint.fmpq_mpoly_ctx.get(gens if gens else (), "deglex")
        self._gens = dict(zip(gens, self.ctx.gens())) if gens else {}

    def zero(self):
        return self.ctx.constant(0)

    def one(self):
        return self.ctx.constant(1)

    def const(self, q):
        return self.ctx.constant(to_fmpq(q))

    def frakb(self):
        if self.frakb_value is not None:
            return self.const(self.frakb_value)
        return self._gens["b"]

    def symbol(self, name: str):
        if name in self.values:
            return self.const(self.values[name])
        if name in self._gens and name != "b":
            return self._gens[name]
        raise ConfigurationError("unknown symbol %s for domain %s" % (name, self.gen_names))

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def mul_int(self, x, k):
        return x * k

    def fmt(self, x) -> str:
        return str(x)

    def evaluate(self, x, assignment: Dict[str, object]) -> Fraction:
        args = []
        for g in self.gen_names:
            args.append(to_fmpq(assignment[g]))
        if not args:
            return to_fraction(x.leading_coefficient()) if not x.is_zero() else Fraction(0)
        return to_fraction(x(*args))

    def __eq__(self, other):
        return (isinstance(other, PolyDomain) and self.gen_names == other.gen_names
                and self.frakb_value == other.frakb_value and self.values == other.values)

    def __hash__(self):
        return hash(("PolyDomain", self.gen_names, self.frakb_value))


class RationalDomain:
    """Plain Fraction coefficients with frakb specialised to a number."""

    name = "Q"

    def __init__(self, frakb_value=0, values: Optional[Dict[str, object]] = None):
        self.frakb_value = to_fraction(frakb_value)
        self.values = {k: to_fraction(v) for k, v in (values or {}).items()}

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def const(self, q):
        return to_fraction(q)

    def frakb(self):
        return self.frakb_value

    def symbol(self, name: str):
        if name in self.values:
            return self.values[name]
        raise ConfigurationError("symbol %s has no numeric value" % name)

    def is_zero(self, x) -> bool:
        return x == 0

    def mul_int(self, x, k):
        return x * k

    def fmt(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return (isinstance(other, RationalDomain) and self.frakb_value == other.frakb_value
                and self.values == other.values)

    def __hash__(self):
        return hash(("RationalDomain", self.frakb_value))


# ---------------------------------------------------------------------------
# Truncation and series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncSpec:
    """Which exponent keys a series keeps.

    ``grade_cap`` bounds hbar_exponent + t_exponent; since every operator in
    the package raises that grade by a nonnegative amount, the cap defines an
    ideal and truncating intermediate results by it is exact.
    """

    t_max: Optional[int] = None
    h_min: Optional[int] = None
    h_max: Optional[int] = None
    degree_max: Optional[int] = None
    grade_cap: Optional[int] = None

    def __post_init__(self):
        if self.h_min is not None and self.h_max is not None and self.h_min > self.h_max:
            raise ConfigurationError("h_min > h_max")
        if self.t_max is not None and self.t_max < 0:
            raise ConfigurationError("t_max must be nonnegative")
        if (self.degree_max is not None and self.t_max is not None
                and self.degree_max < self.t_max):
            raise ConfigurationError("state_degree_max must be at least t_max")

    @property
    def hbar_window(self):
        return (self.h_min, self.h_max)

    @property
    def state_degree_max(self):
        return self.degree_max

    def allows(self, key) -> bool:
        t, h, _lam, mono = key
        if self.t_max is not None and t > self.t_max:
            return False
        if self.h_max is not None and h > self.h_max:
            return False
        if self.h_min is not None and h < self.h_min:
            return False
        if self.grade_cap is not None and h + t > self.grade_cap:
            return False
        if self.degree_max is not None and monomial_degree(mono) > self.degree_max:
            return False
        return True

    def without_degree(self) -> "TruncSpec":
        return TruncSpec(self.t_max, self.h_min, self.h_max, None, self.grade_cap)


NO_TRUNC = TruncSpec()


def var_weight(v) -> int:
    """Weighted degree of a state variable label (k or (a, k))."""
    return v if isinstance(v, int) else v[1]


def monomial_degree(mono) -> int:
    return sum(var_weight(v) for v in mono)


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def mono_str(mono) -> str:
    if not mono:
        return "1"
    out = []
    prev, cnt = None, 0
    for v in list(mono) + [None]:
        if v == prev:
            cnt += 1
            continue
        if prev is not None:
            name = ("p%d" % prev) if isinstance(prev, int) else ("x%d_%d" % prev)
            out.append(name if cnt == 1 else "%s^%d" % (name, cnt))
        prev, cnt = v, 1
    return "*".join(out)


def _key_order(key):
    t, h, lam, mono = key
    return (t, h, lam, monomial_degree(mono), [(-var_weight(v), str(v)) for v in mono])


class SeriesElem:
    """Sparse truncated series; keys are (t, hbar, Lambda, monomial).

    The monomial is a tuple of variable labels sorted in decreasing order,
    so a one-color monomial in p~ is literally a partition.
    """

    __slots__ = ("terms", "domain", "trunc")

    def __init__(self, terms=None, domain=None, trunc: TruncSpec = NO_TRUNC, check=True):
        self.domain = domain if domain is not None else ScalarDomain()
        self.trunc = trunc
        if terms is None:
            self.terms = {}
        elif check:
            z = self.domain.is_zero
            self.terms = {k: c for k, c in terms.items() if trunc.allows(k) and not z(c)}
        else:
            self.terms = terms

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, domain=None, trunc=NO_TRUNC):
        return cls({}, domain, trunc, check=False)

    @classmethod
    def one(cls, domain=None, trunc=NO_TRUNC):
        d = domain if domain is not None else ScalarDomain()
        return cls({(0, 0, 0, ()): d.one()}, d, trunc)

    @classmethod
    def monomial(cls, coeff=None, t=0, h=0, lam=0, mono=(), domain=None, trunc=NO_TRUNC):
        d = domain if domain is not None else ScalarDomain()
        c = d.one() if coeff is None else coeff
        return cls({(t, h, lam, tuple(sorted(mono, reverse=True))): c}, d, trunc)

    def like(self, terms, check=True) -> "SeriesElem":
        return SeriesElem(terms, self.domain, self.trunc, check=check)

    def with_trunc(self, trunc: TruncSpec) -> "SeriesElem":
        return SeriesElem(dict(self.terms), self.domain, trunc)

    # linear structure ---------------------------------------------------
    def _check_compatible(self, other: "SeriesElem"):
        if self.trunc != other.trunc:
            raise ConfigurationError("incompatible TruncSpec: %s vs %s" % (self.trunc, other.trunc))
        if self.domain != other.domain:
            raise ConfigurationError("incompatible coefficient domains")

    def __add__(self, other):
        if not isinstance(other, SeriesElem):
            other = self.constant(other)
        self._check_compatible(other)
        out = dict(self.terms)
        z = self.domain.is_zero
        for k, c in other.terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if z(v):
                out.pop(k, None)
            else:
                out[k] = v
        return self.like(out, check=False)

    __radd__ = __add__

    def __neg__(self):
        return self.like({k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        if not isinstance(other, SeriesElem):
            other = self.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def constant(self, c) -> "SeriesElem":
        return SeriesElem({(0, 0, 0, ()): self.domain.const(c) if not _is_domain_elem(c) else c},
                          self.domain, self.trunc)

    def scale(self, c) -> "SeriesElem":
        """Multiply every coefficient by a domain element or rational."""
        if isinstance(c, (int, Fraction)):
            if c == 0:
                return self.like({}, check=False)
            c = self.domain.const(c)
        z = self.domain.is_zero
        out = {}
        for k, v in self.terms.items():
            w = v * c
            if not z(w):
                out[k] = w
        return self.like(out, check=False)

    def shift(self, t=0, h=0, lam=0, mono=()) -> "SeriesElem":
        """Multiply by the monomial t^t hbar^h Lambda^lam * mono, truncating."""
        mono = tuple(sorted(mono, reverse=True))
        out = {}
        allows = self.trunc.allows
        for (kt, kh, kl, km), c in self.terms.items():
            key = (kt + t, kh + h, kl + lam, mono_mul(km, mono))
            if allows(key):
                out[key] = c
        return self.like(out, check=False)

    def __mul__(self, other):
        if isinstance(other, SeriesElem):
            return series_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, SeriesElem):
            return NotImplemented
        return (self - other).is_zero()

    def __len__(self):
        return len(self.terms)

    def coeff(self, t=0, h=0, lam=0, mono=()):
        return self.terms.get((t, h, lam, tuple(sorted(mono, reverse=True))), self.domain.zero())

    def t_part(self, n: int) -> "SeriesElem":
        return self.like({k: c for k, c in self.terms.items() if k[0] == n}, check=False)

    def t_degree(self) -> int:
        return max((k[0] for k in self.terms), default=-1)

    def map_coeffs(self, fn, domain=None) -> "SeriesElem":
        d = domain if domain is not None else self.domain
        return SeriesElem({k: fn(c) for k, c in self.terms.items()}, d, self.trunc)

    def filter(self, pred) -> "SeriesElem":
        return self.like({k: c for k, c in self.terms.items() if pred(k)}, check=False)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: _key_order(kv[0]))

    def to_text(self) -> str:
        """One term per line: 'coeff * monomial'."""
        lines = []
        for (t, h, lam, mono), c in self.sorted_items():
            factors = []
            if t:
                factors.append("t^%d" % t if t != 1 else "t")
            if h:
                factors.append("hbar^%d" % h if h != 1 else "hbar")
            if lam:
                factors.append("L^%d" % lam if lam != 1 else "L")
            if mono:
                factors.append(mono_str(mono))
            lines.append("%s * %s" % (self.domain.fmt(c), "*".join(factors) if factors else "1"))
        return "\n".join(lines)

    def __repr__(self):
        return "SeriesElem(%d terms)" % len(self.terms)


def _is_domain_elem(c) -> bool:
    return not isinstance(c, (int, Fraction))


def series_mul(a: SeriesElem, b: SeriesElem) -> SeriesElem:
    """Truncated product of two series with equal TruncSpec and domain."""
    a._check_compatible(b)
    out: Dict[Tuple, object] = {}
    allows = a.trunc.allows
    z = a.domain.is_zero
    for (at, ah, al, am), ac in a.terms.items():
        for (bt, bh, bl, bm), bc in b.terms.items():
            key = (at + bt, ah + bh, al + bl, mono_mul(am, bm))
            if not allows(key):
                continue
            v = out.get(key)
            prod = ac * bc
            out[key] = prod if v is None else v + prod
    return a.like({k: v for k, v in out.items() if not z(v)}, check=False)


def _split_t(a: SeriesElem, t_max: int):
    parts = [dict() for _ in range(t_max + 1)]
    for k, c in a.terms.items():
        if k[0] <= t_max:
            parts[k[0]][k] = c
    return [a.like(p, check=False) for p in parts]


def series_exp(a: SeriesElem) -> SeriesElem:
    """exp of a series without t^0 part, computed t-adically up to t_max."""
    if a.trunc.t_max is None:
        raise ConfigurationError("series_exp needs a finite t_max")
    if any(k[0] == 0 for k in a.terms):
        raise DomainError("series_exp: argument has a nonzero constant term in t")
    n_max = a.trunc.t_max
    parts = _split_t(a, n_max)
    out = [SeriesElem.one(a.domain, a.trunc)]
    # n E_n = sum_{k=1}^n k a_k E_{n-k}
    for n in range(1, n_max + 1):
        acc = SeriesElem.zero(a.domain, a.trunc)
        for k in range(1, n + 1):
            if parts[k].terms and out[n - k].terms:
                acc = acc + series_mul(parts[k], out[n - k]).scale(k)
        out.append(acc.scale(Fraction(1, n)))
    total = out[0]
    for e in out[1:]:
        total = total + e
    return total


def series_log(a: SeriesElem) -> SeriesElem:
    """log of a series whose t^0 part is exactly 1."""
    if a.trunc.t_max is None:
        raise ConfigurationError("series_log needs a finite t_max")
    n_max = a.trunc.t_max
    parts = _split_t(a, n_max)
    if not (parts[0] - SeriesElem.one(a.domain, a.trunc)).is_zero():
        raise DomainError("series_log: constant term in t is not 1")
    logs = [SeriesElem.zero(a.domain, a.trunc)]
    # n L_n = n a_n - sum_{k=1}^{n-1} k L_k a_{n-k}
    for n in range(1, n_max + 1):
        acc = parts[n].scale(n)
        for k in range(1, n):
            if logs[k].terms and parts[n - k].terms:
                acc = acc - series_mul(logs[k], parts[n - k]).scale(k)
        logs.append(acc.scale(Fraction(1, n)))
    total = logs[0]
    for e in logs[1:]:
        total = total + e
    return total
