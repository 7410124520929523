"""Generating functions of G-weighted b-Hurwitz numbers.

The primary series is built from the Jack expansion

    tau = sum_n (s/hbar)^n t^n sum_{lambda |- n} J_lambda(s p~) / j_lambda
          * prod_{boxes} G(hbar * c~(box)),

with each coefficient re-expressed as a polynomial in frakb = 1/s - s.  The
cut-and-join equation and its refined per-k form are evaluated as residuals,
and a separate solver reconstructs tau from the cut-and-join equation alone at
fully numeric parameters.
"""

from __future__ import annotations

import csv
import io
import json
import re
from functools import lru_cache
from itertools import combinations_with_replacement
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .heisenberg import RepOneColor, apply_bridge_sum
from .jack import jack
from .partitions import Partition, hook_norm, hook_norm_at, partitions_of
from .ring import (ConfigurationError, DomainError, NotAFrakbPolynomial, ParamScalar, PolyDomain,
                   RationalDomain, ScalarDomain, SeriesElem, TruncSpec, flint_context,
                   reexpress_in_frakb, series_log, to_fmpq, to_fraction)

SCHEMA_VERSION = 1

G_FORM = "G"
GCHECK_FORM = "Gcheck"


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------


def _param(v):
    if isinstance(v, str):
        name = v.strip()
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name) or name in ("b", "z"):
            raise ConfigurationError("bad parameter symbol %r" % v)
        return name
    return Fraction(v)


@dataclass(frozen=True)
class RationalWeight:
    """G(z) = prod(P_i + z) / prod(Q_j - z)  or  Gcheck(z) = prod(1 + P_i z) / prod(1 - Q_j z).

    Entries of P and Q are rationals or symbol names.  In G-form the Q_j must
    be nonzero rationals, since the box factors invert them.
    """

    P: Tuple = ()
    Q: Tuple = ()
    form: str = G_FORM

    def __post_init__(self):
        if self.form not in (G_FORM, GCHECK_FORM):
            raise ConfigurationError("weight form must be 'G' or 'Gcheck'")
        object.__setattr__(self, "P", tuple(_param(p) for p in self.P))
        object.__setattr__(self, "Q", tuple(_param(q) for q in self.Q))
        if self.form == G_FORM:
            for q in self.Q:
                if isinstance(q, str):
                    raise ConfigurationError("symbolic Q is only supported in Gcheck form")
                if q == 0:
                    raise DomainError("Q_j = 0 is not allowed in G-form")
        # P_i + z against Q_j - z (or 1 + P_i z against 1 - Q_j z) cancel when P_i = -Q_j
        negated_q = {_neg(q) for q in self.Q}
        for p in self.P:
            if p in negated_q:
                raise ConfigurationError("weight is reducible: P = %s cancels Q = %s" % (p, _neg(p)))

    @property
    def n(self) -> int:
        return len(self.P)

    @property
    def m(self) -> int:
        return len(self.Q)

    def symbols(self) -> Tuple[str, ...]:
        out = []
        for v in self.P + self.Q:
            if isinstance(v, str) and v not in out:
                out.append(v)
        return tuple(out)

    def is_numeric(self) -> bool:
        return not self.symbols()

    def __call__(self, z):
        """Evaluate at a number (all parameters must be numeric)."""
        if not self.is_numeric():
            raise ConfigurationError("cannot evaluate a symbolic weight")
        num = den = Fraction(1)
        if self.form == G_FORM:
            for p in self.P:
                num *= p + z
            for q in self.Q:
                den *= q - z
        else:
            for p in self.P:
                num *= 1 + p * z
            for q in self.Q:
                den *= 1 - q * z
        if den == 0:
            raise DomainError("weight has a pole at %s" % z)
        return num / den

    def to_text(self) -> str:
        """Text accepted by parse_weight (with the same form)."""
        if self.form == G_FORM:
            num = "".join("(%s+z)" % _show(p) for p in self.P) or "1"
            den = "".join("(%s-z)" % _show(q) for q in self.Q)
        else:
            num = "".join("(1%s)" % _signed_z(p) for p in self.P) or "1"
            den = "".join("(1%s)" % _signed_z(_neg(q)) for q in self.Q)
        return num + ("/" + den if den else "")


def _show(v) -> str:
    return v if isinstance(v, str) else _frac_text(v)


def _signed_z(c) -> str:
    """'+c*z' with the sign folded in, e.g. '+z', '-2*z', '-P1*z'."""
    text = _show(c)
    sign = "-" if text.startswith("-") else "+"
    body = text.lstrip("-")
    return sign + ("z" if body == "1" else body + "*z")


def _frac_text(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


_FACTOR_RE = re.compile(r"\(([^()]*)\)")


def _parse_linear(text: str):
    """Parse 'a + c*z' into (a, c) with a, c rationals or a symbol (at most one symbol)."""
    body = text.replace(" ", "")
    if not body:
        raise ConfigurationError("empty factor")
    terms = re.findall(r"[+-]?[^+-]+", body)
    const, lin = Fraction(0), Fraction(0)
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("+-")
        if term.endswith("z"):
            coef = term[:-1].rstrip("*")
            lin_val = _parse_atom(coef) if coef else Fraction(1)
            lin = _combine(lin, lin_val, sign)
        else:
            const = _combine(const, _parse_atom(term), sign)
    return const, lin


def _parse_atom(text: str):
    if text in ("z", "b"):
        raise ConfigurationError("%r is reserved and cannot be a weight parameter" % text)
    if re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", text):
        return text
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError("cannot parse %r in weight" % text) from None


def _combine(acc, val, sign):
    if isinstance(val, str):
        if acc != 0:
            raise ConfigurationError("a factor may combine a symbol only with z")
        return val if sign > 0 else "-" + val
    if isinstance(acc, str):
        raise ConfigurationError("a factor may combine a symbol only with z")
    return acc + sign * val


def _split_fraction(text: str):
    """Split at the first '/' outside parentheses (a '/' inside is a rational)."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return text[:i], text[i + 1:]
    return text, ""


def _check_factors(text: str, part: str, offset: int, allow_one: bool):
    """Require ``part`` to be a product of parenthesised factors (or '1'); raise with a position."""
    stripped = part.strip()
    if allow_one and stripped == "1":
        return
    pos = 0
    for m in _FACTOR_RE.finditer(part):
        gap = part[pos:m.start()]
        if gap.strip():
            bad = pos + len(gap) - len(gap.lstrip())
            raise ConfigurationError("unexpected %r at position %d in %r" % (part[bad], offset + bad, text))
        pos = m.end()
    rest = part[pos:]
    if rest.strip():
        bad = pos + len(rest) - len(rest.lstrip())
        raise ConfigurationError("unexpected %r at position %d in %r" % (part[bad], offset + bad, text))


def parse_weight(text: str, form: Optional[str] = None) -> RationalWeight:
    """Parse '(P1+z)(2+z)/(1-z)' (G-form) or '(1+2z)/(1-z)' (Gcheck-form); '1' is G = 1."""
    text = text.strip()
    if text in ("", "1"):
        return RationalWeight((), (), form or G_FORM)
    num_text, den_text = _split_fraction(text)
    _check_factors(text, num_text, 0, allow_one=True)
    _check_factors(text, den_text, len(num_text) + 1, allow_one=False)
    if "/" in text[len(num_text):] and not den_text.strip():
        raise ConfigurationError("empty denominator in %r" % text)
    num = [_parse_linear(f) for f in _FACTOR_RE.findall(num_text)]
    den = [_parse_linear(f) for f in _FACTOR_RE.findall(den_text)]

    def fits_g():
        return all(c == 1 for _, c in num) and all(c == -1 for _, c in den)

    def fits_gcheck():
        return all(a == 1 for a, _ in num) and all(a == 1 for a, _ in den)

    chosen = form
    if chosen is None:
        chosen = G_FORM if fits_g() else GCHECK_FORM if fits_gcheck() else None
    if chosen == G_FORM and fits_g():
        return RationalWeight(tuple(a for a, _ in num), tuple(a for a, _ in den), G_FORM)
    if chosen == GCHECK_FORM and fits_gcheck():
        return RationalWeight(tuple(c for _, c in num), tuple(_neg(c) for _, c in den), GCHECK_FORM)
    raise ConfigurationError("weight %r is not of the form prod(P+z)/prod(Q-z) or "
                             "prod(1+Pz)/prod(1-Qz)" % text)


def _neg(v):
    if isinstance(v, str):
        return v[1:] if v.startswith("-") else "-" + v
    return -v


def reparametrize(w: RationalWeight) -> Tuple[RationalWeight, Fraction]:
    """Switch between G- and Gcheck-form.

    Returns (w', c) with the weights related by w = c * w' as functions of z,
    so that tau_w(t) = tau_w'(c t).  For w in G-form, c = prod P / prod Q.
    """
    if not w.is_numeric():
        raise ConfigurationError("reparametrize needs numeric parameters")
    if any(v == 0 for v in w.P + w.Q):
        raise DomainError("reparametrize needs nonzero parameters")
    c = Fraction(1)
    for p in w.P:
        c *= p
    for q in w.Q:
        c /= q
    inv_p = tuple(1 / p for p in w.P)
    inv_q = tuple(1 / q for q in w.Q)
    other = GCHECK_FORM if w.form == G_FORM else G_FORM
    return RationalWeight(inv_p, inv_q, other), c


def rescale_t(tau: SeriesElem, c) -> SeriesElem:
    """tau(t) -> tau(c t)."""
    d = tau.domain
    out = {}
    for key, v in tau.terms.items():
        out[key] = v * d.const(Fraction(c) ** key[0])
    return tau.like(out)


# ---------------------------------------------------------------------------
# tau from the Jack expansion
# ---------------------------------------------------------------------------


def grade_cap(t_max: int, g_max) -> int:
    """Largest hbar + t grade carried by a genus <= g_max term with |mu| <= t_max."""
    two_g = Fraction(g_max) * 2
    if two_g.denominator != 1 or two_g < 0:
        raise ConfigurationError("g_max must be a nonnegative half-integer")
    return int(two_g) - 2 + 2 * t_max


def hurwitz_trunc(t_max: int, g_max) -> TruncSpec:
    if t_max < 0:
        raise ConfigurationError("t_max must be nonnegative")
    return TruncSpec(t_max=t_max, grade_cap=max(grade_cap(t_max, g_max), 0))


def _contents(lam: Partition, s_value=None) -> list:
    if s_value is not None:
        return [s_value * (x - 1) - Fraction(y - 1) / s_value for x, y in lam.boxes()]
    s = ParamScalar.s()
    si = s.inverse()
    return [s * (x - 1) - si * (y - 1) for x, y in lam.boxes()]


def _unit(values):
    return Fraction(1) if not values or isinstance(values[0], Fraction) else ParamScalar(1)


def _elementary(values, kmax):
    """e_0..e_kmax of the given values."""
    one = _unit(values)
    e = [one] + [one * 0] * kmax
    for v in values:
        for k in range(kmax, 0, -1):
            e[k] = e[k] + e[k - 1] * v
    return e


def _complete(values, kmax):
    """h_0..h_kmax of the given values."""
    one = _unit(values)
    h = [one] + [one * 0] * kmax
    for v in values:
        for k in range(1, kmax + 1):
            h[k] = h[k] + h[k - 1] * v
    return h


def _box_product(w: RationalWeight, n: int, contents, h_budget: int, symbols):
    """prod over boxes of w(hbar c~) as {(hbar power, symbol exponents): ParamScalar}.

    Numeric parameters are folded into the coefficient; symbolic ones are
    tracked by exponent.  Only hbar powers <= h_budget are kept.
    """
    if h_budget < 0:
        return {}
    e = _elementary(contents, min(n, h_budget))
    hcomp = _complete(contents, h_budget)
    sym_index = {name: i for i, name in enumerate(symbols)}
    zero_exp = (0,) * len(symbols)

    def factor(value, series):
        # series: list of (hbar power, exponent of value, ParamScalar)
        out = {}
        for hp, expo, coef in series:
            if isinstance(value, str):
                neg = value.startswith("-")
                name = value[1:] if neg else value
                exps = list(zero_exp)
                exps[sym_index[name]] = expo
                c = coef if not (neg and expo % 2) else -coef
                key = (hp, tuple(exps))
            else:
                c = coef * Fraction(value) ** expo if expo else coef
                key = (hp, zero_exp)
            out[key] = out[key] + c if key in out else c
        return out

    pieces = []
    for p in w.P:
        if w.form == G_FORM:
            # prod (P + hbar c) = sum_k P^{n-k} hbar^k e_k
            series = [(k, n - k, e[k]) for k in range(0, min(n, h_budget) + 1)]
        else:
            series = [(k, k, e[k]) for k in range(0, min(n, h_budget) + 1)]
        pieces.append(factor(p, series))
    for q in w.Q:
        if w.form == G_FORM:
            # prod 1/(Q - hbar c) = sum_m Q^{-n-m} hbar^m h_m
            series = [(k, -n - k, hcomp[k]) for k in range(0, h_budget + 1)]
        else:
            series = [(k, k, hcomp[k]) for k in range(0, h_budget + 1)]
        pieces.append(factor(q, series))

    total = {(0, zero_exp): _unit(contents)}
    for piece in pieces:
        new = {}
        for (ha, ea), ca in total.items():
            for (hb_, eb), cb in piece.items():
                hp = ha + hb_
                if hp > h_budget:
                    continue
                key = (hp, tuple(x + y for x, y in zip(ea, eb)))
                v = ca * cb
                new[key] = new[key] + v if key in new else v
        total = {k: v for k, v in new.items() if v}
    return total


def _target_domain(symbols, s_value):
    if s_value is None:
        return PolyDomain(symbols)
    s_value = Fraction(s_value)
    if s_value <= 0:
        raise ConfigurationError("s must be positive")
    fb = 1 / s_value - s_value
    return PolyDomain(symbols, frakb_value=fb) if symbols else RationalDomain(fb)


def _monomial(domain, symbols, exps):
    out = domain.one()
    for name, e in zip(symbols, exps):
        if e:
            if e < 0:
                raise ConfigurationError("negative power of a symbolic parameter")
            out = out * domain.symbol(name) ** e
    return out


def tau_jack(w: RationalWeight, t_max: int, g_max=Fraction(3, 2), s_value=None) -> SeriesElem:
    """tau_G through t^t_max and genus g_max, from the Jack expansion.

    s_value=None gives coefficients polynomial in frakb (generator 'b') and
    the symbolic parameters; a rational s_value specialises frakb = 1/s - s.
    """
    if t_max > 8:
        raise ConfigurationError("t_max > 8 is outside the supported range")
    trunc = hurwitz_trunc(t_max, g_max)
    cap = trunc.grade_cap
    symbols = w.symbols()
    domain = _target_domain(symbols, s_value)
    if s_value is None:
        s = ParamScalar.s()
    else:
        s = Fraction(s_value)
        if s <= 0:
            raise ConfigurationError("s must be positive")
    acc: Dict[tuple, object] = {}
    for n in range(0, t_max + 1):
        # a term's grade is t + hbar exponent = n + (box hbar power - n)
        h_budget = cap
        for lam in partitions_of(n):
            J = jack(lam) if s_value is None else jack(lam, s * s)
            box = _box_product(w, n, _contents(lam, None if s_value is None else s), h_budget, symbols)
            if not box:
                continue
            norm = hook_norm(lam) if s_value is None else hook_norm_at(lam, s * s)
            pref = s ** n / norm
            for mu, c in J.coeffs.items():
                base = c * pref * s ** len(mu)
                for (hp, exps), bc in box.items():
                    key = (n, hp - n, tuple(mu), exps)
                    v = base * bc
                    acc[key] = acc[key] + v if key in acc else v
    return _assemble(acc, domain, trunc, symbols, s_value)


def _assemble(acc, domain, trunc, symbols, s_value):
    terms = {}
    b = domain.frakb()
    for (n, h, mu, exps), coeff in acc.items():
        if not coeff:
            continue
        mono = _monomial(domain, symbols, exps)
        if s_value is None:
            try:
                poly = reexpress_in_frakb(coeff)
            except NotAFrakbPolynomial as exc:
                raise DomainError("tau coefficient at t^%d hbar^%d %s is not a polynomial in frakb: %s"
                                  % (n, h, mu, coeff)) from exc
            value = domain.zero()
            for d, c in enumerate(poly):
                if c:
                    value = value + domain.const(c) * b ** d
        else:
            value = domain.const(coeff)
        key = (n, h, 0, mu)
        v = value * mono
        terms[key] = terms[key] + v if key in terms else v
    return SeriesElem(terms, domain, trunc)


def tau_jack_numeric(w: RationalWeight, s_value, hbar, t_max: int) -> Dict[int, Dict[Partition, Fraction]]:
    """tau with every parameter numeric (including hbar): {n: {mu: coefficient of t^n p~_mu}}."""
    if not w.is_numeric():
        raise ConfigurationError("tau_jack_numeric needs numeric weight parameters")
    s_value, hbar = Fraction(s_value), Fraction(hbar)
    if s_value <= 0 or hbar == 0:
        raise ConfigurationError("need s > 0 and hbar != 0")
    alpha = s_value * s_value
    out = {}
    for n in range(0, t_max + 1):
        level: Dict[Partition, Fraction] = {}
        for lam in partitions_of(n):
            J = jack(lam, alpha)
            weight = (s_value / hbar) ** n / hook_norm_at(lam, alpha)
            for x, y in lam.boxes():
                weight *= w(hbar * (s_value * (x - 1) - Fraction(y - 1) / s_value))
            if weight == 0:
                continue
            for mu, c in J.coeffs.items():
                v = weight * c * s_value ** len(mu)
                level[mu] = level.get(mu, Fraction(0)) + v
        out[n] = {mu: v for mu, v in level.items() if v != 0}
    return out


# ---------------------------------------------------------------------------
# Hurwitz tables
# ---------------------------------------------------------------------------


@dataclass
class HurwitzTable:
    """H_{G;g}(mu) for g <= g_max and |mu| <= t_max; values live in ``domain``."""

    entries: Dict[Tuple[Fraction, Partition], object]
    domain: object
    weight: Optional[RationalWeight] = None
    t_max: int = 0
    g_max: Fraction = Fraction(0)
    meta: dict = field(default_factory=dict)

    def get(self, g, mu):
        return self.entries.get((Fraction(g), Partition(mu)), self.domain.zero())

    def keys(self):
        return sorted(self.entries, key=lambda k: (k[0], k[1].size, tuple(k[1])))

    def frakb_coefficients(self, value) -> List[object]:
        return frakb_coefficients(self.domain, value)

    def specialize_frakb(self, frakb_value) -> Dict[Tuple[Fraction, Partition], object]:
        out = {}
        for key, v in self.entries.items():
            coeffs = self.frakb_coefficients(v)
            total = flint.fmpq(0)
            for d, c in enumerate(coeffs):
                power = to_fmpq(Fraction(frakb_value) ** d)
                total = total + (to_fmpq(c) * power if isinstance(c, Fraction) else c * power)
            # plain numbers come back as Fraction, polynomials in the symbols stay mpoly
            out[key] = to_fraction(total) if isinstance(total, flint.fmpq) else total
        return out

    def to_json(self) -> dict:
        entries = []
        for g, mu in self.keys():
            coeffs = self.frakb_coefficients(self.entries[(g, mu)])
            entries.append({"g": _frac_text(g), "mu": list(mu),
                            "poly_in_frakb": [_coef_text(c) for c in coeffs]})
        return {"schema_version": SCHEMA_VERSION,
                "weight": self.weight.to_text() if self.weight is not None else None,
                "weight_form": self.weight.form if self.weight is not None else None,
                "tmax": self.t_max, "gmax": _frac_text(self.g_max),
                "entries": entries}

    def to_csv(self, frakb_value=0) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["g", "mu", "frakb", "value"])
        spec = self.specialize_frakb(frakb_value)
        for g, mu in self.keys():
            writer.writerow([_frac_text(g), Partition(mu).to_text(), _frac_text(Fraction(frakb_value)),
                             _coef_text(spec[(g, mu)])])
        return buf.getvalue()


def _coef_text(c) -> str:
    if isinstance(c, Fraction):
        return _frac_text(c)
    if isinstance(c, flint.fmpq):
        return _frac_text(to_fraction(c))
    if isinstance(c, flint.fmpq_mpoly) and c.is_constant():
        return _frac_text(to_fraction(c.leading_coefficient())) if not c.is_zero() else "0"
    return str(c)


def frakb_coefficients(domain, value) -> List[object]:
    """Coefficients of a domain element as a polynomial in frakb, lowest first.

    For PolyDomain with frakb as generator the coefficients are polynomials in
    the remaining symbols (constants become Fraction); otherwise the value is
    already a frakb-free number.
    """
    if isinstance(domain, PolyDomain) and domain.frakb_value is None:
        if value.is_zero():
            return []
        names = domain.gen_names
        rest = names[1:]
        sub_ctx = flint.fmpq_mpoly_ctx.get(rest, "deglex") if rest else None
        buckets: Dict[int, dict] = {}
        for exps, c in value.to_dict().items():
            buckets.setdefault(exps[0], {})[tuple(exps[1:])] = c
        out = []
        for d in range(max(buckets) + 1):
            part = buckets.get(d, {})
            if not rest:
                out.append(to_fraction(part.get((), 0)))
            elif all(sum(e) == 0 for e in part):
                out.append(to_fraction(part.get(tuple(0 for _ in rest), 0)))
            else:
                out.append(sub_ctx.from_dict(part))
        return out
    if isinstance(domain, PolyDomain):
        if value.is_zero():
            return []
        if value.is_constant():
            return [to_fraction(value.leading_coefficient())]
        return [value]
    if isinstance(domain, RationalDomain):
        return [] if value == 0 else [Fraction(value)]
    if isinstance(domain, ScalarDomain):
        return reexpress_in_frakb(value)
    raise ConfigurationError("unsupported domain %r" % (domain,))


def _to_frakb_domain(tau: SeriesElem) -> SeriesElem:
    """Move a Q(s)-coefficient series into PolyDomain, asserting frakb-expressibility."""
    dom = PolyDomain(())
    out = {}
    for key, c in tau.terms.items():
        try:
            coeffs = reexpress_in_frakb(c)
        except NotAFrakbPolynomial as exc:
            raise DomainError("coefficient at %s is not a polynomial in frakb" % (key,)) from exc
        v = dom.zero()
        for d, q in enumerate(coeffs):
            if q:
                v = v + dom.const(q) * dom.frakb() ** d
        out[key] = v
    return SeriesElem(out, dom, tau.trunc)


def extract_hurwitz(tau: SeriesElem, t_max: Optional[int] = None, g_max=None,
                    weight: Optional[RationalWeight] = None) -> HurwitzTable:
    """H_g(mu) = [hbar^{2g-2+l(mu)} t^{|mu|} p~_mu] log tau."""
    if isinstance(tau.domain, ScalarDomain):
        tau = _to_frakb_domain(tau)
    t_max = tau.trunc.t_max if t_max is None else t_max
    if t_max is None:
        raise ConfigurationError("extract_hurwitz needs a finite t_max")
    if tau.trunc.t_max is None or tau.trunc.t_max != t_max:
        tau = SeriesElem(tau.terms, tau.domain, TruncSpec(t_max, tau.trunc.h_min, tau.trunc.h_max,
                                                         tau.trunc.degree_max, tau.trunc.grade_cap))
    if g_max is None:
        cap = tau.trunc.grade_cap
        g_max = Fraction(cap + 2 - 2 * t_max, 2) if cap is not None else Fraction(3, 2)
    g_max = Fraction(g_max)
    if tau.trunc.grade_cap is not None and grade_cap(t_max, g_max) > tau.trunc.grade_cap:
        raise ConfigurationError("tau is truncated below the requested genus window")
    F = series_log(tau)
    entries = {}
    for (t, h, lam, mu), c in F.terms.items():
        if lam != 0:
            raise DomainError("log tau carries a Lambda power")
        if not mu or t != sum(mu):
            raise DomainError("log tau term t^%d %s is not homogeneous" % (t, mu))
        two_g = h + 2 - len(mu)
        if two_g < 0:
            raise DomainError("log tau has a term below genus 0: hbar^%d %s" % (h, mu))
        g = Fraction(two_g, 2)
        if g <= g_max:
            entries[(g, Partition(mu))] = c
    return HurwitzTable(entries, tau.domain, weight, t_max, g_max)


# ---------------------------------------------------------------------------
# frakb = 0 oracle from Schur characters
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _mn_character(beta: Tuple[int, ...], nu: Tuple[int, ...]) -> int:
    """Murnaghan-Nakayama on a beta-set: chi^lambda(nu), removing the parts of nu in order."""
    if not nu:
        return 1
    k, rest = nu[0], nu[1:]
    occupied = set(beta)
    total = 0
    for b in beta:
        c = b - k
        if c < 0 or c in occupied:
            continue
        crossed = sum(1 for x in beta if c < x < b)
        moved = tuple(sorted((occupied - {b}) | {c}, reverse=True))
        total += (-1) ** crossed * _mn_character(moved, rest)
    return total


def schur_character(lam: Partition, nu: Sequence[int]) -> int:
    """Irreducible S_n character chi^lambda at cycle type nu."""
    if sum(lam) != sum(nu):
        raise ConfigurationError("character needs |lambda| = |nu|")
    L = len(lam)
    beta = tuple(p + L - i for i, p in enumerate(lam, start=1))
    return _mn_character(beta, tuple(sorted(nu, reverse=True)))


def _hook_product(lam: Partition) -> int:
    conj = lam.conjugate()
    out = 1
    for b in lam.boxes():
        out *= lam[b.y - 1] - b.x + conj[b.x - 1] - b.y + 1
    return out


def _content_series(w: RationalWeight, lam: Partition, prec: int) -> flint.fmpq_series:
    """prod over boxes of G(hbar c) as a power series in hbar, c = column - row."""
    counts: Dict[int, int] = {}
    for b in lam.boxes():
        c = b.x - b.y
        counts[c] = counts.get(c, 0) + 1
    out = flint.fmpq_series([1], prec=prec)
    for c, mult in counts.items():
        num = flint.fmpq_series([1], prec=prec)
        for P in w.P:
            num *= flint.fmpq_series([to_fmpq(P), c], prec=prec)
        den = flint.fmpq_series([1], prec=prec)
        for Q in w.Q:
            den *= flint.fmpq_series([to_fmpq(Q), -c], prec=prec)
        out *= (num / den) ** mult
    return out


def _truncated_product(a: dict, b: dict, n_max: int, prec: int) -> dict:
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            if len(ka) + len(kb) > n_max:
                continue
            key = tuple(sorted(ka + kb, reverse=True))
            v = va * vb
            out[key] = out[key] + v if key in out else v
    return out


def hurwitz_table_classical(w: RationalWeight, mu_max: int, n_max: int, g_max=2) -> HurwitzTable:
    """H_{G;g}(mu) at frakb = 0 for parts <= mu_max and ell(mu) <= n_max.

    Independent of the Jack route: tau is expanded with Schur characters and
    the content product, only on monomials p_nu whose parts are sub-multisets
    of some requested mu.  Truncating by the number of parts is compatible with
    products, so the logarithm is exact on that set.
    """
    if not w.is_numeric():
        raise ConfigurationError("the classical oracle needs numeric parameters")
    if w.form == GCHECK_FORM:
        w2, c = reparametrize(w)
        inner = hurwitz_table_classical(w2, mu_max, n_max, g_max)
        entries = {k: v * c ** sum(k[1]) for k, v in inner.entries.items()}
        return HurwitzTable(entries, inner.domain, w, inner.t_max, inner.g_max, dict(inner.meta))
    g_max = Fraction(g_max)
    # series in hbar after multiplying the p_nu coefficient by hbar^{ell(nu)}
    top = int(2 * g_max) - 2 + 2 * n_max
    prec = top + 1
    monomials = {}
    for n in range(1, n_max + 1):
        for nu in combinations_with_replacement(range(mu_max, 0, -1), n):
            monomials.setdefault(sum(nu), []).append(tuple(nu))
    d_max = max(monomials)
    with flint_context(series_length=d_max + prec + 1):
        return _classical_entries(w, monomials, n_max, prec, g_max, mu_max)


def _classical_entries(w, monomials, n_max, prec, g_max, mu_max) -> HurwitzTable:
    u = {}
    for d, nus in sorted(monomials.items()):
        offset = d - min(len(nu) for nu in nus)
        lam_data = []
        for lam in partitions_of(d):
            lam_data.append((lam, _content_series(w, lam, offset + prec), _hook_product(lam)))
        for nu in nus:
            z_nu = Partition(nu).z_factor()
            acc = flint.fmpq_series([0], prec=offset + prec)
            for lam, series, hooks in lam_data:
                chi = schur_character(lam, nu)
                if chi:
                    acc += series * flint.fmpq(chi, hooks)
            shift = d - len(nu)
            coeffs = acc.coeffs() + [flint.fmpq(0)] * (shift + prec)
            if any(coeffs[i] != 0 for i in range(shift)):
                raise DomainError("tau has a term below the expected hbar order at %s" % (nu,))
            u[nu] = flint.fmpq_series([c / z_nu for c in coeffs[shift:shift + prec]], prec=prec)
    log: dict = {}
    power = dict(u)
    for k in range(1, n_max + 1):
        for key, v in power.items():
            term = v * flint.fmpq((-1) ** (k + 1), k)
            log[key] = log[key] + term if key in log else term
        if k < n_max:
            power = _truncated_product(power, u, n_max, prec)
    entries = {}
    for mu, series in log.items():
        cs = series.coeffs()
        for j, c in enumerate(cs):
            two_g = j + 2 - 2 * len(mu)
            if c == 0:
                continue
            if two_g < 0 or two_g % 2:
                raise DomainError("unexpected hbar order %d at %s" % (j, mu))
            g = Fraction(two_g, 2)
            if g <= g_max:
                entries[(g, Partition(mu))] = to_fraction(c)
    meta = {"oracle": "characters", "mu_max": mu_max, "n_max": n_max}
    return HurwitzTable(entries, RationalDomain(0), w, mu_max * n_max, g_max, meta)


# ---------------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------------


def _p_entry(v):
    return v if isinstance(v, str) else Fraction(v)


def _neg_entry(v):
    return _neg(v) if isinstance(v, str) else -Fraction(v)


def _as_g_form(w: RationalWeight, tau: SeriesElem):
    if w.form == G_FORM:
        return w, tau
    w_g, c = reparametrize(w)
    # w = c * w_g, so tau_w(t) = tau_wg(c t) and tau_wg(t) = tau_w(t / c)
    return w_g, rescale_t(tau, 1 / c)


def cutjoin_residual(w: RationalWeight, tau: SeriesElem) -> SeriesElem:
    """t * sum_{(0,-1)->(n+1,0)} wt(.|(0,P)) tau - (-1)^m sum_{(0,-1)->(m+2,-1)} wt(.|(0,-Q,0)) tau."""
    w, tau = _as_g_form(w, tau)
    rep = RepOneColor(tau.domain, tau.trunc)
    u_left = [0] + [_p_entry(p) for p in w.P]
    u_right = [0] + [_neg_entry(q) for q in w.Q] + [0]
    left = apply_bridge_sum(tau, rep, (0, -1), (w.n + 1, 0), u_left).shift(t=1)
    right = apply_bridge_sum(tau, rep, (0, -1), (w.m + 2, -1), u_right)
    return left - right if w.m % 2 == 0 else left + right


def refined_residual(w: RationalWeight, tau: SeriesElem, k: int) -> SeriesElem:
    """t * sum_{(0,k)->(n,0)} wt(.|P) tau + (-1)^{m+1} sum_{(0,k)->(m+1,-1)} wt(.|(-Q,0)) tau."""
    if k < 0:
        raise ConfigurationError("k must be nonnegative")
    w, tau = _as_g_form(w, tau)
    rep = RepOneColor(tau.domain, tau.trunc)
    if w.n == 0:
        left = tau if k == 0 else tau.like({}, check=False)
    else:
        left = apply_bridge_sum(tau, rep, (0, k), (w.n, 0), [_p_entry(p) for p in w.P])
    right = apply_bridge_sum(tau, rep, (0, k), (w.m + 1, -1), [_neg_entry(q) for q in w.Q] + [0])
    left = left.shift(t=1)
    return left + right if (w.m + 1) % 2 == 0 else left - right


def contract_refined(w: RationalWeight, tau: SeriesElem, k_max: int) -> SeriesElem:
    """sum_{k <= k_max} J^1_{-k-1} applied to the refined residuals."""
    rep = RepOneColor(tau.domain, tau.trunc)
    total = tau.like({}, check=False)
    for k in range(0, k_max + 1):
        total = total + rep.apply_gen(1, -(k + 1), refined_residual(w, tau, k))
    return total


def residual_levels(res: SeriesElem) -> List[int]:
    return sorted({key[0] for key in res.terms})


# ---------------------------------------------------------------------------
# independent solver at numeric parameters
# ---------------------------------------------------------------------------


def collapse_hbar(state: SeriesElem, hbar: Fraction) -> Dict[Tuple[int, tuple], Fraction]:
    out: Dict[Tuple[int, tuple], Fraction] = {}
    for (t, h, lam, mono), c in state.terms.items():
        key = (t + lam, mono)
        out[key] = out.get(key, Fraction(0)) + Fraction(c) * hbar ** h
    return {k: v for k, v in out.items() if v != 0}


def tau_solve_linear(w: RationalWeight, s_value, hbar, t_max: int) -> Dict[int, Dict[Partition, Fraction]]:
    """Solve the cut-and-join equation order by order at numeric s, hbar, P, Q.

    At each order the degree-(n+1) part of the right-hand operator is
    inverted on the span of p~_mu, |mu| = n + 1.
    """
    if not w.is_numeric():
        raise ConfigurationError("tau_solve_linear needs numeric parameters")
    s_value, hbar = Fraction(s_value), Fraction(hbar)
    if hbar == 0:
        raise ConfigurationError("non-generic parameters: hbar = 0 makes the leading operator vanish")
    if s_value <= 0:
        raise ConfigurationError("s must be positive")
    c = Fraction(1)
    if w.form == GCHECK_FORM:
        # w = c * w_g: solve for w_g, then tau_w(t) = tau_wg(c t)
        w, c = reparametrize(w)
    domain = RationalDomain(1 / s_value - s_value)
    rep = RepOneColor(domain)
    u_left = [0] + list(w.P)
    u_right = [0] + [-q for q in w.Q] + [0]
    sign = 1 if w.m % 2 == 0 else -1

    def right_op(mu):
        st = SeriesElem({(0, 0, 0, tuple(mu)): Fraction(1)}, domain)
        return collapse_hbar(apply_bridge_sum(st, rep, (0, -1), (w.m + 2, -1), u_right), hbar)

    def left_op(level):
        st = SeriesElem({(0, 0, 0, tuple(mu)): v for mu, v in level.items()}, domain)
        return collapse_hbar(apply_bridge_sum(st, rep, (0, -1), (w.n + 1, 0), u_left), hbar)

    tau = {0: {Partition(()): Fraction(1)}}
    for n in range(0, t_max):
        target = left_op(tau[n])
        basis = partitions_of(n + 1)
        index = {mu: i for i, mu in enumerate(basis)}
        size = len(basis)
        mat = flint.fmpq_mat(size, size)
        for j, mu in enumerate(basis):
            for (_t, mono), v in right_op(mu).items():
                mat[index[Partition(mono)], j] = to_fmpq(v)
        rhs = flint.fmpq_mat(size, 1)
        for (_t, mono), v in target.items():
            if Partition(mono) not in index:
                raise DomainError("cut-and-join left side left the degree-%d space" % (n + 1))
            rhs[index[Partition(mono)], 0] = to_fmpq(v * sign)
        if mat.det() == 0:
            raise ConfigurationError("non-generic parameters: singular system at order %d" % (n + 1))
        sol = mat.solve(rhs)
        tau[n + 1] = {mu: to_fraction(sol[index[mu], 0]) for mu in basis if sol[index[mu], 0] != 0}
    return tau if c == 1 else {n: {mu: v * c ** n for mu, v in lv.items()} for n, lv in tau.items()}


def tau_to_numeric(tau_series_levels) -> Dict[int, Dict[Partition, Fraction]]:
    return {n: dict(v) for n, v in tau_series_levels.items()}


# ---------------------------------------------------------------------------
# positivity
# ---------------------------------------------------------------------------


@dataclass
class PositivityReport:
    checked: int
    violations: List[dict]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "checked": self.checked,
                "passed": self.passed, "violations": self.violations}


def positivity_report(table: HurwitzTable) -> PositivityReport:
    """|mu| H_g(mu) in Z>=0[-frakb] with (-frakb)-degrees of the parity of 2g."""
    w = table.weight
    if w is not None:
        if w.form != GCHECK_FORM:
            raise ConfigurationError("positivity is stated for Gcheck-form weights")
        for v in w.P + w.Q:
            if isinstance(v, str) or v < 0 or Fraction(v).denominator != 1:
                raise ConfigurationError("positivity needs nonnegative integer parameters")
    violations = []
    for g, mu in table.keys():
        coeffs = table.frakb_coefficients(table.entries[(g, mu)])
        for d, c in enumerate(coeffs):
            if not isinstance(c, Fraction):
                raise ConfigurationError("positivity needs numeric coefficients")
            if c == 0:
                continue
            scaled = c * (-1) ** d * mu.size
            if scaled.denominator != 1 or scaled < 0:
                violations.append({"g": _frac_text(g), "mu": list(mu), "degree": d,
                                   "issue": "coefficient %s of (-frakb)^%d is not a nonnegative integer"
                                            % (_frac_text(scaled), d)})
            if (d - int(2 * g)) % 2:
                violations.append({"g": _frac_text(g), "mu": list(mu), "degree": d,
                                   "issue": "parity of (-frakb)^%d does not match 2g = %d" % (d, 2 * g)})
    return PositivityReport(len(table.entries), violations)


def table_to_json_text(table: HurwitzTable) -> str:
    return json.dumps(table.to_json(), indent=2, sort_keys=True)
