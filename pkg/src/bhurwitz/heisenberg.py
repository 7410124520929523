"""Heisenberg mode representations on truncated polynomial states.

Two representations are provided.  ``RepOneColor`` acts on polynomials in
p~_1, p~_2, ... (monomials are partitions).  ``RepMultiColor`` acts on
polynomials in x^a_k for a in [1..r] with the zero modes realised as scalars
and the exceptional Lambda^{-1} term in J^r_{-1}.

Besides the literal fold of ``ModeWord`` products (``apply``), the module
offers dynamic-programming evaluators for whole path sums.  Those are
the workhorse for large computations; the literal fold is the reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .paths import AffineScalar, Gen, ModeWord, ZeroModeShift
from .ring import (NO_TRUNC, ConfigurationError, DomainError, ScalarDomain, SeriesElem,
                   TruncSpec, monomial_degree)


def _mono_remove(mono: tuple, var) -> Tuple[tuple, int]:
    """Remove one copy of var; return (new monomial, multiplicity before removal)."""
    cnt = mono.count(var)
    if not cnt:
        return mono, 0
    i = mono.index(var)
    return mono[:i] + mono[i + 1:], cnt


def _mono_insert(mono: tuple, var) -> tuple:
    lst = list(mono)
    # keep decreasing order; ints and (a, k) tuples are never mixed in one rep
    i = 0
    while i < len(lst) and lst[i] > var:
        i += 1
    lst.insert(i, var)
    return tuple(lst)


class _RepBase:
    rank = 1

    def __init__(self, domain=None, trunc: TruncSpec = NO_TRUNC, params=None):
        self.domain = domain if domain is not None else ScalarDomain()
        self.trunc = trunc
        self.params = dict(params or {})

    # scalars --------------------------------------------------------------
    def value(self, v):
        """Resolve a rational, a symbol name, or a domain element."""
        if isinstance(v, (int, Fraction)):
            return self.domain.const(v)
        if isinstance(v, str):
            if v in self.params:
                return self.value(self.params[v])
            return self.domain.symbol(v)
        return v

    def scalar_pair(self, factor) -> Tuple[object, object]:
        """A scalar factor as (A, B) meaning A + hbar*B."""
        d = self.domain
        if isinstance(factor, AffineScalar):
            a = d.const(factor.const)
            for name, c in factor.symbols:
                a = a + self.value(name) * d.const(c)
            b = d.frakb() * d.const(factor.hb) if factor.hb else d.zero()
            return a, b
        if isinstance(factor, ZeroModeShift):
            a, b = self.zero_mode(factor.color)
            if factor.hb:
                b = b + d.frakb() * d.const(factor.hb)
            return a, b
        if isinstance(factor, Gen) and factor.mode == 0:
            return self.zero_mode(factor.color)
        raise TypeError("not a scalar factor: %r" % (factor,))

    def multiply_scalar(self, pair, state: SeriesElem) -> SeriesElem:
        a, b = pair
        z = self.domain.is_zero
        out = state.scale(a) if not z(a) else state.like({}, check=False)
        if not z(b):
            out = out + state.shift(h=1).scale(b)
        return out

    def new_state(self, terms=None) -> SeriesElem:
        return SeriesElem(terms or {}, self.domain, self.trunc)

    def one(self) -> SeriesElem:
        return SeriesElem.one(self.domain, self.trunc)

    def check_state(self, state: SeriesElem):
        if state.trunc != self.trunc or state.domain != self.domain:
            raise ConfigurationError("state does not match the representation's TruncSpec/domain")

    def apply_factor(self, factor, state: SeriesElem) -> SeriesElem:
        if isinstance(factor, Gen) and factor.mode != 0:
            return self.apply_gen(factor.color, factor.mode, state)
        return self.multiply_scalar(self.scalar_pair(factor), state)

    # generic helpers for the mode tables ----------------------------------
    def _annihilate(self, var, factor_k, state):
        out = {}
        z = self.domain.is_zero
        allows = self.trunc.allows
        for (t, h, lam, mono), c in state.terms.items():
            new, cnt = _mono_remove(mono, var)
            if not cnt:
                continue
            key = (t, h + 1, lam, new)
            if not allows(key):
                continue
            v = c * (cnt * factor_k)
            prev = out.get(key)
            v = v if prev is None else prev + v
            out[key] = v
        return state.like({k: v for k, v in out.items() if not z(v)}, check=False)

    def _create(self, var, factor_k, state):
        out = {}
        allows = self.trunc.allows
        for (t, h, lam, mono), c in state.terms.items():
            key = (t, h + 1, lam, _mono_insert(mono, var))
            if allows(key):
                out[key] = c * factor_k if factor_k != 1 else c
        return state.like(out, check=False)


class RepOneColor(_RepBase):
    """J_k = hbar k d/dp~_k (k > 0), 0 (k = 0), hbar p~_{-k} (k < 0)."""

    rank = 1

    def zero_mode(self, color):
        if color != 1:
            raise ConfigurationError("one-color representation has only color 1")
        return self.domain.zero(), self.domain.zero()

    def apply_gen(self, color, mode, state):
        if color != 1:
            raise ConfigurationError("one-color representation has only color 1")
        if mode > 0:
            return self._annihilate(mode, mode, state)
        if mode < 0:
            return self._create(-mode, 1, state)
        return state.like({}, check=False)


class RepMultiColor(_RepBase):
    """Rank-r representation on x^a_k.

    P: sequence of r values, Q: sequence of r-2 values (Q_0 = 0 is implicit).
    Values may be rationals or symbol names resolved through the domain.
    Lambda is carried as an exponent of the series key.

    ``middle_shift=1`` lowers J^a_0 for 2 <= a <= r-1 by one more hbar*frakb,
    the convention under which the reduced D_k annihilate tau.
    """

    def __init__(self, r: int, P: Sequence, Q: Sequence, domain=None,
                 trunc: TruncSpec = NO_TRUNC, params=None, middle_shift: int = 0):
        if r < 2:
            raise ConfigurationError("multi-color representation needs r >= 2")
        if len(P) != r:
            raise ConfigurationError("need %d P parameters, got %d" % (r, len(P)))
        if len(Q) != r - 2:
            raise ConfigurationError("need %d Q parameters, got %d" % (r - 2, len(Q)))
        qs = [q for q in Q if isinstance(q, (int, Fraction))]
        if any(q == 0 for q in qs) or len(set(qs)) != len(qs):
            raise ConfigurationError("Q_1..Q_{r-2} must be pairwise distinct and nonzero")
        super().__init__(domain, trunc, params)
        self.rank = r
        self.P = list(P)
        self.Q = list(Q)
        self.middle_shift = int(middle_shift)
        self._zero_modes = self._compute_zero_modes()

    def q_value(self, a: int):
        """Q_a with Q_0 = 0."""
        return self.domain.zero() if a == 0 else self.value(self.Q[a - 1])

    def p_value(self, a: int):
        return self.value(self.P[a - 1])

    def _compute_zero_modes(self):
        d = self.domain
        r = self.rank
        out = {}
        for a in range(1, r):
            shift = a - 1 + (self.middle_shift if a >= 2 else 0)
            out[a] = (self.q_value(a - 1), d.frakb() * d.const(-shift))
        total = d.zero()
        for a in range(1, r + 1):
            total = total + self.p_value(a)
        for a in range(1, r - 1):
            total = total + self.q_value(a)
        out[r] = (-total, d.frakb() * d.const(-(r - 1)))
        return out

    def zero_mode(self, color):
        if not 1 <= color <= self.rank:
            raise ConfigurationError("color %d outside [1..%d]" % (color, self.rank))
        return self._zero_modes[color]

    def apply_gen(self, color, mode, state):
        r = self.rank
        if not 1 <= color <= r:
            raise ConfigurationError("color %d outside [1..%d]" % (color, r))
        if mode > 0:
            return self._annihilate((color, mode), 1, state)
        if mode == 0:
            return self.multiply_scalar(self.zero_mode(color), state)
        out = self._create((color, -mode), -mode, state)
        if color == r and mode == -1:
            sign = 1 if r % 2 == 0 else -1
            out = out + state.shift(lam=-1).scale(sign)
        return out

    def one_color_state(self, state: SeriesElem) -> SeriesElem:
        """Restrict to x^a = 0 for a >= 2 and pass to p~_k = k x^1_k."""
        out = {}
        for (t, h, lam, mono), c in state.terms.items():
            if any(v[0] != 1 for v in mono):
                continue
            factor = 1
            for v in mono:
                factor *= v[1]
            out[(t, h, lam, tuple(v[1] for v in mono))] = c * state.domain.const(Fraction(1, factor))
        return SeriesElem(out, state.domain, state.trunc)

    def from_one_color(self, state: SeriesElem) -> SeriesElem:
        """Embed a p~ state via p~_k = k x^1_k."""
        out = {}
        for (t, h, lam, mono), c in state.terms.items():
            factor = 1
            for k in mono:
                factor *= k
            out[(t, h, lam, tuple((1, k) for k in mono))] = c * factor
        return SeriesElem(out, state.domain, state.trunc)


# ---------------------------------------------------------------------------
# Operator specs and the literal fold
# ---------------------------------------------------------------------------


@dataclass
class OperatorSpec:
    """Formal sum of (coefficient, ModeWord) pairs."""

    terms: List[Tuple[object, ModeWord]]

    def __add__(self, other: "OperatorSpec") -> "OperatorSpec":
        return OperatorSpec(self.terms + other.terms)

    def scaled(self, c) -> "OperatorSpec":
        return OperatorSpec([(coef * c, w) for coef, w in self.terms])

    def __len__(self):
        return len(self.terms)

    def to_text(self) -> str:
        lines = []
        for coef, w in self.terms:
            total = Fraction(coef) * w.prefactor if isinstance(coef, (int, Fraction)) else coef
            lines.append("%s * %s" % (total, ModeWord(w.factors)))
        return "\n".join(lines)


def apply_word(word: ModeWord, state: SeriesElem, rep) -> SeriesElem:
    out = state
    for factor in reversed(word.factors):
        if not out.terms:
            return out
        out = rep.apply_factor(factor, out)
    if word.prefactor != 1:
        out = out.scale(word.prefactor)
    return out


def apply(op, state: SeriesElem, rep) -> SeriesElem:
    """Apply an OperatorSpec (or a single ModeWord) rightmost-factor first.

    Words sharing a suffix reuse its image, which makes enumerated path sums
    considerably cheaper than a naive fold.
    """
    rep.check_state(state)
    if isinstance(op, ModeWord):
        return apply_word(op, state, rep)
    cache: Dict[tuple, SeriesElem] = {(): state}

    def image(factors: tuple) -> SeriesElem:
        hit = cache.get(factors)
        if hit is not None:
            return hit
        inner = image(factors[1:])
        res = rep.apply_factor(factors[0], inner) if inner.terms else inner
        cache[factors] = res
        return res

    total = rep.new_state()
    for coef, word in op.terms:
        img = image(tuple(word.factors))
        if not img.terms:
            continue
        c = word.prefactor * coef if isinstance(coef, (int, Fraction)) else coef * rep.domain.const(word.prefactor)
        total = total + (img if c == 1 else img.scale(c))
    return total


def commutator_check(a1, k1, a2, k2, rep, probes) -> dict:
    """Check [J^{a1}_{k1}, J^{a2}_{k2}] v = hbar^2 k1 delta delta v on every probe."""
    expected_coeff = k1 if (a1 == a2 and k1 + k2 == 0) else 0
    failures = []
    for idx, v in enumerate(probes):
        lhs = (rep.apply_gen(a1, k1, rep.apply_gen(a2, k2, v))
               - rep.apply_gen(a2, k2, rep.apply_gen(a1, k1, v)))
        rhs = v.shift(h=2).scale(expected_coeff) if expected_coeff else v.like({}, check=False)
        if not (lhs - rhs).is_zero():
            failures.append(idx)
    return {"generators": ((a1, k1), (a2, k2)), "probes": len(probes),
            "failures": failures, "ok": not failures}


def commutator(a1, k1, a2, k2, rep, v) -> SeriesElem:
    return (rep.apply_gen(a1, k1, rep.apply_gen(a2, k2, v))
            - rep.apply_gen(a2, k2, rep.apply_gen(a1, k1, v)))


# ---------------------------------------------------------------------------
# Dynamic-programming path sums
# ---------------------------------------------------------------------------


def state_degree(state: SeriesElem) -> int:
    return max((monomial_degree(k[3]) for k in state.terms), default=0)


def default_height_max(state: SeriesElem, start, end) -> int:
    """Interior height bound: degree + |y_start| + |y_end| + length."""
    deg = state.trunc.degree_max if state.trunc.degree_max is not None else state_degree(state)
    return deg + abs(start[1]) + abs(end[1]) + (end[0] - start[0])


def apply_bridge_sum(state: SeriesElem, rep, start, end, u: Sequence,
                     height_max: Optional[int] = None) -> SeriesElem:
    """Sum over bridges start -> end of tilde-weight(gamma | u), applied to state.

    Flat step i (1-based) at height l contributes u_i - hbar*frakb*l and a
    step of increment d != 0 contributes J^1_{-d}.  Evaluated right to left
    with one accumulator per (column, height).
    """
    (x0, y0), (x1, y1) = start, end
    length = x1 - x0
    if length <= 0:
        raise ValueError("bridge sums need start.x < end.x")
    if len(u) != length:
        raise ValueError("u must have one entry per step")
    if height_max is None:
        height_max = default_height_max(state, start, end)
    u_aff = [AffineScalar.of(v) for v in u]
    flat_cache = {}

    def flat(i, y):
        key = (i, y)
        if key not in flat_cache:
            flat_cache[key] = rep.scalar_pair(u_aff[i].plus_hb(-y))
        return flat_cache[key]

    layer = {y1: state}
    for x in range(length - 1, -1, -1):
        heights = [y0] if x == 0 else range(0, height_max + 1)
        new_layer = {}
        for y in heights:
            acc = None
            for y_next, v in layer.items():
                d = y_next - y
                if d == 0:
                    img = rep.multiply_scalar(flat(x, y), v)
                else:
                    img = rep.apply_gen(1, -d, v)
                if img.terms:
                    acc = img if acc is None else acc + img
            if acc is not None and acc.terms:
                new_layer[y] = acc
        layer = new_layer
        if not layer:
            return rep.new_state()
    return layer.get(y0, rep.new_state())


def apply_colored_path_sum(state: SeriesElem, rep, start, end, colors: Tuple[int, int],
                           step_bound: int) -> SeriesElem:
    """Sum over paths start -> end with |increments| <= step_bound and strictly
    increasing colorings in [lo..hi] of the colored weight, applied to state.

    R[x][y][c] collects the suffix sum from column x at height y when the
    colors still available are [c..hi].
    """
    (x0, y0), (x1, y1) = start, end
    lo, hi = colors
    length = x1 - x0
    if length <= 0:
        raise ValueError("colored sums need start.x < end.x")
    if length > hi - lo + 1:
        return rep.new_state()
    d = rep.domain
    fb = d.frakb()
    flat_cache = {}

    def flat(c, shift):
        key = (c, shift)
        if key not in flat_cache:
            a, b = rep.zero_mode(c)
            flat_cache[key] = (a, b - fb * d.const(shift) if shift else b)
        return flat_cache[key]

    B = step_bound
    # layer maps (y, c) -> state for suffix starting at column x with colors [c..hi]
    prev = None
    for x in range(length, -1, -1):
        if x == 0:
            ys = [y0]
        else:
            y_lo = max(y0 - B * x, y1 - B * (length - x))
            y_hi = min(y0 + B * x, y1 + B * (length - x))
            ys = range(y_lo, y_hi + 1)
        remaining = length - x
        layer = {}
        for y in ys:
            if x == length:
                if y == y1:
                    for c in range(lo, hi + 2):
                        layer[(y, c)] = state
                continue
            acc = None
            for c in range(hi, lo - 1, -1):
                if remaining > hi - c + 1:
                    layer[(y, c)] = acc
                    continue
                # colored step at column x -> x + 1 with color c, then colors [c+1..hi]
                contrib = None
                for dy in range(-B, B + 1):
                    nxt = prev.get((y + dy, c + 1))
                    if nxt is None or not nxt.terms:
                        continue
                    if dy == 0:
                        shift = y - y1 + length - (x + 1)
                        img = rep.multiply_scalar(flat(c, shift), nxt)
                    else:
                        img = rep.apply_gen(c, -dy, nxt)
                    if img.terms:
                        contrib = img if contrib is None else contrib + img
                if contrib is not None:
                    acc = contrib if acc is None else acc + contrib
                layer[(y, c)] = acc
        prev = {k: v for k, v in layer.items() if v is not None}
    out = prev.get((y0, lo))
    return out if out is not None else rep.new_state()


def word_degree_change(word: ModeWord) -> int:
    return -word.mode_sum()


def raise_if_truncated(state: SeriesElem, bound: int):
    if state_degree(state) > bound:
        raise DomainError("state degree %d exceeds bound %d" % (state_degree(state), bound))
