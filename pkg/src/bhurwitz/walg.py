"""W-algebra modes in the free-field realisation and the reduced constraint operators.

Operators are applied to states directly: W^i_k through a colored-path
dynamic program, with the Miura recursion as an independent route.  Scalar
polynomials in P, Q and hbar*frakb (Omega_i, V^i, L_i) are represented as
``{hbar exponent: domain coefficient}`` dictionaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

import flint

from .heisenberg import (OperatorSpec, RepMultiColor, RepOneColor, apply, apply_bridge_sum,
                         apply_colored_path_sum, state_degree)
from .paths import AffineScalar, ModeWord, colored_weight, enumerate_paths, increasing_colorings
from .ring import NO_TRUNC, ConfigurationError, SeriesElem

ScalarPoly = Dict[int, object]


@dataclass(frozen=True)
class WModeParams:
    """Rank and level data; frakb = level + r - 1."""

    r: int

    def __post_init__(self):
        if self.r < 2:
            raise ConfigurationError("rank must be at least 2")

    def level(self, frakb):
        return frakb - (self.r - 1)


def _check_range(i, r, lo=1):
    if not lo <= i <= r:
        raise ConfigurationError("index %d outside [%d..%d]" % (i, lo, r))


# ---------------------------------------------------------------------------
# scalar polynomials in hbar
# ---------------------------------------------------------------------------


def poly_mul(a: ScalarPoly, b: ScalarPoly, domain) -> ScalarPoly:
    out: ScalarPoly = {}
    for ha, ca in a.items():
        for hb, cb in b.items():
            v = ca * cb
            out[ha + hb] = out[ha + hb] + v if ha + hb in out else v
    return {h: c for h, c in out.items() if not domain.is_zero(c)}


def poly_add(a: ScalarPoly, b: ScalarPoly, domain, sign=1) -> ScalarPoly:
    out = dict(a)
    for h, c in b.items():
        out[h] = out[h] + c * sign if h in out else c * sign
    return {h: c for h, c in out.items() if not domain.is_zero(c)}


def poly_apply(poly: ScalarPoly, state: SeriesElem) -> SeriesElem:
    total = state.like({}, check=False)
    for h, c in poly.items():
        total = total + state.shift(h=h).scale(c)
    return total


def _linear(a, hb_coeff, domain) -> ScalarPoly:
    """a + hb_coeff * hbar * frakb."""
    out = {0: a}
    if hb_coeff:
        out[1] = domain.frakb() * domain.const(hb_coeff)
    return {h: c for h, c in out.items() if not domain.is_zero(c)}


def omega(i: int, r: int, rep) -> ScalarPoly:
    """Omega_i = sum_{n_1<..<n_i} prod_m (-P_{r+1-n_m} - frakb hbar (r - n_m + m - 1)); Omega_0 = 1."""
    _check_range(i, r, lo=0)
    d = rep.domain
    total: ScalarPoly = {}
    for ns in combinations(range(1, r + 1), i):
        term: ScalarPoly = {0: d.one()}
        for m, n in enumerate(ns, start=1):
            term = poly_mul(term, _linear(-rep.value("P%d" % (r + 1 - n)), -(r - n + m - 1), d), d)
        total = poly_add(total, term, d)
    return total


def lambda_sub(i: int, r: int, rep) -> ScalarPoly:
    """L_i as prescribed in the reduction: the Omega-type sum minus V^i."""
    _check_range(i, r, lo=2)
    d = rep.domain
    total: ScalarPoly = {}
    for ns in combinations(range(1, r + 1), i):
        term: ScalarPoly = {0: d.one()}
        for m, n in enumerate(ns, start=1):
            factor = _linear(-rep.value("P%d" % (r + 1 - n)), -(r - n + m - 1), d)
            term = poly_mul(term, factor, d)
        total = poly_add(total, term, d)
    return poly_add(total, v_zero(i, r, rep), d, sign=-1)


def v_zero(i: int, r: int, rep: RepMultiColor) -> ScalarPoly:
    """V^i = sum over increasing f of prod_m (J^{f(m)}_0 - hbar frakb (i - m))."""
    _check_range(i, r)
    d = rep.domain
    total: ScalarPoly = {}
    for f in increasing_colorings(i, 1, r):
        term: ScalarPoly = {0: d.one()}
        for m, a in enumerate(f, start=1):
            za, zb = rep.zero_mode(a)
            factor = {0: za, 1: zb - d.frakb() * d.const(i - m)}
            factor = {h: c for h, c in factor.items() if not d.is_zero(c)}
            term = poly_mul(term, factor, d)
        total = poly_add(total, term, d)
    return total


def stirling_identity_check(ell: int) -> bool:
    """prod (u_k + w_k) = sum_{I u J = [ell]} prod_I (u_i + |J cap [i]|) prod_J (w_j - |J cap [j-1]|)."""
    if ell < 1:
        raise ValueError("ell must be positive")
    names = ["u%d" % k for k in range(1, ell + 1)] + ["w%d" % k for k in range(1, ell + 1)]
    ctx = flint.fmpq_mpoly_ctx.get(names, "deglex")
    gens = ctx.gens()
    u, w = gens[:ell], gens[ell:]
    lhs = ctx.constant(1)
    for k in range(ell):
        lhs = lhs * (u[k] + w[k])
    rhs = ctx.constant(0)
    for mask in range(1 << ell):
        term = ctx.constant(1)
        in_j = 0  # |J cap [j-1]| running count
        for idx in range(ell):
            if mask >> idx & 1:
                term = term * (w[idx] - in_j)
                in_j += 1
            else:
                term = term * (u[idx] + in_j)
        rhs = rhs + term
    return lhs == rhs


# ---------------------------------------------------------------------------
# W modes
# ---------------------------------------------------------------------------


def _step_bound(state: SeriesElem, k: int) -> int:
    deg = state.trunc.degree_max if state.trunc.degree_max is not None else state_degree(state)
    return deg + abs(k) + 1


def w_mode_apply(i: int, k: int, state: SeriesElem, rep: RepMultiColor,
                 colors=None, step_bound: Optional[int] = None) -> SeriesElem:
    """Colored-path formula for W^i_k applied to a state (dynamic program)."""
    lo, hi = colors if colors is not None else (1, rep.rank)
    _check_range(i, max(hi - lo + 1, i))
    if i == 0:
        return state if k == 0 else state.like({}, check=False)
    B = step_bound if step_bound is not None else _step_bound(state, k)
    return apply_colored_path_sum(state, rep, (0, k), (i, 0), (lo, hi), B)


def w_mode(i: int, k: int, r: int, step_bound: int) -> OperatorSpec:
    """Enumerated colored-path sum for W^i_k with increments bounded by step_bound."""
    _check_range(i, r)
    terms = []
    for path in enumerate_paths((0, k), (i, 0), -step_bound, step_bound):
        for f in increasing_colorings(i, 1, r):
            terms.append((Fraction(1), colored_weight(path, f, r)))
    return OperatorSpec(terms)


def w_mode_miura_apply(i: int, k: int, state: SeriesElem, rep: RepMultiColor,
                       lo: int = 1, step_bound: Optional[int] = None) -> SeriesElem:
    """W^{i,[lo..r]}_k via the Miura recursion over nested color ranges."""
    r = rep.rank
    B = step_bound if step_bound is not None else _step_bound(state, k)
    memo = {}
    d = rep.domain

    def rec(i, k, lo):
        key = (i, k, lo)
        if key in memo:
            return memo[key]
        if i < 0 or i > r - lo + 1:
            res = state.like({}, check=False)
        elif i == 0:
            res = state if k == 0 else state.like({}, check=False)
        else:
            res = rec(i, k, lo + 1)
            for k1 in range(-B, B + 1):
                k2 = k - k1
                inner = rec(i - 1, k2, lo + 1)
                if not inner.terms:
                    continue
                if k1 == 0:
                    a, b = rep.zero_mode(lo)
                    res = res + rep.multiply_scalar((a, b - d.frakb() * d.const(k2 + i - 1)), inner)
                else:
                    res = res + rep.apply_gen(lo, k1, inner)
        memo[key] = res
        return res

    return rec(i, k, lo)


def w_mode_miura(i: int, k: int, r: int, step_bound: int) -> OperatorSpec:
    """Enumerated words produced by unrolling the Miura recursion."""
    from .paths import Gen, ZeroModeShift

    def rec(i, k, lo):
        if i < 0 or i > r - lo + 1:
            return []
        if i == 0:
            return [ModeWord()] if k == 0 else []
        out = list(rec(i, k, lo + 1))
        for k1 in range(-step_bound, step_bound + 1):
            k2 = k - k1
            for w in rec(i - 1, k2, lo + 1):
                head = ZeroModeShift(lo, -(k2 + i - 1)) if k1 == 0 else Gen(lo, k1)
                out.append(ModeWord((head,) + w.factors))
        return out

    return OperatorSpec([(Fraction(1), w) for w in rec(i, k, 1)])


def w_tilde_apply(i: int, k: int, state: SeriesElem, rep: RepMultiColor) -> SeriesElem:
    out = w_mode_apply(i, k, state, rep)
    if k == 0:
        out = out - poly_apply(v_zero(i, rep.rank, rep), state)
    return out


H_TILDE_VARIANTS = ("corrected", "printed")


def h_tilde_apply(a: int, k: int, state: SeriesElem, rep: RepMultiColor,
                  variant: str = "corrected") -> SeriesElem:
    """Diagonalised combination of W~ modes.

    With c = -e1(P) - e1(Q) - Q_{a-1}, L = (-1)^r Lambda and
    T_k = L / prod_{a' != a, r}(Q_{a'-1} - Q_{a-1}) * sum_i (-Q_{a-1})^{r-i} W~^i_k,
    the hbar-degree one parts satisfy T_k = hbar d_{a,k+1} + c L hbar d_{a,k}.
    Inverting gives H~^a_k = sum_l (-c L)^l T_{k-1-l} ("corrected"), which is
    hbar d/dx^a_k + O(hbar^2).  "printed" is -sum_l (c L)^l T_{k-1-l}; it has
    the opposite leading sign and is kept for comparison.
    """
    if variant not in H_TILDE_VARIANTS:
        raise ConfigurationError("unknown h_tilde variant %r" % variant)
    r = rep.rank
    _check_range(a, r)
    if k < 1:
        raise ConfigurationError("h_tilde needs k >= 1")
    qs = [rep.q_value(b) for b in range(0, r - 1)]
    for x in range(len(qs)):
        for y in range(x + 1, len(qs)):
            if rep.domain.is_zero(qs[x] - qs[y]):
                raise ConfigurationError("non-generic Q: Q_%d = Q_%d" % (x, y))
    if a == r:
        out = w_tilde_apply(1, k, state, rep)
        for b in range(1, r):
            out = out - h_tilde_apply(b, k, state, rep, variant)
        return out
    d = rep.domain
    e1 = d.zero()
    for b in range(1, r + 1):
        e1 = e1 + rep.p_value(b)
    for b in range(0, r - 1):
        e1 = e1 + rep.q_value(b)
    qa = rep.q_value(a - 1)
    denom = d.one()
    for b in range(1, r):
        if b != a:
            denom = denom * (rep.q_value(b - 1) - qa)
    c = -e1 - qa
    base = -c if variant == "corrected" else c
    sign_r = 1 if r % 2 == 0 else -1
    total = state.like({}, check=False)
    for ell in range(k):
        inner = state.like({}, check=False)
        for i in range(1, r + 1):
            w = w_tilde_apply(i, k - 1 - ell, state, rep)
            if w.terms:
                inner = inner + w.scale((-qa) ** (r - i) if r - i else d.one())
        if not inner.terms:
            continue
        coef = base ** ell if ell else d.one()
        coef = coef * (sign_r ** (ell + 1))
        total = total + _divide(inner.shift(lam=ell + 1).scale(coef), denom, d)
    return total if variant == "corrected" else -total


def _divide(state: SeriesElem, denom, domain) -> SeriesElem:
    if isinstance(denom, (int, Fraction)):
        return state.scale(Fraction(1) / denom)
    try:
        inv = domain.one() / denom
    except Exception as exc:  # polynomial rings cannot invert symbolic denominators
        raise ConfigurationError("h_tilde needs numeric Q values: %s" % exc)
    return state.scale(inv)


# ---------------------------------------------------------------------------
# D-hat and D_k
# ---------------------------------------------------------------------------


def d_hat_apply(i: int, k: int, state: SeriesElem, rep: RepMultiColor) -> SeriesElem:
    """Recursive definition: (-1)^{i+1}(W^i_k - delta Omega_i) + sum_{k2>=0} (J^1_{k1} - ...) D-hat^{i-1}_{k2}."""
    r = rep.rank
    _check_range(i, r, lo=0)
    if k < 0:
        raise ConfigurationError("d_hat needs k >= 0")
    d = rep.domain
    memo = {}
    kmax = _step_bound(state, 0) + r + 1

    def rec(i, k):
        if i == 0:
            return state.like({}, check=False)
        key = (i, k)
        if key in memo:
            return memo[key]
        res = w_mode_apply(i, k, state, rep)
        if k == 0:
            res = res - poly_apply(omega(i, r, rep), state)
        if i % 2 == 0:
            res = -res
        for k2 in range(0, kmax + 1):
            inner = rec(i - 1, k2)
            if not inner.terms:
                continue
            k1 = k - k2
            if k1 == 0:
                a, b = rep.zero_mode(1)
                res = res + rep.multiply_scalar((a, b - d.frakb() * d.const(k2 + i - 1)), inner)
            else:
                res = res + rep.apply_gen(1, k1, inner)
        memo[key] = res
        return res

    return rec(i, k)


def d_hat_combinatorial_apply(i: int, k: int, state: SeriesElem, rep: RepMultiColor,
                              variant: str = "corrected") -> SeriesElem:
    """Path form of D-hat^i_k (three sums), used as a cross-check of the recursion.

    The mixed sum (color-1 bridge to (i-j, -n), then a colored path) enters
    with sign (-1)^j in the "corrected" variant; "printed" omits that sign.
    """
    if variant not in ("corrected", "printed"):
        raise ConfigurationError("unknown d_hat path-form variant %r" % variant)
    r = rep.rank
    _check_range(i, r)
    B = _step_bound(state, k) + r
    d = rep.domain
    out = state.like({}, check=False)
    # colored paths avoiding color 1
    if i <= r - 1:
        t1 = apply_colored_path_sum(state, rep, (0, k), (i, 0), (2, r), B)
        out = out + (t1 if i % 2 == 1 else -t1)
    # color-1 bridges times Omega_j
    for j in range(0, i + 1):
        om = omega(j, r, rep)
        length = i - j
        if length == 0:
            if k == 0:
                piece = state
            else:
                continue
        else:
            u = [AffineScalar(hb=-(i - pos)) for pos in range(1, length + 1)]
            piece = apply_bridge_sum(state, rep, (0, k), (length, 0), u)
        piece = poly_apply(om, piece)
        out = out + (piece if j % 2 == 0 else -piece)
    # bridge to (i-j, -n) followed by colored path in [2..r]
    for j in range(1, i):
        flip = variant == "corrected" and j % 2 == 1
        for n in range(1, B * j + 1):
            tail = apply_colored_path_sum(state, rep, (0, -n), (j, 0), (2, r), B)
            if not tail.terms:
                continue
            length = i - j
            u = [AffineScalar(hb=-(i - pos)) for pos in range(1, length + 1)]
            piece = apply_bridge_sum(tail, rep, (0, k), (length, -n), u)
            out = out - piece if flip else out + piece
    return out


def _one_color_rep(rep):
    if isinstance(rep, RepOneColor):
        return rep
    raise ConfigurationError("D_k acts on one-color states")


D_K_VARIANTS = ("bridge", "simpler", "simpler_corrected", "definition", "definition_corrected")


def d_k_apply(k: int, r: int, state: SeriesElem, rep: RepOneColor, variant: str = "bridge") -> SeriesElem:
    """Reduced constraint operator D_k on a p~ state; Lambda is tracked as the lam key.

    P1..Pr and Q1..Q_{r-2} are resolved by the representation (params/domain).

    Variants:
      bridge               two bridge sums with flat weights P and (-Q, 0)
      simpler              Stirling-expanded form with the printed Q shifts
      simpler_corrected    the same with one more hbar*frakb in every Q factor
      definition           Lambda * D^r_k restricted to x^{a>=2} = 0, printed zero modes
      definition_corrected the same with the middle zero modes lowered by hbar*frakb
    bridge, simpler_corrected and definition_corrected coincide; simpler and
    definition coincide with each other and with the rest only at frakb = 0.
    """
    if k < 0:
        raise ConfigurationError("D_k needs k >= 0")
    if r < 2:
        raise ConfigurationError("rank must be at least 2")
    rep = _one_color_rep(rep)
    if variant == "bridge":
        return _d_k_bridge(k, r, state, rep)
    if variant == "simpler":
        return _d_k_simpler(k, r, state, rep)
    if variant == "simpler_corrected":
        return _d_k_simpler(k, r, state, rep, corrected=True)
    if variant == "definition":
        return _d_k_definition(k, r, state, rep)
    if variant == "definition_corrected":
        return _d_k_definition(k, r, state, rep, middle_shift=1)
    raise ConfigurationError("unknown D_k variant %r (choose from %s)" % (variant, ", ".join(D_K_VARIANTS)))


def _d_k_bridge(k, r, state, rep):
    first = apply_bridge_sum(state, rep, (0, k), (r, 0), ["P%d" % a for a in range(1, r + 1)])
    second = apply_bridge_sum(state, rep, (0, k), (r - 1, -1),
                              ["-Q%d" % a for a in range(1, r - 1)] + [0])
    out = first.shift(lam=1)
    return out + (second if r % 2 == 1 else -second)


def _d_k_simpler(k, r, state, rep, corrected=False):
    d = rep.domain
    out = state.like({}, check=False)
    for j in range(0, r + 1):
        coef: ScalarPoly = {}
        for ns in combinations(range(1, r + 1), j):
            term: ScalarPoly = {0: d.one()}
            for m, n in enumerate(ns, start=1):
                term = poly_mul(term, _linear(rep.value("P%d" % (r - n + 1)), r - n + m - 1, d), d)
            coef = poly_add(coef, term, d)
        length = r - j
        if length == 0:
            piece = state if k == 0 else None
        else:
            u = [AffineScalar(hb=-(r - pos)) for pos in range(1, length + 1)]
            piece = apply_bridge_sum(state, rep, (0, k), (length, 0), u)
        if piece is not None and piece.terms:
            out = out + poly_apply(coef, piece).shift(lam=1)
    second = state.like({}, check=False)
    for j in range(1, r):
        coef = {}
        slots = range(1, r - 1)
        # the corrected form carries one extra unit of hbar*frakb per Q factor
        extra = 1 if corrected else 0
        for ns in combinations(slots, j - 1):
            term = {0: d.one()}
            for m, n in enumerate(ns, start=1):
                term = poly_mul(term, _linear(-rep.value("Q%d" % (r - n - 1)), r + m - n - 2 + extra, d), d)
            coef = poly_add(coef, term, d)
        length = r - j
        u = [AffineScalar(hb=-(r - pos)) for pos in range(1, length + 1)]
        piece = apply_bridge_sum(state, rep, (0, k), (length, -1), u)
        if piece.terms:
            second = second + poly_apply(coef, piece)
    return out + (second if (r + 1) % 2 == 0 else -second)


def _d_k_definition(k, r, state, rep, middle_shift=0):
    multi = RepMultiColor(r, ["P%d" % a for a in range(1, r + 1)],
                          ["Q%d" % a for a in range(1, r - 1)],
                          domain=rep.domain, trunc=NO_TRUNC, params=rep.params,
                          middle_shift=middle_shift)
    v = multi.from_one_color(state.with_trunc(NO_TRUNC))
    res = d_hat_apply(r, k, v, multi)
    return multi.one_color_state(res).shift(lam=1).with_trunc(state.trunc)


def cutjoin_from_dk_apply(r: int, state: SeriesElem, rep: RepOneColor, variant="bridge") -> SeriesElem:
    """C = sum_{k>=0} J^1_{-k-1} D_k, truncated at the state degree."""
    deg = state_degree(state)
    total = state.like({}, check=False)
    for k in range(0, deg + 1):
        dk = d_k_apply(k, r, state, rep, variant)
        if dk.terms:
            total = total + rep.apply_gen(1, -k - 1, dk)
    return total


def identify_lambda_with_t(state: SeriesElem) -> SeriesElem:
    out = {}
    for (t, h, lam, mono), c in state.terms.items():
        key = (t + lam, h, 0, mono)
        out[key] = out[key] + c if key in out else c
    return SeriesElem(out, state.domain, state.trunc)


def w_commutator_hbar_report(i, k1, j, k2, state, rep) -> dict:
    """[W^i_{k1}, W^j_{k2}] v; reports the lowest hbar exponent relative to v."""
    a = w_mode_apply(i, k1, w_mode_apply(j, k2, state, rep), rep)
    b = w_mode_apply(j, k2, w_mode_apply(i, k1, state, rep), rep)
    comm = a - b
    base = min((key[1] for key in state.terms), default=0)
    low = min((key[1] for key in comm.terms), default=None)
    return {"zero": comm.is_zero(), "min_hbar_shift": None if low is None else low - base,
            "ok": low is None or low - base >= 2}
