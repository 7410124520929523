"""Jack symmetric functions in the power-sum basis.

Jacks are built by back-substitution in the monomial basis: D_alpha is
triangular there with respect to dominance, and the eigenvalue gap between
J_lambda and any m_mu with mu < lambda is a polynomial in alpha with positive
coefficients.  The result is converted to power sums and normalised so that
the coefficient of p_1^n is 1.

The deformation parameter can be the symbol alpha = s^2 (``alpha=None``) or
any nonzero rational.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import flint

from .heisenberg import RepOneColor, apply_bridge_sum, state_degree
from .partitions import (Partition, content_tilde, covers_down, dominance_leq, hook_norm,
                         hook_norm_at, partitions_of, LEQ)
from .ring import (NO_TRUNC, ConfigurationError, DomainError, ParamScalar, RationalDomain,
                   ScalarDomain, SeriesElem, to_fmpq, to_fraction)


def _alpha_scalar(alpha):
    return ParamScalar.alpha() if alpha is None else Fraction(alpha)


def _zero_like(alpha):
    return ParamScalar(0) if alpha is None else Fraction(0)


# ---------------------------------------------------------------------------
# SymFunc
# ---------------------------------------------------------------------------


class SymFunc:
    """Homogeneous symmetric function as a sparse map partition -> coefficient (p-basis)."""

    __slots__ = ("coeffs", "degree")

    def __init__(self, coeffs: Dict[tuple, object], degree: Optional[int] = None):
        clean = {}
        for mu, c in coeffs.items():
            mu = Partition(mu)
            if c != 0:
                clean[mu] = c
        if degree is None:
            sizes = {mu.size for mu in clean}
            if len(sizes) > 1:
                raise ValueError("SymFunc must be homogeneous")
            degree = sizes.pop() if sizes else 0
        if any(mu.size != degree for mu in clean):
            raise ValueError("all partitions must have size %d" % degree)
        self.coeffs = clean
        self.degree = degree

    @classmethod
    def power_sum(cls, mu, coeff=1) -> "SymFunc":
        mu = Partition(mu)
        return cls({mu: coeff}, mu.size)

    def coeff(self, mu):
        return self.coeffs.get(Partition(mu), 0)

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValueError("cannot add symmetric functions of different degrees")
        out = dict(self.coeffs)
        for mu, c in other.coeffs.items():
            out[mu] = out[mu] + c if mu in out else c
        return SymFunc(out, self.degree if self.coeffs else other.degree)

    def __neg__(self):
        return SymFunc({mu: -c for mu, c in self.coeffs.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        return SymFunc({mu: v * c for mu, v in self.coeffs.items()}, self.degree)

    def times_power_sum(self, k: int) -> "SymFunc":
        return SymFunc({Partition(sorted(mu + (k,), reverse=True)): c
                        for mu, c in self.coeffs.items()}, self.degree + k)

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return not (self - other).coeffs

    def map_coeffs(self, fn) -> "SymFunc":
        return SymFunc({mu: fn(c) for mu, c in self.coeffs.items()}, self.degree)

    def to_text(self) -> str:
        items = sorted(self.coeffs.items(), key=lambda kv: kv[0], reverse=True)
        return " + ".join("(%s)*p%s" % (c, mu.to_text()) for mu, c in items) or "0"

    def to_alpha_json(self) -> Dict[str, List[int]]:
        """Coefficients as integer lists in powers of alpha (Jacks are integral)."""
        out = {}
        for mu, c in sorted(self.coeffs.items(), key=lambda kv: kv[0], reverse=True):
            out[mu.to_text()] = _alpha_coefficients(c)
        return out

    @classmethod
    def from_alpha_json(cls, data: Dict[str, List]) -> "SymFunc":
        alpha = ParamScalar.alpha()
        coeffs = {}
        for key, lst in data.items():
            c = ParamScalar(0)
            for i, v in enumerate(lst):
                c = c + alpha ** i * Fraction(v)
            coeffs[Partition.from_text(key)] = c
        return cls(coeffs)

    def __repr__(self):
        return "SymFunc(deg=%d, %d terms)" % (self.degree, len(self.coeffs))


def _alpha_coefficients(c) -> List:
    c = ParamScalar.coerce(c)
    terms = c.laurent_terms() if c.is_laurent() else None
    if terms is None or any(e < 0 or e % 2 for e in terms):
        raise DomainError("coefficient %s is not a polynomial in alpha" % c)
    top = max(terms, default=0) // 2
    vals = [terms.get(2 * i, Fraction(0)) for i in range(top + 1)]
    return [int(v) if v.denominator == 1 else str(v) for v in vals]


# ---------------------------------------------------------------------------
# basis changes (purely combinatorial, cached per degree)
# ---------------------------------------------------------------------------


def _count_distributions(parts: tuple, target: tuple) -> int:
    """Number of maps parts -> rows with row sums equal to target."""

    @lru_cache(maxsize=None)
    def rec(i, remaining):
        if i == len(parts):
            return 1 if all(r == 0 for r in remaining) else 0
        total = 0
        p = parts[i]
        for j, r in enumerate(remaining):
            if r >= p:
                total += rec(i + 1, remaining[:j] + (r - p,) + remaining[j + 1:])
        return total

    return rec(0, tuple(target))


@lru_cache(maxsize=None)
def _basis_data(n: int):
    parts = partitions_of(n)
    index = {mu: i for i, mu in enumerate(parts)}
    size = len(parts)
    # p_nu = sum_mu R[nu][mu] m_mu
    R = flint.fmpq_mat(size, size)
    for i, nu in enumerate(parts):
        for j, mu in enumerate(parts):
            if dominance_leq(nu, mu) == LEQ:
                R[i, j] = _count_distributions(tuple(nu), tuple(mu))
    A = R.inv()  # m_nu = sum_rho A[nu][rho] p_rho
    X = flint.fmpq_mat(size, size)
    Y = flint.fmpq_mat(size, size)
    for i, nu in enumerate(parts):
        for rho, (cx, cy) in _lb_on_power_sum(nu).items():
            j = index[rho]
            X[i, j] = to_fmpq(cx)
            Y[i, j] = to_fmpq(cy)
    # D m_nu = alpha * Xm + Ym (rows: input m_nu, columns: output m_mu)
    Xm = A * X * R
    Ym = A * Y * R
    return parts, index, A, Xm, Ym


def _lb_on_power_sum(nu) -> Dict[Partition, Tuple[Fraction, Fraction]]:
    """D_alpha p_nu split as alpha * X + Y, each a combination of power sums."""
    counts: Dict[int, int] = {}
    for part in nu:
        counts[part] = counts.get(part, 0) + 1
    out: Dict[Partition, List[Fraction]] = {}

    def add(mono_counts, cx, cy):
        key = Partition(sorted((k for k, m in mono_counts.items() for _ in range(m)), reverse=True))
        cur = out.setdefault(key, [Fraction(0), Fraction(0)])
        cur[0] += cx
        cur[1] += cy

    keys = sorted(counts)
    # (alpha/2) sum_{k,l} k l p_{k+l} d_k d_l
    for k in keys:
        for l in keys:
            if k == l:
                mult = counts[k] * (counts[k] - 1)
            else:
                mult = counts[k] * counts[l]
            if not mult:
                continue
            c = dict(counts)
            c[k] -= 1
            c[l] -= 1
            c[k + l] = c.get(k + l, 0) + 1
            add(c, Fraction(k * l * mult, 2), Fraction(0))
    # (1/2) sum_{k,l} (k+l) p_k p_l d_{k+l}
    for n_part in keys:
        for k in range(1, n_part):
            l = n_part - k
            c = dict(counts)
            c[n_part] -= 1
            c[k] = c.get(k, 0) + 1
            c[l] = c.get(l, 0) + 1
            add(c, Fraction(0), Fraction(n_part * counts[n_part], 2))
    # ((alpha-1)/2) sum_k k (k-1) p_k d_k
    diag = sum(Fraction(k * (k - 1) * m, 2) for k, m in counts.items())
    if diag:
        add(dict(counts), diag, -diag)
    return {mu: (v[0], v[1]) for mu, v in out.items() if v[0] or v[1]}


def monomial_to_power_sum(mu) -> SymFunc:
    mu = Partition(mu)
    parts, index, A, _, _ = _basis_data(mu.size)
    i = index[mu]
    return SymFunc({rho: to_fraction(A[i, j]) for j, rho in enumerate(parts) if A[i, j] != 0}, mu.size)


def power_sum_to_monomial(nu) -> Dict[Partition, int]:
    nu = Partition(nu)
    return {mu: _count_distributions(tuple(nu), tuple(mu))
            for mu in partitions_of(nu.size) if dominance_leq(nu, mu) == LEQ
            and _count_distributions(tuple(nu), tuple(mu))}


# ---------------------------------------------------------------------------
# Jack construction
# ---------------------------------------------------------------------------


_JACK_MEMO: Dict[tuple, SymFunc] = {}
_JACK_LOCK = threading.Lock()


def lb_eigenvalue(lam, alpha=None):
    """Sum of alpha-contents: alpha n(lambda') - n(lambda)."""
    lam = Partition(lam)
    return _alpha_scalar(alpha) * lam.conjugate().n_statistic() - lam.n_statistic()


def jack(lam, alpha=None) -> SymFunc:
    """J_lambda in the p-basis with [p_1^n] J = 1; alpha=None means alpha = s^2."""
    lam = Partition(lam)
    if alpha is not None:
        alpha = Fraction(alpha)
        if alpha <= 0:
            raise ConfigurationError("numeric alpha must be positive")
    key = (lam, alpha)
    hit = _JACK_MEMO.get(key)
    if hit is not None:
        return hit
    with _JACK_LOCK:
        hit = _JACK_MEMO.get(key)
        if hit is None:
            hit = _build_jack(lam, alpha)
            _JACK_MEMO[key] = hit
    return hit


def _build_jack(lam: Partition, alpha) -> SymFunc:
    n = lam.size
    if n == 0:
        return SymFunc({(): _alpha_scalar(alpha) ** 0}, 0)
    parts, index, A, Xm, Ym = _basis_data(n)
    a = _alpha_scalar(alpha)
    lam_conj_n, lam_n = lam.conjugate().n_statistic(), lam.n_statistic()
    coeffs = {lam: a ** 0}
    li = index[lam]
    for mu in parts[li + 1:]:
        if dominance_leq(mu, lam) != LEQ:
            continue
        gap_alpha = lam_conj_n - mu.conjugate().n_statistic()
        gap_const = mu.n_statistic() - lam_n
        if gap_alpha <= 0 or gap_const <= 0:
            raise DomainError("eigenvalue gap for %s < %s is not positive" % (mu, lam))
        mj = index[mu]
        acc = _zero_like(alpha)
        for nu, c_nu in coeffs.items():
            nj = index[nu]
            x, y = Xm[nj, mj], Ym[nj, mj]
            if x == 0 and y == 0:
                continue
            acc = acc + c_nu * (a * to_fraction(x) + to_fraction(y))
        if acc != 0:
            coeffs[mu] = acc / (a * gap_alpha + gap_const)
    # convert m -> p
    out: Dict[Partition, object] = {}
    for mu, c in coeffs.items():
        i = index[mu]
        for j, rho in enumerate(parts):
            v = A[i, j]
            if v != 0:
                term = c * to_fraction(v)
                out[rho] = out[rho] + term if rho in out else term
    top = out[Partition((1,) * n)]
    return SymFunc({rho: c / top for rho, c in out.items()}, n)


def jack_gram_schmidt(n: int, alpha=None) -> Dict[Partition, SymFunc]:
    """Independent construction: orthogonalise monomials (increasing in a
    linear extension of dominance) under the deformed Hall product."""
    parts = list(reversed(partitions_of(n)))
    done: List[Tuple[Partition, SymFunc, object]] = []
    out = {}
    for mu in parts:
        f = monomial_to_power_sum(mu).map_coeffs(lambda c: _alpha_scalar(alpha) ** 0 * c)
        for _nu, g, gg in done:
            f = f - g.scale(hall_pairing(f, g, alpha) / gg)
        done.append((mu, f, hall_pairing(f, f, alpha)))
        top = f.coeff((1,) * n)
        out[mu] = f.scale(1 / top)
    return out


def hall_pairing(f: SymFunc, g: SymFunc, alpha=None):
    """Bilinear extension of <p_mu, p_nu> = delta alpha^{l(mu)} z_mu."""
    a = _alpha_scalar(alpha)
    total = _zero_like(alpha)
    if f.degree != g.degree:
        return total
    for mu, c in f.coeffs.items():
        d = g.coeffs.get(mu)
        if d is not None:
            total = total + c * d * (a ** len(mu)) * mu.z_factor()
    return total


def laplace_beltrami(f: SymFunc, alpha=None) -> SymFunc:
    """Plain D_alpha on the p-basis."""
    a = _alpha_scalar(alpha)
    out = SymFunc({}, f.degree)
    for nu, c in f.coeffs.items():
        pieces = {rho: c * (a * cx + cy) for rho, (cx, cy) in _lb_on_power_sum(nu).items()}
        out = out + SymFunc(pieces, f.degree)
    return out


# ---------------------------------------------------------------------------
# states in p~ variables
# ---------------------------------------------------------------------------


def symfunc_to_state(f: SymFunc, domain=None, trunc=NO_TRUNC, s_value=None) -> SeriesElem:
    """f(sqrt(alpha) p~) as a one-color state: p_mu -> s^{l(mu)} p~_mu."""
    if s_value is None:
        s = ParamScalar.s()
        domain = domain if domain is not None else ScalarDomain()
    else:
        s = Fraction(s_value)
        domain = domain if domain is not None else RationalDomain(1 / s - s)
    terms = {}
    for mu, c in f.coeffs.items():
        terms[(0, 0, 0, tuple(mu))] = domain.const(c * s ** len(mu)) if isinstance(c, (int, Fraction)) \
            else c * s ** len(mu)
    return SeriesElem(terms, domain, trunc)


def jack_state(lam, domain=None, trunc=NO_TRUNC, s_value=None) -> SeriesElem:
    """J_lambda(sqrt(alpha) p~) in the Q(s) domain (or numerically if s_value is set)."""
    alpha = None if s_value is None else Fraction(s_value) ** 2
    return symfunc_to_state(jack(lam, alpha), domain, trunc, s_value)


def laplace_beltrami_rescaled(state: SeriesElem, rep: Optional[RepOneColor] = None) -> SeriesElem:
    """Mode form of the rescaled operator acting on p~ states."""
    rep_full = RepOneColor(state.domain, NO_TRUNC, rep.params if rep else None)
    v = state.with_trunc(NO_TRUNC)
    deg = state_degree(v)
    d = state.domain
    total = SeriesElem.zero(d, NO_TRUNC)
    for k in range(1, deg + 1):
        inner = SeriesElem.zero(d, NO_TRUNC)
        for l in range(1, deg + 1):
            if l == k:
                continue
            w = rep_full.apply_gen(1, k - l, v)
            if w.terms:
                inner = inner + rep_full.apply_gen(1, l, w)
        jk = rep_full.apply_gen(1, k, v)
        if jk.terms and k > 1:
            inner = inner - jk.shift(h=1).scale(d.frakb() * d.const(k - 1))
        if inner.terms:
            total = total + rep_full.apply_gen(1, -k, inner)
    total = total.shift(h=-2).scale(Fraction(1, 2))
    return total.with_trunc(state.trunc)


def content_sum_tilde(lam) -> ParamScalar:
    lam = Partition(lam)
    total = ParamScalar(0)
    for box in lam.boxes():
        total = total + content_tilde(lam, box)
    return total


# ---------------------------------------------------------------------------
# Pieri coefficients, Kerov measure, Boolean cumulants
# ---------------------------------------------------------------------------


def pieri_pairing(mu, lam) -> ParamScalar:
    """hbar-coefficient of <J_{-1} J_mu, J_lam>, with J_{-1} acting as hbar p_1 / s."""
    mu, lam = Partition(mu), Partition(lam)
    if lam.size != mu.size + 1:
        raise ValueError("pieri_pairing needs |lambda| = |mu| + 1")
    return hall_pairing(jack(mu).times_power_sum(1), jack(lam)) / ParamScalar.s()


@dataclass(frozen=True)
class CoTransition:
    partition: Partition
    atoms: Tuple[ParamScalar, ...]
    masses: Tuple[ParamScalar, ...]
    removed: Tuple[Partition, ...]

    def pairs(self):
        return list(zip(self.atoms, self.masses))

    def moment(self, ell: int) -> ParamScalar:
        total = ParamScalar(0)
        for a, m in zip(self.atoms, self.masses):
            total = total + m * a ** ell
        return total


def kerov_mass(mu, lam) -> ParamScalar:
    mu, lam = Partition(mu), Partition(lam)
    return pieri_pairing(mu, lam) / (ParamScalar.s() * lam.size * hook_norm(mu))


def cotransition(lam) -> CoTransition:
    lam = Partition(lam)
    if not lam:
        raise ValueError("the co-transition measure needs a nonempty partition")
    atoms, masses, removed = [], [], []
    fb = ParamScalar.frakb()
    for mu, box in covers_down(lam):
        atoms.append(content_tilde(lam, box) - fb)
        masses.append(kerov_mass(mu, lam))
        removed.append(mu)
    return CoTransition(lam, tuple(atoms), tuple(masses), tuple(removed))


def boolean_cumulant(lam, ell: int) -> ParamScalar:
    """Coefficient of z^{-ell-1} in z - (z + l/s) prod_i (z + (i-1)/s - s lam_i)/(z + i/s - s lam_i)."""
    lam = Partition(lam)
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    order = ell + 2
    s = ParamScalar.s()
    inv_s = s.inverse()
    # F(w) = (1 + c w) prod (1 + a_i w)/(1 + b_i w), w = 1/z, as truncated power series
    series = [ParamScalar(1)] + [ParamScalar(0)] * order

    def mul_linear(ser, coef):
        return [ser[0]] + [ser[j] + coef * ser[j - 1] for j in range(1, len(ser))]

    def div_linear(ser, coef):
        out = [ser[0]]
        for j in range(1, len(ser)):
            out.append(ser[j] - coef * out[j - 1])
        return out

    series = mul_linear(series, inv_s * len(lam))
    for i, part in enumerate(lam, start=1):
        series = mul_linear(series, inv_s * (i - 1) - s * part)
        series = div_linear(series, inv_s * i - s * part)
    if not series[1].is_zero():
        raise DomainError("unexpected z^0 term in the Boolean generating series")
    return -series[order]


# ---------------------------------------------------------------------------
# Nazarov-Sklyanin operators as bridge sums
# ---------------------------------------------------------------------------


def ns_apply(ell: int, state: SeriesElem, rep: Optional[RepOneColor] = None,
             shifted: bool = False, bound: Optional[int] = None) -> SeriesElem:
    """Bridge sum (0,-1) -> (ell+2,-1) applied to a p~ state.

    With ``shifted=False`` flat steps carry u_i = -hbar*frakb, which realises
    J_- L^ell J_+ (eigenvalue hbar^{ell+2} B_{ell+2}).  With ``shifted=True``
    u = 0, which realises J_- (L + hbar frakb)^ell J_+.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    rep = rep if rep is not None else RepOneColor(state.domain, state.trunc)
    deg = state_degree(state)
    if bound is not None and bound < deg:
        raise DomainError("degree bound %d is below the state degree %d" % (bound, deg))
    from .paths import AffineScalar
    flat = AffineScalar(0) if shifted else AffineScalar(hb=-1)
    height_max = None if bound is None else bound + 1 + 1 + ell + 2
    return apply_bridge_sum(state, rep, (0, -1), (ell + 2, -1), [flat] * (ell + 2), height_max)


def adjoint_power_apply(i: int, state: SeriesElem, method: str = "literal") -> SeriesElem:
    """Ad^i of the rescaled Laplace-Beltrami operator applied to J_{-1}, acting on state.

    ``literal`` nests commutators, A_i v = D(A_{i-1} v) - A_{i-1}(D v);
    ``binomial`` uses sum_j (-1)^j C(i, j) D^{i-j} J_{-1} D^j.
    """
    from math import comb
    if i < 0:
        raise ValueError("i must be nonnegative")
    rep = RepOneColor(state.domain, NO_TRUNC)
    v = state.with_trunc(NO_TRUNC)
    if method == "literal":
        def ad(level, w):
            if level == 0:
                return rep.apply_gen(1, -1, w)
            return laplace_beltrami_rescaled(ad(level - 1, w)) - ad(level - 1, laplace_beltrami_rescaled(w))
        return ad(i, v).with_trunc(state.trunc)
    if method != "binomial":
        raise ConfigurationError("unknown method %r (literal or binomial)" % method)
    powers = [v]
    for _ in range(i):
        powers.append(laplace_beltrami_rescaled(powers[-1]))
    total = SeriesElem.zero(state.domain, NO_TRUNC)
    for j in range(i + 1):
        w = rep.apply_gen(1, -1, powers[j])
        for _ in range(i - j):
            w = laplace_beltrami_rescaled(w)
        total = total + w.scale((-1) ** j * comb(i, j))
    return total.with_trunc(state.trunc)
