"""Topological recursion at frakb = 0 on the genus-zero curve

    x(z) = t prod(P_i + z) / (z prod(Q_j - z)),   y(z) = z / x(z),

with omega_{0,2} = dz1 dz2 / (z1 - z2)^2.  Correlators are kept in the pole
basis prod_j dz_j / (z_j - a_{i_j})^{k_j} over the ramification points, with
ball-arithmetic complex coefficients (python-flint ``acb``) so the working
precision and the accumulated error are tracked together.

Slots that will only ever be expanded at z = 0 are contracted as soon as they
appear, which keeps the tensors small: a correlator is computed with a few
"free" slots in the pole basis and the rest already paired with the
functional omega -> [x^{-mu-1} dx] omega.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .partitions import Partition
from .ring import ConfigurationError, DomainError, flint_context, to_fmpq, to_fraction


class PrecisionError(ArithmeticError):
    """The ball arithmetic lost too many bits."""


# explicit prec arguments still get clipped to flint's global series cap
SERIES_CAP = 4096


def working_precision(bits: int):
    return flint_context(bits, SERIES_CAP)


# ---------------------------------------------------------------------------
# Laurent series with acb coefficients
# ---------------------------------------------------------------------------


class Laurent:
    """sum_{e = val}^{top} c_e zeta^e, exact up to and including ``top``."""

    __slots__ = ("val", "coeffs", "top")

    def __init__(self, val: int, coeffs: Sequence, top: int):
        self.val = val
        self.top = top
        keep = max(0, top - val + 1)
        self.coeffs = list(coeffs[:keep]) + [flint.acb(0)] * (keep - len(coeffs))

    @classmethod
    def monomial(cls, e: int, c, top: int):
        return cls(e, [flint.acb(c)], top)

    def coeff(self, e: int):
        if e < self.val or e > self.top:
            if e > self.top:
                raise PrecisionError("coefficient %d beyond series order %d" % (e, self.top))
            return flint.acb(0)
        return self.coeffs[e - self.val]

    def __add__(self, other: "Laurent") -> "Laurent":
        val = min(self.val, other.val)
        top = min(self.top, other.top)
        out = [flint.acb(0)] * max(0, top - val + 1)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                e = src.val + i
                if e <= top:
                    out[e - val] += c
        return Laurent(val, out, top)

    def scale(self, c) -> "Laurent":
        return Laurent(self.val, [x * c for x in self.coeffs], self.top)

    def __mul__(self, other: "Laurent") -> "Laurent":
        val = self.val + other.val
        top = min(self.top + other.val, other.top + self.val)
        n = top - val + 1
        if n <= 0:
            return Laurent(val, [], top)
        out = [flint.acb(0)] * n
        a, b = self.coeffs, other.coeffs
        for i in range(min(len(a), n)):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(min(len(b), n - i)):
                out[i + j] += ai * b[j]
        return Laurent(val, out, top)

    def residue(self):
        return self.coeff(-1)

    def leading_valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return self.val + i
        return self.top + 1


def _series_from(coeffs, length) -> flint.acb_series:
    return flint.acb_series(list(coeffs)[:length], prec=length)


def _poly_taylor(poly: flint.fmpq_poly, a, length) -> List:
    """Coefficients of poly(a + zeta) up to zeta^(length-1)."""
    coeffs = [flint.acb(to_fmpq(to_fraction(c))) for c in poly.coeffs()]
    deg = len(coeffs) - 1
    out = []
    for k in range(min(length, deg + 1)):
        acc = flint.acb(0)
        for i in range(k, deg + 1):
            acc += coeffs[i] * comb(i, k) * a ** (i - k)
        out.append(acc)
    return out + [flint.acb(0)] * (length - len(out))


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------


@dataclass
class LocalData:
    """Expansions at one ramification point a, in zeta = z - a."""

    a: object
    sigma: List  # coefficients of sigma(z) - a, from zeta^1
    order: int
    kernel: Dict[int, Laurent] = field(default_factory=dict)
    w: Optional[Laurent] = None
    dw: Optional[Laurent] = None


class SpectralCurve:
    """Curve data for a G-form weight at frakb = 0."""

    def __init__(self, P: Sequence, Q: Sequence, t=1, bits: int = 256):
        self.P = [Fraction(p) for p in P]
        self.Q = [Fraction(q) for q in Q]
        self.t = Fraction(t)
        self.bits = int(bits)
        if self.t == 0:
            raise ConfigurationError("t must be nonzero")
        if any(q == 0 for q in self.Q):
            raise ConfigurationError("Q_j must be nonzero")
        z = flint.fmpq_poly([0, 1])
        num = flint.fmpq_poly([to_fmpq(self.t)])
        for p in self.P:
            num *= flint.fmpq_poly([to_fmpq(p), 1])
        qprod = flint.fmpq_poly([1])
        for q in self.Q:
            qprod *= flint.fmpq_poly([to_fmpq(q), -1])
        self.x_num = num          # x = x_num / x_den
        self.x_den = z * qprod
        self.X_num, self.X_den = num, qprod   # X = z x, regular at 0
        ram = self.x_num.derivative() * self.x_den - self.x_num * self.x_den.derivative()
        self.ram_poly = ram
        self._validate()
        with working_precision(self.bits):
            roots = ram.complex_roots()
            self.points = [r for r, mult in roots]
        self._local: Dict[Tuple[int, int], LocalData] = {}

    # -- genericity ------------------------------------------------------
    def _validate(self):
        ram = self.ram_poly
        if ram.degree() < 1:
            raise DomainError("non-generic spectral data: x has no finite ramification point")
        if flint.fmpq_poly.gcd(ram, ram.derivative()).degree() > 0:
            raise DomainError("non-generic spectral data: ramification is not simple")
        if flint.fmpq_poly.gcd(ram, self.x_num).degree() > 0 or \
                flint.fmpq_poly.gcd(ram, self.x_den).degree() > 0:
            raise DomainError("non-generic spectral data: ramification at a zero or pole of x")

    # -- evaluation --------------------------------------------------------
    def x(self, z):
        return _eval_rational(self.x_num, self.x_den, z)

    def y(self, z):
        return z / self.x(z)

    def dx(self, z):
        n, d = self.x_num, self.x_den
        return (_eval_poly(n.derivative(), z) * _eval_poly(d, z)
                - _eval_poly(n, z) * _eval_poly(d.derivative(), z)) / _eval_poly(d, z) ** 2

    # -- local data --------------------------------------------------------
    def local(self, index: int, order: int) -> LocalData:
        """Involution and kernel expansions at ramification point ``index``, exact to zeta^order."""
        key = (index, order)
        if key in self._local:
            return self._local[key]
        with working_precision(self.bits):
            data = self._build_local(self.points[index], order)
        self._local[key] = data
        return data

    def _x_series(self, a, length):
        num = _series_from(_poly_taylor(self.x_num, a, length), length)
        den = _series_from(_poly_taylor(self.x_den, a, length), length)
        return num / den

    def _build_local(self, a, order) -> LocalData:
        L = order + 8
        xs = self._x_series(a, L + 2)
        c = xs.coeffs()
        c = c + [flint.acb(0)] * (L + 2 - len(c))
        # x(a + zeta) - x(a) = zeta^2 g(zeta)
        g = _series_from(c[2:], L)
        if g.coeffs()[0] == 0:
            raise DomainError("non-generic spectral data: degenerate ramification point")
        u = _series_from([0] + g.sqrt().coeffs(), L)
        rev = u.reversion()
        w = rev(-u)
        wc = (w.coeffs() + [flint.acb(0)] * L)[:L]
        w_ser = Laurent(0, wc, L - 1)
        dw = Laurent(0, [wc[i + 1] * (i + 1) for i in range(L - 1)], L - 2)
        data = LocalData(a, wc[1:], order, w=w_ser, dw=dw)
        # kernel pieces K_j(zeta) = (zeta^j - w^j) / (2 (y(z) - y(sigma z)) x'(z))
        zeta = _series_from([0, 1], L)
        ys = _series_from([0, 1], L) + a
        y_z = ys / xs
        y_sigma = (w + a) / xs   # x(sigma(z)) = x(z)
        xp = xs.derivative()
        den = (y_z - y_sigma) * xp * 2
        dc = den.coeffs() + [flint.acb(0)] * L
        if dc[0] != 0 or dc[1] != 0:
            raise PrecisionError("kernel denominator does not vanish to second order")
        den2 = _series_from(dc[2:], L - 2).inv()
        zj = _series_from([1], L)
        wj = _series_from([1], L)
        for j in range(1, order + 4):
            zj = zj * zeta
            wj = wj * w
            numc = ((zj - wj).coeffs() + [flint.acb(0)] * L)[:L]
            # numerator has valuation >= 1, so K_j = zeta^{-1} (num/zeta) / den2
            body = _series_from(numc[1:], L - 2) * den2
            data.kernel[j] = Laurent(-1, body.coeffs(), L - 4)
        return data

    # -- expansion at z = 0 -----------------------------------------------
    def X_power_series(self, mu: int, length: int) -> List[Fraction]:
        """Taylor coefficients of X(z)^mu at 0, X = z x."""
        num = flint.fmpq_series(self.X_num.coeffs(), prec=length)
        den = flint.fmpq_series(self.X_den.coeffs(), prec=length)
        ser = (num / den) ** mu
        cs = [to_fraction(c) for c in ser.coeffs()]
        return cs + [Fraction(0)] * (length - len(cs))

    def origin_functional(self, mu: int, point: int, k: int):
        """[x^{-mu-1} dx] of dz/(z - a)^k near z = 0: -[z^{mu-1}] X^mu (z - a)^{-k}."""
        key = (mu, point, k)
        cache = self.__dict__.setdefault("_functional_cache", {})
        if key in cache:
            return cache[key]
        with working_precision(self.bits):
            a = self.points[point]
            Xs = self.X_power_series(mu, mu)
            base = (-a) ** (-k)
            total = flint.acb(0)
            for j in range(mu):
                cX = Xs[mu - 1 - j]
                if cX:
                    total += flint.acb(to_fmpq(cX)) * base * comb(k + j - 1, j) / a ** j
            val = -total
        cache[key] = val
        return val


def _eval_poly(p: flint.fmpq_poly, z):
    acc = flint.acb(0)
    for c in reversed(p.coeffs()):
        acc = acc * z + flint.acb(c)
    return acc


def _eval_rational(n, d, z):
    return _eval_poly(n, z) / _eval_poly(d, z)


def build_curve(weight, t=1, bits: int = 256) -> SpectralCurve:
    """Spectral curve of a numeric G-form weight (a RationalWeight or (P, Q) pair)."""
    if hasattr(weight, "form"):
        if weight.form != "G":
            raise ConfigurationError("build_curve expects a G-form weight")
        if not weight.is_numeric():
            raise ConfigurationError("build_curve needs numeric parameters")
        P, Q = weight.P, weight.Q
    else:
        P, Q = weight
    return SpectralCurve(P, Q, t, bits)


def local_involution(curve: SpectralCurve, point: int, order: int) -> List:
    """Coefficients [s_1, s_2, ...] of sigma(z) - a = sum s_m (z - a)^m."""
    return curve.local(point, order).sigma[:order]


# ---------------------------------------------------------------------------
# recursion
# ---------------------------------------------------------------------------


Key = Tuple[Tuple[int, int], ...]


@dataclass
class Correlator:
    """omega_{g,n} = sum c[key] prod_j dz_j / (z_j - a_{p_j})^{k_j}; key = ((p_1,k_1),...)."""

    g: int
    n: int
    coeffs: Dict[Key, object]
    points: List

    def evaluate(self, zs: Sequence):
        if len(zs) != self.n:
            raise ValueError("need %d points" % self.n)
        total = flint.acb(0)
        for key, c in self.coeffs.items():
            term = c
            for (p, k), z in zip(key, zs):
                term = term / (z - self.points[p]) ** k
            total += term
        return total

    def max_pole_order(self) -> int:
        return max((k for key in self.coeffs for _, k in key), default=0)

    def symmetry_defect(self):
        worst = 0.0
        for key, c in self.coeffs.items():
            for perm in itertools.permutations(range(self.n)):
                other = tuple(key[i] for i in perm)
                d = abs(c - self.coeffs.get(other, flint.acb(0)))
                worst = max(worst, float(d.mid().real) if hasattr(d, "mid") else float(d))
        return worst


class TopologicalRecursion:
    """Memoized correlators with a mix of free and origin-contracted slots."""

    def __init__(self, curve: SpectralCurve, g_max: int, n_max: int):
        self.curve = curve
        self.g_max = g_max
        self.n_max = n_max
        self.kmax = max(6 * g_max - 4 + 2 * n_max, 2)
        self.order = 2 * self.kmax + 4
        self._memo = {}
        self._local = [curve.local(i, self.order) for i in range(len(curve.points))]
        self._basis_cache = {}

    # -- basis elements evaluated near a ----------------------------------
    def _at_z(self, alpha: int, beta: int, k: int) -> Laurent:
        key = ("z", alpha, beta, k)
        if key not in self._basis_cache:
            top = self.order
            if alpha == beta:
                val = Laurent.monomial(-k, 1, top)
            else:
                d = self.curve.points[alpha] - self.curve.points[beta]
                coeffs = [(-1) ** j * comb(k + j - 1, j) * d ** (-k - j) for j in range(top + 1)]
                val = Laurent(0, coeffs, top)
            self._basis_cache[key] = val
        return self._basis_cache[key]

    def _at_sigma(self, alpha: int, beta: int, k: int) -> Laurent:
        key = ("s", alpha, beta, k)
        if key not in self._basis_cache:
            loc = self._local[alpha]
            top = self.order
            L = top + 4
            wser = _series_from(loc.w.coeffs, L)
            if alpha == beta:
                # w^{-k} w' with w = zeta * v
                v = _series_from(loc.w.coeffs[1:], L)
                body = Laurent(0, (v ** (-k)).coeffs(), L - 1)
                val = Laurent(-k, body.coeffs, top) * loc.dw
            else:
                d = self.curve.points[alpha] - self.curve.points[beta]
                f = (wser + d) ** (-k)
                val = Laurent(0, f.coeffs(), top) * loc.dw
            self._basis_cache[key] = Laurent(val.val, val.coeffs, min(val.top, top))
        return self._basis_cache[key]

    def _w02_z(self, alpha: int, m: int) -> Laurent:
        """Coefficient of dz_j/(z_j - a)^{m+2} in 1/(z - z_j)^2 near a: (m+1) zeta^m."""
        return Laurent.monomial(m, m + 1, self.order)

    def _w02_sigma(self, alpha: int, m: int) -> Laurent:
        key = ("w02s", alpha, m)
        if key not in self._basis_cache:
            loc = self._local[alpha]
            L = self.order + 4
            wser = _series_from(loc.w.coeffs, L)
            f = wser ** m if m else _series_from([1], L)
            val = Laurent(0, f.coeffs(), self.order) * loc.dw
            self._basis_cache[key] = val.scale(m + 1)
        return self._basis_cache[key]

    def _w02_same(self, alpha: int) -> Laurent:
        """omega_{0,2}(z, sigma z) / dz^2 = w' / (zeta - w)^2."""
        key = ("w02same", alpha)
        if key not in self._basis_cache:
            loc = self._local[alpha]
            L = self.order + 4
            diff = _series_from([0, 1], L) - _series_from(loc.w.coeffs, L)
            q = _series_from(diff.coeffs()[1:], L - 1) ** (-2)
            val = Laurent(-2, q.coeffs(), self.order) * loc.dw
            self._basis_cache[key] = val
        return self._basis_cache[key]

    # -- slot evaluation -----------------------------------------------------
    def _factor(self, g: int, free_positions: Tuple[int, ...], mus: Tuple[int, ...],
                alpha: int, at_sigma: bool) -> Dict[Tuple, Laurent]:
        """omega_{g, 1+|free|+|mus|}(z or sigma z, free slots, contracted slots) near a_alpha.

        Returns {((position, (beta, k)), ...): Laurent}.
        """
        n_other = len(free_positions) + len(mus)
        if g == 0 and n_other == 1:
            out = {}
            m_top = self.order
            if free_positions:
                pos = free_positions[0]
                for m in range(0, m_top + 1):
                    ser = self._w02_sigma(alpha, m) if at_sigma else self._w02_z(alpha, m)
                    out[((pos, (alpha, m + 2)),)] = ser
                return out
            mu = mus[0]
            total = None
            for m in range(0, m_top + 1):
                ser = self._w02_sigma(alpha, m) if at_sigma else self._w02_z(alpha, m)
                term = ser.scale(self.curve.origin_functional(mu, alpha, m + 2))
                total = term if total is None else total + term
            return {(): total}
        corr = self.omega(g, 1 + len(free_positions), mus)
        out: Dict[Tuple, Laurent] = {}
        for key, c in corr.items():
            beta, k = key[0]
            base = self._at_sigma(alpha, beta, k) if at_sigma else self._at_z(alpha, beta, k)
            tag = tuple(zip(free_positions, key[1:]))
            term = base.scale(c)
            out[tag] = out[tag] + term if tag in out else term
        return out

    def _pair(self, g: int, free_positions, mus, alpha) -> Dict[Tuple, Laurent]:
        """omega_{g, 2+...}(z, sigma z, free, contracted) near a_alpha."""
        if g == 0 and not free_positions and not mus:
            return {(): self._w02_same(alpha)}
        corr = self.omega(g, 2 + len(free_positions), mus)
        out: Dict[Tuple, Laurent] = {}
        cache = {}
        for key, c in corr.items():
            (b1, k1), (b2, k2) = key[0], key[1]
            ck = (b1, k1, b2, k2)
            if ck not in cache:
                cache[ck] = self._at_z(alpha, b1, k1) * self._at_sigma(alpha, b2, k2)
            tag = tuple(zip(free_positions, key[2:]))
            term = cache[ck].scale(c)
            out[tag] = out[tag] + term if tag in out else term
        return out

    # -- main recursion ---------------------------------------------------------
    def omega(self, g: int, n_free: int, mus: Sequence[int] = ()) -> Dict[Key, object]:
        """Pole-basis coefficients of omega_{g,n} with the first n_free slots free."""
        mus = tuple(sorted(mus))
        n = n_free + len(mus)
        if n_free < 1:
            raise ValueError("at least one free slot")
        if 2 * g - 2 + n <= 0:
            raise ValueError("omega_{%d,%d} is not produced by the recursion" % (g, n))
        if g > self.g_max or n > self.n_max + 2 * (self.g_max - g):
            raise ConfigurationError("(g, n) = (%d, %d) is outside the prepared range" % (g, n))
        key = (g, n_free, mus)
        if key in self._memo:
            return self._memo[key]
        with working_precision(self.curve.bits):
            result = self._compute(g, n_free, mus)
        self._memo[key] = result
        return result

    def _compute(self, g, n_free, mus):
        free = tuple(range(1, n_free))
        n_mus = len(mus)
        result: Dict[Key, object] = {}
        for alpha in range(len(self.curve.points)):
            rec: Dict[Tuple, Laurent] = {}

            def add(tag, ser):
                full = tuple(v for _, v in sorted(tag))
                rec[full] = rec[full] + ser if full in rec else ser

            if g >= 1:
                for tag, ser in self._pair(g - 1, free, mus, alpha).items():
                    add(tag, ser)
            for g1 in range(0, g + 1):
                g2 = g - g1
                for r_free in range(len(free) + 1):
                    for I_free in itertools.combinations(free, r_free):
                        J_free = tuple(p for p in free if p not in I_free)
                        for mask in range(1 << n_mus):
                            I_mus = tuple(mus[i] for i in range(n_mus) if mask >> i & 1)
                            J_mus = tuple(mus[i] for i in range(n_mus) if not mask >> i & 1)
                            n1 = len(I_free) + len(I_mus)
                            n2 = len(J_free) + len(J_mus)
                            if (g1 == 0 and n1 == 0) or (g2 == 0 and n2 == 0):
                                continue
                            A = self._factor(g1, I_free, I_mus, alpha, at_sigma=False)
                            B = self._factor(g2, J_free, J_mus, alpha, at_sigma=True)
                            for ta, sa in A.items():
                                for tb, sb in B.items():
                                    add(ta + tb, sa * sb)
            kern = self._local[alpha].kernel
            for rest, ser in rec.items():
                # K_j has valuation j - 2
                pole = -ser.leading_valuation()
                if pole < 0:
                    continue
                for j in range(1, pole + 2):
                    if j not in kern:
                        raise PrecisionError("kernel order %d not prepared" % j)
                    prod = kern[j] * ser
                    if prod.top < -1:
                        raise PrecisionError("series order too small for the residue")
                    r = prod.residue()
                    if r != 0:
                        k = ((alpha, j + 1),) + rest
                        result[k] = result[k] + r if k in result else r
        return result

    def correlator(self, g: int, n: int) -> Correlator:
        return Correlator(g, n, self.omega(g, n), list(self.curve.points))

    def expand(self, g: int, mu: Sequence[int]):
        """[prod x_i^{-mu_i-1} dx_i] omega_{g,n}(z_1..z_n) near z_i = 0, for the ordered tuple mu."""
        mu = tuple(mu)
        n = len(mu)
        if g == 0 and n == 1:
            return flint.acb(to_fmpq(omega01_origin(self.curve, mu[0])))
        if g == 0 and n == 2:
            return flint.acb(to_fmpq(omega02_origin(self.curve, mu[0], mu[1])))
        corr = self.omega(g, 1, mu[1:])
        with working_precision(self.curve.bits):
            total = flint.acb(0)
            for key, c in corr.items():
                (p, k), = key
                total += c * self.curve.origin_functional(mu[0], p, k)
        return total


def tr_correlators(curve: SpectralCurve, g_max: int, n_max: int) -> Dict[Tuple[int, int], Correlator]:
    """All fully free correlators with 2g - 2 + n > 0, g <= g_max, n <= n_max."""
    tr = TopologicalRecursion(curve, g_max, n_max)
    out = {}
    for g in range(0, g_max + 1):
        for n in range(1, n_max + 1):
            if 2 * g - 2 + n > 0:
                out[(g, n)] = tr.correlator(g, n)
    return out


# ---------------------------------------------------------------------------
# unstable terms, exact
# ---------------------------------------------------------------------------


def omega01_origin(curve: SpectralCurve, mu: int) -> Fraction:
    """[x^{-mu-1} dx] y dx near 0: -[z^{mu-1}] (z X^{mu-1} X' - X^mu)."""
    with working_precision(curve.bits):
        return _omega01_origin(curve, mu)


def _omega01_origin(curve, mu):
    n = mu + 1
    num = flint.fmpq_series(curve.X_num.coeffs(), prec=n)
    den = flint.fmpq_series(curve.X_den.coeffs(), prec=n)
    X = num / den
    Xp = X.derivative()
    z = flint.fmpq_series([0, 1], prec=n)
    expr = z * X ** (mu - 1) * Xp - X ** mu if mu >= 1 else -X ** 0
    cs = expr.coeffs()
    c = cs[mu - 1] if mu - 1 < len(cs) else 0
    return -to_fraction(c)


def _bivariate_log_coeffs(zc: List[Fraction], deg: int) -> Dict[Tuple[int, int], Fraction]:
    """log((z(x1) - z(x2)) / (z_1 (x1 - x2))) for z = sum zc[n] x^n, to total degree deg."""
    q: Dict[Tuple[int, int], Fraction] = {}
    z1 = zc[1]
    for nn in range(2, deg + 2):
        c = zc[nn] if nn < len(zc) else Fraction(0)
        if c == 0:
            continue
        for i in range(nn):
            q[(i, nn - 1 - i)] = q.get((i, nn - 1 - i), Fraction(0)) + c / z1
    u = {k: v for k, v in q.items() if sum(k) <= deg and v != 0}

    def mul(a, b):
        out = {}
        for (i1, j1), v1 in a.items():
            for (i2, j2), v2 in b.items():
                if i1 + i2 + j1 + j2 <= deg:
                    key = (i1 + i2, j1 + j2)
                    out[key] = out.get(key, Fraction(0)) + v1 * v2
        return out

    log = {}
    power = dict(u)
    for k in range(1, deg + 1):
        for key, v in power.items():
            log[key] = log.get(key, Fraction(0)) + Fraction((-1) ** (k + 1), k) * v
        power = mul(power, u)
        if not power:
            break
    return log


def omega02_origin(curve: SpectralCurve, mu1: int, mu2: int) -> Fraction:
    """[x1^{-mu1-1} x2^{-mu2-1} dx1 dx2] (omega_{0,2} - dx1 dx2/(x1 - x2)^2) near 0."""
    with working_precision(curve.bits):
        return _omega02_origin(curve, mu1, mu2)


def _omega02_origin(curve, mu1, mu2):
    deg = mu1 + mu2
    n = deg + 2
    num = flint.fmpq_series(curve.X_den.coeffs(), prec=n) * flint.fmpq_series([0, 1], prec=n)
    den = flint.fmpq_series(curve.X_num.coeffs(), prec=n)
    xi = num / den                      # xi = 1/x = z / X
    zser = xi.reversion()
    zc = [to_fraction(c) for c in zser.coeffs()]
    zc = zc + [Fraction(0)] * (n + 1 - len(zc))
    log = _bivariate_log_coeffs(zc, deg)
    return mu1 * mu2 * log.get((mu1, mu2), Fraction(0))


# ---------------------------------------------------------------------------
# comparison
# ---------------------------------------------------------------------------


def aut_order(mu) -> int:
    return Partition(sorted(mu, reverse=True)).aut_order()


def _acb_to_float_text(v, digits=40) -> str:
    return v.mid().real.str(digits, radius=False) if hasattr(v, "mid") else str(v)


def compare_with_hurwitz(curve: SpectralCurve, table_values: Dict[Tuple[Fraction, Partition], Fraction],
                         cases: Sequence[Tuple[int, Tuple[int, ...]]], tol=Fraction(1, 10 ** 30),
                         zero_tol=Fraction(1, 10 ** 40), g_max: Optional[int] = None,
                         n_max: Optional[int] = None) -> dict:
    """Compare TR expansions with H_g(mu) |Aut mu| prod mu_i t^{|mu|} from an exact table.

    Nonzero targets are judged by relative error against ``tol``.  A zero
    target has no scale, so its absolute error is reported and judged against
    ``zero_tol``.  Errors are ball upper bounds, not midpoint estimates.
    """
    if g_max is None:
        g_max = max((g for g, _ in cases), default=0)
    if n_max is None:
        n_max = max((len(mu) for _, mu in cases), default=1)
    tr = TopologicalRecursion(curve, int(g_max), int(n_max))
    entries = []
    with working_precision(curve.bits):
        for g, mu in cases:
            mu = tuple(mu)
            part = Partition(sorted(mu, reverse=True))
            h = table_values.get((Fraction(g), part), Fraction(0))
            factor = aut_order(mu)
            for m in mu:
                factor *= m
            exact = Fraction(h) * factor * curve.t ** sum(mu)
            value = tr.expand(g, mu)
            err = abs(value - flint.acb(to_fmpq(exact)))
            if exact != 0:
                err = err / flint.arb(to_fmpq(abs(exact)))
                bound = tol
            else:
                bound = zero_tol
            err_up = err.mid() + err.rad()
            entries.append({"g": g, "n": len(mu), "mu": list(mu),
                            "tr_value": _acb_to_float_text(value),
                            "exact_value": _fraction_text(exact),
                            "rel_err": err_up.str(5, radius=False),
                            "error_kind": "relative" if exact != 0 else "absolute",
                            "pass": bool(err_up <= flint.arb(to_fmpq(Fraction(bound))))})
    return {"schema_version": 1, "bits": curve.bits, "t": str(curve.t),
            "tol": str(Fraction(tol)), "zero_tol": str(Fraction(zero_tol)), "entries": entries,
            "passed": all(e["pass"] for e in entries)}


def _fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


def comparison_cases(g_max: int, chi_max: int, mu_max: int, size_max: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """(g, mu) with 2g - 2 + n <= chi_max, parts <= mu_max, |mu| <= size_max (mu as a partition)."""
    cases = []
    for g in range(0, g_max + 1):
        for n in range(1, chi_max + 3 - 2 * g):
            if 2 * g - 2 + n > chi_max:
                continue
            for mu in itertools.combinations_with_replacement(range(mu_max, 0, -1), n):
                if sum(mu) <= size_max:
                    cases.append((g, tuple(mu)))
    return cases
