"""Lattice paths, bridges, colorings and their operator-valued weights.

A path is stored by its start point and its list of increments d_j; the
j-th step goes from (x + j - 1, .) to (x + j, . + d_j).  Weight formulas are
written with gamma_j = -d_j, which is exposed by ``Path.gammas``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple, Union


@dataclass(frozen=True)
class Path:
    start: Tuple[int, int]
    increments: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "start", (int(self.start[0]), int(self.start[1])))
        object.__setattr__(self, "increments", tuple(int(d) for d in self.increments))

    @property
    def length(self) -> int:
        return len(self.increments)

    @property
    def end(self) -> Tuple[int, int]:
        return (self.start[0] + self.length, self.start[1] + sum(self.increments))

    @property
    def gammas(self) -> Tuple[int, ...]:
        return tuple(-d for d in self.increments)

    def points(self) -> List[Tuple[int, int]]:
        x, y = self.start
        pts = [(x, y)]
        for d in self.increments:
            x, y = x + 1, y + d
            pts.append((x, y))
        return pts

    def heights(self) -> List[int]:
        return [p[1] for p in self.points()]

    def interior_heights(self) -> List[int]:
        return self.heights()[1:-1]

    def is_bridge(self) -> bool:
        return all(h >= 0 for h in self.interior_heights())

    def shifted(self, dx: int = 1) -> "Path":
        return Path((self.start[0] + dx, self.start[1]), self.increments)

    def concat(self, other: "Path") -> "Path":
        if other.start != self.end:
            raise ValueError("paths do not meet")
        return Path(self.start, self.increments + other.increments)

    def __str__(self):
        return "Path(%s, %s)" % (self.start, list(self.increments))


@dataclass(frozen=True)
class ColoredPath:
    path: Path
    coloring: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coloring) != self.path.length:
            raise ValueError("coloring length must equal path length")


# ---------------------------------------------------------------------------
# Mode words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    """Heisenberg generator J^color_mode."""

    color: int
    mode: int

    def __str__(self):
        return "J^%d_%d" % (self.color, self.mode) if self.mode >= 0 else "J^%d_{%d}" % (self.color, self.mode)


@dataclass(frozen=True)
class AffineScalar:
    """const + sum coeff*symbol + hb * (hbar * frakb)."""

    const: Fraction = Fraction(0)
    symbols: Tuple[Tuple[str, Fraction], ...] = ()
    hb: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "const", Fraction(self.const))
        object.__setattr__(self, "hb", Fraction(self.hb))
        merged = {}
        for name, c in self.symbols:
            merged[name] = merged.get(name, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "symbols",
                           tuple(sorted((n, c) for n, c in merged.items() if c != 0)))

    @classmethod
    def of(cls, u) -> "AffineScalar":
        """Coerce a rational, a symbol name ('P1', '-Q2') or an AffineScalar."""
        if isinstance(u, AffineScalar):
            return u
        if isinstance(u, str):
            name = u.strip()
            sign = Fraction(1)
            if name.startswith("-"):
                sign, name = Fraction(-1), name[1:].strip()
            return cls(Fraction(0), ((name, sign),), Fraction(0))
        return cls(Fraction(u))

    def plus_hb(self, k) -> "AffineScalar":
        return AffineScalar(self.const, self.symbols, self.hb + Fraction(k))

    def negated(self) -> "AffineScalar":
        return AffineScalar(-self.const, tuple((n, -c) for n, c in self.symbols), -self.hb)

    def is_zero(self) -> bool:
        return self.const == 0 and not self.symbols and self.hb == 0

    def __str__(self):
        parts = []
        if self.const != 0:
            parts.append(str(self.const))
        for name, c in self.symbols:
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append("%s*%s" % (c, name))
        if self.hb != 0:
            if self.hb == 1:
                parts.append("hb")
            elif self.hb == -1:
                parts.append("-hb")
            else:
                parts.append("%s*hb" % self.hb)
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return "(%s)" % body


Factor = Union[Gen, AffineScalar]


@dataclass(frozen=True)
class ModeWord:
    """Ordered product of factors; the rightmost factor acts first."""

    factors: Tuple[Factor, ...] = ()
    prefactor: Fraction = Fraction(1)

    def __mul__(self, other: "ModeWord") -> "ModeWord":
        return ModeWord(self.factors + other.factors, self.prefactor * other.prefactor)

    def scaled(self, c) -> "ModeWord":
        return ModeWord(self.factors, self.prefactor * Fraction(c))

    def mode_sum(self) -> int:
        return sum(f.mode for f in self.factors if isinstance(f, Gen))

    def colors(self) -> set:
        return {f.color for f in self.factors if isinstance(f, Gen)}

    def __str__(self):
        body = "".join(str(f) for f in self.factors) or "1"
        if self.prefactor == 1:
            return body
        if self.prefactor == -1:
            return "-" + body
        return "%s*%s" % (self.prefactor, body)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_bridges(start, end, height_max: int) -> List[Path]:
    """All bridges start -> end with interior heights in [0, height_max]."""
    (x0, y0), (x1, y1) = start, end
    if x1 <= x0:
        raise ValueError("bridges need start.x < end.x")
    if height_max < 0:
        raise ValueError("height_max must be nonnegative")
    length = x1 - x0
    out: List[Path] = []

    def rec(y, incs):
        remaining = length - len(incs)
        if remaining == 1:
            out.append(Path(start, tuple(incs) + (y1 - y,)))
            return
        for y_next in range(0, height_max + 1):
            incs.append(y_next - y)
            rec(y_next, incs)
            incs.pop()

    rec(y0, [])
    return out


def enumerate_paths(start, end, step_min: int, step_max: int) -> List[Path]:
    """All paths start -> end whose increments lie in [step_min, step_max]."""
    (x0, y0), (x1, y1) = start, end
    length = x1 - x0
    if length <= 0:
        raise ValueError("paths need start.x < end.x")
    out: List[Path] = []

    def rec(y, incs):
        remaining = length - len(incs)
        if remaining == 0:
            if y == y1:
                out.append(Path(start, tuple(incs)))
            return
        gap = y1 - y
        for d in range(step_min, step_max + 1):
            rest = gap - d
            if rest < step_min * (remaining - 1) or rest > step_max * (remaining - 1):
                continue
            incs.append(d)
            rec(y + d, incs)
            incs.pop()

    rec(y0, [])
    return out


def increasing_colorings(length: int, lo: int, hi: int) -> List[Tuple[int, ...]]:
    """Strictly increasing maps [length] -> [lo..hi]."""
    if length < 0:
        return []
    return list(combinations(range(lo, hi + 1), length))


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------


def tilde_weight(path: Path, u: Sequence) -> ModeWord:
    """One-color weight: nonflat step (1,k) -> J^1_{-k}; flat step i at height l -> u_i - hb*l."""
    if len(u) != path.length:
        raise ValueError("u must have one entry per step (got %d for length %d)" % (len(u), path.length))
    factors: List[Factor] = []
    heights = path.heights()
    for i, d in enumerate(path.increments):
        if d != 0:
            factors.append(Gen(1, -d))
        else:
            factors.append(AffineScalar.of(u[i]).plus_hb(-heights[i]))
    return ModeWord(tuple(factors))


def colored_weight(path: Path, coloring: Sequence[int], r: int = None) -> ModeWord:
    """Colored weight: nonflat step j -> J^{f(j)}_{gamma_j};
    flat step j -> J^{f(j)}_0 - hb*(sum_{l>j} gamma_l + length - j)."""
    coloring = tuple(coloring)
    if len(coloring) != path.length:
        raise ValueError("coloring length must equal path length")
    if r is not None and any(c < 1 or c > r for c in coloring):
        raise ValueError("coloring uses colors outside [1..%d]" % r)
    gam = path.gammas
    n = path.length
    factors: List[Factor] = []
    for j in range(1, n + 1):
        g = gam[j - 1]
        a = coloring[j - 1]
        if g != 0:
            factors.append(Gen(a, g))
        else:
            factors.append(ZeroModeShift(a, -(sum(gam[j:]) + n - j)))
    return ModeWord(tuple(factors))


@dataclass(frozen=True)
class ZeroModeShift:
    """The scalar J^color_0 + hb_coeff * hbar * frakb."""

    color: int
    hb: int

    @property
    def mode(self) -> int:
        return 0

    def __str__(self):
        if self.hb == 0:
            return "J^%d_0" % self.color
        sign = "+" if self.hb > 0 else "-"
        mag = abs(self.hb)
        return "(J^%d_0 %s %shb)" % (self.color, sign, "" if mag == 1 else mag)


def word_to_text(word: ModeWord) -> str:
    return str(word)
