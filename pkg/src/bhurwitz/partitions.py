"""Integer partitions and Young-diagram geometry.

Boxes use (x, y) coordinates: x is the column (1 <= x <= lambda_y) and y
the row (1 <= y <= length).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial
from typing import List, Tuple

from .ring import ParamScalar


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError("partition parts must be positive: %r" % (parts,))
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition parts must be weakly decreasing: %r" % (parts,))
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p >= j) for j in range(1, self[0] + 1))

    def boxes(self) -> List["Box"]:
        return [Box(x, y) for y, row in enumerate(self, start=1) for x in range(1, row + 1)]

    def contains(self, box: "Box") -> bool:
        return 1 <= box.y <= len(self) and 1 <= box.x <= self[box.y - 1]

    def multiplicities(self) -> Counter:
        return Counter(self)

    def n_statistic(self) -> int:
        """n(lambda) = sum (i - 1) lambda_i."""
        return sum(i * p for i, p in enumerate(self))

    def z_factor(self) -> int:
        """z_lambda = prod_i m_i! i^{m_i}."""
        out = 1
        for part, m in Counter(self).items():
            out *= factorial(m) * part ** m
        return out

    def aut_order(self) -> int:
        out = 1
        for m in Counter(self).values():
            out *= factorial(m)
        return out

    def remove_box(self, box: "Box") -> "Partition":
        parts = list(self)
        if not self.contains(box) or box.x != parts[box.y - 1]:
            raise ValueError("box %s is not a removable corner of %s" % (box, self))
        if box.y < len(parts) and parts[box.y] == parts[box.y - 1]:
            raise ValueError("box %s is not a removable corner of %s" % (box, self))
        parts[box.y - 1] -= 1
        return Partition(p for p in parts if p > 0)

    def add_box(self, row: int) -> "Partition":
        """Add a box at the end of the given (1-based) row, if legal."""
        parts = list(self) + [0]
        if row < 1 or row > len(parts):
            raise ValueError("row out of range")
        if row > 1 and parts[row - 2] <= parts[row - 1]:
            raise ValueError("cannot add a box in row %d of %s" % (row, self))
        parts[row - 1] += 1
        return Partition(p for p in parts if p > 0)

    def to_text(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError("partition text must look like [3,1,1]")
        body = text[1:-1].strip()
        return cls(int(p) for p in body.split(",")) if body else cls()

    def __repr__(self):
        return "Partition(%s)" % self.to_text()


class Box(tuple):
    """A cell (x, y) of a Young diagram."""

    def __new__(cls, x: int, y: int):
        if x < 1 or y < 1:
            raise ValueError("box coordinates start at 1")
        return super().__new__(cls, (int(x), int(y)))

    @property
    def x(self) -> int:
        return self[0]

    @property
    def y(self) -> int:
        return self[1]

    def __repr__(self):
        return "Box(%d,%d)" % self


@lru_cache(maxsize=None)
def _partitions_tuple(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_tuple(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> List[Partition]:
    """All partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in _partitions_tuple(n, n)]


def _require_box(lam: Partition, box: Box):
    if not Partition(lam).contains(Box(*box)):
        raise ValueError("box %s is outside the diagram %s" % (tuple(box), tuple(lam)))


def content_tilde(lam: Partition, box) -> ParamScalar:
    """s (x - 1) - (y - 1)/s."""
    _require_box(lam, box)
    x, y = box
    s = ParamScalar.s()
    return s * (x - 1) - s.inverse() * (y - 1)


def content_alpha(lam: Partition, box) -> ParamScalar:
    """alpha (x - 1) - (y - 1) with alpha = s^2."""
    _require_box(lam, box)
    x, y = box
    return ParamScalar.alpha() * (x - 1) - (y - 1)


def content_sum_alpha_parts(lam) -> Tuple[int, int]:
    """Sum of alpha-contents as (coefficient of alpha, constant)."""
    lam = Partition(lam)
    return lam.conjugate().n_statistic(), -lam.n_statistic()


def hook_norm(lam) -> ParamScalar:
    """j_lambda = prod over boxes of hook * hook' with alpha = s^2."""
    lam = Partition(lam)
    conj = lam.conjugate()
    alpha = ParamScalar.alpha()
    out = ParamScalar(1)
    for x, y in lam.boxes():
        arm = lam[y - 1] - x
        leg = conj[x - 1] - y
        out = out * (alpha * arm + leg + 1) * (alpha * (arm + 1) + leg)
    return out


def hook_norm_at(lam, alpha) -> object:
    """j_lambda evaluated at a numeric alpha."""
    lam = Partition(lam)
    conj = lam.conjugate()
    out = 1
    for x, y in lam.boxes():
        arm = lam[y - 1] - x
        leg = conj[x - 1] - y
        out = out * (alpha * arm + leg + 1) * (alpha * (arm + 1) + leg)
    return out


LEQ = "less-or-equal"
GREATER = "greater"
INCOMPARABLE = "incomparable"


def dominance_leq(lam, mu) -> str:
    """Compare partial sums; returns LEQ, GREATER or INCOMPARABLE."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError("dominance needs partitions of equal size")
    a = b = 0
    leq = geq = True
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            leq = False
        if a < b:
            geq = False
    if leq:
        return LEQ
    if geq:
        return GREATER
    return INCOMPARABLE


def dominates(lam, mu) -> bool:
    """True when mu <= lam in dominance order."""
    return dominance_leq(mu, lam) == LEQ


def covers_down(lam) -> List[Tuple[Partition, Box]]:
    """All (mu, removed box) with mu obtained from lam by removing a corner."""
    lam = Partition(lam)
    if not lam:
        raise ValueError("the empty partition has no removable boxes")
    out = []
    for y in range(1, len(lam) + 1):
        if y == len(lam) or lam[y] < lam[y - 1]:
            box = Box(lam[y - 1], y)
            out.append((lam.remove_box(box), box))
    return out


def covers_up(lam) -> List[Tuple[Partition, Box]]:
    """All (nu, added box) with nu obtained from lam by adding a box."""
    lam = Partition(lam)
    out = []
    for y in range(1, len(lam) + 2):
        if y == 1 or (y - 2 < len(lam) and (y - 1 >= len(lam) or lam[y - 2] > lam[y - 1])):
            try:
                nu = lam.add_box(y)
            except ValueError:
                continue
            out.append((nu, Box(nu[y - 1], y)))
    return out
