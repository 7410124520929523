from collections import Counter
from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from bhurwitz.paths import (AffineScalar, ColoredPath, Gen, ModeWord, Path, ZeroModeShift, colored_weight,
                            enumerate_bridges, enumerate_paths, increasing_colorings, tilde_weight)


def dp_bridge_count(start, end, height_max):
    (x0, y0), (x1, y1) = start, end
    counts = {y0: 1}
    for _ in range(x1 - x0 - 1):
        nxt = Counter()
        for _y, c in counts.items():
            for h in range(height_max + 1):
                nxt[h] += c
        counts = nxt
    # last step may land anywhere
    return sum(counts.values())


def brute_bridges(start, end, height_max, step_bound=8):
    (x0, y0), (x1, y1) = start, end
    n = x1 - x0
    found = set()
    for incs in product(range(-step_bound, step_bound + 1), repeat=n):
        path = Path(start, incs)
        if path.end == end and path.is_bridge() and all(h <= height_max for h in path.interior_heights()):
            found.add(incs)
    return found


ENUMERATION_BUDGET = 300
REPRESENTATIVE_BUDGET = 20000


class TestPath:
    def test_end_and_gammas(self):
        path = Path((1, -1), (2, 0, -3))
        assert path.end == (4, -2)
        assert path.gammas == (-2, 0, 3)
        assert path.heights() == [-1, 1, 1, -2]

    def test_bridge_endpoints_exempt(self):
        assert Path((0, -1), (1, -1)).is_bridge()
        assert not Path((0, 0), (-1, 1)).is_bridge()

    def test_concat(self):
        a, b = Path((0, 0), (1,)), Path((1, 1), (-1,))
        assert a.concat(b) == Path((0, 0), (1, -1))
        with pytest.raises(ValueError):
            b.concat(b)

    def test_colored_path_length_check(self):
        with pytest.raises(ValueError):
            ColoredPath(Path((0, 0), (0, 0)), (1,))


class TestEnumerateBridges:
    def test_single_up_step(self):
        for bound in range(4):
            assert enumerate_bridges((0, -1), (1, 0), bound) == [Path((0, -1), (1,))]

    def test_peak_heights(self):
        paths = enumerate_bridges((0, -1), (2, -1), 2)
        assert len(paths) == 3
        assert sorted(p.interior_heights()[0] for p in paths) == [0, 1, 2]

    def test_length_two_flat_endpoints(self):
        # one interior point, at height 0 or 1
        paths = enumerate_bridges((0, 0), (2, 0), 1)
        assert len(paths) == 2
        assert {p.increments for p in paths} == {(0, 0), (1, -1)}

    def test_brute_force_small(self):
        for start, end, bound in [((0, -1), (3, 0), 2), ((0, 0), (3, -1), 1), ((-1, 2), (2, 0), 3)]:
            found = {p.increments for p in enumerate_bridges(start, end, bound)}
            assert found == brute_bridges(start, end, bound)

    @pytest.mark.parametrize("height_max", range(7))
    def test_dp_counter(self, height_max):
        # every endpoint pair in the box whose bridge set fits the budget
        coords = range(-4, 5)
        for x0, y0, x1, y1 in product(coords, repeat=4):
            if x1 <= x0 or (height_max + 1) ** (x1 - x0 - 1) > ENUMERATION_BUDGET:
                continue
            paths = enumerate_bridges((x0, y0), (x1, y1), height_max)
            assert len(paths) == dp_bridge_count((x0, y0), (x1, y1), height_max)
            assert len(set(paths)) == len(paths)

    @pytest.mark.parametrize("height_max", range(7))
    def test_dp_counter_long(self, height_max):
        for length in range(1, 9):
            if (height_max + 1) ** (length - 1) > REPRESENTATIVE_BUDGET:
                break
            start, end = (-4, 4 - length % 3), (length - 4, -1)
            paths = enumerate_bridges(start, end, height_max)
            assert len(paths) == dp_bridge_count(start, end, height_max)
            assert all(p.end == end and p.is_bridge() for p in paths)

    def test_deterministic(self):
        assert enumerate_bridges((0, -1), (4, 0), 3) == enumerate_bridges((0, -1), (4, 0), 3)

    def test_bad_input(self):
        with pytest.raises(ValueError):
            enumerate_bridges((1, 0), (1, 0), 2)
        with pytest.raises(ValueError):
            enumerate_bridges((0, 0), (1, 0), -1)


class TestEnumeratePaths:
    def test_matches_filter(self):
        paths = enumerate_paths((0, 0), (3, 1), -2, 2)
        expected = {incs for incs in product(range(-2, 3), repeat=3) if sum(incs) == 1}
        assert {p.increments for p in paths} == expected


class TestColorings:
    def test_binomial(self):
        assert len(increasing_colorings(2, 1, 3)) == 3

    def test_empty_length(self):
        assert increasing_colorings(0, 1, 3) == [()]

    def test_too_few_colors(self):
        assert increasing_colorings(4, 2, 4) == []

    @given(st.integers(0, 6), st.integers(-3, 3), st.integers(0, 6))
    def test_count_and_monotone(self, length, lo, width):
        hi = lo + width - 1
        cols = increasing_colorings(length, lo, hi)
        assert len(cols) == comb(width, length)
        assert all(all(a < b for a, b in zip(c, c[1:])) for c in cols)


class TestTildeWeight:
    def test_up_step(self):
        assert tilde_weight(Path((0, -1), (1,)), [0]) == ModeWord((Gen(1, -1),))

    def test_flat_step_at_height_two(self):
        word = tilde_weight(Path((0, 2), (0,)), ["P1"])
        assert word.factors == (AffineScalar.of("P1").plus_hb(-2),)
        assert str(word) == "(P1 - 2*hb)"

    def test_down_step(self):
        assert tilde_weight(Path((0, 3), (-3,)), [0]).factors == (Gen(1, 3),)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            tilde_weight(Path((0, 0), (0, 0)), [0])


class TestColoredWeight:
    def test_figure_example(self):
        path = Path((0, 0), (1, -4, 0, 2, 0, -3, 2))
        assert sum(path.gammas) == 2
        f = tuple(range(1, 8))
        word = colored_weight(path, f)
        expected = (Gen(1, -1), Gen(2, 4), ZeroModeShift(3, -3), Gen(4, -2), ZeroModeShift(5, -3),
                    Gen(6, 3), Gen(7, -2))
        assert word.factors == expected

    @pytest.mark.parametrize("i", range(1, 6))
    def test_all_flat(self, i):
        word = colored_weight(Path((0, 0), (0,) * i), range(1, i + 1))
        assert word.factors == tuple(ZeroModeShift(j, -(i - j)) for j in range(1, i + 1))

    def test_single_up_step(self):
        assert colored_weight(Path((0, -1), (1,)), (3,)).factors == (Gen(3, -1),)

    def test_invalid_coloring(self):
        with pytest.raises(ValueError):
            colored_weight(Path((0, 0), (0,)), (5,), r=3)
        with pytest.raises(ValueError):
            colored_weight(Path((0, 0), (0, 0)), (1,))


steps = st.lists(st.integers(-3, 3), min_size=1, max_size=6)


class TestShiftInvariance:
    @given(steps, st.integers(-3, 3), st.integers(-3, 3))
    def test_tilde(self, incs, x, y):
        path = Path((x, y), incs)
        u = ["P%d" % (j + 1) for j in range(len(incs))]
        assert tilde_weight(path, u) == tilde_weight(path.shifted(), u)

    @given(steps, st.integers(-3, 3), st.integers(-3, 3))
    def test_colored(self, incs, x, y):
        path = Path((x, y), incs)
        f = list(range(1, len(incs) + 1))
        assert colored_weight(path, f) == colored_weight(path.shifted(), f)


# --- elementary symmetric expansion, compared as normal-ordered sums -------

def _poly_mul(a, b):
    out = Counter()
    for ma, ca in a.items():
        for mb, cb in b.items():
            out[tuple(sorted(ma + mb))] += ca * cb
    return out


def _affine_poly(x: AffineScalar):
    poly = Counter()
    if x.const:
        poly[()] += x.const
    for name, c in x.symbols:
        poly[(name,)] += c
    if x.hb:
        poly[("hb",)] += x.hb
    return poly


def expand(words):
    """Sum of ModeWords -> {generator word: polynomial in symbols and hb}."""
    total = {}
    for word, scalar in words:
        gens = tuple(f for f in word.factors if isinstance(f, Gen))
        poly = Counter({(): Fraction(word.prefactor)})
        poly = _poly_mul(poly, scalar)
        for f in word.factors:
            if isinstance(f, AffineScalar):
                poly = _poly_mul(poly, _affine_poly(f))
        acc = total.setdefault(gens, Counter())
        for m, c in poly.items():
            acc[m] += c
    return {g: {m: c for m, c in p.items() if c} for g, p in total.items() if any(p.values())}


def elementary(k, names):
    out = Counter()
    for idx in increasing_colorings(k, 0, len(names) - 1):
        out[tuple(sorted(names[i] for i in idx))] += 1
    return out


@pytest.mark.parametrize("n", range(4))
def test_elementary_expansion(n):
    # both sides are infinite sums; cut them at the same interior height
    names = ["P%d" % (j + 1) for j in range(n)]
    height = n + 1
    lhs = []
    for i in range(n + 1):
        e = elementary(n - i, names)
        for path in enumerate_bridges((0, -1), (i + 1, 0), height):
            lhs.append((tilde_weight(path, [0] * (i + 1)), e))
    rhs = [(tilde_weight(path, [0] + names), Counter({(): 1}))
           for path in enumerate_bridges((0, -1), (n + 1, 0), height)]
    assert expand(lhs) == expand(rhs)
