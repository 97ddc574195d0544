"""The posets Q_w and Q^C_w, their antichains, down-sets and floors.

An element of Q_w is a position pair ``(i, j)`` standing for the hyperplane
``x_{w(i)} - x_{w(j)} = 1``.  For type C the pairs ``(i, j)`` and ``(-j, -i)``
name the same hyperplane and are identified; an element is stored under the
representative with the smaller first coordinate.

Order: ``(i, j) <= (r, s)`` iff ``r <= i < j <= s``.  Narrow intervals sit
below wide ones, so the set of hyperplanes having a region on the origin side
is a down-set and the far side is an up-set.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ResourceLimitError, ValidationError
from .model import SetPartition, Window, ground_index, mirror_arc, windows

Element = tuple[int, int]

MAX_ANTICHAIN_N = {"A": 8, "C": 6}


def canonical_rep(family: str, pair: Element) -> Element:
    if family == "A":
        return pair
    return min(pair, mirror_arc(pair))


def orbit(family: str, pair: Element) -> tuple[Element, ...]:
    if family == "A":
        return (pair,)
    m = mirror_arc(pair)
    return (pair,) if m == pair else tuple(sorted((pair, m)))


class RootPoset:
    """Q_w (family A) or the mirror-identified Q^C_w (family C).

    ``elements`` lists canonical representatives in a linear extension
    (by interval width, then representative).
    """

    def __init__(self, window: Window):
        self.window = window
        self.family = window.family
        self.n = window.n
        w = window
        pos = w.positions()
        found = set()
        for a, i in enumerate(pos):
            for j in pos[a + 1:]:
                if self.family == "A":
                    ok = w(i) < w(j)
                else:
                    ok = 0 < w(i) <= abs(w(j))
                if ok:
                    found.add(canonical_rep(self.family, (i, j)))
        self.elements: tuple[Element, ...] = tuple(sorted(found, key=lambda e: (self._width(e), e)))
        self.index = {e: k for k, e in enumerate(self.elements)}
        m = len(self.elements)
        below = [0] * m
        above = [0] * m
        for a, e in enumerate(self.elements):
            for b, f in enumerate(self.elements):
                if self._leq(e, f):
                    below[b] |= 1 << a
                    above[a] |= 1 << b
        self.below = tuple(below)
        self.above = tuple(above)
        self.comparable = tuple(x | y for x, y in zip(below, above))

    def _width(self, e: Element) -> int:
        return ground_index(self.family, self.n, e[1]) - ground_index(self.family, self.n, e[0])

    def _leq(self, e: Element, f: Element) -> bool:
        return any(
            r <= i and j <= s
            for (i, j) in orbit(self.family, e)
            for (r, s) in orbit(self.family, f)
        )

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, pair) -> bool:
        return canonical_rep(self.family, tuple(pair)) in self.index

    def rep(self, pair) -> Element:
        """Canonical representative of ``pair``; error if not an element."""
        e = canonical_rep(self.family, tuple(pair))
        if e not in self.index:
            raise ValidationError(f"{pair} is not an element of Q_{self.window}")
        return e

    def leq(self, e: Element, f: Element) -> bool:
        a, b = self.index[self.rep(e)], self.index[self.rep(f)]
        return bool(self.below[b] >> a & 1)

    def mask(self, subset) -> int:
        out = 0
        for e in subset:
            out |= 1 << self.index[self.rep(e)]
        return out

    def unmask(self, mask: int) -> tuple[Element, ...]:
        """Elements in ``mask``, sorted."""
        return tuple(sorted(e for k, e in enumerate(self.elements) if mask >> k & 1))

    def hyperplane(self, e: Element) -> tuple[tuple[int, ...], Fraction]:
        """Primitive integer normal and offset of the hyperplane named by ``e``."""
        i, j = self.rep(e)
        normal = [0] * self.n
        for value, sign in ((self.window(i), 1), (self.window(j), -1)):
            normal[abs(value) - 1] += sign if value > 0 else -sign
        g = 0
        for c in normal:
            g = gcd(g, c)
        return tuple(c // g for c in normal), Fraction(1, g)

    def __repr__(self) -> str:
        return f"RootPoset({self.window}, {len(self)} elements)"


@lru_cache(maxsize=4096)
def root_poset(family: str, w) -> RootPoset:
    if not isinstance(w, Window):
        w = Window(family, tuple(w))
    elif w.family != family:
        raise ValidationError(f"window {w} is not of family {family}")
    return RootPoset(w)


def full_root_poset(family: str, n: int) -> RootPoset:
    """The window whose poset contains every position pair (up to mirroring)."""
    if family == "A":
        return root_poset("A", tuple(range(1, n + 1)))
    return root_poset("C", tuple(-(n + 1 - k) for k in range(1, n + 1)))


def check_order_axioms(p: RootPoset) -> list[str]:
    """Reflexivity, antisymmetry and transitivity; returns the violations found."""
    problems = []
    m = len(p)
    for a in range(m):
        if not p.below[a] >> a & 1:
            problems.append(f"not reflexive at {p.elements[a]}")
        for b in range(m):
            if a != b and p.below[b] >> a & 1 and p.below[a] >> b & 1:
                problems.append(f"not antisymmetric: {p.elements[a]}, {p.elements[b]}")
            if p.below[b] >> a & 1:
                for c in range(m):
                    if p.below[c] >> b & 1 and not p.below[c] >> a & 1:
                        problems.append(
                            f"not transitive: {p.elements[a]} <= {p.elements[b]} <= {p.elements[c]}"
                        )
    return problems


# -- antichains and down-sets ----------------------------------------------------


def is_antichain(p: RootPoset, subset) -> bool:
    try:
        idx = [p.index[p.rep(e)] for e in subset]
    except ValidationError:
        return False
    if len(set(idx)) != len(idx):
        return False
    return all(not (p.comparable[a] >> b & 1) for a in idx for b in idx if a != b)


def check_antichain(p: RootPoset, subset) -> tuple[Element, ...]:
    if not is_antichain(p, subset):
        raise ValidationError(f"{tuple(subset)} is not an antichain of Q_{p.window}")
    return tuple(sorted(p.rep(e) for e in subset))


def antichains(p: RootPoset) -> list[tuple[Element, ...]]:
    """All antichains including the empty one, ordered by size then element index."""
    out: list[tuple[int, ...]] = []

    def rec(start: int, allowed: int, chosen: tuple[int, ...]):
        out.append(chosen)
        for k in range(start, len(p)):
            if allowed >> k & 1:
                rec(k + 1, allowed & ~p.comparable[k], chosen + (k,))

    rec(0, (1 << len(p)) - 1, ())
    out.sort(key=lambda c: (len(c), c))
    return [tuple(sorted(p.elements[k] for k in c)) for c in out]


def count_antichains(p: RootPoset) -> int:
    memo: dict[int, int] = {0: 1}

    def count(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        low = (mask & -mask).bit_length() - 1
        total = count(mask & ~(1 << low)) + count(mask & ~p.comparable[low])
        memo[mask] = total
        return total

    return count((1 << len(p)) - 1)


def down_set(p: RootPoset, subset) -> tuple[Element, ...]:
    mask = 0
    for e in subset:
        mask |= p.below[p.index[p.rep(e)]]
    return p.unmask(mask)


def up_set(p: RootPoset, subset) -> tuple[Element, ...]:
    mask = 0
    for e in subset:
        mask |= p.above[p.index[p.rep(e)]]
    return p.unmask(mask)


def maximal(p: RootPoset, subset) -> tuple[Element, ...]:
    mask = p.mask(subset)
    return p.unmask(
        sum(1 << k for k in range(len(p)) if mask >> k & 1 and not (p.above[k] & mask & ~(1 << k)))
    )


def minimal(p: RootPoset, subset) -> tuple[Element, ...]:
    mask = p.mask(subset)
    return p.unmask(
        sum(1 << k for k in range(len(p)) if mask >> k & 1 and not (p.below[k] & mask & ~(1 << k)))
    )


def is_down_set(p: RootPoset, subset) -> bool:
    return set(down_set(p, subset)) == {p.rep(e) for e in subset}


def down_sets(p: RootPoset) -> list[tuple[Element, ...]]:
    return [down_set(p, a) for a in antichains(p)]


def floors_of(p: RootPoset, antichain) -> tuple[Element, ...]:
    """Minimal elements outside the down-set generated by ``antichain``."""
    a = check_antichain(p, antichain)
    inside = p.mask(down_set(p, a))
    return p.unmask(
        sum(
            1 << k
            for k in range(len(p))
            if not inside >> k & 1 and not (p.below[k] & ~inside & ~(1 << k))
        )
    )


# -- partitions ---------------------------------------------------------------


def antichain_arcs(p: RootPoset, antichain) -> tuple[Element, ...]:
    """Every arc of the diagram: representatives plus mirrors for type C."""
    arcs = set()
    for e in check_antichain(p, antichain):
        arcs.update(orbit(p.family, e))
    return tuple(sorted(arcs))


def antichain_to_partition(p: RootPoset, antichain) -> SetPartition:
    arcs = antichain_arcs(p, antichain)
    part = SetPartition.from_arcs(p.family, p.n, arcs)
    if part.arcs != arcs:
        raise ValidationError(f"arcs {arcs} do not form a partition diagram")
    return part


def partition_to_antichain(p: RootPoset, part: SetPartition) -> tuple[Element, ...]:
    """Inverse of :func:`antichain_to_partition`; error if ``part`` is not an antichain of ``p``."""
    reps = sorted({canonical_rep(p.family, a) for a in part.arcs})
    return check_antichain(p, reps)


def admits(p: RootPoset, part: SetPartition) -> bool:
    """True if the arcs of ``part`` form an antichain of ``p``."""
    return is_antichain(p, {canonical_rep(p.family, a) for a in part.arcs})


def antichain_count_total(family: str, n: int, max_n: int | None = None, workers: int = 1) -> int:
    """Sum of j(Q_w) over all windows of size ``n``."""
    limit = MAX_ANTICHAIN_N[family] if max_n is None else max_n
    if n > limit:
        raise ResourceLimitError(f"antichain_count_total({family}, {n}) exceeds bound {limit}")
    return sum(per_window_counts(family, n, workers=workers).values())


def _count_for(args) -> int:
    family, values = args
    return count_antichains(RootPoset(Window(family, values)))


def per_window_counts(family: str, n: int, workers: int = 1) -> dict[Window, int]:
    ws = windows(family, n)
    if workers > 1 and len(ws) > 64:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_count_for, [(family, w.values) for w in ws], chunksize=64))
    else:
        counts = [count_antichains(RootPoset(w)) for w in ws]
    return dict(zip(ws, counts))


def dump_poset(p: RootPoset) -> str:
    """Element list followed by cover relations, one per line."""
    lines = [f"poset {p.family} window={p.window}"]
    lines += [f"element {i},{j}" for i, j in p.elements]
    for b, f in enumerate(p.elements):
        strict = p.below[b] & ~(1 << b)
        for a in range(len(p)):
            if not strict >> a & 1:
                continue
            between = strict & p.above[a] & ~(1 << a)
            if not between:
                e = p.elements[a]
                lines.append(f"cover {e[0]},{e[1]} < {f[0]},{f[1]}")
    return "\n".join(lines) + "\n"
