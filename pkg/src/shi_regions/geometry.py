"""Exact region enumeration for the Coxeter and Shi arrangements of types A and C.

This is the geometric ground truth the combinatorial side is checked against.
Regions are found by breadth-first flood fill over the adjacency graph (cross
one wall at a time); a pruned sign-vector sweep is kept as an independent
cross-check.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ResourceLimitError, ValidationError
from .feasibility import feasible_point, satisfies
from .model import Window, windows
from .posets import antichains, check_antichain, floors_of, root_poset

ARRANGEMENT_FAMILIES = ("cox-a", "shi-a", "cox-c", "shi-c")

# desk-scale guard for enumerate_regions
MAX_REGION_N = {"A": 5, "C": 3}


def combinatorial_family(family: str) -> str:
    """'shi-a' / 'cox-a' / 'A' -> 'A', likewise for C."""
    f = family.lower()
    if f in ("a", "shi-a", "cox-a"):
        return "A"
    if f in ("c", "shi-c", "cox-c"):
        return "C"
    raise ValidationError(f"unknown family {family!r}")


@dataclass(frozen=True)
class Hyperplane:
    """The hyperplane ``normal . x = offset`` with a primitive integer normal."""

    normal: tuple[int, ...]
    offset: Fraction
    label: str = ""

    @property
    def central(self) -> bool:
        return self.offset == 0

    def value(self, point) -> Fraction:
        return sum((c * x for c, x in zip(self.normal, point)), Fraction(0))

    def side(self, point) -> int:
        v = self.value(point)
        if v == self.offset:
            raise ValidationError(f"point lies on {self.label}")
        return 1 if v > self.offset else -1


def make_hyperplane(normal, offset, label: str = "") -> Hyperplane:
    normal = [int(c) for c in normal]
    if not any(normal):
        raise ValidationError("zero normal vector")
    g = 0
    for c in normal:
        g = gcd(g, c)
    lead = next(c for c in normal if c != 0)
    if lead < 0:
        g = -g
    return Hyperplane(tuple(c // g for c in normal), Fraction(offset) / g, label)


@dataclass(frozen=True)
class Arrangement:
    family: str
    n: int
    hyperplanes: tuple[Hyperplane, ...]

    def __len__(self) -> int:
        return len(self.hyperplanes)


def _unit(n: int, i: int, sign: int = 1) -> list[int]:
    v = [0] * n
    v[i - 1] = sign
    return v


@lru_cache(maxsize=None)
def build_arrangement(family: str, n: int) -> Arrangement:
    family = family.lower()
    if family not in ARRANGEMENT_FAMILIES:
        raise ValidationError(f"unknown arrangement family {family!r}")
    if n < 1:
        raise ValidationError("n must be at least 1")
    levels = (0,) if family.startswith("cox") else (0, 1)
    hs = []
    for level in levels:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                diff = [a - b for a, b in zip(_unit(n, i), _unit(n, j))]
                hs.append(make_hyperplane(diff, level, f"x{i}-x{j}={level}"))
                if family.endswith("c"):
                    total = [a + b for a, b in zip(_unit(n, i), _unit(n, j))]
                    hs.append(make_hyperplane(total, level, f"x{i}+x{j}={level}"))
        if family.endswith("c"):
            for k in range(1, n + 1):
                hs.append(make_hyperplane([2 * c for c in _unit(n, k)], level, f"2x{k}={level}"))
    if len(set((h.normal, h.offset) for h in hs)) != len(hs):
        raise AssertionError("duplicate hyperplanes")
    return Arrangement(family, n, tuple(hs))


@dataclass(frozen=True)
class GeoRegion:
    """A region given by its sign vector (+1: ``normal . x > offset``)."""

    signs: tuple[int, ...]
    witness: tuple[Fraction, ...]
    walls: tuple[int, ...] = ()
    ceilings: tuple[int, ...] = ()
    floors: tuple[int, ...] = ()


def region_constraints(arr: Arrangement, signs, relax: int | None = None) -> list:
    """Strict constraints of a sign vector; hyperplane ``relax`` becomes an equality."""
    out = []
    for k, (h, s) in enumerate(zip(arr.hyperplanes, signs)):
        rel = "=" if k == relax else (">" if s > 0 else "<")
        out.append((h.normal, rel, h.offset))
    return out


def _origin_side(h: Hyperplane) -> int:
    return 1 if 0 > h.offset else -1


def _describe(arr: Arrangement, signs, witness) -> GeoRegion:
    walls = tuple(
        k for k in range(len(arr)) if feasible_point(region_constraints(arr, signs, k), arr.n) is not None
    )
    ceilings = tuple(
        k for k in walls if not arr.hyperplanes[k].central and signs[k] == _origin_side(arr.hyperplanes[k])
    )
    floors = tuple(
        k for k in walls if not arr.hyperplanes[k].central and signs[k] != _origin_side(arr.hyperplanes[k])
    )
    return GeoRegion(tuple(signs), tuple(witness), walls, ceilings, floors)


def _generic_point(arr: Arrangement) -> tuple[Fraction, ...]:
    for seed in range(1, 1000):
        point = tuple(Fraction((seed * 7919 * (i + 3)) % 1009, 997) for i in range(arr.n))
        if all(h.value(point) != h.offset for h in arr.hyperplanes):
            return point
    raise AssertionError("no generic point found")


def _guard(arr: Arrangement, max_n: int | None) -> None:
    fam = combinatorial_family(arr.family)
    limit = MAX_REGION_N[fam] if max_n is None else max_n
    if arr.n > limit:
        raise ResourceLimitError(f"region enumeration for {arr.family}, n={arr.n} exceeds bound {limit}")


def enumerate_regions(arr: Arrangement, method: str = "bfs", max_n: int | None = None) -> list[GeoRegion]:
    """All regions of ``arr`` with witnesses, walls, ceilings and floors, sorted by sign vector."""
    _guard(arr, max_n)
    return list(_enumerate_cached(arr, method))


@lru_cache(maxsize=32)
def _enumerate_cached(arr: Arrangement, method: str) -> tuple[GeoRegion, ...]:
    if method == "bfs":
        regions = _flood_fill(arr)
    elif method == "sweep":
        regions = _sweep(arr)
    else:
        raise ValidationError(f"unknown enumeration method {method!r}")
    regions.sort(key=lambda r: r.signs)
    for r in regions:
        if not satisfies(r.witness, region_constraints(arr, r.signs)):
            raise AssertionError(f"witness {r.witness} does not lie in its region")
    return tuple(regions)


def _flood_fill(arr: Arrangement) -> list[GeoRegion]:
    start = _generic_point(arr)
    signs = tuple(h.side(start) for h in arr.hyperplanes)
    seen = {signs: start}
    queue = deque([signs])
    out = []
    while queue:
        signs = queue.popleft()
        region = _describe(arr, signs, seen[signs])
        out.append(region)
        for k in region.walls:
            nxt = signs[:k] + (-signs[k],) + signs[k + 1:]
            if nxt in seen:
                continue
            witness = feasible_point(region_constraints(arr, nxt), arr.n)
            if witness is None:
                raise AssertionError(f"crossing wall {arr.hyperplanes[k].label} left the arrangement")
            seen[nxt] = witness
            queue.append(nxt)
    return out


def _sweep(arr: Arrangement) -> list[GeoRegion]:
    # Assign signs hyperplane by hyperplane, pruning infeasible prefixes.
    out = []

    def rec(prefix: tuple[int, ...]):
        k = len(prefix)
        cons = [(h.normal, ">" if s > 0 else "<", h.offset) for h, s in zip(arr.hyperplanes, prefix)]
        witness = feasible_point(cons, arr.n)
        if witness is None:
            return
        if k == len(arr):
            out.append(_describe(arr, prefix, witness))
            return
        rec(prefix + (1,))
        rec(prefix + (-1,))

    rec(())
    return out


# -- labels -----------------------------------------------------------------------


@dataclass(frozen=True)
class RegionLabel:
    window: Window
    antichain: tuple[tuple[int, int], ...]


def region_window(arr: Arrangement, region: GeoRegion) -> Window:
    """Chamber of the Coxeter arrangement containing the region, read off the witness."""
    x = region.witness
    n = arr.n
    fam = combinatorial_family(arr.family)
    if fam == "A":
        order = sorted(range(1, n + 1), key=lambda i: -x[i - 1])
        return Window("A", tuple(order))
    signed = [s * i for i in range(1, n + 1) for s in (1, -1)]
    order = sorted(signed, key=lambda v: -(x[abs(v) - 1] if v > 0 else -x[abs(v) - 1]))
    return Window("C", tuple(order[n:]))


def _element_lookup(arr: Arrangement, w: Window) -> dict:
    p = root_poset(combinatorial_family(arr.family), w)
    out = {}
    for e in p.elements:
        h = make_hyperplane(*p.hyperplane(e))
        out[(h.normal, h.offset)] = e
    return out


def label_region(arr: Arrangement, region: GeoRegion) -> RegionLabel:
    """Window plus ceiling antichain of a Shi region."""
    if not arr.family.startswith("shi"):
        raise ValidationError("only Shi regions carry ceiling labels")
    w = region_window(arr, region)
    lookup = _element_lookup(arr, w)
    ceilings = []
    for k in region.ceilings:
        h = arr.hyperplanes[k]
        key = (h.normal, h.offset)
        if key not in lookup:
            raise AssertionError(f"ceiling {h.label} of region {region.signs} is not in Q_{w}")
        ceilings.append(lookup[key])
    p = root_poset(combinatorial_family(arr.family), w)
    return RegionLabel(w, check_antichain(p, ceilings))


def floor_elements(arr: Arrangement, region: GeoRegion, w: Window) -> tuple[tuple[int, int], ...]:
    lookup = _element_lookup(arr, w)
    out = []
    for k in region.floors:
        h = arr.hyperplanes[k]
        out.append(lookup[(h.normal, h.offset)])
    return tuple(sorted(out))


def origin_side_elements(arr: Arrangement, region: GeoRegion, w: Window) -> tuple[tuple[int, int], ...]:
    """Poset elements whose hyperplane has the region on the origin side."""
    out = []
    index = {(h.normal, h.offset): k for k, h in enumerate(arr.hyperplanes)}
    for key, e in _element_lookup(arr, w).items():
        k = index[key]
        if region.signs[k] == _origin_side(arr.hyperplanes[k]):
            out.append(e)
    return tuple(sorted(out))


# -- census ---------------------------------------------------------------------------


class CensusMismatch(AssertionError):
    pass


@dataclass
class Census:
    family: str
    n: int
    per_window: dict[Window, int]
    ceiling_hist: dict[int, int]
    floor_hist: dict[int, int]
    table: list[tuple[GeoRegion, RegionLabel]] = field(repr=False)

    @property
    def total(self) -> int:
        return len(self.table)


def geometric_census(family: str, n: int, max_n: int | None = None) -> Census:
    """Enumerate Shi regions, label them, and check the labeling is a bijection
    onto all (window, antichain) pairs; also checks floors against ``floors_of``."""
    fam = combinatorial_family(family)
    arr = build_arrangement("shi-a" if fam == "A" else "shi-c", n)
    regions = enumerate_regions(arr, max_n=max_n)
    table = []
    seen = {}
    for r in regions:
        label = label_region(arr, r)
        key = (label.window, label.antichain)
        if key in seen:
            raise CensusMismatch(f"regions {seen[key].signs} and {r.signs} share label {key}")
        seen[key] = r
        p = root_poset(fam, label.window)
        if floors_of(p, label.antichain) != floor_elements(arr, r, label.window):
            raise CensusMismatch(f"floors of region {r.signs} disagree with floors_of")
        table.append((r, label))
    expected = {(w, a) for w in windows(fam, n) for a in antichains(root_poset(fam, w))}
    missing = expected - set(seen)
    if missing:
        raise CensusMismatch(f"no region carries label {sorted(missing, key=str)[0]}")
    counts = Counter(label.window for _, label in table)
    per_window = {w: counts.get(w, 0) for w in windows(fam, n)}
    return Census(
        fam,
        n,
        per_window,
        dict(sorted(Counter(len(r.ceilings) for r in regions).items())),
        dict(sorted(Counter(len(r.floors) for r in regions).items())),
        table,
    )


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)
