"""Combinatorial objects: windows, set partitions of [n] and [+-n], sequences.

Positions are always the actual integers of the ground set (``-n..-1, 1..n``
for type C), never array offsets.  Use :func:`ground_index` when an offset is
needed.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations as _perms, product
from math import factorial, prod

from .errors import ResourceLimitError, ValidationError

FAMILIES = ("A", "C")

# enumerate_nonnesting refuses anything larger than this
MAX_NONNESTING_N = {"A": 10, "C": 8}


def check_family(family: str) -> str:
    if family not in FAMILIES:
        raise ValidationError(f"unknown family {family!r}; expected 'A' or 'C'")
    return family


def ground_set(family: str, n: int) -> tuple[int, ...]:
    check_family(family)
    if family == "A":
        return tuple(range(1, n + 1))
    return tuple(range(-n, 0)) + tuple(range(1, n + 1))


def ground_index(family: str, n: int, i: int) -> int:
    """Offset of position ``i`` in :func:`ground_set`."""
    if family == "A":
        return i - 1
    return i + n if i < 0 else i + n - 1


# -- windows ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Window:
    """A permutation (family A) or the window of a signed permutation (family C).

    Calling the window evaluates the full map, with ``w(-i) == -w(i)`` for C.
    """

    family: str
    values: tuple[int, ...]

    def __post_init__(self):
        check_family(self.family)
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        n = len(values)
        if self.family == "A":
            if sorted(values) != list(range(1, n + 1)):
                raise ValidationError(f"{values} is not a permutation of [{n}]")
        elif sorted(abs(v) for v in values) != list(range(1, n + 1)):
            raise ValidationError(f"{values} is not a signed permutation window of [+-{n}]")

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        if i > 0:
            return self.values[i - 1]
        if self.family == "C" and i < 0:
            return -self.values[-i - 1]
        raise ValidationError(f"position {i} outside the ground set")

    def positions(self) -> tuple[int, ...]:
        return ground_set(self.family, self.n)

    def inverse_position(self, value: int) -> int:
        """The position ``p`` with ``w(p) == value``."""
        for p in self.positions():
            if self(p) == value:
                return p
        raise ValidationError(f"value {value} not attained by {self}")

    def __str__(self) -> str:
        return format_window(self)


def format_window(w: Window) -> str:
    if w.family == "A":
        if w.n <= 9:
            return "".join(str(v) for v in w.values)
        return ",".join(str(v) for v in w.values)
    return "[" + ",".join(str(v) for v in w.values) + "]"


def parse_window(family: str, text: str) -> Window:
    text = text.strip().strip("[]")
    if family == "A" and "," not in text:
        return Window("A", tuple(int(ch) for ch in text))
    return Window(family, tuple(int(t) for t in text.split(",") if t.strip()))


def permutations(n: int) -> list[Window]:
    """All of S_n in lexicographic order."""
    return [Window("A", p) for p in _perms(range(1, n + 1))]


def signed_windows(n: int) -> list[Window]:
    """All of B_n: sign patterns (+ before -, by position) major, |values| lexicographic minor."""
    return [
        Window("C", tuple(s * v for s, v in zip(signs, p)))
        for signs in product((1, -1), repeat=n)
        for p in _perms(range(1, n + 1))
    ]


def windows(family: str, n: int) -> list[Window]:
    return permutations(n) if check_family(family) == "A" else signed_windows(n)


# -- set partitions -------------------------------------------------------------


def _canonical_blocks(blocks) -> tuple[tuple[int, ...], ...]:
    out = [tuple(sorted(int(x) for x in b)) for b in blocks]
    if any(not b for b in out):
        raise ValidationError("empty block")
    return tuple(sorted(out))


@dataclass(frozen=True)
class SetPartition:
    """A set partition of [n] (family A) or a symmetric one of [+-n] (family C).

    Blocks are stored sorted, and ordered by their minimum element.  The
    nonnesting property is *not* enforced here; see :func:`is_nonnesting`.
    """

    family: str
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        check_family(self.family)
        blocks = _canonical_blocks(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        flat = sorted(x for b in blocks for x in b)
        if flat != sorted(ground_set(self.family, self.n)):
            raise ValidationError(f"{format_partition(self)} does not partition the ground set")
        if self.family == "C":
            as_sets = {frozenset(b) for b in blocks}
            if any(frozenset(-x for x in b) not in as_sets for b in blocks):
                raise ValidationError(f"{format_partition(self)} is not symmetric under negation")
            if len(self.zero_blocks()) > 1:
                raise ValidationError(f"{format_partition(self)} has more than one zero block")

    @classmethod
    def from_arcs(cls, family: str, n: int, arcs) -> "SetPartition":
        """Partition whose blocks are the connected pieces of ``arcs``."""
        parent = {x: x for x in ground_set(family, n)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in arcs:
            if i not in parent or j not in parent:
                raise ValidationError(f"arc ({i},{j}) leaves the ground set")
            parent[find(i)] = find(j)
        groups: dict[int, list[int]] = {}
        for x in parent:
            groups.setdefault(find(x), []).append(x)
        return cls(family, n, tuple(groups.values()))

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """Pairs of consecutive elements within each block, sorted."""
        return tuple(sorted((b[t], b[t + 1]) for b in self.blocks for t in range(len(b) - 1)))

    def zero_blocks(self) -> list[tuple[int, ...]]:
        if self.family == "A":
            return []
        return [b for b in self.blocks if set(b) == {-x for x in b}]

    @property
    def zero_block(self) -> tuple[int, ...] | None:
        z = self.zero_blocks()
        return z[0] if z else None

    def block_pairs(self) -> list[tuple[int, ...]]:
        """One representative per pair {B, -B} of nonzero blocks (type C).

        The representative is the block holding the largest element of
        ``B | -B``; pairs are listed in canonical block order.
        """
        if self.family == "A":
            return list(self.blocks)
        return [b for b in self.blocks if set(b) != {-x for x in b} and max(b) > max(-x for x in b)]

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise ValidationError(f"{x} not in the ground set")

    def __str__(self) -> str:
        return format_partition(self)


def format_partition(p: SetPartition) -> str:
    return "|".join("{" + ",".join(str(x) for x in b) + "}" for b in p.blocks)


def parse_partition(family: str, n: int, text: str) -> SetPartition:
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip().strip("{}")
        blocks.append(tuple(int(t) for t in chunk.split(",") if t.strip()))
    return SetPartition(family, n, tuple(blocks))


def nests(inner: tuple[int, int], outer: tuple[int, int]) -> bool:
    """True if arc ``inner`` lies strictly inside arc ``outer``."""
    return outer[0] < inner[0] and inner[1] < outer[1]


def is_nonnesting(p: SetPartition) -> bool:
    arcs = p.arcs
    return not any(nests(a, b) for a in arcs for b in arcs)


def mirror_arc(arc: tuple[int, int]) -> tuple[int, int]:
    return (-arc[1], -arc[0])


# -- partition types ----------------------------------------------------------


def partition_type(p: SetPartition) -> tuple[int, ...]:
    """Block sizes, one part per nonzero block pair for type C, weakly decreasing."""
    return tuple(sorted((len(b) for b in p.block_pairs()), reverse=True))


def type_multiplicities(lam) -> dict[int, int]:
    return dict(Counter(lam))


def m_lambda(lam) -> int:
    """prod of r_i! where r_i counts the parts equal to i."""
    return prod(factorial(r) for r in Counter(lam).values())


def check_type(lam, n: int, family: str) -> tuple[int, ...]:
    lam = tuple(sorted((int(x) for x in lam), reverse=True))
    if any(x < 1 for x in lam):
        raise ValidationError(f"partition type {lam} has a nonpositive part")
    total = sum(lam)
    if family == "A" and total != n:
        raise ValidationError(f"type {lam} does not partition {n}")
    if family == "C" and total > n:
        raise ValidationError(f"type {lam} has size {total} > {n}")
    return lam


def integer_partitions(m: int, largest: int | None = None):
    """Partitions of ``m`` as weakly decreasing tuples, reverse lexicographic."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in integer_partitions(m - first, first):
            yield (first,) + rest


def types(family: str, n: int) -> list[tuple[int, ...]]:
    """Every possible partition type: |lambda| = n for A, |lambda| <= n for C."""
    if family == "A":
        return list(integer_partitions(n))
    return [lam for m in range(n + 1) for lam in integer_partitions(m)]


# -- nonnesting enumeration -----------------------------------------------------


def _nonnesting_arc_sets(ground: tuple[int, ...], symmetric: bool):
    # Left-to-right scan.  An element either receives an arc from the oldest
    # block still waiting for a successor, or starts a new block; then it
    # either waits for a successor or ends its block.  FIFO attachment is what
    # keeps arcs from nesting.  For the symmetric case the decisions on the
    # positive half are forced by those on the negative half.
    has_in: dict[int, bool] = {}
    has_out: dict[int, bool] = {}

    def rec(idx: int, waiting: tuple[int, ...], arcs: tuple):
        if idx == len(ground):
            if not waiting:
                yield arcs
            return
        x = ground[idx]
        if symmetric and x > 0:
            in_choices = (has_out[-x],)
            out_choices = (has_in[-x],)
        else:
            in_choices = (True, False) if waiting else (False,)
            out_choices = (True, False)
        for take_in in in_choices:
            if take_in and not waiting:
                continue
            for go_out in out_choices:
                new_waiting = waiting[1:] if take_in else waiting
                new_arcs = arcs + ((waiting[0], x),) if take_in else arcs
                if go_out:
                    new_waiting = new_waiting + (x,)
                has_in[x], has_out[x] = take_in, go_out
                yield from rec(idx + 1, new_waiting, new_arcs)

    yield from rec(0, (), ())


def enumerate_nonnesting(family: str, n: int, max_n: int | None = None) -> list[SetPartition]:
    """All nonnesting partitions of [n] (A) or nonnesting C_n-partitions (C).

    Canonically ordered by block encoding.
    """
    check_family(family)
    if n < 0:
        raise ValidationError("n must be nonnegative")
    limit = MAX_NONNESTING_N[family] if max_n is None else max_n
    if n > limit:
        raise ResourceLimitError(f"enumerate_nonnesting({family}, {n}) exceeds bound {limit}")
    ground = ground_set(family, n)
    out = []
    for arcs in _nonnesting_arc_sets(ground, symmetric=(family == "C")):
        if family == "C" and set(arcs) != {mirror_arc(a) for a in arcs}:
            continue
        out.append(SetPartition.from_arcs(family, n, arcs))
    out.sort(key=lambda p: p.blocks)
    return out


# -- sequences ----------------------------------------------------------------


def check_sequence(family: str, n: int, seq) -> tuple[int, ...]:
    """Validate membership in A(n) (entries in [n+1]) or A^C(n) (entries in [-n, n])."""
    seq = tuple(int(a) for a in seq)
    if len(seq) != n:
        raise ValidationError(f"sequence {seq} has length {len(seq)}, expected {n}")
    if family == "A":
        bad = [a for a in seq if not 1 <= a <= n + 1]
    else:
        bad = [a for a in seq if not -n <= a <= n]
    if bad:
        raise ValidationError(f"sequence {seq} has entries {bad} out of range")
    return seq


def d_stat(seq) -> int:
    """Number of distinct entries."""
    return len(set(seq))


def dC_stat(seq) -> int:
    """Number of distinct absolute values among the nonzero entries."""
    return len({abs(a) for a in seq if a != 0})


def is_parking_function(seq) -> bool:
    return all(b <= i for i, b in enumerate(sorted(seq), start=1))


def all_sequences(family: str, n: int):
    """A(n) or A^C(n) in lexicographic order."""
    alphabet = range(1, n + 2) if family == "A" else range(-n, n + 1)
    return product(alphabet, repeat=n)


def parking_functions(n: int) -> list[tuple[int, ...]]:
    return [s for s in product(range(1, n + 1), repeat=n) if is_parking_function(s)]


def format_sequence(seq) -> str:
    return ",".join(str(a) for a in seq)


def parse_sequence(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
