"""(S, g) encodings of nonnesting partitions and the maps phi to sequences.

A region of the type A Shi arrangement (in copy ``k`` of n+1 copies) is
addressed by ``(k, w, antichain of Q_w)``; a region of the type C arrangement
by ``(w, antichain of Q^C_w)``.  ``phi_A`` sends addresses onto A(n) and
``phi_C`` onto A^C(n); both come with explicit inverses.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .errors import ValidationError
from .model import (
    SetPartition,
    Window,
    check_sequence,
    enumerate_nonnesting,
    format_window,
    is_nonnesting,
    is_parking_function,
    parse_window,
    partition_type,
)
from .posets import antichain_to_partition, check_antichain, partition_to_antichain, root_poset

# (s, g(s)) pairs sorted by s
SG = tuple[tuple[int, int], ...]


def check_sg(sg, n: int, family: str) -> SG:
    sg = tuple(sorted((int(s), int(g)) for s, g in sg))
    keys = [s for s, _ in sg]
    if len(set(keys)) != len(keys) or any(not 1 <= s <= n for s in keys):
        raise ValidationError(f"S={keys} is not a subset of [{n}]")
    if any(g < 1 for _, g in sg):
        raise ValidationError(f"g takes a nonpositive value in {sg}")
    total = sum(g for _, g in sg)
    if family == "A" and total != n:
        raise ValidationError(f"g values of {sg} sum to {total}, expected {n}")
    if family == "C" and total > n:
        raise ValidationError(f"g values of {sg} sum to {total} > {n}")
    return sg


def sg_type(sg: SG) -> tuple[int, ...]:
    return tuple(sorted((g for _, g in sg), reverse=True))


# -- type A ---------------------------------------------------------------------


def sg_of_partition_A(part: SetPartition) -> SG:
    """S = block minima, g(s) = size of the block of s."""
    if part.family != "A" or not is_nonnesting(part):
        raise ValidationError(f"{part} is not a nonnesting A-partition")
    return tuple(sorted((b[0], len(b)) for b in part.blocks))


def partition_from_sg_A(sg, n: int) -> SetPartition:
    """The unique nonnesting partition of [n] with block minima S and sizes g."""
    sizes = dict(check_sg(sg, n, "A"))
    # open blocks, oldest first; each is [elements, capacity]
    open_blocks: list[list] = []
    done = []
    for x in range(1, n + 1):
        if x in sizes:
            block = [[x], sizes[x]]
        elif open_blocks:
            block = open_blocks.pop(0)
            block[0].append(x)
        else:
            raise ValidationError(f"no nonnesting partition has minima/sizes {sg}: {x} is stranded")
        if len(block[0]) == block[1]:
            done.append(block[0])
        else:
            open_blocks.append(block)
    if open_blocks:
        raise ValidationError(f"no nonnesting partition has minima/sizes {sg}: blocks left unfilled")
    return SetPartition("A", n, tuple(done))


# -- type C -----------------------------------------------------------------------


def all_sg_pairs(n: int, lam) -> list[SG]:
    """Every (S, g) with |S| = len(lam) and multiset of g-values lam, sorted."""
    lam = tuple(lam)
    orders = sorted(set(_distinct_orders(lam)))
    out = [tuple(zip(s, gv)) for s in combinations(range(1, n + 1), len(lam)) for gv in orders]
    return sorted(out)


def _distinct_orders(items):
    counts = Counter(items)

    def rec(prefix, left):
        if not left:
            yield tuple(prefix)
            return
        for v in sorted(counts):
            if counts[v]:
                counts[v] -= 1
                yield from rec(prefix + [v], left - 1)
                counts[v] += 1

    return list(rec([], len(items)))


@lru_cache(maxsize=None)
def _sg_tables_C(n: int) -> tuple[dict, dict]:
    # Within each type class, match partitions and (S, g) pairs rank by rank
    # in their canonical orders.
    by_type: dict[tuple, list[SetPartition]] = defaultdict(list)
    for part in enumerate_nonnesting("C", n):
        by_type[partition_type(part)].append(part)
    forward, backward = {}, {}
    for lam, parts in by_type.items():
        pairs = all_sg_pairs(n, lam)
        if len(pairs) != len(parts):
            raise AssertionError(f"type {lam}: {len(parts)} partitions vs {len(pairs)} (S,g) pairs")
        for part, sg in zip(parts, pairs):
            forward[part] = sg
            backward[sg] = part
    return forward, backward


def sg_of_partition_C(part: SetPartition) -> SG:
    if part.family != "C" or not is_nonnesting(part):
        raise ValidationError(f"{part} is not a nonnesting C-partition")
    return _sg_tables_C(part.n)[0][part]


def partition_from_sg_C(sg, n: int) -> SetPartition:
    return _sg_tables_C(n)[1][check_sg(sg, n, "C")]


def sg_of_partition(part: SetPartition) -> SG:
    return sg_of_partition_A(part) if part.family == "A" else sg_of_partition_C(part)


def partition_from_sg(sg, n: int, family: str) -> SetPartition:
    return partition_from_sg_A(sg, n) if family == "A" else partition_from_sg_C(sg, n)


# -- (c, o) vectors -----------------------------------------------------------------


def co_vectors(part: SetPartition) -> tuple[tuple[int, ...], tuple[int, ...]]:
    sg = sg_of_partition(part)
    return tuple(s for s, _ in sg), tuple(g for _, g in sg)


def check_co_A(c, o, n: int) -> None:
    """c_1 = 1 and c_i <= o_1 + ... + o_{i-1} + 1, with sum(o) = n."""
    if len(c) != len(o) or list(c) != sorted(set(c)) or sum(o) != n or any(x <= 0 for x in o):
        raise ValidationError(f"malformed (c, o) = ({c}, {o}) for n={n}")
    reach = 1
    for ci, oi in zip(c, o):
        if ci > reach:
            raise ValidationError(f"(c, o) = ({c}, {o}) violates c_i <= o_1+...+o_(i-1)+1")
        reach += oi


def antichain_from_co(c, o, n: int, family: str) -> tuple[tuple[int, int], ...]:
    """Arc representatives of the antichain determined by (c, o)."""
    if len(c) != len(o):
        raise ValidationError("c and o differ in length")
    if family == "A":
        check_co_A(c, o, n)
    part = partition_from_sg(tuple(zip(c, o)), n, family)
    reps = {min(a, (-a[1], -a[0])) if family == "C" else a for a in part.arcs}
    return tuple(sorted(reps))


# -- multisets and their rearrangements ---------------------------------------------


def bar_multiset(part: SetPartition) -> tuple[int, ...]:
    """lambda_i copies of each s with g(s) = lambda_i, plus n - |lambda| zeros for C."""
    sg = sg_of_partition(part)
    out = [s for s, g in sg for _ in range(g)]
    if part.family == "C":
        out += [0] * (part.n - sum(g for _, g in sg))
    return tuple(sorted(out))


def multiset_permutations(items) -> list[tuple[int, ...]]:
    return sorted(_distinct_orders(tuple(items)))


def n_shifted_permutations(multiset, n: int) -> list[tuple[int, ...]]:
    """Rearrangements of ``multiset`` with every entry shifted by a common k mod n+1."""
    out = set()
    for perm in multiset_permutations(multiset):
        for k in range(n + 1):
            out.add(tuple((a + k - 1) % (n + 1) + 1 for a in perm))
    return sorted(out)


def marked_permutations(multiset) -> list[tuple[int, ...]]:
    """Rearrangements of ``multiset`` with an independent sign on every nonzero entry."""
    out = set()
    for perm in multiset_permutations(multiset):
        nonzero = [t for t, a in enumerate(perm) if a != 0]
        for signs in product((1, -1), repeat=len(nonzero)):
            seq = list(perm)
            for t, sgn in zip(nonzero, signs):
                seq[t] *= sgn
            out.add(tuple(seq))
    return sorted(out)


# -- region addresses ---------------------------------------------------------------


@dataclass(frozen=True)
class RegionAddress:
    """Copy index (type A only), window and ceiling antichain of a region."""

    family: str
    window: Window
    antichain: tuple[tuple[int, int], ...]
    copy: int | None = None

    def __post_init__(self):
        if self.window.family != self.family:
            raise ValidationError(f"window {self.window} does not belong to family {self.family}")
        p = root_poset(self.family, self.window)
        object.__setattr__(self, "antichain", check_antichain(p, self.antichain))
        n = self.window.n
        if self.family == "A":
            if self.copy is None or not 1 <= self.copy <= n + 1:
                raise ValidationError(f"copy index {self.copy} outside [1, {n + 1}]")
        elif self.copy is not None:
            raise ValidationError("type C addresses carry no copy index")

    @property
    def n(self) -> int:
        return self.window.n

    @property
    def partition(self) -> SetPartition:
        return antichain_to_partition(root_poset(self.family, self.window), self.antichain)

    def __str__(self) -> str:
        return format_address(self)


def format_address(addr: RegionAddress) -> str:
    arcs = "".join(f"({i},{j})" for i, j in addr.antichain)
    head = f"copy={addr.copy};" if addr.family == "A" else ""
    return f"{head}w={format_window(addr.window)};arcs={arcs}"


def parse_address(family: str, text: str) -> RegionAddress:
    fields = dict(chunk.split("=", 1) for chunk in text.strip().split(";") if chunk)
    arcs = []
    body = fields.get("arcs", "")
    for chunk in body.replace(")", "").split("("):
        if chunk:
            i, j = chunk.split(",")
            arcs.append((int(i), int(j)))
    copy = int(fields["copy"]) if "copy" in fields else None
    return RegionAddress(family, parse_window(family, fields["w"]), tuple(arcs), copy)


# -- phi, type A ----------------------------------------------------------------------


def b3_A(part: SetPartition) -> dict[tuple[int, ...], int]:
    """Block -> value of the bar multiset.

    Blocks go by increasing size, equal sizes by their elements; values go by
    increasing multiplicity, equal multiplicities by value.  The two orders
    are matched.
    """
    blocks = sorted(part.blocks, key=lambda b: (len(b), b))
    values = sorted(Counter(bar_multiset(part)).items(), key=lambda vm: (vm[1], vm[0]))
    return {b: v for b, (v, _) in zip(blocks, values)}


def phi_A(addr: RegionAddress) -> tuple[int, ...]:
    if addr.family != "A":
        raise ValidationError("phi_A needs a type A address")
    n, w, k = addr.n, addr.window, addr.copy
    seq = [0] * n
    for block, value in b3_A(addr.partition).items():
        shifted = (value + k - 2) % (n + 1) + 1
        for p in block:
            seq[w(p) - 1] = shifted
    return tuple(seq)


def unshift(seq, n: int) -> tuple[int, tuple[int, ...]]:
    """The copy index k and the parking function that copy k shifts into ``seq``."""
    for k in range(1, n + 2):
        base = tuple((a - k) % (n + 1) + 1 for a in seq)
        if is_parking_function(base):
            return k, base
    raise ValidationError(f"no rotation of {seq} is a parking function")


def phi_A_inverse(seq, n: int | None = None) -> RegionAddress:
    n = len(seq) if n is None else n
    seq = check_sequence("A", n, seq)
    k, base = unshift(seq, n)
    sg = tuple(sorted(Counter(base).items()))
    part = partition_from_sg_A(sg, n)
    values = [0] * n
    for block in part.blocks:
        spots = [t + 1 for t, a in enumerate(base) if a == block[0]]
        for p, spot in zip(block, spots):
            values[p - 1] = spot
    w = Window("A", tuple(values))
    antichain = partition_to_antichain(root_poset("A", w), part)
    return RegionAddress("A", w, antichain, k)


# -- phi, type C ----------------------------------------------------------------------


def b3_C(part: SetPartition) -> dict[tuple[int, ...], int]:
    """Representative block of each pair -> nonzero value of the bar multiset.

    Representatives (see ``SetPartition.block_pairs``) go by increasing size,
    equal sizes by their elements; values by (g-value, value).
    """
    reps = sorted(part.block_pairs(), key=lambda b: (len(b), b))
    values = sorted(sg_of_partition_C(part), key=lambda sg: (sg[1], sg[0]))
    if [len(b) for b in reps] != [g for _, g in values]:
        raise AssertionError(f"type mismatch between {part} and its (S, g) pair")
    return {b: s for b, (s, _) in zip(reps, values)}


def phi_C(addr: RegionAddress) -> tuple[int, ...]:
    if addr.family != "C":
        raise ValidationError("phi_C needs a type C address")
    n, w = addr.n, addr.window
    part = addr.partition
    seq = [0] * n
    for block, value in b3_C(part).items():
        for p in block:
            label = w(p)
            seq[abs(label) - 1] = value if label > 0 else -value
    return tuple(seq)


def phi_C_inverse(seq, n: int | None = None) -> RegionAddress:
    n = len(seq) if n is None else n
    seq = check_sequence("C", n, seq)
    counts = Counter(abs(a) for a in seq if a != 0)
    part = partition_from_sg_C(tuple(sorted(counts.items())), n)
    labels: dict[int, int] = {}
    zero = part.zero_block
    if zero is not None:
        spots = [t + 1 for t, a in enumerate(seq) if a == 0]
        for p, spot in zip([x for x in zero if x < 0], spots):
            labels[p] = spot
    for block, value in b3_C(part).items():
        plus = [t + 1 for t, a in enumerate(seq) if a == value]
        minus = sorted(-(t + 1) for t, a in enumerate(seq) if a == -value)
        for p, label in zip(block, plus + minus):
            labels[p] = label
    full = dict(labels)
    full.update({-p: -v for p, v in labels.items()})
    w = Window("C", tuple(full[k] for k in range(1, n + 1)))
    antichain = partition_to_antichain(root_poset("C", w), part)
    return RegionAddress("C", w, antichain)


def phi(addr: RegionAddress) -> tuple[int, ...]:
    return phi_A(addr) if addr.family == "A" else phi_C(addr)


def phi_inverse(family: str, seq, n: int | None = None) -> RegionAddress:
    return phi_A_inverse(seq, n) if family == "A" else phi_C_inverse(seq, n)


def all_addresses(family: str, n: int, copy: int | None = None) -> list[RegionAddress]:
    """Every region address, by copy, then window, then antichain order."""
    from .model import windows
    from .posets import antichains

    copies = [None] if family == "C" else ([copy] if copy is not None else range(1, n + 2))
    out = []
    for k in copies:
        for w in windows(family, n):
            for a in antichains(root_poset(family, w)):
                out.append(RegionAddress(family, w, a, k))
    return out
