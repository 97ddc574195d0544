"""Closed-form counts, q-statistics and the verification suites.

Every closed form here is checked against an independent brute-force census
and every bijection against an exhaustive round trip; see :func:`verify`.
"""
from __future__ import annotations

import json
import sys
import traceback
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from math import comb, factorial, prod

from .bijections import (
    all_addresses,
    co_vectors,
    partition_from_sg,
    phi,
    phi_inverse,
    sg_of_partition,
)
from .errors import ResourceLimitError, ValidationError
from .model import (
    SetPartition,
    all_sequences,
    check_type,
    d_stat,
    dC_stat,
    enumerate_nonnesting,
    ground_set,
    is_nonnesting,
    is_parking_function,
    m_lambda,
    partition_type,
    types,
    windows,
)
from .posets import (
    admits,
    antichain_count_total,
    antichain_to_partition,
    antichains,
    check_order_axioms,
    down_set,
    floors_of,
    MAX_ANTICHAIN_N,
    maximal,
    root_poset,
)


def multinomial(n: int, parts) -> int:
    parts = list(parts)
    if sum(parts) != n or any(p < 0 for p in parts):
        raise ValidationError(f"parts {parts} do not sum to {n}")
    return factorial(n) // prod(factorial(p) for p in parts)


def kreweras_count(lam, n: int) -> int:
    """Nonnesting (equivalently noncrossing) partitions of [n] of type lam."""
    lam = check_type(lam, n, "A")
    return factorial(n) // (m_lambda(lam) * factorial(n - len(lam) + 1))


def type_count_C(lam, n: int) -> int:
    """Nonnesting C_n-partitions of type lam, |lam| <= n."""
    lam = check_type(lam, n, "C")
    return factorial(n) // (m_lambda(lam) * factorial(n - len(lam)))


def class_size_A(lam, n: int) -> int:
    """Windows w for which a fixed type-lam partition is an antichain of Q_w."""
    return multinomial(n, check_type(lam, n, "A"))


def class_size_C(lam, n: int) -> int:
    lam = check_type(lam, n, "C")
    return multinomial(n, list(lam) + [n - sum(lam)]) * 2 ** sum(lam)


def type_count(family: str, lam, n: int) -> int:
    return kreweras_count(lam, n) if family == "A" else type_count_C(lam, n)


def class_size(family: str, lam, n: int) -> int:
    return class_size_A(lam, n) if family == "A" else class_size_C(lam, n)


def valid_co(family: str, c, o, n: int) -> bool:
    if len(c) != len(o) or list(c) != sorted(set(c)) or any(x < 1 for x in o):
        return False
    if any(not 1 <= x <= n for x in c):
        return False
    if family == "C":
        return sum(o) <= n
    if sum(o) != n:
        return False
    reach = 1
    for ci, oi in zip(c, o):
        if ci > reach:
            return False
        reach += oi
    return True


def class_size_co(family: str, c, o, n: int) -> int:
    """Size of the (c, o) class of sequences, equivalently of antichains."""
    c, o = tuple(c), tuple(o)
    if not valid_co(family, c, o, n):
        raise ValidationError(f"invalid (c, o) = ({c}, {o}) for {family}, n={n}")
    if family == "A":
        return multinomial(n, o)
    return multinomial(n, list(o) + [n - sum(o)]) * 2 ** sum(o)


def corollary_terms(family: str, n: int) -> dict[tuple[int, ...], int]:
    """Per-type terms of the sums equal to (n+1)^n (A) and (2n+1)^n (C)."""
    out = {}
    for lam in types(family, n):
        d = len(lam)
        if family == "A":
            out[lam] = comb(n + 1, d) * factorial(d) // m_lambda(lam) * class_size_A(lam, n)
        else:
            out[lam] = type_count_C(lam, n) * class_size_C(lam, n)
    return out


# -- brute-force oracles -----------------------------------------------------------


def set_partitions(items):
    """Every set partition of ``items`` (restricted growth order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def brute_force_nonnesting(family: str, n: int) -> list[SetPartition]:
    """Nonnesting partitions by filtering all set partitions of the ground set."""
    out = []
    for blocks in set_partitions(ground_set(family, n)):
        if family == "C":
            as_sets = {frozenset(b) for b in blocks}
            if any(frozenset(-x for x in b) not in as_sets for b in blocks):
                continue
            if sum(1 for b in blocks if set(b) == {-x for x in b}) > 1:
                continue
        part = SetPartition(family, n, tuple(tuple(b) for b in blocks))
        if is_nonnesting(part):
            out.append(part)
    return sorted(out, key=lambda p: p.blocks)


def brute_force_type_census(family: str, n: int) -> dict[tuple[int, ...], int]:
    return dict(Counter(partition_type(p) for p in brute_force_nonnesting(family, n)))


def brute_force_class_sizes(family: str, n: int) -> dict[SetPartition, int]:
    """For each nonnesting partition, the number of windows admitting it."""
    posets = [root_poset(family, w) for w in windows(family, n)]
    return {p: sum(admits(q, p) for q in posets) for p in enumerate_nonnesting(family, n)}


# -- q-polynomials -----------------------------------------------------------------


@dataclass(frozen=True)
class QPolynomial:
    """Polynomial in q with nonnegative integer coefficients, constant term first."""

    coefficients: tuple[int, ...]

    @classmethod
    def from_exponents(cls, exponents) -> "QPolynomial":
        counts = Counter(exponents)
        top = max(counts, default=-1)
        return cls(tuple(counts.get(k, 0) for k in range(top + 1)))

    def __call__(self, q):
        return sum(c * q**k for k, c in enumerate(self.coefficients))

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        m = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (m - len(self.coefficients))
        b = other.coefficients + (0,) * (m - len(other.coefficients))
        return QPolynomial(tuple(x + y for x, y in zip(a, b)))

    def scaled_down(self, k: int) -> "QPolynomial":
        if any(c % k for c in self.coefficients):
            raise ValueError(f"{self} is not divisible by {k}")
        return QPolynomial(tuple(c // k for c in self.coefficients))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) or "0"


STATISTICS = ("ceilings", "floors", "sequence-distinct")


def _combinatorial_exponents(family: str, n: int, statistic: str):
    for w in windows(family, n):
        p = root_poset(family, w)
        for a in antichains(p):
            yield len(a) if statistic == "ceilings" else len(floors_of(p, a))


def sequence_polynomial(family: str, n: int, domain: str = "default") -> QPolynomial:
    """Sum of q^(n - d) over PF(n) (A), A(n) (A, domain='all'), or A^C(n) (C)."""
    if family == "A":
        seqs = all_sequences("A", n)
        if domain == "all":
            return QPolynomial.from_exponents(n - d_stat(s) for s in seqs)
        return QPolynomial.from_exponents(n - d_stat(s) for s in seqs if is_parking_function(s))
    return QPolynomial.from_exponents(n - dC_stat(s) for s in all_sequences("C", n))


def gf_statistic(family: str, n: int, statistic: str, mode: str = "combinatorial") -> QPolynomial:
    from .geometry import build_arrangement, combinatorial_family, enumerate_regions

    fam = combinatorial_family(family)
    if statistic not in STATISTICS:
        raise ValidationError(f"unknown statistic {statistic!r}")
    if mode == "combinatorial" and n > MAX_ANTICHAIN_N[fam]:
        raise ResourceLimitError(f"combinatorial statistics for {fam}, n={n} exceed bound {MAX_ANTICHAIN_N[fam]}")
    if statistic == "sequence-distinct":
        if mode != "combinatorial":
            raise ValidationError("the sequence statistic has no geometric mode")
        return sequence_polynomial(fam, n)
    if mode == "geometric":
        arr = build_arrangement("shi-a" if fam == "A" else "shi-c", n)
        regions = enumerate_regions(arr)
        attr = "ceilings" if statistic == "ceilings" else "floors"
        return QPolynomial.from_exponents(len(getattr(r, attr)) for r in regions)
    if mode != "combinatorial":
        raise ValidationError(f"unknown mode {mode!r}")
    return QPolynomial.from_exponents(_combinatorial_exponents(fam, n, statistic))


# -- S_k / M_k refinements -----------------------------------------------------------


@dataclass
class SkMk:
    family: str
    n: int
    S: dict[int, int]
    M: dict[int, int]
    S_classes: dict[tuple, int]
    M_classes: dict[tuple, int]

    def duality_holds(self) -> bool:
        return all(self.S.get(k, 0) == self.M.get(self.n - k, 0) for k in range(self.n + 1)) and all(
            self.M.get(k, 0) == self.S.get(self.n - k, 0) for k in range(self.n + 1)
        )

    def class_mismatches(self) -> list[tuple]:
        keys = set(self.S_classes) | set(self.M_classes)
        bad = []
        for key in sorted(keys):
            s, m = self.S_classes.get(key, 0), self.M_classes.get(key, 0)
            expected = class_size_co(self.family, key[0], key[1], self.n)
            if not s == m == expected:
                bad.append((key, s, m, expected))
        return bad


def sequence_co(family: str, seq) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if family == "A":
        counts = Counter(seq)
    else:
        counts = Counter(abs(a) for a in seq if a != 0)
    c = tuple(sorted(counts))
    return c, tuple(counts[x] for x in c)


def sk_mk_counts(family: str, n: int) -> SkMk:
    S: Counter = Counter()
    S_classes: Counter = Counter()
    for seq in all_sequences(family, n):
        if family == "A":
            if not is_parking_function(seq):
                continue
            k = d_stat(seq)
        else:
            k = dC_stat(seq)
        S[k] += 1
        S_classes[sequence_co(family, seq)] += 1
    M: Counter = Counter()
    M_classes: Counter = Counter()
    for w in windows(family, n):
        p = root_poset(family, w)
        for a in antichains(p):
            M[len(a)] += 1
            M_classes[co_vectors(antichain_to_partition(p, a))] += 1
    return SkMk(family, n, dict(sorted(S.items())), dict(sorted(M.items())), dict(S_classes), dict(M_classes))


# -- verification reports -------------------------------------------------------------


@dataclass
class Check:
    name: str
    params: dict
    passed: bool
    detail: str = ""
    counterexample: str | None = None


@dataclass
class VerificationReport:
    suite: str
    max_n: int
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, params: dict, passed: bool, detail: str = "", counterexample=None):
        self.checks.append(
            Check(name, dict(params), bool(passed), detail, None if counterexample is None else str(counterexample))
        )

    def to_dict(self) -> dict:
        return {"schema": 1, "suite": self.suite, "max_n": self.max_n, "ok": self.ok,
                "checks": [asdict(c) for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = []
        for c in self.checks:
            params = ",".join(f"{k}={v}" for k, v in sorted(c.params.items()))
            status = "PASS" if c.passed else "FAIL"
            line = f"{status}  {c.name:<{width}}  {params}"
            if c.detail:
                line += f"  {c.detail}"
            if not c.passed and c.counterexample:
                line += f"  counterexample: {c.counterexample}"
            lines.append(line)
        n_fail = sum(not c.passed for c in self.checks)
        lines.append(f"{len(self.checks) - n_fail}/{len(self.checks)} checks passed")
        return "\n".join(lines)


SUITES = ("counts", "theorem2", "theorem4", "bijectivity", "classes", "identities", "geometry-cross-check")

# the largest n each suite runs at, per family and mode
RANGES = {
    "counts": {"A": 7, "C": 5},
    "theorem2": {"combinatorial": 6, "geometric": 4},
    "theorem4": {"combinatorial": 4, "geometric": 3},
    "bijectivity": {"A": 5, "C": 4},
    "classes": {"A": 7, "C": 5, "windows-A": 5, "windows-C": 4, "duality-A": 6, "duality-C": 4},
    "identities": {"A": 8, "C": 6},
    "geometry-cross-check": {"A": 4, "C": 3},
}


def _guarded(report: VerificationReport, name: str, params: dict, fn):
    try:
        result = fn()
    except Exception as exc:  # failures are data
        report.add(name, params, False, "raised", f"{type(exc).__name__}: {exc}")
        traceback.print_exc(file=sys.stderr)
        return
    if isinstance(result, tuple):
        passed, detail, cex = (list(result) + [None, None])[:3]
    else:
        passed, detail, cex = result, "", None
    report.add(name, params, passed, detail or "", cex)


def _catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _suite_counts(report, max_n):
    for n in range(1, min(max_n, RANGES["counts"]["A"]) + 1):
        expected = (n + 1) ** (n - 1)
        _guarded(report, "antichain total A", {"n": n}, lambda n=n, e=expected: (
            antichain_count_total("A", n) == e, f"expected {e}"))
        if n <= 6:
            _guarded(report, "parking functions", {"n": n}, lambda n=n, e=expected: (
                sum(1 for s in all_sequences("A", n) if is_parking_function(s) and max(s) <= n) == e,
                f"expected {e}"))
        _guarded(report, "nonnesting A is Catalan", {"n": n}, lambda n=n: (
            len(enumerate_nonnesting("A", n)) == _catalan(n) == len(antichains(root_poset("A", tuple(range(1, n + 1))))),
            f"expected {_catalan(n)}"))
    for n in range(1, min(max_n, RANGES["counts"]["C"]) + 1):
        expected = (2 * n + 1) ** n
        _guarded(report, "antichain total C", {"n": n}, lambda n=n, e=expected: (
            antichain_count_total("C", n) == e, f"expected {e}"))
        _guarded(report, "nonnesting C is central binomial", {"n": n}, lambda n=n: (
            len(enumerate_nonnesting("C", n)) == comb(2 * n, n), f"expected {comb(2 * n, n)}"))
    for fam, top in (("A", 4), ("C", 3)):
        for n in range(1, min(max_n, top) + 1):
            def axioms(fam=fam, n=n):
                for w in windows(fam, n):
                    bad = check_order_axioms(root_poset(fam, w))
                    if bad:
                        return False, "", f"{w}: {bad[0]}"
                return True
            _guarded(report, f"order axioms {fam}", {"n": n}, axioms)


def _theorem_chain(report, family, n, geometric: bool):
    def run():
        ceil = gf_statistic(family, n, "ceilings")
        floor = gf_statistic(family, n, "floors")
        polys = {"ceilings": ceil, "floors": floor, "sequences": sequence_polynomial(family, n)}
        if family == "A":
            polys["all/(n+1)"] = sequence_polynomial("A", n, "all").scaled_down(n + 1)
        if geometric:
            polys["geo-ceilings"] = gf_statistic(family, n, "ceilings", "geometric")
            polys["geo-floors"] = gf_statistic(family, n, "floors", "geometric")
        values = set(polys.values())
        detail = str(ceil)
        return len(values) == 1, detail, None if len(values) == 1 else {k: str(v) for k, v in polys.items()}
    name = "theorem2" if family == "A" else "theorem4"
    _guarded(report, f"{name} q-polynomials agree", {"n": n, "geometric": geometric}, run)


def _suite_theorem(report, max_n, family):
    key = "theorem2" if family == "A" else "theorem4"
    for n in range(1, min(max_n, RANGES[key]["combinatorial"]) + 1):
        _theorem_chain(report, family, n, geometric=n <= RANGES[key]["geometric"])


def _suite_bijectivity(report, max_n):
    for fam in ("A", "C"):
        for n in range(1, min(max_n, RANGES["bijectivity"][fam]) + 1):
            def run(fam=fam, n=n):
                addrs = all_addresses(fam, n)
                images = {}
                for addr in addrs:
                    seq = phi(addr)
                    if seq in images:
                        return False, "", f"{addr} and {images[seq]} both map to {seq}"
                    images[seq] = addr
                    if phi_inverse(fam, seq, n) != addr:
                        return False, "", f"inverse fails at {addr}"
                    arcs = len(addr.antichain)
                    stat = d_stat(seq) if fam == "A" else dC_stat(seq)
                    if n - stat != arcs:
                        return False, "", f"statistic not transported at {addr}"
                expected = (n + 1) ** n if fam == "A" else (2 * n + 1) ** n
                if len(images) != expected:
                    return False, f"{len(images)} images", f"expected {expected}"
                for seq in all_sequences(fam, n):
                    if phi(phi_inverse(fam, seq, n)) != seq:
                        return False, "", f"phi(phi^-1({seq})) != {seq}"
                if fam == "A":
                    first = sorted(phi(a) for a in addrs if a.copy == 1)
                    pf = sorted(s for s in all_sequences("A", n) if is_parking_function(s))
                    if first != pf:
                        return False, "", "copy-1 image differs from PF(n)"
                return True, f"{len(images)} sequences"
            _guarded(report, f"phi_{fam} bijective", {"n": n}, run)
    for fam, top in (("A", 7), ("C", 5)):
        for n in range(1, min(max_n, top) + 1):
            def sg_round(fam=fam, n=n):
                seen = set()
                for part in enumerate_nonnesting(fam, n):
                    sg = sg_of_partition(part)
                    if partition_from_sg(sg, n, fam) != part:
                        return False, "", f"round trip fails at {part}"
                    if tuple(sorted((g for _, g in sg), reverse=True)) != partition_type(part):
                        return False, "", f"type not preserved at {part}"
                    seen.add(sg)
                return len(seen) == len(enumerate_nonnesting(fam, n)), f"{len(seen)} pairs"
            _guarded(report, f"(S,g) bijection {fam}", {"n": n}, sg_round)


def _suite_classes(report, max_n):
    for fam in ("A", "C"):
        for n in range(1, min(max_n, RANGES["classes"][fam]) + 1):
            def types_ok(fam=fam, n=n):
                census = brute_force_type_census(fam, n)
                for lam in types(fam, n):
                    if census.get(lam, 0) != type_count(fam, lam, n):
                        return False, "", f"type {lam}: census {census.get(lam, 0)} vs {type_count(fam, lam, n)}"
                return True
            _guarded(report, f"type counts {fam}", {"n": n}, types_ok)
        for n in range(1, min(max_n, RANGES["classes"][f"windows-{fam}"]) + 1):
            def windows_ok(fam=fam, n=n):
                for part, count in brute_force_class_sizes(fam, n).items():
                    if count != class_size(fam, partition_type(part), n):
                        return False, "", f"{part}: {count} windows"
                return True
            _guarded(report, f"class sizes {fam}", {"n": n}, windows_ok)
        for n in range(1, min(max_n, RANGES["classes"][f"duality-{fam}"]) + 1):
            def duality(fam=fam, n=n):
                t = sk_mk_counts(fam, n)
                bad = t.class_mismatches()
                if not t.duality_holds():
                    return False, "", f"S={t.S} M={t.M}"
                if bad:
                    return False, "", str(bad[0])
                return True, f"S={list(t.S.values())}"
            _guarded(report, f"S_k = M_(n-k) {fam}", {"n": n}, duality)


def _suite_identities(report, max_n):
    for fam in ("A", "C"):
        for n in range(1, min(max_n, RANGES["identities"][fam]) + 1):
            def run(fam=fam, n=n):
                terms = corollary_terms(fam, n)
                target = (n + 1) ** n if fam == "A" else (2 * n + 1) ** n
                split = "+".join(str(t) for t in terms.values())
                if fam == "A":
                    for lam in terms:
                        d = len(lam)
                        lhs = (n + 1) * kreweras_count(lam, n)
                        if lhs != comb(n + 1, d) * factorial(d) // m_lambda(lam):
                            return False, "", f"copies identity fails at {lam}"
                return sum(terms.values()) == target, f"{split}={sum(terms.values())}"
            _guarded(report, f"corollary sum {fam}", {"n": n}, run)


def _suite_geometry(report, max_n):
    from .geometry import build_arrangement, enumerate_regions, geometric_census

    for fam in ("A", "C"):
        for n in range(1, min(max_n, RANGES["geometry-cross-check"][fam]) + 1):
            def census(fam=fam, n=n):
                c = geometric_census(fam, n)
                expected = (n + 1) ** (n - 1) if fam == "A" else (2 * n + 1) ** n
                combinatorial = [len(antichains(root_poset(fam, w))) for w in windows(fam, n)]
                if list(c.per_window.values()) != combinatorial:
                    return False, "", "per-window counts differ"
                if c.ceiling_hist != c.floor_hist:
                    return False, "", f"ceilings {c.ceiling_hist} vs floors {c.floor_hist}"
                return c.total == expected, f"{c.total} regions"
            _guarded(report, f"labeling bijection {fam}", {"n": n}, census)
            cox = "cox-a" if fam == "A" else "cox-c"
            _guarded(report, f"{cox} chambers", {"n": n}, lambda fam=fam, n=n, cox=cox: (
                len(enumerate_regions(build_arrangement(cox, n)))
                == (factorial(n) if fam == "A" else 2**n * factorial(n))))
            def origin_side(fam=fam, n=n):
                from .geometry import label_region, origin_side_elements

                arr = build_arrangement("shi-a" if fam == "A" else "shi-c", n)
                for r in enumerate_regions(arr):
                    label = label_region(arr, r)
                    p = root_poset(fam, label.window)
                    inside = origin_side_elements(arr, r, label.window)
                    if down_set(p, inside) != inside or maximal(p, inside) != label.antichain:
                        return False, "", f"region {r.signs}"
                return True
            _guarded(report, f"origin side is a down-set {fam}", {"n": n}, origin_side)
        top = 3 if fam == "A" else 2
        for n in range(1, min(max_n, top) + 1):
            name = "shi-a" if fam == "A" else "shi-c"
            _guarded(report, f"bfs equals sweep {name}", {"n": n}, lambda name=name, n=n: (
                [r.signs for r in enumerate_regions(build_arrangement(name, n))]
                == [r.signs for r in enumerate_regions(build_arrangement(name, n), method="sweep")]))


def verify(suite: str, max_n: int) -> VerificationReport:
    if suite != "all" and suite not in SUITES:
        raise ValidationError(f"unknown suite {suite!r}")
    report = VerificationReport(suite, max_n)
    runners = {
        "counts": lambda: _suite_counts(report, max_n),
        "theorem2": lambda: _suite_theorem(report, max_n, "A"),
        "theorem4": lambda: _suite_theorem(report, max_n, "C"),
        "bijectivity": lambda: _suite_bijectivity(report, max_n),
        "classes": lambda: _suite_classes(report, max_n),
        "identities": lambda: _suite_identities(report, max_n),
        "geometry-cross-check": lambda: _suite_geometry(report, max_n),
    }
    for name in SUITES if suite == "all" else (suite,):
        runners[name]()
    return report


def class_table(family: str, n: int) -> dict[tuple[int, ...], dict[str, int]]:
    """Per type: closed-form and brute-force partition counts and window counts."""
    census = brute_force_type_census(family, n)
    out = defaultdict(dict)
    for lam in types(family, n):
        out[lam]["formula"] = type_count(family, lam, n)
        out[lam]["census"] = census.get(lam, 0)
        out[lam]["class_size"] = class_size(family, lam, n)
    return dict(out)
