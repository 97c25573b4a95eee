"""Exact censuses of rooted planar diagrams, closed-form counts and growth checks."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterator

from . import _kernels
from .knotid import Fingerprint, geodesic_distance, knot_type, close_along, shortest_paths
from .maps import Diagram, canonical_code, classify, trivial
from .ops import contract, cut, connect_sum_insert, toggle

SHADOW_CLASSES = ("link-shadow", "knot-shadow", "multi-knotoid-shadow", "knotoid-shadow")
DIAGRAM_CLASSES = ("knot-diagram", "unknot-diagram")
SHADOW_CEILING = 6
DIAGRAM_CEILING = 5
COUNT_CEILING = 8


class CeilingError(RuntimeError):
    """Requested size is above the configured census ceiling."""


class Indeterminate(RuntimeError):
    """An unknot decision could not be made (trivial fingerprint that did not simplify)."""


@dataclass(frozen=True)
class CensusRecord:
    n: int
    cls: str
    key: str
    count: int

    def csv(self) -> str:
        return f"{self.n},{self.cls},{self.key},{self.count}"


def formula_link_shadows(n: int) -> int:
    """Rooted 4-regular planar maps: ``2 * 3^n * C(2n, n) / ((n+2)(n+1))``."""
    return 2 * 3**n * comb(2 * n, n) // ((n + 2) * (n + 1))


def formula_multiknotoid_shadows(n: int) -> int:
    """``3^n * C(2n, n) / (n+1)``: three bud positions per node of a binary tree."""
    return 3**n * comb(2 * n, n) // (n + 1)


# --------------------------------------------------------------------------
# enumeration


def _is_open(cls: str) -> bool:
    return cls in ("multi-knotoid-shadow", "knotoid-shadow")


def enumerate_shadows(n: int, cls: str, ceiling: int = SHADOW_CEILING) -> Iterator[Diagram]:
    """Each rooted shadow of the class exactly once, in a deterministic order.

    Closed shadows are rooted at flag 0; open ones have flag 0 as the tail.
    """
    if cls not in SHADOW_CLASSES:
        raise ValueError(f"unknown shadow class {cls!r}")
    if n > ceiling:
        raise CeilingError(f"n={n} is above the shadow ceiling {ceiling}")
    open_ = _is_open(cls)
    single = cls in ("knot-shadow", "knotoid-shadow")
    if n == 0:
        yield trivial(open_, signed=False)
        return
    for tau, head in _kernels.walk_maps(n, open_):
        if single and _kernels._fallback.strand_cycle_count(tau) != (1 if open_ else 2):
            continue
        if open_:
            yield Diagram(n, tuple(tau), None, (0, head), None, True)
        else:
            yield Diagram(n, tuple(tau), None, (), 0, False)


def enumerate_knot_diagrams(n: int, ceiling: int = DIAGRAM_CEILING) -> Iterator[Diagram]:
    """Rooted knot shadows decorated with every sign vector."""
    if n > ceiling:
        raise CeilingError(f"n={n} is above the diagram ceiling {ceiling}")
    for S in enumerate_shadows(n, "knot-shadow", max(ceiling, n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield S.with_signs(signs)


def shadow_counts(n: int) -> dict[str, object]:
    """Counts for all four shadow classes at ``n`` (compiled kernel when available)."""
    if n > COUNT_CEILING:
        raise CeilingError(f"n={n} is above the counting ceiling {COUNT_CEILING}")
    if n == 0:
        return {"link-shadow": 1, "knot-shadow": 1, "multi-knotoid-shadow": 1,
                "knotoid-shadow": 1, "multi-knotoid-by-distance": [1], "knotoid-by-distance": [1]}
    closed = _kernels.census_counts(n, False)
    open_ = _kernels.census_counts(n, True)
    return {
        "link-shadow": closed["all"],
        "knot-shadow": closed["single"],
        "multi-knotoid-shadow": open_["all"],
        "knotoid-shadow": open_["single"],
        "multi-knotoid-by-distance": list(open_["all_by_distance"]),
        "knotoid-by-distance": list(open_["single_by_distance"]),
    }


def _unknot_flag(D: Diagram) -> str:
    fp = knot_type(D)
    if fp.is_unknot:
        return "unknot"
    if fp.unresolved:
        return "unresolved"
    return "knotted"


def _flags_for_shadow(S: Diagram) -> list[str]:
    return [_unknot_flag(S.with_signs(s)) for s in itertools.product((1, -1), repeat=S.n)]


def unknot_diagram_counts(n: int, jobs: int = 1, ceiling: int = DIAGRAM_CEILING) -> dict[str, int]:
    """Rooted knot diagrams at ``n`` split into unknot / knotted / unresolved."""
    if n > ceiling:
        raise CeilingError(f"n={n} is above the diagram ceiling {ceiling}")
    shadows = list(enumerate_shadows(n, "knot-shadow", max(ceiling, n)))
    if jobs > 1 and len(shadows) > 50:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_flags_for_shadow, shadows, chunksize=32))
    else:
        results = [_flags_for_shadow(S) for S in shadows]
    out = {"unknot": 0, "knotted": 0, "unresolved": 0}
    for flags in results:
        for f in flags:
            out[f] += 1
    return out


def census(n: int, cls: str, by_distance: bool = False, jobs: int = 1,
           fixed_type: Fingerprint | None = None) -> list[CensusRecord]:
    """Census records (CSV rows ``n,class,key,count``) for one class at one size."""
    if cls in SHADOW_CLASSES:
        counts = shadow_counts(n)
        rows = [CensusRecord(n, cls, "", counts[cls])]
        if by_distance and _is_open(cls):
            name = "knotoid-by-distance" if cls == "knotoid-shadow" else "multi-knotoid-by-distance"
            rows += [CensusRecord(n, cls, f"d={d}", c) for d, c in enumerate(counts[name])]
        return rows
    if cls == "knot-diagram":
        return [CensusRecord(n, cls, "", shadow_counts(n)["knot-shadow"] * 2**n)]
    if cls == "unknot-diagram":
        c = unknot_diagram_counts(n, jobs)
        rows = [CensusRecord(n, cls, "", c["unknot"])]
        if c["unresolved"]:
            rows.append(CensusRecord(n, "trivial-fingerprint-unresolved", "", c["unresolved"]))
        return rows
    if cls == "fixed-type":
        if fixed_type is None:
            raise ValueError("fixed-type census needs a fingerprint")
        hits = sum(1 for D in enumerate_knot_diagrams(n) if knot_type(D) == fixed_type)
        return [CensusRecord(n, cls, fixed_type.label, hits)]
    raise ValueError(f"unknown census class {cls!r}")


# --------------------------------------------------------------------------
# growth


@dataclass
class GrowthReport:
    series: str
    values: dict[int, int]
    nth_roots: dict[int, float]
    violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def mu_estimate(self) -> float:
        """Last available nth root; an estimate, not a limit."""
        return self.nth_roots[max(self.nth_roots)] if self.nth_roots else float("nan")


def growth_report(name: str, values: dict[int, int],
                  shift: Callable[[int], int] = lambda m: m) -> GrowthReport:
    """nth roots and every ``(n, m)`` with ``c_n c_m > c_(n + shift(m))`` among available terms."""
    roots = {n: c ** (1.0 / n) for n, c in values.items() if n > 0 and c > 0}
    bad = []
    for n in values:
        for m in values:
            if n < 1 or m < 1:
                continue
            target = n + shift(m)
            if target in values and values[n] * values[m] > values[target]:
                bad.append((n, m))
    return GrowthReport(name, dict(values), roots, bad)


def compose_unknots(D: Diagram, E: Diagram) -> Diagram:
    """Connect sum at the roots: ``E`` cut at its root edge is spliced into ``D``'s root edge."""
    if D.n == 0:
        return E
    if E.n == 0:
        return D
    r = D.root if D.root is not None else 0
    s = E.root if E.root is not None else 0
    return connect_sum_insert(D, (r, D.tau[r]), cut(E, (s, E.tau[s])))


# --------------------------------------------------------------------------
# unknotting numbers


def is_unknot(D: Diagram) -> bool:
    fp = knot_type(D)
    if fp.unresolved:
        raise Indeterminate("trivial fingerprint but the diagram did not simplify")
    return fp.is_unknot


def unknotting_number(D: Diagram, ceiling: int = 12) -> int:
    """Fewest crossing toggles turning ``D`` into a diagram that simplifies to no crossings.

    Raises :class:`Indeterminate` when some subset at or below the answer
    could not be decided.
    """
    if D.n > ceiling:
        raise CeilingError(f"{D.n} crossings is above the unknotting ceiling {ceiling}")
    if D.signs is None:
        raise ValueError("unknotting number needs a signed diagram")
    for ell in range(D.n + 1):
        undecided = False
        for subset in itertools.combinations(range(D.n), ell):
            X = D
            for v in subset:
                X = toggle(X, v)
            try:
                if is_unknot(X):
                    return ell
            except Indeterminate:
                undecided = True
        if undecided:
            raise Indeterminate(f"undecided unknot among {ell}-toggles")
    raise Indeterminate("no toggle subset gives an unknot")


@dataclass
class UnknottingCensus:
    n: int
    c: dict[int, int]
    c_plus: dict[int, int]
    c_minus: dict[int, int]
    indeterminate: int
    total: int

    def stated_relation(self) -> dict[int, tuple[int, int]]:
        """``|C+(l)|`` next to ``|C-(l-1)|`` for every ``l >= 1``."""
        top = max(self.c, default=0) + 1
        return {ell: (self.c_plus.get(ell, 0), self.c_minus.get(ell - 1, 0)) for ell in range(1, top + 1)}

    def toggle_relation(self) -> dict[int, tuple[int, int]]:
        """``|C+(l)|`` next to ``|C-(l+1)|``: the root toggle maps one onto the other."""
        top = max(self.c, default=0) + 1
        return {ell: (self.c_plus.get(ell, 0), self.c_minus.get(ell + 1, 0)) for ell in range(0, top + 1)}

    def bound_holds(self) -> bool:
        """``c_n(l) <= n * c_n^-(l)`` for ``l > 0``."""
        return all(self.c[ell] <= self.n * self.c_minus.get(ell, 0) for ell in self.c if ell > 0)


def _unknotting_row(S: Diagram) -> list[tuple[int | None, int | None]]:
    out = []
    for signs in itertools.product((1, -1), repeat=S.n):
        D = S.with_signs(signs)
        try:
            u = unknotting_number(D)
            root_v = (D.root or 0) >> 2
            u_t = unknotting_number(toggle(D, root_v))
        except Indeterminate:
            out.append((None, None))
            continue
        out.append((u, u_t))
    return out


def unknotting_census(n: int, jobs: int = 1, ceiling: int = DIAGRAM_CEILING) -> UnknottingCensus:
    """Tabulate ``c_n(l)`` and the root-toggle classes ``C+`` / ``C-``."""
    if n > ceiling:
        raise CeilingError(f"n={n} is above the diagram ceiling {ceiling}")
    shadows = list(enumerate_shadows(n, "knot-shadow", max(ceiling, n)))
    if jobs > 1 and len(shadows) > 50:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_unknotting_row, shadows, chunksize=16))
    else:
        rows = [_unknotting_row(S) for S in shadows]
    c: dict[int, int] = {}
    cp: dict[int, int] = {}
    cm: dict[int, int] = {}
    bad = total = 0
    for row in rows:
        for u, u_t in row:
            total += 1
            if u is None:
                bad += 1
                continue
            c[u] = c.get(u, 0) + 1
            if u_t > u:
                cp[u] = cp.get(u, 0) + 1
            elif u_t < u:
                cm[u] = cm.get(u, 0) + 1
    return UnknottingCensus(n, c, cp, cm, bad, total)


# --------------------------------------------------------------------------
# geodesic distance


@dataclass
class DistanceCensus:
    n: int
    by_distance: list[int]
    knot_counts: dict[int, int]
    round_trips: int
    failures: list[str]

    def injection_holds(self) -> bool:
        return all(c <= self.knot_counts.get(self.n + ell, c) for ell, c in enumerate(self.by_distance) if c)


def deterministic_closure(S: Diagram) -> Diagram:
    """Close along the first shortest dual path; ``d(S)`` new crossings, rooted at the tail side."""
    paths = shortest_paths(S)
    return close_along(S, paths[0], True)


def recover_from_closure(D: Diagram, ell: int) -> Diagram:
    """Cut at the root edge and contract ``ell`` times from the tail."""
    if D.n == 0:
        return trivial(True, D.signs is not None)
    r = D.root
    K = cut(D, (r, D.tau[r]))
    for _ in range(ell):
        K = contract(K, K.tail)
    return K


def distance_census(n: int, verify: bool = True) -> DistanceCensus:
    """``sk_n[l]`` with the closure/contraction round trip checked per knotoid shadow."""
    counts = shadow_counts(n)
    by_d = counts["knotoid-by-distance"]
    knot_counts = {m: shadow_counts(m)["knot-shadow"] for m in range(n, min(2 * n, COUNT_CEILING) + 1)}
    trips = 0
    failures = []
    if verify:
        seen_codes = set()
        for S in enumerate_shadows(n, "knotoid-shadow", max(n, SHADOW_CEILING)):
            ell = geodesic_distance(S)
            D = deterministic_closure(S)
            cls = classify(D)
            if cls.kind != "knot" or cls.genus or D.n != n + ell:
                failures.append(f"closure of {canonical_code(S).hex()} is {cls}")
                continue
            code = canonical_code(D)
            if code in seen_codes:
                failures.append("two knotoid shadows closed to the same rooted knot shadow")
            seen_codes.add(code)
            back = recover_from_closure(D, ell)
            if canonical_code(back) != canonical_code(S):
                failures.append(f"round trip failed for {canonical_code(S).hex()}")
                continue
            trips += 1
    return DistanceCensus(n, by_d, knot_counts, trips, failures)
