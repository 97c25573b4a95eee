"""Arc subdiagrams of knot diagrams, subknot and slipknot search, disk matrices."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .knotid import Fingerprint, OpenKnotType, ResourceLimitError, open_knot_type
from .maps import Diagram, DiagramError, canonical_code, closed_transits, trivial
from .ops import Builder

SCAN_CEILING = 14
ARC_RULE = "arc subdiagram keeps crossings with both passages inside the arc"


@dataclass(frozen=True, order=True)
class ArcSpec:
    start: int
    length: int

    def passages(self, total: int) -> list[int]:
        return [(self.start + k) % total for k in range(self.length)]

    def contains(self, other: "ArcSpec", total: int) -> bool:
        return set(other.passages(total)) <= set(self.passages(total))


def arc_subdiagram(D: Diagram, arc: ArcSpec) -> Diagram:
    """Knotoid traced by ``arc.length`` consecutive passages from edge ``arc.start``.

    Passage ``k`` is the ``k``-th crossing visit along the strand from the root
    (or flag 0); edge ``s`` runs into passage ``s``.  Crossings visited twice
    inside the arc are kept, every other crossing is smoothed away.
    """
    if D.open:
        raise DiagramError("arc subdiagrams are taken from closed diagrams")
    if D.n == 0:
        return trivial(True, D.signs is not None)
    trans = closed_transits(D)
    total = len(trans)
    if len(trans) != 2 * D.n:
        raise DiagramError("arc subdiagrams need a knot diagram")
    if not (0 <= arc.start < total and 1 <= arc.length <= total):
        raise DiagramError(f"bad arc {arc} for {total} passages")
    idx = arc.passages(total)
    visits: dict[int, int] = {}
    for k in idx:
        v = trans[k][0] >> 2
        visits[v] = visits.get(v, 0) + 1
    kept = sorted(v for v, c in visits.items() if c == 2)
    if not kept:
        return trivial(True, D.signs is not None)
    kept_set = set(kept)
    route = [trans[k] for k in idx if (trans[k][0] >> 2) in kept_set]
    b = Builder(D)
    for v in kept:
        for j in range(4):
            f = 4 * v + j
            if b.tau[f] != f:
                b.unpair(f)
    for (_, out), (nxt, _) in zip(route, route[1:]):
        b.pair(out, nxt)
    return b.build((route[0][0], route[-1][1]), None, True, kept)


def all_arcs(D: Diagram) -> list[ArcSpec]:
    total = 2 * D.n
    return [ArcSpec(s, m) for s in range(total) for m in range(1, total + 1)]


# --------------------------------------------------------------------------
# disk matrices


@dataclass
class DiskMatrix:
    diagram: Diagram
    choice: str
    cells: dict[ArcSpec, OpenKnotType]

    @property
    def total(self) -> int:
        return 2 * self.diagram.n

    def rows(self) -> list[dict]:
        out = []
        for arc in sorted(self.cells):
            t = self.cells[arc]
            fp, p = t.top()
            out.append({
                "start": arc.start,
                "len": arc.length,
                "radius": f"{arc.length / self.total:.6f}",
                "angle": f"{2 * math.pi * arc.start / self.total:.6f}",
                "p_unknot": f"{float(t.p_unknot):.6f}",
                "top_type": fp.label,
                "top_p": f"{float(p):.6f}",
                "fingerprint_hash": fp.digest(),
            })
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["start", "len", "radius", "angle", "p_unknot", "top_type", "top_p", "fingerprint_hash"]
        w = csv.DictWriter(buf, cols, lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows())
        return buf.getvalue()

    def types_present(self) -> set[str]:
        return {t.top()[0].label for t in self.cells.values()}

    def to_svg(self, size: int = 480) -> str:
        return render_svg(self, size)


def disk_matrix(D: Diagram, choice: str = "spectrum", ceiling: int = SCAN_CEILING) -> DiskMatrix:
    """Open knot type of every arc subdiagram; identical arcs are computed once."""
    if D.n > ceiling:
        raise ResourceLimitError(f"{D.n} crossings is above the scan ceiling {ceiling}")
    memo: dict[bytes, OpenKnotType] = {}
    cells = {}
    for arc in all_arcs(D):
        S = arc_subdiagram(D, arc)
        key = canonical_code(S)
        if key not in memo:
            memo[key] = open_knot_type(S, choice)
        cells[arc] = memo[key]
    return DiskMatrix(D, choice, cells)


PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
           "#e377c2", "#17becf", "#bcbd22", "#393b79", "#637939", "#843c39"]
UNKNOT_COLOR = "#e8e8e8"


def color_of(fp: Fingerprint) -> str:
    if fp.is_unknot:
        return UNKNOT_COLOR
    return PALETTE[int(fp.digest(), 16) % len(PALETTE)]


def _sector(cx, cy, r0, r1, a0, a1) -> str:
    def pt(r, a):
        return f"{cx + r * math.cos(a):.3f},{cy - r * math.sin(a):.3f}"

    large = 1 if a1 - a0 > math.pi else 0
    return (f"M{pt(r0, a0)} L{pt(r1, a0)} A{r1:.3f},{r1:.3f} 0 {large} 0 {pt(r1, a1)} "
            f"L{pt(r0, a1)} A{r0:.3f},{r0:.3f} 0 {large} 1 {pt(r0, a0)} Z")


def render_svg(M: DiskMatrix, size: int = 480) -> str:
    """Polar heat map: angle = arc start, radius = arc length; opacity = top probability."""
    R = size * 0.4
    cx = cy = size / 2
    total = M.total
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 200}" height="{size}" '
             f'viewBox="0 0 {size + 200} {size}">',
             f'<rect width="{size + 200}" height="{size}" fill="white"/>']
    legend: dict[str, str] = {}
    for arc in sorted(M.cells):
        fp, p = M.cells[arc].top()
        color = color_of(fp)
        legend.setdefault(fp.label, color)
        a0 = 2 * math.pi * arc.start / total
        a1 = 2 * math.pi * (arc.start + 1) / total
        r0 = R * (arc.length - 1) / total
        r1 = R * arc.length / total
        parts.append(f'<path d="{_sector(cx, cy, r0, r1, a0, a1)}" fill="{color}" '
                     f'fill-opacity="{float(p):.3f}" stroke="none"/>')
    y = 30
    for label in sorted(legend):
        parts.append(f'<rect x="{size + 20}" y="{y - 12}" width="14" height="14" fill="{legend[label]}"/>')
        parts.append(f'<text x="{size + 42}" y="{y}" font-family="sans-serif" font-size="13">{label}</text>')
        y += 22
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# --------------------------------------------------------------------------
# subknots and slipknots


def grade(p: Fraction) -> str | None:
    """Containment grade: strong at 1, probabilistic from 1/2, weak above 0."""
    if p == 1:
        return "strong"
    if p >= Fraction(1, 2):
        return "probabilistic"
    if p > 0:
        return "weak"
    return None


GRADE_RANK = {"weak": 0, "probabilistic": 1, "strong": 2}


@dataclass(frozen=True)
class Subknot:
    arc: ArcSpec
    knot: Fingerprint
    p: Fraction
    grade: str


@dataclass(frozen=True)
class SlipknotReport:
    inner: ArcSpec
    outer: ArcSpec
    knot: Fingerprint
    p_knot: Fraction
    p_unknot: Fraction
    grade: str


def find_subknots(D: Diagram, choice: str = "spectrum", matrix: DiskMatrix | None = None) -> list[Subknot]:
    """Arcs carrying a nontrivial knot type with positive weight."""
    M = matrix or disk_matrix(D, choice)
    out = []
    for arc in sorted(M.cells):
        for fp, p in sorted(M.cells[arc].items()):
            if fp.trivial or p == 0:
                continue
            out.append(Subknot(arc, fp, p, grade(p)))
    return out


def find_slipknots(D: Diagram, choice: str = "spectrum", matrix: DiskMatrix | None = None) -> list[SlipknotReport]:
    """Nested arcs ``S`` inside ``U`` with ``S`` carrying a knot and ``U`` unknotting with weight ``p > 0``.

    One report per (knot, maximal outer arc), keeping the strongest grade and,
    among those, the most concentrated inner arc.
    """
    M = matrix or disk_matrix(D, choice)
    total = M.total
    subs = find_subknots(D, choice, M)
    outers = [(arc, t.p_unknot) for arc, t in M.cells.items() if t.p_unknot > 0]
    best: dict[tuple, SlipknotReport] = {}
    for sub in subs:
        inner_set = set(sub.arc.passages(total))
        for U, p in outers:
            if U == sub.arc or U.length <= sub.arc.length:
                continue
            if not inner_set <= set(U.passages(total)):
                continue
            rep = SlipknotReport(sub.arc, U, sub.knot, sub.p, p, grade(p))
            key = (sub.knot, U)
            old = best.get(key)
            if old is None or (GRADE_RANK[rep.grade], rep.p_knot, -rep.inner.length) > \
                    (GRADE_RANK[old.grade], old.p_knot, -old.inner.length):
                best[key] = rep
    # keep maximal outer arcs per knot and grade
    reports = sorted(best.values(), key=lambda r: (r.knot, -r.outer.length, r.outer.start))
    kept: list[SlipknotReport] = []
    for r in reports:
        dominated = any(
            k.knot == r.knot and GRADE_RANK[k.grade] >= GRADE_RANK[r.grade]
            and k.outer != r.outer and k.outer.contains(r.outer, total)
            for k in kept
        )
        if not dominated:
            kept.append(r)
    return kept


def strongest(reports: Iterable[SlipknotReport], knot: Fingerprint | None = None) -> str | None:
    ranks = [GRADE_RANK[r.grade] for r in reports if knot is None or r.knot == knot]
    if not ranks:
        return None
    return {v: k for k, v in GRADE_RANK.items()}[max(ranks)]
