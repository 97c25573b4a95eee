"""Knot-type fingerprints, Reidemeister simplification and open knot types."""

from __future__ import annotations

import hashlib
import itertools
import math
import random
from collections import Counter, deque
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from . import _kernels
from .maps import (
    Diagram,
    DiagramError,
    faces,
    face_index,
    genus,
    opposite,
    sigma,
    sigma_inv,
    unrooted_key,
)
from .ops import Builder, remove_crossings


class ResourceLimitError(RuntimeError):
    """A configured size or budget ceiling was exceeded."""


STATE_SUM_LIMIT = 24
MIN_CLOSURE_LIMIT = 6

# --------------------------------------------------------------------------
# Laurent polynomials in A, as {exponent: coefficient}


def _pmul(p: Mapping[int, int], q: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _padd_into(acc: dict[int, int], p: Mapping[int, int], shift: int = 0, scale: int = 1) -> None:
    for e, c in p.items():
        acc[e + shift] = acc.get(e + shift, 0) + scale * c


_LOOP = {2: -1, -2: -1}  # d = -A^2 - A^-2


@lru_cache(maxsize=None)
def _loop_power(k: int) -> tuple[tuple[int, int], ...]:
    p: dict[int, int] = {0: 1}
    for _ in range(k):
        p = _pmul(p, _LOOP)
    return tuple(sorted(p.items()))


def _divide_by_loop(p: Mapping[int, int]) -> dict[int, int]:
    """Exact division by ``-A^2 - A^-2``."""
    rem = {e: c for e, c in p.items() if c}
    out: dict[int, int] = {}
    while rem:
        top = max(rem)
        c = -rem[top]
        out[top - 2] = c
        # subtract c * (-A^2 - A^-2) * A^(top-2)
        rem[top] = rem.get(top, 0) + c
        rem[top - 4] = rem.get(top - 4, 0) + c
        rem = {e: v for e, v in rem.items() if v}
        if rem and max(rem) < min(p) - 4:
            raise ArithmeticError("polynomial is not divisible by the loop value")
    return out


# --------------------------------------------------------------------------
# bracket


def _smoothing(sign: int, a_state: bool) -> tuple[tuple[int, int], tuple[int, int]]:
    if a_state == (sign > 0):
        return ((1, 2), (3, 0))
    return ((0, 1), (2, 3))


def _bracket_from_histogram(hist: list[list[int]], n: int) -> dict[int, int]:
    acc: dict[int, int] = {}
    for n_a, row in enumerate(hist):
        for loops, count in enumerate(row):
            if count and loops:
                _padd_into(acc, dict(_loop_power(loops - 1)), n_a - (n - n_a), count)
    return {e: c for e, c in acc.items() if c}


def _crossing_order(D: Diagram) -> list[int]:
    """Greedy order keeping the boundary between processed and unprocessed crossings small."""
    n = D.n
    done: set[int] = set()
    order = []
    while len(order) < n:
        best, best_score = None, None
        for v in range(n):
            if v in done:
                continue
            shared = sum(1 for j in range(4) if (D.tau[4 * v + j] >> 2) in done)
            score = (shared, -v) if order else (0, -v)
            if best_score is None or score > best_score:
                best, best_score = v, score
        order.append(best)
        done.add(best)
    return order


def bracket_dp(D: Diagram) -> dict[int, int]:
    """Kauffman bracket by sweeping crossings and tracking boundary matchings."""
    if D.open:
        raise DiagramError("the bracket needs a closed diagram")
    if D.n == 0:
        return {0: 1}
    tau, signs = D.tau, D.signs
    done: set[int] = set()
    states: dict[tuple, dict[int, int]] = {(): {0: 1}}
    for v in _crossing_order(D):
        new_states: dict[tuple, dict[int, int]] = {}
        flags = [4 * v + j for j in range(4)]
        glue = []
        for f in flags:
            g = tau[f]
            if (g >> 2) in done or ((g >> 2) == v and f < g):
                glue.append((f, g))
        for key, poly in states.items():
            for a_state in (True, False):
                mate = dict(key)
                for p, q in _smoothing(signs[v], a_state):
                    mate[4 * v + p] = 4 * v + q
                    mate[4 * v + q] = 4 * v + p
                loops = 0
                for f, g in glue:
                    if mate[f] == g:
                        loops += 1
                    else:
                        x, y = mate[f], mate[g]
                        mate[x], mate[y] = y, x
                    del mate[f]
                    del mate[g]
                shift = 1 if a_state else -1
                new_key = tuple(sorted(mate.items()))
                term = poly if not loops else _pmul(poly, dict(_loop_power(loops)))
                acc = new_states.setdefault(new_key, {})
                _padd_into(acc, term, shift)
        done.add(v)
        states = {k: {e: c for e, c in p.items() if c} for k, p in new_states.items()}
    total = states.get((), {})
    return _divide_by_loop(total)


def kauffman_bracket(D: Diagram, limit: int = STATE_SUM_LIMIT) -> dict[int, int]:
    """Bracket polynomial ``{exponent of A: coefficient}`` with ``<O> = 1``."""
    if D.signs is None:
        raise DiagramError("the bracket needs crossing signs")
    if D.n > limit:
        raise ResourceLimitError(f"{D.n} crossings exceeds the state-sum limit {limit}")
    if D.n == 0:
        return {0: 1}
    if _kernels.BACKEND == "compiled" and D.n <= 16 or D.n <= 8:
        return _bracket_from_histogram(_kernels.state_histogram(D.tau, D.signs), D.n)
    return bracket_dp(D)


def over_flag(D: Diagram, f: int) -> bool:
    """Does the strand through flag ``f`` pass over at its crossing?"""
    return (D.signs[f >> 2] > 0) == (f & 1 == 0)


def writhe(D: Diagram) -> int:
    """Sum of oriented crossing signs; each component oriented from its lowest flag."""
    if D.n == 0:
        return 0
    out_flag = {}
    seen = set()
    for start in range(4 * D.n):
        if start in seen or D.tau[start] == start:
            continue
        # walk the component containing ``start`` forwards
        f = start
        while True:
            g = opposite(f)
            seen.update((f, g))
            out_flag[(f >> 2, f & 1)] = g & 3
            f = D.tau[g]
            if f == start:
                break
            if f == g:
                raise DiagramError("writhe needs a closed diagram")
    total = 0
    for v in range(D.n):
        over_parity = 0 if D.signs[v] > 0 else 1
        k_o = out_flag[(v, over_parity)]
        k_u = out_flag[(v, 1 - over_parity)]
        total += 1 if (k_u - k_o) % 4 == 1 else -1
    return total


# --------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True, order=True)
class Fingerprint:
    """Jones polynomial coefficients at unit steps in ``t`` from ``t^(minexp2/2)``."""

    jones: tuple[int, ...]
    minexp2: int
    det: int
    unresolved: bool = False
    name: str | None = field(default=None, compare=False)

    @property
    def trivial(self) -> bool:
        return self.jones == (1,) and self.minexp2 == 0

    @property
    def is_unknot(self) -> bool:
        return self.trivial and not self.unresolved

    def mirror(self) -> "Fingerprint":
        span = len(self.jones) - 1
        return Fingerprint(tuple(reversed(self.jones)), -(self.minexp2 + 2 * span), self.det,
                           self.unresolved)

    def product(self, other: "Fingerprint") -> "Fingerprint":
        coeffs = [0] * (len(self.jones) + len(other.jones) - 1)
        for i, a in enumerate(self.jones):
            for j, b in enumerate(other.jones):
                coeffs[i + j] += a * b
        return Fingerprint(tuple(coeffs), self.minexp2 + other.minexp2, self.det * other.det,
                           self.unresolved or other.unresolved)

    def plain(self) -> "Fingerprint":
        return Fingerprint(self.jones, self.minexp2, self.det, self.unresolved)

    def named(self, name: str | None) -> "Fingerprint":
        return Fingerprint(self.jones, self.minexp2, self.det, self.unresolved, name)

    @property
    def label(self) -> str:
        if self.unresolved:
            return "0_1?"
        if self.name:
            return self.name
        return "0_1" if self.trivial else "?"

    def digest(self) -> str:
        text = f"{','.join(map(str, self.jones))};{self.minexp2};{self.det};{int(self.unresolved)}"
        return hashlib.sha1(text.encode()).hexdigest()[:12]

    def __str__(self) -> str:
        coeffs = ",".join(map(str, self.jones))
        return f"jones=<{coeffs};minexp2={self.minexp2}> det={self.det} name={self.label}"


UNKNOT_FP = Fingerprint((1,), 0, 1, name="0_1")


def jones_from_bracket(bracket: Mapping[int, int], w: int) -> tuple[tuple[int, ...], int]:
    """Normalize ``(-A^3)^-w <D>`` and substitute ``A = t^(-1/4)``."""
    sign = -1 if w % 2 else 1
    t4 = {}  # exponent of t, times 4
    for e, c in bracket.items():
        t4[-(e - 3 * w)] = sign * c
    exps = sorted(e for e, c in t4.items() if c)
    if not exps:
        raise ArithmeticError("zero bracket")
    lo, hi = exps[0], exps[-1]
    if any((e - lo) % 4 for e in exps):
        raise ArithmeticError("Jones exponents are not at unit spacing")
    if lo % 2:
        raise ArithmeticError("Jones exponent is not a half integer")
    coeffs = tuple(t4.get(lo + 4 * k, 0) for k in range((hi - lo) // 4 + 1))
    return coeffs, lo // 2


def jones_fingerprint(D: Diagram, limit: int = STATE_SUM_LIMIT) -> Fingerprint:
    """Fingerprint of a closed signed diagram (greedy R1/R2 reduction first)."""
    R = reduce_greedy(D)
    if R.n == 0:
        return UNKNOT_FP
    coeffs, minexp2 = jones_from_bracket(kauffman_bracket(R, limit), writhe(R))
    det = abs(sum(c * (-1) ** k for k, c in enumerate(coeffs)))
    return Fingerprint(coeffs, minexp2, det)


# --------------------------------------------------------------------------
# Reidemeister moves


def find_r1(D: Diagram) -> int | None:
    for v in range(D.n):
        for j in range(4):
            if D.tau[4 * v + j] == 4 * v + ((j + 1) & 3):
                return v
    return None


def bigons(D: Diagram) -> list[tuple[int, int]]:
    """Faces with two flags at distinct crossings, as ``(f, g)`` with ``phi(f) = g``."""
    out = []
    for cyc in faces(D):
        if len(cyc) == 2 and (cyc[0] >> 2) != (cyc[1] >> 2):
            out.append((cyc[0], cyc[1]))
    return out


def find_r2(D: Diagram) -> tuple[int, int] | None:
    for f, g in bigons(D):
        # strand through f at one crossing continues through sigma^-1(g) at the other
        if D.tau[f] == f or D.tau[g] == g:
            continue
        if over_flag(D, f) == over_flag(D, sigma_inv(g)):
            return (f >> 2, g >> 2)
    return None


def reduce_greedy(D: Diagram) -> Diagram:
    """Apply Reidemeister I and II reductions until none applies."""
    if D.signs is None:
        raise DiagramError("simplification needs crossing signs")
    while D.n:
        v = find_r1(D)
        if v is not None:
            D = remove_crossings(D, {v})
            continue
        pair = find_r2(D)
        if pair is not None:
            D = remove_crossings(D, set(pair))
            continue
        break
    return D


def add_kink(D: Diagram, f: int, sign: int = 1, side: int = 0) -> Diagram:
    """Reidemeister I: a curl with crossing sign ``sign`` on the edge at paired flag ``f``."""
    g = D.tau[f]
    if g == f:
        raise DiagramError(f"flag {f} is a leg")
    b = Builder(D)
    b.unpair(f)
    c = b.add_crossing(sign)
    loop, exit_ = ((4 * c + 1, 4 * c + 2), 4 * c + 3) if side == 0 else ((4 * c + 2, 4 * c + 3), 4 * c + 1)
    b.pair(*loop)
    b.pair(f, 4 * c)
    b.pair(g, exit_)
    return b.build(D.legs, D.root, D.open)


def add_bigon(D: Diagram, f: int, x: int, over: bool = True) -> Diagram:
    """Reidemeister II: push a finger of the edge at ``f`` across the edge at ``x``.

    Both flags must be paired and lie on a common face; the finger passes
    over the other edge when ``over`` is true.  The finger is built by cutting
    the edge at ``f``, so an edge with the same face on both sides is refused.
    """
    if D.signs is None:
        raise DiagramError("Reidemeister II needs crossing signs")
    if D.tau[f] == f or D.tau[x] == x:
        raise DiagramError("bigons are pushed between paired flags")
    if x in (f, D.tau[f]):
        raise DiagramError("an edge cannot cross itself")
    g0 = genus(D)
    for second in range(4):
        b = Builder(D)
        q = b.unpair(f)
        if not b.cofacial(f, x):
            raise DiagramError(f"flags {f} and {x} do not share a face")
        tip = b.push_leg(f, x, over)
        c1 = b.n - 1
        # either orientation of either half of the crossed edge
        target = (x, 4 * c1, 4 * c1 + 2, D.tau[x])[second]
        if b.tau[target] == target or not b.cofacial(tip, target):
            continue
        back = b.push_leg(tip, target, over)
        if not b.cofacial(back, q):
            continue
        b.pair(back, q)
        out = b.build(D.legs, D.root, D.open)
        if genus(out) == g0 and find_r2(out) is not None:
            return out
    raise DiagramError("no planar finger move between these edges")


def triangles(D: Diagram) -> list[tuple[int, int, int]]:
    """Faces ``(f_u, f_v, f_w)`` of length three at three distinct crossings."""
    out = []
    for cyc in faces(D):
        if len(cyc) == 3 and len({f >> 2 for f in cyc}) == 3:
            if all(D.tau[4 * (f >> 2) + j] != 4 * (f >> 2) + j for f in cyc for j in range(4)):
                out.append(cyc)
    return out


def r3_applicable(D: Diagram, tri: tuple[int, int, int]) -> bool:
    fu, fv, fw = tri
    for a, b in ((fu, fv), (fv, fw), (fw, fu)):
        # strand on the triangle edge (a, sigma^-1(b))
        if over_flag(D, a) and over_flag(D, sigma_inv(b)):
            return True
    return False


def r3_move(D: Diagram, tri: tuple[int, int, int]) -> Diagram:
    """Slide a strand across the opposite crossing of triangle face ``tri``."""
    fu, fv, fw = tri
    u, v, w = fu >> 2, fv >> 2, fw >> 2
    # strands named after the triangle vertex they avoid
    ends = {
        "a1": sigma(sigma(fu)), "a2": sigma(fv),
        "b1": sigma(sigma(fv)), "b2": sigma(fw),
        "c1": sigma(sigma(fw)), "c2": sigma(fu),
    }
    over_at = {u: "w" if over_flag(D, fu) else "v",
               v: "w" if over_flag(D, sigma_inv(fv)) else "u",
               w: "u" if over_flag(D, sigma_inv(fw)) else "v"}
    # new crossings: U' = P_w x P_v, V' = P_w x P_u, W' = P_u x P_v
    layout = {
        "U": (("w", "tri:V", "a2"), ("v", "c1", "tri:W")),
        "V": (("w", "a1", "tri:U"), ("u", "tri:W", "b2")),
        "W": (("u", "b1", "tri:V"), ("v", "tri:U", "c2")),
    }
    old_of = {"U": u, "V": v, "W": w}
    g0 = genus(D)
    for mirror in itertools.product((False, True), repeat=3):
        b = Builder(D)
        for f in range(4 * D.n):
            if (f >> 2) in (u, v, w) and b.tau[f] != f:
                b.unpair(f)
        base = {}
        slot = {}
        for k, name in enumerate("UVW"):
            s1, s2 = layout[name]
            over_first = over_at[old_of[name]] == s1[0]
            c = b.add_crossing(1 if over_first else -1)
            base[name] = c
            slot[(name, s1[1])] = 4 * c
            slot[(name, s1[2])] = 4 * c + 2
            first, second = (s2[1], s2[2]) if not mirror[k] else (s2[2], s2[1])
            slot[(name, first)] = 4 * c + 1
            slot[(name, second)] = 4 * c + 3
        new_of_end = {}
        for name in "UVW":
            for key in list(slot):
                if key[0] == name and not key[1].startswith("tri:"):
                    new_of_end[key[1]] = slot[key]
        for x, y in (("U", "V"), ("U", "W"), ("V", "W")):
            b.pair(slot[(x, "tri:" + y)], slot[(y, "tri:" + x)])
        end_of_flag = {f: e for e, f in ends.items()}
        for e, f in ends.items():
            p = D.tau[f]
            if p in end_of_flag:
                q = new_of_end[end_of_flag[p]]
                if b.tau[q] == q and q != new_of_end[e]:
                    b.pair(new_of_end[e], q)
            else:
                b.unpair(p) if b.tau[p] != p else None
                b.pair(new_of_end[e], p)
        keep = [c for c in range(b.n) if c not in (u, v, w)]
        try:
            out = b.build(D.legs, None, D.open, keep)
        except DiagramError:
            continue
        if genus(out) == g0 and len(faces(out)) == len(faces(D)):
            return out
    raise DiagramError("no planar realization of the R3 move")


def simplify(D: Diagram, budget: int = 2000) -> Diagram:
    """Greedy R1/R2 reduction, then a bounded search through R3 moves.

    Returns the smallest diagram met; the search stops at 0 crossings or
    after ``budget`` visited diagrams.
    """
    best = reduce_greedy(D)
    if best.n == 0 or budget <= 0:
        return best
    seen = {unrooted_key(best)}
    queue = deque([best])
    visited = 0
    while queue and visited < budget:
        X = queue.popleft()
        visited += 1
        for tri in triangles(X):
            if not r3_applicable(X, tri):
                continue
            Y = reduce_greedy(r3_move(X, tri))
            if Y.n < best.n:
                best = Y
                if Y.n == 0:
                    return Y
            key = unrooted_key(Y)
            if key not in seen:
                seen.add(key)
                queue.append(Y)
    return best


def knot_type(D: Diagram, limit: int = STATE_SUM_LIMIT, budget: int = 2000) -> Fingerprint:
    """Fingerprint with the unknot decision: trivial Jones must simplify away."""
    fp = jones_fingerprint(D, limit)
    if not fp.trivial:
        return identify_fingerprint(fp)
    if D.n == 0 or simplify(D, budget).n == 0:
        return UNKNOT_FP
    return Fingerprint(fp.jones, fp.minexp2, fp.det, True, "0_1?")


def identify_fingerprint(fp: Fingerprint) -> Fingerprint:
    from .table import lookup

    return fp.named(lookup(fp))


def from_pd(pd: Iterable[Iterable[int]]) -> Diagram:
    """Diagram from a planar diagram code: ``X[a, b, c, d]`` counterclockwise from the incoming under-edge."""
    pd = [tuple(x) for x in pd]
    n = len(pd)
    where: dict[int, list[int]] = {}
    for i, x in enumerate(pd):
        if len(x) != 4:
            raise DiagramError("each PD crossing needs four labels")
        for k, label in enumerate(x):
            where.setdefault(label, []).append(4 * i + k)
    tau = list(range(4 * n))
    for label, flags in where.items():
        if len(flags) != 2:
            raise DiagramError(f"PD label {label} appears {len(flags)} times")
        a, b = flags
        tau[a], tau[b] = b, a
    # the over strand runs through positions 1 and 3
    return Diagram(n, tuple(tau), (-1,) * n)


# --------------------------------------------------------------------------
# open knot types


class OpenKnotType(dict):
    """Probability distribution over fingerprints (exact fractions, summing to 1)."""

    @classmethod
    def concentrated(cls, fp: Fingerprint) -> "OpenKnotType":
        return cls({fp: Fraction(1)})

    @classmethod
    def average(cls, fps: Iterable[Fingerprint]) -> "OpenKnotType":
        counts = Counter(fps)
        total = sum(counts.values())
        if not total:
            raise ValueError("empty average")
        names = {}
        for fp in counts:
            names.setdefault(fp, fp)
        return cls({names[fp]: Fraction(c, total) for fp, c in counts.items()})

    def inner(self, other: Mapping[Fingerprint, Fraction]) -> Fraction:
        return inner(self, other)

    @property
    def p_unknot(self) -> Fraction:
        return self.get(UNKNOT_FP, Fraction(0))

    def top(self) -> tuple[Fingerprint, Fraction]:
        return max(self.items(), key=lambda kv: (kv[1], -len(kv[0].jones), kv[0]))

    def p_of(self, fp: Fingerprint) -> Fraction:
        return self.get(fp, Fraction(0))

    def describe(self) -> str:
        parts = sorted(self.items(), key=lambda kv: (-kv[1], kv[0]))
        return " + ".join(f"{p}*{fp.label}" for fp, p in parts)


def inner(x: Mapping[Fingerprint, Fraction], y: Mapping[Fingerprint, Fraction]) -> Fraction:
    """Pointwise product summed over fingerprints."""
    if len(y) < len(x):
        x, y = y, x
    return sum((p * y.get(fp, 0) for fp, p in x.items()), Fraction(0))


def cosine(x: Mapping[Fingerprint, Fraction], y: Mapping[Fingerprint, Fraction]) -> float:
    """Inner product after scaling both distributions to unit Euclidean length."""
    nx = math.sqrt(sum(float(p) ** 2 for p in x.values()))
    ny = math.sqrt(sum(float(p) ** 2 for p in y.values()))
    return float(inner(x, y)) / (nx * ny)


@dataclass(frozen=True)
class TrivialityClass:
    grade: str
    p: Fraction

    @property
    def at_least_half(self) -> bool:
        """The containment-style threshold ``p >= 1/2``."""
        return self.p >= Fraction(1, 2)


def grade_of(p: Fraction) -> str:
    if p == 1:
        return "strongly"
    if p > Fraction(1, 2):
        return "probabilistically"
    if p > 0:
        return "weakly"
    return "not"


# --------------------------------------------------------------------------
# closures


def _face_graph(S: Diagram) -> tuple[list[int], dict[int, list[tuple[int, int]]]]:
    """Face index per flag and, per face, ``(flag on this side, face across)`` for every edge."""
    fidx = face_index(S)
    adj: dict[int, list[tuple[int, int]]] = {}
    for x, y in enumerate(S.tau):
        if x != y:
            adj.setdefault(fidx[x], []).append((x, fidx[y]))
    return fidx, adj


def _leg_faces(S: Diagram) -> tuple[int, int, list[int], dict]:
    if not S.open or len(S.legs) != 2:
        raise DiagramError("closures need an open diagram with two legs")
    fidx, adj = _face_graph(S)
    return fidx[S.tail], fidx[S.head], fidx, adj


def geodesic_distance(S: Diagram) -> int:
    """Fewest edges crossed by a curve in the surface joining the two legs' faces."""
    if S.n == 0:
        return 0
    start, goal, _, adj = _leg_faces(S)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        F = queue.popleft()
        if F == goal:
            return dist[F]
        for _, G in adj.get(F, ()):
            if G not in dist:
                dist[G] = dist[F] + 1
                queue.append(G)
    raise DiagramError("legs lie in different components")


def shortest_paths(S: Diagram) -> list[tuple[int, ...]]:
    """Every shortest dual path, as the flags crossed (each on the near side)."""
    if S.n == 0:
        return [()]
    start, goal, _, adj = _leg_faces(S)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        F = queue.popleft()
        for _, G in adj.get(F, ()):
            if G not in dist:
                dist[G] = dist[F] + 1
                queue.append(G)
    out = []

    def extend(F, path):
        if F == goal:
            out.append(tuple(path))
            return
        for x, G in adj.get(F, ()):
            if dist.get(G) == dist[F] + 1 and dist[G] <= dist[goal]:
                path.append(x)
                extend(G, path)
                path.pop()

    extend(start, [])
    return out


def random_dual_path(S: Diagram, rng: random.Random) -> tuple[int, ...]:
    """A random dual path visiting no face twice."""
    if S.n == 0:
        return ()
    start, goal, _, adj = _leg_faces(S)
    seen = {start}
    path: list[int] = []

    def walk(F):
        if F == goal:
            return True
        options = list(adj.get(F, ()))
        rng.shuffle(options)
        for x, G in options:
            if G in seen:
                continue
            seen.add(G)
            path.append(x)
            if walk(G):
                return True
            path.pop()
        return False

    if not walk(start):
        raise DiagramError("legs lie in different components")
    return tuple(path)


def close_along(S: Diagram, path: Iterable[int], overs: Iterable[bool] | bool = True) -> Diagram:
    """Extend the tail across the edges of ``path`` and join it to the head.

    ``overs`` says whether the closing strand passes over at each new crossing.
    The closed diagram is rooted at the flag that meets the head.
    """
    if S.n == 0:
        return Diagram(0, (), () if S.signs is not None else None)
    path = tuple(path)
    if isinstance(overs, bool):
        overs = (overs,) * len(path)
    b = Builder(S)
    leg = S.tail
    for x, over in zip(path, overs):
        leg = b.push_leg(leg, x, over)
    b.pair(leg, S.head)
    return b.build((), leg, False)


def over_closure(S: Diagram, path: Iterable[int] | None = None) -> Diagram:
    if path is None:
        path = shortest_paths(S)[0]
    return close_along(S, path, True)


def under_closure(S: Diagram, path: Iterable[int] | None = None) -> Diagram:
    if path is None:
        path = shortest_paths(S)[0]
    return close_along(S, path, False)


def ascending_closure(S: Diagram, rng: random.Random, wander: int = 4) -> Diagram:
    """Over-closure along a random walk that may cross its own earlier part.

    The closing strand passes over everything, later pieces over earlier ones,
    so it is ascending; the walk ends along a shortest route to the head.
    """
    if S.n == 0:
        return close_along(S, ())
    b = Builder(S)
    leg = S.tail
    for _ in range(rng.randint(0, wander)):
        options = [x for x in b.face_of(leg) if b.tau[x] != x]
        if not options:
            break
        leg = b.push_leg(leg, rng.choice(options), True)
    while not b.cofacial(leg, S.head):
        current = b.build((leg, S.head))
        path = shortest_paths(current)[0]
        # the builder keeps flag numbers, so the path applies directly
        for x in path:
            leg = b.push_leg(leg, x, True)
    b.pair(leg, S.head)
    return b.build((), leg, False)


def open_knot_type(S: Diagram, choice: str = "spectrum", **kw) -> OpenKnotType:
    """``spectrum``, ``over``, ``under`` or ``min`` type of an open diagram."""
    if choice == "spectrum":
        return spectrum(S, **kw)
    if choice == "over":
        return OpenKnotType.concentrated(knot_type(over_closure(S), **kw))
    if choice == "under":
        return OpenKnotType.concentrated(knot_type(under_closure(S), **kw))
    if choice == "min":
        return min_closure_type(S, **kw)
    raise ValueError(f"unknown type choice {choice!r}")


def spectrum(S: Diagram, **kw) -> OpenKnotType:
    """Half the over-closure type plus half the under-closure type."""
    if S.n == 0:
        return OpenKnotType.concentrated(UNKNOT_FP)
    path = shortest_paths(S)[0]
    return OpenKnotType.average([knot_type(close_along(S, path, True), **kw),
                                 knot_type(close_along(S, path, False), **kw)])


def min_closure_type(S: Diagram, limit: int = MIN_CLOSURE_LIMIT, **kw) -> OpenKnotType:
    """Uniform average over shortest closing paths and all crossing choices along them."""
    if S.n == 0:
        return OpenKnotType.concentrated(UNKNOT_FP)
    paths = shortest_paths(S)
    d = len(paths[0])
    if d > limit:
        raise ResourceLimitError(f"geodesic distance {d} exceeds the min-closure limit {limit}")
    fps = []
    for path in paths:
        for overs in itertools.product((True, False), repeat=d):
            fps.append(knot_type(close_along(S, path, overs), **kw))
    return OpenKnotType.average(fps)


def triviality(S: Diagram, choice: str = "spectrum", **kw) -> TrivialityClass:
    p = open_knot_type(S, choice, **kw).p_unknot
    return TrivialityClass(grade_of(p), p)


def identify(D: Diagram, **kw) -> Fingerprint:
    """Fingerprint of a closed diagram with its table name when the table has one."""
    return knot_type(D, **kw)
