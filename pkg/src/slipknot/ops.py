"""Diagram calculus: cutting, contraction, containment, composition and tangles."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .maps import (
    Diagram,
    DiagramError,
    TRIVIAL_KNOTOID,
    canonical_code,
    connected_flag_components,
    faces,
    genus,
    opposite,
    sigma,
    trivial,
)


class Builder:
    """Mutable scratch map; loose flags have ``tau[f] == f``."""

    def __init__(self, D: Diagram | None = None):
        if D is None:
            self.tau: list[int] = []
            self.signs: list[int] = []
            self.signed = True
        else:
            self.tau = list(D.tau)
            self.signs = list(D.signs) if D.signs is not None else [1] * D.n
            self.signed = D.signs is not None

    @property
    def n(self) -> int:
        return len(self.tau) // 4

    def add_crossing(self, sign: int = 1) -> int:
        c = self.n
        self.tau.extend(range(4 * c, 4 * c + 4))
        self.signs.append(sign)
        return c

    def add(self, D: Diagram) -> int:
        """Append a disjoint copy of ``D``; returns the flag offset."""
        off = len(self.tau)
        self.tau.extend(g + off for g in D.tau)
        self.signs.extend(D.signs if D.signs is not None else [1] * D.n)
        return off

    def pair(self, a: int, b: int) -> None:
        if a == b:
            raise DiagramError(f"cannot pair flag {a} with itself")
        for f in (a, b):
            if self.tau[f] != f:
                raise DiagramError(f"flag {f} is already paired")
        self.tau[a], self.tau[b] = b, a

    def unpair(self, a: int) -> int:
        b = self.tau[a]
        self.tau[a], self.tau[b] = a, b
        return b

    def face_of(self, f: int) -> list[int]:
        cyc = [f]
        g = sigma(self.tau[f])
        while g != f:
            cyc.append(g)
            g = sigma(self.tau[g])
        return cyc

    def cofacial(self, a: int, b: int) -> bool:
        g = a
        while True:
            if g == b:
                return True
            g = sigma(self.tau[g])
            if g == a:
                return False

    def push_leg(self, leg: int, x: int, over: bool = True) -> int:
        """Route loose flag ``leg`` across the edge at ``x`` through a new crossing.

        ``x`` must share a face with ``leg``.  The edge keeps slots 0 and 2 of
        the new crossing; the routed strand takes the slot facing ``leg`` and the
        flag opposite it becomes the new loose end, which is returned.
        """
        y = self.tau[x]
        if y == x:
            raise DiagramError("cannot route across a loose flag")
        if not self.cofacial(leg, x):
            raise DiagramError(f"flag {x} does not share a face with leg {leg}")
        c = self.add_crossing(-1 if over else 1)
        self.unpair(x)
        self.pair(x, 4 * c)
        self.pair(y, 4 * c + 2)
        for j in (1, 3):
            if self.cofacial(leg, 4 * c + j):
                self.pair(leg, 4 * c + j)
                return 4 * c + (j + 2) % 4
        raise DiagramError("routed strand has no face to enter")

    def build(self, legs: Sequence[int] = (), root: int | None = None, open_: bool | None = None,
              keep: Sequence[int] | None = None) -> Diagram:
        """Freeze, keeping crossings ``keep`` (default all) in the given order."""
        if keep is None:
            keep = range(self.n)
        keep = list(keep)
        new_c = {c: k for k, c in enumerate(keep)}

        def nf(f: int) -> int:
            return 4 * new_c[f >> 2] + (f & 3)

        tau = [0] * (4 * len(keep))
        for c in keep:
            for j in range(4):
                f = 4 * c + j
                tau[nf(f)] = nf(self.tau[f])
        signs = tuple(self.signs[c] for c in keep) if self.signed else None
        is_open = bool(legs) if open_ is None else open_
        return Diagram(len(keep), tuple(tau), signs, tuple(nf(f) for f in legs),
                       None if root is None else nf(root), is_open)

    def remove(self, dead: set[int], legs: Sequence[int]) -> list[int | None]:
        """Delete crossings in ``dead``, splicing strands straight through them.

        Returns the updated list of legs (``None`` where a leg vanished).  A loose
        flag of a dead crossing hands its role to whichever live flag now ends there.
        """
        tau = self.tau
        inherit: dict[int, int] = {}
        new_pairs: dict[int, int] = {}
        for c in range(self.n):
            if c in dead:
                continue
            for j in range(4):
                f = 4 * c + j
                g = tau[f]
                if (g >> 2) not in dead:
                    continue
                while True:
                    h = opposite(g)
                    t = tau[h]
                    if t == h:
                        inherit[h] = f
                        new_pairs[f] = f
                        break
                    if (t >> 2) not in dead:
                        new_pairs[f] = t
                        break
                    g = t
        for f, t in new_pairs.items():
            tau[f] = t
        out = []
        for leg in legs:
            if (leg >> 2) not in dead:
                out.append(leg)
            else:
                out.append(inherit.get(leg))
        return out


def _alive(n: int, dead: set[int]) -> list[int]:
    return [c for c in range(n) if c not in dead]


def remove_crossings(D: Diagram, dead: set[int]) -> Diagram:
    """Delete crossings, reconnecting each strand straight through them."""
    b = Builder(D)
    legs = [f for f in b.remove(set(dead), D.legs) if f is not None]
    keep = _alive(D.n, set(dead))
    if not keep:
        return trivial(D.open, D.signs is not None)
    root = D.root if D.root is not None and (D.root >> 2) not in dead else None
    return b.build(legs, root, D.open and bool(legs), keep)


# --------------------------------------------------------------------------
# cut / contraction


def edge_at(D: Diagram, f: int) -> tuple[int, int]:
    g = D.tau[f]
    if g == f:
        raise DiagramError(f"flag {f} is a leg, not part of an edge")
    return (f, g)


def cut(D: Diagram, e: tuple[int, int]) -> Diagram:
    """``D`` minus edge ``e = (a, b)``: legs ``(a, b)`` with ``a`` as the tail."""
    a, b = e
    if D.open:
        raise DiagramError("cut expects a closed diagram")
    if not (0 <= a < 4 * D.n) or D.tau[a] != b or a == b:
        raise DiagramError(f"({a}, {b}) is not an edge")
    tau = list(D.tau)
    tau[a], tau[b] = a, b
    return Diagram(D.n, tuple(tau), D.signs, (a, b), None, True)


def contract(S: Diagram, leg: int) -> Diagram:
    """Remove the crossing at ``leg``; the flag across the crossing's far edge becomes the leg."""
    if not S.open or len(S.legs) != 2:
        raise DiagramError("contraction needs an open diagram with two legs")
    if S.n == 0:
        raise DiagramError("the trivial knotoid cannot be contracted")
    if leg not in S.legs:
        raise DiagramError(f"flag {leg} is not a leg")
    v = leg >> 2
    b = Builder(S)
    legs = b.remove({v}, S.legs)
    keep = _alive(S.n, {v})
    if not keep:
        return trivial(True, S.signs is not None)
    if None in legs:
        raise DiagramError("contraction removed the open strand")
    return b.build(legs, None, True, keep)


@dataclass(frozen=True)
class Containment:
    found: bool
    witness: tuple[str, ...] = ()


def contains_knotoid(T: Diagram, S: Diagram) -> Containment:
    """Is ``T`` obtained from ``S`` by contractions?  Witness lists legs used ('tail'/'head')."""
    if T.n > S.n:
        return Containment(False)
    target = canonical_code(T)
    memo: set[bytes] = set()

    def search(X: Diagram, path: tuple[str, ...]):
        if X.n == T.n:
            return path if canonical_code(X) == target else None
        key = canonical_code(X)
        if key in memo:
            return None
        memo.add(key)
        for name, leg in (("tail", X.tail), ("head", X.head)):
            hit = search(contract(X, leg), path + (name,))
            if hit is not None:
                return hit
        return None

    if S.n == 0:
        found = T.n == 0
        return Containment(found)
    hit = search(S, ())
    return Containment(hit is not None, hit or ())


def contains_in_diagram(D: Diagram, T: Diagram) -> Containment:
    """Some cut ``D \\ e`` contains ``T``; the witness starts with the edge."""
    if T.n > D.n:
        return Containment(False)
    if D.n == 0:
        return Containment(T.n == 0)
    for a, b in D.edges():
        for e in ((a, b), (b, a)):
            res = contains_knotoid(T, cut(D, e))
            if res.found:
                return Containment(True, (f"cut {e[0]}-{e[1]}",) + res.witness)
    return Containment(False)


# --------------------------------------------------------------------------
# composition


def join(K1: Diagram, K2: Diagram) -> Diagram:
    """Attach the tail of ``K2`` to the head of ``K1``."""
    for K in (K1, K2):
        if not K.open:
            raise DiagramError("join expects open diagrams")
    if K1.n == 0:
        return K2
    if K2.n == 0:
        return K1
    b = Builder(K1)
    off = b.add(K2)
    b.signed = K1.signs is not None and K2.signs is not None
    b.pair(K1.head, K2.tail + off)
    return b.build((K1.tail, K2.head + off))


def split(K: Diagram, e: tuple[int, int]) -> tuple[Diagram, Diagram]:
    """Inverse of :func:`join` at a disconnecting edge; tail side first."""
    a, b = e
    if K.tau[a] != b or a == b:
        raise DiagramError(f"({a}, {b}) is not an edge")
    bl = Builder(K)
    bl.unpair(a)
    tmp = Diagram(K.n, tuple(bl.tau), K.signs, tuple(sorted(K.legs + (a, b))), None, True)
    comps = connected_flag_components(tmp)
    if len(comps) != 2:
        raise DiagramError("edge does not disconnect the diagram")
    first = next(c for c in comps if K.tail in c)
    second = next(c for c in comps if c is not first)
    end1 = a if a in first else b
    end2 = b if end1 == a else a
    if K.head not in second:
        raise DiagramError("both legs lie on the same side")
    keep1 = sorted({f >> 2 for f in first})
    keep2 = sorted({f >> 2 for f in second})
    return bl.build((K.tail, end1), None, True, keep1), bl.build((end2, K.head), None, True, keep2)


def find_disconnecting_edges(K: Diagram) -> list[tuple[int, int]]:
    out = []
    for a, b in K.edges():
        bl = Builder(K)
        bl.unpair(a)
        tmp = Diagram(K.n, tuple(bl.tau), K.signs, tuple(sorted(K.legs + (a, b))), None, True)
        if len(connected_flag_components(tmp)) == 2:
            out.append((a, b))
    return out


def connect_sum_insert(D: Diagram, e: tuple[int, int] | None, T: Diagram) -> Diagram:
    """Splice the 2-tangle ``T`` into edge ``e = (x, y)``: ``x`` meets the tail, ``y`` the head."""
    if not T.open or (T.n and len(T.legs) != 2):
        raise DiagramError("tangle must be open with two legs")
    if T.n and leg_face_class(T) != "same-face":
        raise DiagramError("tangle legs are not on a common face")
    if T.n == 0:
        return D
    if D.n == 0:
        if D.open:
            return T
        return close_legs(T).diagram
    x, y = e
    if D.tau[x] != y or x == y:
        raise DiagramError(f"({x}, {y}) is not an edge")
    b = Builder(D)
    off = b.add(T)
    b.signed = D.signs is not None and T.signs is not None
    b.unpair(x)
    b.pair(x, T.tail + off)
    b.pair(T.head + off, y)
    out = b.build(D.legs, D.root, D.open)
    return out


def crossing_replace(D: Diagram, v: int, T4: Diagram) -> Diagram:
    """Replace crossing ``v`` with a 4-tangle whose legs follow ``v``'s flags counterclockwise."""
    if len(T4.legs) != 4:
        raise DiagramError("crossing replacement needs a 4-tangle")
    if not 0 <= v < D.n:
        raise DiagramError(f"no crossing {v}")
    b = Builder(D)
    off = b.add(T4)
    b.signed = D.signs is not None and T4.signs is not None
    outer = []
    for j in range(4):
        f = 4 * v + j
        g = b.tau[f]
        outer.append(None if g == f else (g if (g >> 2) != v else None))
    internal = {}
    for j in range(4):
        f = 4 * v + j
        g = b.tau[f]
        if g != f and (g >> 2) == v:
            internal[j] = g & 3
    for j in range(4):
        f = 4 * v + j
        b.unpair(f) if b.tau[f] != f else None
    legs = list(D.legs)
    for j in range(4):
        new = T4.legs[j] + off
        if j in internal:
            k = internal[j]
            if j < k:
                b.pair(new, T4.legs[k] + off)
        elif outer[j] is not None:
            b.pair(new, outer[j])
        else:
            legs = [new if leg == 4 * v + j else leg for leg in legs]
    keep = [c for c in range(b.n) if c != v]
    out = b.build(legs, None, D.open, keep)
    if genus(out) != genus(D):
        raise DiagramError("4-tangle leg order does not match the crossing")
    return out


def toggle(D: Diagram, v: int) -> Diagram:
    if D.signs is None:
        raise DiagramError("cannot toggle a shadow")
    signs = list(D.signs)
    signs[v] = -signs[v]
    return replace(D, signs=tuple(signs))


# --------------------------------------------------------------------------
# legs and closure


def leg_face_class(S: Diagram) -> str:
    if S.n == 0:
        return "same-face"
    for cyc in faces(S):
        if S.tail in cyc:
            return "same-face" if S.head in cyc else "different-faces"
    raise DiagramError("tail leg not found in any face")


@dataclass(frozen=True)
class Closure:
    diagram: Diagram
    genus: int


def close_legs(S: Diagram) -> Closure:
    """Join the legs into a root edge (through a handle when they sit on different faces)."""
    if not S.open:
        raise DiagramError("close_legs expects an open diagram")
    if S.n == 0:
        return Closure(trivial(False, S.signs is not None), 0)
    tau = list(S.tau)
    a, z = S.tail, S.head
    tau[a], tau[z] = z, a
    D = Diagram(S.n, tuple(tau), S.signs, (), a, False)
    return Closure(D, genus(D))


# --------------------------------------------------------------------------
# tangles from Lemma-style constructions

# left/right ends of the doubled strand at each flag direction, as
# (grid x, grid y, grid flag) for the 2x2 block replacing one crossing
_GRID = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
_GRID_INDEX = {p: k for k, p in enumerate(_GRID)}
_ENDS = {
    0: ((1, 1, 0), (1, -1, 0)),
    1: ((-1, 1, 1), (1, 1, 1)),
    2: ((-1, -1, 2), (-1, 1, 2)),
    3: ((1, -1, 3), (-1, -1, 3)),
}


def _doubled_knotoid(K: Diagram) -> tuple[Builder, dict]:
    """Blackboard-parallel doubling of an open diagram.

    Returns the builder and a map ``(flag, side) -> loose flag`` for the legs,
    with ``side`` 0 = left, 1 = right looking outward along the flag.
    """
    b = Builder()
    b.signed = K.signs is not None
    base = []
    for c in range(K.n):
        s = K.signs[c] if K.signs is not None else 1
        base.append(b.n)
        for _ in range(4):
            b.add_crossing(s)

    def gflag(c: int, x: int, y: int, d: int) -> int:
        return 4 * (base[c] + _GRID_INDEX[(x, y)]) + d

    for c in range(K.n):
        for y in (-1, 1):
            b.pair(gflag(c, -1, y, 0), gflag(c, 1, y, 2))
        for x in (-1, 1):
            b.pair(gflag(c, x, -1, 1), gflag(c, x, 1, 3))

    def end(f: int, side: int) -> int:
        x, y, d = _ENDS[f & 3][side]
        return gflag(f >> 2, x, y, d)

    loose = {}
    for f, g in enumerate(K.tau):
        if g == f:
            loose[(f, 0)] = end(f, 0)
            loose[(f, 1)] = end(f, 1)
        elif f < g:
            b.pair(end(f, 0), end(g, 1))
            b.pair(end(f, 1), end(g, 0))
    return b, loose


def double(D: Diagram, e: tuple[int, int] | None = None) -> Diagram:
    """Doubled 2-tangle of a knot diagram (4 crossings per crossing).

    ``D`` is cut at ``e`` (default: the root edge, else the edge at flag 0),
    every crossing becomes a 2x2 block of the same sign and the two head-side
    ends are capped, leaving one strand whose legs are the tail-side ends.
    """
    if D.open:
        raise DiagramError("double expects a closed diagram")
    if D.n == 0:
        return TRIVIAL_KNOTOID if D.signs is not None else trivial(True, False)
    if e is None:
        r = D.root if D.root is not None else 0
        e = (r, D.tau[r])
    K = cut(D, e)
    b, loose = _doubled_knotoid(K)
    b.pair(loose[(K.head, 0)], loose[(K.head, 1)])
    return b.build((loose[(K.tail, 1)], loose[(K.tail, 0)]))


def four_tangle(T2: Diagram) -> Diagram:
    """Add a strand passing over ``T2`` from one side of its legs to the other.

    The result's legs are listed in counterclockwise slot order with the
    tail of ``T2`` in slot 0 and its head in slot 2; the over-strand uses
    slots 1 and 3, so it replaces a crossing of sign -1 as is.
    """
    if leg_face_class(T2) != "same-face" or T2.n == 0:
        raise DiagramError("four_tangle needs a nontrivial 2-tangle with co-facial legs")
    closed = close_legs(T2).diagram
    a, z = T2.tail, T2.head
    fidx = {}
    for k, cyc in enumerate(faces(closed)):
        for f in cyc:
            fidx[f] = k
    start, goal = fidx[a], fidx[z]
    # shortest dual path between the two sides of the closing edge, avoiding it
    prev = {start: None}
    frontier = [start]
    while frontier and goal not in prev:
        nxt = []
        for F in frontier:
            for x in range(4 * closed.n):
                if fidx[x] != F or x in (a, z):
                    continue
                G = fidx[closed.tau[x]]
                if G not in prev:
                    prev[G] = (F, x)
                    nxt.append(G)
        frontier = nxt
    if goal not in prev:
        raise DiagramError("no route for the over-strand")
    path = []
    F = goal
    while prev[F] is not None:
        F, x = prev[F]
        path.append(x)
    path.reverse()
    b = Builder(closed)
    b.signed = T2.signs is not None
    x0 = path[0]
    y0 = b.tau[x0]
    c = b.add_crossing(-1)
    b.unpair(x0)
    b.pair(x0, 4 * c)
    b.pair(y0, 4 * c + 2)
    # slot facing the start side becomes the first free end
    p = 4 * c + 1 if b.cofacial(a, 4 * c + 1) else 4 * c + 3
    leg = 4 * c + (p - 4 * c + 2) % 4
    for x in path[1:]:
        leg = b.push_leg(leg, x, over=True)
    q = leg
    b.unpair(a)
    order = [f for f in b.face_of(a) if b.tau[f] == f]
    if sorted(order) != sorted([a, z, p, q]):
        raise DiagramError("over-strand ends are not on the exterior face")
    k = order.index(a)
    order = order[k:] + order[:k]
    if order[2] != z:
        raise DiagramError("over-strand does not separate the legs")
    return b.build(order, None, True)
