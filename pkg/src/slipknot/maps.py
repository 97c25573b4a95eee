"""Signed combinatorial maps for knot, link and knotoid diagrams.

A diagram with ``n`` crossings has ``4n`` flags.  Crossing ``i`` owns flags
``4i .. 4i+3`` in counterclockwise order, so the crossing permutation
``sigma`` is implicit: ``sigma(f) = 4*(f//4) + (f+1) % 4``.  The edge pairing
``tau`` is stored as a tuple with ``tau[f] == f`` for loose flags (legs).

Sign convention: ``+1`` means the strand through flags ``{4i, 4i+2}`` passes
over, ``-1`` means the strand through ``{4i+1, 4i+3}`` passes over.
"""

from __future__ import annotations

import random
import struct
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, NamedTuple, Sequence


class DiagramError(ValueError):
    """Structurally invalid diagram data."""


class KdgSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def sigma(f: int) -> int:
    return (f & ~3) | ((f + 1) & 3)


def sigma_inv(f: int) -> int:
    return (f & ~3) | ((f + 3) & 3)


def opposite(f: int) -> int:
    return f ^ 2


@dataclass(frozen=True)
class Diagram:
    """Immutable signed combinatorial map.

    ``signs`` is ``None`` for shadows.  ``legs`` lists the loose flags: empty
    for closed diagrams, ``(tail, head)`` for open ones, four flags in
    cyclic order for 4-tangles.  ``open`` distinguishes the trivial knotoid
    from the crossingless unknot when ``n == 0``.
    """

    n: int
    tau: tuple[int, ...]
    signs: tuple[int, ...] | None = None
    legs: tuple[int, ...] = ()
    root: int | None = None
    open: bool = field(default=False)

    def __post_init__(self) -> None:
        n, tau = self.n, self.tau
        if n < 0:
            raise DiagramError("negative crossing count")
        if len(tau) != 4 * n:
            raise DiagramError(f"tau has {len(tau)} entries, expected {4 * n}")
        fixed = []
        for f, g in enumerate(tau):
            if not 0 <= g < 4 * n:
                raise DiagramError(f"flag {g} out of range")
            if tau[g] != f:
                raise DiagramError(f"tau is not an involution at flag {f}")
            if g == f:
                fixed.append(f)
        if sorted(fixed) != sorted(self.legs) or len(set(self.legs)) != len(self.legs):
            raise DiagramError(f"loose flags {fixed} do not match legs {list(self.legs)}")
        if len(self.legs) not in (0, 2, 4):
            raise DiagramError("a diagram has 0, 2 or 4 legs")
        if self.legs and not self.open:
            object.__setattr__(self, "open", True)
        if self.open and n > 0 and not self.legs:
            raise DiagramError("open diagram without legs")
        if self.signs is not None:
            if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
                raise DiagramError("signs must be n values in {+1, -1}")
        if self.root is not None and not 0 <= self.root < 4 * n:
            raise DiagramError("root flag out of range")

    @property
    def tail(self) -> int:
        return self.legs[0]

    @property
    def head(self) -> int:
        return self.legs[1]

    @property
    def is_shadow(self) -> bool:
        return self.signs is None

    def __len__(self) -> int:
        return self.n

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(min, max)`` flag pairs, ascending."""
        return [(f, g) for f, g in enumerate(self.tau) if f < g]

    def shadow(self) -> "Diagram":
        return replace(self, signs=None)

    def with_signs(self, signs: Sequence[int]) -> "Diagram":
        return replace(self, signs=tuple(signs))

    def with_root(self, root: int | None) -> "Diagram":
        return replace(self, root=root)

    def __str__(self) -> str:
        return serialize(self)


TRIVIAL_KNOTOID = Diagram(0, (), (), (), None, True)
UNKNOT = Diagram(0, (), (), (), None, False)


def trivial(open_: bool, signed: bool = True) -> Diagram:
    return Diagram(0, (), () if signed else None, (), None, open_)


# --------------------------------------------------------------------------
# cycles


def _cycles(perm) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc = []
        f = start
        while f not in seen:
            seen.add(f)
            cyc.append(f)
            f = perm[f]
        out.append(tuple(cyc))
    return out


def face_permutation(D: Diagram) -> list[int]:
    tau = D.tau
    return [sigma(tau[f]) for f in range(4 * D.n)]


def faces(D: Diagram) -> list[tuple[int, ...]]:
    """Cycles of ``sigma tau`` (``tau`` applied first), each starting at its least flag.

    >>> D = parse("kdg1\\nn=2\\nsigns=--\\nedges=0-7,1-5,3-4\\nlegs=2,6\\n")
    >>> faces(D)
    [(0, 4), (1, 6, 7), (2, 3, 5)]
    """
    return _cycles(face_permutation(D))


def face_index(D: Diagram) -> list[int]:
    """Map each flag to the index of its face in :func:`faces`."""
    idx = [0] * (4 * D.n)
    for k, cyc in enumerate(faces(D)):
        for f in cyc:
            idx[f] = k
    return idx


def strand_permutation(D: Diagram) -> list[int]:
    tau = D.tau
    return [opposite(tau[f]) for f in range(4 * D.n)]


class Components(NamedTuple):
    cycles: list[tuple[int, ...]]
    closed: list[tuple[tuple[int, ...], tuple[int, ...]]]
    open_cycle: tuple[int, ...] | None
    transits: list[tuple[int, int]]


def open_transits(D: Diagram) -> list[tuple[int, int]]:
    """Crossing passages ``(in_flag, out_flag)`` of the open strand, tail to head."""
    if not D.open or D.n == 0:
        return []
    out = []
    f = D.tail
    tau = D.tau
    for _ in range(2 * D.n + 1):
        g = opposite(f)
        out.append((f, g))
        if tau[g] == g:
            return out
        f = tau[g]
    raise DiagramError("open strand does not terminate")


def closed_transits(D: Diagram, start: int | None = None) -> list[tuple[int, int]]:
    """Passages of the closed component through ``start`` (default: root or flag 0).

    ``start`` is taken as an out-flag, so edge 0 is ``(start, tau[start])`` and
    passage ``k`` sits between edges ``k`` and ``k+1``.
    """
    if D.n == 0:
        return []
    if start is None:
        start = D.root if D.root is not None else 0
    tau = D.tau
    out = []
    f = tau[start]
    while True:
        g = opposite(f)
        out.append((f, g))
        if g == start:
            return out
        f = tau[g]
        if f == g:
            raise DiagramError("closed traversal met a leg")


def components(D: Diagram) -> Components:
    """Strand structure from the cycles of ``sigma^2 tau``.

    Closed components come back as pairs of mutually reversed cycles, oriented
    so the first cycle contains the component's lowest flag.
    """
    cycles = _cycles(strand_permutation(D))
    open_cycle = None
    closed = []
    legs = set(D.legs)
    by_min = {}
    for cyc in cycles:
        if legs and legs.intersection(cyc):
            open_cycle = cyc
            continue
        # a cycle and its reverse cover the same crossings; pair by flag set
        key = frozenset(D.tau[f] for f in cyc) | frozenset(cyc)
        by_min.setdefault(key, []).append(cyc)
    for key, pair in sorted(by_min.items(), key=lambda kv: min(kv[0])):
        if len(pair) != 2:
            raise DiagramError("closed component without a reverse cycle")
        pair.sort(key=lambda c: min(c) != min(key))
        closed.append((pair[0], pair[1]))
    return Components(cycles, closed, open_cycle, open_transits(D))


def connected_flag_components(D: Diagram) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for start in range(4 * D.n):
        if start in seen:
            continue
        comp = set()
        stack = [start]
        while stack:
            f = stack.pop()
            if f in comp:
                continue
            comp.add(f)
            stack.append(sigma(f))
            stack.append(D.tau[f])
        seen |= comp
        comps.append(comp)
    return comps


@dataclass(frozen=True)
class DiagramClass:
    kind: str
    genus: int
    faces: int
    components: int

    @property
    def planar(self) -> bool:
        return self.genus == 0


def genus(D: Diagram) -> int:
    if D.n == 0:
        return 0
    n_edges = (4 * D.n - len(D.legs)) // 2
    chi = D.n - n_edges + len(faces(D))
    twice_g = 2 * len(connected_flag_components(D)) - chi
    if twice_g < 0 or twice_g % 2:
        raise DiagramError(f"Euler characteristic {chi} gives no integer genus")
    return twice_g // 2


def classify(D: Diagram) -> DiagramClass:
    """Kind (``link``, ``knot``, ``multi-knotoid``, ``knotoid``, ``4-tangle``) and genus."""
    if D.n == 0:
        return DiagramClass("knotoid" if D.open else "knot", 0, 0, 1)
    g = genus(D)
    n_faces = len(faces(D))
    n_cycles = len(_cycles(strand_permutation(D)))
    if len(D.legs) == 4:
        return DiagramClass("4-tangle", g, n_faces, n_cycles)
    if D.open:
        closed = (n_cycles - 1) // 2
        kind = "knotoid" if n_cycles == 1 else "multi-knotoid"
        return DiagramClass(kind, g, n_faces, closed + 1)
    kind = "knot" if n_cycles == 2 else "link"
    return DiagramClass(kind, g, n_faces, n_cycles // 2)


# --------------------------------------------------------------------------
# canonical codes


def relabel(D: Diagram, order: Sequence[int], rotations: Sequence[int]) -> Diagram:
    """Renumber crossings (old crossing ``order[k]`` becomes ``k``) and rotate each.

    ``rotations[k]`` is the old offset that becomes offset 0 of new crossing ``k``.
    Signs flip under odd rotations so the encoded diagram is unchanged.
    """
    n = D.n
    new_of = [0] * (4 * n)
    for k, old in enumerate(order):
        r = rotations[k]
        for j in range(4):
            new_of[4 * old + (r + j) % 4] = 4 * k + j
    tau = [0] * (4 * n)
    for f, g in enumerate(D.tau):
        tau[new_of[f]] = new_of[g]
    signs = None
    if D.signs is not None:
        signs = tuple(D.signs[old] * (-1 if rotations[k] % 2 else 1) for k, old in enumerate(order))
    legs = tuple(new_of[f] for f in D.legs)
    root = None if D.root is None else new_of[D.root]
    return Diagram(n, tuple(tau), signs, legs, root, D.open)


def random_relabel(D: Diagram, rng: random.Random) -> tuple[Diagram, list[int]]:
    """Uniformly random relabeling; also returns the old-to-new flag map."""
    order = list(range(D.n))
    rng.shuffle(order)
    rotations = [rng.randrange(4) for _ in range(D.n)]
    new_of = [0] * (4 * D.n)
    for k, old in enumerate(order):
        for j in range(4):
            new_of[4 * old + (rotations[k] + j) % 4] = 4 * k + j
    return relabel(D, order, rotations), new_of


def _bfs_labels(D: Diagram, root: int) -> tuple[list[int], list[int], list[int]]:
    """Breadth-first relabeling from ``root``: returns (order, rotations, new_of)."""
    n = D.n
    new_of = [-1] * (4 * n)
    order = [root >> 2]
    rotations = [root & 3]
    for j in range(4):
        new_of[(root & ~3) | ((root + j) & 3)] = j
    old_of = [(root & ~3) | ((root + j) & 3) for j in range(4)]
    k = 0
    while k < len(old_of):
        g = D.tau[old_of[k]]
        if new_of[g] < 0:
            c = len(order)
            order.append(g >> 2)
            rotations.append(g & 3)
            for j in range(4):
                h = (g & ~3) | ((g + j) & 3)
                new_of[h] = 4 * c + j
                old_of.append(h)
        k += 1
    return order, rotations, new_of


def canonical_code(D: Diagram, root: int | None = None) -> bytes:
    """Code of the rooted map obtained by breadth-first relabeling from ``root``.

    Two rooted diagrams are isomorphic iff their codes agree.  Open diagrams
    default to rooting at the tail leg, closed ones at ``D.root`` or flag 0.
    """
    if D.n == 0:
        return struct.pack(">hhh", 0, int(D.open), int(D.signs is not None))
    if root is None:
        root = D.tail if D.open else (D.root if D.root is not None else 0)
    order, rotations, new_of = _bfs_labels(D, root)
    if len(order) != D.n:
        raise DiagramError("canonical code needs a connected diagram")
    marks = {f: -1 - i for i, f in enumerate(D.legs)}
    old_of = [0] * (4 * D.n)
    for f, v in enumerate(new_of):
        old_of[v] = f
    words = [D.n, int(D.open), int(D.signs is not None)]
    for v in range(4 * D.n):
        f = old_of[v]
        g = D.tau[f]
        words.append(marks[f] if g == f else new_of[g])
    if D.signs is not None:
        words.extend(D.signs[old] * (-1 if r % 2 else 1) for old, r in zip(order, rotations))
    return struct.pack(f">{len(words)}h", *words)


def unrooted_key(D: Diagram) -> bytes:
    """Isomorphism key ignoring the root: tail-rooted for open, minimum over flags otherwise."""
    if D.n == 0 or D.open:
        return canonical_code(D)
    return min(canonical_code(D, r) for r in range(4 * D.n))


def canonical_form(D: Diagram, root: int | None = None) -> Diagram:
    """The relabeled diagram whose flag 0 is ``root`` (breadth-first numbering)."""
    if D.n == 0:
        return D
    if root is None:
        root = D.tail if D.open else (D.root if D.root is not None else 0)
    order, rotations, _ = _bfs_labels(D, root)
    if len(order) != D.n:
        raise DiagramError("canonical form needs a connected diagram")
    out = relabel(D, order, rotations)
    return out if D.open else replace(out, root=0)


# --------------------------------------------------------------------------
# kdg1 text format


def serialize(D: Diagram) -> str:
    lines = ["kdg1", f"n={D.n}"]
    if D.signs is None:
        lines.append("signs=" + "?" * D.n)
    else:
        lines.append("signs=" + "".join("+" if s > 0 else "-" for s in D.signs))
    lines.append("edges=" + ",".join(f"{a}-{b}" for a, b in D.edges()))
    if D.open:
        lines.append("legs=" + (",".join(map(str, D.legs)) if D.legs else "-"))
    if D.root is not None:
        lines.append(f"root={D.root}")
    return "\n".join(lines) + "\n"


def _parse_int(text: str, line: int, col: int) -> int:
    if not text or not (text.isdigit() or (text[0] == "-" and text[1:].isdigit())):
        raise KdgSyntaxError(f"expected integer, got {text!r}", line, col)
    return int(text)


def _parse_lines(lines: list[tuple[int, str]]) -> Diagram:
    if not lines or lines[0][1] != "kdg1":
        lineno = lines[0][0] if lines else 1
        raise KdgSyntaxError("record must start with 'kdg1'", lineno, 1)
    fields: dict[str, tuple[int, int, str]] = {}
    for lineno, text in lines[1:]:
        if "=" not in text:
            raise KdgSyntaxError("expected key=value", lineno, 1)
        key, value = text.split("=", 1)
        if key not in ("n", "signs", "edges", "legs", "root"):
            raise KdgSyntaxError(f"unknown key {key!r}", lineno, 1)
        if key in fields:
            raise KdgSyntaxError(f"duplicate key {key!r}", lineno, 1)
        fields[key] = (lineno, len(key) + 2, value)
    for key in ("n", "signs", "edges"):
        if key not in fields:
            raise KdgSyntaxError(f"missing key {key!r}", lines[-1][0], 1)
    ln, col, text = fields["n"]
    n = _parse_int(text, ln, col)
    if n < 0:
        raise DiagramError("negative crossing count")
    ln, col, text = fields["signs"]
    if len(text) != n:
        raise KdgSyntaxError(f"expected {n} sign characters", ln, col)
    signs: tuple[int, ...] | None
    if n and set(text) == {"?"}:
        signs = None
    else:
        for i, ch in enumerate(text):
            if ch not in "+-":
                raise KdgSyntaxError(f"bad sign character {ch!r}", ln, col + i)
        signs = tuple(1 if ch == "+" else -1 for ch in text)
    tau = list(range(4 * n))
    paired = set()
    ln, col, text = fields["edges"]
    if text:
        pos = col
        for item in text.split(","):
            parts = item.split("-")
            if len(parts) != 2:
                raise KdgSyntaxError(f"bad edge {item!r}", ln, pos)
            a = _parse_int(parts[0], ln, pos)
            b = _parse_int(parts[1], ln, pos + len(parts[0]) + 1)
            for f in (a, b):
                if not 0 <= f < 4 * n:
                    raise DiagramError(f"flag {f} out of range for n={n}")
            if a == b:
                raise DiagramError(f"flag {a} paired with itself")
            if a in paired or b in paired:
                raise DiagramError(f"flag paired twice in edge {a}-{b}")
            paired.update((a, b))
            tau[a], tau[b] = b, a
            pos += len(item) + 1
    legs: tuple[int, ...] = ()
    is_open = False
    if "legs" in fields:
        ln, col, text = fields["legs"]
        is_open = True
        if text != "-":
            legs = tuple(_parse_int(t, ln, col) for t in text.split(","))
    unpaired = [f for f in range(4 * n) if f not in paired]
    if sorted(unpaired) != sorted(legs):
        if unpaired and not legs:
            raise DiagramError(f"open diagram is missing legs (unpaired flags {unpaired})")
        raise DiagramError(f"legs {list(legs)} do not match unpaired flags {unpaired}")
    root = None
    if "root" in fields:
        ln, col, text = fields["root"]
        root = _parse_int(text, ln, col)
    return Diagram(n, tuple(tau), signs, legs, root, is_open)


def parse(text: str) -> Diagram:
    """Parse one kdg1 record."""
    records = list(parse_stream(text))
    if len(records) != 1:
        raise KdgSyntaxError(f"expected one record, found {len(records)}", 1, 1)
    return records[0]


def parse_stream(text: str) -> Iterator[Diagram]:
    block: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        if line == "kdg1" and block:
            yield _parse_lines(block)
            block = []
        block.append((lineno, line))
    if block:
        yield _parse_lines(block)


def serialize_stream(diagrams: Iterable[Diagram]) -> Iterator[str]:
    for D in diagrams:
        yield serialize(D)
