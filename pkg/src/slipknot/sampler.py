"""Uniform random multi-knotoid shadows from blossom trees, plus rejection samplers."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .knotid import geodesic_distance
from .maps import Diagram, strand_permutation, _cycles, trivial
from .ops import close_legs, leg_face_class

CHUNK = 256


class RejectionBudgetError(RuntimeError):
    """Rejection sampling gave up; carries the observed acceptance rate."""

    def __init__(self, tried: int, accepted: int):
        rate = accepted / tried if tried else 0.0
        super().__init__(f"rejection budget exhausted after {tried} tries (acceptance {rate:.4g})")
        self.tried = tried
        self.accepted = accepted


@dataclass(frozen=True)
class BlossomTree:
    """Binary plane tree in preorder (1 = node, 0 = leaf) with a bud slot per node.

    Each node has slots 1..3 counterclockwise after its parent slot 0; ``buds[k]``
    is the slot of node ``k`` (preorder) holding the bud, the other two hold the
    left and right subtrees in counterclockwise order.
    """

    word: tuple[int, ...]
    buds: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.buds)


def random_binary_word(n: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Uniform preorder word of a binary tree with ``n`` nodes (cycle lemma)."""
    steps = np.array([1] * n + [-1] * (n + 1))
    rng.shuffle(steps)
    partial = np.cumsum(steps)
    k = int(np.argmin(partial))  # first minimum
    rotated = np.concatenate([steps[k + 1:], steps[:k + 1]])
    return tuple(int(s > 0) for s in rotated)


def random_blossom_tree(n: int, rng: np.random.Generator) -> BlossomTree:
    word = random_binary_word(n, rng)
    buds = tuple(int(b) + 1 for b in rng.integers(0, 3, size=n))
    return BlossomTree(word, buds)


def all_blossom_trees(n: int) -> Iterator[BlossomTree]:
    """Every blossom tree with ``n`` nodes (for exhaustive checks)."""
    def words(k):
        if k == 0:
            yield (0,)
            return
        for left in range(k):
            for a in words(left):
                for b in words(k - 1 - left):
                    yield (1,) + a + b

    import itertools

    for w in words(n):
        for buds in itertools.product((1, 2, 3), repeat=n):
            yield BlossomTree(w, buds)


def close_tree(tree: BlossomTree) -> Diagram:
    """Blossom closure: each bud is joined to the next free leaf along the contour.

    The contour visits the slots of each node counterclockwise from its parent.
    The root's parent slot becomes the tail and the one leaf left unmatched the head.
    """
    n = tree.n
    if n == 0:
        return trivial(True, signed=False)
    tau = list(range(4 * n))
    contour: list[tuple[str, int]] = []
    pos = 0
    count = 0

    def build() -> int:
        """Parse one subtree at ``pos``; returns its node index (-1 for a leaf)."""
        nonlocal pos, count
        bit = tree.word[pos]
        pos += 1
        if not bit:
            return -1
        v = count
        count += 1
        return v

    # iterative preorder with an explicit stack so deep trees do not recurse
    root = build()
    stack = [(root, 1, None)]  # (node, next slot, pending child slots)
    child_slots = {}
    while stack:
        v, slot, _ = stack.pop()
        if slot == 1:
            child_slots[v] = [s for s in (1, 2, 3) if s != tree.buds[v]]
        if slot > 3:
            continue
        stack.append((v, slot + 1, None))
        f = 4 * v + slot
        if slot == tree.buds[v]:
            contour.append(("bud", f))
            continue
        c = build()
        if c < 0:
            contour.append(("leaf", f))
        else:
            tau[f], tau[4 * c] = 4 * c, f
            stack.append((c, 1, None))
    # match buds to the next free leaf, cyclically
    pending: list[int] = []
    free_leaves: list[int] = []
    for kind, f in contour + contour:
        if kind == "bud":
            if f not in pending and tau[f] == f:
                pending.append(f)
        elif tau[f] == f and pending:
            b = pending.pop()
            tau[b], tau[f] = f, b
    for kind, f in contour:
        if kind == "leaf" and tau[f] == f:
            free_leaves.append(f)
    if len(free_leaves) != 1:
        raise AssertionError("blossom closure left the wrong number of leaves")
    return Diagram(n, tuple(tau), None, (0, free_leaves[0]), None, True)


def sample_multiknotoid(n: int, rng: np.random.Generator | int | None = None) -> Diagram:
    """Uniform rooted multi-knotoid shadow with ``n`` crossings."""
    rng = np.random.default_rng(rng)
    return close_tree(random_blossom_tree(n, rng))


def is_knotoid(S: Diagram) -> bool:
    return S.n == 0 or len(_cycles(strand_permutation(S))) == 1


def sample_knotoid(n: int, rng: np.random.Generator | int | None = None,
                   budget: int = 1_000_000, stats: dict | None = None) -> Diagram:
    """Uniform rooted knotoid shadow by rejection from :func:`sample_multiknotoid`."""
    rng = np.random.default_rng(rng)
    for tried in range(1, budget + 1):
        S = sample_multiknotoid(n, rng)
        if is_knotoid(S):
            if stats is not None:
                stats["tried"] = stats.get("tried", 0) + tried
                stats["accepted"] = stats.get("accepted", 0) + 1
            return S
    raise RejectionBudgetError(budget, 0)


def sample_knot_diagram(n: int, rng: np.random.Generator | int | None = None,
                        budget: int = 1_000_000, stats: dict | None = None) -> Diagram:
    """Uniform rooted knot diagram: a same-face knotoid shadow, closed, with fair signs."""
    rng = np.random.default_rng(rng)
    for tried in range(1, budget + 1):
        S = sample_multiknotoid(n, rng)
        if is_knotoid(S) and leg_face_class(S) == "same-face":
            if stats is not None:
                stats["tried"] = stats.get("tried", 0) + tried
                stats["accepted"] = stats.get("accepted", 0) + 1
            D = close_legs(S).diagram
            signs = tuple(int(s) for s in rng.choice((1, -1), size=n))
            return D.with_signs(signs) if n else trivial(False)
    raise RejectionBudgetError(budget, 0)


SAMPLERS = {
    "multi-knotoid": sample_multiknotoid,
    "knotoid": sample_knotoid,
    "knot-diagram": sample_knot_diagram,
}


def sample_stream(n: int, cls: str, count: int, seed: int, budget: int = 1_000_000,
                  stats: dict | None = None) -> Iterator[Diagram]:
    """Reproducible stream: one child seed per chunk of ``CHUNK`` samples.

    Rejection samplers add ``tried``/``accepted`` totals to ``stats``.
    """
    sampler = SAMPLERS[cls]
    chunks = math.ceil(count / CHUNK) if count else 0
    seeds = np.random.SeedSequence(seed).spawn(chunks)
    done = 0
    for ss in seeds:
        rng = np.random.default_rng(ss)
        for _ in range(min(CHUNK, count - done)):
            if cls == "multi-knotoid":
                yield sampler(n, rng)
            else:
                yield sampler(n, rng, budget=budget, stats=stats)
            done += 1


# --------------------------------------------------------------------------
# geodesic distance statistics


@dataclass(frozen=True)
class SampleStats:
    n: int
    cls: str
    trials: int
    mean_d: float
    stderr: float
    accepted: int
    rejected: int


def _distance_chunk(args) -> tuple[int, float, float, int, int]:
    n, cls, count, ss = args
    rng = np.random.default_rng(ss)
    total = total_sq = 0.0
    stats: dict = {}
    for _ in range(count):
        if cls == "multi-knotoid":
            S = sample_multiknotoid(n, rng)
        else:
            S = sample_knotoid(n, rng, stats=stats)
        d = geodesic_distance(S)
        total += d
        total_sq += d * d
    tried = stats.get("tried", count)
    return count, total, total_sq, stats.get("accepted", count), tried - stats.get("accepted", count)


def geodesic_stats(ns: Sequence[int], trials: int, seed: int, cls: str = "multi-knotoid",
                   jobs: int = 1) -> list[SampleStats]:
    """Mean geodesic distance per ``n``; identical for any ``jobs``."""
    if cls not in ("multi-knotoid", "knotoid"):
        raise ValueError("geodesic statistics are for multi-knotoid or knotoid shadows")
    root = np.random.SeedSequence(seed)
    per_n = root.spawn(len(ns))
    tasks = []
    for n, ss in zip(ns, per_n):
        chunks = math.ceil(trials / CHUNK)
        for k, child in enumerate(ss.spawn(chunks)):
            tasks.append((n, cls, min(CHUNK, trials - k * CHUNK), child))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_distance_chunk, tasks))
    else:
        results = [_distance_chunk(t) for t in tasks]
    out = []
    for n in ns:
        rows = [r for t, r in zip(tasks, results) if t[0] == n]
        count = sum(r[0] for r in rows)
        s1 = sum(r[1] for r in rows)
        s2 = sum(r[2] for r in rows)
        mean = s1 / count
        var = max(s2 / count - mean * mean, 0.0) * count / max(count - 1, 1)
        out.append(SampleStats(n, cls, count, mean, math.sqrt(var / count),
                               sum(r[3] for r in rows), sum(r[4] for r in rows)))
    return out


def stats_csv(rows: Sequence[SampleStats]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "class", "trials", "mean_d", "stderr"])
    for r in rows:
        w.writerow([r.n, r.cls, r.trials, f"{r.mean_d:.6f}", f"{r.stderr:.6f}"])
    return buf.getvalue()


def loglog_slope(rows: Sequence[SampleStats]) -> float:
    x = np.log([r.n for r in rows])
    y = np.log([r.mean_d for r in rows])
    return float(np.polyfit(x, y, 1)[0])
