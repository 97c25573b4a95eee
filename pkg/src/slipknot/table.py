"""Bundled knot table: prime knots through eight crossings and their two-factor sums."""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources

from .maps import Diagram, parse

MIRROR_MARK = "m"


def _raw() -> bytes:
    return resources.files("slipknot").joinpath("data/knot_table.json").read_bytes()


def table_checksum() -> str:
    return hashlib.sha256(_raw()).hexdigest()[:16]


@lru_cache(maxsize=None)
def prime_entries() -> tuple[dict, ...]:
    return tuple(json.loads(_raw())["knots"])


def _mirror_name(name: str) -> str:
    return name[:-1] if name.endswith(MIRROR_MARK) else name + MIRROR_MARK


@lru_cache(maxsize=None)
def primes() -> dict:
    """Name -> Fingerprint for every prime in both chiralities."""
    from .knotid import Fingerprint

    out = {}
    for e in prime_entries():
        fp = Fingerprint(tuple(e["jones"]), e["minexp2"], e["det"])
        out[e["name"]] = fp.named(e["name"])
        if not e["amphichiral"]:
            m = _mirror_name(e["name"])
            out[m] = fp.mirror().named(m)
    return out


@lru_cache(maxsize=None)
def _index() -> dict:
    from .knotid import UNKNOT_FP

    idx: dict = {UNKNOT_FP.plain(): ["0_1"]}
    names = list(primes())
    for name in names:
        idx.setdefault(primes()[name].plain(), []).append(name)
    for i, a in enumerate(names):
        for b in names[i:]:
            fp = primes()[a].product(primes()[b]).plain()
            idx.setdefault(fp, []).append(f"{a}#{b}")
    return idx


def collisions() -> list[tuple[str, ...]]:
    """Groups of table names sharing one fingerprint."""
    return [tuple(v) for v in _index().values() if len(v) > 1]


def lookup_names(fp) -> tuple[str, ...]:
    return tuple(_index().get(fp.plain(), ()))


def lookup(fp) -> str | None:
    """Table name, ``None`` when absent; ambiguous hits are joined with ``|``."""
    names = lookup_names(fp)
    if not names:
        return None
    return "|".join(names)


def standard_diagram(name: str) -> Diagram:
    """Minimal diagram of a tabulated prime knot; a trailing ``m`` asks for the mirror."""
    base = name
    mirror = False
    entries = {e["name"]: e for e in prime_entries()}
    if base not in entries and base.endswith(MIRROR_MARK):
        base, mirror = base[:-1], True
    if base not in entries:
        raise KeyError(f"{name!r} is not in the knot table")
    D = parse(entries[base]["diagram"])
    if mirror:
        D = D.with_signs(tuple(-s for s in D.signs))
    return D
