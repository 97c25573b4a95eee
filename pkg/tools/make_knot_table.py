"""Regenerate src/slipknot/data/knot_table.json from spherogram's minimal diagrams.

Needs spherogram importable (its snappy_manifolds dependency may be stubbed,
only the tangle and braid constructors are used).  Every prime knot through
eight crossings is rebuilt here, converted to a kdg1 diagram, fingerprinted
with this package's own bracket and checked against its determinant.
"""

import json
import sys
from pathlib import Path

from spherogram import ClosedBraid, RationalTangle

from slipknot.knotid import from_pd, jones_fingerprint
from slipknot.maps import classify, serialize

RATIONAL = {
    "4_1": (2, 5), "5_2": (3, 7), "6_1": (4, 9), "6_2": (4, 11), "6_3": (5, 13),
    "7_2": (5, 11), "7_3": (4, 13), "7_4": (4, 15), "7_5": (7, 17), "7_6": (7, 19),
    "7_7": (8, 21), "8_1": (6, 13), "8_2": (6, 17), "8_3": (4, 17), "8_4": (5, 19),
    "8_6": (10, 23), "8_7": (9, 23), "8_8": (9, 25), "8_9": (7, 25), "8_11": (10, 27),
    "8_12": (12, 29), "8_13": (11, 29), "8_14": (12, 31),
}
MONTESINOS = {
    "8_5": [(1, 3), (1, 3), (1, 2)], "8_10": [(1, 3), (2, 3), (1, 2)],
    "8_15": [(2, 3), (2, 3), (1, 2)], "8_20": [(1, 3), (2, 3), (-1, 2)],
    "8_21": [(2, 3), (2, 3), (-1, 2)],
}
BRAIDS = {
    "3_1": [1, 1, 1], "5_1": [1] * 5, "7_1": [1] * 7,
    "8_16": [1, 1, -2, 1, 1, -2, 1, -2], "8_17": [1, 1, -2, 1, -2, 1, -2, -2],
    "8_18": [1, -2, 1, -2, 1, -2, 1, -2], "8_19": [1, 2, 1, 2, 1, 2, 1, 2],
}
DETERMINANT = {
    "3_1": 3, "4_1": 5, "5_1": 5, "5_2": 7, "6_1": 9, "6_2": 11, "6_3": 13, "7_1": 7,
    "7_2": 11, "7_3": 13, "7_4": 15, "7_5": 17, "7_6": 19, "7_7": 21, "8_1": 13,
    "8_2": 17, "8_3": 17, "8_4": 19, "8_5": 21, "8_6": 23, "8_7": 23, "8_8": 25,
    "8_9": 25, "8_10": 27, "8_11": 27, "8_12": 29, "8_13": 29, "8_14": 31, "8_15": 33,
    "8_16": 35, "8_17": 37, "8_18": 45, "8_19": 3, "8_20": 9, "8_21": 15,
}
NON_ALTERNATING = {"8_19", "8_20", "8_21"}


def link_for(name):
    if name in RATIONAL:
        return RationalTangle(*RATIONAL[name]).denominator_closure()
    if name in MONTESINOS:
        a, b, c = (RationalTangle(*f) for f in MONTESINOS[name])
        return (a + b + c).numerator_closure()
    return ClosedBraid(BRAIDS[name])


def crossing_number(name):
    return int(name.split("_")[0])


def base_first(fp, mirror):
    """Order the two chiralities; the unmarked name goes to the first."""
    def key(f):
        top = f.minexp2 + 2 * (len(f.jones) - 1)
        return (f.minexp2 + top, f.jones, f.minexp2)
    return key(fp) <= key(mirror)


def main(out_path):
    entries = []
    for name in sorted(DETERMINANT, key=lambda s: (crossing_number(s), int(s.split("_")[1]))):
        L = link_for(name)
        L.simplify("global")
        D = from_pd(L.PD_code())
        cls = classify(D)
        if cls.kind != "knot" or cls.genus:
            raise SystemExit(f"{name}: PD conversion gave {cls}")
        if D.n != crossing_number(name):
            raise SystemExit(f"{name}: diagram has {D.n} crossings")
        fp = jones_fingerprint(D)
        mirror_D = D.with_signs(tuple(-s for s in D.signs))
        mfp = jones_fingerprint(mirror_D)
        if mfp != fp.mirror():
            raise SystemExit(f"{name}: mirror fingerprint mismatch")
        if fp.det != DETERMINANT[name]:
            raise SystemExit(f"{name}: determinant {fp.det}, expected {DETERMINANT[name]}")
        span = len(fp.jones) - 1
        if name not in NON_ALTERNATING and span != crossing_number(name):
            raise SystemExit(f"{name}: Jones span {span} for an alternating knot")
        amphichiral = fp == mfp
        if not amphichiral and not base_first(fp, mfp):
            D, fp = mirror_D, mfp
        entries.append({
            "name": name,
            "amphichiral": amphichiral,
            "jones": list(fp.jones),
            "minexp2": fp.minexp2,
            "det": fp.det,
            "diagram": serialize(D),
        })
    seen = {}
    for e in entries:
        for chirality in ([e["jones"]] if e["amphichiral"] else [e["jones"], e["jones"][::-1]]):
            key = tuple(chirality)
            if key in seen:
                raise SystemExit(f"Jones collision between {seen[key]} and {e['name']}")
            seen[key] = e["name"]
    Path(out_path).write_text(json.dumps({"format": 1, "knots": entries}, indent=1) + "\n")
    print(f"wrote {len(entries)} prime knots to {out_path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/slipknot/data/knot_table.json")
