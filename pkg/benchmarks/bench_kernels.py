"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--census-n 5] [--bracket-n 12] [--repeat 3]
"""

import argparse
import random
import time

from slipknot._kernels import _fallback
from slipknot.census import enumerate_shadows

try:
    from slipknot._kernels._bracket import state_histogram as compiled_histogram
    from slipknot._kernels._census import census_counts as compiled_census
except ImportError:
    compiled_histogram = compiled_census = None


def best_of(repeat, fn, *args):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--census-n", type=int, default=5)
    ap.add_argument("--bracket-n", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled_census is None:
        raise SystemExit("compiled kernels are not built; run: python3 setup.py build_ext --inplace")

    print(f"{'kernel':<28}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for open_ in (False, True):
        label = f"census_counts n={args.census_n} {'open' if open_ else 'closed'}"
        tp, rp = best_of(args.repeat, _fallback.census_counts, args.census_n, open_)
        tc, rc = best_of(args.repeat, compiled_census, args.census_n, open_)
        assert dict(rp) == dict(rc), "kernels disagree"
        print(f"{label:<28}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}")

    rng = random.Random(0)
    shadows = list(enumerate_shadows(min(args.bracket_n, 6), "knot-shadow"))
    S = rng.choice(shadows)
    signs = [rng.choice((1, -1)) for _ in range(S.n)]
    from slipknot.sampler import sample_knot_diagram
    D = sample_knot_diagram(args.bracket_n, args.bracket_n)
    for name, tau, sg in (("state_histogram n=%d" % S.n, S.tau, signs),
                          ("state_histogram n=%d" % D.n, D.tau, list(D.signs))):
        tp, hp = best_of(args.repeat, _fallback.state_histogram, list(tau), sg)
        tc, hc = best_of(args.repeat, compiled_histogram, list(tau), sg)
        assert [list(r) for r in hp] == [list(r) for r in hc], "kernels disagree"
        print(f"{name:<28}{tp:>12.4f}{tc:>12.4f}{tp / max(tc, 1e-9):>10.1f}")


if __name__ == "__main__":
    main()
