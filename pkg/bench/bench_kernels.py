"""Time the compiled and pure-Python marching-squares kernels.

    python bench/bench_kernels.py [--repeat N]
"""
import argparse
import time

from minkconic.quadric import ImplicitQuadric
from minkconic.sampler import KERNELS, Window, csv_text, sample

CASES = {
    "minkowski-circle": (ImplicitQuadric(1, 0, -1, 0, 0, -1), Window(-5, 5, -5, 5)),
    "figure1-parabola": (ImplicitQuadric(1, -4, 4, 12, -18, 15), Window(-10, 10, -10, 10)),
}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--res", type=int, nargs="+", default=[128, 256, 512])
    args = ap.parse_args()
    backends = sorted(KERNELS)
    print(f"{'case':<18} {'res':>5} " + " ".join(f"{b:>10}" for b in backends) + "   speedup  identical")
    for name, (q, w) in CASES.items():
        for res in args.res:
            win = Window(w.xmin, w.xmax, w.ymin, w.ymax, res)
            row, outs = [], []
            for b in backends:
                t, curve = best_of(lambda: sample(q, win, backend=b), args.repeat)
                row.append(t)
                outs.append(csv_text(curve))
            speed = row[backends.index("python")] / row[0] if "cython" in backends else 1.0
            same = all(o == outs[0] for o in outs)
            print(f"{name:<18} {res:>5} " + " ".join(f"{t * 1e3:>8.1f}ms" for t in row)
                  + f"   {speed:>6.1f}x  {same}")


if __name__ == "__main__":
    main()
