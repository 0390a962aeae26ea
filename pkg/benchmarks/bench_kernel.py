"""Compare the compiled and pure-Python stepping kernels.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""
import argparse
import time

from panopticon.kernel import c_advance, py_advance
from panopticon.simulate import Simulation
from panopticon.zoo import zoo_machine

CASES = [
    ("LOOP on empty input", "LOOP", "", 1_000_000),
    ("PRIME on 1^59", "PRIME", "1" * 59, 1_000_000),
    ("MULT6 on 1^5000", "MULT6", "1" * 5000, 1_000_000),
]


def timed(machine, word, budget, advance, repeat):
    best = float("inf")
    steps = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        sim = Simulation(machine, word, advance=advance)
        sim.advance_to(budget)
        best = min(best, time.perf_counter() - t0)
        steps = sim.steps
    return steps, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    kernels = [("python", py_advance)]
    if c_advance is not None:
        kernels.insert(0, ("cython", c_advance))
    else:
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'case':<22} {'kernel':<7} {'steps':>9} {'seconds':>9} {'Msteps/s':>9}")
    for label, name, word, budget in CASES:
        machine = zoo_machine(name)
        results = {}
        for kname, fn in kernels:
            steps, secs = timed(machine, word, budget, fn, args.repeat)
            results[kname] = (steps, secs)
            print(f"{label:<22} {kname:<7} {steps:>9} {secs:>9.4f} {steps / secs / 1e6:>9.2f}")
        if len(results) == 2:
            (s1, t1), (s2, t2) = results["cython"], results["python"]
            assert s1 == s2, "kernels disagree on step count"
            print(f"{'':<22} speedup {t2 / t1:.1f}x")


if __name__ == "__main__":
    main()
