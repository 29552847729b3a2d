#!/usr/bin/env python3
"""Benchmark the truth-table kernels: compiled extension vs pure Python.

Times the full-column sweep (the hot loop behind entails/equivalent) on
random formulas at several alphabet sizes, then an end-to-end entailment
workload like the acceptance suite's.

    python benchmarks/bench_truthtable.py [--repeats N]
"""
import argparse
import random
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from aris import _ttable_py
from aris.formula import atom_names
from aris.semantics import compile_program

import randgen

try:
    from aris import _ttable
except ImportError:
    _ttable = None


def bench_columns(kernel, programs, natoms, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        for ops, args in programs:
            kernel.truth_column(ops, args, natoms)
        times.append(time.perf_counter() - start)
    return min(times)


def make_programs(rng, natoms, count):
    programs = []
    while len(programs) < count:
        f = randgen.formula(rng, natoms=min(natoms, len(randgen.ATOMS)), depth=4)
        names = sorted(atom_names(f))
        if not names:
            continue
        index = {}
        for i, name in enumerate(names):
            index[name] = i % natoms
        programs.append(compile_program(f, index))
    return programs


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--count", type=int, default=300, help="formulas per size")
    args = parser.parse_args()

    rng = random.Random(1789)
    kernels = [("python", _ttable_py)]
    if _ttable is not None:
        kernels.append(("compiled", _ttable))
    else:
        print("note: compiled kernel not built; timing the fallback only")

    print(f"{'atoms':>6} {'assignments':>12} " + "".join(f"{n:>12}" for n, _ in kernels) + "   speedup")
    for natoms in (4, 8, 10, 12, 14, 16, 18):
        programs = make_programs(rng, natoms, args.count)
        row = []
        for _name, kernel in kernels:
            row.append(bench_columns(kernel, programs, natoms, args.repeats))
        speed = f"{row[0] / row[-1]:10.2f}x" if len(row) > 1 else ""
        cells = "".join(f"{t * 1e3:10.2f}ms" for t in row)
        print(f"{natoms:>6} {1 << natoms:>12} {cells} {speed}")

    # end-to-end: accepted rule applications confirmed by the oracle
    from aris import semantics, verify

    for label in ("entails workload",):
        rng = random.Random(42)
        batch = []
        while len(batch) < 2000:
            rule, refs, conclusion = randgen.gen_inference(rng)
            if verify(rule, conclusion, refs).ok:
                batch.append((refs, conclusion))
        start = time.perf_counter()
        for refs, conclusion in batch:
            assert semantics.entails(list(refs), conclusion)
        elapsed = time.perf_counter() - start
        print(f"\n{label}: {len(batch)} checks in {elapsed:.2f}s "
              f"({semantics.BACKEND} backend)")


if __name__ == "__main__":
    main()
