"""Compare the compiled and numpy kernels.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--study]

Kernel timings import both backends side by side.  ``--study`` also times a
500-sample ``compare`` run end to end under each backend, selected through
``RISROOM_PURE_PYTHON`` in a child process.
"""

import argparse
import os
import subprocess
import sys
import tempfile
import textwrap
import timeit
from pathlib import Path

import numpy as np

from risroom import _kernels_py

try:
    from risroom import _kernels
except ImportError:
    _kernels = None

K = 2 * np.pi * 28e9 / 299792458.0
LAM = 2 * np.pi / K


def cases():
    rng = np.random.default_rng(0)
    small = rng.uniform(0.1, 12.0, 10_000)
    large = rng.uniform(12.0, 5e3, 10_000)
    u = (np.arange(200) - 99.5) * LAM / 2  # 1 m aperture at half-wavelength pitch
    return {
        "bessel01 series (1e4 pts)": lambda m: m.bessel01(small),
        "bessel01 asymptotic (1e4 pts)": lambda m: m.bessel01(large),
        "hankel01 scalar": lambda m: m.hankel01(37.5),
        "ris_norms (200 elements)": lambda m: m.ris_norms(-1.3, 2.1, 0.8, 3.4, u, K),
    }


def best_time(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def bench_kernels(repeat):
    print(f"{'kernel':32s} {'numpy':>12s} {'cython':>12s} {'speedup':>8s}")
    for name, call in cases().items():
        py = best_time(lambda: call(_kernels_py), repeat)
        if _kernels is None:
            print(f"{name:32s} {py * 1e6:10.1f}us {'n/a':>12s}")
            continue
        cy = best_time(lambda: call(_kernels), repeat)
        print(f"{name:32s} {py * 1e6:10.1f}us {cy * 1e6:10.1f}us {py / cy:7.1f}x")


CONFIG = """
[room]
W = 10
[material]
name = concrete
[study]
samples = 500
seed = 1
"""


def bench_study():
    with tempfile.TemporaryDirectory() as tmp:
        config = Path(tmp) / "bench.ini"
        config.write_text(textwrap.dedent(CONFIG))
        for label, pure in (("numpy", True), ("cython", False)):
            env = {k: v for k, v in os.environ.items() if k != "RISROOM_PURE_PYTHON"}
            if pure:
                env["RISROOM_PURE_PYTHON"] = "1"
            code = (
                "import time, sys; from risroom.cli import main; t = time.perf_counter();"
                f"main(['compare', '--config', {str(config)!r}, '--out', {tmp!r}]);"
                "print(time.perf_counter() - t, file=sys.stderr)"
            )
            done = subprocess.run(
                [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
            )
            print(f"compare, 500 samples, {label:6s}: {float(done.stderr.split()[-1]):.2f} s")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--study", action="store_true", help="also time an end-to-end study")
    args = parser.parse_args()
    bench_kernels(args.repeat)
    if args.study:
        bench_study()


if __name__ == "__main__":
    main()
