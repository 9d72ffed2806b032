"""Compare the compiled spectral kernels against the NumPy reference backend.

Times the four kernel entry points on search-shaped workloads and checks that
both backends agree to near machine precision. Run from the repo root:

    python benchmarks/bench_kernels.py [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from curvtool._kernels import _pyref

try:
    from curvtool._kernels import _core
except ImportError:
    _core = None


def _skew_batch(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    m = rng.standard_normal((count, dim, dim))
    return m - m.transpose(0, 2, 1)


def _workloads(rng: np.random.Generator):
    sym = rng.standard_normal((7, 7))
    sym = sym + sym.T
    mats = _skew_batch(rng, 500, 7)
    small = _skew_batch(rng, 8, 7)
    cmats = rng.standard_normal((8, 196, 7, 7))
    cmats = cmats - cmats.transpose(0, 1, 3, 2)
    spectra_args = (mats,)
    return {
        "jacobi_eigh (7x7)": ("jacobi_eigh", (sym,)),
        "skew_square_spectra (500x7x7)": ("skew_square_spectra", spectra_args),
        "pair_residual (500 spectra)": (
            "pair_residual",
            (_pyref.skew_square_spectra(mats),),
        ),
        "fd_gradient (P=8, K=196)": ("fd_gradient", (cmats, small, 1e-6)),
    }


def _time(func, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - start)
    return best


def _agreement(name: str, a, b) -> float:
    if name == "jacobi_eigh":
        return max(
            float(np.abs(a[0] - b[0]).max()),
            float(np.abs(np.abs(a[1]) - np.abs(b[1])).max()),  # column signs free
        )
    if name == "fd_gradient":
        return max(abs(a[0] - b[0]), float(np.abs(a[1] - b[1]).max()))
    return float(np.abs(np.asarray(a) - np.asarray(b)).max())


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    rng = np.random.default_rng(0)
    workloads = _workloads(rng)

    if _core is None:
        print("compiled backend unavailable; timing the reference backend only")
    header = f"{'kernel':<34}{'python':>12}{'compiled':>12}{'speedup':>10}{'max diff':>12}"
    print(header)
    print("-" * len(header))
    for label, (name, call_args) in workloads.items():
        ref_func = getattr(_pyref, name)
        ref_time = _time(ref_func, call_args, args.repeats)
        if _core is None:
            print(f"{label:<34}{ref_time * 1e3:>10.3f}ms{'-':>12}{'-':>10}{'-':>12}")
            continue
        core_func = getattr(_core, name)
        core_time = _time(core_func, call_args, args.repeats)
        diff = _agreement(name, ref_func(*call_args), core_func(*call_args))
        print(
            f"{label:<34}{ref_time * 1e3:>10.3f}ms{core_time * 1e3:>10.3f}ms"
            f"{ref_time / core_time:>9.1f}x{diff:>12.2e}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
