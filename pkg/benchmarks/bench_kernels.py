"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from entfid._kernels import available_backends, get_backend
from entfid.channels import kraus_stack
from entfid.states import StateSampler


def cases():
    gen = np.random.default_rng(0)
    h4 = gen.normal(size=(4, 4)) + 1j * gen.normal(size=(4, 4))
    h8 = gen.normal(size=(8, 8)) + 1j * gen.normal(size=(8, 8))
    h4, h8 = h4 + h4.conj().T, h8 + h8.conj().T
    psi = StateSampler(1).sample(0).amplitudes
    stack = kraus_stack("amplitude-damping", np.linspace(0, 1, 100))
    rho = np.outer(psi, psi.conj())
    x, y = gen.normal(size=200), gen.normal(size=200)
    return {
        "herm_eig 4x4": lambda k: k.herm_eig(h4),
        "herm_eig 8x8": lambda k: k.herm_eig(h8),
        "concurrence": lambda k: k.concurrence(rho),
        "negativity": lambda k: k.negativity(rho),
        "sweep 100 p": lambda k: k.sweep(psi, stack),
        "tau_numerator n=200": lambda k: k.tau_numerator(x, y),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    backends = available_backends()
    kernels = {name: get_backend(name) for name in backends}
    print(f"{'kernel':<22}" + "".join(f"{b + ' (us)':>16}" for b in backends) + f"{'speedup':>10}")
    for label, fn in cases().items():
        times = {}
        for name, k in kernels.items():
            timer = timeit.Timer(lambda: fn(k))
            number, _ = timer.autorange()
            times[name] = min(timer.repeat(args.repeat, number)) / number * 1e6
        row = f"{label:<22}" + "".join(f"{times[b]:>16.1f}" for b in backends)
        if len(backends) == 2:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
