"""Compare the compiled and pure-Python kernels on Sylvester determinants.

Run ``python benchmarks/bench_kernels.py`` from the repository root.
"""

import argparse
import os
import time
from fractions import Fraction

from qopolar.kernels import available_backends, get_backend
from qopolar.resultants import newton_polyhedron, psi_image
from qopolar.textio import parse_poly_file

CORPUS = os.path.join(os.path.dirname(__file__), "..", "corpus")


def cases(full: bool):
    pf = parse_poly_file(open(os.path.join(CORPUS, "four_branch.poly")).read(), CORPUS)
    f = pf.poly
    fY = f.derivative().scale(Fraction(1, f.degree()))
    out = [("psi_f11(f_Y), 19x19", pf.factors[0], fY)]
    if full:
        out.append(("psi_f(f_Y), 31x31", f, fY))
    return out


def run(label, fi, h, backend, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        r = psi_image(fi, h, method="sylvester", backend=backend)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
        result = r
    return best, newton_polyhedron(result).vertices


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true", help="include the 31x31 determinant")
    args = ap.parse_args()
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    for label, fi, h in cases(args.full):
        times = {}
        verts = set()
        for name in backends:
            dt, v = run(label, fi, h, get_backend(name), args.repeat)
            times[name] = dt
            verts.add(v)
        assert len(verts) == 1, "backends disagree"
        line = "  ".join(f"{n} {t * 1000:9.1f} ms" for n, t in times.items())
        if "compiled" in times:
            line += f"  speedup {times['python'] / times['compiled']:.1f}x"
        print(f"{label:22s} {line}")


if __name__ == "__main__":
    main()
