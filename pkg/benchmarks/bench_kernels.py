"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import sys
import timeit

from wonderbraid import _pykernels
from wonderbraid.arrangement import braid_arrangement, r_braid_arrangement
from wonderbraid.lattice import _reduce_mod, intersection_lattice, root_of_unity_mod

try:
    from wonderbraid import _ckernels
except ImportError:
    _ckernels = None


def forms_mod_q(a, q):
    z = root_of_unity_mod(a.r, q) if a.r > 1 else 1
    return [[_reduce_mod(c, z, q) for c in h.coeffs] for h in a.hyperplanes]


def iso_workload(lat):
    """Every pair of proper lower elements of every flat, as the decomposability search sees it."""
    jobs = []
    for f in lat:
        below = [y for y in lat.down(f.id) if y not in (lat.bottom, f.id)]
        for i, y1 in enumerate(below):
            for y2 in below[i + 1:]:
                if lat[y1].rank + lat[y2].rank == f.rank:
                    jobs.append(([lat.down(y1), lat.down(y2)], f.id, len(lat.down(f.id))))
    return jobs


def cases():
    for r, n, q in [(3, 3, 31), (2, 5, 11), (4, 3, 29)]:
        a = r_braid_arrangement(r, n)
        forms = forms_mod_q(a, q)
        yield f"count_complement rbraid({r},{n}) q={q}", lambda m, f=forms, n=n, q=q: m.count_complement(f, n, q)
    for name, a in [("rbraid(2,4)", r_braid_arrangement(2, 4)), ("braid(5)", braid_arrangement(5)),
                    ("rbraid(3,4)", r_braid_arrangement(3, 4))]:
        lat = intersection_lattice(a)
        masks = list(lat.masks)
        yield f"join_table {name} ({len(lat)} flats)", lambda m, masks=masks: m.join_table(masks)
    for name, a in [("rbraid(2,4)", r_braid_arrangement(2, 4)), ("braid(5)", braid_arrangement(5))]:
        lat = intersection_lattice(a)
        jt, masks, nf, bottom = lat.join_table, list(lat.masks), len(lat), lat.bottom
        jobs = iso_workload(lat)

        def run(m, jobs=jobs, jt=jt, masks=masks, nf=nf, bottom=bottom):
            return sum(m.join_map_is_isomorphism(jt, nf, masks, fac, x, size, bottom) for fac, x, size in jobs)

        yield f"join_map_is_isomorphism {name} ({len(jobs)} calls)", run


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'kernel':58s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in cases():
        if fn(_pykernels) != fn(_ckernels):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat))
        print(f"{name:58s} {py * 1e3:10.2f} {cy * 1e3:10.2f} {py / cy:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
