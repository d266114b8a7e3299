"""Compiled vs pure-Python kernels, plus a scaling run of the full build.

    python benchmarks/bench_kernels.py [--size 20000] [--repeat 3] [--scaling]
"""
import argparse
import json
import time

import numpy as np

from gsacms import _backend, gsa_builder, matching_stats, suffix_kernels
from gsacms.alphabet import encode_document, encode_reference
from gsacms.gsa_builder import Collection, build_gsa
from gsacms.reference_index import build_reference_index
from gsacms.synth import mutate, similar_collection


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_cases(size, rng):
    seed, docs = similar_collection(size, 4, 0.005, rng=rng)
    doc = encode_document(mutate(seed, 0.005, rng=rng))
    ref = build_reference_index(encode_reference(seed), [doc])
    ref_text = ref.text
    col = Collection.from_sequences(docs)
    sa = ref.sa

    def ecms(k, heuristic):
        return lambda: k.ecms(ref.text, ref.sa, ref.isa, ref.lcp, ref.smaller.psv_array,
                              ref.smaller.nsv_array, ref.block_max, ref.block_size, doc, heuristic)

    return {
        "sais": lambda k: (lambda: k.sais(ref_text.astype(np.int64), 256)),
        "phi_plcp": lambda k: (lambda: k.phi_plcp(ref_text, sa)),
        "smaller_values": lambda k: (lambda: k.smaller_values(ref.lcp)),
        "ecms": lambda k: ecms(k, True),
        "ecms_no_heuristic": lambda k: ecms(k, False),
        "suffix_types": lambda k: (lambda: k.suffix_types(col.text)),
    }, docs


def use_backend(mod):
    for m in (suffix_kernels, matching_stats, gsa_builder):
        m.kernels = mod


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=20000, help="reference length for kernel timings")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scaling", action="store_true", help="also time build_gsa on growing collections")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--json", help="write results here as well")
    args = ap.parse_args()

    backends = _backend.available_backends()
    rng = np.random.default_rng(args.seed)
    cases, docs = kernel_cases(args.size, rng)
    results = {"size": args.size, "kernels": {}, "build": {}, "scaling": []}

    print(f"kernels on n={args.size} (best of {args.repeat})")
    print(f"{'kernel':<20}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for name, make in cases.items():
        row = {b: best_of(make(mod), args.repeat) for b, mod in backends.items()}
        results["kernels"][name] = row
        speed = row["python"] / row["cython"] if "cython" in row else float("nan")
        print(f"{name:<20}" + "".join(f"{row[b] * 1e3:>10.2f}ms" for b in backends) + f"{speed:>9.1f}x")

    default = _backend.kernels
    for b, mod in backends.items():
        use_backend(mod)
        results["build"][b] = best_of(lambda: build_gsa(docs), args.repeat)
    use_backend(default)
    print("build_gsa, 4 copies: " + ", ".join(f"{b} {t:.3f}s" for b, t in results["build"].items()))

    if args.scaling:
        print("\nscaling of build_gsa (10 copies, 0.1% mutations, default kernels)")
        print(f"{'N':>10}{'seconds':>10}{'us/symbol':>11}{'chi_prime':>11}")
        for length in (2_000, 8_000, 32_000, 128_000):
            _, sdocs = similar_collection(length, 10, 0.001, rng=rng)
            t0 = time.perf_counter()
            res = build_gsa(sdocs)
            dt = time.perf_counter() - t0
            st = res.stats
            results["scaling"].append({"N": st.N, "seconds": dt, "chi_prime": st.chi_prime})
            print(f"{st.N:>10}{dt:>10.3f}{dt / st.N * 1e6:>11.2f}{st.chi_prime:>11}")

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
