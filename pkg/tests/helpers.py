"""Brute-force oracles and runtime checks of the traversal properties."""
import numpy as np


def brute_topk(x, y, k):
    return sorted(int(a) + int(b) for a in x for b in y)[:k]


def first_violation(trace, alpha=None):
    """Return a description of the first property the trace violates, or None."""
    pops = trace.pop_sequence
    k = trace.k

    for a, b in zip(pops, pops[1:]):
        if not a < b:
            return f"pops not ascending: {a} then {b}"

    keys = [(p.u, p.v, p.is_max) for p in pops]
    if len(set(keys)) != len(keys):
        return "a corner was popped twice"

    position = {key: i for i, key in enumerate(keys)}
    for i, (u, v, is_max) in enumerate(keys):
        for pu, pv in ((u - 1, v), (u, v - 1)):
            if pu >= 1 and pv >= 1 and position.get((pu, pv, is_max), i) >= i:
                return f"corner {(u, v, is_max)} popped before {(pu, pv, is_max)}"

    if trace.s < k:
        return f"phase 1 stopped with s={trace.s} < k={k}"
    if trace.s - trace.last_product_size >= k:
        return f"phase 1 overran: s={trace.s}, last={trace.last_product_size}, k={k}"

    phase1 = set(trace.q[: trace.phase1_count])
    for u, v in trace.q[trace.phase1_count :]:
        if u > 1 and v > 1 and (u - 1, v - 1) not in phase1:
            return f"phase-2 product {(u, v)} lacks committed neighbour {(u - 1, v - 1)}"

    if alpha is not None:
        slack = max(trace.phase2_sizes, default=0)
        if trace.s_prime > (alpha**2 + 2 * alpha) * trace.s + slack:
            return f"s'={trace.s_prime} exceeds the bound for s={trace.s}, alpha={alpha}"
    return None


def max_growth(loh):
    sizes = loh.sizes()
    if len(sizes) < 2:
        return 1.0
    return float(np.max(sizes[1:] / sizes[:-1]))
