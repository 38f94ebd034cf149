#!/usr/bin/env python3
"""Independent brute-force oracle for the tiny-n transport values frozen in
transport_test.cc.

Everything here is computed from scratch: labeled graphs are enumerated as
edge sets, isomorphism classes by brute-force minimum over permutations,
edit distances by brute force over permutations, model probabilities by
summing over spin vectors, and the optimal coupling with scipy's HiGHS LP.
"""
import itertools
import sys

import numpy as np
from scipy.optimize import linprog


def pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def labeled_graphs(n):
    ps = pairs(n)
    for bits in range(1 << len(ps)):
        yield frozenset(p for k, p in enumerate(ps) if bits >> k & 1)


def relabel(edges, perm):
    return frozenset(tuple(sorted((perm[i], perm[j]))) for i, j in edges)


def canonical(edges, n):
    return min(tuple(sorted(relabel(edges, p))) for p in itertools.permutations(range(n)))


def edit_distance(g, h, n):
    return min(len(relabel(g, p) ^ h) for p in itertools.permutations(range(n)))


def edge_prob(n, c, delta, flavor, same):
    if flavor == "uniform":
        p = c / n
    else:
        a, b = (c + delta) / n, (c - delta) / n
        if flavor == "assortative":
            p = a if same else b
        else:
            p = b if same else a
    return min(max(p, 0.0), 1.0)


def distribution(n, c, delta, flavor):
    ps = pairs(n)
    probs = {}
    spins = list(itertools.product([0, 1], repeat=n))
    for g in labeled_graphs(n):
        total = 0.0
        for s in spins:
            pr = 1.0
            for (i, j) in ps:
                p = edge_prob(n, c, delta, flavor, s[i] == s[j])
                pr *= p if (i, j) in g else 1 - p
            total += pr
        key = canonical(g, n)
        probs[key] = probs.get(key, 0.0) + total / len(spins)
    return probs


def ot_cost(n, c, delta, flavor):
    p = distribution(n, c, delta, flavor)
    q = distribution(n, c, 0.0, "uniform")
    keys = sorted(p)
    m = len(keys)
    d = np.array([[edit_distance(frozenset(a), frozenset(b), n) for b in keys] for a in keys], float)
    a_eq = []
    b_eq = []
    for i in range(m):
        row = np.zeros(m * m)
        row[i * m:(i + 1) * m] = 1
        a_eq.append(row)
        b_eq.append(p[keys[i]])
    for j in range(m):
        col = np.zeros(m * m)
        col[j::m] = 1
        a_eq.append(col)
        b_eq.append(q[keys[j]])
    res = linprog(d.ravel(), A_eq=np.array(a_eq), b_eq=np.array(b_eq), bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun


def main():
    print("classes n=3:", len({canonical(g, 3) for g in labeled_graphs(3)}))
    print("classes n=4:", len({canonical(g, 4) for g in labeled_graphs(4)}))
    path = frozenset({(0, 1), (1, 2)})
    tri = frozenset({(0, 1), (1, 2), (0, 2)})
    print("d(path, triangle):", edit_distance(path, tri, 3))
    for flavor in ("assortative", "disassortative"):
        print(f"ot n=5 c=3 delta=3 {flavor}: {ot_cost(5, 3.0, 3.0, flavor):.15f}")
        print(f"ot n=4 c=2 delta=1 {flavor}: {ot_cost(4, 2.0, 1.0, flavor):.15f}")
    # Baseline maximal coupling at n=4, c=2, delta=2: sum over spins and pairs.
    n, c, delta = 4, 2.0, 2.0
    q = edge_prob(n, c, 0, "uniform", True)
    tot = 0.0
    spins = list(itertools.product([0, 1], repeat=n))
    for s in spins:
        for (i, j) in pairs(n):
            tot += abs(edge_prob(n, c, delta, "assortative", s[i] == s[j]) - q)
    print("baseline n=4 c=2 delta=2:", tot / len(spins))
    return 0


if __name__ == "__main__":
    sys.exit(main())
