"""Brute-force expansion constants for the frozen values in test_oracle.cpp.

Plain definitions, no orbit tricks: for every cochain f the distance to B^k
is the minimum over all (k-1)-cochains h of dist(f, delta h); Z^k is found by
testing delta f = 0.  Groups are Z_m with additive arithmetic.
"""
from fractions import Fraction
from itertools import combinations, product
from math import comb


def closure(tops):
    d = len(tops[0]) - 1
    faces = {k: set() for k in range(-1, d + 1)}
    for t in tops:
        for k in range(-1, d + 1):
            faces[k].update(combinations(sorted(t), k + 1))
    return d, {k: sorted(v) for k, v in faces.items()}


def weights(tops, d, faces):
    w = {}
    for k, fs in faces.items():
        for s in fs:
            hit = sum(1 for t in tops if set(s) <= set(t))
            w[s] = Fraction(hit, len(tops) * comb(d + 1, k + 1))
    return w


def delta(faces, k, m, f):
    idx = {s: i for i, s in enumerate(faces[k])}
    out = []
    for t in faces[k + 1]:
        acc = 0
        for j in range(len(t)):
            sub = t[:j] + t[j + 1:]
            acc += (-1) ** j * f[idx[sub]]
        out.append(acc % m)
    return tuple(out)


def norm(fs, w, v):
    return sum((w[s] for s, x in zip(fs, v) if x), Fraction(0))


def constants(tops, m, k):
    d, faces = closure(tops)
    w = weights(tops, d, faces)
    C = list(product(range(m), repeat=len(faces[k])))
    B = {delta(faces, k - 1, m, h) for h in product(range(m), repeat=len(faces[k - 1]))}
    Z = [f for f in C if not any(delta(faces, k, m, f))]
    dist = lambda f, S: min(sum((w[s] for s, a, b in zip(faces[k], f, g) if a != b), Fraction(0)) for g in S)
    cb = cs = mu = None
    for f in C:
        df = norm(faces[k + 1], w, delta(faces, k, m, f))
        if f not in B:
            r = df / dist(f, B)
            cb = r if cb is None else min(cb, r)
            if df == 0:
                nf = norm(faces[k], w, f)
                mu = nf if mu is None else min(mu, nf)
        if df != 0:
            r = df / dist(f, Z)
            cs = r if cs is None else min(cs, r)
    return len(C), len(Z), len(B), cb, cs, mu


def torus():
    return [tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))) for i in range(7)] + \
           [tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))) for i in range(7)]


def torus_mu():
    # 2^21 cochains is too many for the generic loop; cocycles by parity masks.
    tops = torus()
    d, faces = closure(tops)
    edges = faces[1]
    idx = {e: i for i, e in enumerate(edges)}
    masks = [sum(1 << idx[e] for e in combinations(t, 2)) for t in tops]
    B = set()
    for g in range(1 << 7):
        x = 0
        for (u, v) in edges:
            if ((g >> u) ^ (g >> v)) & 1:
                x |= 1 << idx[(u, v)]
        B.add(x)
    Z = [x for x in range(1 << 21) if all(bin(x & mk).count("1") % 2 == 0 for mk in masks)]
    nontrivial = [x for x in Z if x not in B]
    return len(Z), len(B), Fraction(min(bin(x).count("1") for x in nontrivial), 21)


if __name__ == "__main__":
    print("triangle F2 k=0", constants([(0, 1, 2)], 2, 0))
    print("triangle F2 k=1", constants([(0, 1, 2)], 2, 1))
    print("triangle Z3 k=1", constants([(0, 1, 2)], 3, 1))
    k4 = list(combinations(range(4), 3))
    print("K4 2-skel F2 k=0", constants(k4, 2, 0))
    print("K4 2-skel F2 k=1", constants(k4, 2, 1))
    print("tetrahedron F2 k=1", constants([(0, 1, 2, 3)], 2, 1))
    print("tetrahedron F2 k=2", constants([(0, 1, 2, 3)], 2, 2))
    print("torus F2 k=0", constants(torus(), 2, 0))
    print("torus F2 k=1 (Z, B, mu)", torus_mu())
