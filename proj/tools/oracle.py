#!/usr/bin/env python3
"""Independent brute-force oracle for the test suite.

Everything here is computed by exhaustive enumeration, sharing no code or
method with the C++ library: congruences are found by filtering all
partitions of the universe, matrix sets by naive closure over quadruples,
commutators as the meet of all centralizing congruences (not by iterated
forcing), and free algebras by vector closure.  Output from this script is
frozen into tests/ as expected constants.

Usage:
  oracle.py report <algebra.alg>     full JSON report (congruences, tables,
                                     centrality, commutators, pentagons,
                                     property verdicts)
  oracle.py free <algebra.alg> <k>   size of the free algebra on k generators
"""

import itertools
import json
import sys


# ===== algebra files =====

def parse(path):
    with open(path) as f:
        alg = json.load(f)
    n = alg["size"]
    for op in alg["operations"]:
        assert len(op["table"]) == n ** op["arity"]
        assert all(0 <= v < n for v in op["table"])
    return alg


def apply_op(alg, op, args):
    idx = 0
    for a in args:
        idx = idx * alg["size"] + a
    return op["table"][idx]


# ===== partitions (canonical least-representative form) =====

def all_partitions(n):
    """All partitions of {0..n-1} as rep tuples, via restricted growth."""
    results = []

    def grow(prefix, blocks):
        i = len(prefix)
        if i == n:
            results.append(tuple(prefix))
            return
        for b in blocks:
            grow(prefix + [b], blocks)
        grow(prefix + [i], blocks + [i])

    grow([], [])
    return results


def related(p, a, b):
    return p[a] == p[b]


def pairs_of(p):
    n = len(p)
    return [(a, b) for a in range(n) for b in range(n) if p[a] == p[b]]


def canon(parent):
    """Canonicalize: rep[i] = least element of i's class."""
    n = len(parent)
    rep = list(parent)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if rep[rep[i]] < rep[i]:
                rep[i] = rep[rep[i]]
                changed = True
    return tuple(rep)


def join(p, q):
    n = len(p)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def unite(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[max(a, b)] = min(a, b)

    for i in range(n):
        unite(i, p[i])
        unite(i, q[i])
    for i in range(n):
        find(i)
    return canon(tuple(find(i) for i in range(n)))


def meet(p, q):
    n = len(p)
    key = {}
    rep = []
    for i in range(n):
        k = (p[i], q[i])
        if k not in key:
            key[k] = i
        rep.append(key[k])
    return tuple(rep)


def leq(p, q):
    return meet(p, q) == p


def to_text(p):
    blocks = {}
    for i, r in enumerate(p):
        blocks.setdefault(r, []).append(i)
    return "|".join(",".join(map(str, blocks[r])) for r in sorted(blocks))


# ===== congruences =====

def is_congruence(alg, p):
    n = alg["size"]
    for op in alg["operations"]:
        k = op["arity"]
        for args in itertools.product(range(n), repeat=k):
            for pos in range(k):
                for b in range(n):
                    if related(p, args[pos], b):
                        other = list(args)
                        other[pos] = b
                        if not related(p, apply_op(alg, op, args),
                                       apply_op(alg, op, other)):
                            return False
    return True


def congruences(alg):
    return [p for p in all_partitions(alg["size"]) if is_congruence(alg, p)]


# ===== matrix sets and centrality =====

def matrix_set(alg, alpha, beta):
    gens = set()
    for (a, b) in pairs_of(alpha):
        gens.add((a, a, b, b))
    for (u, v) in pairs_of(beta):
        gens.add((u, v, u, v))
    closed = set(gens)
    frontier = True
    while frontier:
        frontier = False
        cur = list(closed)
        for op in alg["operations"]:
            k = op["arity"]
            for args in itertools.product(cur, repeat=k):
                quad = tuple(apply_op(alg, op, [args[i][c] for i in range(k)])
                             for c in range(4))
                if quad not in closed:
                    closed.add(quad)
                    frontier = True
    return closed


def centralizes(alg, alpha, beta, delta, mset=None):
    if mset is None:
        mset = matrix_set(alg, alpha, beta)
    for (p, q, r, s) in mset:
        if related(delta, p, q) and not related(delta, r, s):
            return False
    return True


def commutator(alg, alpha, beta, congs, msets):
    """[alpha,beta] = meet of all congruences delta with C(alpha,beta;delta)."""
    result = None
    for d in congs:
        if centralizes(alg, alpha, beta, d, msets[(alpha, beta)]):
            result = d if result is None else meet(result, d)
    return result


# ===== pentagons =====

def pentagons(congs):
    found = []
    for bot, beta, delta, theta, top in itertools.permutations(congs, 5):
        if not (leq(delta, theta) and delta != theta):
            continue
        if leq(beta, theta) or leq(theta, beta) or leq(beta, delta) or leq(delta, beta):
            continue
        if meet(beta, theta) != bot or meet(beta, delta) != bot:
            continue
        if join(beta, theta) != top or join(beta, delta) != top:
            continue
        found.append([to_text(x) for x in (bot, beta, delta, theta, top)])
    return sorted(found)


# ===== free algebras =====

def free_size(alg, k):
    n = alg["size"]
    assignments = list(itertools.product(range(n), repeat=k))
    gens = [tuple(a[v] for a in assignments) for v in range(k)]
    closed = set(gens)
    frontier = True
    while frontier:
        frontier = False
        cur = list(closed)
        for op in alg["operations"]:
            for args in itertools.product(cur, repeat=op["arity"]):
                vec = tuple(apply_op(alg, op, [args[i][c] for i in range(len(args))])
                            for c in range(len(assignments)))
                if vec not in closed:
                    closed.add(vec)
                    frontier = True
    return len(closed)


# ===== report =====

def report(path):
    alg = parse(path)
    congs = congruences(alg)
    congs.sort()
    bot = congs[0]
    for c in congs:
        if all(leq(c, d) for d in congs):
            bot = c
    top = [c for c in congs if all(leq(d, c) for d in congs)][0]

    msets = {}
    for a in congs:
        for b in congs:
            msets[(a, b)] = matrix_set(alg, a, b)

    comm = {}
    cent = []
    for a in congs:
        for b in congs:
            comm[(a, b)] = commutator(alg, a, b, congs, msets)
            for d in congs:
                if centralizes(alg, a, b, d, msets[(a, b)]):
                    cent.append([to_text(a), to_text(b), to_text(d)])

    right_ann = []
    for b in congs:
        for d in congs:
            centralizing = [y for y in congs
                            if centralizes(alg, b, y, d, matrix_set(alg, b, y))]
            j = centralizing[0]
            for y in centralizing[1:]:
                j = join(j, y)
            exists = any(y == j for y in centralizing)
            right_ann.append({"beta": to_text(b), "delta": to_text(d),
                              "exists": exists,
                              "join": to_text(j)})

    out = {
        "name": alg["name"],
        "congruences": [to_text(c) for c in congs],
        "commutator": [[to_text(a), to_text(b), to_text(v)]
                       for (a, b), v in sorted(comm.items())],
        "centralizes": sorted(cent),
        "pentagons": pentagons(congs),
        "right_annihilators": right_ann,
        "bottom": to_text(bot),
        "top": to_text(top),
    }
    json.dump(out, sys.stdout, indent=1)
    print()


def main():
    if len(sys.argv) < 3:
        print(__doc__)
        return 1
    if sys.argv[1] == "report":
        report(sys.argv[2])
    elif sys.argv[1] == "free":
        alg = parse(sys.argv[2])
        print(free_size(alg, int(sys.argv[3])))
    else:
        print(__doc__)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
