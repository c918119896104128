"""Naive brute-force references, kept independent of the production search.

Everything here enumerates tuples over the whole symmetric group with no
pruning and no class-size shortcut, so it is only usable at tiny degree.
The production code is checked against these in the unit tests and the
values frozen in the spec examples were recomputed with them.
"""

import itertools


def perms(d):
    return list(itertools.permutations(range(d)))


def mul(a, b):
    return tuple(a[x] for x in b)


def inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def cycle_type(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


def is_transposition(p):
    return cycle_type(p) == tuple(sorted([2] + [1] * (len(p) - 2), reverse=True))


def transitive(d, gens):
    reach = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for gen in gens:
            y = gen[x]
            if y not in reach:
                reach.add(y)
                frontier.append(y)
    return len(reach) == d


def naive_count_factorizations(g, lam, mu):
    lam = tuple(sorted(lam, reverse=True))
    mu = tuple(sorted(mu, reverse=True))
    d = sum(lam)
    r = len(lam) + len(mu) + 2 * g - 2
    assert r >= 0
    allp = perms(d)
    taus = [p for p in allp if is_transposition(p)]
    count = 0
    for sigma1 in allp:
        if cycle_type(sigma1) != lam:
            continue
        for seq in itertools.product(taus, repeat=r):
            prod = sigma1
            for t in seq:
                prod = mul(t, prod)
            sigma2 = inverse(prod)
            if cycle_type(sigma2) != mu:
                continue
            if transitive(d, (sigma1, sigma2) + seq):
                count += 1
    return count


def naive_count_real_factorizations(g, lam, mu, s):
    lam = tuple(sorted(lam, reverse=True))
    mu = tuple(sorted(mu, reverse=True))
    d = sum(lam)
    r = len(lam) + len(mu) + 2 * g - 2
    assert 0 <= s <= r
    allp = perms(d)
    taus = [p for p in allp if is_transposition(p)]
    gammas = [p for p in allp if mul(p, p) == tuple(range(d))]
    count = 0
    for gamma in gammas:
        for sigma1 in allp:
            if cycle_type(sigma1) != lam:
                continue
            if mul(gamma, mul(sigma1, gamma)) != inverse(sigma1):
                continue
            for seq in itertools.product(taus, repeat=r):
                prod = sigma1
                ok = True
                for i, t in enumerate(seq, start=1):
                    prod = mul(t, prod)
                    if i <= s and mul(gamma, mul(prod, gamma)) != inverse(prod):
                        ok = False
                        break
                if not ok:
                    continue
                suffix = tuple(range(d))
                for j in range(s, len(seq)):
                    suffix = mul(seq[j], suffix)
                    if mul(gamma, mul(suffix, gamma)) != inverse(suffix):
                        ok = False
                        break
                if not ok:
                    continue
                sigma2 = inverse(prod)
                if cycle_type(sigma2) != mu:
                    continue
                if transitive(d, (sigma1, sigma2) + seq):
                    count += 1
    return count
