"""Independent oracles shared by the property suites and the acceptance run."""

import itertools
import random

from bianchi_cls.fpgroup import Limits, Presentation, Word, todd_coxeter


def family(rnd):
    kind = rnd.choice(["cyclic", "dihedral", "triangle", "abelian", "quaternion"])
    if kind == "cyclic":
        n = rnd.randint(1, 30)
        return Presentation(["a"], [Word.gen(0, n)]), n
    if kind == "dihedral":
        n = rnd.randint(2, 25)
        return Presentation(["a", "b"], [Word.gen(0, n), Word.gen(1, 2), Word([(0, 1), (1, 1)]) ** 2]), 2 * n
    if kind == "triangle":
        n, order = rnd.choice([(3, 12), (4, 24), (5, 60)])
        return Presentation(["a", "b"], [Word.gen(0, 2), Word.gen(1, 3), Word([(0, 1), (1, 1)]) ** n]), order
    if kind == "abelian":
        m, n = rnd.randint(1, 8), rnd.randint(1, 8)
        comm = Word([(0, -1), (1, -1), (0, 1), (1, 1)])
        return Presentation(["a", "b"], [Word.gen(0, m), Word.gen(1, n), comm]), m * n
    # Q8
    return Presentation(["a", "b"], [Word.gen(0, 4), Word([(0, 2), (1, -2)]),
                                     Word([(1, -1), (0, 1), (1, 1), (0, 1)])]), 8


def random_word(rnd, ngens, length):
    return Word((rnd.randrange(ngens), rnd.choice([1, -1])) for _ in range(length))


def scramble(rnd, pres):
    """Tietze moves that preserve the group."""
    gens = list(pres.generators)
    rels = list(pres.relators)
    for _ in range(rnd.randint(0, 4)):
        move = rnd.randrange(4)
        if move == 0 and rels:
            i = rnd.randrange(len(rels))
            c = random_word(rnd, len(gens), rnd.randint(1, 3))
            rels[i] = c * rels[i] * c.inverse()
        elif move == 1 and rels:
            i = rnd.randrange(len(rels))
            rels[i] = rels[i].inverse()
        elif move == 2 and len(rels) >= 2:
            i, j = rnd.sample(range(len(rels)), 2)
            c = random_word(rnd, len(gens), rnd.randint(0, 2))
            rels.append(rels[i] * c * rels[j] * c.inverse())
        elif move == 3 and len(gens) < 4:
            w = random_word(rnd, len(gens), rnd.randint(1, 3))
            gens.append(f"x{len(gens)}")
            rels.append(Word.gen(len(gens) - 1, -1) * w)
    return Presentation(gens, rels)


def closure_size(perms):
    n = len(perms[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for g in perms:
            q = tuple(g[i] for i in p)
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    return len(seen)


def perm_of_word(table_perms, inv_perms, w):
    n = len(table_perms[0])
    cur = list(range(n))
    for g, e in w.syllables:
        p = table_perms[g] if e > 0 else inv_perms[g]
        for _ in range(abs(e)):
            cur = [p[c] for c in cur]
    return cur


def transitive_actions(pres, n):
    """Number of transitive actions of pres on {0..n-1}: an independent oracle."""
    count = 0
    for perms in itertools.product(itertools.permutations(range(n)), repeat=pres.ngens):
        inv = [[p.index(i) for i in range(n)] for p in perms]
        if any(perm_of_word(perms, inv, r) != list(range(n)) for r in pres.relators):
            continue
        orbit, frontier = {0}, [0]
        while frontier:
            x = frontier.pop()
            for p in list(perms) + inv:
                if p[x] not in orbit:
                    orbit.add(p[x])
                    frontier.append(p[x])
        count += len(orbit) == n
    return count


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))


def random_snf_trials(count, seed, snf, divisors):
    """Check SNF on random matrices against minor gcds; returns the number checked."""
    rnd = random.Random(seed)
    for trial in range(count):
        m, n = rnd.randint(1, 6), rnd.randint(1, 6)
        M = [[rnd.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        if trial % 7 == 0 and m > 1:
            M[-1] = [2 * x - y for x, y in zip(M[0], M[1])]
        factors, D, U, V = snf(M, transforms=True)
        dd = divisors(M)
        assert factors == [dd[k] // (dd[k - 1] if k else 1) for k in range(len(dd))], M
        assert matmul(matmul(U, M), V) == D
        assert abs(det(U)) == 1 and abs(det(V)) == 1
    return count


def random_coset_trials(count, seed):
    """Enumerate scrambled presentations of known finite groups; returns the number checked."""
    rnd = random.Random(seed)
    for trial in range(count):
        pres, order = family(rnd)
        pres = scramble(rnd, pres)
        table = todd_coxeter(pres, [], Limits(100_000, 60), "felsch" if trial % 3 == 0 else "hlt")
        assert table.index == order, str(pres)
        assert table.check()
        perms = table.permutations()
        inv = [[p.index(i) for i in range(len(p))] for p in perms]
        for r in pres.relators:
            assert perm_of_word(perms, inv, r) == list(range(order))
        assert closure_size([tuple(p) for p in perms]) == order
    return count
