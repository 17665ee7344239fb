"""Naive classification of small digraphs, independent of the Rust code.

For each labelled digraph on n vertices (arrow (i, j) is bit i*n + j):
homogeneous   every isomorphism between nonempty induced substructures
              extends to an automorphism;
uniform       additionally, every nonempty subset A has a homomorphic
              choice aut(A) -> aut(S) of extensions (brute force over all
              choice functions).
Isomorphism classes are counted via the lexicographically least relabelled
mask.

usage: python3 digraph_oracle.py MAX_N
       python3 digraph_oracle.py --classes N < oracle_output
The second form reads `class MASK` lines (as printed by digraph_oracle.cpp)
and reports how many of those classes are not uniformly homogeneous.
"""
import itertools
import sys


def adj(mask, n, i, j):
    return mask >> (i * n + j) & 1


def relabel(mask, n, p):
    out = 0
    for i in range(n):
        for j in range(n):
            if adj(mask, n, i, j):
                out |= 1 << (p[i] * n + p[j])
    return out


def automorphisms(mask, n):
    return [p for p in itertools.permutations(range(n)) if relabel(mask, n, p) == mask]


def is_partial_iso(mask, n, dom, img):
    return all(adj(mask, n, a, b) == adj(mask, n, c, d)
               for (a, c) in zip(dom, img) for (b, d) in zip(dom, img))


def homogeneous(mask, n, aut):
    for k in range(1, n + 1):
        for dom in itertools.combinations(range(n), k):
            for img in itertools.permutations(range(n), k):
                if is_partial_iso(mask, n, dom, img):
                    if not any(all(g[a] == b for a, b in zip(dom, img)) for g in aut):
                        return False
    return True


def compose(g, h):
    return tuple(g[h[x]] for x in range(len(h)))


def uniform(mask, n, aut):
    for k in range(1, n + 1):
        for dom in itertools.combinations(range(n), k):
            local = [p for p in itertools.permutations(range(k))
                     if is_partial_iso(mask, n, dom, [dom[i] for i in p])]
            choices = [[g for g in aut if all(g[dom[i]] == dom[p[i]] for i in range(k))]
                       for p in local]
            index = {p: i for i, p in enumerate(local)}
            found = False
            for pick in itertools.product(*choices):
                if all(compose(pick[a], pick[b]) == pick[index[compose(local[a], local[b])]]
                       for a in range(len(local)) for b in range(len(local))):
                    found = True
                    break
            if not found:
                return False
    return True


def classes_from_stdin(n):
    masks = [int(line.split()[1]) for line in sys.stdin if line.startswith("class ")]
    bad = [m for m in masks if not uniform(m, n, automorphisms(m, n))]
    print(f"n={n} classes={len(masks)} non_uniform={len(bad)} {bad}")


def main():
    if sys.argv[1] == "--classes":
        classes_from_stdin(int(sys.argv[2]))
        return
    max_n = int(sys.argv[1])
    for n in range(1, max_n + 1):
        perms = list(itertools.permutations(range(n)))
        labelled = 0
        classes = {}
        for mask in range(1 << (n * n)):
            aut = automorphisms(mask, n)
            if not homogeneous(mask, n, aut):
                continue
            labelled += 1
            canon = min(relabel(mask, n, p) for p in perms)
            if canon not in classes:
                classes[canon] = uniform(mask, n, aut)
        non_uniform = sum(1 for u in classes.values() if not u)
        print(f"n={n} homogeneous_labelled={labelled} classes={len(classes)} non_uniform={non_uniform}")


if __name__ == "__main__":
    main()
