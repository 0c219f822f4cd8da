import itertools

from threepage.laurent import A, DELTA, Laurent


def naive_bracket(d):
    """Independent oracle: sum over all 2^n states with union-find loop counts."""
    n = d.crossing_count
    if n == 0 and d.free_loops() == 0:
        return Laurent(1)
    labels = sorted({e for c in d.crossings for e in c.pd})
    total = Laurent()
    for state in itertools.product((0, 1), repeat=n):
        parent = {e: e for e in labels}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for bit, c in zip(state, d.crossings):
            a, b, cc, dd = c.pd
            pairs = ((a, b), (cc, dd)) if bit == 0 else ((a, dd), (b, cc))
            for p, q in pairs:
                parent[find(p)] = find(q)
        loops = len({find(e) for e in labels}) + d.free_loops()
        total = total + A ** (n - 2 * sum(state)) * DELTA ** (loops - 1)
    w = d.self_writhe()
    return total * Laurent.monomial(-3 * w, -1 if w % 2 else 1)
