import random

from hypothesis import settings

from nielsen import linalg

settings.register_profile("default", deadline=None, max_examples=50, print_blob=True)
settings.load_profile("default")


def random_unimodular(n, rng, steps=None, coeff=2, with_inverse=False):
    """Product of random elementary column operations and sign flips.

    With ``with_inverse`` the inverse is tracked alongside by the matching
    row operations.
    """
    m, inv = linalg.identity(n), linalg.identity(n)
    for _ in range(steps if steps is not None else 3 * n):
        if n > 1:
            i, j = rng.sample(range(n), 2)
            q = rng.randint(-coeff, coeff)
            for r in range(n):
                m[r][i] += q * m[r][j]
            for c in range(n):
                inv[j][c] -= q * inv[i][c]
        if rng.random() < 0.2:
            i = rng.randrange(n)
            for r in range(n):
                m[r][i] = -m[r][i]
            inv[i] = [-x for x in inv[i]]
    return (m, inv) if with_inverse else m


def random_symmetric(n, rng, lo=-3, hi=3):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = rng.randint(lo, hi)
    return g


def rng_for(seed):
    return random.Random(seed)


# blocks for random orthogonal configurations: (lattice expr, class or None)
TWIST_BLOCKS = [
    ("U", (1, -1)),        # norm -2
    ("U", (1, 1)),         # norm +2
    ("D4", (1, 0, 0, 0)),  # a root, norm -2
    ("2*<1>", (1, 1)),     # norm +2
    ("2*<-1>", (1, 1)),    # norm -2
    ("<1>", None), ("<-1>", None), ("U", None),
]
REFLECTION_BLOCKS = [("<-1>", (1,)), ("<-1>", (1,)), ("<1>", None), ("U", None), ("<-1>", None)]


def random_configuration(rng, blocks, max_rank=10, scramble=True):
    """Direct sum of random blocks with one class per marked block, in a scrambled basis.

    Returns (lattice, classes) with classes given in the scrambled coordinates.
    """
    from nielsen.lattice import Lattice, direct_sum, standard_lattice

    lat, classes, offset = standard_lattice(""), [], 0
    while True:
        expr, cls = rng.choice(blocks)
        piece = standard_lattice(expr)
        if lat.rank + piece.rank > max_rank:
            break
        if cls is not None:
            classes.append((offset, cls))
        lat = direct_sum(lat, piece)
        offset += piece.rank
        if rng.random() < 0.15:
            break
    n = lat.rank
    vecs = []
    for off, cls in classes:
        v = [0] * n
        v[off:off + len(cls)] = cls
        vecs.append(v)
    if n == 0 or not scramble:
        return lat, vecs
    s, sinv = random_unimodular(n, rng, coeff=1, with_inverse=True)
    g = linalg.congruent(lat.matrix, s)
    return Lattice.from_rows(g), [linalg.matvec(sinv, v) for v in vecs]


# acceptance criterion number -> (title, passed)
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
