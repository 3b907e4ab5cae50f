"""Random problem generators shared by the property and acceptance tests."""

import random

from stiefeldeg.polycore import PolyMatrix, Ring
from stiefeldeg.stiefel import StiefelProblem

RING3 = Ring(["x", "y", "z"])


def affine_entry(rng, ring, bound=3):
    p = ring.const(rng.randint(-bound, bound))
    for v in ring.gens():
        p = p + v * rng.randint(-bound, bound)
    return p


def random_f(rng, ring):
    """A sphere-like quadric c - sum a_i x_i^2 + linear terms."""
    f = ring.const(rng.randint(1, 6))
    for v in ring.gens():
        f = f - v * v * rng.randint(1, 3) + v * rng.randint(-1, 1)
    return f


def random_affine_problem(rng, n=4, k=2, ring=RING3):
    rows = [[affine_entry(rng, ring) for _ in range(k)] for _ in range(n)]
    return StiefelProblem(PolyMatrix(rows, ring), random_f(rng, ring))


def random_instances(seed, count, shapes=((4, 2), (5, 3))):
    rng = random.Random(seed)
    for i in range(count):
        n, k = shapes[i % len(shapes)]
        yield random_affine_problem(rng, n, k)
