"""Random alternate modules for property and acceptance tests."""

import random
from math import gcd, prod

from hypothesis import strategies as st

from altmod import QZ, AlternateModule, kernel

REFERENCE_ORDERS = [2, 4, 8]
REFERENCE_GRAM = [["0/1", "1/2", "1/2"], ["1/2", "0/1", "-1/4"], ["1/2", "1/4", "0/1"]]


def reference_module():
    return AlternateModule(REFERENCE_ORDERS, REFERENCE_GRAM)


def random_gram(rng, orders):
    r = len(orders)
    gram = [[QZ() for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            g = gcd(orders[i], orders[j])
            q = QZ(rng.randrange(g), g)
            gram[i][j], gram[j][i] = q, -q
    return gram


def random_p_orders(rng, p, max_size):
    orders, size = [], 1
    while True:
        k = rng.randint(1, 4)
        if size * p**k > max_size or (orders and rng.random() < 0.2):
            break
        orders.append(p**k)
        size *= p**k
    return orders


def random_module(rng, max_size=1024, primes=(2, 3, 5), mixed=0.15):
    """Random p-group module; with probability ``mixed`` orders mix primes (e.g. Z/6, Z/12)."""
    if rng.random() < mixed:
        orders, size = [], 1
        for _ in range(rng.randint(1, 4)):
            d = rng.choice([2, 3, 4, 5, 6, 10, 12, 15])
            if size * d > max_size:
                break
            orders.append(d)
            size *= d
    else:
        orders = random_p_orders(rng, rng.choice(primes), max_size)
        rng.shuffle(orders)
    return AlternateModule(orders, random_gram(rng, orders))


def random_symplectic(rng, b_orders):
    """A random symplectic module on the group B x B (shuffled), by rejection."""
    orders = list(b_orders) * 2
    rng.shuffle(orders)
    while True:
        m = AlternateModule(orders, random_gram(rng, orders))
        if kernel(m).is_trivial():
            return m


@st.composite
def modules(draw, max_size=256):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_module(random.Random(seed), max_size=max_size)


def brute_elements(orders):
    from itertools import product

    return list(product(*(range(d) for d in orders)))


def size(orders):
    return prod(orders)
