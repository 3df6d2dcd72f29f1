"""Shared randomized-case generators and independent brute-force oracles."""

from __future__ import annotations

import random
from fractions import Fraction

from cipherorder import (
    CipherDist,
    GroupTable,
    closure,
    stabilizer,
    uniform_on,
)
from cipherorder.perms import Permutation, compose


def rational_prob_vector(
    rng: random.Random, n: int, max_weight: int = 9, allow_zeros: bool = True
) -> list[Fraction]:
    low = 0 if allow_zeros else 1
    weights = [rng.randint(low, max_weight) for _ in range(n)]
    if sum(weights) == 0:
        weights[rng.randrange(n)] = 1
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def t_transform(rng: random.Random, y: list[Fraction]) -> list[Fraction]:
    """One random T-transform of y; the result is always majorized by y."""
    i, j = rng.sample(range(len(y)), 2)
    lam = Fraction(rng.randint(0, 12), 12)
    x = list(y)
    x[i] = lam * y[i] + (1 - lam) * y[j]
    x[j] = (1 - lam) * y[i] + lam * y[j]
    return x


def majorized_pair(
    rng: random.Random, n: int, transforms: int | None = None
) -> tuple[list[Fraction], list[Fraction]]:
    """(x, y) with x guaranteed majorized by y."""
    y = rational_prob_vector(rng, n)
    x = list(y)
    for _ in range(transforms if transforms is not None else rng.randint(1, 3)):
        x = t_transform(rng, x)
    return x, y


def random_subgroup(rng: random.Random, group: GroupTable) -> GroupTable:
    """A varied-size subgroup: trivial, a point stabilizer, cyclic, or
    generated by two random elements."""
    kind = rng.choice(["trivial", "stab", "cyclic", "two-gen"])
    if kind == "trivial":
        return closure([group.identity])
    if kind == "stab":
        return stabilizer(group, (rng.randrange(group.degree),))
    if kind == "cyclic":
        return closure([rng.choice(group.elements)])
    return closure([rng.choice(group.elements), rng.choice(group.elements)])


def random_dist_on(
    rng: random.Random, group: GroupTable, subgroup: GroupTable
) -> CipherDist:
    """Random exact distribution supported inside a subgroup (zeros allowed)."""
    indices = group.indices_of(subgroup)
    weights = rational_prob_vector(rng, len(indices))
    mass = [Fraction(0)] * group.order
    for i, w in zip(indices, weights):
        mass[i] = w
    return CipherDist(group, tuple(mass))


def random_dist(rng: random.Random, group: GroupTable) -> CipherDist:
    weights = rational_prob_vector(rng, group.order)
    return CipherDist(group, tuple(weights))


def convolve_oracle(x: CipherDist, y: CipherDist) -> CipherDist:
    """Brute-force product distribution: sum over all factor pairs (a, b)
    of x(a) y(b) at a*b (b applied first)."""
    group = x.group
    out = [Fraction(0)] * group.order
    for i, a in enumerate(group.elements):
        if x.mass[i] == 0:
            continue
        for j, b in enumerate(group.elements):
            if y.mass[j] == 0:
                continue
            out[group.index(compose(a, b))] += x.mass[i] * y.mass[j]
    return CipherDist(group, tuple(out))


def enumerate_subgroup_oracle(generators: list[Permutation]) -> set[Permutation]:
    """Closure by repeated squaring of the product set until stable."""
    current = set(generators)
    from cipherorder.perms import identity

    current.add(identity(generators[0].degree))
    while True:
        nxt = set(current)
        for a in current:
            for b in current:
                nxt.add(compose(a, b))
        if nxt == current:
            return current
        current = nxt


def half_l1_to_uniform(xs: list[Fraction]) -> Fraction:
    """Direct definition of variation distance to uniformity."""
    n = len(xs)
    share = Fraction(1, n)
    return sum((abs(v - share) for v in xs), Fraction(0)) / 2


def set_product_support(x: CipherDist, y: CipherDist) -> set[int]:
    """Setwise product of the supports (b applied first)."""
    group = x.group
    out = set()
    for i in x.support():
        for j in y.support():
            out.add(group.index(compose(group.element(i), group.element(j))))
    return out
