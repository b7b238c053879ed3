"""Random finite sets for property sweeps."""

from __future__ import annotations

import random

from .boundary import FiniteSubset, boundaries
from .groups import GroupModel, LampElement, normalize_config
from .standard import standard_set_bs


def random_connected_set(model: GroupModel, size: int, rng: random.Random) -> FiniteSubset:
    """Grow from the identity by adding a uniformly chosen outside neighbour."""
    members = [model.identity]
    seen = {model.identity}
    frontier: list = []
    frontier_set: set = set()

    def push(x):
        for y in sorted(model.neighbors(x), key=repr):
            if y not in seen and y not in frontier_set:
                frontier.append(y)
                frontier_set.add(y)

    push(model.identity)
    while len(members) < size:
        i = rng.randrange(len(frontier))
        y = frontier[i]
        frontier[i] = frontier[-1]
        frontier.pop()
        frontier_set.discard(y)
        members.append(y)
        seen.add(y)
        push(y)
    return FiniteSubset(frozenset(members), model)


def random_box_set(model: GroupModel, size: int, rng: random.Random, cursor: int = 3, width: int = 4) -> FiniteSubset:
    """Uniform sample of lamplighter elements with cursor in [-cursor, cursor]
    and lamps in [0, width)."""
    d = model.order
    out = set()
    cap = (2 * cursor + 1) * d**width
    size = min(size, cap)
    while len(out) < size:
        word = [rng.randrange(d) for _ in range(width)]
        out.add(LampElement(rng.randint(-cursor, cursor), normalize_config(0, word)))
    return FiniteSubset(frozenset(out), model)


def random_lamp_set(model: GroupModel, max_size: int, rng: random.Random) -> FiniteSubset:
    size = rng.randint(1, max_size)
    if rng.random() < 0.5:
        return random_connected_set(model, size, rng)
    return random_box_set(model, size, rng, cursor=rng.randint(0, 3), width=rng.randint(1, 4))


def random_bs_low_ratio_set(p: int, rng: random.Random, max_tries: int = 1000) -> FiniteSubset:
    """A BS(1,p) set with edge ratio at most 1: a standard set F_n (n = 5..7
    for p = 2), left-translated, with random elements removed and random
    neighbours added."""
    model = GroupModel.bs(p)
    for _ in range(max_tries):
        n = rng.choice((5, 5, 6, 7)) if p == 2 else rng.choice((4, 5))
        base = list(standard_set_bs(p, n).elements)
        rng.shuffle(base)
        members = set(base[rng.randint(0, len(base) // 16) :])
        extra = rng.randint(0, len(base) // 16)
        pool = list(members)
        for _ in range(extra):
            members |= {rng.choice(sorted(model.neighbors(rng.choice(pool)), key=repr))}
        g = model.identity
        for _ in range(rng.randint(0, 6)):
            g = model.mul(g, rng.choice(model.symmetric_generators()))
        F = FiniteSubset(frozenset(model.mul(g, x) for x in members), model)
        if boundaries(F).edge_ratio <= 1:
            return F
    raise RuntimeError("no low-ratio set found")
