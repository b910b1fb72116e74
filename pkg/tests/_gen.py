"""Random instance generators shared by the test modules."""

from __future__ import annotations

import random

import numpy as np

from cardcomp.algebra import AtomSet, AtomSpace, term_for
from cardcomp.semantics import INF, random_model
from cardcomp.syntax import Literal
from cardcomp.syntax.schemas import FullBinaryTree


def random_atomset(rng: random.Random, size: int) -> AtomSet:
    return AtomSet(rng.getrandbits(size), size)


def literal_corpus(n: int = 600, seed: int = 2024, labels=("a", "b"), max_literals: int = 5):
    """Random literal conjunctions over at most two labels."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        names = labels[: rng.randint(1, len(labels))]
        space = AtomSpace.of(names)
        branch = []
        for _ in range(rng.randint(1, max_literals)):
            x = term_for(random_atomset(rng, space.size), space)
            y = term_for(random_atomset(rng, space.size), space)
            branch.append(Literal(rng.random() < 0.6, x, y))
        out.append((tuple(names), tuple(branch)))
    return out


def balanced_instance(rng: random.Random, size: int, k: int, l: int):
    """AtomSets ``s, e, t, f`` with ``<s, e x l>`` balanced against ``<t, f x l>``."""
    s = [random_atomset(rng, size) for _ in range(k)]
    e = random_atomset(rng, size)
    f_bits, t_bits = 0, [0] * k
    for a in range(size):
        c = sum(x.bits >> a & 1 for x in s) + l * (e.bits >> a & 1)
        in_f = c > k or (c >= l and rng.random() < 0.5)
        if in_f:
            f_bits |= 1 << a
            c -= l
        for i in rng.sample(range(k), c):
            t_bits[i] |= 1 << a
    return s, e, [AtomSet(b, size) for b in t_bits], AtomSet(f_bits, size)


def random_tree(rng: random.Random, depth: int = 2) -> FullBinaryTree:
    nodes = [""]
    frontier = [""]
    while frontier:
        node = frontier.pop()
        if len(node) < depth and rng.random() < 0.5:
            nodes += [node + "0", node + "1"]
            frontier += [node + "0", node + "1"]
    return FullBinaryTree(tuple(nodes))


def cover_sets(rng: random.Random, tree: FullBinaryTree, root: AtomSet) -> dict:
    """Cover sets where every inner node lies inside the union of its children."""
    u = {"": root}
    for node in tree.nodes:
        if tree.is_leaf(node):
            continue
        left = right = 0
        for a in u[node].atoms():
            r = rng.random()
            if r < 0.4:
                left |= 1 << a
            elif r < 0.8:
                right |= 1 << a
            else:
                left |= 1 << a
                right |= 1 << a
        u[node + "0"] = AtomSet(left, root.size)
        u[node + "1"] = AtomSet(right, root.size)
    return u


def as_terms(sets, space):
    return [term_for(s, space) for s in sets]


def model_tensor(labels, kind: str, seeds, max_measures: int = 3, max_value: int = 4,
                 infinity_probability: float = 0.25):
    """Random models stacked as ``(models, max_measures, atoms)``, zero padded."""
    models = [random_model(labels, kind, seed, max_measures, max_value, infinity_probability)
              for seed in seeds]
    size = 1 << len(labels)
    arr = np.zeros((len(models), max_measures, size))
    for i, m in enumerate(models):
        for j, mu in enumerate(m.measures):
            arr[i, j] = [np.inf if v == INF else v for v in mu]
    return models, arr
