"""Shared test utilities: seeded random sparse elements per algebra kind."""

import random

from cartankit.scalars import ZERO, sc
from cartankit.tensor import LieElement, Window, family

SMALL_SCALARS = [
    sc(1),
    sc(-1),
    sc(2),
    sc(1, 2),
    sc(0, 1),
    sc(0, -1),
    sc(3),
    sc(-1, 3),
    sc(1, 1),
    sc(-2),
]


def random_element(rng: random.Random, kind: str, w: Window, terms: int = 3):
    """Random sparse element of the kind's window truncation."""
    fam = family(kind)
    idx = w.indices
    coeffs = {}
    for _ in range(terms):
        i = rng.choice(idx)
        j = rng.choice(idx)
        if fam == "so":
            if i == j:
                continue
            key = (min(i, j), max(i, j))
        elif fam == "sp":
            key = (min(i, j), max(i, j))
        else:
            key = (i, j)
        c = rng.choice(SMALL_SCALARS)
        coeffs[key] = coeffs.get(key, ZERO) + c
    coeffs = {k: v for k, v in coeffs.items() if v}
    x = LieElement(fam, coeffs)
    if kind == "sl":
        tr = x.trace()
        if tr:
            n = len(idx)
            shift = tr / sc(n)
            diag = {(i, i): -shift for i in idx}
            x = x + LieElement("gl", diag)
    return x


def random_vector_coords(rng: random.Random, w: Window, terms: int = 2):
    out = {}
    for _ in range(terms):
        out[rng.choice(w.indices)] = rng.choice(SMALL_SCALARS)
    return out
