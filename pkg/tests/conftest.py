"""Shared helpers: randomized semilattice amalgams.

Meet-semilattices are modeled as intersection-closed set families, so a
common subsemilattice is literally a common subfamily and both
embeddings are inclusions.
"""

import random

from opuntia.catalog import meet_semilattice
from opuntia.amalgams import Amalgam


def _closed_family(rng, ground, seed_family=(), max_extra=3):
    fam = set(seed_family)
    for _ in range(rng.randint(1, max_extra)):
        fam.add(frozenset(x for x in ground if rng.random() < 0.5))
    while True:
        extra = {a & b for a in fam for b in fam} - fam
        if not extra:
            return fam
        fam |= extra


def _named(fam, prefix):
    ordered = sorted(fam, key=lambda s: (-len(s), sorted(s)))
    names = [f"{prefix}{k}" for k in range(len(ordered))]
    return meet_semilattice(ordered, names=names), dict(zip(ordered, names))


def random_semilattice_amalgam(rng: random.Random, max_ground=3,
                               max_extra=3) -> Amalgam:
    ground = range(rng.randint(1, max_ground))
    base = _closed_family(rng, ground, max_extra=max_extra)
    f1 = _closed_family(rng, ground, seed_family=base, max_extra=max_extra)
    f2 = _closed_family(rng, ground, seed_family=base, max_extra=max_extra)
    u, uname = _named(base, "u")
    s1, name1 = _named(f1, "a")
    s2, name2 = _named(f2, "b")
    phi1 = {uname[s]: name1[s] for s in base}
    phi2 = {uname[s]: name2[s] for s in base}
    return Amalgam(s1, s2, u, phi1, phi2,
                   name=f"random-semilattice-{len(f1)}x{len(f2)}")


def random_word(rng: random.Random, a: Amalgam, max_len=3):
    letters = []
    for _ in range(rng.randint(1, max_len)):
        letters.append(rng.randrange(a.alphabet.n_letters()))
    return tuple(letters)
