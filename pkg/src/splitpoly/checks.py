"""Theorem checks run by ``splitpoly check``.

Each check returns ``(passed, detail)``.  ``fast`` checks stay at n <= 6 and
finish in well under a minute; ``full`` adds the n = 7 instances.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb, factorial
from typing import Callable

from .geometry import affine_rank, facet_sieve, irredundant_facets, is_vertex_of, vertex_enumerate
from .inference import consistency_trial
from .networks import (
    double_factorial,
    enumerate_binary_trees,
    enumerate_level1_networks,
    enumerate_trees,
    sigma_splits,
)
from .polytopes import (
    chamber_overlap,
    csn_f_vector,
    network_face,
    polytope_vertices,
    relaxed_bme,
    split_face_inequality,
    tree_face_map,
)
from .splits import SplitSystem, all_orderings, consistent_orderings, row_sums
from .vectors import bme_vector, incidence_vector, network_vector

__all__ = ["Check", "CHECKS", "run_checks"]


@dataclass(frozen=True)
class Check:
    name: str
    level: str
    run: Callable[[int], tuple[bool, str]]


def _bme5_facets(seed: int):
    verts = [bme_vector(t) for t in enumerate_binary_trees(5)]
    f, r = len(facet_sieve(verts)), affine_rank(verts)
    return f == 52 and r == 5, f"{len(verts)} vertices, {f} facets, affine rank {r}"


def _relaxed5(seed: int):
    p = relaxed_bme(5)
    vp = vertex_enumerate(p)
    trees = {bme_vector(t) for t in enumerate_binary_trees(5)}
    hits = sum(v in trees for v in vp.vertices)
    facets = len(irredundant_facets(p, vp))
    return (len(vp), hits, facets) == (27, 15, 40), f"{len(vp)} vertices ({hits} trees), {facets} facets"


def _vertex_counts(top: int):
    def run(seed: int):
        got = []
        for n in range(4, top + 1):
            a, b = len(polytope_vertices(n, 0)), len(polytope_vertices(n, n - 3))
            if (a, b) != (factorial(n - 1) // 2, double_factorial(2 * n - 5)):
                return False, f"n={n}: {a}, {b}"
            got.append(f"{a}/{b}")
        return True, " ".join(got)

    return run


def _dimension(ns):
    def run(seed: int):
        for n in ns:
            for k in range(n - 2):
                r = affine_rank(polytope_vertices(n, k).vertices)
                if r != comb(n, 2) - n:
                    return False, f"BME({n},{k}) has affine rank {r}"
        return True, f"rank C(n,2)-n for n in {list(ns)}, all k"

    return run


def _degree(top: int):
    def run(seed: int):
        for n in range(4, top + 1):
            for k in range(n - 2):
                for v in polytope_vertices(n, k).vertices:
                    if set(row_sums(v, n)) != {2 ** (k + 1)}:
                        return False, f"n={n} k={k} vertex {v}"
        return True, f"all row sums 2^(k+1), n <= {top}"

    return run


def _summation(top: int):
    def run(seed: int):
        total = 0
        for n in range(4, top + 1):
            for k in range(n - 2):
                for net in enumerate_level1_networks(n, k):
                    cons = consistent_orderings(sigma_splits(net))
                    acc = [0] * (n * (n - 1) // 2)
                    for c in cons:
                        acc = [a + b for a, b in zip(acc, incidence_vector(c))]
                    if tuple(acc) != network_vector(net) or len(cons) != 2**k:
                        return False, f"network {net}"
                    total += 1
        return True, f"{total} networks"

    return run


def one_nested_systems(n: int) -> dict:
    """Distinct displayed split systems of level-1 networks, with the most bridges seen."""
    out = {}
    for k in range(n - 2):
        for net in enumerate_level1_networks(n, k):
            out.setdefault(sigma_splits(net), net)
    return out


def _network_faces(n: int):
    def run(seed: int):
        checked = 0
        vectors = {k: [(network_vector(s), sigma_splits(s)) for s in enumerate_level1_networks(n, k)]
                   for k in range(n - 2)}
        for ss, net in one_nested_systems(n).items():
            for k in range(net.k + 1):
                face = network_face(net, n, k)
                for x, sigma in vectors[k]:
                    val = face.functional(x)
                    if val < 0 or ((val == 0) != (ss.splits <= sigma.splits)):
                        return False, f"S={ss} k={k} s'={sigma}"
                    checked += 1
        face12 = network_face(SplitSystem.of(5, [[1, 2]]), 5, 1)
        ok = len(face12.vertices) == 9
        return ok, f"{checked} (S, k, s') triples; 12|345 face of BME(5,1) has {len(face12.vertices)} vertices"

    return run


def _split_facet_rank(seed: int):
    ranks = []
    for k in range(4):
        f = split_face_inequality([1, 2, 3], 6, k)
        tight = [v for v in polytope_vertices(6, k).vertices if f.tight(v)]
        ranks.append(affine_rank(tight))
    return ranks == [8] * 4, f"ranks {ranks}"


def _tree_faces(seed: int):
    n = 5
    binaries = enumerate_binary_trees(n)
    faces = {}
    for t in enumerate_trees(n):
        face = tree_face_map(t)
        for b in binaries:
            val = face.functional(bme_vector(b))
            if val < 0 or ((val == 0) != (b.splits >= t.splits)):
                return False, f"t={t} t'={b}"
        faces[t] = frozenset(face.vertices)
    if len(set(faces.values())) != len(faces):
        return False, "face map not injective"
    for t, u in itertools.permutations(faces, 2):
        if t.splits >= u.splits and not faces[t] <= faces[u]:
            return False, f"order not reversed for {t} > {u}"
    return True, f"{len(faces)} trees, injective and order-reversing"


def _csn(seed: int):
    f4, f5 = csn_f_vector(4), csn_f_vector(5)
    ov5 = max(chamber_overlap(a, b) for a, b in itertools.combinations(all_orderings(5), 2))
    ov6 = max(chamber_overlap(a, b) for a, b in itertools.combinations(all_orderings(6), 2))
    ok = f4 == [3, 3] and f5[0] == 10 and len(f5) - 1 == 4 and f5[-1] > 0 and ov5 == 2 and ov6 <= 5
    return ok, f"f(4)={f4} f(5)={f5} max overlap n=5: {ov5}, n=6: {ov6}"


def _inference(ns, per_tree: bool):
    def run(seed: int):
        trials = 0
        for t in enumerate_binary_trees(5):
            rep = consistency_trial(t, trials=1, seed=seed, w={s: 1 for s in t.all_splits()})
            trials += 1
            if rep.successes != 1:
                return False, f"unit weights on {t}"
        rng = random.Random(seed)
        for n in ns:
            trees = enumerate_binary_trees(n)
            jobs = [(t, i) for t in trees for i in range(25)] if (per_tree and n == 5) else [
                (rng.choice(trees), i) for i in range(25)
            ]
            for t, i in jobs:
                rep = consistency_trial(t, trials=1, seed=seed * 1000 + i)
                o = rep.outcomes[0]
                trials += 1
                if not (o.bme_recovered and o.polysplit_recovered and o.polysplit_value == o.bme_value):
                    return False, f"n={n} tree {t} seed {seed * 1000 + i}"
        return True, f"{trials} trials recovered"

    return run


def _vertex_claim(ns):
    def run(seed: int):
        for n in ns:
            p = relaxed_bme(n)
            bad = [t for t in enumerate_binary_trees(n) if not is_vertex_of(bme_vector(t), p)]
            if bad:
                return False, f"n={n}: {len(bad)} tree vectors are not vertices (e.g. {bad[0]})"
        return True, f"all tree vectors are vertices for n in {list(ns)}"

    return run


CHECKS = [
    Check("BME(5) has 52 facets and affine rank 5", "fast", _bme5_facets),
    Check("relaxed BME(5): 27 vertices (15 trees), 40 facets", "fast", _relaxed5),
    Check("vertex counts (n-1)!/2 and (2n-5)!!", "fast", _vertex_counts(6)),
    Check("dimension of BME(n,k) is C(n,2)-n", "fast", _dimension((5, 6))),
    Check("degree identity", "fast", _degree(6)),
    Check("summation identity and 2^k consistent orderings", "fast", _summation(6)),
    Check("network faces: tight iff refinement (n=5) and the 12|345 face", "fast", _network_faces(5)),
    Check("network faces: tight iff refinement (n=6)", "full", _network_faces(6)),
    Check("split inequality |A|=3 is a facet of BME(6,k)", "fast", _split_facet_rank),
    Check("tree faces: tight iff refinement, injective, order-reversing (n=5)", "fast", _tree_faces),
    Check("CSN f-vectors and chamber overlaps", "fast", _csn),
    Check("PolySplit recovers additive trees (n=5, 6)", "fast", _inference((5, 6), per_tree=True)),
    Check("tree vectors are vertices of the relaxation (n=4..6)", "fast", _vertex_claim((4, 5, 6))),
    Check("tree vectors are vertices of the relaxation (n=7)", "full", _vertex_claim((7,))),
]


def run_checks(level: str = "fast", seed: int = 0, out=print) -> bool:
    levels = {"fast": {"fast"}, "full": {"fast", "full"}}[level]
    ok = True
    for check in CHECKS:
        if check.level not in levels:
            continue
        passed, detail = check.run(seed)
        ok &= passed
        out(f"{'PASS' if passed else 'FAIL'}  {check.name}: {detail}")
    return ok
