"""The divisibility complex of determinant cross ratios and its S(n) symmetry.

Vertices are all DCRs for (m, n); two vertices span an edge when one
properly divides the other, and simplices are the cliques of that graph.
Internally simplices are tuples of vertex indices into ``cx.vertices``.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Optional, Sequence

from .config import Permutation, adjacent_transpositions
from .dcr import Dcr, divides, divisor_candidates, enumerate_dcrs, klein_orbit, permute
from .errors import ClassificationContradiction, InvalidDimension

FIRST = "first"
SECOND = "second"


def worker_count() -> int:
    """Parallelism cap from GENCONF_THREADS (default 1: run in-process)."""
    try:
        return max(1, int(os.environ.get("GENCONF_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class Simplex:
    vertices: tuple

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def unordered(self) -> "Simplex":
        return Simplex(tuple(sorted(self.vertices)))

    def faces(self) -> list:
        """Codimension-one faces (empty for a vertex)."""
        if len(self.vertices) == 1:
            return []
        return [Simplex(self.vertices[:p] + self.vertices[p + 1:]) for p in range(len(self.vertices))]

    def __str__(self):
        return "{" + "; ".join(map(str, self.vertices)) + "}"


@dataclass(frozen=True, eq=False)
class DivisibilityComplex:
    m: int
    n: int
    vertices: tuple
    adjacency: tuple
    index: dict = field(repr=False)
    _tables: dict = field(default_factory=dict, repr=False)

    def edges(self) -> list:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in sorted(nbrs) if u < v]

    def simplex(self, indices: Sequence[int]) -> Simplex:
        return Simplex(tuple(self.vertices[i] for i in indices))

    def indices_of(self, sx: Simplex) -> tuple:
        return tuple(self.index[v] for v in sx.vertices)

    def table(self, sigma: Permutation) -> tuple:
        """Vertex-index image of every vertex under sigma."""
        key = sigma.images
        tab = self._tables.get(key)
        if tab is None:
            tab = tuple(self.index[permute(sigma, v)] for v in self.vertices)
            self._tables[key] = tab
        return tab


def _neighbors(args):
    vertices, n, chunk = args
    out = []
    for v in chunk:
        mu = vertices[v]
        out.append(sorted(c for c in divisor_candidates(mu, n) if divides(c, mu)))
    return out


def build_complex(m: int, n: int, workers: Optional[int] = None) -> DivisibilityComplex:
    """Vertices from :func:`enumerate_dcrs`, edges from the divisibility predicate.

    Candidate neighbours come from :func:`divisor_candidates`; each is then
    confirmed with :func:`divides` before an edge is recorded.
    """
    vertices = tuple(enumerate_dcrs(m, n))
    index = {v: i for i, v in enumerate(vertices)}
    workers = workers or worker_count()
    ids = list(range(len(vertices)))
    if workers > 1 and len(vertices) > 2000:
        size = -(-len(ids) // workers)
        chunks = [ids[p:p + size] for p in range(0, len(ids), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_neighbors, [(vertices, n, c) for c in chunks]))
        nbr_lists = [row for part in parts for row in part]
    else:
        nbr_lists = _neighbors((vertices, n, ids))
    adjacency = [set() for _ in vertices]
    for u, nbrs in enumerate(nbr_lists):
        for d in nbrs:
            v = index[d]
            adjacency[u].add(v)
            adjacency[v].add(u)
    return DivisibilityComplex(m, n, vertices, tuple(frozenset(a) for a in adjacency), index)


def build_complex_bruteforce(m: int, n: int) -> DivisibilityComplex:
    """Reference construction testing :func:`divides` on every vertex pair."""
    vertices = tuple(enumerate_dcrs(m, n))
    index = {v: i for i, v in enumerate(vertices)}
    adjacency = [set() for _ in vertices]
    for u in range(len(vertices)):
        for v in range(u + 1, len(vertices)):
            if divides(vertices[u], vertices[v]):
                adjacency[u].add(v)
                adjacency[v].add(u)
    return DivisibilityComplex(m, n, vertices, tuple(frozenset(a) for a in adjacency), index)


# -- cliques -----------------------------------------------------------------


def clique_indices(cx: DivisibilityComplex, t: int) -> list:
    """All (t+1)-cliques as increasing tuples of vertex indices."""
    if t < 0:
        raise InvalidDimension(f"simplex dimension must be >= 0, got {t}")
    out = []
    adj = cx.adjacency

    def extend(clique, candidates):
        if len(clique) == t + 1:
            out.append(tuple(clique))
            return
        for v in sorted(candidates):
            clique.append(v)
            extend(clique, {u for u in candidates if u > v} & adj[v])
            clique.pop()

    for v in range(len(cx.vertices)):
        extend([v], {u for u in adj[v] if u > v})
    return out


def simplices(cx: DivisibilityComplex, t: int) -> list:
    return [cx.simplex(c) for c in clique_indices(cx, t)]


def maximal_cliques(cx: DivisibilityComplex) -> list:
    """Bron-Kerbosch with pivoting."""
    adj = cx.adjacency
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            bk(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    bk(set(), set(range(len(cx.vertices))), set())
    return out


def dimension(cx: DivisibilityComplex) -> int:
    if not cx.vertices:
        return -1
    return max(len(c) for c in maximal_cliques(cx)) - 1


# -- normal simplices and types -----------------------------------------------


def normal_simplex(kind: str, t: int, m: int, n: int) -> Simplex:
    """The ordered normal t-simplex of the first or second type."""
    hat = lambda s: tuple(i for i in range(1, m + 1) if i != s)  # noqa: E731
    if kind == FIRST:
        if not 0 <= t <= n - m - 3:
            raise InvalidDimension(f"first-type normal simplices need 0 <= t <= {n - m - 3}")
        verts = [Dcr(hat(m), (m, m + 1, m + 2, m + 3 + u)) for u in range(t + 1)]
    elif kind == SECOND:
        if not 0 <= t <= m - 1:
            raise InvalidDimension(f"second-type normal simplices need 0 <= t <= {m - 1}")
        verts = [Dcr(hat(s), (s, m + 1, m + 2, m + 3)) for s in range(m - t, m + 1)]
    else:
        raise ValueError(f"unknown simplex type {kind!r}")
    return Simplex(tuple(verts))


def classify(sx: Simplex) -> str:
    verts = sx.vertices
    if len(verts) < 2:
        raise InvalidDimension("only simplices of positive dimension have a type")
    supports = [v.support for v in verts]
    if all(s == supports[0] for s in supports):
        return SECOND
    same_ess = all(v.essential_support == verts[0].essential_support for v in verts)
    distinct = len(set(supports)) == len(supports)
    if same_ess and distinct:
        return FIRST
    raise ClassificationContradiction(f"simplex {sx} is of neither type")


# -- S(n) orbits -------------------------------------------------------------


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def orbit_indices(cx: DivisibilityComplex, t: int) -> list:
    """Orbits of unordered t-simplices, as lists of index tuples."""
    cliques = clique_indices(cx, t)
    pos = {c: p for p, c in enumerate(cliques)}
    uf = _UnionFind(len(cliques))
    for g in adjacent_transpositions(cx.n):
        tab = cx.table(g)
        for p, c in enumerate(cliques):
            uf.union(p, pos[tuple(sorted(tab[v] for v in c))])
    groups: dict = {}
    for p, c in enumerate(cliques):
        groups.setdefault(uf.find(p), []).append(c)
    return sorted(groups.values())


def orbits(cx: DivisibilityComplex, t: int) -> list:
    return [[cx.simplex(c) for c in orb] for orb in orbit_indices(cx, t)]


def ordered_orbit_size(cx: DivisibilityComplex, sx: Simplex) -> int:
    """Size of the S(n)-orbit of an ordered simplex, by breadth-first search."""
    start = cx.indices_of(sx)
    tables = [cx.table(g) for g in adjacent_transpositions(cx.n)]
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for tab in tables:
            img = tuple(tab[v] for v in cur)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return len(seen)


# -- permutations carrying vertices to vertices ----------------------------------


def solve_permutations(pairs, n: int, limit: Optional[int] = None) -> list:
    """All sigma in S(n) with permute(sigma, v) == w for every (v, w) in pairs.

    Backtracking: each pair fixes sigma on the quadruple of v up to the four
    Klein reorderings of w's quadruple; the remaining points are then matched
    under the set constraints sigma(ess v) = ess w and
    sigma(outside supp v) = outside supp w.
    """
    pairs = list(pairs)
    if any(v.m != w.m for v, w in pairs):
        return []
    results = []

    def consistent(assign):
        for v, w in pairs:
            for x, y in assign.items():
                if x in v.essential_support and y not in w.essential_support:
                    return False
                if x not in v.support and y in w.support:
                    return False
        return True

    def finish(assign):
        free = [x for x in range(1, n + 1) if x not in assign]
        unused = [y for y in range(1, n + 1) if y not in assign.values()]
        domains = {}
        for x in free:
            dom = set(unused)
            for v, w in pairs:
                if x in v.essential_support:
                    dom &= set(w.essential_support)
                elif x not in v.support:
                    dom -= w.support
                else:
                    dom = set()
            domains[x] = sorted(dom)
        free.sort(key=lambda x: len(domains[x]))

        def place(p, used):
            if limit is not None and len(results) >= limit:
                return
            if p == len(free):
                full = dict(assign)
                full.update(zip(free, placed))
                results.append(Permutation(tuple(full[i] for i in range(1, n + 1))))
                return
            for y in domains[free[p]]:
                if y not in used:
                    placed.append(y)
                    used.add(y)
                    place(p + 1, used)
                    used.discard(y)
                    placed.pop()

        placed: list = []
        place(0, set())

    def search(p, assign):
        if limit is not None and len(results) >= limit:
            return
        if p == len(pairs):
            finish(assign)
            return
        v, w = pairs[p]
        tried = set()
        for target in klein_orbit(w.quad):
            new = dict(assign)
            ok = True
            for x, y in zip(v.quad, target):
                if x in new:
                    if new[x] != y:
                        ok = False
                        break
                elif y in new.values():
                    ok = False
                    break
                else:
                    new[x] = y
            key = tuple(sorted(new.items()))
            if ok and key not in tried and consistent(new):
                tried.add(key)
                search(p + 1, new)

    search(0, {})
    return sorted(results, key=lambda s: s.images)


def solve_permutations_bruteforce(pairs, n: int) -> list:
    pairs = list(pairs)
    out = []
    for images in permutations(range(1, n + 1)):
        sigma = Permutation(images)
        if all(permute(sigma, v) == w for v, w in pairs):
            out.append(sigma)
    return out


def stabilizer(sx: Simplex, n: int, method: str = "search") -> list:
    """Permutations fixing every vertex of the ordered simplex."""
    pairs = [(v, v) for v in sx.vertices]
    if method == "brute":
        return solve_permutations_bruteforce(pairs, n)
    return solve_permutations(pairs, n)


def orbit_stabilizer_product(cx: DivisibilityComplex, sx: Simplex) -> tuple:
    """(|orbit|, |stabilizer|, n!) for an ordered simplex."""
    return ordered_orbit_size(cx, sx), len(stabilizer(sx, cx.n)), factorial(cx.n)
