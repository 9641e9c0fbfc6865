"""Marked subdivision, the truncated marked Ex functor and its dual,
the unit maps max*/min*, and the comparison with the classical Ex.

``sd_plus(n)`` is the chain nerve of non-empty subsets of [n] ordered by
inclusion, an edge marked iff it preserves the maximum; ``sd_op(n)`` is
the reverse-ordered nerve with the min-preserving marking.  Level n of
the Ex functor is the set of marked maps out of the corresponding
subdivision shape.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .localize import UnionFind
from .marked import (
    MarkedSSet,
    enumerate_marked_maps,
    maximal_marking,
    opposite_marked,
)
from .sset_core.build import from_levels
from .sset_core.cat import Poset
from .sset_core.enumerate import Check, enumerate_maps
from .sset_core.nerves import nerve_map, nerve_poset
from .sset_core.ops import delta, sigma
from .sset_core.sset import SMap, Simplex, compose_smap, surjections


# -- subdivision shapes --------------------------------------------------

_SD_CACHE = {}


def _subsets(n):
    return [frozenset(c) for r in range(1, n + 2)
            for c in combinations(range(n + 1), r)]


def sd_plus(n):
    """Marked subdivision of the n-simplex (max-preserving marking)."""
    if n > 3:
        raise ValueError("subdivision shapes truncated at n <= 3")
    key = (n, "L")
    if key not in _SD_CACHE:
        poset = Poset.from_leq(_subsets(n), lambda a, b: a <= b)
        N = nerve_poset(poset, n)
        marked = ({c for c in N.cells[1] if max(c[0]) == max(c[1])}
                  if n >= 1 else set())
        _SD_CACHE[key] = MarkedSSet(N, marked)
    return _SD_CACHE[key]


def sd_op(n):
    """Reverse-ordered subdivision of the n-simplex (min marking)."""
    if n > 3:
        raise ValueError("subdivision shapes truncated at n <= 3")
    key = (n, "R")
    if key not in _SD_CACHE:
        poset = Poset.from_leq(_subsets(n), lambda a, b: b <= a)
        N = nerve_poset(poset, n)
        marked = ({c for c in N.cells[1] if min(c[0]) == min(c[1])}
                  if n >= 1 else set())
        _SD_CACHE[key] = MarkedSSet(N, marked)
    return _SD_CACHE[key]


def sd_map(phi, m, n, side="L"):
    """Cosimplicial structure map of the subdivision shapes.

    ``phi`` is a monotone map [m] -> [n] given as a tuple; the induced
    map sends a subset A to its image under phi.  Marking-preserving on
    both sides (images of monotone maps preserve max and min).
    """
    src = sd_plus(m) if side == "L" else sd_op(m)
    dst = sd_plus(n) if side == "L" else sd_op(n)
    return nerve_map(lambda A: frozenset(phi[a] for a in A),
                     src.base, dst.base)


# -- marked subdivision of a finite simplicial set -----------------------

def Sd_plus(X):
    """Marked subdivision of a finite simplicial set.

    Computed as the quotient of the disjoint union of subdivision shapes
    over the non-degenerate cells of ``X`` by the face identifications,
    via union-find saturation.  Cells of the result are named by a
    canonical representative pair (cell of X, simplex of its shape).
    """
    top = X.top_dim()
    if top > 3:
        raise ValueError("subdivision truncated at dimension <= 3")
    shapes = {m: sd_plus(m) for m in range(top + 1)}

    def sd_simplices(m, d):
        out = []
        for p in range(min(d, m) + 1):
            for op in surjections(d, p):
                for chain in shapes[m].base.cells[p]:
                    out.append(Simplex(op, chain))
        return out

    uf = UnionFind()
    dims = {}
    for d in range(top + 1):
        for m in range(top + 1):
            for u in X.cells[m]:
                for s in sd_simplices(m, d):
                    uf.add((u, s))
                    dims[(u, s)] = d
    for m in range(1, top + 1):
        for u in X.cells[m]:
            for i in range(m + 1):
                fs = X.faces[u][i]
                hi = sd_map(delta(i, m), m - 1, m)
                lo = sd_map(fs.op, m - 1, X.dim_of(fs.cell))
                for d in range(top + 1):
                    for t in sd_simplices(m - 1, d):
                        uf.union((u, hi(t)), (fs.cell, lo(t)))

    levels = [sorted({uf.find(p) for p, dd in dims.items() if dd == d},
                     key=repr)
              for d in range(top + 1)]

    def face(d, x, i):
        u, s = x
        return uf.find((u, shapes[X.dim_of(u)].base.simplex_face(s, i)))

    def degen(d, x, i):
        u, s = x
        return uf.find((u, shapes[X.dim_of(u)].base.simplex_degeneracy(s, i)))

    sset, cell_of = from_levels(levels, face, degen, top,
                                namer=lambda d, x: x)
    marked = set()
    for (u, s), root in ((p, uf.find(p)) for p, dd in dims.items() if dd == 1):
        if s.nondegenerate and max(s.cell[0]) == max(s.cell[1]):
            nf = cell_of(1, root)
            if nf.nondegenerate:
                marked.add(nf.cell)
    return MarkedSSet(sset, marked)


# -- truncated Ex levels -------------------------------------------------

@dataclass
class ExLevelCache:
    """Levels of the truncated marked Ex functor of a marked SSet.

    ``levels[d]`` lists serialized marked maps out of the d-th
    subdivision shape; face and degeneracy act by precomposition with
    the cosimplicial structure maps.
    """
    input: MarkedSSet
    side: str
    bound: int
    levels: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    face_tbl: dict = field(default_factory=dict)
    degen_tbl: dict = field(default_factory=dict)

    def face(self, d, serial, i):
        return self.face_tbl[(d, i)][serial]

    def degen(self, d, serial, i):
        return self.degen_tbl[(d, i)][serial]


def ex_plus(mx, levels=2):
    """Marked maps out of the subdivision shapes, with operator actions."""
    if levels > 3:
        raise ValueError("Ex levels truncated at <= 3")
    if mx.base.dim_bound < levels:
        raise ValueError(
            f"level-{levels} answers need dimension bound >= {levels}")
    cache = ExLevelCache(input=mx, side="L", bound=levels)
    for d in range(levels + 1):
        fs = enumerate_marked_maps(sd_plus(d), mx)
        serials = sorted(f.serialize() for f in fs)
        cache.levels[d] = serials
        for f in fs:
            cache.maps[f.serialize()] = f
    for d in range(1, levels + 1):
        for i in range(d + 1):
            structural = sd_map(delta(i, d), d - 1, d)
            tbl = {}
            for s in cache.levels[d]:
                tbl[s] = compose_smap(cache.maps[s], structural).serialize()
                if tbl[s] not in cache.maps:
                    raise AssertionError("face of a level element missing")
            cache.face_tbl[(d, i)] = tbl
    for d in range(levels):
        for i in range(d + 1):
            structural = sd_map(sigma(i, d), d + 1, d)
            tbl = {}
            for s in cache.levels[d]:
                tbl[s] = compose_smap(cache.maps[s], structural).serialize()
                if tbl[s] not in cache.maps:
                    raise AssertionError("degeneracy of a level element missing")
            cache.degen_tbl[(d, i)] = tbl
    return cache


def ex_op(mx, levels=2):
    """The dual Ex functor, realized by opposite-conjugation.

    Level d is computed as the levels of ``ex_plus`` of the opposite
    marked SSet, with face and degeneracy indices reversed.
    """
    inner = ex_plus(opposite_marked(mx), levels=levels)
    cache = ExLevelCache(input=mx, side="R", bound=levels,
                         levels=dict(inner.levels), maps=dict(inner.maps))
    for d in range(1, levels + 1):
        for i in range(d + 1):
            cache.face_tbl[(d, i)] = inner.face_tbl[(d, d - i)]
    for d in range(levels):
        for i in range(d + 1):
            cache.degen_tbl[(d, i)] = inner.degen_tbl[(d, d - i)]
    return cache


def ex_op_direct_check(mx, levels=2):
    """Cross-check of the conjugated dual against direct enumeration.

    Marked maps out of ``sd_op(d)`` into the input are counted directly
    and compared with the conjugated construction level by level.
    """
    cache = ex_op(mx, levels=levels)
    for d in range(levels + 1):
        direct = enumerate_marked_maps(sd_op(d), mx)
        if len(direct) != len(cache.levels[d]):
            return Check(False, {"level": d, "direct": len(direct),
                                 "conjugated": len(cache.levels[d])})
    return Check(True)


def ex_to_sset(cache):
    """The truncated Ex as an SSet; cells named ("ex", level, serial)."""
    levels = [cache.levels[d] for d in range(cache.bound + 1)]
    return from_levels(levels, cache.face, cache.degen, cache.bound,
                       namer=lambda d, x: ("ex", d, x))


# -- unit maps -----------------------------------------------------------

def max_star(mx, cache):
    """The unit: a d-cell u goes to the level-d map  chain -> u . max.

    Returns {d: {cell: serial}} on the cached levels.  Marked edges land
    on marked level-1 elements because max-preserving edges of the shape
    hit degenerate edges of the input.
    """
    if cache.side != "L":
        raise ValueError("max_star applies to left-handed caches")
    out = {}
    for d in range(cache.bound + 1):
        shape = sd_plus(d)
        out[d] = {}
        for u in cache.input.base.cells[d]:
            asg = {}
            for p, cs in enumerate(shape.base.cells):
                for chain in cs:
                    op = tuple(max(A) for A in chain)
                    asg[chain] = cache.input.base.apply_cell(u, op)
            f = SMap(shape.base, cache.input.base, asg)
            s = f.serialize()
            if s not in cache.maps:
                raise AssertionError("unit image missing from the level")
            out[d][u] = s
    return out


def min_star(mx, cache):
    """The dual unit for right-handed caches, via min on reversed chains."""
    if cache.side != "R":
        raise ValueError("min_star applies to right-handed caches")
    opposed = opposite_marked(mx)
    out = {}
    for d in range(cache.bound + 1):
        shape = sd_plus(d)
        out[d] = {}
        for u in opposed.base.cells[d]:
            asg = {}
            for p, cs in enumerate(shape.base.cells):
                for chain in cs:
                    op = tuple(max(A) for A in chain)
                    asg[chain] = opposed.base.apply_cell(u, op)
            f = SMap(shape.base, opposed.base, asg)
            s = f.serialize()
            if s not in cache.maps:
                raise AssertionError("unit image missing from the level")
            out[d][u] = s
    return out


# -- comparison with the classical Ex ------------------------------------

def compare_with_kan_ex(X, levels=2):
    """Levels of Ex of ``X`` (unmarked maps from the unmarked shapes)
    versus the marked Ex of the maximally marked ``X``, with operator
    actions compared entry by entry."""
    if X.dim_bound < levels:
        raise ValueError(f"need dimension bound >= {levels}")
    kan_levels = {}
    kan_maps = {}
    for d in range(levels + 1):
        fs = enumerate_maps(sd_plus(d).base, X)
        kan_levels[d] = sorted(f.serialize() for f in fs)
        for f in fs:
            kan_maps[f.serialize()] = f
    cache = ex_plus(maximal_marking(X), levels=levels)
    for d in range(levels + 1):
        if kan_levels[d] != cache.levels[d]:
            return Check(False, {"level": d, "kan": len(kan_levels[d]),
                                 "marked": len(cache.levels[d])})
    for d in range(1, levels + 1):
        for i in range(d + 1):
            structural = sd_map(delta(i, d), d - 1, d)
            for s in kan_levels[d]:
                img = compose_smap(kan_maps[s], structural).serialize()
                if img != cache.face_tbl[(d, i)][s]:
                    return Check(False, {"level": d, "op": ("face", i)})
    return Check(True)
