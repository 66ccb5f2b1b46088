"""Finite subgroups of GL2(F_l) for small l, held as explicit element sets.

Matrices are tuples (a, b, c, d) standing for [[a, b], [c, d]] with entries
reduced mod l.  Groups are small (|GL2(F_7)| = 2016), so closure, conjugacy
and subgroup searches are all done by brute force.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product

from .errors import InvalidArgument, NotFound

PRIMES = (2, 3, 5, 7)

Mat = tuple  # (a, b, c, d)


def _check_ell(ell: int) -> int:
    if ell not in PRIMES:
        raise InvalidArgument(f"l must be one of {PRIMES}, got {ell}")
    return ell


def mat(ell: int, a, b=None, c=None, d=None) -> Mat:
    """Build a matrix from four entries or from nested rows [[a, b], [c, d]]."""
    if b is None:
        (a, b), (c, d) = a
    return (a % ell, b % ell, c % ell, d % ell)


def mul(ell: int, x: Mat, y: Mat) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % ell, (a * f + b * h) % ell, (c * e + d * g) % ell, (c * f + d * h) % ell)


def det(ell: int, x: Mat) -> int:
    return (x[0] * x[3] - x[1] * x[2]) % ell


def inv(ell: int, x: Mat) -> Mat:
    dt = det(ell, x)
    if dt == 0:
        raise InvalidArgument(f"singular matrix {x} mod {ell}")
    i = pow(dt, -1, ell)
    a, b, c, d = x
    return ((d * i) % ell, (-b * i) % ell, (-c * i) % ell, (a * i) % ell)


def identity(ell: int) -> Mat:
    return (1, 0, 0, 1)


def apply(ell: int, x: Mat, v) -> tuple:
    a, b, c, d = x
    return ((a * v[0] + b * v[1]) % ell, (c * v[0] + d * v[1]) % ell)


def mat_order(ell: int, x: Mat) -> int:
    k, y = 1, x
    while y != (1, 0, 0, 1):
        y = mul(ell, y, x)
        k += 1
    return k


def fmt(x: Mat) -> str:
    return f"[[{x[0]},{x[1]}],[{x[2]},{x[3]}]]"


@dataclass(frozen=True)
class SubgroupGL2:
    ell: int
    elements: tuple
    generators: tuple = field(default=(), compare=False)
    label: str | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def issubset(self, other: "SubgroupGL2") -> bool:
        return self._set <= other._set

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"<SubgroupGL2{name} l={self.ell} order={self.order}>"


def _from_set(ell: int, elems, gens=(), label=None) -> SubgroupGL2:
    return SubgroupGL2(ell, tuple(sorted(elems)), tuple(gens), label)


def generate(ell: int, gens, label: str | None = None) -> SubgroupGL2:
    """Smallest subgroup of GL2(F_l) containing gens."""
    _check_ell(ell)
    gens = [mat(ell, *g) if len(g) == 4 else mat(ell, g) for g in gens]
    for g in gens:
        if det(ell, g) == 0:
            raise InvalidArgument(f"generator {fmt(g)} is singular mod {ell}")
    elems = {identity(ell)}
    frontier = [identity(ell)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(ell, x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return _from_set(ell, elems, gens, label)


def gl2(ell: int) -> SubgroupGL2:
    return _gl2(_check_ell(ell))


@lru_cache(maxsize=None)
def _gl2(ell: int) -> SubgroupGL2:
    elems = [m for m in product(range(ell), repeat=4) if det(ell, m)]
    return _from_set(ell, elems, label="GL2")


def fixed_vectors(G: SubgroupGL2) -> frozenset:
    """Nonzero vectors fixed by every element of G."""
    ell = G.ell
    vs = [(x, y) for x in range(ell) for y in range(ell) if (x, y) != (0, 0)]
    return frozenset(v for v in vs if all(apply(ell, m, v) == v for m in G.elements))


def sl2_membership(G: SubgroupGL2) -> bool:
    return all(det(G.ell, m) == 1 for m in G.elements)


def index2_subgroups(G: SubgroupGL2) -> list[SubgroupGL2]:
    """All subgroups of index 2.

    Each contains every square, so they correspond to the hyperplanes of the
    elementary abelian 2-group G / <squares>.
    """
    ell = G.ell
    S = generate(ell, sorted({mul(ell, m, m) for m in G.elements}))
    if S.order == G.order:
        return []
    coset = {}
    reps = []
    for m in G.elements:
        if m in coset:
            continue
        idx = len(reps)
        reps.append(m)
        for s in S.elements:
            coset[mul(ell, m, s)] = idx
    # coordinates of cosets in the quotient, built greedily
    coord = {coset[identity(ell)]: 0}
    rank = 0
    for m in reps:
        if coset[m] in coord:
            continue
        bit = 1 << rank
        rank += 1
        for k, v in list(coord.items()):
            coord[coset[mul(ell, reps[k], m)]] = v ^ bit
    out = []
    for f in range(1, 1 << rank):
        elems = [m for m in G.elements if bin(coord[coset[m]] & f).count("1") % 2 == 0]
        out.append(_from_set(ell, elems))
    return sorted(out, key=lambda H: H.elements)


@dataclass(frozen=True)
class GrowthCandidate:
    subgroup: SubgroupGL2
    new_fixed: frozenset
    in_sl2: bool


def quadratic_growth_analysis(G: SubgroupGL2) -> list[GrowthCandidate]:
    """Index-2 subgroups fixing strictly more vectors than G, flagged for SL2 containment."""
    base = fixed_vectors(G)
    out = []
    for H in index2_subgroups(G):
        fv = fixed_vectors(H)
        if fv > base:
            out.append(GrowthCandidate(H, fv - base, sl2_membership(H)))
    return out


def conjugate(ell: int, g: Mat, A: SubgroupGL2) -> frozenset:
    gi = inv(ell, g)
    return frozenset(mul(ell, mul(ell, g, a), gi) for a in A.elements)


def conjugate_in(A: SubgroupGL2, B: SubgroupGL2, ambient: SubgroupGL2 | None = None) -> Mat | None:
    """Some g in ambient (default GL2) with g A g^-1 = B, or None."""
    ell = A.ell
    if ambient is None:
        ambient = gl2(ell)
    if A.order != B.order:
        return None
    target = B._set
    for g in ambient.elements:
        if conjugate(ell, g, A) == target:
            return g
    return None


def cyclic_subgroups(G: SubgroupGL2, n: int | None = None) -> list[SubgroupGL2]:
    """Distinct cyclic subgroups of G, optionally of order n."""
    seen = {}
    for m in G.elements:
        if n is not None and mat_order(G.ell, m) != n:
            continue
        C = generate(G.ell, [m])
        seen.setdefault(C.elements, C)
    return [seen[k] for k in sorted(seen)]


def split_torus(ell: int) -> SubgroupGL2:
    """H1 = {diag(a, 1)}."""
    return _from_set(ell, [(a, 0, 0, 1) for a in range(1, ell)], label="H1")


def contains_split_torus_conjugate(G: SubgroupGL2, ell: int | None = None) -> SubgroupGL2 | None:
    """The first subgroup of G (in element order) conjugate in GL2 to H1, or None."""
    ell = G.ell if ell is None else ell
    if ell not in (5, 7):
        raise InvalidArgument("the split-torus search is for l = 5 or 7")
    H1 = split_torus(ell)
    for C in cyclic_subgroups(G, ell - 1):
        if not fixed_vectors(C):
            continue
        if conjugate_in(C, H1) is not None:
            return C
    return None


def vector_stabilizer(G: SubgroupGL2, v) -> SubgroupGL2:
    return _from_set(G.ell, [m for m in G.elements if apply(G.ell, m, v) == tuple(x % G.ell for x in v)])


def least_nonresidue(ell: int) -> int:
    return next(e for e in range(2, ell) if pow(e, (ell - 1) // 2, ell) == ell - 1)


# --- catalogue ------------------------------------------------------------

def _upper(ell, pred):
    return [m for m in _gl2(ell).elements if m[2] == 0 and pred(m)]


def _build(ell: int, name: str, eps: int | None) -> SubgroupGL2:
    E = _gl2(ell).elements
    gens = _GENERATORS.get((ell, name))
    if gens is not None:
        return generate(ell, gens, label=name)
    if name == "GL2":
        return _gl2(ell)
    if name == "SL2":
        return _from_set(ell, [m for m in E if det(ell, m) == 1], label=name)
    if name in ("B", "Borel"):
        return _from_set(ell, _upper(ell, lambda m: True), label=name)
    if name == "H1":
        return split_torus(ell)
    if name == "H2":
        return _from_set(ell, [(1, b, 0, 1) for b in range(ell)], label=name)
    if name == "H3":
        return _from_set(ell, _upper(ell, lambda m: m[3] == 1), label=name)
    if name == "H31":
        return _from_set(ell, _upper(ell, lambda m: m[0] == 1), label=name)
    if name == "H32":
        return _from_set(ell, _upper(ell, lambda m: m[3] == 1), label=name)
    if name == "H11":
        return _from_set(ell, [(1, 0, 0, a) for a in range(1, ell)], label=name)
    if name == "C_s":
        return _from_set(ell, [m for m in E if m[1] == 0 and m[2] == 0], label=name)
    if name == "N_s":
        return _from_set(ell, [m for m in E if (m[1] == 0 and m[2] == 0) or (m[0] == 0 and m[3] == 0)], label=name)
    if name == "-id":
        return generate(ell, [(ell - 1, 0, 0, ell - 1)], label=name)
    if name == "id":
        return _from_set(ell, [identity(ell)], label=name)
    if name == "nonsplit_cartan":
        e = least_nonresidue(ell) if eps is None else eps % ell
        if pow(e, (ell - 1) // 2, ell) != ell - 1:
            raise InvalidArgument(f"{e} is a square mod {ell}")
        elems = [(a, (b * e) % ell, b, a) for a in range(ell) for b in range(ell) if (a, b) != (0, 0)]
        return _from_set(ell, elems, label=f"nonsplit_cartan(eps={e})")
    raise NotFound(f"no subgroup named {name!r} for l = {ell}")


_GENERATORS = {
    (2, "G1"): [],
    (2, "G2"): [(1, 1, 0, 1)],
    (2, "G3"): [(1, 1, 1, 0)],
    (2, "G4"): [(1, 1, 0, 1), (1, 1, 1, 0)],
    (3, "N_ns"): [(1, -1, 1, 1), (1, 0, 0, -1)],
    (3, "Q8"): [(0, 1, -1, 0), (1, 1, 1, -1)],
    (3, "C_ns"): [(1, -1, 1, 1)],
    (3, "C6"): [(-1, -1, 0, -1)],
    (3, "C4"): [(0, 1, -1, 0)],
    (3, "C3"): [(1, 1, 0, 1)],
    (5, "5Cs.1.3"): [(3, 0, 0, 4)],
    (5, "5Cs.4.1"): [(4, 0, 0, 4), (1, 0, 0, 2)],
    (5, "5B.1.4"): [(4, 0, 0, 3), (1, 1, 0, 1)],
    (5, "5B.4.1"): [(4, 0, 0, 4), (1, 0, 0, 2), (1, 1, 0, 1)],
    (7, "7B.1.6"): [(6, 0, 0, 4), (1, 1, 0, 1)],
    (7, "7B.6.1"): [(6, 0, 0, 6), (1, 0, 0, 3), (1, 1, 0, 1)],
}

# the sixteen groups of the GL2(F_3) lattice, in catalogue order
F3_LATTICE = ("GL2", "SL2", "B", "N_ns", "Q8", "N_s", "C_ns", "C6",
              "H31", "H32", "C4", "C_s", "C3", "H11", "-id", "id")

_SHARED = ("GL2", "SL2", "B", "Borel", "H1", "H2", "H3", "H31", "H32", "H11",
           "C_s", "N_s", "-id", "id", "nonsplit_cartan")


def catalog_names(ell: int) -> list[str]:
    _check_ell(ell)
    own = sorted(n for (l, n) in _GENERATORS if l == ell)
    return own + [n for n in _SHARED if n not in own]


@lru_cache(maxsize=None)
def _named(ell: int, name: str, eps):
    return _build(ell, name, eps)


def named_subgroup(ell: int, name: str, eps: int | None = None) -> SubgroupGL2:
    _check_ell(ell)
    return _named(ell, name, eps)


# --- element lists shipped as data ----------------------------------------

@lru_cache(maxsize=None)
def _appendix() -> dict:
    text = resources.files("quadtors.data").joinpath("appendix.txt").read_text()
    out, cur = {}, None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            cur = line.strip("[]")
            out[cur] = []
            continue
        out[cur].append(tuple(int(v) for v in line.split()))
    return {k: tuple(v) for k, v in out.items()}


APPENDIX_LABELS = ("5B.1.4", "5B.4.1", "7B.1.6", "7B.6.1")


def appendix_elements(label: str) -> list[Mat]:
    data = _appendix()
    if label not in data:
        raise NotFound(f"no element list for {label!r}")
    return list(data[label])
