"""Simplicial complexes, complex pairs and purely combinatorial constructions.

Faces are plain tuples of strictly increasing non-negative integers.  The
integer order on vertices is the global total order, so a sorted tuple *is*
the canonically oriented simplex.  The empty tuple is the face of dimension
-1 and belongs to every complex.
"""

from __future__ import annotations

import itertools
import operator
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

Face = tuple[int, ...]
EMPTY: Face = ()


def make_face(vertices: Iterable[int]) -> Face:
    """Return the canonical face for ``vertices``; duplicates are rejected."""
    verts = []
    for v in vertices:
        try:
            v = operator.index(v)
        except TypeError:
            raise DomainError(f"vertex {v!r} is not an integer") from None
        if v < 0:
            raise DomainError(f"vertex {v} is negative")
        verts.append(v)
    face = tuple(sorted(verts))
    if len(set(face)) != len(face):
        raise DomainError(f"duplicate vertex in {verts}")
    return face


def boundary_faces(face: Face) -> Iterator[Face]:
    """Yield the codimension-one faces ``face \\ {v_i}`` for i = 0, 1, ..."""
    for i in range(len(face)):
        yield face[:i] + face[i + 1:]


def _closure(faces: Iterable[Face]) -> frozenset[Face]:
    out: set[Face] = {EMPTY}
    for f in faces:
        if f in out:
            continue
        for r in range(len(f), 0, -1):
            out.update(itertools.combinations(f, r))
    return frozenset(out)


class SimplicialComplex:
    """A finite, downward closed family of faces (always containing the empty face).

    Instances are immutable and hashable.  Use :func:`from_facets` to build a
    complex from generators; the constructor itself expects a family that is
    already closed and raises :class:`DomainError` otherwise.
    """

    __slots__ = ("_faces", "_by_dim", "_hash", "_vertices")

    def __init__(self, faces: Iterable[Sequence[int]] = ()):
        fs = {make_face(f) for f in faces}
        fs.add(EMPTY)
        for f in fs:
            if len(f) > 1:
                for g in boundary_faces(f):
                    if g not in fs:
                        raise DomainError(f"not downward closed: {g} missing below {f}")
        self._init(frozenset(fs))

    @classmethod
    def _trusted(cls, faces: frozenset[Face]) -> "SimplicialComplex":
        obj = cls.__new__(cls)
        obj._init(faces if EMPTY in faces else faces | {EMPTY})
        return obj

    def _init(self, faces: frozenset[Face]) -> None:
        by_dim: dict[int, list[Face]] = {}
        for f in faces:
            by_dim.setdefault(len(f) - 1, []).append(f)
        self._faces = faces
        self._by_dim = {d: tuple(sorted(fs)) for d, fs in by_dim.items()}
        self._vertices = tuple(f[0] for f in self._by_dim.get(0, ()))
        self._hash = hash(faces)

    @property
    def dim(self) -> int:
        return max(self._by_dim)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    def faces(self, k: int) -> tuple[Face, ...]:
        """Faces of dimension ``k`` in lexicographic order."""
        return self._by_dim.get(k, ())

    def f(self, k: int) -> int:
        return len(self._by_dim.get(k, ()))

    def f_vector(self) -> tuple[int, ...]:
        """``(f_0, ..., f_dim)``; the empty face is not counted."""
        return tuple(self.f(k) for k in range(self.dim + 1))

    @property
    def all_faces(self) -> frozenset[Face]:
        return self._faces

    def facets(self) -> tuple[Face, ...]:
        out = []
        for f in self:
            if not any(_insert(f, v) in self._faces for v in self._vertices if v not in f):
                out.append(f)
        return tuple(out)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets()}) <= 1

    def __contains__(self, face: object) -> bool:
        return face in self._faces

    def __iter__(self) -> Iterator[Face]:
        for d in sorted(self._by_dim):
            yield from self._by_dim[d]

    def __len__(self) -> int:
        return len(self._faces)

    def __le__(self, other: "SimplicialComplex") -> bool:
        return self._faces <= other._faces

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._faces == other._faces

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialComplex(facets={[list(f) for f in self.facets()]})"


def _insert(face: Face, v: int) -> Face:
    return tuple(sorted(face + (v,)))


@dataclass(frozen=True)
class ComplexPair:
    """A complex together with a subcomplex; the object ``(X, A)``."""

    complex: SimplicialComplex
    subcomplex: SimplicialComplex

    def __post_init__(self) -> None:
        if not self.subcomplex <= self.complex:
            extra = sorted(self.subcomplex.all_faces - self.complex.all_faces)
            raise DomainError(f"subcomplex not contained in complex (e.g. {list(extra[0])})")

    @classmethod
    def absolute(cls, X: SimplicialComplex) -> "ComplexPair":
        """The pair ``(X, {∅})``."""
        return cls(X, SimplicialComplex())

    @property
    def dim(self) -> int:
        return self.complex.dim

    @property
    def is_absolute(self) -> bool:
        return len(self.subcomplex) == 1

    def rel_faces(self, k: int) -> tuple[Face, ...]:
        """``X_k \\ A_k`` in lexicographic order."""
        A = self.subcomplex.all_faces
        return tuple(f for f in self.complex.faces(k) if f not in A)

    def f(self, k: int) -> int:
        return self.complex.f(k) - self.subcomplex.f(k)

    def skeleton(self, p: int) -> "ComplexPair":
        return ComplexPair(skeleton(self.complex, p), skeleton(self.subcomplex, p))


# ---------------------------------------------------------------------------
# constructions


def from_facets(facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Smallest complex containing every given facet (and the empty face)."""
    return SimplicialComplex._trusted(_closure(make_face(f) for f in facets))


def skeleton(X: SimplicialComplex, p: int) -> SimplicialComplex:
    if p < -1:
        raise DomainError(f"skeleton dimension must be >= -1, got {p}")
    return SimplicialComplex._trusted(frozenset(f for f in X.all_faces if len(f) <= p + 1))


def _require_face(X: SimplicialComplex, sigma: Sequence[int]) -> Face:
    face = make_face(sigma)
    if face not in X:
        raise DomainError(f"{list(face)} is not a face of the complex")
    return face


def cofaces(X: SimplicialComplex, sigma: Face) -> list[Face]:
    """Faces of ``X`` of dimension ``dim σ + 1`` containing ``σ``."""
    return [g for g in (_insert(sigma, v) for v in X.vertices if v not in sigma) if g in X]


def degree(X: SimplicialComplex, sigma: Sequence[int]) -> int:
    face = _require_face(X, sigma)
    return len(cofaces(X, face))


def link(X: SimplicialComplex, sigma: Sequence[int]) -> SimplicialComplex:
    face = _require_face(X, sigma)
    s = set(face)
    return SimplicialComplex._trusted(frozenset(
        t for t in X.all_faces if not s.intersection(t) and tuple(sorted(s.union(t))) in X
    ))


def relabel(X: SimplicialComplex, offset: int) -> SimplicialComplex:
    return SimplicialComplex._trusted(frozenset(tuple(v + offset for v in f) for f in X.all_faces))


def join(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """The join ``X * Y``; ``Y`` is shifted past the largest vertex of ``X``."""
    offset = X.vertices[-1] + 1 if X.vertices else 0
    Y = relabel(Y, offset)
    facets = [fx + fy for fx in X.facets() for fy in Y.facets()]
    return from_facets(facets)


def missing_faces(X: SimplicialComplex) -> list[Face]:
    """All minimal non-faces on the vertex set of ``X``, sorted by (dim, lex)."""
    out = set()
    for f in X:
        for v in X.vertices:
            if v in f:
                continue
            g = _insert(f, v)
            if g not in X and all(b in X for b in boundary_faces(g)):
                out.add(g)
    return sorted(out, key=lambda g: (len(g), g))


def missing_face_dim(X: SimplicialComplex) -> int | None:
    """``h(X)``, or ``None`` when ``X`` is a full simplex (no missing face)."""
    if not X.vertices:
        raise DomainError("missing_face_dim needs at least one vertex")
    mf = missing_faces(X)
    return len(mf[-1]) - 1 if mf else None


def graph_edges(X: SimplicialComplex) -> list[tuple[int, int]]:
    return [(a, b) for a, b in X.faces(1)]


def _bron_kerbosch(adj: dict[int, set[int]]) -> list[tuple[int, ...]]:
    cliques = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            cliques.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand([], set(adj), set())
    return cliques


def flag_complex(edges: Iterable[Sequence[int]], vertices: Iterable[int] = ()) -> SimplicialComplex:
    """Clique complex of a simple graph given by its edge list.

    Isolated vertices may be supplied through ``vertices``.
    """
    adj: dict[int, set[int]] = {make_face([v])[0]: set() for v in vertices}
    for e in edges:
        a, b = make_face(e) if len(e) == 2 else (None, None)
        if a is None:
            raise DomainError(f"edge {list(e)} does not have two distinct endpoints")
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if not adj:
        return SimplicialComplex()
    return from_facets(_bron_kerbosch(adj))


def is_flag(X: SimplicialComplex) -> bool:
    return flag_complex(graph_edges(X), X.vertices) == X


def discrete_boundary(X: SimplicialComplex) -> SimplicialComplex:
    """``B(X)``: closure of the codimension-one faces of degree at most one."""
    d = X.dim
    if d < 1:
        raise DomainError("discrete boundary needs a complex of dimension >= 1")
    if not X.is_pure():
        raise DomainError("discrete boundary needs a pure complex")
    return from_facets(t for t in X.faces(d - 1) if len(cofaces(X, t)) <= 1)


def is_discrete_boundary(pair: ComplexPair, k: int) -> bool:
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    X = pair.complex
    return all(len(cofaces(X, s)) <= 1 for s in pair.subcomplex.faces(k - 1))


def x_prime(pair: ComplexPair, k: int) -> SimplicialComplex:
    """The subcomplex generated by the non-boundary k-faces and every higher face."""
    if not is_discrete_boundary(pair, k):
        raise DomainError(f"subcomplex is not a {k}-th discrete boundary")
    X = pair.complex
    gens = list(pair.rel_faces(k))
    for d in range(k + 1, X.dim + 1):
        gens.extend(X.faces(d))
    Xp = from_facets(gens)
    if Xp.faces(k) != pair.rel_faces(k) or Xp.faces(k + 1) != X.faces(k + 1):
        from .errors import InvariantViolation
        raise InvariantViolation("X' does not have X'_k = X_k \\ A_k and X'_{k+1} = X_{k+1}")
    return Xp


# ---------------------------------------------------------------------------
# generators


def simplex(m: int) -> SimplicialComplex:
    if m < -1:
        raise DomainError(f"simplex dimension must be >= -1, got {m}")
    return from_facets([range(m + 1)])


def skeleton_simplex(m: int, p: int) -> SimplicialComplex:
    return skeleton(simplex(m), p)


def d_path(d: int, m: int) -> SimplicialComplex:
    """Sliding windows ``{i, ..., i+d}`` for ``i < m``."""
    if d < 1 or m < 1:
        raise DomainError("d_path needs d >= 1 and m >= 1")
    return from_facets(range(i, i + d + 1) for i in range(m))


def circuit_order(facets: Sequence[Face]) -> list[Face] | None:
    """Cyclic ordering of ``facets`` realizing the circuit adjacency pattern, or None."""
    m = len(facets)
    if m < 3 or len({len(f) for f in facets}) != 1:
        return None
    d = len(facets[0]) - 1
    nbrs = {f: [g for g in facets if g != f and len(set(f) & set(g)) == d] for f in facets}
    if any(len(v) != 2 for v in nbrs.values()):
        return None
    order = [facets[0], nbrs[facets[0]][0]]
    while len(order) < m:
        a, b = nbrs[order[-1]]
        nxt = a if a != order[-2] else b
        if nxt == order[0]:
            return None
        order.append(nxt)
    if order[0] not in nbrs[order[-1]]:
        return None
    return order


def d_circuit(d: int, m: int) -> SimplicialComplex:
    """Cyclic windows ``{i, ..., i+d} mod m``; rejected unless the pattern is a circuit."""
    if d < 1 or m < 3:
        raise DomainError("d_circuit needs d >= 1 and m >= 3")
    facets = [make_face((i + j) % m for j in range(d + 1)) if d + 1 <= m else None
              for i in range(m)]
    if None in facets or len(set(facets)) != m or circuit_order(facets) is None:
        raise DomainError(f"no cyclic-window {d}-circuit of length {m}")
    return from_facets(facets)


def d_star(d: int, m: int) -> SimplicialComplex:
    """``m >= 2`` d-faces sharing the (d-1)-face ``{0, ..., d-1}``."""
    if d < 1 or m < 2:
        raise DomainError("d_star needs d >= 1 and m >= 2")
    core = tuple(range(d))
    return from_facets(core + (d + i,) for i in range(m))


def model_join(h: int, n: int, k: int) -> SimplicialComplex:
    """``(boundary of Δ^h)^{*(n-k-1)} * Δ^{(h+1)(k+1)-hn-1}`` on ``n`` vertices."""
    e = (h + 1) * (k + 1) - h * n
    if h < 1 or k < 0 or n - k - 1 < 0 or e < 0:
        raise DomainError(f"model_join({h}, {n}, {k}) is not realizable")
    X = simplex(e - 1)
    sphere = skeleton_simplex(h, h - 1)
    for _ in range(n - k - 1):
        X = join(X, sphere)
    return X


FAMILIES = {
    "simplex": simplex,
    "skeleton_simplex": skeleton_simplex,
    "d_path": d_path,
    "d_circuit": d_circuit,
    "d_star": d_star,
    "model_join": model_join,
}


def generate(family: str, *params: int) -> SimplicialComplex:
    try:
        build = FAMILIES[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}") from None
    try:
        return build(*params)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {family}: {exc}") from None


def is_orientable_circuit(X: SimplicialComplex) -> bool:
    """Whether the facets of the d-circuit ``X`` admit coherent orientations.

    Signs are propagated around the cycle of facets; adjacent facets must
    induce opposite orientations on their shared (d-1)-face.
    """
    from .chains import sign

    facets = X.facets()
    order = circuit_order(facets) if X.is_pure() else None
    if order is None:
        raise DomainError("complex is not a d-circuit")
    eps = [1]
    for a, b in zip(order, order[1:] + order[:1]):
        shared = tuple(sorted(set(a) & set(b)))
        eps.append(-eps[-1] * sign(shared, a) * sign(shared, b))
    return eps[-1] == eps[0]


# ---------------------------------------------------------------------------
# random instances


def random_complex(n_vertices: int, density: float, rng: random.Random,
                   max_dim: int | None = None) -> SimplicialComplex:
    """Random complex: every vertex, then each candidate face with all its
    facets present is kept with probability ``density``."""
    faces: set[Face] = {EMPTY} | {(v,) for v in range(n_vertices)}
    top = n_vertices - 1 if max_dim is None else min(max_dim, n_vertices - 1)
    for d in range(1, top + 1):
        for cand in itertools.combinations(range(n_vertices), d + 1):
            if all(b in faces for b in boundary_faces(cand)) and rng.random() < density:
                faces.add(cand)
    return SimplicialComplex._trusted(frozenset(faces))


def random_subcomplex(X: SimplicialComplex, density: float, rng: random.Random) -> SimplicialComplex:
    """Closure of a random selection of faces of ``X`` (each kept with prob. ``density``)."""
    return from_facets(f for f in X if f and rng.random() < density)


def random_discrete_boundary(X: SimplicialComplex, k: int, density: float,
                             rng: random.Random) -> SimplicialComplex:
    """Random k-th discrete boundary: closure of faces whose (k-1)-subfaces all
    have degree at most one."""
    low = {f for f in X.faces(k - 1) if len(cofaces(X, f)) <= 1}
    eligible = [f for f in X if f and len(f) <= k + 1
                and (len(f) < k or all(c in low for c in itertools.combinations(f, k)))]
    return from_facets(f for f in eligible if rng.random() < density)
