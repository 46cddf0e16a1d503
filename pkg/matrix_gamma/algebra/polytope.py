"""
Weight polytopes Q_A, their face lattices and Weyl orbits on faces, the cone
C_A, the degree of the compactification X_A, nonresonance and toric cobases.

Facets are stored in lattice coordinates of the affine span: with origin p_0
and a Z-basis B of Lambda intersected with the span, a point p has coordinates
t with p = p_0 + B t, and a facet is {t : normal . t >= offset}.
"""
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import factorial, gcd, prod
from typing import Dict, FrozenSet, List, Sequence, Tuple

import sympy

from matrix_gamma.algebra.groupmodel import (GroupSpec, RepSpec, RootDataA, expand_chi, validate,
                                             weight_matrix, weyl_group)
from matrix_gamma.constant import MAX_AMBIENT_DIM, MAX_POLYTOPE_POINTS
from matrix_gamma.exception import DomainError, ResourceLimitError, UnsupportedCaseError
from matrix_gamma.logger import logger
from matrix_gamma.utils import from_sympy, integer_kernel, lattice_basis_of_span, rank_of, to_sympy

Vector = Tuple[Fraction, ...]

FaceOrbit = namedtuple("FaceOrbit", ["representative", "size", "dim", "rank"])

NonresonanceResult = namedtuple("NonresonanceResult", ["nonresonant", "witness"])


@dataclass
class LatticePolytope:
    ambient_dim: int
    vertices: List[Vector]
    facets: List[Tuple[Tuple[int, ...], Fraction]]
    faces: List[FrozenSet[int]]
    face_dims: Dict[FrozenSet[int], int]
    origin: Vector
    span_basis: List[Tuple[int, ...]]
    coordinates: List[Vector] = field(repr=False, default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.span_basis)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def faces_of_dim(self, dim: int) -> List[FrozenSet[int]]:
        return [face for face in self.faces if self.face_dims[face] == dim]

    def to_record(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "facets": [{"normal": list(normal), "offset": str(offset)} for normal, offset in self.facets],
            "face_count": self.face_count,
        }

    @classmethod
    def from_points(cls, points: Sequence[Sequence]) -> "LatticePolytope":
        points = _unique([tuple(Fraction(x) for x in p) for p in points])
        if not points:
            raise DomainError("a polytope needs at least one point")
        if len(points) > MAX_POLYTOPE_POINTS:
            raise ResourceLimitError("polytope_points", len(points), MAX_POLYTOPE_POINTS)
        ambient_dim = len(points[0])
        origin, basis, coordinates = _affine_coordinates(points)
        dim = len(basis)
        facets, tight_sets = _polytope_facets(coordinates, dim)

        if dim == 0:
            vertex_indices = [0]
        else:
            vertex_indices = []
            for index in range(len(points)):
                containing = [tight for tight in tight_sets if index in tight]
                common = reduce(lambda a, b: a & b, containing) if containing else frozenset(range(len(points)))
                if common == {index}:
                    vertex_indices.append(index)
        relabel = {old: new for new, old in enumerate(vertex_indices)}
        vertices = [points[i] for i in vertex_indices]
        vertex_coordinates = [coordinates[i] for i in vertex_indices]

        full = frozenset(range(len(vertices)))
        generators = [frozenset(relabel[i] for i in tight if i in relabel) for tight in tight_sets]
        faces = {full, frozenset()}
        frontier = list(generators)
        for generator in generators:
            faces.add(generator)
        while frontier:
            face = frontier.pop()
            for generator in generators:
                meet = face & generator
                if meet not in faces:
                    faces.add(meet)
                    frontier.append(meet)
        face_dims = {face: _affine_rank([vertex_coordinates[i] for i in face]) for face in faces}
        ordered = sorted(faces, key=lambda f: (face_dims[f], sorted(f)))
        polytope = cls(ambient_dim=ambient_dim, vertices=vertices, facets=facets, faces=ordered,
                       face_dims=face_dims, origin=origin, span_basis=basis, coordinates=vertex_coordinates)
        logger.info(f"Polytope of dim {dim} with {len(vertices)} vertices, {len(facets)} facets, "
                    f"{len(ordered)} faces")
        return polytope


def _unique(points: List[Vector]) -> List[Vector]:
    seen, result = set(), []
    for p in points:
        if p not in seen:
            seen.add(p)
            result.append(p)
    return sorted(result)


def _affine_coordinates(points: List[Vector]):
    origin = points[0]
    width = len(origin)
    differences = [[a - b for a, b in zip(p, origin)] for p in points[1:]]
    nonzero = [d for d in differences if any(d)]
    basis = [tuple(v) for v in lattice_basis_of_span(nonzero, width)] if nonzero else []
    if not basis:
        return origin, [], [() for _ in points]
    matrix = sympy.Matrix([[to_sympy(x) for x in column] for column in basis]).T
    left_inverse = (matrix.T * matrix).inv() * matrix.T
    coordinates = []
    for p in points:
        t = left_inverse * sympy.Matrix([to_sympy(a - b) for a, b in zip(p, origin)])
        coordinates.append(tuple(from_sympy(x) for x in t))
    return origin, basis, coordinates


def _affine_rank(points: List[Vector]) -> int:
    if not points:
        return -1
    return rank_of([[a - b for a, b in zip(p, points[0])] for p in points[1:]]) if len(points) > 1 else 0


def _primitive(vector: Sequence) -> Tuple[int, ...]:
    fractions = [Fraction(x) for x in vector]
    scale = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fractions), 1)
    integers = [int(f * scale) for f in fractions]
    common = reduce(gcd, (abs(x) for x in integers), 0) or 1
    return tuple(x // common for x in integers)


def _hyperplane_normals(vectors: List[Vector], dim: int) -> List[Tuple[int, ...]]:
    """Normals orthogonal to `vectors` in Q^dim, when they span a hyperplane."""
    if dim == 1 and not vectors:
        return [(1,)]
    if not vectors:
        return []
    nullspace = sympy.Matrix([[to_sympy(x) for x in v] for v in vectors]).nullspace()
    if len(nullspace) != 1:
        return []
    return [_primitive([from_sympy(x) for x in nullspace[0]])]


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def _polytope_facets(coordinates: List[Vector], dim: int):
    if dim == 0:
        return [], []
    facets, tight_sets, seen = [], [], set()
    for subset in combinations(range(len(coordinates)), dim):
        base = coordinates[subset[0]]
        vectors = [tuple(a - b for a, b in zip(coordinates[i], base)) for i in subset[1:]]
        for normal in _hyperplane_normals(vectors, dim):
            offset = _dot(normal, base)
            values = [_dot(normal, t) for t in coordinates]
            if all(v >= offset for v in values):
                pass
            elif all(v <= offset for v in values):
                normal, offset = tuple(-x for x in normal), -offset
            else:
                continue
            tight = frozenset(i for i, t in enumerate(coordinates) if _dot(normal, t) == offset)
            if tight in seen:
                continue
            seen.add(tight)
            facets.append((normal, offset))
            tight_sets.append(tight)
    return facets, tight_sets


def weight_polytope(group: GroupSpec, reps: Sequence[RepSpec]) -> LatticePolytope:
    """Conv of all weights of all reps; W-invariant since weight sets of block reps are."""
    validate(group, reps)
    if group.rank > MAX_AMBIENT_DIM:
        raise ResourceLimitError("ambient_dim", group.rank, MAX_AMBIENT_DIM)
    return LatticePolytope.from_points(weight_matrix(group, reps))


def _act(permutation: Sequence[int], point: Sequence) -> Vector:
    image = [None] * len(point)
    for source, target in enumerate(permutation):
        image[target] = point[source]
    return tuple(image)


def _orbits(faces: List[FrozenSet[int]], points: List[Vector], permutations_list) -> Dict[Tuple[int, ...], List]:
    index = {p: i for i, p in enumerate(points)}
    actions = []
    for permutation in permutations_list:
        mapping = []
        for p in points:
            image = _act(permutation, p)
            if image not in index:
                raise DomainError(f"point set is not invariant under {permutation}")
            mapping.append(index[image])
        actions.append(mapping)
    orbits: Dict[Tuple[int, ...], List] = {}
    for face in faces:
        canonical = min(tuple(sorted(mapping[i] for i in face)) for mapping in actions)
        orbits.setdefault(canonical, []).append(face)
    return orbits


def face_orbits(polytope: LatticePolytope, group: GroupSpec) -> List[FaceOrbit]:
    """
    W-orbits on the faces of Q_A, empty face included. The orbit rank is
    rk(H) minus the codimension of the face in Q_A.
    """
    if polytope.ambient_dim != group.rank:
        raise DomainError(f"polytope lives in dimension {polytope.ambient_dim}, group rank is {group.rank}")
    orbits = _orbits(polytope.faces, polytope.vertices, weyl_group(group))
    result = []
    for canonical, members in orbits.items():
        dim = polytope.face_dims[members[0]]
        result.append(FaceOrbit(representative=canonical, size=len(members), dim=dim,
                                rank=group.rank - (polytope.dim - dim)))
    return sorted(result, key=lambda orbit: (orbit.dim, orbit.representative))


# ------------------------------------------------------------------- the cone

def _cone_faces(generators: List[Vector], width: int):
    """Facet tight sets and all faces of cone(generators), faces as generator index sets."""
    nonzero = [g for g in generators if any(g)]
    if not nonzero:
        return [], [frozenset()]
    basis = [tuple(v) for v in lattice_basis_of_span(nonzero, width)]
    dim = len(basis)
    matrix = sympy.Matrix([[to_sympy(x) for x in column] for column in basis]).T
    left_inverse = (matrix.T * matrix).inv() * matrix.T
    coordinates = [tuple(from_sympy(x) for x in left_inverse * sympy.Matrix([to_sympy(x) for x in g]))
                   for g in generators]

    tight_sets, seen = [], set()
    candidates = []
    if dim == 1:
        candidates = [(1,), (-1,)]
    else:
        for subset in combinations(range(len(generators)), dim - 1):
            candidates.extend(_hyperplane_normals([coordinates[i] for i in subset], dim))
    for normal in candidates:
        for signed in (normal, tuple(-x for x in normal)):
            values = [_dot(signed, t) for t in coordinates]
            if any(v < 0 for v in values) or all(v == 0 for v in values):
                continue
            tight = frozenset(i for i, v in enumerate(values) if v == 0)
            if tight not in seen:
                seen.add(tight)
                tight_sets.append(tight)
    full = frozenset(range(len(generators)))
    faces = {full}
    frontier = [full]
    while frontier:
        face = frontier.pop()
        for tight in tight_sets:
            meet = face & tight
            if meet not in faces:
                faces.add(meet)
                frontier.append(meet)
    return tight_sets, sorted(faces, key=lambda f: (rank_of([generators[i] for i in f]), sorted(f)))


def cone_face_orbits(group: GroupSpec, reps: Sequence[RepSpec]) -> List[FaceOrbit]:
    """W-orbits on the faces of C_A, apex included; the orbit rank is the face dimension."""
    validate(group, reps)
    generators = _unique([tuple(Fraction(x) for x in w) for w in weight_matrix(group, reps)])
    _, faces = _cone_faces(generators, group.rank)
    orbits = _orbits(faces, generators, weyl_group(group))
    result = []
    for canonical, members in orbits.items():
        dim = rank_of([generators[i] for i in members[0]])
        result.append(FaceOrbit(representative=canonical, size=len(members), dim=dim, rank=dim))
    return sorted(result, key=lambda orbit: (orbit.dim, orbit.representative))


def nonresonant_check(group: GroupSpec, reps: Sequence[RepSpec], chi: Sequence) -> NonresonanceResult:
    """
    chi is nonresonant iff chi is not in Lambda + Lin(Gamma) for any codim-1 face
    Gamma of C_A. Membership: phi(chi) is an integer for every phi in the integer
    annihilator of Lin(Gamma).
    """
    validate(group, reps)
    vector = expand_chi(group, chi)
    generators = _unique([tuple(Fraction(x) for x in w) for w in weight_matrix(group, reps)])
    tight_sets, _ = _cone_faces(generators, group.rank)
    for tight in tight_sets:
        span = [generators[i] for i in sorted(tight) if any(generators[i])]
        functionals = integer_kernel(span, group.rank) if span else \
            [[int(i == j) for j in range(group.rank)] for i in range(group.rank)]
        if all(_dot(phi, vector).denominator == 1 for phi in functionals):
            witness = [[str(x) for x in generators[i]] for i in sorted(tight)]
            logger.info(f"chi={[str(x) for x in vector]} is resonant along face {witness}")
            return NonresonanceResult(nonresonant=False, witness=witness)
    return NonresonanceResult(nonresonant=True, witness=None)


def toric_cobase_check(group: GroupSpec, reps: Sequence[RepSpec], cobase: Sequence[int]) -> bool:
    """True iff the reps outside `cobase` have affinely independent weights."""
    validate(group, reps)
    if group.gl_blocks or any(rep.block is not None for rep in reps):
        raise UnsupportedCaseError("cobase detection is implemented for toric data only")
    cobase = set(cobase)
    if any(not 0 <= i < len(reps) for i in cobase):
        raise DomainError(f"cobase indices {sorted(cobase)} out of range")
    rest = [tuple(Fraction(c) for c in reps[i].torus_char) for i in range(len(reps)) if i not in cobase]
    return _affine_rank(rest) == len(rest) - 1 if rest else True


# ------------------------------------------------------------ integration

def triangulate(polytope: LatticePolytope) -> List[Tuple[int, ...]]:
    """Pulling triangulation: cone the least vertex over the triangulated facets missing it."""
    cache: Dict[FrozenSet[int], List[Tuple[int, ...]]] = {}

    def pull(face: FrozenSet[int]) -> List[Tuple[int, ...]]:
        if face in cache:
            return cache[face]
        dim = polytope.face_dims[face]
        if dim == 0:
            result = [tuple(face)]
        else:
            apex = min(face, key=lambda i: polytope.vertices[i])
            result = []
            for sub in polytope.faces:
                if sub < face and polytope.face_dims[sub] == dim - 1 and apex not in sub:
                    result.extend(simplex + (apex,) for simplex in pull(sub))
        cache[face] = result
        return result

    return pull(frozenset(range(len(polytope.vertices))))


def _simplex_integral(expression, u_symbols, dim: int):
    poly = sympy.Poly(sympy.expand(expression), *u_symbols)
    total = sympy.Integer(0)
    for exponents, coefficient in poly.terms():
        total += coefficient * sympy.Integer(prod(factorial(a) for a in exponents)) / \
            sympy.factorial(sum(exponents) + dim)
    return total


def integrate_polynomial(polytope: LatticePolytope, expression, symbols: Sequence[sympy.Symbol]) -> Fraction:
    """
    Exact integral of a polynomial in the ambient coordinates over the polytope,
    against the measure of the affine span normalised by its lattice.
    """
    if len(symbols) != polytope.ambient_dim:
        raise DomainError(f"expected {polytope.ambient_dim} symbols")
    dim = polytope.dim
    if dim == 0:
        point = {s: to_sympy(x) for s, x in zip(symbols, polytope.vertices[0])}
        return from_sympy(sympy.expand(sympy.sympify(expression).subs(point)))
    u = sympy.symbols(f"u0:{dim}")
    basis = sympy.Matrix([list(column) for column in polytope.span_basis]).T
    origin = sympy.Matrix([to_sympy(x) for x in polytope.origin])
    total = sympy.Integer(0)
    for simplex in triangulate(polytope):
        corners = [sympy.Matrix([to_sympy(x) for x in polytope.coordinates[i]]) for i in simplex]
        edges = sympy.Matrix.hstack(*[corner - corners[0] for corner in corners[1:]])
        jacobian = abs(edges.det())
        t = corners[0] + edges * sympy.Matrix(u)
        ambient = origin + basis * t
        substituted = sympy.sympify(expression).subs({s: ambient[i] for i, s in enumerate(symbols)},
                                                     simultaneous=True)
        total += jacobian * _simplex_integral(substituted, u, dim)
    return from_sympy(sympy.expand(total))


def lattice_volume(polytope: LatticePolytope) -> Fraction:
    return integrate_polynomial(polytope, sympy.Integer(1), sympy.symbols(f"x0:{polytope.ambient_dim}"))


def _degree_parts(polytope: LatticePolytope, roots: RootDataA):
    if roots.ambient_dim != polytope.ambient_dim:
        raise DomainError(f"root data on dimension {roots.ambient_dim}, polytope in {polytope.ambient_dim}")
    symbols = sympy.symbols(f"x0:{polytope.ambient_dim}")
    integrand = sympy.Integer(1)
    for coroot in roots.positive_coroots:
        integrand *= sum((c * s for c, s in zip(coroot, symbols)), sympy.Integer(0)) ** 2
    integral = integrate_polynomial(polytope, integrand, symbols)
    weyl_order = prod(roots.exponents)
    rho_norm = prod(factorial(d - 1) for d in roots.exponents) ** 2
    dim_x = polytope.dim + 2 * len(roots.positive_coroots)
    degree = Fraction(factorial(dim_x), weyl_order * rho_norm) * integral
    return degree, dim_x, weyl_order, integral


def kazarnovskii_degree(polytope: LatticePolytope, roots: RootDataA) -> Fraction:
    """
    Degree of X_A: (dim X)!/|W| times the integral over Q_A of
    prod_{alpha > 0} <alpha^v, lambda>^2 / <alpha^v, rho>^2, dim X = dim Q_A + 2|R_+|.
    """
    degree, _, _, _ = _degree_parts(polytope, roots)
    return degree


def degree_report(polytope: LatticePolytope, roots: RootDataA) -> dict:
    """
    The degree counts the main component only: the closure of the group orbit.
    Spurious components of the defining equations, such as u = v = 0 for the
    Gauss data, are not included.
    """
    degree, dim_x, weyl_order, integral = _degree_parts(polytope, roots)
    return {
        "component": "main",
        "degree": {"num": str(degree.numerator), "den": str(degree.denominator)},
        "dim_X": dim_x,
        "weyl_order": weyl_order,
        "weighted_integral": str(integral),
        "lattice_volume": str(lattice_volume(polytope)),
        "triangulation": [list(simplex) for simplex in triangulate(polytope)],
        "polytope": polytope.to_record(),
    }
