"""
The pair (H, A): H a torus times GL blocks, A a list of representations,
each a torus character times at most one det-twisted standard block rep.

Ambient weight coordinates are the torus coordinates followed by the
coordinates of every block, in order.
"""
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Set, Tuple

import sympy

from matrix_gamma.algebra.symfunc import ClassFunction, invariant_dim, lr_multiply
from matrix_gamma.algebra.weights import DominantWeight, det_shift
from matrix_gamma.exception import DomainError
from matrix_gamma.logger import logger
from matrix_gamma.utils import from_sympy, to_fraction, to_sympy


@dataclass(frozen=True)
class GroupSpec:
    torus_rank: int
    gl_blocks: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.torus_rank < 0:
            raise DomainError("torus rank must be nonnegative")
        blocks = tuple(int(b) for b in self.gl_blocks)
        if any(b <= 0 for b in blocks):
            raise DomainError(f"block sizes must be positive: {blocks}")
        object.__setattr__(self, "gl_blocks", blocks)

    @property
    def rank(self) -> int:
        return self.torus_rank + sum(self.gl_blocks)

    def block_offset(self, block: int) -> int:
        return self.torus_rank + sum(self.gl_blocks[:block])

    def block_coordinates(self, block: int) -> range:
        start = self.block_offset(block)
        return range(start, start + self.gl_blocks[block])


@dataclass(frozen=True)
class RepSpec:
    torus_char: Tuple[int, ...]
    block: Optional[int] = None
    block_twist: int = 0

    def __post_init__(self):
        object.__setattr__(self, "torus_char", tuple(int(c) for c in self.torus_char))

    def dim(self, group: GroupSpec) -> int:
        return group.gl_blocks[self.block] if self.block is not None else 1


@dataclass(frozen=True)
class SeriesIndex:
    alphas: Tuple[DominantWeight, ...]
    s: Tuple[Fraction, ...] = field(default=())

    @property
    def degree(self) -> int:
        return max((sum(abs(p) for p in alpha.parts) for alpha in self.alphas), default=0)


AffineSpace = namedtuple("AffineSpace", ["particular", "basis"])

RootDataA = namedtuple("RootDataA", ["positive_coroots", "exponents", "ambient_dim"])

Label = Tuple[Tuple[int, ...], Tuple[DominantWeight, ...]]


def validate(group: GroupSpec, reps: Sequence[RepSpec]):
    for index, rep in enumerate(reps):
        if len(rep.torus_char) != group.torus_rank:
            raise DomainError(f"reps[{index}] torus_char has length {len(rep.torus_char)}, "
                              f"expected {group.torus_rank}")
        if rep.block is not None and not 0 <= rep.block < len(group.gl_blocks):
            raise DomainError(f"reps[{index}] refers to missing block {rep.block}")


def weights_of(group: GroupSpec, rep: RepSpec) -> List[Tuple[int, ...]]:
    """Torus weights of rep in ambient coordinates."""
    base = list(rep.torus_char) + [0] * sum(group.gl_blocks)
    if rep.block is None:
        return [tuple(base)]
    result = []
    coordinates = group.block_coordinates(rep.block)
    for i in coordinates:
        weight = list(base)
        for c in coordinates:
            weight[c] = rep.block_twist + (1 if c == i else 0)
        result.append(tuple(weight))
    return result


def weight_matrix(group: GroupSpec, reps: Sequence[RepSpec]) -> List[Tuple[int, ...]]:
    return [w for rep in reps for w in weights_of(group, rep)]


def check_homogeneity(group: GroupSpec, reps: Sequence[RepSpec]) -> bool:
    """True iff some rational one-parameter subgroup acts by the scalar 1 on every rep."""
    validate(group, reps)
    rows = weight_matrix(group, reps)
    if not rows:
        return False
    matrix = sympy.Matrix(rows)
    try:
        matrix.gauss_jordan_solve(sympy.ones(len(rows), 1))
        return True
    except ValueError:
        return False


def homogenize(group: GroupSpec, reps: Sequence[RepSpec]) -> Tuple[GroupSpec, List[RepSpec]]:
    """Add a torus coordinate acting by weight 1 on every rep."""
    if check_homogeneity(group, reps):
        logger.warning(f"Pair is already homogeneous, returned unchanged: {group}")
        return group, list(reps)
    new_group = GroupSpec(group.torus_rank + 1, group.gl_blocks)
    new_reps = [RepSpec((1,) + rep.torus_char, rep.block, rep.block_twist) for rep in reps]
    logger.info(f"Homogenized {group} to {new_group}")
    return new_group, new_reps


def trace_vector(group: GroupSpec, rep: RepSpec) -> List[int]:
    """tr d(rho_omega) as (value per torus coordinate, coefficient of tr per block)."""
    d = rep.dim(group)
    vector = [d * c for c in rep.torus_char] + [0] * len(group.gl_blocks)
    if rep.block is not None:
        vector[group.torus_rank + rep.block] = 1 + group.gl_blocks[rep.block] * rep.block_twist
    return vector


def chi_of(group: GroupSpec, reps: Sequence[RepSpec], s: Sequence) -> List:
    """The character sum_omega s_omega tr d(rho_omega)."""
    total = [0] * (group.torus_rank + len(group.gl_blocks))
    for rep, s_omega in zip(reps, s):
        for i, value in enumerate(trace_vector(group, rep)):
            total[i] = total[i] + s_omega * value
    return total


def solve_L_chi(group: GroupSpec, reps: Sequence[RepSpec], chi: Sequence) -> AffineSpace:
    """
    {s : sum_omega s_omega tr d(rho_omega) = chi}. chi has one entry per torus
    coordinate and one per block. Inconsistent systems give particular=None.
    """
    validate(group, reps)
    size = group.torus_rank + len(group.gl_blocks)
    if len(chi) != size:
        raise DomainError(f"chi must have {size} entries, got {len(chi)}")
    columns = [trace_vector(group, rep) for rep in reps]
    matrix = sympy.Matrix(size, len(reps), lambda i, j: columns[j][i])
    target = sympy.Matrix([to_sympy(to_fraction(c)) for c in chi])
    basis = [tuple(from_sympy(x) for x in v) for v in matrix.nullspace()]
    try:
        solution, parameters = matrix.gauss_jordan_solve(target)
    except ValueError:
        logger.info(f"L_chi is empty for chi={list(chi)}")
        return AffineSpace(particular=None, basis=basis)
    solution = solution.subs({p: 0 for p in parameters})
    return AffineSpace(particular=tuple(from_sympy(x) for x in solution), basis=basis)


def block_weights(group: GroupSpec, reps: Sequence[RepSpec], alphas: Sequence[DominantWeight]) \
        -> Dict[int, List[DominantWeight]]:
    """Per block, the GL weights Sigma^alpha(V) tensor det^{twist |alpha|} contributed by each rep."""
    result: Dict[int, List[DominantWeight]] = {b: [] for b in range(len(group.gl_blocks))}
    for rep, alpha in zip(reps, alphas):
        if rep.block is not None:
            result[rep.block].append(det_shift(alpha, rep.block_twist * alpha.size))
    return result


def torus_total(group: GroupSpec, reps: Sequence[RepSpec], alphas: Sequence[DominantWeight]) -> List[int]:
    total = [0] * group.torus_rank
    for rep, alpha in zip(reps, alphas):
        for i, c in enumerate(rep.torus_char):
            total[i] += alpha.size * c
    return total


def invariant_term_dim(group: GroupSpec, reps: Sequence[RepSpec], alphas: Sequence[DominantWeight]) -> int:
    """dim of H-invariants in the tensor product of Sigma^{alpha(omega)}(V_omega)."""
    if len(alphas) != len(reps):
        raise DomainError(f"expected {len(reps)} weights, got {len(alphas)}")
    for rep, alpha in zip(reps, alphas):
        if alpha.n != rep.dim(group):
            raise DomainError(f"{alpha} does not match a rep of dimension {rep.dim(group)}")
    if any(torus_total(group, reps, alphas)):
        return 0
    result = 1
    for block, weights in block_weights(group, reps, alphas).items():
        if not weights:
            continue
        result *= invariant_dim(weights, group.gl_blocks[block])
        if result == 0:
            return 0
    return result


def _rep_class_function(group: GroupSpec, rep: RepSpec) -> Optional[ClassFunction]:
    if rep.block is None:
        return None
    n = group.gl_blocks[rep.block]
    standard = [1] + [0] * (n - 1)
    return ClassFunction.schur(det_shift(DominantWeight(tuple(standard)), rep.block_twist))


def monoidal_closure_truncated(group: GroupSpec, reps: Sequence[RepSpec], degree: int) -> Dict[int, Set[Label]]:
    """Irreducible constituents of all tensor products of at most `degree` reps from A, by degree."""
    validate(group, reps)
    if degree < 0:
        raise DomainError("degree bound must be nonnegative")
    trivial: Label = ((0,) * group.torus_rank, tuple(DominantWeight.zero(n) for n in group.gl_blocks))
    closure = {0: {trivial}}
    for step in range(1, degree + 1):
        current: Set[Label] = set()
        for torus, blocks in closure[step - 1]:
            for rep in reps:
                new_torus = tuple(a + b for a, b in zip(torus, rep.torus_char))
                if rep.block is None:
                    current.add((new_torus, blocks))
                    continue
                product_function = lr_multiply(ClassFunction.schur(blocks[rep.block]),
                                               _rep_class_function(group, rep))
                for gamma, _ in product_function.items():
                    new_blocks = list(blocks)
                    new_blocks[rep.block] = gamma
                    current.add((new_torus, tuple(new_blocks)))
        closure[step] = current
    return closure


def coroot_data(group: GroupSpec) -> RootDataA:
    coroots = []
    for block in range(len(group.gl_blocks)):
        coordinates = list(group.block_coordinates(block))
        for a in range(len(coordinates)):
            for b in range(a + 1, len(coordinates)):
                functional = [0] * group.rank
                functional[coordinates[a]] = 1
                functional[coordinates[b]] = -1
                coroots.append(tuple(functional))
    exponents = [1] * group.torus_rank + [d for n in group.gl_blocks for d in range(1, n + 1)]
    return RootDataA(positive_coroots=coroots, exponents=exponents, ambient_dim=group.rank)


def weyl_group(group: GroupSpec) -> List[Tuple[int, ...]]:
    """prod S_{n_b} as permutations of ambient coordinates (image of coordinate i is perm[i])."""
    per_block = [list(permutations(group.block_coordinates(b))) for b in range(len(group.gl_blocks))]
    elements = []
    for choice in product(*per_block):
        perm = list(range(group.rank))
        for block, image in enumerate(choice):
            for source, target in zip(group.block_coordinates(block), image):
                perm[source] = target
        elements.append(tuple(perm))
    return elements or [tuple(range(group.rank))]


def expand_chi(group: GroupSpec, chi: Sequence) -> List[Fraction]:
    """Ambient vector of chi: torus values, then the block trace coefficient on every block coordinate."""
    chi = [to_fraction(c) for c in chi]
    if len(chi) == group.rank:
        return chi
    if len(chi) != group.torus_rank + len(group.gl_blocks):
        raise DomainError(f"chi has {len(chi)} entries; expected {group.torus_rank + len(group.gl_blocks)} "
                          f"or {group.rank}")
    vector = chi[:group.torus_rank]
    for block, n in enumerate(group.gl_blocks):
        vector += [chi[group.torus_rank + block]] * n
    return vector


# ------------------------------------------------------------ example data

def gauss_data(n: int) -> Tuple[GroupSpec, List[RepSpec]]:
    """C* x C* x GL_n with A = {N^2, N L, N V, L V}."""
    group = GroupSpec(2, (n,))
    reps = [RepSpec((2, 0)), RepSpec((1, 1)), RepSpec((1, 0), 0), RepSpec((0, 1), 0)]
    return group, reps


def gauss_data_inhomogeneous(n: int) -> Tuple[GroupSpec, List[RepSpec]]:
    """C* x GL_n with A_0 = {C, L, V, L V}."""
    group = GroupSpec(1, (n,))
    reps = [RepSpec((0,)), RepSpec((1,)), RepSpec((0,), 0), RepSpec((1,), 0)]
    return group, reps


def pochhammer_data(n: int, p: int) -> Tuple[GroupSpec, List[RepSpec]]:
    """
    H = {(u, v, x, y) : u_1..u_p y = v_1..v_p x}, parametrised by (u, v, x).
    A = the 2p characters u_i, v_i and the two block reps x and y.
    """
    group = GroupSpec(2 * p, (n,))
    reps = []
    for i in range(2 * p):
        reps.append(RepSpec(tuple(int(i == j) for j in range(2 * p))))
    reps.append(RepSpec((0,) * (2 * p), 0))
    reps.append(RepSpec((-1,) * p + (1,) * p, 0))
    return group, reps


def appell_data() -> Tuple[GroupSpec, List[RepSpec]]:
    """C* x C* x GL_2 with A = {N^3, N^2 L, N^2 V, N L V, L^2 V}."""
    group = GroupSpec(2, (2,))
    reps = [RepSpec((3, 0)), RepSpec((2, 1)), RepSpec((2, 0), 0), RepSpec((1, 1), 0), RepSpec((0, 2), 0)]
    return group, reps


def appell_data_inhomogeneous() -> Tuple[GroupSpec, List[RepSpec]]:
    """C* x GL_2 with A_0 = {C, L, V, L V, L^2 V}."""
    group = GroupSpec(1, (2,))
    reps = [RepSpec((0,)), RepSpec((1,)), RepSpec((0,), 0), RepSpec((1,), 0), RepSpec((2,), 0)]
    return group, reps


def exponential_data(n: int) -> Tuple[GroupSpec, List[RepSpec]]:
    """GL_n with its standard representation."""
    return GroupSpec(0, (n,)), [RepSpec((), 0)]


def toric_data(points: Sequence[Sequence[int]]) -> Tuple[GroupSpec, List[RepSpec]]:
    """A torus with A given by a list of characters."""
    points = [tuple(int(c) for c in p) for p in points]
    rank = len(points[0]) if points else 0
    return GroupSpec(rank, ()), [RepSpec(p) for p in points]
