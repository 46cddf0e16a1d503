"""
Matrix Gamma-series

    Phi_s(a) = sum_alpha d(alpha) (I_alpha(H), a^{alpha+s}) / prod_omega Gamma_{d(omega)}(alpha(omega) + s_omega + 1)

for the three shapes of (H, A) whose invariant factor is known in closed form:

  toric          every rep is one-dimensional; the factor is the monomial a^alpha.
  diagonal-pair  two standard reps C, D of one GL_n block plus characters; the
                 factor is s_mu(C D^{-1}) / d(mu) with mu = alpha(C) = alpha(D)^-.
  gl2-triple     three standard reps of a GL_2 block plus characters; the factor
                 is <v, t(x) (x) t(y) (x) t(z) v> with v the unit invariant.

a^alpha is the natural monomial. The degree of an index is max_omega |alpha(omega)|_1
and terms are listed by degree, so truncations are prefixes of each other.
"""
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil, factorial, prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import sympy

from matrix_gamma.algebra.gammafn import (ZERO, GammaValue, c_n, exponential_series, matrix_pochhammer, pochhammer,
                                          reciprocal_gamma_n, reciprocal_gamma_n_float)
from matrix_gamma.algebra.gl2 import admissible_triples, gt_matrix, threej_vector
from matrix_gamma.algebra.groupmodel import (GroupSpec, RepSpec, SeriesIndex, chi_of, check_homogeneity,
                                             gauss_data, homogenize, invariant_term_dim, validate, weights_of)
from matrix_gamma.algebra.haarint import euler_oracle_61, toric_euler_oracle
from matrix_gamma.algebra.polytope import weight_polytope
from matrix_gamma.algebra.symfunc import (ClassFunction, evaluate_matrix, power_trace_expand, schur_matrix_eval,
                                          symmetric_group_dim)
from matrix_gamma.algebra.weights import (DominantWeight, ShiftedWeight, bounded_weights, det_shift, dimension, dual,
                                          nonnegative_weights)
from matrix_gamma.constant import (BACKEND_DIAGONAL_PAIR, BACKEND_GL2_TRIPLE, BACKEND_TORIC, DEFAULT_SEED,
                                   MAX_TRUNCATION, RESIDUAL_TOLERANCE)
from matrix_gamma.exception import DomainError, PoleError, ResourceLimitError, UnsupportedCaseError
from matrix_gamma.logger import logger
from matrix_gamma.utils import from_sympy, integer_kernel, is_exact, to_fraction, to_sympy

Coefficient = Union[GammaValue, complex]

CheckReport = namedtuple("CheckReport", ["passed", "details"])


@dataclass(frozen=True)
class SeriesShape:
    backend: str
    block_reps: Tuple[int, ...] = ()
    char_reps: Tuple[int, ...] = ()
    block: Optional[int] = None
    # character exponents as a linear map of the block-rep sizes
    char_solution: Optional[Tuple[Tuple[Fraction, ...], ...]] = ()


@dataclass(frozen=True)
class SeriesTerm:
    index: SeriesIndex
    coefficient: Coefficient
    invariant_dim: int

    @property
    def exact(self) -> bool:
        return isinstance(self.coefficient, GammaValue)

    @property
    def degree(self) -> int:
        return self.index.degree

    def exponent_key(self) -> Tuple[ShiftedWeight, ...]:
        return tuple(ShiftedWeight(alpha, s) for alpha, s in zip(self.index.alphas, self.index.s))

    def coefficient_float(self) -> complex:
        return complex(self.coefficient.to_float()) if self.exact else complex(self.coefficient)

    def to_record(self) -> dict:
        record = {"alphas": [list(alpha.parts) for alpha in self.index.alphas],
                  "degree": self.degree,
                  "invariant_dim": self.invariant_dim}
        if self.exact:
            record["coefficient"] = self.coefficient.to_record()
        else:
            record["coefficient"] = {"float": [self.coefficient.real, self.coefficient.imag]}
        return record


@dataclass
class GammaSeries:
    group: GroupSpec
    reps: List[RepSpec]
    s: Tuple
    shape: SeriesShape
    truncation: int
    terms: List[SeriesTerm] = field(default_factory=list)
    kind: str = "gamma"

    @property
    def backend(self) -> str:
        return self.shape.backend

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.s)

    def to_record(self) -> dict:
        return {"kind": self.kind,
                "backend": self.backend,
                "truncation": self.truncation,
                "s": [str(v) for v in self.s],
                "term_count": len(self.terms),
                "terms": [term.to_record() for term in self.terms]}


@dataclass
class EvalPoint:
    """One value per rep: a scalar for characters, a d x d matrix for block reps."""
    values: Tuple
    branch: Optional[complex] = None

    @classmethod
    def of(cls, values: Sequence, branch: Optional[complex] = None) -> "EvalPoint":
        return cls(tuple(values), branch)

    def matrix(self, index: int) -> np.ndarray:
        value = self.values[index]
        if isinstance(value, np.ndarray):
            array = value.astype(complex)
        elif isinstance(value, (list, tuple)):
            array = np.array([[complex(v) for v in row] for row in value], dtype=complex)
        else:
            array = np.array(complex(value))
        return array.reshape(1, 1) if array.ndim == 0 else array

    def scalar(self, index: int):
        value = self.values[index]
        if isinstance(value, (list, tuple, np.ndarray)):
            array = np.asarray(value, dtype=object)
            if array.size != 1:
                raise DomainError(f"value {index} is not a scalar")
            return array.reshape(-1)[0]
        return value

    def exact_matrix(self, index: int) -> sympy.Matrix:
        value = self.values[index]
        if isinstance(value, (list, tuple)):
            return sympy.Matrix([[to_sympy(v) for v in row] for row in value])
        return sympy.Matrix([[to_sympy(value)]])

    @property
    def is_exact(self) -> bool:
        for value in self.values:
            if isinstance(value, np.ndarray):
                return False
            if isinstance(value, (list, tuple)):
                if not all(is_exact(v) for row in value for v in row):
                    return False
            elif not is_exact(value):
                return False
        return True


# ------------------------------------------------------------ shape detection

def _shift(value):
    if isinstance(value, (float, complex)):
        return value
    return to_fraction(value)


def _solve_characters(group: GroupSpec, reps: Sequence[RepSpec], chars: List[int], blocks: List[int]):
    """Character exponents m with sum m_c torus(c) + sum |alpha(b)| torus(b) = 0, as a map of the sizes."""
    if group.torus_rank == 0:
        if chars:
            raise UnsupportedCaseError("characters of a trivial torus are not supported")
        return ()
    matrix = sympy.Matrix(group.torus_rank, len(chars), lambda i, j: reps[chars[j]].torus_char[i])
    columns = []
    for b in blocks:
        target = -sympy.Matrix([reps[b].torus_char[i] for i in range(group.torus_rank)])
        if not chars:
            if any(target):
                columns.append(None)
            continue
        if matrix.rank() < len(chars):
            raise UnsupportedCaseError("character exponents are not determined by the block weights")
        try:
            solution, parameters = matrix.gauss_jordan_solve(target)
        except ValueError:
            columns.append(None)
            continue
        columns.append(tuple(from_sympy(x) for x in solution))
    if not chars:
        return ((),) * len(blocks) if not columns else None
    if any(column is None for column in columns):
        return None
    return tuple(columns)


def detect_shape(group: GroupSpec, reps: Sequence[RepSpec], backend: Optional[str] = None) -> SeriesShape:
    validate(group, reps)
    all_scalar = all(rep.dim(group) == 1 for rep in reps)
    blocks = [i for i, rep in enumerate(reps) if rep.block is not None]
    chars = [i for i in range(len(reps)) if i not in blocks]
    if backend is None:
        if all_scalar:
            # GL_1 blocks are characters of a torus
            backend = BACKEND_TORIC
        elif len(blocks) == 2:
            backend = BACKEND_DIAGONAL_PAIR
        elif len(blocks) == 3:
            backend = BACKEND_GL2_TRIPLE
        else:
            raise UnsupportedCaseError(f"no invariant backend for {len(blocks)} block representations")
    if backend == BACKEND_TORIC:
        if not all_scalar:
            raise UnsupportedCaseError("the toric backend needs one-dimensional representations")
        return SeriesShape(BACKEND_TORIC, char_reps=tuple(range(len(reps))))
    expected = {BACKEND_DIAGONAL_PAIR: 2, BACKEND_GL2_TRIPLE: 3}.get(backend)
    if expected is None:
        raise UnsupportedCaseError(f"unknown backend {backend}")
    if len(blocks) != expected:
        raise UnsupportedCaseError(f"backend {backend} needs {expected} block representations, got {len(blocks)}")
    block_ids = {reps[i].block for i in blocks}
    if len(block_ids) != 1:
        raise UnsupportedCaseError(f"backend {backend} needs all block representations on one block")
    if any(reps[i].block_twist for i in blocks):
        raise UnsupportedCaseError(f"backend {backend} needs untwisted block representations")
    block = block_ids.pop()
    if backend == BACKEND_GL2_TRIPLE and group.gl_blocks[block] != 2:
        raise UnsupportedCaseError("the gl2-triple backend needs a GL_2 block")
    solution = _solve_characters(group, reps, chars, blocks)
    return SeriesShape(backend, block_reps=tuple(blocks), char_reps=tuple(chars), block=block,
                       char_solution=solution)


# ------------------------------------------------------------- enumeration

def _index_degree(alphas: Sequence[DominantWeight]) -> int:
    return max((sum(abs(p) for p in alpha.parts) for alpha in alphas), default=0)


def _order_key(alphas: Sequence[DominantWeight]):
    return _index_degree(alphas), tuple(-p for alpha in alphas for p in alpha.parts)


def _toric_candidates(group: GroupSpec, reps: Sequence[RepSpec], truncation: int) -> Iterator[Tuple[int, ...]]:
    weights = [weights_of(group, rep)[0] for rep in reps]
    rows = [[weights[j][i] for j in range(len(reps))] for i in range(group.rank)]
    kernel = integer_kernel(rows, len(reps)) if rows else [[int(i == j) for j in range(len(reps))]
                                                           for i in range(len(reps))]
    if not kernel:
        yield (0,) * len(reps)
        return
    basis = sympy.Matrix(kernel).T
    pivots = basis.T.rref()[1]
    square = basis.extract(list(pivots), list(range(basis.cols)))
    inverse = square.inv()
    bound = ceil(max(sum(abs(x) for x in inverse.row(i)) for i in range(inverse.rows)) * truncation)
    for c in product(range(-bound, bound + 1), repeat=len(kernel)):
        alpha = tuple(sum(c[k] * kernel[k][j] for k in range(len(kernel))) for j in range(len(reps)))
        if max((abs(a) for a in alpha), default=0) <= truncation:
            yield alpha


def _char_exponents(shape: SeriesShape, sizes: Sequence[int]) -> Optional[Tuple[int, ...]]:
    if shape.char_solution is None:
        return None if any(sizes) else tuple(0 for _ in shape.char_reps)
    exponents = []
    for position in range(len(shape.char_reps)):
        value = sum((Fraction(column[position]) * size for column, size in zip(shape.char_solution, sizes)),
                    Fraction(0))
        if value.denominator != 1:
            return None
        exponents.append(int(value))
    return tuple(exponents)


def _assemble(reps: Sequence[RepSpec], shape: SeriesShape, block_alphas: Sequence[DominantWeight]):
    exponents = _char_exponents(shape, [alpha.size for alpha in block_alphas])
    if exponents is None:
        return None
    alphas: List[Optional[DominantWeight]] = [None] * len(reps)
    for index, alpha in zip(shape.block_reps, block_alphas):
        alphas[index] = alpha
    for index, m in zip(shape.char_reps, exponents):
        alphas[index] = DominantWeight((m,))
    return tuple(alphas)


def _candidates(group: GroupSpec, reps: Sequence[RepSpec], shape: SeriesShape, truncation: int) \
        -> List[Tuple[DominantWeight, ...]]:
    if truncation < 0:
        raise DomainError("truncation must be nonnegative")
    if truncation > MAX_TRUNCATION:
        raise ResourceLimitError("truncation", truncation, MAX_TRUNCATION)
    found = []
    if shape.backend == BACKEND_TORIC:
        for alpha in _toric_candidates(group, reps, truncation):
            found.append(tuple(DominantWeight((a,)) for a in alpha))
    elif shape.backend == BACKEND_DIAGONAL_PAIR:
        n = group.gl_blocks[shape.block]
        for nu in bounded_weights(n, truncation):
            alphas = _assemble(reps, shape, [dual(nu), nu])
            if alphas is not None:
                found.append(alphas)
    else:
        for triple in admissible_triples(truncation):
            alphas = _assemble(reps, shape, list(triple))
            if alphas is not None:
                found.append(alphas)
    result = []
    for alphas in found:
        if _index_degree(alphas) > truncation:
            continue
        if invariant_term_dim(group, reps, alphas) > 0:
            result.append(alphas)
    return sorted(set(result), key=_order_key)


def _gamma_coefficient(alphas: Sequence[DominantWeight], s: Sequence) -> Coefficient:
    multiplicity = prod(dimension(alpha) for alpha in alphas)
    if all(isinstance(v, Fraction) for v in s):
        value = GammaValue(Fraction(multiplicity))
        for alpha, s_omega in zip(alphas, s):
            value = value * reciprocal_gamma_n([p + s_omega + 1 for p in alpha.parts])
            if value.is_zero:
                return ZERO
        return value
    value = complex(multiplicity)
    for alpha, s_omega in zip(alphas, s):
        value *= reciprocal_gamma_n_float([p + complex(s_omega) + 1 for p in alpha.parts])
    return value


def _is_zero(value: Coefficient) -> bool:
    return value.is_zero if isinstance(value, GammaValue) else value == 0


def build_series(group: GroupSpec, reps: Sequence[RepSpec], s: Sequence, backend: Optional[str] = None,
                 truncation: int = 0) -> GammaSeries:
    """Phi_s truncated at degree `truncation`; coefficients are exact when s is rational."""
    if len(s) != len(reps):
        raise DomainError(f"expected {len(reps)} exponents, got {len(s)}")
    s = tuple(_shift(v) for v in s)
    shape = detect_shape(group, reps, backend)
    series = GammaSeries(group=group, reps=list(reps), s=s, shape=shape, truncation=truncation)
    for alphas in _candidates(group, reps, shape, truncation):
        coefficient = _gamma_coefficient(alphas, s)
        if _is_zero(coefficient):
            continue
        series.terms.append(SeriesTerm(SeriesIndex(alphas, s), coefficient,
                                       invariant_term_dim(group, reps, alphas)))
    logger.info(f"Built {shape.backend} series with {len(series.terms)} terms up to degree {truncation}")
    return series


# --------------------------------------------------------------- evaluation

def _principal_det_powers(series: GammaSeries, point: EvalPoint) -> complex:
    if point.branch is not None:
        return complex(point.branch)
    value = 1 + 0j
    for index, s_omega in enumerate(series.s):
        if s_omega == 0:
            continue
        det = complex(np.linalg.det(point.matrix(index)))
        if det == 0:
            raise DomainError(f"det of argument {index} vanishes but carries exponent {s_omega}")
        value *= det ** complex(s_omega)
    return value


def _invariant_factor(series: GammaSeries, alphas: Sequence[DominantWeight], point: EvalPoint, cache: dict) -> complex:
    shape = series.shape
    value = 1 + 0j
    for index in shape.char_reps:
        exponent = alphas[index][0]
        base = complex(point.matrix(index)[0, 0])
        if base == 0 and exponent < 0:
            raise DomainError(f"argument {index} vanishes with a negative exponent")
        value *= base ** exponent
    if shape.backend == BACKEND_DIAGONAL_PAIR:
        if "ratio" not in cache:
            c, d = (point.matrix(i) for i in shape.block_reps)
            if abs(np.linalg.det(d)) == 0:
                raise DomainError("the second block argument is singular")
            cache["ratio"] = c @ np.linalg.inv(d)
        mu = alphas[shape.block_reps[0]]
        value *= schur_matrix_eval(mu, cache["ratio"]) / dimension(mu)
    elif shape.backend == BACKEND_GL2_TRIPLE:
        lam, mu, nu = (alphas[i] for i in shape.block_reps)
        x, y, z = (point.matrix(i) for i in shape.block_reps)
        v = threej_vector(lam, mu, nu)
        action = np.kron(np.kron(gt_matrix(lam, x), gt_matrix(mu, y)), gt_matrix(nu, z))
        value *= complex(v @ action @ v)
    return value


def evaluate(series: GammaSeries, point: EvalPoint) -> complex:
    """Partial sum at a point; det(a_omega)^{s_omega} on the principal branch unless the point fixes it."""
    if len(point.values) != len(series.reps):
        raise DomainError(f"expected {len(series.reps)} arguments, got {len(point.values)}")
    cache: dict = {}
    powers = _principal_det_powers(series, point)
    total = 0j
    for term in series.terms:
        total += term.coefficient_float() * _invariant_factor(series, term.index.alphas, point, cache)
    return total * powers


def term_values(series: GammaSeries, point: EvalPoint) -> List[complex]:
    cache: dict = {}
    powers = _principal_det_powers(series, point)
    return [term.coefficient_float() * _invariant_factor(series, term.index.alphas, point, cache) * powers
            for term in series.terms]


def evaluate_exact(series: GammaSeries, point: EvalPoint):
    """Exact value for integral s, rational points and the toric or diagonal-pair backends."""
    if not all(isinstance(v, Fraction) and v.denominator == 1 for v in series.s):
        raise DomainError("exact evaluation needs integral exponents")
    if series.backend == BACKEND_GL2_TRIPLE:
        raise UnsupportedCaseError("the gl2-triple backend evaluates in floating point only")
    if not point.is_exact:
        raise DomainError("exact evaluation needs a rational point")
    shape = series.shape
    matrices = [point.exact_matrix(i) for i in range(len(series.reps))]
    powers = sympy.Integer(1)
    for matrix, s_omega in zip(matrices, series.s):
        powers *= matrix.det() ** int(s_omega)
    ratio = None
    if shape.backend == BACKEND_DIAGONAL_PAIR:
        c, d = (matrices[i] for i in shape.block_reps)
        ratio = (c * d.inv()).tolist()
    total = sympy.Integer(0)
    for term in series.terms:
        value = to_sympy(term.coefficient.as_fraction())
        for index in shape.char_reps:
            value *= matrices[index][0, 0] ** term.index.alphas[index][0]
        if ratio is not None:
            mu = term.index.alphas[shape.block_reps[0]]
            value *= to_sympy(schur_matrix_eval(mu, ratio)) / dimension(mu)
        total += value
    return from_sympy(sympy.cancel(total * powers))


# -------------------------------------------------------- shift invariance

def shift_invariance_check(series: GammaSeries, s_prime: Sequence[int]) -> CheckReport:
    """Phi_{s+s'} = Phi_s termwise: both series must agree on every monomial a^{alpha+s}."""
    if len(s_prime) != len(series.reps):
        raise DomainError("s' must have one entry per rep")
    s_prime = [to_fraction(v) for v in s_prime]
    if any(v.denominator != 1 for v in s_prime):
        raise DomainError("s' must be integral")
    if not series.exact:
        raise DomainError("shift invariance is checked on exact series")
    widen = max((rep.dim(series.group) * abs(int(v)) for rep, v in zip(series.reps, s_prime)), default=0)
    shifted = build_series(series.group, series.reps, [a + b for a, b in zip(series.s, s_prime)],
                           series.backend, series.truncation + widen)
    original = {term.exponent_key(): term for term in series.terms}
    moved = {term.exponent_key(): term for term in shifted.terms}
    for key, term in original.items():
        other = moved.get(key)
        if other is None or other.coefficient != term.coefficient:
            return CheckReport(False, {"witness": term.to_record(), "reason": "missing or different after shift"})
    for key, term in moved.items():
        unshifted = [det_shift(alpha, int(v)) for alpha, v in zip(term.index.alphas, s_prime)]
        if key not in original and _index_degree(unshifted) <= series.truncation:
            return CheckReport(False, {"witness": term.to_record(), "reason": "extra term after shift"})
    return CheckReport(True, {"terms_compared": len(original)})


# ------------------------------------------------------ named hypergeometrics

def _matrix_argument(x):
    if isinstance(x, np.ndarray) and x.ndim == 2:
        return "matrix", x, x.shape[0]
    if isinstance(x, (list, tuple)) and x and isinstance(x[0], (list, tuple, np.ndarray)):
        return "matrix", x, len(x)
    if isinstance(x, (list, tuple, np.ndarray)):
        return "eigenvalues", list(x), len(x)
    return "eigenvalues", [x], 1


def hypergeometric_terms(upper_scalar: Sequence, upper_matrix: Sequence, lower_scalar: Sequence,
                         lower_matrix: Sequence, n: int, truncation: int) -> ClassFunction:
    """
    sum_{mu >= 0, |mu| <= truncation} prod (a)_{|mu|} prod [b]_mu / (prod (c)_{|mu|} prod [d]_mu |mu|!) w_mu s_mu
    with exact rational parameters.
    """
    terms: Dict[DominantWeight, Fraction] = {}
    poles = []
    for m in range(truncation + 1):
        for mu in nonnegative_weights(m, n):
            denominator = prod((pochhammer(c, m) for c in lower_scalar), start=Fraction(1)) \
                * prod((matrix_pochhammer(d, mu, n) for d in lower_matrix), start=Fraction(1))
            if denominator == 0:
                poles.append(list(mu.parts))
                continue
            numerator = prod((pochhammer(a, m) for a in upper_scalar), start=Fraction(1)) \
                * prod((matrix_pochhammer(b, mu, n) for b in upper_matrix), start=Fraction(1))
            terms[mu] = numerator * symmetric_group_dim(mu) / (denominator * factorial(m))
    if poles:
        raise PoleError(f"lower parameters meet a pole within degree {truncation}", poles)
    return ClassFunction(n, terms)


def _evaluate_class_function(function: ClassFunction, x):
    kind, value, _ = _matrix_argument(x)
    if kind == "matrix":
        return evaluate_matrix(function, value)
    return function.evaluate(value)


def f21cal_terms(alpha, beta, gamma_, n: int, truncation: int) -> ClassFunction:
    return hypergeometric_terms([to_fraction(alpha)], [to_fraction(beta)], [to_fraction(gamma_)], [], n, truncation)


def f21cal(alpha, beta, gamma_, x, truncation: int):
    """sum (alpha)_{|mu|} [beta]_mu / ((gamma)_{|mu|} |mu|!) w_mu s_mu(x)."""
    _, _, n = _matrix_argument(x)
    return _evaluate_class_function(f21cal_terms(alpha, beta, gamma_, n, truncation), x)


def f21_jbl(alpha, beta, gamma_, x, truncation: int):
    """sum [alpha]_mu [beta]_mu / ([gamma]_mu |mu|!) w_mu s_mu(x)."""
    _, _, n = _matrix_argument(x)
    function = hypergeometric_terms([], [to_fraction(alpha), to_fraction(beta)], [], [to_fraction(gamma_)],
                                    n, truncation)
    return _evaluate_class_function(function, x)


def fpq_cal(uppers: Sequence, lowers: Sequence, x, truncation: int):
    """p+1 upper parameters, the last one matrix-valued, and p scalar lower parameters."""
    if len(uppers) != len(lowers) + 1:
        raise DomainError("fpq_cal takes one more upper than lower parameter")
    _, _, n = _matrix_argument(x)
    function = hypergeometric_terms([to_fraction(a) for a in uppers[:-1]], [to_fraction(uppers[-1])],
                                    [to_fraction(b) for b in lowers], [], n, truncation)
    return _evaluate_class_function(function, x)


# ------------------------------------------------------------------ checks

def gauss_reduction_check(s1, s2, s4, n: int, truncation: int) -> CheckReport:
    """
    With s3 = 0 the Gamma-series of C* x C* x GL_n, A = {N^2, N L, N V, L V},
    has coefficient const (-s1)_{|mu|} [-s4-n+1]_mu w_mu / ((s2+1)_{|mu|} |mu|!)
    at s_mu, mu = alpha(C) >= 0, once the invariant factor 1/d(mu) is included.
    """
    s1, s2, s4 = to_fraction(s1), to_fraction(s2), to_fraction(s4)
    group, reps = gauss_data(n)
    series = build_series(group, reps, (s1, s2, Fraction(0), s4), BACKEND_DIAGONAL_PAIR, truncation)
    observed = {term.index.alphas[2]: term.coefficient / dimension(term.index.alphas[2]) for term in series.terms}
    expected = f21cal_terms(-s1, -s4 - n + 1, s2 + 1, n, truncation)
    zero = DominantWeight.zero(n)
    constant = observed.get(zero, ZERO)
    if constant.is_zero:
        return CheckReport(False, {"reason": "the lowest term vanishes; no constant can be fitted"})
    logger.info(f"Gauss reduction constant fitted from the lowest term: {constant}")
    compared = 0
    for m in range(truncation + 1):
        for mu in nonnegative_weights(m, n):
            left = observed.get(mu, ZERO)
            right = constant * expected.coefficient(mu)
            compared += 1
            if left != right:
                return CheckReport(False, {"witness": list(mu.parts), "series": left.to_record(),
                                           "hypergeometric": right.to_record()})
    return CheckReport(True, {"terms_compared": compared, "constant": constant.to_record(),
                              "parameters": [str(-s1), str(-s4 - n + 1), str(s2 + 1)]})


def _random_rational(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 5))) * (1 if rng.random() < 0.7 else -1)


def _random_point(reps: Sequence[RepSpec], group: GroupSpec, rng: np.random.Generator) -> EvalPoint:
    values = []
    for rep in reps:
        d = rep.dim(group)
        if d == 1:
            values.append(_random_rational(rng))
            continue
        while True:
            matrix = [[_random_rational(rng) for _ in range(d)] for _ in range(d)]
            if sympy.Matrix([[to_sympy(v) for v in row] for row in matrix]).det() != 0:
                break
        values.append(matrix)
    return EvalPoint.of(values)


def _is_gauss_shape(group: GroupSpec, reps: Sequence[RepSpec]) -> Optional[int]:
    if len(group.gl_blocks) != 1:
        return None
    n = group.gl_blocks[0]
    reference_group, reference_reps = gauss_data(n)
    return n if group == reference_group and list(reps) == reference_reps else None


def terminating_series_check(group: GroupSpec, reps: Sequence[RepSpec], s: Sequence[int],
                             backend: Optional[str] = None, points: int = 3, seed: int = DEFAULT_SEED) -> CheckReport:
    """
    For integral s the series is a polynomial of degree tau = sum d(omega) s_omega,
    identically zero when tau < 0, and a multiple of an Euler integral otherwise.
    """
    s = [to_fraction(v) for v in s]
    if any(v.denominator != 1 for v in s):
        raise DomainError("terminating series need integral s")
    if not check_homogeneity(group, reps):
        raise UnsupportedCaseError("terminating series are defined for homogeneous pairs")
    tau = int(sum(rep.dim(group) * v for rep, v in zip(reps, s)))
    bound = max(rep.dim(group) * (max(tau, 0) + abs(int(v))) for rep, v in zip(reps, s))
    series = build_series(group, reps, s, backend, bound)
    wider = build_series(group, reps, s, backend, bound + 2)
    details = {"tau": tau, "term_count": len(series.terms), "degree_bound": bound,
               "finite": len(wider.terms) == len(series.terms)}
    if tau < 0:
        details["identically_zero"] = not series.terms
        return CheckReport(details["finite"] and not series.terms, details)

    n = _is_gauss_shape(group, reps)
    if series.backend == BACKEND_TORIC:
        weights = [weights_of(group, rep)[0] for rep in reps]
        sigma = [sum(int(s[j]) * weights[j][i] for j in range(len(reps))) for i in range(group.rank)]

        def oracle(point: EvalPoint):
            return toric_euler_oracle(weights, [point.scalar(i) for i in range(len(reps))], tau, sigma)
        expected_constant = Fraction(1, factorial(tau))
    elif n is not None:
        q = -int(s[1] + n * s[3])
        r = -int(s[2] + s[3])

        def oracle(point: EvalPoint):
            return euler_oracle_61(point.scalar(0), point.scalar(1), point.values[2], point.values[3], tau, q, r, n)
        expected_constant = Fraction(1, factorial(tau) * c_n(n) ** 2)
        details.update({"q": q, "r": r})
    else:
        details["oracle"] = "unavailable for this shape"
        return CheckReport(details["finite"], details)

    rng = np.random.default_rng(seed)
    constant = None
    for _ in range(points):
        point = _random_point(reps, group, rng)
        value = to_sympy(evaluate_exact(series, point))
        reference = to_sympy(oracle(point))
        if reference == 0:
            if value != 0:
                details["witness"] = [str(v) for v in point.values]
                return CheckReport(False, details)
            continue
        ratio = sympy.cancel(value / reference)
        if constant is None:
            constant = ratio
            logger.info(f"Terminating series constant fitted: {constant}")
        elif sympy.simplify(ratio - constant) != 0:
            details["witness"] = [str(v) for v in point.values]
            return CheckReport(False, details)
    details["constant"] = str(constant)
    details["expected_constant"] = str(expected_constant)
    passed = details["finite"] and (constant is None or from_sympy(constant) == expected_constant)
    return CheckReport(passed, details)


# --------------------------------------------------------- deformed series

def deformed_coefficient(alphas: Sequence[DominantWeight], s: Sequence[int], gamma_index: int) -> Fraction:
    """
    C_s^(gamma)(alpha) = (-1)^{a_d - s_gamma - 1} Gamma(-a_d - s_gamma)
        / (prod_{omega != gamma} Gamma_{d(omega)}(alpha(omega) + s_omega + 1)
           prod_{j < d} Gamma(a_j + s_gamma + d - j + 1)),   a = alpha(gamma), d = d(gamma),
    on the index set alpha(omega) + s_omega >= 0 (omega != gamma), a_d + s_gamma <= -1,
    a_{d-1} + s_gamma + 1 >= 0; zero elsewhere.
    """
    own = alphas[gamma_index].parts
    d = len(own)
    s_gamma = int(s[gamma_index])
    if own[-1] + s_gamma > -1:
        return Fraction(0)
    if d >= 2 and own[-2] + s_gamma + 1 < 0:
        return Fraction(0)
    value = Fraction((-1) ** ((own[-1] - s_gamma - 1) % 2) * factorial(-own[-1] - s_gamma - 1))
    for index, (alpha, s_omega) in enumerate(zip(alphas, s)):
        if index == gamma_index:
            continue
        if alpha.parts[-1] + int(s_omega) < 0:
            return Fraction(0)
        value *= reciprocal_gamma_n([p + int(s_omega) + 1 for p in alpha.parts]).as_fraction()
    for j in range(1, d):
        value /= factorial(own[j - 1] + s_gamma + d - j)
    return value


def deformed_series(group: GroupSpec, reps: Sequence[RepSpec], s: Sequence[int], gamma_index: int,
                    truncation: int, backend: Optional[str] = None) -> GammaSeries:
    s = tuple(to_fraction(v) for v in s)
    if any(v.denominator != 1 for v in s):
        raise DomainError("deformed series need integral s")
    if not 0 <= gamma_index < len(reps):
        raise DomainError(f"no representation with index {gamma_index}")
    shape = detect_shape(group, reps, backend)
    series = GammaSeries(group=group, reps=list(reps), s=s, shape=shape, truncation=truncation,
                         kind=f"deformed[{gamma_index}]")
    for alphas in _candidates(group, reps, shape, truncation):
        value = deformed_coefficient(alphas, s, gamma_index)
        if value == 0:
            continue
        multiplicity = prod(dimension(alpha) for alpha in alphas)
        series.terms.append(SeriesTerm(SeriesIndex(alphas, s), GammaValue(value * multiplicity),
                                       invariant_term_dim(group, reps, alphas)))
    logger.info(f"Deformed series at rep {gamma_index} has {len(series.terms)} terms")
    return series


def derivative_oracle(alphas: Sequence[DominantWeight], s: Sequence[int]):
    """d/dt at t=0 of prod_omega 1/Gamma_{d}(alpha(omega) + s_omega + t + 1), symbolically."""
    t = sympy.Symbol("t")
    expression = sympy.Integer(1)
    for alpha, s_omega in zip(alphas, s):
        d = alpha.n
        for j, part in enumerate(alpha.parts):
            z = part + int(s_omega) + d - j
            if z <= 0:
                rising = sympy.Mul(*[t + z + i for i in range(1 - z)])
                expression *= rising / sympy.gamma(t + 1)
            else:
                expression *= 1 / sympy.gamma(t + z)
    return sympy.simplify(sympy.diff(expression, t).subs(t, 0))


def deformation_check(group: GroupSpec, reps: Sequence[RepSpec], s: Sequence[int], truncation: int,
                      backend: Optional[str] = None) -> CheckReport:
    """sum_gamma Phi^(gamma) against d/dt Phi_{s+t} at t=0, term by term, when Phi_s vanishes."""
    s = tuple(to_fraction(v) for v in s)
    plain = build_series(group, reps, s, backend, truncation)
    if plain.terms:
        return CheckReport(False, {"reason": "Phi_s has terms; the derivative carries logarithms"})
    shape = plain.shape
    discrepancies, compared = [], 0
    for alphas in _candidates(group, reps, shape, truncation):
        total = sum((deformed_coefficient(alphas, s, g) for g in range(len(reps))), Fraction(0))
        oracle = derivative_oracle(alphas, s)
        compared += 1
        if sympy.simplify(to_sympy(total) - oracle) != 0:
            discrepancies.append({"alphas": [list(a.parts) for a in alphas], "deformed": str(total),
                                  "derivative": str(oracle)})
    if discrepancies:
        logger.warning(f"{len(discrepancies)} deformation coefficients disagree with the t-derivative")
    return CheckReport(not discrepancies, {"terms_compared": compared, "discrepancies": discrepancies})


# ---------------------------------------------------------------- Batyrev

def batyrev_series(group0: GroupSpec, reps0: Sequence[RepSpec], zero_index: int, truncation: int) -> GammaSeries:
    """Phi^(0) of the homogenized pair at s = -1 on the zero character and 0 elsewhere."""
    if any(reps0[zero_index].torus_char) or reps0[zero_index].block is not None:
        raise DomainError(f"rep {zero_index} is not the zero character")
    group, reps = homogenize(group0, reps0)
    s = [0] * len(reps)
    s[zero_index] = -1
    return deformed_series(group, reps, s, zero_index, truncation)


def batyrev_series_check(group0: GroupSpec, reps0: Sequence[RepSpec], a: Sequence, truncation: int,
                  zero_index: int = 0, quadrature_points: int = 64) -> CheckReport:
    """
    Phi^(0)(a) against the integral of d*x / f(x) over the compact torus,
    f = sum a_omega x^omega, both through the geometric expansion in
    g / a_0 (with its remainder bound) and by trapezoidal quadrature.
    """
    if any(rep.dim(group0) != 1 for rep in reps0):
        raise UnsupportedCaseError("the Batyrev check is implemented for toric data")
    polytope = weight_polytope(group0, reps0)
    origin = tuple(Fraction(0) for _ in range(group0.rank))
    if origin not in polytope.vertices:
        raise DomainError("0 is not a vertex of the weight polytope")
    a = [complex(v) for v in a]
    a0 = a[zero_index]
    ratio = sum(abs(v / a0) for i, v in enumerate(a) if i != zero_index)
    details = {"ratio": ratio}
    if ratio >= 1:
        details["diagnostic"] = "a_0 does not dominate; the geometric expansion need not converge"
        logger.warning(details["diagnostic"])
        return CheckReport(False, details)

    series = batyrev_series(group0, reps0, zero_index, truncation)
    value = evaluate(series, EvalPoint.of(a))

    weights = [weights_of(group0, rep)[0] for rep in reps0]
    others = [i for i in range(len(reps0)) if i != zero_index]
    geometric = 0j
    for m in range(truncation + 1):
        constant_term = toric_euler_oracle([weights[i] for i in others], [a[i] for i in others], m,
                                           [0] * group0.rank)
        geometric += complex(constant_term) * (-1) ** m / a0 ** (m + 1)
    remainder = ratio ** (truncation + 1) / (1 - ratio) / abs(a0)

    rank = group0.rank
    angles = 2 * np.pi * np.arange(quadrature_points) / quadrature_points
    grids = np.meshgrid(*([angles] * rank), indexing="ij") if rank else []
    f = np.zeros(grids[0].shape if rank else (), dtype=complex)
    for coefficient, weight in zip(a, weights):
        phase = sum((w * g for w, g in zip(weight, grids)), np.zeros_like(f, dtype=float))
        f = f + coefficient * np.exp(1j * phase)
    quadrature = complex(np.mean(1 / f))

    tolerance = remainder + 1e-10 * max(1.0, abs(quadrature))
    details.update({"series": [value.real, value.imag], "geometric": [geometric.real, geometric.imag],
                    "quadrature": [quadrature.real, quadrature.imag], "remainder_bound": remainder,
                    "term_count": len(series.terms)})
    passed = abs(value - geometric) <= 1e-10 * max(1.0, abs(geometric)) and abs(value - quadrature) <= tolerance
    return CheckReport(passed, details)


# ------------------------------------------------------------ PDE residual

def _mixed_partial(function, first, second, step: float) -> complex:
    return (function(first(step), second(step)) - function(first(step), second(-step))
            - function(first(-step), second(step)) + function(first(-step), second(-step))) / (4 * step * step)


def system_residual(series: GammaSeries, point: EvalPoint, step: float = 1e-4,
                    tolerance: float = RESIDUAL_TOLERANCE) -> CheckReport:
    """
    Finite-difference residuals of d^2/da dD_ij - d^2/db dC_ij and of the three
    quasihomogeneity relations, for series of C* x C* x GL_n with A = {N^2, N L, N V, L V}.
    Passes when every relative residual is below `tolerance` and the partial sums do not grow.
    """
    n = _is_gauss_shape(series.group, series.reps)
    if n is None:
        raise UnsupportedCaseError("system residuals are implemented for the Gauss data")
    a, b = complex(point.scalar(0)), complex(point.scalar(1))
    c, d = point.matrix(2), point.matrix(3)

    def phi(a_, b_, c_, d_):
        return evaluate(series, EvalPoint.of([a_, b_, c_, d_]))

    worst = 0.0
    for i in range(n):
        for j in range(n):
            unit = np.zeros((n, n), dtype=complex)
            unit[i, j] = 1

            def along_a_d(x, y):
                return phi(a + x, b, c, d + y * unit)

            def along_b_c(x, y):
                return phi(a, b + x, c + y * unit, d)

            left = _mixed_partial(along_a_d, lambda h: h, lambda h: h, step)
            right = _mixed_partial(along_b_c, lambda h: h, lambda h: h, step)
            scale = max(abs(left), abs(right), 1e-300)
            worst = max(worst, abs(left - right) / scale)

    chi = chi_of(series.group, series.reps, series.s)
    base = phi(a, b, c, d)
    scale = max(abs(base), 1e-300)
    lam = 1.1
    rng = np.random.default_rng(DEFAULT_SEED)
    u = np.eye(n) + 0.1 * rng.standard_normal((n, n))
    if np.linalg.det(u) < 0:
        u[0] = -u[0]
    homogeneity = [
        abs(phi(lam ** 2 * a, lam * b, lam * c, d) - lam ** complex(chi[0]) * base) / scale,
        abs(phi(a, lam * b, c, lam * d) - lam ** complex(chi[1]) * base) / scale,
        abs(phi(a, b, u @ c, u @ d) - complex(np.linalg.det(u)) ** complex(chi[2]) * base) / scale,
    ]

    by_degree: Dict[int, float] = {}
    for term, value in zip(series.terms, term_values(series, point)):
        by_degree[term.degree] = by_degree.get(term.degree, 0.0) + abs(value)
    degrees = sorted(by_degree)
    diverging = len(degrees) >= 3 and by_degree[degrees[-1]] > by_degree[degrees[-2]] > by_degree[degrees[-3]]
    if diverging:
        logger.warning("Partial sums grow with the degree; the point is outside the convergence region")
    details = {"pde_residual": worst, "homogeneity_residuals": homogeneity, "diverging": diverging,
               "tail": by_degree[degrees[-1]] if degrees else 0.0, "tolerance": tolerance}
    passed = worst < tolerance and max(homogeneity) < tolerance and not diverging
    if not passed and not diverging:
        logger.warning(f"Residuals above {tolerance}: pde {worst}, homogeneity {max(homogeneity)}")
    return CheckReport(passed, details)


# ---------------------------------------------------------- exponential

def exponential_series_check(n: int, truncation: int) -> CheckReport:
    """c_n sum d(alpha) s_alpha / Gamma_n(alpha + 1) against sum_m tr^m / m! in the Schur basis."""
    from_gamma = exponential_series(n, truncation)
    from_traces = ClassFunction(n)
    for m in range(truncation + 1):
        from_traces = from_traces + power_trace_expand(m, n) * Fraction(1, factorial(m))
    passed = from_gamma == from_traces
    return CheckReport(passed, {"n": n, "truncation": truncation, "terms": len(from_gamma.terms)})


# --------------------------------------------------------------- export

def terms_table(series: GammaSeries) -> pd.DataFrame:
    rows = []
    for term in series.terms:
        row = {"alphas": " ".join(str(list(alpha.parts)) for alpha in term.index.alphas),
               "degree": term.degree,
               "invariant_dim": term.invariant_dim}
        if term.exact:
            row["num"] = str(term.coefficient.rational_part.numerator)
            row["den"] = str(term.coefficient.rational_part.denominator)
            row["gamma_args"] = ";".join(f"{a}^{p}" for a, p in term.coefficient.gamma_args)
        value = term.coefficient_float()
        row["coefficient_real"] = value.real
        row["coefficient_imag"] = value.imag
        rows.append(row)
    return pd.DataFrame(rows)
