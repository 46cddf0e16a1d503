"""
Schur calculus on GL_n at character level.

A ClassFunction is a finite Schur expansion sum c_alpha s_alpha with exact
rational coefficients. Products use Littlewood-Richardson coefficients.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, prod
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
import sympy

from matrix_gamma.algebra.weights import (DominantWeight, det_shift, dimension, graded_key,
                                          partitions, to_partition)
from matrix_gamma.exception import DomainError
from matrix_gamma.logger import logger
from matrix_gamma.utils import fraction_record, from_sympy, is_exact, to_sympy


class ClassFunction:

    def __init__(self, n: int, terms: Dict[DominantWeight, Fraction] = None):
        self.n = n
        self._terms: Dict[DominantWeight, Fraction] = {}
        for alpha, coefficient in (terms or {}).items():
            if alpha.n != n:
                raise DomainError(f"{alpha} does not have length {n}")
            coefficient = Fraction(coefficient)
            if coefficient != 0:
                self._terms[alpha] = coefficient

    @classmethod
    def schur(cls, alpha: DominantWeight, coefficient=1) -> "ClassFunction":
        return cls(alpha.n, {alpha: Fraction(coefficient)})

    @classmethod
    def one(cls, n: int) -> "ClassFunction":
        return cls.schur(DominantWeight.zero(n))

    @property
    def terms(self) -> Dict[DominantWeight, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[DominantWeight, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: graded_key(item[0]))

    def coefficient(self, alpha: DominantWeight) -> Fraction:
        return self._terms.get(alpha, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def truncate(self, degree: int) -> "ClassFunction":
        return ClassFunction(self.n, {a: c for a, c in self._terms.items() if a.size <= degree})

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_n(other)
        terms = dict(self._terms)
        for alpha, coefficient in other._terms.items():
            terms[alpha] = terms.get(alpha, Fraction(0)) + coefficient
        return ClassFunction(self.n, terms)

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            return lr_multiply(self, other)
        return ClassFunction(self.n, {a: c * Fraction(other) for a, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*s{a.parts}" for a, c in self.items())

    def _check_n(self, other: "ClassFunction"):
        if self.n != other.n:
            raise DomainError(f"class functions on GL_{self.n} and GL_{other.n} do not combine")

    def evaluate(self, x: Sequence):
        return sum((_scale(c, schur_eval(a, x)) for a, c in self.items()), 0)

    def to_records(self) -> List[dict]:
        records = []
        for alpha, coefficient in self.items():
            record = {"weight": list(alpha.parts)}
            record.update(fraction_record(coefficient))
            records.append(record)
        return records


def _scale(coefficient: Fraction, value):
    if isinstance(value, (float, complex, np.number)):
        return float(coefficient) * value
    if isinstance(value, sympy.Basic):
        return to_sympy(coefficient) * value
    return coefficient * value


# ---------------------------------------------------------------- evaluation

def schur_eval(alpha: DominantWeight, x: Sequence):
    """
    s_alpha at eigenvalues x. Exact (Fraction or sympy) when every x_i is exact,
    floating point otherwise.
    """
    n = alpha.n
    if len(x) != n:
        raise DomainError(f"expected {n} eigenvalues, got {len(x)}")
    shape, shift = to_partition(alpha)
    if shift < 0 and any(_is_zero(v) for v in x):
        raise DomainError(f"zero eigenvalue with negative weight {alpha}")
    if all(is_exact(v) for v in x):
        values = [to_sympy(v) for v in x]
        result = _schur_exact(shape.parts, values) * prod(values) ** shift
        return from_sympy(sympy.cancel(result))
    values = np.asarray(x, dtype=complex)
    result = _schur_float(shape.parts, values) * np.prod(values) ** shift
    return result.real if np.all(values.imag == 0) else result


def _is_zero(value) -> bool:
    try:
        return value == 0
    except TypeError:
        return False


def _schur_exact(shape: Tuple[int, ...], x: List):
    n = len(shape)
    vandermonde = sympy.Matrix(n, n, lambda i, j: x[j] ** (n - 1 - i)).det()
    if sympy.simplify(vandermonde) != 0:
        alternant = sympy.Matrix(n, n, lambda i, j: x[j] ** (shape[i] + n - 1 - i)).det()
        return sympy.cancel(alternant / vandermonde)
    logger.info(f"Repeated eigenvalues, Jacobi-Trudi for shape {shape}")
    return _jacobi_trudi(shape, x, lambda rows: sympy.Matrix(rows).det(), sympy.Integer)


def _schur_float(shape: Tuple[int, ...], x: np.ndarray) -> complex:
    n = len(shape)
    gaps = [abs(x[i] - x[j]) for i in range(n) for j in range(i + 1, n)]
    scale = max([1.0] + [abs(v) for v in x])
    if all(g > 1e-6 * scale for g in gaps):
        vandermonde = np.linalg.det(np.array([[x[j] ** (n - 1 - i) for j in range(n)] for i in range(n)]))
        alternant = np.linalg.det(np.array([[x[j] ** (shape[i] + n - 1 - i) for j in range(n)]
                                            for i in range(n)]))
        return alternant / vandermonde
    return _jacobi_trudi(shape, list(x), lambda rows: np.linalg.det(np.array(rows, dtype=complex)), complex)


def _jacobi_trudi(shape: Tuple[int, ...], x: List, det, unit):
    """det(h_{shape_i - i + j}) with complete homogeneous h_k."""
    length = len(shape)
    top = shape[0] + length if length else 0
    h = [unit(1)] + [unit(0)] * top
    for value in x:
        for k in range(1, top + 1):
            h[k] = h[k] + value * h[k - 1]

    def entry(k):
        return h[k] if 0 <= k <= top else unit(0)

    if length == 0:
        return unit(1)
    return det([[entry(shape[i] - i + j) for j in range(length)] for i in range(length)])


def schur_polynomial(alpha: DominantWeight, symbols: Sequence[sympy.Symbol]):
    """s_alpha as a sympy expression (a Laurent polynomial when alpha has negative parts)."""
    n = alpha.n
    shape, shift = to_partition(alpha)
    exponents = [shape[i] + n - 1 - i for i in range(n)]
    staircase = [n - 1 - i for i in range(n)]
    generators = list(symbols)
    alternant = sympy.Poly(_alternant(exponents, generators), *generators)
    vandermonde = sympy.Poly(_alternant(staircase, generators), *generators)
    quotient, remainder = sympy.div(alternant, vandermonde)
    if not remainder.is_zero:
        raise DomainError("alternant not divisible by the Vandermonde")
    return quotient.as_expr() * prod(generators) ** shift


def _alternant(exponents: List[int], symbols: List[sympy.Symbol]):
    n = len(exponents)
    total = sympy.Integer(0)
    for permutation in permutations(range(n)):
        sign = _permutation_sign(permutation)
        total += sign * prod((symbols[permutation[i]] ** exponents[i] for i in range(n)), start=sympy.Integer(1))
    return total


def _permutation_sign(permutation: Sequence[int]) -> int:
    sign = 1
    seen = list(permutation)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def from_polynomial(expression, symbols: Sequence[sympy.Symbol]) -> ClassFunction:
    """Schur expansion of a symmetric Laurent polynomial in `symbols`."""
    n = len(symbols)
    expression = sympy.expand(expression)
    lowest = 0
    for term in sympy.Add.make_args(expression):
        powers = term.as_powers_dict()
        for symbol in symbols:
            lowest = min(lowest, int(powers.get(symbol, 0)))
    shift = -lowest
    poly = sympy.Poly(sympy.expand(expression * prod(symbols) ** shift), *symbols)
    terms: Dict[DominantWeight, Fraction] = {}
    while not poly.is_zero:
        monomial, coefficient = poly.terms(order="lex")[0]
        try:
            leading = DominantWeight(tuple(monomial))
        except DomainError:
            raise DomainError(f"{expression} is not symmetric") from None
        coefficient = from_sympy(coefficient)
        terms[det_shift(leading, -shift)] = coefficient
        poly = poly - sympy.Poly(to_sympy(coefficient) * schur_polynomial(leading, symbols), *symbols)
    return ClassFunction(n, terms)


# ------------------------------------------------------ Littlewood-Richardson

@lru_cache(maxsize=None)
def _lr_partitions(lam: Tuple[int, ...], mu: Tuple[int, ...], n: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """
    s_lam * s_mu for partitions with at most n rows. Boxes of mu are added row
    by row as horizontal strips labelled 1, 2, ...; with c_i the new k's and
    d_i the (k-1)'s in row i, the reverse reading word is a lattice word iff
    sum_{i<=r} c_i <= sum_{i<r} d_i for every r.
    """
    states = {(lam, (0,) * n): 1}
    for label, count in enumerate(mu, start=1):
        if count == 0:
            continue
        next_states: Dict[Tuple, int] = {}
        for (shape, previous), multiplicity in states.items():
            for added in _horizontal_strips(shape, count):
                if label > 1 and not _lattice_ok(added, previous):
                    continue
                new_shape = tuple(s + a for s, a in zip(shape, added))
                key = (new_shape, added)
                next_states[key] = next_states.get(key, 0) + multiplicity
        states = next_states
    result: Dict[Tuple[int, ...], int] = {}
    for (shape, _), multiplicity in states.items():
        result[shape] = result.get(shape, 0) + multiplicity
    return tuple(sorted(result.items(), reverse=True))


def _horizontal_strips(shape: Tuple[int, ...], count: int):
    n = len(shape)

    def extend(row: int, remaining: int):
        if row == n:
            if remaining == 0:
                yield ()
            return
        ceiling = remaining if row == 0 else min(remaining, shape[row - 1] - shape[row])
        for take in range(ceiling, -1, -1):
            for rest in extend(row + 1, remaining - take):
                yield (take,) + rest

    yield from extend(0, count)


def _lattice_ok(current: Tuple[int, ...], previous: Tuple[int, ...]) -> bool:
    placed, available = 0, 0
    for c, d in zip(current, previous):
        placed += c
        if placed > available:
            return False
        available += d
    return True


def lr_coefficient(alpha: DominantWeight, beta: DominantWeight, gamma: DominantWeight) -> int:
    return int(lr_multiply(ClassFunction.schur(alpha), ClassFunction.schur(beta)).coefficient(gamma))


def lr_multiply(f: ClassFunction, g: ClassFunction) -> ClassFunction:
    f._check_n(g)
    n = f.n
    terms: Dict[DominantWeight, Fraction] = {}
    for alpha, a in f.items():
        lam, shift_a = to_partition(alpha)
        for beta, b in g.items():
            mu, shift_b = to_partition(beta)
            for nu, c in _lr_partitions(lam.parts, mu.parts, n):
                gamma = DominantWeight(tuple(p + shift_a + shift_b for p in nu))
                terms[gamma] = terms.get(gamma, Fraction(0)) + a * b * c
    return ClassFunction(n, terms)


def invariant_dim(weights: Iterable[DominantWeight], n: int) -> int:
    weights = list(weights)
    for alpha in weights:
        if alpha.n != n:
            raise DomainError(f"{alpha} does not have length {n}")
    if sum(alpha.size for alpha in weights) != 0:
        return 0
    product = ClassFunction.one(n)
    for alpha in weights:
        product = lr_multiply(product, ClassFunction.schur(alpha))
    return int(product.coefficient(DominantWeight.zero(n)))


# ------------------------------------------------------ Schur-Weyl and D

def symmetric_group_dim(alpha: DominantWeight) -> int:
    """Dimension w_alpha of the S_m irreducible attached to alpha, m = |alpha|."""
    if not alpha.is_nonnegative:
        raise DomainError(f"{alpha} has negative parts")
    m = alpha.size
    parts = [p for p in alpha.parts if p > 0]
    parts += [0] * (m - len(parts))
    numerator = factorial(m) * prod(parts[i] - parts[j] + j - i for i in range(m) for j in range(i + 1, m))
    denominator = prod(factorial(parts[j] + m - 1 - j) for j in range(m))
    return numerator // denominator


def power_trace_expand(m: int, n: int) -> ClassFunction:
    """tr(x)^m = sum over |alpha| = m with at most n parts of w_alpha s_alpha."""
    return ClassFunction(n, {DominantWeight(p): symmetric_group_dim(DominantWeight(p))
                             for p in partitions(m, n)})


def apply_D(f: ClassFunction) -> ClassFunction:
    """D = sum_i d/dt_i at character level: D s_alpha = sum (alpha_i + n - i) s_{alpha - e_i}."""
    n = f.n
    terms: Dict[DominantWeight, Fraction] = {}
    for alpha, coefficient in f.items():
        for i in range(n):
            if i < n - 1 and alpha[i] == alpha[i + 1]:
                continue
            factor = alpha[i] + n - 1 - i
            if factor == 0:
                continue
            parts = list(alpha.parts)
            parts[i] -= 1
            beta = DominantWeight(tuple(parts))
            terms[beta] = terms.get(beta, Fraction(0)) + coefficient * factor
    return ClassFunction(n, terms)


def character_dimension(f: ClassFunction) -> Fraction:
    """Value of f at the identity matrix."""
    return sum((c * dimension(a) for a, c in f.items()), Fraction(0))


def schur_matrix_eval(alpha: DominantWeight, matrix):
    """
    s_alpha(X) for a square matrix X through power traces, Newton's identities
    and Jacobi-Trudi. Exact for matrices of rationals, numpy otherwise.
    """
    shape, shift = to_partition(alpha)
    exact = not isinstance(matrix, np.ndarray) and all(is_exact(v) for row in matrix for v in row)
    if exact:
        x = sympy.Matrix([[to_sympy(v) for v in row] for row in matrix])
        size, det = x.shape[0], x.det()
        unit = sympy.Integer
    else:
        x = np.asarray(matrix, dtype=complex)
        size, det = x.shape[0], np.linalg.det(x)
        unit = complex
    if size != alpha.n:
        raise DomainError(f"{alpha} does not match a {size}x{size} matrix")
    if shift < 0 and det == 0:
        raise DomainError(f"singular matrix with negative weight {alpha}")
    top = shape[0] + alpha.n
    traces, power = [], x
    for _ in range(top):
        traces.append(power.trace())
        power = power * x if exact else power @ x
    h = [unit(1)]
    for k in range(1, top + 1):
        h.append(sum((traces[i - 1] * h[k - i] for i in range(1, k + 1)), unit(0)) / k)

    def entry(k):
        return h[k] if 0 <= k <= top else unit(0)

    length = alpha.n
    rows = [[entry(shape[i] - i + j) for j in range(length)] for i in range(length)]
    if exact:
        value = sympy.Matrix(rows).det() * det ** shift
        return from_sympy(sympy.expand(value))
    return complex(np.linalg.det(np.array(rows, dtype=complex)) * det ** shift)


def evaluate_matrix(f: ClassFunction, matrix):
    return sum((_scale(c, schur_matrix_eval(a, matrix)) for a, c in f.items()), 0)
