"""
Integration over U_n with the normalised Haar measure d*y.

Exact integrals expand tr(C y)^m through Schur-Weyl duality and pair Schur
functions with the orthogonality relations
    int s_alpha(C y) s_beta(D y) d*y = delta(beta = alpha^-) s_alpha(C D^{-1}) / d(alpha).
Monte-Carlo averages are the numeric cross-check.
"""
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial, prod
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from scipy.linalg import qr

from matrix_gamma.algebra.gammafn import c_n, exponential_series, gamma_n
from matrix_gamma.algebra.symfunc import ClassFunction, evaluate_matrix, symmetric_group_dim
from matrix_gamma.algebra.weights import DominantWeight, det_shift, dimension, dual, partitions
from matrix_gamma.constant import DEFAULT_SEED, MONTE_CARLO_BATCH
from matrix_gamma.exception import DomainError, UnsupportedCaseError
from matrix_gamma.logger import logger
from matrix_gamma.utils import from_sympy, is_exact, to_sympy

PairingResult = namedtuple("PairingResult", ["nonzero", "weight", "scalar"])

MonteCarloEstimate = namedtuple("MonteCarloEstimate", ["estimate", "stderr", "samples", "seed"])

FourierResult = namedtuple("FourierResult", ["constant", "function", "incomplete"])


def integrate_schur_pair(alpha: DominantWeight, beta: DominantWeight) -> PairingResult:
    """int s_alpha(C y) s_beta(D y) d*y as (nonzero, alpha, 1/d(alpha)); the value is scalar * s_alpha(C D^{-1})."""
    if alpha.n != beta.n:
        raise DomainError(f"{alpha} and {beta} live on different groups")
    if beta != dual(alpha):
        return PairingResult(nonzero=False, weight=None, scalar=Fraction(0))
    return PairingResult(nonzero=True, weight=alpha, scalar=Fraction(1, dimension(alpha)))


@dataclass(frozen=True)
class MatrixMonomial:
    """prod_j tr(C_j y)^{trace_powers[j]} * det(y)^det_power."""
    trace_powers: Tuple[int, ...]
    det_power: int = 0


@dataclass
class MatrixPolyExpr:
    n: int
    argument_count: int
    terms: Dict[MatrixMonomial, Fraction] = field(default_factory=dict)

    def add(self, trace_powers: Sequence[int], det_power: int = 0, coefficient=1) -> "MatrixPolyExpr":
        if len(trace_powers) != self.argument_count:
            raise DomainError(f"expected {self.argument_count} trace powers")
        if any(m < 0 for m in trace_powers):
            raise DomainError("trace powers must be nonnegative")
        key = MatrixMonomial(tuple(int(m) for m in trace_powers), int(det_power))
        self.terms[key] = self.terms.get(key, Fraction(0)) + Fraction(coefficient)
        return self

    @classmethod
    def monomial(cls, n: int, trace_powers: Sequence[int], det_power: int = 0, coefficient=1) -> "MatrixPolyExpr":
        return cls(n, len(trace_powers)).add(trace_powers, det_power, coefficient)


@dataclass
class IntegralResult:
    """
    sum_k det(C_2)^k f_k(X), X = C_1 C_2^{-1}, f_k a class function. With a
    single argument C_2 is the identity and X = C_1.
    """
    n: int
    components: Dict[int, ClassFunction] = field(default_factory=dict)

    def add(self, det_exponent: int, function: ClassFunction):
        current = self.components.get(det_exponent, ClassFunction(self.n))
        total = current + function
        if total.is_zero():
            self.components.pop(det_exponent, None)
        else:
            self.components[det_exponent] = total

    def is_zero(self) -> bool:
        return not self.components

    def evaluate(self, c1, c2=None):
        if c2 is None:
            return sum((evaluate_matrix(f, c1) for f in self.components.values()), 0)
        if _is_exact_matrix(c1) and _is_exact_matrix(c2):
            m1 = sympy.Matrix([[to_sympy(v) for v in row] for row in c1])
            m2 = sympy.Matrix([[to_sympy(v) for v in row] for row in c2])
            x = (m1 * m2.inv()).tolist()
            det = m2.det()
            total = sympy.Integer(0)
            for k, f in self.components.items():
                total += det ** k * to_sympy(evaluate_matrix(f, x))
            return from_sympy(sympy.cancel(total))
        m1, m2 = np.asarray(c1, dtype=complex), np.asarray(c2, dtype=complex)
        x = m1 @ np.linalg.inv(m2)
        det = np.linalg.det(m2)
        return sum((det ** k * complex(evaluate_matrix(f, x)) for k, f in self.components.items()), 0j)


def _is_exact_matrix(matrix) -> bool:
    return not isinstance(matrix, np.ndarray) and all(is_exact(v) for row in matrix for v in row)


def _integrate_monomial(monomial: MatrixMonomial, n: int) -> Tuple[int, ClassFunction]:
    powers = list(monomial.trace_powers) + [0] * (2 - len(monomial.trace_powers))
    m1, m2 = powers[0], powers[1]
    p = monomial.det_power
    if m1 + m2 + n * p != 0:
        return 0, ClassFunction(n)
    terms: Dict[DominantWeight, Fraction] = {}
    for parts in partitions(m1, n):
        lam = DominantWeight(parts)
        kappa = det_shift(dual(lam), -p)
        if not kappa.is_nonnegative or kappa.size != m2:
            continue
        weight = Fraction(symmetric_group_dim(lam) * symmetric_group_dim(kappa), dimension(lam))
        terms[lam] = terms.get(lam, Fraction(0)) + weight
    return -p, ClassFunction(n, terms)


def integrate_Un(expression: MatrixPolyExpr) -> IntegralResult:
    """
    Exact int over U_n of a polynomial in tr(C_1 y), tr(C_2 y) and det(y)^{+-1}.
    tr(C_1 y)^{m_1} tr(C_2 y)^{m_2} det(y)^p contributes only when
    m_1 + m_2 + n p = 0, and then equals
    det(C_2)^{-p} sum_{lam |- m_1} w_lam w_kappa / d(lam) s_lam(C_1 C_2^{-1}), kappa = lam^- - p.
    """
    if expression.argument_count > 2:
        raise UnsupportedCaseError("exact integration supports at most two matrix arguments; "
                                   "use monte_carlo_haar")
    n = expression.n
    result = IntegralResult(n)
    for monomial, coefficient in expression.terms.items():
        exponent, function = _integrate_monomial(monomial, n)
        if expression.argument_count < 2:
            exponent = 0
        result.add(exponent, function * coefficient)
    return result


# ---------------------------------------------------------------- Monte-Carlo

def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random element of U_n from the QR decomposition of a Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_unitaries(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    return q * (d / np.abs(d))[:, None, :]


def monte_carlo_haar(f: Callable[[np.ndarray], complex], n: int, samples: int,
                     seed: int = DEFAULT_SEED, batch: int = MONTE_CARLO_BATCH) -> MonteCarloEstimate:
    """Haar average of f over U_n with its standard error; batches use independent RNG streams."""
    if samples < 1:
        raise DomainError("at least one sample is needed")
    batch_sizes = [batch] * (samples // batch) + ([samples % batch] if samples % batch else [])
    streams = np.random.SeedSequence(seed).spawn(len(batch_sizes))
    count, mean, m2 = 0, 0j, 0.0
    for size, stream in zip(batch_sizes, streams):
        rng = np.random.default_rng(stream)
        values = np.array([complex(f(y)) for y in haar_unitaries(n, size, rng)])
        if not np.all(np.isfinite(values)):
            raise DomainError("integrand returned a non-finite value")
        batch_mean = values.mean()
        batch_m2 = float(np.sum(np.abs(values - batch_mean) ** 2))
        total = count + size
        delta = batch_mean - mean
        mean = mean + delta * size / total
        m2 = m2 + batch_m2 + abs(delta) ** 2 * count * size / total
        count = total
    variance = m2 / (count - 1) if count > 1 else 0.0
    stderr = float(np.sqrt(variance / count))
    return MonteCarloEstimate(estimate=complex(mean), stderr=stderr, samples=count, seed=seed)


# ------------------------------------------------------------ contour Fourier

def contour_constant(n: int):
    """C(n) = (2 pi)^{n(n+1)/2} / prod_{i<n} i!, kept symbolic."""
    return (2 * sympy.pi) ** sympy.Rational(n * (n + 1), 2) / c_n(n)


def contour_fourier(f: ClassFunction, truncation: int) -> FourierResult:
    """
    FC[f](y) = int f(x) e^{tr(x y)} dx termwise, so that
    FC[s_{alpha^- - n}] = C(n) s_alpha(y) / Gamma_n(alpha + 1). The result is
    C(n) times the returned class function; terms needing the exponential past
    `truncation` are dropped and flagged.
    """
    n = f.n
    exponential = exponential_series(n, truncation)
    terms: Dict[DominantWeight, Fraction] = {}
    incomplete = False
    for beta, coefficient in f.items():
        alpha = dual(det_shift(beta, n))
        if not alpha.is_nonnegative:
            continue
        if alpha.size > truncation:
            incomplete = True
            continue
        # c_n d(alpha)/Gamma_n(alpha+1) from e^{tr}, 1/d(alpha) from the pairing, 1/c_n from the measure
        value = exponential.coefficient(alpha) / (dimension(alpha) * c_n(n))
        terms[alpha] = terms.get(alpha, Fraction(0)) + coefficient * value
    if incomplete:
        logger.warning(f"contour_fourier truncated at degree {truncation}; result is incomplete")
    return FourierResult(constant=contour_constant(n), function=ClassFunction(n, terms), incomplete=incomplete)


def coefficient_extract(g: ClassFunction) -> ClassFunction:
    """The class function f with FC[f] = C(n) g."""
    n = g.n
    terms = {}
    for alpha, coefficient in g.items():
        if not alpha.is_nonnegative:
            raise DomainError(f"{alpha} is not in the image of the contour transform")
        terms[det_shift(dual(alpha), -n)] = coefficient * gamma_n([p + 1 for p in alpha.parts]).as_fraction()
    return ClassFunction(n, terms)


# -------------------------------------------------------------- Euler oracles

def _as_matrix(value, n: int):
    if n == 1 and not isinstance(value, (list, tuple, np.ndarray, sympy.MatrixBase)):
        return [[value]]
    return value


def euler_oracle_61(a, b, c, d, tau: int, q: int, r: int, n: Optional[int] = None):
    """
    int over U_1 x U_1 x U_n of (a + b u + tr(C y) + u tr(D y))^tau u^q det(y)^r,
    exact: multinomial expansion, the u-integral keeps k_b + l + q = 0 and the
    y-integral goes through integrate_Un.
    """
    if tau < 0:
        raise DomainError("tau must be nonnegative")
    if n is None:
        n = 1 if not isinstance(c, (list, tuple, np.ndarray, sympy.MatrixBase)) else len(c)
    c_matrix, d_matrix = _as_matrix(c, n), _as_matrix(d, n)
    total = sympy.Integer(0)
    for k_a, k_b, j in product(range(tau + 1), repeat=3):
        l = tau - k_a - k_b - j
        if l < 0 or k_b + l + q != 0:
            continue
        weight = sympy.Integer(factorial(tau) // (factorial(k_a) * factorial(k_b) * factorial(j) * factorial(l)))
        integral = integrate_Un(MatrixPolyExpr.monomial(n, (j, l), r))
        if integral.is_zero():
            continue
        value = to_sympy(integral.evaluate(c_matrix, d_matrix))
        total += weight * to_sympy(a) ** k_a * to_sympy(b) ** k_b * value
    return from_sympy(sympy.expand(total))


def toric_euler_oracle(weights: Sequence[Sequence[int]], a: Sequence, tau: int, sigma: Sequence[int]):
    """Constant term of (sum_omega a_omega x^{w_omega})^tau x^{-sigma} over the compact torus."""
    if tau < 0:
        raise DomainError("tau must be nonnegative")
    count = len(weights)
    total = sympy.Integer(0)

    def compositions(remaining: int, slots: int):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining, -1, -1):
            for rest in compositions(remaining - first, slots - 1):
                yield (first,) + rest

    for k in compositions(tau, count):
        exponent = [sum(k[i] * weights[i][j] for i in range(count)) for j in range(len(sigma))]
        if exponent != list(sigma):
            continue
        weight = sympy.Integer(factorial(tau) // prod(factorial(x) for x in k))
        total += weight * prod((to_sympy(a[i]) ** k[i] for i in range(count)), start=sympy.Integer(1))
    return from_sympy(sympy.expand(total))
