"""
GL_2 special functions: Gelfand-Cetlin matrix elements, 3j symbols, the
triangle condition and the Appell-type Gamma-series of C* x C* x GL_2.

The GT basis of Sigma^lam is e_k, lam_1 >= k >= lam_2, ordered by decreasing k.
Row k, column m of t^(lam)(x) is the coefficient of e_k in x e_m. With the
square-root factor below, t^(lam) is a homomorphism and unitary on U_2, and
e_k is the angular momentum state j = (lam_1 - lam_2)/2, m = k - |lam|/2.
"""
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from scipy.linalg import null_space
from sympy.physics.wigner import wigner_3j

from matrix_gamma.algebra.gammafn import reciprocal_gamma_float, reciprocal_gamma_n_float
from matrix_gamma.algebra.weights import DominantWeight, bounded_weights, dimension
from matrix_gamma.constant import DEFAULT_SEED, FLOAT_TOLERANCE
from matrix_gamma.exception import DomainError
from matrix_gamma.logger import logger
from matrix_gamma.utils import is_exact, to_fraction

GTBasisIndex = namedtuple("GTBasisIndex", ["lam", "k"])

AppellTerm = namedtuple("AppellTerm", ["lam", "mu", "nu", "value"])

Triple = Tuple[DominantWeight, DominantWeight, DominantWeight]


def _weight(value) -> DominantWeight:
    weight = value if isinstance(value, DominantWeight) else DominantWeight(tuple(value))
    if weight.n != 2:
        raise DomainError(f"{weight} is not a GL_2 weight")
    return weight


def gt_basis(lam) -> List[GTBasisIndex]:
    lam = _weight(lam)
    return [GTBasisIndex(lam, k) for k in range(lam[0], lam[1] - 1, -1)]


def _entries(x):
    if isinstance(x, np.ndarray):
        return x[0, 0], x[0, 1], x[1, 0], x[1, 1]
    return x[0][0], x[0][1], x[1][0], x[1][1]


def gt_matrix_element(lam, k: int, m: int, x):
    """
    t_km(x) = |x|^{lam_2} sqrt((m-lam_2)!(lam_1-m)! / ((k-lam_2)!(lam_1-k)!))
              sum_{i+j=m-lam_2} C(k-lam_2, i) C(lam_1-k, j) x11^i x12^{k-lam_2-i} x21^j x22^{lam_1-k-j}.
    Exact when x is rational and the square root is rational.
    """
    lam = _weight(lam)
    l1, l2 = lam.parts
    if not (l2 <= k <= l1 and l2 <= m <= l1):
        raise DomainError(f"GT indices ({k}, {m}) out of range for {lam}")
    x11, x12, x21, x22 = _entries(x)
    exact = all(is_exact(v) for v in (x11, x12, x21, x22))
    if exact:
        x11, x12, x21, x22 = (to_fraction(v) for v in (x11, x12, x21, x22))
    else:
        x11, x12, x21, x22 = (complex(v) for v in (x11, x12, x21, x22))
    det = x11 * x22 - x12 * x21
    if l2 < 0 and det == 0:
        raise DomainError(f"singular matrix with negative weight {lam}")
    total = Fraction(0) if exact else 0j
    for i in range(0, k - l2 + 1):
        j = m - l2 - i
        if not 0 <= j <= l1 - k:
            continue
        total += comb(k - l2, i) * comb(l1 - k, j) * x11 ** i * x12 ** (k - l2 - i) * x21 ** j * x22 ** (l1 - k - j)
    ratio = Fraction(factorial(m - l2) * factorial(l1 - m), factorial(k - l2) * factorial(l1 - k))
    root = sympy.sqrt(sympy.Rational(ratio.numerator, ratio.denominator))
    if exact and root.is_Rational:
        return total * Fraction(int(root.p), int(root.q)) * det ** l2
    return complex(total) * float(root) * complex(det) ** l2


def gt_matrix(lam, x) -> np.ndarray:
    """The full matrix t^(lam)(x) in the GT basis, as complex floats."""
    basis = gt_basis(lam)
    return np.array([[complex(gt_matrix_element(lam, row.k, column.k, x)) for column in basis]
                     for row in basis], dtype=complex)


def triangle_check(lam, mu, nu) -> bool:
    lam, mu, nu = _weight(lam), _weight(mu), _weight(nu)
    if lam.size + mu.size + nu.size != 0:
        return False
    a, b, c = (w[0] - w[1] for w in (lam, mu, nu))
    return a <= b + c and b <= a + c and c <= a + b


def _spin(weight: DominantWeight, k: int) -> Tuple[sympy.Rational, sympy.Rational]:
    return sympy.Rational(weight[0] - weight[1], 2), sympy.Rational(2 * k - weight.size, 2)


@lru_cache(maxsize=None)
def _threej_table(lam: DominantWeight, mu: DominantWeight,
                  nu: DominantWeight) -> Tuple[Tuple[Tuple[int, int, int], float], ...]:
    if not triangle_check(lam, mu, nu):
        return ()
    values = {}
    for i in range(lam[1], lam[0] + 1):
        for j in range(mu[1], mu[0] + 1):
            k = -i - j
            if not mu[1] <= j <= mu[0] or not nu[1] <= k <= nu[0]:
                continue
            j1, m1 = _spin(lam, i)
            j2, m2 = _spin(mu, j)
            j3, m3 = _spin(nu, k)
            value = float(wigner_3j(j1, j2, j3, m1, m2, m3))
            if abs(value) > FLOAT_TOLERANCE:
                values[(i, j, k)] = value
    if not values:
        return ()
    sign = 1.0 if values[max(values)] > 0 else -1.0
    return tuple(sorted((key, sign * value) for key, value in values.items()))


def threej_table(lam, mu, nu) -> Dict[Tuple[int, int, int], float]:
    """Components of the unit GL_2-invariant vector of the triple, by GT indices."""
    return dict(_threej_table(_weight(lam), _weight(mu), _weight(nu)))


def threej(lam, mu, nu, i: int, j: int, k: int) -> float:
    """Zero off i + j + k = 0 and for triples without invariants."""
    if i + j + k != 0:
        return 0.0
    return threej_table(lam, mu, nu).get((i, j, k), 0.0)


def threej_records(lam, mu, nu) -> List[dict]:
    lam, mu, nu = _weight(lam), _weight(mu), _weight(nu)
    return [{"lam": list(lam.parts), "mu": list(mu.parts), "nu": list(nu.parts),
             "i": i, "j": j, "k": k, "value": value}
            for (i, j, k), value in sorted(threej_table(lam, mu, nu).items())]


def _position(weight: DominantWeight, k: int) -> int:
    return weight[0] - k


def threej_vector(lam, mu, nu) -> np.ndarray:
    """threej_table laid out as a vector of Sigma^lam (x) Sigma^mu (x) Sigma^nu, numpy kron order."""
    lam, mu, nu = _weight(lam), _weight(mu), _weight(nu)
    dims = [dimension(w) for w in (lam, mu, nu)]
    vector = np.zeros(dims[0] * dims[1] * dims[2])
    for (i, j, k), value in threej_table(lam, mu, nu).items():
        index = (_position(lam, i) * dims[1] + _position(mu, j)) * dims[2] + _position(nu, k)
        vector[index] = value
    return vector


def invariant_vector_oracle(lam, mu, nu, seed: int = DEFAULT_SEED, samples: int = 3) -> Optional[np.ndarray]:
    """
    Unit vector spanning the invariants of the triple, from the null space of
    t(g) (x) t(g) (x) t(g) - 1 over random g; sign fixed like threej.
    """
    lam, mu, nu = _weight(lam), _weight(mu), _weight(nu)
    if lam.size + mu.size + nu.size != 0:
        return None
    rng = np.random.default_rng(seed)
    blocks = []
    for _ in range(samples):
        g = rng.standard_normal((2, 2)) + np.eye(2)
        action = np.kron(np.kron(gt_matrix(lam, g), gt_matrix(mu, g)), gt_matrix(nu, g))
        blocks.append(action - np.eye(action.shape[0]))
    basis = null_space(np.vstack(blocks), rcond=1e-9)
    if basis.shape[1] == 0:
        return None
    if basis.shape[1] > 1:
        raise DomainError(f"invariant space of {lam}, {mu}, {nu} has dimension {basis.shape[1]}")
    vector = basis[:, 0]
    largest = vector[np.argmax(np.abs(vector))]
    vector = (vector * abs(largest) / largest).real
    vector = vector / np.linalg.norm(vector)
    leading = next(i for i in range(len(vector)) if abs(vector[i]) > 1e-8)
    return vector if vector[leading] > 0 else -vector


def oracle_agreement(lam, mu, nu, tolerance: float = 1e-8) -> bool:
    """threej against the null-space oracle, both sign-normalised."""
    oracle = invariant_vector_oracle(lam, mu, nu)
    table = threej_vector(lam, mu, nu)
    if oracle is None:
        return not table.any()
    agree = bool(np.allclose(table, oracle, atol=tolerance))
    if not agree:
        logger.warning(f"3j values of {lam}, {mu}, {nu} disagree with the null-space oracle")
    return agree


# ------------------------------------------------------------ Appell series

def admissible_triples(bound: int) -> Iterator[Triple]:
    """Triples with an invariant and every weight of norm at most bound; nu follows from lam and mu."""
    weights = bounded_weights(2, bound)
    for lam in weights:
        for mu in weights:
            size = -lam.size - mu.size
            a, b = lam[0] - lam[1], mu[0] - mu[1]
            for gap in range(abs(a - b), a + b + 1, 2):
                if (size + gap) % 2:
                    continue
                nu = DominantWeight(((size + gap) // 2, (size - gap) // 2))
                if abs(nu[0]) + abs(nu[1]) <= bound:
                    yield lam, mu, nu


def _det(matrix: np.ndarray) -> complex:
    return complex(np.linalg.det(matrix))


def appell_terms(s: Sequence, point: Sequence, truncation: int) -> Iterator[AppellTerm]:
    """
    Terms of the Gamma-series of C* x C* x GL_2 with A = {N^3, N^2 L, N^2 V, N L V, L^2 V}:
        a^{m+s1} b^{-m+s2} |x|^{s3} |y|^{s4} |z|^{s5} d(lam) d(mu) d(nu) <v, t(x) (x) t(y) (x) t(z) v>
        / (Gamma(m+s1+1) Gamma(-m+s2+1) Gamma_2(lam+s3+1) Gamma_2(mu+s4+1) Gamma_2(nu+s5+1)),
    m = |mu| + 2|nu|, over admissible triples with max(|m|, norms) <= truncation.
    """
    if len(s) != 5:
        raise DomainError("the Appell series takes five exponents")
    s1, s2, s3, s4, s5 = (complex(v) if isinstance(v, (float, complex)) else complex(float(to_fraction(v)))
                          for v in s)
    a, b, x, y, z = point
    x, y, z = (np.asarray(matrix, dtype=complex) for matrix in (x, y, z))
    a, b = complex(a), complex(b)
    prefactor = _det(x) ** s3 * _det(y) ** s4 * _det(z) ** s5
    for lam, mu, nu in admissible_triples(truncation):
        m = mu.size + 2 * nu.size
        if abs(m) > truncation:
            continue
        gammas = reciprocal_gamma_float(m + s1 + 1) * reciprocal_gamma_float(-m + s2 + 1) \
            * reciprocal_gamma_n_float([p + s3 + 1 for p in lam.parts]) \
            * reciprocal_gamma_n_float([p + s4 + 1 for p in mu.parts]) \
            * reciprocal_gamma_n_float([p + s5 + 1 for p in nu.parts])
        if gammas == 0:
            continue
        v = threej_vector(lam, mu, nu)
        action = np.kron(np.kron(gt_matrix(lam, x), gt_matrix(mu, y)), gt_matrix(nu, z))
        invariant = complex(v @ action @ v)
        value = a ** (m + s1) * b ** (-m + s2) * prefactor * dimension(lam) * dimension(mu) * dimension(nu) \
            * invariant * gammas
        yield AppellTerm(lam, mu, nu, value)


def appell_series(s: Sequence, point: Sequence, truncation: int) -> complex:
    total, count = 0j, 0
    for term in appell_terms(s, point, truncation):
        total += term.value
        count += 1
    if count == 0:
        logger.warning(f"Every term of the Appell series up to degree {truncation} meets a gamma pole")
    return total
