"""
Matrix gamma function Gamma_n(alpha) = prod_j Gamma(alpha_j + n - j), its
reciprocal with poles sent to zero, Pochhammer symbols and divided powers.

Exact values are kept as rational * prod Gamma(f)^k with 0 < f < 1, so the
ratio of two values with the same gamma part is an exact rational.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, floor, prod
from typing import Dict, Sequence, Tuple, Union

import numpy as np
from scipy import special

from matrix_gamma.algebra.symfunc import ClassFunction
from matrix_gamma.algebra.weights import DominantWeight, ShiftedWeight, dimension, nonnegative_weights
from matrix_gamma.exception import DomainError
from matrix_gamma.utils import fraction_record, to_fraction


class _Pole:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Pole"

    def to_record(self) -> dict:
        return {"pole": True}


POLE = _Pole()


@dataclass(frozen=True)
class GammaValue:
    rational_part: Fraction
    gamma_args: Tuple[Tuple[Fraction, int], ...] = ()

    def __post_init__(self):
        collected: Dict[Fraction, int] = {}
        for arg, power in self.gamma_args:
            arg = Fraction(arg)
            if not 0 < arg < 1:
                raise DomainError(f"gamma argument {arg} is not reduced into (0, 1)")
            collected[arg] = collected.get(arg, 0) + power
        rational = Fraction(self.rational_part)
        args = () if rational == 0 else tuple(sorted((a, p) for a, p in collected.items() if p != 0))
        object.__setattr__(self, "rational_part", rational)
        object.__setattr__(self, "gamma_args", args)

    @property
    def is_zero(self) -> bool:
        return self.rational_part == 0

    @property
    def is_rational(self) -> bool:
        return not self.gamma_args

    def __mul__(self, other):
        if isinstance(other, GammaValue):
            return GammaValue(self.rational_part * other.rational_part, self.gamma_args + other.gamma_args)
        return GammaValue(self.rational_part * Fraction(other), self.gamma_args)

    __rmul__ = __mul__

    def inverse(self) -> "GammaValue":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero gamma value")
        return GammaValue(1 / self.rational_part, tuple((a, -p) for a, p in self.gamma_args))

    def __truediv__(self, other):
        if isinstance(other, GammaValue):
            return self * other.inverse()
        return GammaValue(self.rational_part / Fraction(other), self.gamma_args)

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} carries irrational gamma factors")
        return self.rational_part

    def to_float(self) -> float:
        value = float(self.rational_part)
        for arg, power in self.gamma_args:
            value *= float(special.gamma(float(arg))) ** power
        return value

    def to_record(self) -> dict:
        record = fraction_record(self.rational_part)
        record["gamma_args"] = [[str(a), p] for a, p in self.gamma_args]
        return record


ONE = GammaValue(Fraction(1))
ZERO = GammaValue(Fraction(0))

GammaResult = Union[GammaValue, _Pole]


def _vector(alpha) -> Tuple[Fraction, ...]:
    if isinstance(alpha, ShiftedWeight):
        return alpha.as_vector()
    if isinstance(alpha, DominantWeight):
        return tuple(Fraction(p) for p in alpha.parts)
    return tuple(to_fraction(a) for a in alpha)


def gamma(z) -> GammaResult:
    """Exact Gamma(z) for rational z."""
    z = to_fraction(z)
    if z.denominator == 1:
        if z <= 0:
            return POLE
        return GammaValue(Fraction(factorial(int(z) - 1)))
    whole = floor(z)
    fractional = z - whole
    if whole >= 0:
        rational = prod((fractional + j for j in range(whole)), start=Fraction(1))
    else:
        rational = 1 / prod((fractional + j for j in range(whole, 0)), start=Fraction(1))
    return GammaValue(rational, ((fractional, 1),))


def gamma_n(alpha) -> GammaResult:
    vector = _vector(alpha)
    n = len(vector)
    result = ONE
    for j, a in enumerate(vector):
        factor = gamma(a + n - 1 - j)
        if factor is POLE:
            return POLE
        result = result * factor
    return result


def reciprocal_gamma_n(alpha) -> GammaValue:
    value = gamma_n(alpha)
    if value is POLE:
        return ZERO
    return value.inverse()


def pochhammer(a, m: int) -> Fraction:
    a = to_fraction(a)
    return prod((a + j for j in range(m)), start=Fraction(1))


def matrix_pochhammer(a, mu: DominantWeight, n: int = None) -> Fraction:
    """[a]_mu = prod_j (a + n - j)_{mu_j}."""
    n = n or mu.n
    if mu.n != n:
        raise DomainError(f"{mu} does not have length {n}")
    if not mu.is_nonnegative:
        raise DomainError(f"{mu} has negative parts")
    a = to_fraction(a)
    return prod((pochhammer(a + n - 1 - j, mu[j]) for j in range(n)), start=Fraction(1))


def divided_power_coeff(alpha: DominantWeight) -> Fraction:
    """1/Gamma_n(alpha + 1), zero off the positive cone."""
    return reciprocal_gamma_n([p + 1 for p in alpha.parts]).as_fraction()


def c_n(n: int) -> int:
    return prod(factorial(j) for j in range(1, n))


def exponential_series(n: int, degree: int) -> ClassFunction:
    """c_n * sum_{|alpha| <= degree} d(alpha) s_alpha / Gamma_n(alpha + 1), the expansion of e^{tr x}."""
    terms = {}
    for m in range(degree + 1):
        for alpha in nonnegative_weights(m, n):
            terms[alpha] = c_n(n) * dimension(alpha) * divided_power_coeff(alpha)
    return ClassFunction(n, terms)


# ---------------------------------------------------------------- float path

def reciprocal_gamma_float(z) -> complex:
    return complex(special.rgamma(complex(z)))


def reciprocal_gamma_n_float(alpha: Sequence) -> complex:
    """1/Gamma_n for arbitrary complex shifts; poles give exactly 0."""
    n = len(alpha)
    return complex(np.prod([special.rgamma(complex(a) + n - 1 - j) for j, a in enumerate(alpha)]))


def gamma_n_float(alpha: Sequence) -> complex:
    n = len(alpha)
    return complex(np.prod([special.gamma(complex(a) + n - 1 - j) for j, a in enumerate(alpha)]))
