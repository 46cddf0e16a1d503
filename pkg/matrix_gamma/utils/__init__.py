import json
import os
import sys
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Sequence, Union

import sympy
from sympy import ZZ
from sympy.matrices.normalforms import smith_normal_decomp
import yaml

from matrix_gamma.exception import DomainError, MatrixGammaException, SchemaError
from matrix_gamma.logger import logger

Rational = Union[int, Fraction]


def read_spec_text(text: str) -> dict:
    try:
        document = yaml.safe_load(text)
        if document is None:
            return {}
        if not isinstance(document, dict):
            raise SchemaError("$", "spec document must be a mapping")
        return document
    except yaml.YAMLError as e:
        raise SchemaError("$", f"unparseable document: {e}") from e


def dump_report(report: dict) -> str:
    """Deterministic JSON text of a report: sorted keys, fixed separators."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report_file(file_path: str, report: dict):
    try:
        os.makedirs(os.path.dirname(file_path) or ".", exist_ok=True)
        with open(file_path, "w") as report_file:
            report_file.write(dump_report(report))
        logger.info(f"Report written: {file_path}")
    except Exception as e:
        raise MatrixGammaException(e, sys)


# ---------------------------------------------------------------- rationals

def to_fraction(value) -> Fraction:
    """
    Accepts int, Fraction, "p/q" strings, {"num": .., "den": ..} records and
    sympy rationals. Floats are rejected: exact paths never guess.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, dict) and "num" in value and "den" in value:
        return Fraction(int(value["num"]), int(value["den"]))
    if isinstance(value, sympy.Basic) and value.is_Rational:
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"not an exact rational: {value!r}")


def fraction_record(value) -> Dict[str, str]:
    value = to_fraction(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def to_sympy(value):
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.sympify(value)


def from_sympy(value):
    """sympy rationals come back as Fraction; anything else is returned as is."""
    if isinstance(value, sympy.Basic) and value.is_Rational:
        return Fraction(int(value.p), int(value.q))
    return value


def is_exact(value) -> bool:
    if isinstance(value, (bool, float, complex)):
        return False
    if isinstance(value, (int, Fraction)):
        return True
    if isinstance(value, sympy.Basic):
        return not value.has(sympy.Float)
    return False


# ---------------------------------------------------------- integer lattices

def integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    """Scale every rational row by the lcm of its denominators."""
    result = []
    for row in rows:
        fractions = [to_fraction(entry) for entry in row]
        scale = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fractions), 1)
        result.append([int(f * scale) for f in fractions])
    return result


def integer_kernel(rows: Sequence[Sequence], width: int) -> List[List[int]]:
    """
    Z-basis of {x in Z^width : rows . x = 0}.

    From the Smith decomposition S M T = D: the columns of T facing the zero
    columns of D span the integer kernel.
    """
    if not rows:
        return [[int(i == j) for j in range(width)] for i in range(width)]
    matrix = sympy.Matrix(integer_rows(rows))
    if matrix.cols != width:
        raise DomainError(f"rows have {matrix.cols} entries, expected {width}")
    smith, _, right = smith_normal_decomp(matrix, domain=ZZ)
    return [[int(right[i, j]) for i in range(width)] for j in range(width) if not any(smith[:, j])]


def rational_complement(rows: Sequence[Sequence], width: int) -> List[List[Fraction]]:
    """Rational basis of the orthogonal complement of the row span."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(width)] for i in range(width)]
    matrix = sympy.Matrix([[to_sympy(to_fraction(x)) for x in row] for row in rows])
    return [[from_sympy(x) for x in vector] for vector in matrix.nullspace()]


def lattice_basis_of_span(vectors: Sequence[Sequence], width: int) -> List[List[int]]:
    """Z-basis of Z^width intersected with the rational span of `vectors`."""
    complement = rational_complement(vectors, width)
    return integer_kernel(complement, width)


def rank_of(rows: Iterable[Sequence]) -> int:
    rows = [list(row) for row in rows]
    if not rows:
        return 0
    return sympy.Matrix([[to_sympy(to_fraction(x)) for x in row] for row in rows]).rank()
