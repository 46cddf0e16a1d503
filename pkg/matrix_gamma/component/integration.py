import sys
from fractions import Fraction

import numpy as np

from matrix_gamma.algebra.haarint import contour_fourier, integrate_Un, monte_carlo_haar
from matrix_gamma.entity.config_entity import IntegrationConfig
from matrix_gamma.exception import MatrixGammaException, SchemaError
from matrix_gamma.logger import logger
from matrix_gamma.utils import fraction_record


def _float_matrix(value, n: int) -> np.ndarray:
    if value is None:
        return np.eye(n, dtype=complex)
    return np.array([[complex(v) for v in row] for row in value], dtype=complex)


class IntegrationComputation:

    def __init__(self, integration_config: IntegrationConfig):
        try:
            self.integration_config = integration_config
        except Exception as e:
            raise MatrixGammaException(e, sys) from e

    def monte_carlo(self) -> dict:
        """Haar average of the same expression at the given C_1, C_2, as the numeric cross-check."""
        config = self.integration_config
        expression = config.expression
        n = expression.n
        c1 = _float_matrix(config.c1, n)
        c2 = _float_matrix(config.c2, n)
        terms = list(expression.terms.items())

        def integrand(y: np.ndarray) -> complex:
            traces = [np.trace(c1 @ y), np.trace(c2 @ y)]
            det = np.linalg.det(y)
            return sum(float(coefficient) * np.prod([traces[i] ** m for i, m in enumerate(monomial.trace_powers)])
                       * det ** monomial.det_power for monomial, coefficient in terms)

        estimate = monte_carlo_haar(integrand, n, config.samples, config.seed)
        return {"estimate": {"re": estimate.estimate.real, "im": estimate.estimate.imag},
                "stderr": estimate.stderr, "samples": estimate.samples, "seed": estimate.seed}

    def initiate_integration(self) -> dict:
        try:
            logger.info(f"{'>>' * 10}Haar integration started{'<<' * 10}")
            config = self.integration_config
            if config.expression is None:
                raise SchemaError("$.integrate", "the integrate command needs an integrate section")
            result = integrate_Un(config.expression)
            report = {"n": config.expression.n,
                      "components": [{"det_exponent": k, "terms": f.to_records()}
                                     for k, f in sorted(result.components.items())],
                      "is_zero": result.is_zero()}
            if config.c1 is not None:
                value = result.evaluate(config.c1, config.c2)
                if isinstance(value, (int, Fraction)):
                    report["value"] = fraction_record(value)
                else:
                    value = complex(value)
                    report["value"] = {"re": value.real, "im": value.imag}
            if config.samples:
                report["monte_carlo"] = self.monte_carlo()
            logger.info(f"{'>>' * 10}Haar integration finished{'<<' * 10}")
            return report
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def initiate_fourier(self) -> dict:
        try:
            config = self.integration_config
            if config.function is None:
                raise SchemaError("$.fourier", "the fourier command needs a fourier section")
            result = contour_fourier(config.function, config.truncation)
            logger.info(f"Contour transform of {config.function}: incomplete={result.incomplete}")
            return {"constant": str(result.constant),
                    "terms": result.function.to_records(),
                    "incomplete": result.incomplete}
        except Exception as e:
            raise MatrixGammaException(e, sys)
