import sys
from fractions import Fraction

from matrix_gamma.algebra.gl2 import oracle_agreement, threej_records, triangle_check
from matrix_gamma.algebra.symfunc import schur_eval, schur_matrix_eval
from matrix_gamma.algebra.weights import DominantWeight, dimension, ssyt_count
from matrix_gamma.entity.config_entity import RepresentationConfig
from matrix_gamma.exception import MatrixGammaException, SchemaError
from matrix_gamma.logger import logger
from matrix_gamma.utils import fraction_record


class RepresentationComputation:

    def __init__(self, representation_config: RepresentationConfig):
        try:
            self.representation_config = representation_config
        except Exception as e:
            raise MatrixGammaException(e, sys) from e

    def get_weight(self) -> DominantWeight:
        if self.representation_config.weight is None:
            raise SchemaError("$.weight", "a dominant weight is required")
        return DominantWeight(tuple(self.representation_config.weight))

    def initiate_threej(self) -> dict:
        try:
            triple = self.representation_config.triple
            if triple is None:
                raise SchemaError("$.threej", "the threej command needs lam, mu and nu")
            lam, mu, nu = triple
            admissible = triangle_check(lam, mu, nu)
            report = {"lam": list(lam), "mu": list(mu), "nu": list(nu), "admissible": admissible,
                      "records": [], "mode": "float"}
            if admissible:
                records = threej_records(lam, mu, nu)
                report["records"] = records
                report["norm_squared"] = sum(record["value"] ** 2 for record in records)
                report["oracle_agreement"] = oracle_agreement(lam, mu, nu)
            logger.info(f"3j table of {triple}: admissible={admissible}, {len(report['records'])} entries")
            return report
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def initiate_dim(self) -> dict:
        try:
            alpha = self.get_weight()
            report = {"weight": list(alpha.parts), "n": alpha.n, "dimension": dimension(alpha),
                      "ssyt_count": ssyt_count(alpha)}
            logger.info(f"dim {alpha} = {report['dimension']}")
            return report
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def initiate_schur(self) -> dict:
        try:
            alpha = self.get_weight()
            x = self.representation_config.x
            if x is None:
                raise SchemaError("$.x", "the schur command needs eigenvalues or a matrix")
            is_matrix = len(x) > 0 and isinstance(x[0], (list, tuple))
            value = schur_matrix_eval(alpha, x) if is_matrix else schur_eval(alpha, list(x))
            report = {"weight": list(alpha.parts), "argument": "matrix" if is_matrix else "eigenvalues"}
            if isinstance(value, (int, Fraction)):
                report["value"] = fraction_record(value)
                report["mode"] = "exact"
            else:
                value = complex(value)
                report["value"] = {"re": value.real, "im": value.imag}
                report["mode"] = "float"
            logger.info(f"s_{alpha} evaluated: {report['value']}")
            return report
        except Exception as e:
            raise MatrixGammaException(e, sys)
