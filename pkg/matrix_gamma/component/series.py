import os
import sys
from fractions import Fraction
from typing import Optional

from matrix_gamma.algebra import gammaseries
from matrix_gamma.algebra.gammaseries import CheckReport, EvalPoint, GammaSeries
from matrix_gamma.constant import BACKEND_GL2_TRIPLE, MODE_EXACT, RESIDUAL_TOLERANCE, SERIES_CHECKS
from matrix_gamma.entity.artifact_entity import TermTableArtifact
from matrix_gamma.entity.config_entity import ReportConfig, SeriesConfig
from matrix_gamma.exception import MatrixGammaException, SchemaError
from matrix_gamma.logger import logger
from matrix_gamma.utils import fraction_record, to_fraction


def value_record(value) -> dict:
    """Exact values as {"num", "den"}, everything else as a float pair."""
    if isinstance(value, (int, Fraction)):
        return fraction_record(value)
    value = complex(value)
    return {"re": value.real, "im": value.imag}


class SeriesComputation:

    def __init__(self, series_config: SeriesConfig, report_config: ReportConfig):
        try:
            self.series_config = series_config
            self.report_config = report_config
        except Exception as e:
            raise MatrixGammaException(e, sys) from e

    def build(self, truncation: Optional[int] = None) -> GammaSeries:
        config = self.series_config
        return gammaseries.build_series(config.group, config.reps, config.s, config.backend,
                                        config.truncation if truncation is None else truncation)

    def export_term_table(self, series: GammaSeries) -> Optional[TermTableArtifact]:
        if self.report_config.csv_path is None:
            return None
        table = gammaseries.terms_table(series)
        os.makedirs(os.path.dirname(self.report_config.csv_path) or ".", exist_ok=True)
        table.to_csv(self.report_config.csv_path, index=False)
        logger.info(f"Term table with {len(table)} rows written: {self.report_config.csv_path}")
        return TermTableArtifact(csv_file_path=self.report_config.csv_path, row_count=len(table))

    def initiate_series_expand(self) -> dict:
        try:
            logger.info(f"{'>>' * 10}Series expansion started{'<<' * 10}")
            series = self.build()
            result = series.to_record()
            artifact = self.export_term_table(series)
            if artifact is not None:
                result["csv_file_path"] = artifact.csv_file_path
            logger.info(f"{'>>' * 10}Series expansion finished: {len(series.terms)} terms{'<<' * 10}")
            return result
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def initiate_series_eval(self) -> dict:
        try:
            logger.info(f"{'>>' * 10}Series evaluation started{'<<' * 10}")
            config = self.series_config
            if config.point is None:
                raise SchemaError("$.point", "series eval needs a point")
            series = self.build()
            point = EvalPoint.of(config.point)
            result = {"term_count": len(series.terms), "truncation": series.truncation, "backend": series.backend}
            value = gammaseries.evaluate(series, point)
            result["value"] = {"re": value.real, "im": value.imag, "mode": "float"}
            if self.report_config.mode == MODE_EXACT and point.is_exact and series.backend != BACKEND_GL2_TRIPLE \
                    and all(isinstance(v, Fraction) and v.denominator == 1 for v in series.s):
                exact = gammaseries.evaluate_exact(series, point)
                result["exact_value"] = value_record(exact) if isinstance(exact, (int, Fraction)) \
                    else {"expression": str(exact)}
            logger.info(f"{'>>' * 10}Series evaluation finished: {result['value']}{'<<' * 10}")
            return result
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def initiate_series_check(self) -> CheckReport:
        try:
            config = self.series_config
            name = config.check.get("name")
            if name not in SERIES_CHECKS:
                raise SchemaError("$.check.name", f"check must be one of {SERIES_CHECKS}")
            logger.info(f"{'>>' * 10}Series check {name} started{'<<' * 10}")
            report = getattr(self, f"_check_{name.replace('-', '_')}")(config.check)
            logger.info(f"{'>>' * 10}Series check {name} finished: passed={report.passed}{'<<' * 10}")
            return report
        except Exception as e:
            raise MatrixGammaException(e, sys)

    # --------------------------------------------------------------- checks

    def _check_shift_invariance(self, options: dict) -> CheckReport:
        series = self.build()
        s_prime = options.get("s_prime", [0] * len(self.series_config.reps))
        return gammaseries.shift_invariance_check(series, s_prime)

    def _check_gauss_reduction(self, options: dict) -> CheckReport:
        return gammaseries.gauss_reduction_check(options.get("s1", 0), options.get("s2", 0), options.get("s4", 0),
                                                 int(options.get("n", 1)), self.series_config.truncation)

    def _check_terminating(self, options: dict) -> CheckReport:
        config = self.series_config
        return gammaseries.terminating_series_check(config.group, config.reps, [to_fraction(v) for v in config.s],
                                                    config.backend, int(options.get("points", 3)), config.seed)

    def _check_batyrev(self, options: dict) -> CheckReport:
        config = self.series_config
        if "a" not in options:
            raise SchemaError("$.check.a", "the Batyrev check needs a point a")
        a = [complex(v) for v in options["a"]]
        report = gammaseries.batyrev_series_check(config.group, config.reps, a, config.truncation,
                                           int(options.get("zero_index", 0)),
                                           int(options.get("quadrature_points", 64)))
        return report

    def _check_residual(self, options: dict) -> CheckReport:
        config = self.series_config
        if config.point is None:
            raise SchemaError("$.point", "the residual check needs a point")
        series = gammaseries.build_series(config.group, config.reps, [complex(v) if isinstance(v, complex)
                                                                       else float(v) for v in config.s],
                                          config.backend, config.truncation)
        return gammaseries.system_residual(series, EvalPoint.of(config.point), float(options.get("step", 1e-4)),
                                           float(options.get("tolerance", RESIDUAL_TOLERANCE)))

    def _check_exponential(self, options: dict) -> CheckReport:
        return gammaseries.exponential_series_check(int(options.get("n", 1)), self.series_config.truncation)

    def _check_deformation(self, options: dict) -> CheckReport:
        config = self.series_config
        return gammaseries.deformation_check(config.group, config.reps, [to_fraction(v) for v in config.s],
                                             config.truncation, config.backend)
