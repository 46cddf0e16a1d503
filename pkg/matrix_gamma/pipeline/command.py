import sys

from matrix_gamma.component.geometry import GeometryComputation
from matrix_gamma.component.integration import IntegrationComputation
from matrix_gamma.component.representation import RepresentationComputation
from matrix_gamma.component.series import SeriesComputation
from matrix_gamma.config.pipeline.command import CommandConfig
from matrix_gamma.constant import (COMMAND_COBASE, COMMAND_DEGREE, COMMAND_DIM, COMMAND_FOURIER, COMMAND_INTEGRATE,
                                   COMMAND_NONRESONANT, COMMAND_ORBITS, COMMAND_SCHUR, COMMAND_SERIES_CHECK,
                                   COMMAND_SERIES_EVAL, COMMAND_SERIES_EXPAND, COMMAND_THREEJ, COMMANDS)
from matrix_gamma.entity.artifact_entity import CommandArtifact
from matrix_gamma.exception import MatrixGammaException, SchemaError
from matrix_gamma.logger import logger
from matrix_gamma.utils import write_report_file


class CommandPipeline:

    def __init__(self, command_config: CommandConfig):
        self.command_config: CommandConfig = command_config
        self.report_config = command_config.get_report_config()

    def start_series(self) -> dict:
        try:
            series_computation = SeriesComputation(series_config=self.command_config.get_series_config(),
                                                   report_config=self.report_config)
            command = self.command_config.command
            if command == COMMAND_SERIES_EXPAND:
                return series_computation.initiate_series_expand()
            if command == COMMAND_SERIES_EVAL:
                return series_computation.initiate_series_eval()
            check_report = series_computation.initiate_series_check()
            return {"check": self.command_config.spec.check.get("name"),
                    "passed": bool(check_report.passed),
                    "details": check_report.details}
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def start_geometry(self) -> dict:
        try:
            geometry_computation = GeometryComputation(geometry_config=self.command_config.get_geometry_config())
            return {
                COMMAND_DEGREE: geometry_computation.initiate_degree,
                COMMAND_ORBITS: geometry_computation.initiate_orbits,
                COMMAND_NONRESONANT: geometry_computation.initiate_nonresonant,
                COMMAND_COBASE: geometry_computation.initiate_cobase,
            }[self.command_config.command]()
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def start_integration(self) -> dict:
        try:
            integration_computation = IntegrationComputation(
                integration_config=self.command_config.get_integration_config())
            if self.command_config.command == COMMAND_INTEGRATE:
                return integration_computation.initiate_integration()
            return integration_computation.initiate_fourier()
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def start_representation(self) -> dict:
        try:
            representation_computation = RepresentationComputation(
                representation_config=self.command_config.get_representation_config())
            return {
                COMMAND_THREEJ: representation_computation.initiate_threej,
                COMMAND_DIM: representation_computation.initiate_dim,
                COMMAND_SCHUR: representation_computation.initiate_schur,
            }[self.command_config.command]()
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def run(self) -> CommandArtifact:
        try:
            command = self.command_config.command
            if command not in COMMANDS:
                raise SchemaError("$", f"unknown command {command!r}; expected one of {COMMANDS}")
            logger.info(f"{'>>' * 10}Command [{command}] started{'<<' * 10}")
            if command in (COMMAND_SERIES_EXPAND, COMMAND_SERIES_EVAL, COMMAND_SERIES_CHECK):
                result = self.start_series()
            elif command in (COMMAND_DEGREE, COMMAND_ORBITS, COMMAND_NONRESONANT, COMMAND_COBASE):
                result = self.start_geometry()
            elif command in (COMMAND_INTEGRATE, COMMAND_FOURIER):
                result = self.start_integration()
            else:
                result = self.start_representation()

            # no timestamps: identical inputs give byte-identical reports
            report = {"version": self.report_config.version,
                      "command": command,
                      "mode": self.report_config.mode,
                      "seed": self.report_config.seed,
                      "inputs": self.command_config.spec.to_record(),
                      "result": result}
            passed = True
            if command == COMMAND_SERIES_CHECK:
                passed = result["passed"]
                report["passed"] = passed
            if self.report_config.out_path:
                write_report_file(self.report_config.out_path, report)
            logger.info(f"{'>>' * 10}Command [{command}] finished: passed={passed}{'<<' * 10}")
            return CommandArtifact(command=command, report=report, passed=passed,
                                   report_file_path=self.report_config.out_path)
        except Exception as e:
            raise MatrixGammaException(e, sys)
