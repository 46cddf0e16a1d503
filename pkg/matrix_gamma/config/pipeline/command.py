import sys
from fractions import Fraction
from typing import Optional

from matrix_gamma.algebra.haarint import MatrixPolyExpr
from matrix_gamma.algebra.symfunc import ClassFunction
from matrix_gamma.algebra.weights import DominantWeight
from matrix_gamma.constant import (DEFAULT_SEED, MAX_AMBIENT_DIM, MAX_BLOCK_SIZE, MAX_TRUNCATION, MODE_EXACT,
                                   MODE_FLOAT, MONTE_CARLO_SAMPLES, VERSION)
from matrix_gamma.entity.config_entity import (GeometryConfig, IntegrationConfig, ReportConfig,
                                               RepresentationConfig, SeriesConfig)
from matrix_gamma.entity.schema import SpecDocument
from matrix_gamma.exception import MatrixGammaException, ResourceLimitError, SchemaError
from matrix_gamma.logger import logger
from matrix_gamma.utils import to_fraction

DEFAULT_TRUNCATION = 6


class CommandConfig:

    def __init__(self, spec: SpecDocument, command: str, seed: Optional[int] = None,
                 truncation: Optional[int] = None, mode: Optional[str] = None,
                 out_path: Optional[str] = None, csv_path: Optional[str] = None):
        """
        Merges a parsed spec document with command-line overrides; the command
        line wins over the document.
        """
        self.spec = spec
        self.command = command
        self.seed = seed if seed is not None else (spec.seed if spec.seed is not None else DEFAULT_SEED)
        self.truncation = truncation if truncation is not None else \
            (spec.truncation if spec.truncation is not None else DEFAULT_TRUNCATION)
        self.mode = mode or spec.mode or MODE_EXACT
        self.out_path = out_path
        self.csv_path = csv_path

    def _require_group(self):
        if self.spec.group is None:
            raise SchemaError("$.group", f"command {self.command!r} needs group and reps (or data)")
        if self.spec.group.rank > MAX_AMBIENT_DIM:
            raise ResourceLimitError("ambient_dim", self.spec.group.rank, MAX_AMBIENT_DIM)
        return self.spec.group, list(self.spec.reps)

    def _check_truncation(self, truncation: int) -> int:
        if truncation > MAX_TRUNCATION:
            raise ResourceLimitError("truncation", truncation, MAX_TRUNCATION)
        return truncation

    def get_report_config(self) -> ReportConfig:
        try:
            report_config = ReportConfig(version=VERSION,
                                         command=self.command,
                                         mode=self.mode,
                                         seed=self.seed,
                                         out_path=self.out_path,
                                         csv_path=self.csv_path)
            logger.info(f"Report config: {report_config}")
            return report_config
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def get_series_config(self) -> SeriesConfig:
        group, reps = self._require_group()
        s = self.spec.s if self.spec.s is not None else tuple(Fraction(0) for _ in reps)
        if self.mode == MODE_EXACT and any(isinstance(v, (float, complex)) for v in s):
            raise SchemaError("$.s", "floating point exponents need float mode")
        if self.mode == MODE_FLOAT:
            s = tuple(v if isinstance(v, (float, complex)) else float(v) for v in s)
        series_config = SeriesConfig(group=group,
                                     reps=reps,
                                     s=s,
                                     backend=self.spec.backend,
                                     truncation=self._check_truncation(self.truncation),
                                     point=self.spec.point,
                                     check=dict(self.spec.check),
                                     seed=self.seed)
        logger.info(f"Series config: {series_config}")
        return series_config

    def get_geometry_config(self) -> GeometryConfig:
        group, reps = self._require_group()
        geometry_config = GeometryConfig(group=group,
                                         reps=reps,
                                         chi=self.spec.chi,
                                         cobase=self.spec.cobase)
        logger.info(f"Geometry config: {geometry_config}")
        return geometry_config

    def get_integration_config(self) -> IntegrationConfig:
        integrate = self.spec.integrate
        expression = None
        if integrate:
            n = int(integrate.get("n", 1))
            if not 1 <= n <= MAX_BLOCK_SIZE:
                raise SchemaError("$.integrate.n", f"n must lie in 1..{MAX_BLOCK_SIZE}")
            terms = integrate.get("terms")
            if not isinstance(terms, list) or not terms:
                raise SchemaError("$.integrate.terms", "expected a nonempty list of monomials")
            argument_count = len(terms[0].get("trace_powers", []))
            expression = MatrixPolyExpr(n, argument_count)
            for index, term in enumerate(terms):
                path = f"$.integrate.terms[{index}]"
                powers = term.get("trace_powers")
                if not isinstance(powers, list) or len(powers) != argument_count:
                    raise SchemaError(f"{path}.trace_powers", f"expected {argument_count} powers")
                expression.add([int(p) for p in powers], int(term.get("det_power", 0)),
                               to_fraction(term.get("coefficient", 1)))
        function = None
        fourier = self.spec.fourier
        if fourier:
            entries = fourier.get("function")
            if not isinstance(entries, list) or not entries:
                raise SchemaError("$.fourier.function", "expected a nonempty list of Schur terms")
            n = len(entries[0]["weight"])
            function = ClassFunction(n)
            for entry in entries:
                function = function + ClassFunction.schur(DominantWeight(tuple(entry["weight"])),
                                                          to_fraction(entry.get("coefficient", 1)))
        samples = int(integrate.get("samples", 0)) if integrate else 0
        if samples > MONTE_CARLO_SAMPLES * 10:
            raise ResourceLimitError("samples", samples, MONTE_CARLO_SAMPLES * 10)
        integration_config = IntegrationConfig(expression=expression,
                                               c1=integrate.get("c1") if integrate else None,
                                               c2=integrate.get("c2") if integrate else None,
                                               samples=samples,
                                               seed=self.seed,
                                               function=function,
                                               truncation=self._check_truncation(self.truncation))
        logger.info(f"Integration config: {integration_config}")
        return integration_config

    def get_representation_config(self) -> RepresentationConfig:
        triple = None
        if self.spec.threej:
            try:
                triple = tuple(tuple(int(p) for p in self.spec.threej[key]) for key in ("lam", "mu", "nu"))
            except KeyError as e:
                raise SchemaError(f"$.threej.{e.args[0]}", "missing weight")
        if self.spec.weight is not None and len(self.spec.weight) > MAX_BLOCK_SIZE:
            raise ResourceLimitError("block_size", len(self.spec.weight), MAX_BLOCK_SIZE)
        representation_config = RepresentationConfig(weight=self.spec.weight,
                                                     x=self.spec.x,
                                                     triple=triple)
        logger.info(f"Representation config: {representation_config}")
        return representation_config
