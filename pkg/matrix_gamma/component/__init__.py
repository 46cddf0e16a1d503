from matrix_gamma.component.series import SeriesComputation
from matrix_gamma.component.geometry import GeometryComputation
from matrix_gamma.component.integration import IntegrationComputation
from matrix_gamma.component.representation import RepresentationComputation
