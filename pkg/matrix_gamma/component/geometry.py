import sys
from typing import List

from matrix_gamma.algebra.groupmodel import coroot_data
from matrix_gamma.algebra.polytope import (FaceOrbit, LatticePolytope, cone_face_orbits, degree_report,
                                           face_orbits, nonresonant_check, toric_cobase_check, weight_polytope)
from matrix_gamma.entity.config_entity import GeometryConfig
from matrix_gamma.exception import MatrixGammaException, SchemaError
from matrix_gamma.logger import logger


def orbit_records(orbits: List[FaceOrbit]) -> List[dict]:
    return [{"representative": list(orbit.representative), "size": orbit.size, "dim": orbit.dim,
             "rank": orbit.rank} for orbit in orbits]


class GeometryComputation:

    def __init__(self, geometry_config: GeometryConfig):
        try:
            self.geometry_config = geometry_config
        except Exception as e:
            raise MatrixGammaException(e, sys) from e

    def get_polytope(self) -> LatticePolytope:
        polytope = weight_polytope(self.geometry_config.group, self.geometry_config.reps)
        logger.info(f"Weight polytope: dim={polytope.dim}, vertices={len(polytope.vertices)}")
        return polytope

    def initiate_degree(self) -> dict:
        try:
            logger.info(f"{'>>' * 10}Degree computation started{'<<' * 10}")
            polytope = self.get_polytope()
            report = degree_report(polytope, coroot_data(self.geometry_config.group))
            logger.info(f"{'>>' * 10}Degree computation finished: {report['degree']}{'<<' * 10}")
            return report
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def initiate_orbits(self) -> dict:
        try:
            logger.info(f"{'>>' * 10}Face orbit enumeration started{'<<' * 10}")
            config = self.geometry_config
            polytope = self.get_polytope()
            orbits = face_orbits(polytope, config.group)
            cone_orbits = cone_face_orbits(config.group, config.reps)
            report = {"orbit_count": len(orbits),
                      "orbits": orbit_records(orbits),
                      "cone_orbit_count": len(cone_orbits),
                      "cone_orbits": orbit_records(cone_orbits),
                      "polytope": polytope.to_record()}
            logger.info(f"{'>>' * 10}Face orbit enumeration finished: {len(orbits)} orbits{'<<' * 10}")
            return report
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def initiate_nonresonant(self) -> dict:
        try:
            config = self.geometry_config
            if config.chi is None:
                raise SchemaError("$.chi", "the nonresonance test needs chi")
            result = nonresonant_check(config.group, config.reps, config.chi)
            logger.info(f"Nonresonance of chi={[str(c) for c in config.chi]}: {result.nonresonant}")
            return {"nonresonant": result.nonresonant, "witness": result.witness,
                    "chi": [str(c) for c in config.chi]}
        except Exception as e:
            raise MatrixGammaException(e, sys)

    def initiate_cobase(self) -> dict:
        try:
            config = self.geometry_config
            if config.cobase is None:
                raise SchemaError("$.cobase", "the cobase test needs a list of rep indices")
            is_cobase = toric_cobase_check(config.group, config.reps, config.cobase)
            logger.info(f"Cobase {list(config.cobase)}: {is_cobase}")
            return {"cobase": list(config.cobase), "is_cobase": is_cobase}
        except Exception as e:
            raise MatrixGammaException(e, sys)
