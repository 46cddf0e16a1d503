from collections import namedtuple

ReportConfig = namedtuple("ReportConfig", ["version", "command", "mode", "seed", "out_path", "csv_path"])

SeriesConfig = namedtuple("SeriesConfig", ["group",
                                           "reps",
                                           "s",
                                           "backend",
                                           "truncation",
                                           "point",
                                           "check",
                                           "seed"
                                           ])

GeometryConfig = namedtuple("GeometryConfig", ["group", "reps", "chi", "cobase"])

IntegrationConfig = namedtuple("IntegrationConfig", ["expression", "c1", "c2", "samples", "seed",
                                                     "function", "truncation"])

RepresentationConfig = namedtuple("RepresentationConfig", ["weight", "x", "triple"])
