import argparse
import sys

from matrix_gamma.config.pipeline.command import CommandConfig
from matrix_gamma.constant import COMMANDS, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, MODE_EXACT, MODE_FLOAT, VERSION
from matrix_gamma.entity.schema import SpecDocumentSchema
from matrix_gamma.exception import MatrixGammaError, MatrixGammaException
from matrix_gamma.logger import logger
from matrix_gamma.pipeline import CommandPipeline
from matrix_gamma.utils import dump_report, read_spec_text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matrix-gamma",
                                     description="Matrix Gamma-series on type-A groups: expansion, checks and "
                                                 "the supporting representation theory.")
    parser.add_argument("command", nargs="+", help=f"one of: {', '.join(COMMANDS)}")
    parser.add_argument("--spec", default=None, help="YAML/JSON spec document; read from stdin when omitted")
    parser.add_argument("--seed", default=None, type=int, help="seed for every random choice")
    parser.add_argument("--truncation", default=None, type=int, help="series truncation degree")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const=MODE_EXACT, help="exact rationals")
    mode.add_argument("--float", dest="mode", action="store_const", const=MODE_FLOAT, help="complex floats")
    parser.add_argument("--out", default=None, help="also write the report to this path")
    parser.add_argument("--csv", default=None, help="write the series term table to this CSV path")
    parser.add_argument("--version", action="version", version=VERSION)
    return parser


def read_spec(spec_path) -> str:
    if spec_path is None:
        return sys.stdin.read()
    with open(spec_path) as spec_file:
        return spec_file.read()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = " ".join(args.command)
    try:
        document = read_spec_text(read_spec(args.spec))
        spec = SpecDocumentSchema().parse(document, mode=args.mode)
        command_config = CommandConfig(spec=spec, command=command, seed=args.seed, truncation=args.truncation,
                                       mode=args.mode, out_path=args.out, csv_path=args.csv)
        artifact = CommandPipeline(command_config).run()
    except (MatrixGammaException, MatrixGammaError, OSError) as e:
        cause = e.root_cause if isinstance(e, MatrixGammaException) else e
        logger.exception(e)
        print(f"error: {cause}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(dump_report(artifact.report))
    return EXIT_OK if artifact.passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
