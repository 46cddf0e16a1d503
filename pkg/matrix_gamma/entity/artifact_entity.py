from collections import namedtuple

CommandArtifact = namedtuple("CommandArtifact", ["command", "report", "passed", "report_file_path"])

TermTableArtifact = namedtuple("TermTableArtifact", ["csv_file_path", "row_count"])
