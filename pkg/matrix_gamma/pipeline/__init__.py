from matrix_gamma.pipeline.command import CommandPipeline
