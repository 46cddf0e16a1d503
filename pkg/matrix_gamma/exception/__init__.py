import sys


class MatrixGammaException(Exception):

    def __init__(self, error_message: Exception, error_detail: sys):
        super().__init__(error_message)
        self.cause = error_message
        self.error_message = MatrixGammaException.get_detailed_error_message(error_message=error_message,
                                                                             error_detail=error_detail
                                                                             )

    @staticmethod
    def get_detailed_error_message(error_message: Exception, error_detail: sys) -> str:
        """
        error_message: Exception object
        error_detail: object of sys module
        """
        _, _, exec_tb = error_detail.exc_info()
        if exec_tb is None:
            return f"error message: [{error_message}] "
        try_block_line_number = exec_tb.tb_lineno
        file_name = exec_tb.tb_frame.f_code.co_filename
        error_message = f"Error occurred in script: [ {file_name} ] at line number: [{try_block_line_number}] error " \
                        f"message: [{error_message}] "

        return error_message

    @property
    def root_cause(self) -> Exception:
        cause = self.cause
        while isinstance(cause, MatrixGammaException):
            cause = cause.cause
        return cause

    def __str__(self):
        return self.error_message

    def __repr__(self) -> str:
        return str(MatrixGammaException.__name__)


class MatrixGammaError(ValueError):
    """Base class of the typed errors raised by the algebra modules."""


class DomainError(MatrixGammaError):
    pass


class PoleError(MatrixGammaError):

    def __init__(self, message: str, offending=None):
        super().__init__(message)
        self.offending = list(offending or [])


class UnsupportedCaseError(MatrixGammaError):
    pass


class ResourceLimitError(MatrixGammaError):

    def __init__(self, limit_name: str, value, limit):
        super().__init__(f"{limit_name}={value} exceeds the configured limit {limit}")
        self.limit_name = limit_name
        self.value = value
        self.limit = limit


class SchemaError(MatrixGammaError):

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path

