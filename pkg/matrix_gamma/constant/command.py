COMMAND_SERIES_EXPAND = "series expand"
COMMAND_SERIES_EVAL = "series eval"
COMMAND_SERIES_CHECK = "series check"
COMMAND_DEGREE = "degree"
COMMAND_ORBITS = "orbits"
COMMAND_NONRESONANT = "nonresonant"
COMMAND_COBASE = "cobase"
COMMAND_INTEGRATE = "integrate"
COMMAND_FOURIER = "fourier"
COMMAND_THREEJ = "threej"
COMMAND_DIM = "dim"
COMMAND_SCHUR = "schur"

COMMANDS = [
    COMMAND_SERIES_EXPAND,
    COMMAND_SERIES_EVAL,
    COMMAND_SERIES_CHECK,
    COMMAND_DEGREE,
    COMMAND_ORBITS,
    COMMAND_NONRESONANT,
    COMMAND_COBASE,
    COMMAND_INTEGRATE,
    COMMAND_FOURIER,
    COMMAND_THREEJ,
    COMMAND_DIM,
    COMMAND_SCHUR,
]

CHECK_SHIFT_INVARIANCE = "shift-invariance"
CHECK_GAUSS_REDUCTION = "gauss-reduction"
CHECK_TERMINATING = "terminating"
CHECK_BATYREV = "batyrev"
CHECK_RESIDUAL = "residual"
CHECK_EXPONENTIAL = "exponential"
CHECK_DEFORMATION = "deformation"

SERIES_CHECKS = [
    CHECK_SHIFT_INVARIANCE,
    CHECK_GAUSS_REDUCTION,
    CHECK_TERMINATING,
    CHECK_BATYREV,
    CHECK_RESIDUAL,
    CHECK_EXPONENTIAL,
    CHECK_DEFORMATION,
]

BACKEND_TORIC = "toric"
BACKEND_DIAGONAL_PAIR = "diagonal-pair"
BACKEND_GL2_TRIPLE = "gl2-triple"
BACKENDS = [BACKEND_TORIC, BACKEND_DIAGONAL_PAIR, BACKEND_GL2_TRIPLE]

MODE_EXACT = "exact"
MODE_FLOAT = "float"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2
