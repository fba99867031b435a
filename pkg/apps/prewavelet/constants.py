"""
Defaults for the iterative Gramian algorithm and the printed reference values
of g^(3,0) for mu = 1.1, keyed by alpha. The printed list carries the sign of
the prewavelet coefficient d_(alpha+1); only that sign pattern is asserted.
"""
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 64

PRINTED_GRAMIAN_MU = 1.1
PRINTED_GRAMIAN_ORDER = 3
PRINTED_GRAMIAN = {
    -1: 0.3244,
    -2: -0.1479,
    -3: 0.0259,
    -4: -0.0015,
    0: -0.3244,
    1: 0.1479,
    2: -0.0259,
    3: 0.0015,
}
