"""
Solver defaults and the printed dual-mask table.

PRINTED_DUALS maps m to the printed ã_0 ... ã_7 of the dual of a^(3,m) for
mu = 1.1 (ã_(14-alpha) = ã_alpha). Column m = 5 is about twice its
neighbours throughout and the entry (m=2, alpha=5) is twice the value the
closed form gives; both are reported but not asserted.
"""
DEFAULT_BEZOUT_TOL = 1e-10

PRINTED_DUALS_MU = 1.1
PRINTED_DUALS_ORDER = 3
PRINTED_DUALS = {
    0: (0.5000, 0.5000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000),
    1: (0.0011, -0.0085, 0.0066, 0.0574, -0.0810, -0.1998, 0.3233, 0.8019),
    2: (0.0021, -0.0114, 0.0028, 0.0760, -0.0790, -0.5108, 0.3241, 0.8816),
    3: (0.0026, -0.0129, 0.0005, 0.0857, -0.0768, -0.2834, 0.3237, 0.9212),
    4: (0.0030, -0.0138, -0.0010, 0.0914, -0.0752, -0.2998, 0.3232, 0.9443),
    5: (0.0064, -0.0288, -0.0039, 0.1905, -0.1480, -0.6211, 0.6456, 1.9187),
    6: (0.0034, -0.0148, -0.0027, 0.0979, -0.0732, -0.3180, 0.3225, 0.9698),
    7: (0.0035, -0.0151, -0.0032, 0.0999, -0.0725, -0.3236, 0.3222, 0.9776),
    8: (0.0036, -0.0154, -0.0036, 0.1014, -0.0720, -0.3278, 0.3220, 0.9835),
}
PRINTED_DUALS_EXCLUDED_COLUMNS = frozenset({5})
PRINTED_DUALS_EXCLUDED_ENTRIES = frozenset({(2, 5)})
PRINTED_DIGIT_TOLERANCE = 6e-5
