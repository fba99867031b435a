"""
Defaults and printed reference values for the scaling masks.

PRINTED_MASKS holds the published coefficients a_0, a_1, a_2 of a^(3,m) for
mu = 1.1, rounded to four digits (a_3 = a_1 and a_4 = a_0 by symmetry).
"""
DEFAULT_MU = 1.1

PRINTED_MASKS_MU = 1.1
PRINTED_MASKS_ORDER = 3
PRINTED_MASKS = {
    0: (0.5000, 0.5000, 0.0000),
    1: (0.0313, 0.2500, 0.4375),
    2: (0.0452, 0.2500, 0.4095),
    3: (0.0508, 0.2500, 0.3984),
    4: (0.0537, 0.2500, 0.3925),
    5: (0.0555, 0.2500, 0.3889),
    6: (0.0567, 0.2500, 0.3865),
    7: (0.0576, 0.2500, 0.3848),
    8: (0.0583, 0.2500, 0.3835),
}

# Half a unit in the fourth printed digit.
PRINTED_DIGIT_TOLERANCE = 5e-5
# Floating-point noise allowed on top of PRINTED_DIGIT_TOLERANCE; 1/32 prints as 0.0313.
PRINTED_FLOAT_SLACK = 1e-12
