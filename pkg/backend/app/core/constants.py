"""
Toolkit constants: exit codes, verdict labels and report keys.
"""

# CLI exit codes
EXIT_OK = 0
EXIT_INTERNAL_ERROR = 1
EXIT_INPUT_ERROR = 2
EXIT_OBSTRUCTED = 3
EXIT_NUMERICAL_FAILURE = 4

# Regularity labels
REGULARITY_REGULAR = "regular"
REGULARITY_QUASI_REGULAR = "quasi-regular"
REGULARITY_IRREGULAR = "irregular"
REGULARITY_UNDETERMINED = "undetermined"

# Screen verdicts
VERDICT_OBSTRUCTED = "obstructed"
VERDICT_PASSES = "passes-screen"
VERDICT_NOT_FANO = "not-fano"

# Obstruction reasons
REASON_BISHOP = "bishop"
REASON_LICHNEROWICZ = "lichnerowicz"
REASON_FLAT = "flat"
REASON_LICHNEROWICZ_SATURATED = "lichnerowicz-saturated"

# Family tags
FAMILY_YPQ = "ypq"
FAMILY_LABC = "labc"

# Ledger references carried by report warnings
LEDGER_YPQ_CORRECTION = "DESIGN.md#families-ypq-volume-correction"
LEDGER_ORBIFOLD_LABC = "DESIGN.md#families-orbifold-triples"
LEDGER_ZETA_SCHEDULE = "DESIGN.md#spectral-zeta-schedule"

REPORT_PRECISION = "float64 repr (17 significant digits); exact rationals as 'p/q' strings"

# potential-probe: closest approach to the target ray is 10^-PROBE_DEPTH_DECADES
PROBE_DEPTH_DECADES = 4
