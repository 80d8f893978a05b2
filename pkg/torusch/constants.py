# encoding=utf8


class Constants(object):
    SIMULATE = 'simulate'
    GEODESIC = 'geodesic'
    CURVATURE = 'curvature'
    VERIFY_B = 'verify-b'
    SELFTEST = 'selftest'

    MODES = [SIMULATE, GEODESIC, CURVATURE, VERIFY_B, SELFTEST]

    EXIT_OK = 0
    EXIT_CONFIG_ERROR = 1
    EXIT_BLOWUP = 2
    EXIT_SELFTEST_FAILURE = 3

    # Mean tolerance before -Delta refuses to invert (Hunter-Saxton case)
    HS_MEAN_TOLERANCE = 1e-10
    # Largest admissible |u(0)| for an H^s_0 state
    HS_ORIGIN_TOLERANCE = 1e-9

    # 2/3 rule: modes with |k_i| > N/3 are removed
    DEALIAS_FRACTION = 1.0 / 3.0

    DIAGNOSTICS_FILE = 'diagnostics.csv'
    SUMMARY_FILE = 'summary.json'
    FINAL_STATE_FILE = 'final_state.json'
    CURVATURE_FILE = 'curvature.csv'
    VERIFY_B_FILE = 'verify_b.csv'
    SELFTEST_FILE = 'selftest.csv'

    NUMBER_FORMAT = '%.17g'
