"""
Configuration file for the composable-qm verification toolkit
"""

import os


class Config:
    # Sampling settings
    DEFAULT_SEED = int(os.environ.get('COMPOSABLE_QM_SEED', '0'))
    DEFAULT_SAMPLES = int(os.environ.get('COMPOSABLE_QM_SAMPLES', '200'))
    DEFAULT_HBAR = os.environ.get('COMPOSABLE_QM_HBAR', '2')  # rational literal, x = -hbar^2/4

    # Random coefficient bounds (|numerator| <= 9, denominator <= 4)
    MAX_NUMERATOR = int(os.environ.get('COMPOSABLE_QM_MAX_NUMERATOR', '9'))
    MAX_DENOMINATOR = int(os.environ.get('COMPOSABLE_QM_MAX_DENOMINATOR', '4'))
    MAX_POLY_DEGREE = int(os.environ.get('COMPOSABLE_QM_MAX_POLY_DEGREE', '4'))
    MAX_POLY_TERMS = int(os.environ.get('COMPOSABLE_QM_MAX_POLY_TERMS', '4'))
    MATRIX_SIZES = (2, 3, 4)
    COMPOSITION_MATRIX_SIZES = (2, 3)

    # Tripartite (monoid) draws: three slots multiply term counts, keep each slot small
    TRIPARTITE_MAX_DEGREE = int(os.environ.get('COMPOSABLE_QM_TRIPARTITE_MAX_DEGREE', '2'))
    TRIPARTITE_MAX_TERMS = int(os.environ.get('COMPOSABLE_QM_TRIPARTITE_MAX_TERMS', '2'))
    FORMAL_HBAR_MONOID_SAMPLES = int(os.environ.get('COMPOSABLE_QM_FORMAL_HBAR_MONOID_SAMPLES', '40'))

    # Floating point tolerances (GNS / norm module only)
    RANK_TOLERANCE = float(os.environ.get('COMPOSABLE_QM_RANK_TOLERANCE', '1e-10'))
    STATE_TOLERANCE = float(os.environ.get('COMPOSABLE_QM_STATE_TOLERANCE', '1e-10'))
    NORM_TOLERANCE = float(os.environ.get('COMPOSABLE_QM_NORM_TOLERANCE', '1e-9'))

    # Counterexample shrinking
    SHRINK_ROUNDS = int(os.environ.get('COMPOSABLE_QM_SHRINK_ROUNDS', '50'))

    # Reports and logging
    REPORT_SCHEMA_VERSION = 1
    LOG_LEVEL = os.environ.get('COMPOSABLE_QM_LOG_LEVEL', 'INFO').upper()

    # Webhook notification (Discord-compatible embeds), off unless a URL is set
    NOTIFY_ENABLED = os.environ.get('COMPOSABLE_QM_NOTIFY', 'False').lower() == 'true'
    WEBHOOK_URL = os.environ.get('COMPOSABLE_QM_WEBHOOK_URL', '')
    NOTIFY_RATE_LIMIT = int(os.environ.get('COMPOSABLE_QM_NOTIFY_RATE_LIMIT', '10'))  # messages per minute
    NOTIFY_RETRY_ATTEMPTS = int(os.environ.get('COMPOSABLE_QM_NOTIFY_RETRY_ATTEMPTS', '3'))
    NOTIFY_RETRY_DELAY = float(os.environ.get('COMPOSABLE_QM_NOTIFY_RETRY_DELAY', '1.0'))  # seconds
    NOTIFY_TIMEOUT = int(os.environ.get('COMPOSABLE_QM_NOTIFY_TIMEOUT', '10'))  # seconds


class DevelopmentConfig(Config):
    LOG_LEVEL = os.environ.get('COMPOSABLE_QM_LOG_LEVEL', 'DEBUG').upper()


class TestingConfig(Config):
    TESTING = True
    DEFAULT_SAMPLES = 20
    NOTIFY_ENABLED = False


config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'default': Config
}


def get_config():
    """Return the configuration class selected by COMPOSABLE_QM_CONFIG"""
    return config.get(os.environ.get('COMPOSABLE_QM_CONFIG') or 'default', Config)
