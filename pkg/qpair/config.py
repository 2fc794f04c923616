"""
Configuration Module
====================
Loads environment variables from .env file.
Numerical tolerances, seeds and campaign defaults live here.
"""

import os
from dotenv import load_dotenv

# Load .env from project root
load_dotenv(os.path.join(os.path.dirname(os.path.dirname(__file__)), ".env"))

# Logging
LOG_LEVEL = os.getenv("QPAIR_LOG_LEVEL", "WARNING").upper()

# Validation tolerances
HERMITIAN_TOL = float(os.getenv("QPAIR_HERMITIAN_TOL", "1e-9"))
STATE_TOL = float(os.getenv("QPAIR_STATE_TOL", "1e-9"))
KRAUS_TOL = float(os.getenv("QPAIR_KRAUS_TOL", "1e-9"))
NORM_TOL = float(os.getenv("QPAIR_NORM_TOL", "1e-10"))

# Eigenvalues at or below this are treated as exact zeros (0·log 0 = 0)
RANK_CUTOFF = float(os.getenv("QPAIR_RANK_CUTOFF", "1e-12"))

# Check tolerances
INEQUALITY_TOL = float(os.getenv("QPAIR_INEQUALITY_TOL", "1e-9"))
IDENTITY_TOL = float(os.getenv("QPAIR_IDENTITY_TOL", "1e-10"))
ROUTE_TOL = float(os.getenv("QPAIR_ROUTE_TOL", "1e-8"))

# Campaigns
DEFAULT_SEED = int(os.getenv("QPAIR_DEFAULT_SEED", "0"))
DEFAULT_TRIALS = int(os.getenv("QPAIR_DEFAULT_TRIALS", "500"))
CAMPAIGN_WORKERS = int(os.getenv("QPAIR_CAMPAIGN_WORKERS", "1"))
