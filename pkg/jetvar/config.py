# jetvar/config.py
from __future__ import annotations

import os

try:
    from dotenv import load_dotenv

    load_dotenv()
except Exception:
    pass

# Numeric probing
DEFAULT_PROBES: int = int(os.getenv("JETVAR_PROBES", 5))
DEFAULT_SEED: int = int(os.getenv("JETVAR_SEED", 0))
TOLERANCE: float = float(os.getenv("JETVAR_TOLERANCE", 1e-9))
PROBE_RANGE: float = float(os.getenv("JETVAR_PROBE_RANGE", 1.0))

# Random cases per invariant in `jetvar check`
SUITE_CASES: int = int(os.getenv("JETVAR_SUITE_CASES", 5))

LOG_LEVEL: str = os.getenv("JETVAR_LOG_LEVEL", "WARNING").upper()
