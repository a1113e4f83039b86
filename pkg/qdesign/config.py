"""Budgets and defaults, overridable from the environment or a local .env file."""

import os

from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name, "")
    return int(value) if value else default


class Config:
    # Field sizes
    MAX_FIELD_SIZE = _env_int("QDESIGN_MAX_FIELD_SIZE", 2**16)
    SINGER_MAX = _env_int("QDESIGN_SINGER_MAX", 2**20)

    # Enumeration / search budgets
    ENUM_BUDGET = _env_int("QDESIGN_ENUM_BUDGET", 10**7)
    CLOSURE_BUDGET = _env_int("QDESIGN_CLOSURE_BUDGET", 10**6)
    ORDER_BUDGET = _env_int("QDESIGN_ORDER_BUDGET", 10**6)
    CODEWORD_BUDGET = _env_int("QDESIGN_CODEWORD_BUDGET", 2**20)
    SEARCH_NODE_BUDGET = _env_int("QDESIGN_SEARCH_NODE_BUDGET", 10**7)
    MAX_SOLUTIONS = _env_int("QDESIGN_MAX_SOLUTIONS", 100)
    ARC_BUDGET = _env_int("QDESIGN_ARC_BUDGET", 10**6)
    DLP_BUDGET = _env_int("QDESIGN_DLP_BUDGET", 10**6)
    MDS_CHECK_BUDGET = _env_int("QDESIGN_MDS_CHECK_BUDGET", 4096)

    # Brute force is used for the invariant-polynomial count up to this many candidates
    INVARIANT_BRUTE_BUDGET = _env_int("QDESIGN_INVARIANT_BRUTE_BUDGET", 10**5)

    # Largest field size accepted by the group table spot checks
    TABLE_MAX_Q = 31

    DEFAULT_THREADS = _env_int("QDESIGN_THREADS", 1)
    LOG_LEVEL = os.environ.get("QDESIGN_LOG_LEVEL", "WARNING")
