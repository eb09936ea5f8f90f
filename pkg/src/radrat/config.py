"""Resource limits used across the package.

Every cap turns a pathological input into a clean :class:`ResourceLimitError`
instead of a hang.  Library calls take an explicit ``Limits``; the CLI builds
one from flags with environment-variable fallbacks (``RR_DIM_CAP``,
``RR_PREC_CAP``, ``RR_ENUM_CAP``).
"""

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    # Maximum field dimension prod(q_i) for a unified radical basis.
    dim_cap: int = 4096
    # Maximum number of integer points a box enumeration may visit.
    enum_cap: int = 10_000_000
    # Interval precision schedule for sign determination: start, then double
    # up to the cap.
    sign_bits_start: int = 64
    sign_bits_cap: int = 65536
    # Trial-division bound and Pollard-rho iteration budget for factorize().
    factor_trial_bound: int = 100_000
    factor_rho_budget: int = 2_000_000


DEFAULT = Limits()


def limits_from_env(base: Limits = DEFAULT) -> Limits:
    """Apply RR_* environment overrides on top of ``base``."""
    dim = int(os.environ.get("RR_DIM_CAP", base.dim_cap))
    prec = int(os.environ.get("RR_PREC_CAP", base.sign_bits_cap))
    enum = int(os.environ.get("RR_ENUM_CAP", base.enum_cap))
    return Limits(
        dim_cap=dim,
        enum_cap=enum,
        sign_bits_start=base.sign_bits_start,
        sign_bits_cap=prec,
        factor_trial_bound=base.factor_trial_bound,
        factor_rho_budget=base.factor_rho_budget,
    )
