"""Oracle and search caps, overridable through the ``TWW_CAPS`` environment variable.

``TWW_CAPS`` is a comma separated list of ``key=value`` pairs, for instance
``TWW_CAPS="exact=10,mixed=16"``.
"""

import os

DEFAULT_CAPS = {
    # vertex cap of the exact twin-width oracle
    "exact": 9,
    # side cap of exhaustive grid-minor search
    "grid": 20,
    # side cap of exhaustive mixed-minor search
    "mixed": 20,
    # node cap on any reduct built by the model checker
    "reduct": 10**6,
    # assignment cap (n ** l) of the brute-force evaluator
    "brute": 10**7,
    # default fusion threshold cap of the division sequence
    "threshold": 64,
}


class CapExceeded(RuntimeError):
    """Raised when an input is beyond the size an exhaustive routine accepts."""


def caps():
    values = dict(DEFAULT_CAPS)
    raw = os.environ.get("TWW_CAPS", "")
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in values:
            raise ValueError(f"unknown cap {key!r} in TWW_CAPS")
        values[key] = int(value)
    return values


def cap(name):
    return caps()[name]
