import os

DEFAULT_ENUM_CAP = 10**7
ENV_VAR = "GRDH_ENUM_CAP"


def enum_cap(cap: int | None = None) -> int:
    """Resolve the enumeration cap: explicit value, then $GRDH_ENUM_CAP, then default."""
    if cap is not None:
        return cap
    raw = os.environ.get(ENV_VAR)
    if raw:
        return int(raw)
    return DEFAULT_ENUM_CAP


def check_cap(size: int, cap: int | None, what: str = "candidates") -> None:
    from .errors import EnumerationCapExceeded

    limit = enum_cap(cap)
    if size > limit:
        raise EnumerationCapExceeded(size, limit, what)
