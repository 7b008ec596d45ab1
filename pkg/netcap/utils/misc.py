"""Miscellaneous helper methods."""
from netcap.exceptions import NetworkParseError


def validate_type(iterator, type_, where="input"):
    """Validate all the elements of the iterable are of a particular type."""
    for item in iterator:
        if not isinstance(item, type_) or isinstance(item, bool):
            raise NetworkParseError(
                f"Expected {item!r} in {where} to be of type {type_.__name__} "
                f"but got {type(item).__name__} instead."
            )


def check_fields(record, required, optional=(), where="input"):
    """Check that a JSON object has every required field and nothing unknown."""
    if not isinstance(record, dict):
        raise NetworkParseError(
            f"{where} must be a JSON object, got {type(record).__name__}"
        )
    missing = [name for name in required if name not in record]
    if missing:
        raise NetworkParseError(
            f"missing field(s) in {where}: {', '.join(sorted(missing))}"
        )
    unknown = set(record) - set(required) - set(optional)
    if unknown:
        raise NetworkParseError(
            f"unknown field(s) in {where}: {', '.join(sorted(unknown))}"
        )
