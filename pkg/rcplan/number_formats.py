import math


def as_int(value) -> str:
    """Format a value as an integer, ready to display."""
    return str(round(value))


def maybe_as_int(value) -> str:
    """
    Format a value as an integer if it is one.

    Any very close value will be formatted as an integer to avoid
    floating-point errors.

    >>> maybe_as_int(3.0000000001)
    '3'
    >>> maybe_as_int(2.5)
    '2.5'
    """
    if math.isclose(value, round(value)):
        return as_int(value)
    return str(value)


def percentage(value) -> str:
    """
    Format a percentage to at most two decimal places.

    Trailing zeros are dropped, and None (an undefined ratio) is N/A.

    >>> percentage(99.2700001)
    '99.27%'
    >>> percentage(100)
    '100%'
    >>> percentage(68.0)
    '68%'
    >>> percentage(None)
    'N/A'
    """
    if value is None:
        return "N/A"
    return maybe_as_int(round(value, 2)) + "%"


def ratio_percentage(part, whole):
    """
    Get part / whole as a percentage, or None if whole is zero.

    >>> ratio_percentage(1, 4)
    25.0
    """
    if not whole:
        return None
    return 100 * part / whole


def solved_cell(solved: int, optimal) -> str:
    """
    Format a count with its optimal percentage in brackets.

    >>> solved_cell(137, 99.27)
    '137 (99.27%)'
    """
    return f"{solved} ({percentage(optimal)})"


def default_as_string(value) -> str:
    """
    Round a value in a sensible way.

    Always shows at least the nearest integer. Any extra precision is
    limited to the lesser of two decimal places, or three significant
    figures.

    >>> default_as_string(1234.56)
    '1235'
    >>> default_as_string(0.12345)
    '0.12'
    """
    if value is None:
        return "-"
    if value >= 100:
        return as_int(value)
    if value >= 10:
        return str(round(value, 1))
    return str(round(value, 2))
