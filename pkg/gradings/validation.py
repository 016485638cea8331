"""
Error types and input validation for the gradings toolkit.
Validators return (is_valid, error_message) tuples; the exception
classes carry the CLI exit code they map to.
"""

import re

import config


class GradingError(Exception):
    """Base class for all toolkit errors."""

    exit_code = config.EXIT_USAGE


class GroupError(GradingError):
    """Group arithmetic on mismatched or invalid operands."""


class NotInvertibleError(GradingError):
    """Division by zero or a singular system."""


class ParseError(GradingError):
    """
    Malformed textual input.

    Args:
        message: Description of the problem
        line: 1-based line number in the document, if known
        field: Document key being parsed, if known
    """

    exit_code = config.EXIT_PARSE

    def __init__(self, message, line=None, field=None):
        self.message = message
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")


class AdmissibilityError(GradingError):
    """
    Parameters violating an admissibility condition.

    Args:
        message: Description of the violation
        condition: Condition number 1-4, or a family condition name
    """

    exit_code = config.EXIT_ADMISSIBILITY

    def __init__(self, message, condition=None):
        self.condition = condition
        if condition is not None:
            message = f"condition ({condition}): {message}"
        super().__init__(message)


class VerificationError(GradingError):
    """A structural check failed on a constructed object."""

    exit_code = config.EXIT_VERIFICATION


class OutOfScopeError(GradingError):
    """Input describes a case the toolkit deliberately excludes."""


_FACTOR_RE = re.compile(r'^Z(\d*)$')
_ELEMENT_RE = re.compile(r'^\((-?\d+(,-?\d+)*)?(;[01])?\)$')
_RATIONAL_RE = r'-?\d+(/\d+)?'
_TERM_RE = re.compile(
    rf'^(-?z\d+\^\d+( \* {_RATIONAL_RE})?|{_RATIONAL_RE})$'
)


def validate_group_spec(text):
    """
    Validate a group spec like 'Z2 x Z4 x Z'.

    Args:
        text: Group spec string

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(text, str) or not text.strip():
        return False, "Group spec cannot be empty"

    text = text.strip()
    if text == '1':
        return True, None

    for factor in text.split(' x '):
        match = _FACTOR_RE.match(factor.strip())
        if not match:
            return False, f"Invalid group factor '{factor}'"
        if match.group(1) and int(match.group(1)) < 1:
            return False, f"Cyclic order must be positive in '{factor}'"

    return True, None


def validate_family_tag(tag):
    """
    Validate a family tag.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not config.is_valid_family(tag):
        known = ', '.join(sorted(config.FAMILIES))
        return False, f"Unknown family '{tag}' (expected one of: {known})"
    return True, None


def validate_check_list(text):
    """
    Validate a comma separated list of verification checks.

    Returns:
        Tuple of (is_valid, error_message)
    """
    names = [name.strip() for name in text.split(',') if name.strip()]
    if not names:
        return False, "Check list cannot be empty"
    for name in names:
        if not config.is_valid_check(name):
            return False, f"Unknown check '{name}'"
    return True, None


def validate_multiplicity(value):
    """Validate a kappa multiplicity (positive integer)."""
    if isinstance(value, bool) or not isinstance(value, int):
        return False, "Multiplicity must be an integer"
    if value <= 0:
        return False, f"Multiplicity must be positive, got {value}"
    return True, None


def validate_element_text(text, rank, graded):
    """
    Validate an element literal like '(1,0;1)' against a group rank.

    Args:
        text: Element text
        rank: Number of cyclic factors of G
        graded: True if a parity part ';p' is required

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not _ELEMENT_RE.match(text or ''):
        return False, f"Malformed element '{text}'"

    has_parity = ';' in text
    if graded != has_parity:
        kind = "a parity" if graded else "no parity"
        return False, f"Element '{text}' must carry {kind}"

    body = text[1:-1].split(';')[0]
    coords = [c for c in body.split(',') if c]
    if len(coords) != rank:
        return False, f"Element '{text}' has {len(coords)} coordinates, expected {rank}"

    return True, None


def validate_scalar_text(text):
    """
    Validate a scalar literal like 'z4^3 * 5/2 + 1'.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not isinstance(text, str) or not text.strip():
        return False, "Scalar cannot be empty"

    for term in text.strip().split(' + '):
        if not _TERM_RE.match(term):
            return False, f"Malformed scalar term '{term}'"
        for den in re.findall(r'/(\d+)', term):
            if int(den) == 0:
                return False, f"Zero denominator in '{term}'"

    return True, None
