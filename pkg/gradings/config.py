"""
Configuration management for the gradings toolkit.
Centralizes search limits, logging settings and the static tables
(family tags, verification checks, exit codes) shared by the CLI.
"""

import os
from dotenv import load_dotenv

load_dotenv()

# Logging Configuration
LOG_LEVEL = os.getenv('GRADINGS_LOG_LEVEL', 'WARNING').upper()
LOG_DIR = os.getenv(
    'GRADINGS_LOG_DIR',
    os.path.join(os.path.dirname(__file__), '..', 'logs')
)
LOG_TO_FILE = os.getenv('GRADINGS_LOG_TO_FILE', 'False').lower() == 'true'

# Search Limits
MAX_SUBGROUP_ORDER = int(os.getenv('GRADINGS_MAX_SUBGROUP_ORDER', 256))
MAX_ALGEBRA_DIM = int(os.getenv('GRADINGS_MAX_ALGEBRA_DIM', 512))

# Census Configuration
CENSUS_MAX_GROUP_ORDER = int(os.getenv('GRADINGS_CENSUS_MAX_GROUP_ORDER', 64))
CENSUS_MAX_DIM = int(os.getenv('GRADINGS_CENSUS_MAX_DIM', 64))

# Lie simplicity testing
SIMPLICITY_TRIALS = int(os.getenv('GRADINGS_SIMPLICITY_TRIALS', 8))
RANDOM_HEIGHT = int(os.getenv('GRADINGS_RANDOM_HEIGHT', 100))
RANDOM_SEED = int(os.getenv('GRADINGS_RANDOM_SEED', 0))

# Interchange format
FORMAT_VERSION = 1

# Family tags mapped to the kind of object they construct
FAMILIES = {
    'm-even': 'associative',
    'm-odd': 'associative',
    'q': 'associative',
    'm-star': 'associative',
    'mex-even': 'associative',
    'mex-odd': 'associative',
    'qex': 'associative',
    'type-i': 'associative',
    'osp': 'lie',
    'p': 'lie',
    'q-lie-1': 'lie',
    'q-lie-2': 'lie',
    'a-1': 'lie',
    'a-2': 'lie',
}

# Families whose documents carry an inner family tag
INNER_FAMILIES = {
    'type-i': ('m-even', 'm-odd', 'q'),
    'a-1': ('m-even', 'm-odd'),
    'a-2': ('mex-even', 'mex-odd'),
    'q-lie-1': ('q',),
}

# Checks understood by `verify`
CHECKS = (
    'division',
    'grading',
    'associativity',
    'jacobi',
    'simplicity',
    'superinvolution',
)

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_ADMISSIBILITY = 3
EXIT_VERIFICATION = 4


def get_family_kind(tag):
    """
    Get the kind of object a family tag constructs.

    Args:
        tag: Family tag like 'm-star' or 'osp'

    Returns:
        'associative', 'lie', or None if the tag is unknown
    """
    return FAMILIES.get(tag)


def is_valid_family(tag):
    """Check if a family tag is known."""
    return tag in FAMILIES


def is_valid_check(name):
    """Check if a verification check name is known."""
    return name in CHECKS


if __name__ == "__main__":
    # Display configuration when run directly
    print("=== Gradings Configuration ===")
    print(f"Log level: {LOG_LEVEL}")
    print(f"Log dir: {LOG_DIR} (file logging {'on' if LOG_TO_FILE else 'off'})")
    print(f"Max subgroup order: {MAX_SUBGROUP_ORDER}")
    print(f"Max algebra dimension: {MAX_ALGEBRA_DIM}")
    print(f"Census: |G| <= {CENSUS_MAX_GROUP_ORDER}, dim <= {CENSUS_MAX_DIM}")
    print(f"Lie simplicity fallback: {SIMPLICITY_TRIALS} trials of height {RANDOM_HEIGHT}")
    print("\nFamilies:")
    for tag, kind in FAMILIES.items():
        print(f"  - {tag} ({kind})")
