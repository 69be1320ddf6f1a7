import os

####################
# Project metadata #
####################

PROJECT_NAME = 'dlconn'
REPORT_SCHEMA_VERSION = 'v1'


###################
# Size guarantees #
###################

# Group enumeration stops (GroupTooLarge) beyond this many elements.
MAX_GROUP_ELEMENTS = 10 ** 6
# A root closure this large means the Coxeter matrix is not of finite type.
MAX_ROOTS = 10_000
# Exhaustive field operations (log tables, subfield listings) stay below this.
MAX_FIELD_SIZE = 2 ** 20
MAX_FLAGS = 10 ** 6

# Memoized per-element results (reduced words, twisted images) and per-group
# enumerations are evicted least recently used beyond these sizes.
ELEMENT_CACHE_SIZE = 2 ** 16
GROUP_CACHE_SIZE = 32

FLAG_BOUND_ENV_VAR = 'DLCONN_MAX_FLAGS'

MIN_REALIZATION_DIMENSION = 2
MAX_REALIZATION_DIMENSION = 4


#####################
# Extension degrees #
#####################

# Unitary levels are counted over the quadratic field of definition, so
# level m means coordinates in F_{q^{2m}}.
DEFAULT_SPLIT_LEVEL = 2
DEFAULT_UNITARY_LEVEL = 1
DEFAULT_LEVEL_CAP = 3


def get_flag_bound() -> int:
    """Returns the flag-count bound, honoring ``DLCONN_MAX_FLAGS``."""
    value = os.environ.get(FLAG_BOUND_ENV_VAR)
    if value is None or not value.strip():
        return MAX_FLAGS
    try:
        bound = int(value)
    except ValueError:
        raise ValueError(f'{FLAG_BOUND_ENV_VAR} must be a positive integer. You specified {value!r}.')
    if bound <= 0:
        raise ValueError(f'{FLAG_BOUND_ENV_VAR} must be a positive integer. You specified {value!r}.')
    return bound
