"""Default enumeration caps and the seeded generator used for sampling."""

import numpy as np

# |Pi| bound for the intersection-of-generators enumeration
MAX_CLOSED_ENUM = 16
# |Pi| bound for the brute-force subset oracle
MAX_BRUTE_FORCE = 12
# application nodes in exhaustive bracket-abstraction checks
TERM_SIZE_BOUND = 4
# predicate count above which pair enumeration switches to sampling
MAX_PREDICATES = 4096
# largest materialized function space for a higher-order kind
MAX_FUNCTION_SPACE = 4096
# subsets enumerated by galois_check item 1
MAX_SUBSET_SCAN = 1 << 16

DEFAULT_SEED = 0


def caps():
    return {
        "max_closed_enum": MAX_CLOSED_ENUM,
        "max_brute_force": MAX_BRUTE_FORCE,
        "term_size_bound": TERM_SIZE_BOUND,
        "max_predicates": MAX_PREDICATES,
        "max_function_space": MAX_FUNCTION_SPACE,
        "max_subset_scan": MAX_SUBSET_SCAN,
    }


def make_rng(seed=None):
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)
