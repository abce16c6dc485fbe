# Constants and struct-style option holders shared across pqsurf

# Author  : pqsurf contributors
# Date    : 2024-09-02
# License : BSD-3-Clause


class Limits:
    """
    Struct for default resource caps and search bounds.

    ### Options:
        `ORDER_CAP` - Largest group order that will be materialized\n
        `SEARCH_NODE_CAP` - Backtracking nodes allowed per spherical-system enumeration\n
        `COSET_CAP` - Cosets a single Todd-Coxeter run may define\n
        `SEARCH_COSET_FACTOR` - Coset allowance per group element for candidate presentations\n
        `WORD_BOUND` - Longest conjugator word tried for product-shaped relators\n
        `CONJUGATOR_BOUND` - Longest conjugator word tried for two-power relators\n
        `MAX_PRESENTATION_GENERATORS` - Largest generator subset tried as a presentation\n
        `WORDS_PER_POSITION` - Candidate conjugator words kept per system position\n
        `PRODUCT_WORD_TRIES` - Product-shaped relators tried per presentation\n
        `CLASS_ORDER_TRIES` - Orderings of a class multiset tried when realizing a system\n
        `THREADS` - Worker threads for independent work items
    """

    ORDER_CAP = 10**6
    SEARCH_NODE_CAP = 5_000_000
    COSET_CAP = 200_000
    SEARCH_COSET_FACTOR = 64
    WORD_BOUND = 4
    CONJUGATOR_BOUND = 3
    MAX_PRESENTATION_GENERATORS = 4
    WORDS_PER_POSITION = 4
    PRODUCT_WORD_TRIES = 64
    CLASS_ORDER_TRIES = 5040
    THREADS = 1


class ExitCode:
    """
    Struct for process exit codes.

    ### Options:
        `OK` - Success\n
        `VALIDATION` - Malformed input or invalid group data\n
        `RESOURCE` - A configured cap was exceeded\n
        `INCONSISTENCY` - Computed data contradicts an identity that must hold
    """

    OK = 0
    VALIDATION = 1
    RESOURCE = 2
    INCONSISTENCY = 3


class GroupKind:
    """
    Struct for group descriptor kinds accepted in job files.

    ### Options:
        `PSL2` - PSL(2, q) acting on the projective line over F_q\n
        `PERMS` - Explicit permutation generators
    """

    PSL2 = "psl2"
    PERMS = "perms"


class Shape:
    """
    Struct for relator shapes of a good presentation.

    ### Options:
        `POWER` - A single power a_i^e\n
        `CONJUGATE_PAIR` - a_i^e1 h a_j^e2 h^-1\n
        `PRODUCT` - The product of conjugated branch powers along the whole system
    """

    POWER = "power"
    CONJUGATE_PAIR = "conjugate_pair"
    PRODUCT = "product"


class Pi1Status:
    """
    Struct for the outcome of a certificate search.

    ### Options:
        `VERIFIED` - A good presentation was found and re-verified\n
        `REFUTED_AT_BOUND` - No candidate assignment even satisfies the conjugacy condition\n
        `INCONCLUSIVE` - Search bounds exhausted without a certificate
    """

    VERIFIED = "verified"
    REFUTED_AT_BOUND = "refuted_at_bound"
    INCONCLUSIVE = "inconclusive"


SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"
