from .category import (Arrow, FinCat, Violation, chain, decode_category, discrete,
                       encode_category, make_category, validate_category, walking_arrow)
from .finset import (compose_graphs, finset_full, finset_on, finset_quotients, finset_subsets,
                     functions, identity_graph, is_injective, is_surjective)

__all__ = [
    "Arrow", "FinCat", "Violation", "chain", "decode_category", "discrete",
    "encode_category", "make_category", "validate_category", "walking_arrow",
    "compose_graphs", "finset_full", "finset_on", "finset_quotients", "finset_subsets",
    "functions", "identity_graph", "is_injective", "is_surjective",
]
