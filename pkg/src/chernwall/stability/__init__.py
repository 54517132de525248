from chernwall.stability.catalog import CatalogEntry, FlipFamily, TypeCatalog, type_catalog
from chernwall.stability.chains import (
    ChainBundle,
    Transfer,
    is_regular,
    reverse_transfer,
    transfer,
    transfers_agree,
)
from chernwall.stability.dims import DimensionTable, Identity, dims_table
from chernwall.stability.patterns import (
    PatternError,
    SubsheafPattern,
    Summand,
    candidate_summands,
    enumerate_destab_patterns,
)
from chernwall.stability.walls import (
    DestabTriple,
    Polarization,
    SheafInvariants,
    Verdict,
    WallError,
    WallSolution,
    destab_triples,
    family_label,
    gpb_slope,
    lambda_oracle,
    lambda_set,
    slope_compare,
    stability_verdict,
    to_rational,
)

__all__ = [
    "CatalogEntry",
    "ChainBundle",
    "DestabTriple",
    "DimensionTable",
    "FlipFamily",
    "Identity",
    "PatternError",
    "Polarization",
    "SheafInvariants",
    "SubsheafPattern",
    "Summand",
    "Transfer",
    "TypeCatalog",
    "Verdict",
    "WallError",
    "WallSolution",
    "candidate_summands",
    "destab_triples",
    "dims_table",
    "enumerate_destab_patterns",
    "family_label",
    "gpb_slope",
    "is_regular",
    "lambda_oracle",
    "lambda_set",
    "reverse_transfer",
    "slope_compare",
    "stability_verdict",
    "to_rational",
    "transfer",
    "transfers_agree",
    "type_catalog",
]
