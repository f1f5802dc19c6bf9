"""k-anonymity tradeoff analysis via anonymity complexes and persistence."""

from .anonymity import (AnonymityVerdict, Regime, check_k_anonymity,
                        compute_regimes, generalize_table, minimal_epsilon)
from .categorical import (GeneralizationLattice, GeneralizationTree,
                          build_lattice, chain_sweep, generalize_value,
                          generalized_partition_at, lattice_search,
                          load_trees, lower_chain, upper_chain)
from .cli import RunConfig, ingest_csv
from .complexes import (Filtration, SimplicialComplex,
                        build_anonymity_complex, build_filtration,
                        is_anonymity_simplex)
from .geometry import (Ball, Column, NormalizedDataset, NumericTable,
                       balls_intersect, min_enclosing_ball,
                       normalize_dataset)
from .homology import (Barcode, WeightedBarcode, barcode, boundary_matrix,
                       homology_dims_at, reduce_matrix, weighted_h0_barcode)

__all__ = [
    "AnonymityVerdict", "Ball", "Barcode", "Column", "Filtration",
    "GeneralizationLattice", "GeneralizationTree", "NormalizedDataset",
    "NumericTable", "Regime", "RunConfig", "SimplicialComplex",
    "WeightedBarcode", "balls_intersect", "barcode",
    "boundary_matrix", "build_anonymity_complex", "build_filtration",
    "build_lattice", "chain_sweep", "check_k_anonymity",
    "compute_regimes", "generalize_table", "generalize_value",
    "generalized_partition_at", "homology_dims_at", "ingest_csv",
    "is_anonymity_simplex", "lattice_search", "load_trees", "lower_chain",
    "min_enclosing_ball", "minimal_epsilon", "normalize_dataset",
    "reduce_matrix", "upper_chain", "weighted_h0_barcode",
]

__version__ = "0.1.0"
