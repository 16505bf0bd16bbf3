"""Deep subspace discovery by stacked collaborative low-rank layers.

Library surface: a scikit-learn style estimator (:class:`DeepLRR`), the
functional training/clustering pipeline underneath it, matrix/label file
formats, clustering metrics, and the synthetic multi-subspace benchmark.
"""

from .clustering import (
    ClusterResult,
    build_affinity,
    kmeans,
    ncut_cluster,
    spectral_embed,
)
from .config import ConfigError, SolverConfig, load_config, write_config
from .estimator import DeepLRR
from .matrixio import (
    BadHeaderError,
    DimensionError,
    MatrixIOError,
    NonFiniteError,
    NonNumericError,
    as_data_matrix,
    read_labels,
    read_matrix,
    write_labels,
    write_matrix,
)
from .metrics import MetricReport, accuracy, contingency_table, evaluate, f_score, nmi
from .network import (
    NetworkModel,
    deep_principal_features,
    deep_reconstruction,
    deep_salient_features,
    lambda_schedule,
    load_model,
    next_layer_input,
    reconstruct_input,
    save_model,
    train_network,
)
from .norms import MatrixNorms, matrix_norms, singular_values
from .solver import (
    AlmState,
    LayerParams,
    NumericalError,
    layer_objective,
    shrink,
    solve_layer,
    update_e,
    update_multiplier,
    update_p,
    update_z,
)
from .synth import (
    CorruptionSpec,
    SynthSpec,
    add_gaussian_noise,
    block_diagonal_score,
    corrupt_pixels,
    generate_subspaces,
    random_orthonormal_basis,
    random_rotation,
)

__version__ = "0.1.0"

__all__ = [
    "AlmState",
    "BadHeaderError",
    "ClusterResult",
    "ConfigError",
    "CorruptionSpec",
    "DeepLRR",
    "DimensionError",
    "LayerParams",
    "MatrixIOError",
    "MatrixNorms",
    "MetricReport",
    "NetworkModel",
    "NonFiniteError",
    "NonNumericError",
    "NumericalError",
    "SolverConfig",
    "SynthSpec",
    "accuracy",
    "add_gaussian_noise",
    "as_data_matrix",
    "block_diagonal_score",
    "build_affinity",
    "contingency_table",
    "corrupt_pixels",
    "deep_principal_features",
    "deep_reconstruction",
    "deep_salient_features",
    "evaluate",
    "f_score",
    "generate_subspaces",
    "kmeans",
    "lambda_schedule",
    "layer_objective",
    "load_config",
    "load_model",
    "matrix_norms",
    "ncut_cluster",
    "next_layer_input",
    "nmi",
    "random_orthonormal_basis",
    "random_rotation",
    "read_labels",
    "read_matrix",
    "reconstruct_input",
    "save_model",
    "shrink",
    "singular_values",
    "solve_layer",
    "spectral_embed",
    "train_network",
    "update_e",
    "update_multiplier",
    "update_p",
    "update_z",
    "write_config",
    "write_labels",
    "write_matrix",
]
