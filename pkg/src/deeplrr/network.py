"""Layer stacking: the multilayer collaborative low-rank network.

Layer l consumes the bilinear reconstruction of the previous layer,
A_l = P_l (A_{l-1} Z_l) with A_0 = X, and its sparsity weight grows as
lambda_l = rho**(l-1) * lambda1. Training is strictly layer-by-layer;
a layer that hits max_iter without converging is kept and flagged, and
the next layer consumes its output anyway.
"""

from dataclasses import dataclass
from pathlib import Path

from .config import SolverConfig, load_config, write_config
from .matrixio import as_data_matrix, read_matrix, write_matrix
from .solver import LayerParams, solve_layer


@dataclass
class NetworkModel:
    """Trained stack: per-layer params/states, layer inputs A_0..A_L, weights.

    ``states`` and ``inputs`` are None on a model loaded from disk without
    the original data; feature extraction needs ``inputs``.
    """

    layers: list
    states: list
    inputs: list
    lambdas: list
    config: SolverConfig

    @property
    def depth(self):
        return len(self.layers)

    @property
    def converged(self):
        if self.states is None:
            return None
        return all(s.converged for s in self.states)


def lambda_schedule(lambda1, rho, layer):
    """Sparsity weight of the given 1-based layer: rho**(layer-1) * lambda1."""
    if layer < 1:
        raise ValueError("layer index starts at 1")
    return lambda1 * rho ** (layer - 1)


def next_layer_input(A_prev, params):
    """Bilinear reconstruction P (A_prev Z) fed to the following layer."""
    return params.P @ (A_prev @ params.Z)


def train_network(X, cfg):
    """Train all cfg.layers layers on X (features x samples).

    Parameters
    ----------
    X : ndarray, shape (n, N)
        Data matrix, finite.
    cfg : SolverConfig

    Returns
    -------
    NetworkModel
        With every per-layer state retained. Deterministic: no randomness.
    """
    X = as_data_matrix(X)
    cfg.validate()
    layers, states, lambdas = [], [], []
    inputs = [X]
    A = X
    for l in range(1, cfg.layers + 1):
        lam = lambda_schedule(cfg.lambda1, cfg.rho, l)
        params, state = solve_layer(A, cfg, lam, cfg.alpha)
        A = next_layer_input(A, params)
        layers.append(params)
        states.append(state)
        lambdas.append(lam)
        inputs.append(A)
    return NetworkModel(layers=layers, states=states, inputs=inputs,
                        lambdas=lambdas, config=cfg)


def reconstruct_input(model, layer):
    """Stored reconstructed input A_layer (A_0 = X); 0 <= layer <= depth."""
    _require_inputs(model)
    if not 0 <= layer <= model.depth:
        raise IndexError(f"layer {layer} beyond solved depth {model.depth}")
    return model.inputs[layer]


def deep_salient_features(model):
    """Row-projected part of the deepest decomposition, P_L A_{L-1}."""
    _require_inputs(model)
    return model.layers[-1].P @ model.inputs[-2]


def deep_principal_features(model):
    """Column-reconstructed part of the deepest decomposition, A_{L-1} Z_L."""
    _require_inputs(model)
    return model.inputs[-2] @ model.layers[-1].Z


def deep_reconstruction(model):
    """Reconstructed data after all layers, A_L = P_L A_{L-1} Z_L."""
    _require_inputs(model)
    return model.inputs[-1]


def _require_inputs(model):
    if not model.layers:
        raise ValueError("model has no trained layers")
    if model.inputs is None:
        raise ValueError("model was loaded without data; pass X to load_model")


def save_model(model, out_dir):
    """Serialize layer matrices as Z_<l>/P_<l>/E_<l>.dlrm plus model.cfg."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for l, params in enumerate(model.layers, start=1):
        write_matrix(params.Z, out_dir / f"Z_{l}.dlrm", "binary")
        write_matrix(params.P, out_dir / f"P_{l}.dlrm", "binary")
        write_matrix(params.E, out_dir / f"E_{l}.dlrm", "binary")
    write_config(model.config, out_dir / "model.cfg")


def load_model(model_dir, X=None):
    """Load a serialized model; with X given, layer inputs are rebuilt."""
    model_dir = Path(model_dir)
    cfg = load_config(model_dir / "model.cfg")
    layers = []
    for l in range(1, cfg.layers + 1):
        layers.append(LayerParams(
            Z=read_matrix(model_dir / f"Z_{l}.dlrm", "binary"),
            P=read_matrix(model_dir / f"P_{l}.dlrm", "binary"),
            E=read_matrix(model_dir / f"E_{l}.dlrm", "binary"),
        ))
    lambdas = [lambda_schedule(cfg.lambda1, cfg.rho, l)
               for l in range(1, cfg.layers + 1)]
    inputs = None
    if X is not None:
        A = as_data_matrix(X)
        inputs = [A]
        for params in layers:
            A = next_layer_input(A, params)
            inputs.append(A)
    return NetworkModel(layers=layers, states=None, inputs=inputs,
                        lambdas=lambdas, config=cfg)
