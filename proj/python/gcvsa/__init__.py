"""Grid-cell vector symbolic architecture.

Phasor tensors over banks of 3D hexagonal modules, with binding via
module-wise circular convolution, bundling, fractional binding powers,
plane-position encoding, rotation along orientation rings, codebook
cleanup and resonator factorization.
"""

try:
    from ._gcvsa import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # build-tree layout: extension sits on sys.path directly
    from _gcvsa import *  # noqa: F401,F403

__all__ = [
    "GridConfig",
    "Rng",
    "GcTensor",
    "PhaseTensor",
    "Rect",
    "Field2D",
    "ModuleGeometry",
    "Codebook",
    "ResonatorState",
    "PositionCodebook",
    "PathIntegrationResult",
    "materialize",
    "extract_phases",
    "is_pure",
    "random_phases",
    "random_symbol",
    "identity",
    "bundle",
    "bind",
    "unbind",
    "fractional_power",
    "dot",
    "norm",
    "cosine_similarity",
    "normalize_to_pure",
    "make_generators",
    "encode_phases",
    "encode_position",
    "receptive_field",
    "lattice_vectors",
    "rotate",
    "permute_orientation",
    "angle_profile",
    "decode_angle",
    "factorize",
    "run_path_integration",
]
