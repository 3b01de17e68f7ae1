"""Community detection in degree-corrected block models.

Library layout:

- :mod:`dcbm.graph` -- adjacency/label containers and file formats
- :mod:`dcbm.model` -- DCBM parameterization, sampling, space validation
- :mod:`dcbm.losses` -- Hamming and permutation-minimized losses
- :mod:`dcbm.info` -- information quantities (I, J, j_t)
- :mod:`dcbm.spectral` -- trimming, rank-k approximation, weighted k-medians
- :mod:`dcbm.refine` -- neighbor-count refinement and leave-one-out consensus
- :mod:`dcbm.oracles` -- exhaustive references at desk scale
- :mod:`dcbm.testlab` -- two-group testing-problem Monte Carlo
- :mod:`dcbm.harness` -- scenario sweeps, SCORE baseline, figures
- :mod:`dcbm.cli` -- the ``dcbm`` command-line entry point
"""

from .graph import AdjacencyMatrix, LabelVector, labels_from_sizes
from .losses import hamming, misclassification, weighted_misclassification
from .model import DcbmParams, SpaceDescriptor, sample_adjacency, validate_space
from .refine import detect_practical, detect_provable, refine_iterated, refine_once
from .spectral import InitConfig, initialize

__all__ = [
    "AdjacencyMatrix",
    "LabelVector",
    "labels_from_sizes",
    "hamming",
    "misclassification",
    "weighted_misclassification",
    "DcbmParams",
    "SpaceDescriptor",
    "sample_adjacency",
    "validate_space",
    "detect_practical",
    "detect_provable",
    "refine_iterated",
    "refine_once",
    "InitConfig",
    "initialize",
]

__version__ = "0.1.0"
