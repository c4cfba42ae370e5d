"""Sound l2 robustness certification for dense ReLU networks.

The pipeline: per-layer operator norm upper bounds by Gram iteration, margin
Lipschitz bounds per output-class pair, then a strict rational margin check
per output vector. Everything on the certification path is exact rational
arithmetic, so a CERTIFIED verdict is a proof under the stated model, not an
estimate.
"""

from .certify import CertificationResult, certify
from .gram import OperatorNormBound, gram_iteration
from .lipschitz import LipschitzBounds, gen_all_bounds, gen_lipschitz_bound
from .nn import apply_nn, argmax, model_digest, sampled_robustness_check
from .rational import Q, ParseError
from .sqrt import SqrtConfig, sqrt_upper_bound

__all__ = [
    "Q",
    "ParseError",
    "SqrtConfig",
    "sqrt_upper_bound",
    "OperatorNormBound",
    "gram_iteration",
    "LipschitzBounds",
    "gen_all_bounds",
    "gen_lipschitz_bound",
    "apply_nn",
    "argmax",
    "model_digest",
    "sampled_robustness_check",
    "CertificationResult",
    "certify",
]

__version__ = "0.1.0"
