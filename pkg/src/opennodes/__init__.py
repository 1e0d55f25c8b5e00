"""Working-memory load and entropy metrics for syntactic tree structures.

The toolkit counts the constituents a listener holds open at each word
of a sentence, estimates the memory capacity that best matches those
counts, and compares structure-building mechanisms (left-branching vs.
hierarchical merges) over simulated and real corpora.
"""
from .corpus import (CorpusDocument, FilterBounds, GroupStats, GroupSummary,
                     SentenceRecord, aggregate, analyze, descriptive_stats,
                     ingest, iqr_filter)
from .errors import (ConfigError, DegenerateSample, DomainError,
                     EmptyAfterFilter, EmptyInput, FitError, IngestError,
                     OpenNodesError, ParseError)
from .fitstats import (FitResult, LogisticModel, LogModel, f_p_value, fit,
                       one_sample_test, regularized_incomplete_beta)
from .generate import (BINARY, LINEAR, Mechanism, closed_form_entropy,
                       closed_form_theta, gen_balanced_binary,
                       gen_left_branching, gen_multi_node, multi_node)
from .kernels import BACKEND as KERNEL_BACKEND
from .metrics import (EntropyResult, MetricConfig, ThetaEstimate,
                      gaussian_match, likelihood, log_likelihood,
                      shannon_entropy, theta_mle)
from .rng import GenSeed, SplitMix64
from .simulate import (SimConfig, SimCurve, SimRow, compare_mechanisms,
                       curve_to_csv, run_simulation)
from .trees import (OpenNodeProfile, SyntaxTree, open_node_counts,
                    parse_bracketed, serialize, wrap_root)

__version__ = "0.1.0"
