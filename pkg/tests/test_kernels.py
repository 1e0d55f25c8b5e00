"""Twin-kernel parity: compiled and pure-Python must agree bit for bit,
and both must agree with the tree-building route."""
import math

import pytest

from opennodes import _kernels_py, kernels
from opennodes.generate import MULTI_ID, gen_multi_node
from opennodes.metrics import shannon_entropy, theta_mle
from opennodes.rng import GenSeed
from opennodes.trees import open_node_counts

try:
    from opennodes import _kernels
except ImportError:
    _kernels = None

CASES = [(n, base, token)
         for n in (1, 2, 3, 7, 16, 41, 100)
         for base in (0, 42, 987654321)
         for token in (0, 5, 999)]


@pytest.mark.parametrize("n,base,token", CASES)
def test_python_kernel_matches_tree_route(n, base, token):
    seed = GenSeed(base)
    stream_seed = seed.stream_seed(MULTI_ID, n, token)
    profile = _kernels_py.multi_profile(n, stream_seed, 1, 4)
    tree = gen_multi_node(n, seed.stream(MULTI_ID, n, token))
    assert profile == list(open_node_counts(tree).counts)
    theta, h = _kernels_py.multi_theta_entropy(n, stream_seed, 1, 4)
    ref = open_node_counts(tree)
    assert theta == float(theta_mle(ref))
    assert h == float(shannon_entropy(ref))


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
@pytest.mark.parametrize("n,base,token", CASES)
def test_compiled_kernel_bit_identical(n, base, token):
    stream_seed = GenSeed(base).stream_seed(MULTI_ID, n, token)
    assert _kernels.multi_profile(n, stream_seed, 1, 4) == \
        _kernels_py.multi_profile(n, stream_seed, 1, 4)
    theta_c, h_c = _kernels.multi_theta_entropy(n, stream_seed, 1, 4)
    theta_p, h_p = _kernels_py.multi_theta_entropy(n, stream_seed, 1, 4)
    assert theta_c == theta_p and h_c == h_p  # exact float equality


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
def test_compiled_kernel_custom_bounds():
    for n in (2, 9, 30):
        for base in range(5):
            stream_seed = GenSeed(base).stream_seed(MULTI_ID, n, 0)
            assert _kernels.multi_profile(n, stream_seed, 2, 3) == \
                _kernels_py.multi_profile(n, stream_seed, 2, 3)


def test_selected_backend_exports():
    assert kernels.BACKEND in ("cython", "python")
    theta, h = kernels.multi_theta_entropy(1, 123, 1, 4)
    assert (theta, h) == (1.0, 0.0)
    assert math.isfinite(h)
