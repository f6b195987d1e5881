import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ybe import kernels
from ybe.census import brace_census, solution_census

pytestmark = pytest.mark.skipif(kernels.compiled is None, reason="compiled kernels not built")

NAMES = ["assoc", "left_brace", "right_brace", "rump", "raut", "laut", "braid"]


def _tables(name, b):
    if name == "assoc":
        return (b.star,)
    if name in ("left_brace", "right_brace"):
        return (b.add, b.mul)
    if name == "rump":
        return (b.add, b.star)
    if name == "raut":
        return (b.add, b.right)
    if name == "laut":
        return (b.add, b.left)
    return (b.left, np.ascontiguousarray(b.right.T))


@pytest.mark.parametrize("name", NAMES)
def test_backends_agree_on_census(name):
    for b in brace_census(8):
        t = _tables(name, b)
        assert getattr(kernels.compiled, name)(*t) == getattr(kernels.python, name)(*t), b.name


@settings(max_examples=40)
@given(st.integers(1, 7), st.integers(0, 2**32 - 1), st.sampled_from(NAMES))
def test_backends_agree_on_random_tables(m, seed, name):
    rng = np.random.default_rng(seed)
    arity = 1 if name == "assoc" else 2
    tabs = tuple(rng.integers(0, m, size=(m, m)).astype(np.int32) for _ in range(arity))
    assert getattr(kernels.compiled, name)(*tabs) == getattr(kernels.python, name)(*tabs)
    idx = rng.integers(0, m, size=(50, 3))
    assert getattr(kernels.compiled, name)(*tabs, idx) == getattr(kernels.python, name)(*tabs, idx)


def test_braid_on_solutions():
    for s in solution_census(4):
        assert kernels.compiled.braid(s.lam, s.rho) is None
        assert kernels.python.braid(s.lam, s.rho) is None


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    env = dict(os.environ, YBE_PURE_PYTHON="1")
    code = "from ybe import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
    r = subprocess.run([sys.executable, "-m", "ybe", "brace", "check", "census:8:3"], env=env,
                       capture_output=True, text=True)
    r2 = subprocess.run([sys.executable, "-m", "ybe", "brace", "check", "census:8:3"],
                        capture_output=True, text=True)
    assert r.returncode == r2.returncode and r.returncode in (0, 1)
