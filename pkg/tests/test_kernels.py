import os
import subprocess
import sys

import numpy as np

from maxpair import _kernels, get_group


def test_numpy_and_numba_closures_agree():
    G, _ = get_group("sg-81-10")
    rng = np.random.default_rng(3)
    for _ in range(30):
        seed = rng.integers(0, G.n, size=2).tolist()
        ref = _kernels._closure_py(G.mul, np.asarray(seed, dtype=np.int64))
        got = _kernels.closure_members(G.mul, seed)
        assert np.array_equal(ref, got)


def test_assoc_violation_detects_bad_table():
    G, _ = get_group("q8")
    assert _kernels.assoc_violation(G.mul) == -1
    bad = G.mul.copy()
    bad[3, 5] = (bad[3, 5] + 1) % G.n
    assert _kernels.assoc_violation(bad) != -1


def test_power_table_matches_element_orders():
    G, _ = get_group("sg-162-22")
    orders = G.element_orders()
    for k in (2, 3, 18):
        pw = _kernels.power_table(G.mul, k)
        # x^k == identity exactly when ord(x) | k
        assert np.array_equal(pw == 0, k % orders == 0)


def test_env_flag_forces_numpy_path():
    env = dict(os.environ, MAXPAIR_NUMBA="0")
    out = subprocess.run(
        [sys.executable, "-c",
         "from maxpair import _kernels; print(_kernels.USE_NUMBA)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "False"
