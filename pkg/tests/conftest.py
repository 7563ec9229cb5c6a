import numpy as np
import pytest

from maxpair import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the jitted kernels once so timed tests measure the
    algorithms, not the compiler."""
    mul = np.zeros((2, 2), dtype=np.int32)
    mul[0, 1] = mul[1, 0] = 1
    _kernels.closure_members(mul, [1])
    _kernels.assoc_violation(mul)
    _kernels.power_table(mul, 3)
