"""Independent brute-force references used to check the fast paths."""

import numpy as np

_DFT_MATRICES: dict[int, np.ndarray] = {}


def naive_dft(x):
    """Textbook O(L^2) DFT: X[k] = sum_n x[n] * exp(-2j*pi*k*n/L).

    Computed as an explicit coefficient-matrix product; shares no code with
    the radix-2 implementation under test. The coefficient matrix is cached
    per length, but every transform is still a full O(L^2) product.
    """
    x = np.asarray(x, dtype=np.complex128)
    n = x.size
    if n not in _DFT_MATRICES:
        k = np.arange(n)
        _DFT_MATRICES[n] = np.exp(-2j * np.pi * np.outer(k, k) / n)
    return _DFT_MATRICES[n] @ x
