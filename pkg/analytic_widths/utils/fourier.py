"""
Trigonometric sums sampled at the 2n interval midpoints.

For t_k = k*pi/n - pi/(2n), k = 1..2n, every exp(i j t_k) is an odd power of
the 4n-th root of unity, so a whole family of sums

    S_k = sum_j d_j exp(i j (t_k - y))

is one inverse FFT of length 4n after folding the frequencies modulo 4n.
"""

import numpy as np


def midpoint_sums(
    coeffs: np.ndarray, freqs: np.ndarray, n: int, y: float = 0.0
) -> np.ndarray:
    """
    Evaluate sum_j coeffs[j] exp(i freqs[j] (t_k - y)) at k = 1..2n.

    Args:
        coeffs: Real or complex coefficients
        freqs: Integer frequencies, any sign and size
        n: Half the number of intervals
        y: Shift subtracted from every midpoint

    Returns:
        Complex array of length 2n, entry k-1 for midpoint t_k
    """
    size = 4 * n
    freqs = np.asarray(freqs, dtype=np.int64)
    folded = np.zeros(size, dtype=np.complex128)
    if freqs.size:
        weighted = np.asarray(coeffs, dtype=np.complex128) * np.exp(-1j * freqs * y)
        np.add.at(folded, np.mod(freqs, size), weighted)
    # t_k = (2k-1) * 2pi / (4n), so midpoints are the odd FFT indices
    return (size * np.fft.ifft(folded))[1::2]
