import numpy as np


def random_complex(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = random_complex(rng, n, n)
    return (a + a.conj().T) / 2


def brute_force_state(c0: int, x0: int, P: int, T: int) -> np.ndarray:
    """Walk evolution by explicit per-amplitude coin and shift rules."""
    alpha = np.zeros(P, dtype=np.complex128)
    beta = np.zeros(P, dtype=np.complex128)
    (alpha if c0 == 0 else beta)[x0] = 1.0
    for _ in range(T):
        up = (alpha + beta) / np.sqrt(2)
        down = (alpha - beta) / np.sqrt(2)
        alpha = np.array([up[(x - 1) % P] for x in range(P)])
        beta = np.array([down[(x + 1) % P] for x in range(P)])
    return np.concatenate([alpha, beta])
