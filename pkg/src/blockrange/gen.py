"""Deterministic, seeded generators for positive block-matrix instances.

Families cover the special cases discussed alongside the inequalities:
full-rank and low-rank Gram constructions, Hermitian off-diagonal blocks,
line-segment ranges (X = aI + bH), normal 2x2 off-diagonal blocks, and
the explicit alpha-parameterized 2x2-block example with a shrinking
diameter-gap ratio.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .matcore import BlockPSD, MatrixError

FAMILIES = (
    "random-full-rank",
    "random-low-rank",
    "hermitian-offdiag",
    "normal-2x2-offdiag",
    "segment-offdiag",
    "alpha-example",
)


@dataclass(frozen=True)
class GeneratorSpec:
    """Reproducible description of one generated instance."""

    family: str
    n: int
    seed: int
    rank: int | None = None
    alpha: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise MatrixError(f"unknown family {self.family!r}")


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_block_psd(n: int, seed: int, rank: int | None = None) -> BlockPSD:
    """Gram construction G* G partitioned into blocks; PSD by design."""
    if rank is None:
        rank = 2 * n
    if not 1 <= rank <= 2 * n:
        raise MatrixError(f"rank must be in 1..{2 * n}, got {rank}")
    rng = np.random.default_rng(seed)
    G = _complex_gaussian(rng, (rank, 2 * n))
    M = matcore.adjoint(G) @ G
    A, X, _, B = matcore.split_blocks(M)
    return matcore.block_psd(A, X, B)


def hermitian_x_block(n: int, seed: int) -> BlockPSD:
    """Average a random instance with its block-swap to force Hermitian X.

    The swap is a unitary congruence, so the average stays PSD; both
    diagonal blocks become (A + B)/2 and the off-diagonal block (X + X*)/2.
    """
    p = random_block_psd(n, seed)
    half = p.half_sum
    x_herm = matcore.real_part(p.X)
    return matcore.block_psd(half, x_herm, half)


def segment_offdiag_block(
    n: int, seed: int, a: complex | None = None, b: complex | None = None
) -> BlockPSD:
    """X = aI + bH for random Hermitian H; its range is a line segment.

    Diagonal blocks are c I with c above the operator norm of X, which
    makes [cI X; X* cI] positive. The default b snaps the segment
    direction to a multiple of pi/4 so any grid with 8 | m contains the
    zero-breadth direction and certifies width 0 at finite m.
    """
    rng = np.random.default_rng(seed)
    if a is None:
        a = complex(rng.normal(), rng.normal())
    if b is None:
        b = (0.5 + rng.random()) * np.exp(1j * (np.pi / 4.0) * rng.integers(0, 8))
    H = matcore.real_part(_complex_gaussian(rng, (n, n)))
    X = a * np.eye(n) + b * H
    c = float(np.linalg.norm(X, 2)) + 1.0
    return matcore.block_psd(c * np.eye(n), X, c * np.eye(n))


def normal_2x2_offdiag_block(seed: int) -> BlockPSD:
    """n = 2 instance with a normal off-diagonal block (segment range).

    The two eigenvalues of X differ by a multiple-of-pi/4 phase so the
    segment direction lies on any angular grid with 8 | m.
    """
    rng = np.random.default_rng(seed)
    Q, R = np.linalg.qr(_complex_gaussian(rng, (2, 2)))
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))  # fix phases for a Haar-ish draw
    z1 = complex(rng.normal(), rng.normal())
    z2 = z1 + (0.5 + 1.5 * rng.random()) * np.exp(
        1j * (np.pi / 4.0) * rng.integers(0, 8)
    )
    z = np.array([z1, z2])
    X = Q @ np.diag(z) @ matcore.adjoint(Q)
    c = float(np.max(np.abs(z))) + 1.0
    return matcore.block_psd(c * np.eye(2), X, c * np.eye(2))


def alpha_example(alpha: float) -> BlockPSD:
    """The explicit 2x2-block family with A = diag(a, 1/a), B swapped, X = I.

    The assembled spectrum is {a + 1/a, a + 1/a, 0, 0} and the distance
    from 0 to W(X) is exactly 1 for every a > 1.
    """
    if alpha <= 1.0:
        raise MatrixError(f"alpha must exceed 1, got {alpha}")
    A = np.diag([alpha, 1.0 / alpha]).astype(complex)
    B = np.diag([1.0 / alpha, alpha]).astype(complex)
    return matcore.block_psd(A, np.eye(2, dtype=complex), B)


def generate(spec: GeneratorSpec) -> BlockPSD:
    """Dispatch on the family; same spec always yields the same instance."""
    if spec.family == "random-full-rank":
        return random_block_psd(spec.n, spec.seed, 2 * spec.n)
    if spec.family == "random-low-rank":
        rank = spec.rank if spec.rank is not None else max(1, spec.n)
        return random_block_psd(spec.n, spec.seed, rank)
    if spec.family == "hermitian-offdiag":
        return hermitian_x_block(spec.n, spec.seed)
    if spec.family == "normal-2x2-offdiag":
        return normal_2x2_offdiag_block(spec.seed)
    if spec.family == "segment-offdiag":
        return segment_offdiag_block(spec.n, spec.seed)
    if spec.family == "alpha-example":
        if spec.alpha is None:
            raise MatrixError("alpha-example needs an alpha parameter")
        return alpha_example(spec.alpha)
    raise MatrixError(f"unknown family {spec.family!r}")
