"""
Truncated occupation-number basis

States are enumerated lexicographically (last mode fastest), which is also the
canonical serialization order for dumps and golden files.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np
from loguru import logger

from ..config import Config, get_config
from ..errors import DimensionLimitError, InvalidInputError


@dataclass(frozen=True, eq=False)
class FockBasis:
    """
    Product basis |y_0, y_1, ..., y_{m-1}> with 0 <= y_j <= caps[j]

    Immutable after construction and safe to share between threads.
    """

    mode_count: int
    caps: tuple
    states: np.ndarray
    strides: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.states.shape[0])

    def __len__(self) -> int:
        return self.dimension

    def index(self, occupation: Sequence[int]) -> int:
        """Basis index of an occupation vector"""
        occ = np.asarray(occupation, dtype=np.int64)
        if occ.shape != (self.mode_count,):
            raise InvalidInputError(
                f"Occupation vector has length {occ.size}, expected {self.mode_count}"
            )
        if np.any(occ < 0) or np.any(occ > np.asarray(self.caps)):
            raise InvalidInputError(f"Occupation {tuple(occ.tolist())} outside caps {self.caps}")
        return int(occ @ self.strides)

    def indices(self, occupations: np.ndarray) -> np.ndarray:
        """Vectorized ``index`` for an array of occupation rows"""
        return np.asarray(occupations, dtype=np.int64) @ self.strides

    def occupation(self, index: int) -> tuple:
        return tuple(int(v) for v in self.states[index])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode_count": self.mode_count,
            "caps": list(self.caps),
            "states": self.states.tolist(),
        }


def build_basis(
    mode_count: int,
    caps: Union[int, Sequence[int]],
    config: Optional[Config] = None,
) -> FockBasis:
    """
    Enumerate the truncated Fock space

    Args:
        mode_count: Number of bosonic modes
        caps: Maximal occupation per mode, or a single cap for all modes
        config: Settings providing ``dimension_limit``

    Returns:
        FockBasis with lexicographically ordered states
    """
    config = get_config(config)

    if mode_count < 1:
        raise InvalidInputError(f"mode_count must be >= 1, got {mode_count}")

    if isinstance(caps, (int, np.integer)):
        caps = (int(caps),) * mode_count
    caps = tuple(int(c) for c in caps)

    if len(caps) != mode_count:
        raise InvalidInputError(f"{len(caps)} caps given for {mode_count} modes")
    if any(c < 0 for c in caps):
        raise InvalidInputError(f"Caps must be nonnegative, got {caps}")

    shape = tuple(c + 1 for c in caps)
    dimension = math.prod(shape)
    if dimension > config.dimension_limit:
        product = " x ".join(str(s) for s in shape)
        raise DimensionLimitError(
            f"Basis dimension {product} = {dimension} exceeds limit {config.dimension_limit}",
            dimension=dimension,
            limit=config.dimension_limit,
        )

    states = np.stack(np.unravel_index(np.arange(dimension), shape), axis=1).astype(np.int64)
    strides = np.array([math.prod(shape[j + 1:]) for j in range(mode_count)], dtype=np.int64)

    states.setflags(write=False)
    strides.setflags(write=False)

    logger.debug(f"Built Fock basis: modes={mode_count} caps={caps} dimension={dimension}")
    return FockBasis(mode_count=mode_count, caps=caps, states=states, strides=strides)
