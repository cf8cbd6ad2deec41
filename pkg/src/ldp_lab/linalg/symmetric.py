"""Dense real symmetric matrices."""

from dataclasses import dataclass

import numpy as np

from ldp_lab.core.exceptions import ArgumentError

SYMMETRY_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """A real symmetric n x n matrix held as a full, read-only ndarray.

    Symmetry is enforced at construction by averaging with the transpose.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ArgumentError(f"expected a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ArgumentError("matrix dimension must be >= 1")
        arr = 0.5 * (arr + arr.T)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_array(cls, arr, check: bool = True) -> "SymMatrix":
        arr = np.asarray(arr, dtype=float)
        if check and arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
            scale = max(1.0, float(np.max(np.abs(arr), initial=0.0)))
            if not np.allclose(arr, arr.T, rtol=0.0, atol=SYMMETRY_ATOL * scale):
                raise ArgumentError("matrix is not symmetric")
        return cls(arr)

    @classmethod
    def zeros(cls, n: int) -> "SymMatrix":
        return cls(np.zeros((n, n)))

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls(np.eye(n))

    @classmethod
    def constant_off_diagonal(cls, n: int, value: float) -> "SymMatrix":
        arr = np.full((n, n), float(value))
        np.fill_diagonal(arr, 0.0)
        return cls(arr)

    @classmethod
    def from_upper(cls, n: int, values, diagonal=None) -> "SymMatrix":
        """Build from the strict upper triangle in row-major order."""
        values = np.asarray(values, dtype=float)
        iu = np.triu_indices(n, 1)
        if values.shape != (len(iu[0]),):
            raise ArgumentError(f"expected {len(iu[0])} upper entries, got {values.shape}")
        arr = np.zeros((n, n))
        arr[iu] = values
        arr = arr + arr.T
        if diagonal is not None:
            arr[np.diag_indices(n)] = np.asarray(diagonal, dtype=float)
        return cls(arr)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.data).copy()

    def has_zero_diagonal(self) -> bool:
        return bool(np.all(np.diag(self.data) == 0.0))

    def upper_entries(self) -> np.ndarray:
        return self.data[np.triu_indices(self.n, 1)].copy()

    def to_array(self) -> np.ndarray:
        return self.data.copy()

    def trace(self) -> float:
        return float(np.trace(self.data))

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.data, "fro"))

    def operator_norm(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvalsh(self.data))))

    def scaled(self, c: float) -> "SymMatrix":
        return SymMatrix(c * self.data)

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        return SymMatrix(self.data + other.data)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        return SymMatrix(self.data - other.data)

    def __repr__(self) -> str:
        return f"<SymMatrix n={self.n} ||.||_F={self.frobenius_norm():.6g}>"
