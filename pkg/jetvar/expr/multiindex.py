from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import Iterable, Iterator, Tuple


@dataclass(frozen=True, order=True)
class MultiIndex:
    """Element of N_0^w. Positions are 1-based in the public API (x_1..x_w)."""

    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in entries):
            raise ValueError(f"Multi-index entries must be non-negative: {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def zero(cls, width: int) -> MultiIndex:
        return cls((0,) * width)

    @classmethod
    def basis(cls, width: int, i: int) -> MultiIndex:
        return cls.zero(width).add(i)

    @property
    def width(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> int:
        return sum(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        """1-based access: sigma[i] is the exponent of D_i."""
        self._check_position(i)
        return self.entries[i - 1]

    def _check_position(self, i: int) -> None:
        if not 1 <= i <= self.width:
            raise ValueError(f"Index {i} out of range 1..{self.width}")

    def add(self, i: int, times: int = 1) -> MultiIndex:
        self._check_position(i)
        e = list(self.entries)
        e[i - 1] += times
        return MultiIndex(tuple(e))

    def sub(self, i: int, times: int = 1) -> MultiIndex:
        self._check_position(i)
        if self.entries[i - 1] < times:
            raise ValueError(f"Cannot subtract 1_{i} from {self.entries}")
        return self.add(i, -times) if times else self

    def __add__(self, other: MultiIndex) -> MultiIndex:
        if self.width != other.width:
            raise ValueError(f"Width mismatch: {self.width} vs {other.width}")
        return MultiIndex(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: MultiIndex) -> MultiIndex:
        if self.width != other.width:
            raise ValueError(f"Width mismatch: {self.width} vs {other.width}")
        return MultiIndex(tuple(a - b for a, b in zip(self, other)))

    def dominates(self, other: MultiIndex) -> bool:
        return all(a >= b for a, b in zip(self, other))

    def binomial(self, other: MultiIndex) -> int:
        return prod(comb(a, b) for a, b in zip(self, other))

    def split_normal(self) -> Tuple[MultiIndex, int]:
        """(sigma_1..sigma_{w-1}), sigma_w: tangential part and normal order."""
        return MultiIndex(self.entries[:-1]), self.entries[-1]

    def with_normal(self, i: int) -> MultiIndex:
        """Append a normal order to a tangential index: (tau, i)."""
        return MultiIndex(self.entries + (i,))

    def steps(self) -> Iterator[int]:
        """Positions of the D_i factors of D_sigma, each repeated sigma_i times."""
        for pos, e in enumerate(self.entries, start=1):
            for _ in range(e):
                yield pos

    def below(self) -> Iterator[MultiIndex]:
        """All rho with rho <= self componentwise."""
        def _rec(prefix: Tuple[int, ...], rest: Tuple[int, ...]) -> Iterable[Tuple[int, ...]]:
            if not rest:
                yield prefix
                return
            for v in range(rest[0] + 1):
                yield from _rec(prefix + (v,), rest[1:])

        for t in _rec((), self.entries):
            yield MultiIndex(t)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)
