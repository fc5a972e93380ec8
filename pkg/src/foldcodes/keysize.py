"""Public-key size arithmetic for symmetric codes and their folded counterparts."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class KeySize:
    n: int
    k: int
    q: int
    group_order: int

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError("need 0 < k < n")
        if self.q < 2 or self.group_order < 1:
            raise ValueError("need q >= 2 and a positive group order")
        if self.n % self.group_order or self.k % self.group_order:
            raise ValueError(f"group order {self.group_order} must divide n={self.n} and k={self.k}")

    @property
    def n_folded(self) -> int:
        return self.n // self.group_order

    @property
    def k_folded(self) -> int:
        return self.k // self.group_order

    @property
    def full_key(self) -> int:
        """Symbols in a systematic generator matrix, k(n - k)."""
        return self.k * (self.n - self.k)

    @property
    def compact_key(self) -> int:
        """Symbols needed when every |G|-th row determines the others."""
        return self.full_key // self.group_order

    @property
    def folded_key(self) -> int:
        return self.k_folded * (self.n_folded - self.k_folded)

    def bits(self, symbols: int) -> float:
        return symbols * math.log2(self.q)

    def lines(self) -> list[str]:
        g = self.group_order
        out = [
            f"code: n={self.n} k={self.k} over GF({self.q}), automorphism group of order {g}",
            f"unstructured key: {self.full_key} symbols ({self.bits(self.full_key):g} bits)",
            f"compact key: {self.compact_key} symbols ({self.bits(self.compact_key):g} bits)",
            f"folded code: n'={self.n_folded} k'={self.k_folded}",
            f"folded key: {self.folded_key} symbols ({self.bits(self.folded_key):g} bits)",
        ]
        if g == 1:
            out.append("no reduction: trivial group")
        else:
            out.append(f"key recovery reduces to ({self.n},{self.k}) -> ({self.n_folded},{self.k_folded}), "
                       f"length and dimension divided by {g}")
        return out

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "q": self.q, "group_order": self.group_order,
                "full_key": self.full_key, "compact_key": self.compact_key,
                "n_folded": self.n_folded, "k_folded": self.k_folded, "folded_key": self.folded_key}
