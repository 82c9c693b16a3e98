"""sl_n Cartan data, weight arithmetic, partitions, compositions and the
index bijections shared by the flag and quiver sides.

Conventions: vertices are 1..n-1; omega-coordinates are the canonical weight
storage; eps-coordinates are normalized so the last entry is 0 and equality
is modulo the all-ones vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import IncompatibleError, InvalidRankError, NotInImageError


def cartan_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """The (n-1)x(n-1) Cartan matrix of type A_{n-1}."""
    if n < 2:
        raise InvalidRankError(f"rank parameter n must be >= 2, got {n}")
    size = n - 1
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(size))
        for i in range(size)
    )


@dataclass(frozen=True)
class CartanData:
    n: int
    C: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.C != cartan_matrix(self.n):
            raise IncompatibleError("C is not the A_{n-1} Cartan matrix")

    @classmethod
    def of_rank(cls, n: int) -> "CartanData":
        return cls(n, cartan_matrix(n))


@dataclass(frozen=True)
class Weight:
    """sl_n weight stored in fundamental-weight coordinates."""

    omega: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(int(c) for c in self.omega))
        if len(self.omega) < 1:
            raise InvalidRankError("weight needs at least one omega coordinate")

    @property
    def n(self) -> int:
        return len(self.omega) + 1

    @property
    def eps(self) -> tuple[int, ...]:
        """eps-coordinates normalized so the last entry is 0."""
        out = []
        acc = 0
        for c in reversed(self.omega):
            acc += c
            out.append(acc)
        out.reverse()
        out.append(0)
        return tuple(out)

    @classmethod
    def from_eps(cls, eps: Sequence[int]) -> "Weight":
        eps = [int(e) for e in eps]
        if len(eps) < 2:
            raise InvalidRankError("eps coordinates need length >= 2")
        return cls(tuple(eps[k] - eps[k + 1] for k in range(len(eps) - 1)))

    def __add__(self, other: "Weight") -> "Weight":
        if self.n != other.n:
            raise IncompatibleError("weight rank mismatch")
        return Weight(tuple(a + b for a, b in zip(self.omega, other.omega)))

    def __sub__(self, other: "Weight") -> "Weight":
        if self.n != other.n:
            raise IncompatibleError("weight rank mismatch")
        return Weight(tuple(a - b for a, b in zip(self.omega, other.omega)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.omega))

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.omega)

    def to_json(self) -> list[int]:
        return list(self.omega)


@dataclass(frozen=True)
class HighestWeight:
    """Dominant weight given by n-1 non-negative integers w_k."""

    w: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(c) for c in self.w))
        if len(self.w) < 1:
            raise InvalidRankError("highest weight needs n >= 2")
        if any(c < 0 for c in self.w):
            raise IncompatibleError(f"negative entry in highest weight {self.w}")

    @property
    def n(self) -> int:
        return len(self.w) + 1

    @property
    def level_d(self) -> int:
        """Sum over k of k*w_k; the size of the associated flag ambient."""
        return sum((k + 1) * c for k, c in enumerate(self.w))

    def __iter__(self):
        return iter(self.w)

    def __len__(self):
        return len(self.w)

    def __getitem__(self, k):
        return self.w[k]

    def to_json(self) -> list[int]:
        return list(self.w)


@dataclass(frozen=True)
class Composition:
    """Composition of d into len(parts) non-negative integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(c) for c in self.parts))
        if any(c < 0 for c in self.parts):
            raise IncompatibleError(f"negative part in composition {self.parts}")

    @property
    def d(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, k):
        return self.parts[k]

    def to_json(self) -> list[int]:
        return list(self.parts)


@dataclass(frozen=True)
class DimVec:
    """Graded dimension vector over the n-1 quiver vertices."""

    v: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(int(c) for c in self.v))
        if len(self.v) < 1:
            raise InvalidRankError("dimension vector needs n >= 2")
        if any(c < 0 for c in self.v):
            raise IncompatibleError(f"negative entry in dimension vector {self.v}")

    @property
    def n(self) -> int:
        return len(self.v) + 1

    def __iter__(self):
        return iter(self.v)

    def __len__(self):
        return len(self.v)

    def __getitem__(self, k):
        return self.v[k]

    def to_json(self) -> list[int]:
        return list(self.v)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(c) for c in self.parts))
        if any(c <= 0 for c in self.parts):
            raise IncompatibleError(f"non-positive part in partition {self.parts}")
        if any(
            self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)
        ):
            raise IncompatibleError(f"parts not weakly decreasing: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, k):
        return self.parts[k]

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        return Partition(
            tuple(
                sum(1 for p in self.parts if p > i) for i in range(self.parts[0])
            )
        )

    def to_json(self) -> list[int]:
        return list(self.parts)


def as_highest_weight(w) -> HighestWeight:
    return w if isinstance(w, HighestWeight) else HighestWeight(tuple(w))


def as_composition(d) -> Composition:
    return d if isinstance(d, Composition) else Composition(tuple(d))


def as_dimvec(v) -> DimVec:
    return v if isinstance(v, DimVec) else DimVec(tuple(v))


def as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(tuple(p))


def pair_with_coroot(mu: Weight, k: int) -> int:
    """<h_k, mu> for the k-th simple coroot, 1 <= k <= n-1."""
    if not 1 <= k <= mu.n - 1:
        raise InvalidRankError(f"coroot index {k} out of range for n={mu.n}")
    return mu.omega[k - 1]


def omega_weight(w) -> Weight:
    """The dominant weight sum_k w_k omega_k."""
    return Weight(as_highest_weight(w).w)


def alpha_weight(v) -> Weight:
    """The root-lattice element sum_k v_k alpha_k, in omega-coordinates (= Cv)."""
    v = as_dimvec(v)
    C = cartan_matrix(v.n)
    return Weight(tuple(sum(row[j] * v[j] for j in range(len(v))) for row in C))


def weight_of_vw(v, w) -> Weight:
    """omega_w - alpha_v, the weight common to both constructions."""
    return omega_weight(w) - alpha_weight(v)


def hw_to_partition(w) -> Partition:
    """Partition with lambda_k = w_k + ... + w_{n-1}; trailing zeros dropped."""
    w = as_highest_weight(w)
    lam = []
    acc = 0
    for c in reversed(w.w):
        acc += c
        lam.append(acc)
    lam.reverse()
    return Partition(tuple(p for p in lam if p > 0))


def is_partition_of(w, d: int) -> bool:
    """Strict reading: the highest weight w is a partition of d iff sum k*w_k = d."""
    return as_highest_weight(w).level_d == int(d)


def partition_to_hw(lam, n: int) -> HighestWeight:
    """Highest weight with w_k = lambda_k - lambda_{k+1}; lam must have < n rows
    after reduction (full columns are NOT removed here, see reduce_mod_full_columns)."""
    lam = as_partition(lam)
    if len(lam) > n - 1:
        raise IncompatibleError(f"partition {lam.parts} has too many rows for n={n}")
    padded = list(lam.parts) + [0] * (n - len(lam.parts))
    return HighestWeight(tuple(padded[k] - padded[k + 1] for k in range(n - 1)))


def reduce_mod_full_columns(lam, n: int) -> Partition:
    """Remove height-n columns: the sl_n content of a GL_n partition."""
    lam = as_partition(lam)
    if len(lam) > n:
        raise IncompatibleError(f"partition {lam.parts} has more than n={n} rows")
    if len(lam) < n:
        return lam
    c = lam.parts[n - 1]
    return Partition(tuple(p - c for p in lam.parts if p - c > 0))


def gl_partitions(d: int, max_parts: int) -> Iterator[Partition]:
    """All partitions of d with at most max_parts rows, decreasing lex order."""

    def rec(remaining: int, cap: int, parts_left: int, prefix: list[int]):
        if remaining == 0:
            yield Partition(tuple(prefix))
            return
        if parts_left == 0:
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            yield from rec(remaining - p, p, parts_left - 1, prefix)
            prefix.pop()

    yield from rec(d, d, max_parts, [])


GHOST = None  # explicit absent value for the ghost composition


def comp_shift(d, k: int, sign: int) -> Composition | None:
    """d_k^+ or d_k^-; returns None (the ghost) when a part would go negative."""
    d = as_composition(d)
    if not 1 <= k <= d.n - 1:
        raise InvalidRankError(f"shift index {k} out of range for n={d.n}")
    if sign not in (1, -1):
        raise IncompatibleError("sign must be +1 or -1")
    parts = list(d.parts)
    parts[k - 1] += sign
    parts[k] -= sign
    if parts[k - 1] < 0 or parts[k] < 0:
        return GHOST
    return Composition(tuple(parts))


def a_of_vw(v, w) -> Composition:
    """The composition a(v, w): a_1 = w_1+..+w_{n-1} - v_1, a_n = v_{n-1},
    a_k = w_k+..+w_{n-1} - v_k + v_{k-1} in between."""
    v, w = as_dimvec(v), as_highest_weight(w)
    if v.n != w.n:
        raise IncompatibleError(f"rank mismatch: v has n={v.n}, w has n={w.n}")
    n = w.n
    suffix = [0] * n  # suffix[k] = w_{k+1} + ... + w_{n-1} with 0-based k
    for k in range(n - 2, -1, -1):
        suffix[k] = suffix[k + 1] + w[k]
    a = []
    for k in range(n):
        if k == n - 1:
            ak = v[n - 2]
        elif k == 0:
            ak = suffix[0] - v[0]
        else:
            ak = suffix[k] - v[k] + v[k - 1]
        if ak < 0:
            raise NotInImageError(
                f"a_{k + 1} = {ak} < 0: v={v.v} is not in the image for w={w.w}"
            )
        a.append(ak)
    return Composition(tuple(a))


def v_of_aw(a, w) -> DimVec:
    """Inverse of a_of_vw, solved from a_n = v_{n-1} upward."""
    a, w = as_composition(a), as_highest_weight(w)
    if a.n != w.n:
        raise IncompatibleError(f"rank mismatch: a has n={a.n}, w has n={w.n}")
    if a.d != w.level_d:
        raise IncompatibleError(
            f"sum of a is {a.d} but w is a partition of {w.level_d}"
        )
    n = w.n
    suffix = [0] * n
    for k in range(n - 2, -1, -1):
        suffix[k] = suffix[k + 1] + w[k]
    v = [0] * (n - 1)
    v[n - 2] = a[n - 1]
    for k in range(n - 2, 0, -1):  # solve a_{k+1} = suffix[k] - v[k] + v[k-1]
        v[k - 1] = a[k] - suffix[k] + v[k]
        if v[k - 1] < 0:
            raise NotInImageError(f"solved v_{k} = {v[k - 1]} < 0")
    if a[0] != suffix[0] - v[0]:
        raise NotInImageError("first coordinate inconsistent; a not in the image")
    return DimVec(tuple(v))


def jordan_type(d) -> Partition:
    """lambda_d = 1^{a_1-a_2} 2^{a_2-a_3} ... n^{a_n} for a = sorted(d, desc)."""
    d = as_composition(d)
    alpha = sorted(d.parts, reverse=True)
    n = len(alpha)
    parts: list[int] = []
    for i in range(n, 0, -1):  # build descending: biggest block sizes first
        nxt = alpha[i] if i < n else 0
        parts.extend([i] * (alpha[i - 1] - nxt))
    return Partition(tuple(parts))


def dominates(lam, mu) -> bool:
    """Dominance order on partitions of equal size: lam >= mu."""
    lam, mu = as_partition(lam), as_partition(mu)
    if lam.size != mu.size:
        raise IncompatibleError(f"|{lam.parts}| != |{mu.parts}|")
    acc_l = acc_m = 0
    for i in range(max(len(lam), len(mu))):
        acc_l += lam.parts[i] if i < len(lam) else 0
        acc_m += mu.parts[i] if i < len(mu) else 0
        if acc_l < acc_m:
            return False
    return True
