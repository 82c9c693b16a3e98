"""n-step flags in Q^d, nilpotent endomorphisms, Jordan data, transversal
slices and the flag-side statistics (compositions, sign exponents, Hecke
pairs, epsilon and the maximal stratum reduction).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .cartan import (
    Composition,
    Partition,
    as_composition,
    as_highest_weight,
    as_partition,
)
from .errors import (
    DimensionMismatchError,
    IncompatibleError,
    InvalidRankError,
    JordanLayoutError,
    MembershipError,
    SizeMismatchError,
)
from .linalg import (
    RatMat,
    Subspace,
    canonicalize,
    contains,
    intersect_and_sum,
    preimage,
    rref,
)


class NilEndo:
    """Endomorphism x of Q^d with x^n = 0, certified at construction."""

    __slots__ = ("x", "n", "nilpotency_degree")

    def __init__(self, x: RatMat, n: int):
        if x.rows != x.cols:
            raise DimensionMismatchError("endomorphism must be square")
        if n < 2:
            raise InvalidRankError(f"n must be >= 2, got {n}")
        degree = 0
        power = RatMat.identity(x.rows)
        while degree <= n and not power.is_zero():
            power = power * x
            degree += 1
        if degree > n:
            raise IncompatibleError(f"x^{n} != 0: not nilpotent of degree <= n")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "nilpotency_degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("NilEndo is immutable")

    @property
    def d(self) -> int:
        return self.x.rows

    def __eq__(self, other):
        return isinstance(other, NilEndo) and self.n == other.n and self.x == other.x

    def __hash__(self):
        return hash((self.n, self.x))

    def __repr__(self):
        return f"NilEndo(d={self.d}, n={self.n})"

    def to_json(self) -> dict:
        return {"n": self.n, "x": self.x.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "NilEndo":
        return cls(RatMat.from_json(obj["x"]), obj["n"])


class Flag:
    """Chain 0 = F_0 ⊆ F_1 ⊆ ... ⊆ F_n = Q^d of canonical subspaces."""

    __slots__ = ("d", "n", "spaces")

    def __init__(self, spaces: Sequence[Subspace], n: int | None = None):
        spaces = tuple(spaces)
        if n is None:
            n = len(spaces) - 1
        if len(spaces) != n + 1:
            raise DimensionMismatchError(f"need n+1={n + 1} spaces, got {len(spaces)}")
        if n < 2:
            raise InvalidRankError("flag needs n >= 2")
        d = spaces[0].ambient_dim
        if any(s.ambient_dim != d for s in spaces):
            raise DimensionMismatchError("mixed ambient dimensions in flag")
        if not spaces[0].is_zero():
            raise IncompatibleError("F_0 must be the zero subspace")
        if not spaces[-1].is_full():
            raise IncompatibleError("F_n must be the full space")
        for i in range(n):
            if not contains(spaces[i + 1], spaces[i]):
                raise IncompatibleError(f"F_{i} is not contained in F_{i + 1}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "spaces", spaces)

    def __setattr__(self, name, value):
        raise AttributeError("Flag is immutable")

    def __getitem__(self, i: int) -> Subspace:
        return self.spaces[i]

    def __eq__(self, other):
        return (
            isinstance(other, Flag)
            and self.n == other.n
            and self.spaces == other.spaces
        )

    def __hash__(self):
        return hash((self.n, self.spaces))

    def __repr__(self):
        dims = tuple(s.dim for s in self.spaces)
        return f"Flag(d={self.d}, n={self.n}, dims={dims})"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "spaces": [s.basis.to_json() for s in self.spaces],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Flag":
        d = obj["d"]
        spaces = [
            canonicalize(RatMat.from_json(b).columns(), d) for b in obj["spaces"]
        ]
        return cls(spaces, obj["n"])


@dataclass(frozen=True)
class Sl2Triple:
    x: RatMat
    y: RatMat
    h: RatMat

    def __post_init__(self):
        if not (
            self.h * self.x - self.x * self.h == self.x.scale(2)
            and self.h * self.y - self.y * self.h == self.y.scale(-2)
            and self.x * self.y - self.y * self.x == self.h
        ):
            raise IncompatibleError("sl_2 triple relations fail")


def jordan_nilpotent(lam, d: int, n: int | None = None) -> NilEndo:
    """Block-diagonal shift matrix, one Jordan block per part in lam order.

    n defaults to the largest block size (the nilpotency degree); pass the
    ambient flag length explicitly when it is larger.
    """
    lam = as_partition(lam)
    if lam.size != d:
        raise SizeMismatchError(f"|{lam.parts}| = {lam.size} != d = {d}")
    rows = [[Fraction(0)] * d for _ in range(d)]
    offset = 0
    for m in lam.parts:
        for t in range(m - 1):
            rows[offset + t][offset + t + 1] = Fraction(1)
        offset += m
    if n is None:
        n = max(lam.parts[0] if lam.parts else 0, 2)
    return NilEndo(RatMat(rows, cols=d), n)


def block_shift_x(w) -> tuple[NilEndo, tuple[tuple[int, int], ...]]:
    """Canonical nilpotent of type 1^{w_1} 2^{w_2} ... (n-1)^{w_{n-1}}.

    The ambient Q^d is the direct sum of copies W_k^(m), 1 <= m <= k, laid out
    lexicographically by (k, m) with each copy carrying the standard basis of
    Q^{w_k}.  x maps W_k^(m) identically onto W_k^(m-1) and kills W_k^(1).
    Returns (x, labels) with labels[c] = (k, m) for each coordinate c.
    """
    w = as_highest_weight(w)
    n = w.n
    d = w.level_d
    labels: list[tuple[int, int]] = []
    offsets: dict[tuple[int, int], int] = {}
    pos = 0
    for k in range(1, n):
        for m in range(1, k + 1):
            offsets[(k, m)] = pos
            labels.extend([(k, m)] * w[k - 1])
            pos += w[k - 1]
    rows = [[Fraction(0)] * d for _ in range(d)]
    for k in range(1, n):
        for m in range(2, k + 1):
            src, dst = offsets[(k, m)], offsets[(k, m - 1)]
            for t in range(w[k - 1]):
                rows[dst + t][src + t] = Fraction(1)
    return NilEndo(RatMat(rows, cols=d), n), tuple(labels)


def flag_membership(x: NilEndo, F: Flag) -> bool:
    """True iff x(F_i) ⊆ F_{i-1} for all i, i.e. F lies in the fiber over x."""
    if x.d != F.d or x.n != F.n:
        raise SizeMismatchError(f"x has (d={x.d}, n={x.n}), F has (d={F.d}, n={F.n})")
    for i in range(1, F.n + 1):
        for col in F[i].basis.columns():
            if not F[i - 1].contains_vector(x.x.apply(col)):
                return False
    return True


def composition_of(F: Flag) -> Composition:
    """Step dimensions d_i = dim F_i - dim F_{i-1}."""
    return Composition(
        tuple(F[i].dim - F[i - 1].dim for i in range(1, F.n + 1))
    )


def flag_dim(d) -> int:
    """Complex dimension of the partial flag manifold: sum_{i<j} d_i d_j."""
    d = as_composition(d)
    total = 0
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            total += d[i] * d[j]
    return total


def s_k_exponent(d, k: int) -> int:
    """Sign exponent s_k(d_k^+, d) = dim F_{d_k^+} - dim F_d = d_{k+1}-d_k-1.

    The dimension difference is evaluated formally (as a polynomial in the
    parts), so the exponent is defined even where d_k^+ is the ghost; the
    lowering-operator sum needs the sign at exactly those strata.
    """
    d = as_composition(d)
    if not 1 <= k <= d.n - 1:
        raise InvalidRankError(f"shift index {k} out of range for n={d.n}")
    shifted = list(d.parts)
    shifted[k - 1] += 1
    shifted[k] -= 1

    def formal_dim(parts):
        return sum(
            parts[i] * parts[j]
            for i in range(len(parts))
            for j in range(i + 1, len(parts))
        )

    return formal_dim(shifted) - formal_dim(d.parts)


def is_hecke_pair(Fp: Flag, F: Flag, k: int) -> bool:
    """True iff (F', F) has equal steps away from k and F_k ⊂ F'_k of codim 1."""
    if Fp.d != F.d or Fp.n != F.n:
        raise SizeMismatchError("flag sizes disagree")
    if not 1 <= k <= F.n - 1:
        raise InvalidRankError(f"index {k} out of range")
    for l in range(F.n + 1):
        if l == k:
            continue
        if Fp[l] != F[l]:
            return False
    return Fp[k].dim == F[k].dim + 1 and contains(Fp[k], F[k])


def epsilon_k_flag(F: Flag, x: NilEndo, k: int) -> int:
    """dim(F_{k+1} ∩ x^{-1}(F_{k-1})) - dim F_k; requires F in the fiber of x."""
    if not 1 <= k <= F.n - 1:
        raise InvalidRankError(f"index {k} out of range")
    if not flag_membership(x, F):
        raise MembershipError("flag is not compatible with x")
    meet, _ = intersect_and_sum(F[k + 1], preimage(x.x, F[k - 1]))
    return meet.dim - F[k].dim


def flag_reduce(F: Flag, x: NilEndo, k: int) -> tuple[Flag, int]:
    """Replace F_k by the maximal admissible subspace F_{k+1} ∩ x^{-1}(F_{k-1}).

    The output is again in the fiber of x, has epsilon_k = 0, and its
    composition is the (k, c)-shift of the input composition, c = epsilon_k(F).
    """
    if not 1 <= k <= F.n - 1:
        raise InvalidRankError(f"index {k} out of range")
    if not flag_membership(x, F):
        raise MembershipError("flag is not compatible with x")
    meet, _ = intersect_and_sum(F[k + 1], preimage(x.x, F[k - 1]))
    c = meet.dim - F[k].dim
    if c == 0:
        return F, 0
    spaces = list(F.spaces)
    spaces[k] = meet
    return Flag(spaces, F.n), c


def nilpotent_jordan_type(x: RatMat) -> Partition:
    """Jordan type from exact ranks of powers: lambda'_s = rk x^{s-1} - rk x^s."""
    if x.rows != x.cols:
        raise DimensionMismatchError("Jordan type of non-square matrix")
    d = x.rows
    ranks = []
    power = RatMat.identity(d)
    while True:
        _, pivots = rref(power)
        ranks.append(len(pivots))
        if ranks[-1] == 0:
            break
        if len(ranks) > d + 1:
            raise IncompatibleError("matrix is not nilpotent")
        power = power * x
    conj = [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))]
    parts: list[int] = []
    for size, count in enumerate(
        (conj[i] - (conj[i + 1] if i + 1 < len(conj) else 0) for i in range(len(conj))),
        start=1,
    ):
        parts.extend([size] * count)
    parts.reverse()
    return Partition(tuple(parts))


def _chains_of(x: RatMat) -> list[list[int]]:
    """Decompose a 0/1 basis-shift matrix into its coordinate chains."""
    d = x.rows
    pred: dict[int, int] = {}
    for c in range(d):
        col = x.column(c)
        support = [r for r in range(d) if col[r] != 0]
        if not support:
            continue
        if len(support) > 1 or col[support[0]] != 1:
            raise JordanLayoutError(f"column {c} is not a unit basis shift")
        pred[c] = support[0]
    targets = list(pred.values())
    if len(set(targets)) != len(targets):
        raise JordanLayoutError("shift map is not injective on its support")
    succ = {r: c for c, r in pred.items()}
    terminal = [c for c in range(d) if c not in pred]
    chains = []
    seen = 0
    for t in sorted(terminal):
        chain = [t]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        chains.append(chain)
        seen += len(chain)
    if seen != d:
        raise JordanLayoutError("chains do not cover all coordinates")
    return chains


def sl2_slice(x: NilEndo) -> tuple[Sl2Triple, Callable[[RatMat], bool]]:
    """Standard sl_2 triple through x plus the slice membership test.

    x must be in the basis-shift layout produced by jordan_nilpotent or
    block_shift_x.  On a chain of length m the triple uses
    h = diag(m-1, m-3, ..., 1-m) and y with entries j(m-j) down the chain.
    Membership of u: u^n = 0 and [u - x, y] = 0.
    """
    d = x.d
    chains = _chains_of(x.x)
    y_rows = [[Fraction(0)] * d for _ in range(d)]
    h_rows = [[Fraction(0)] * d for _ in range(d)]
    for chain in chains:
        m = len(chain)
        for j, c in enumerate(chain, start=1):
            h_rows[c][c] = Fraction(m - 2 * j + 1)
            if j < m:
                y_rows[chain[j]][c] = Fraction(j * (m - j))
    triple = Sl2Triple(x.x, RatMat(y_rows, cols=d), RatMat(h_rows, cols=d))

    def member(u: RatMat) -> bool:
        if u.shape != (d, d):
            raise DimensionMismatchError("candidate has wrong shape")
        if not u.power(x.n).is_zero():
            return False
        diff = u - x.x
        return (diff * triple.y - triple.y * diff).is_zero()

    return triple, member


def flag_bundle_to_json(x: NilEndo, flags: Sequence[Flag]) -> dict:
    """File schema pairing a nilpotent with a list of flags in its fiber."""
    return {
        "schema_version": "1",
        "d": x.d,
        "n": x.n,
        "x": x.x.to_json(),
        "flags": [F.to_json() for F in flags],
    }


def flag_bundle_from_json(obj: dict) -> tuple[NilEndo, list[Flag]]:
    x = NilEndo(RatMat.from_json(obj["x"]), obj["n"])
    flags = [Flag.from_json(f) for f in obj["flags"]]
    for F in flags:
        if F.d != x.d or F.n != x.n:
            raise SizeMismatchError("bundle flag does not match x")
    return x, flags
