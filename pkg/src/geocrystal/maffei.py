"""The explicit map from stable Lagrangian quiver points to flags, built from
the left-then-right path set and the block maps phi_k with F_k = ker phi_k.

The length-zero path at each vertex is included in the path set; it carries
the direct i_k block, and without it the composition of the output flag would
be wrong on the v = 0 point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import as_highest_weight
from .errors import (
    DimensionMismatchError,
    IncompatibleError,
    InvalidRankError,
    LambdaPreconditionError,
)
from .flag import Flag, NilEndo, block_shift_x
from .linalg import (
    RatMat,
    Subspace,
    canonicalize,
    embed,
    full_space,
    kernel_basis,
    zero_space,
)
from .quiver import QuiverRep, in_Lambda, is_stable


@dataclass(frozen=True)
class LeftRightPath:
    """Path descending start -> bottom then ascending bottom -> end.

    ord is the number of leftward edges (= start - bottom); the empty path at
    a vertex is start = bottom = end.
    """

    start: int
    bottom: int
    end: int

    def __post_init__(self):
        if not 1 <= self.bottom <= min(self.start, self.end):
            raise IncompatibleError(
                f"bottom {self.bottom} not in [1, min({self.start}, {self.end})]"
            )

    @property
    def ord(self) -> int:
        return self.start - self.bottom

    @property
    def out(self) -> int:
        return self.start

    @property
    def inc(self) -> int:
        return self.end

    def edges(self) -> list[tuple[int, int]]:
        down = [(a, a - 1) for a in range(self.start, self.bottom, -1)]
        up = [(a, a + 1) for a in range(self.bottom, self.end)]
        return down + up


def enum_paths(n: int) -> list[LeftRightPath]:
    """All left-then-right paths on vertices 1..n-1, empty paths included."""
    if n < 2:
        raise InvalidRankError(f"n must be >= 2, got {n}")
    paths = []
    for start in range(1, n):
        for end in range(1, n):
            for bottom in range(1, min(start, end) + 1):
                paths.append(LeftRightPath(start, bottom, end))
    return paths


class ThetaContext:
    """Fixed identification of the sum of copies W_k^(m) with Q^d.

    Blocks are laid out lexicographically by (k, m); block (k, m) has size
    w_k.  W^{<=k} collects the copies with m <= k and its dimension is
    sum_l min(l, k) w_l.
    """

    __slots__ = ("n", "w", "d", "offsets", "labels")

    def __init__(self, w):
        w = as_highest_weight(w)
        offsets: dict[tuple[int, int], int] = {}
        labels: list[tuple[int, int]] = []
        pos = 0
        for k in range(1, w.n):
            for m in range(1, k + 1):
                offsets[(k, m)] = pos
                labels.extend([(k, m)] * w[k - 1])
                pos += w[k - 1]
        object.__setattr__(self, "n", w.n)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "d", pos)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "labels", tuple(labels))

    def __setattr__(self, name, value):
        raise AttributeError("ThetaContext is immutable")

    def block_coords(self, k: int, m: int) -> range:
        off = self.offsets[(k, m)]
        return range(off, off + self.w[k - 1])

    def wleq_coords(self, k: int) -> list[int]:
        """Global coordinates of W^{<=k}, in ascending order."""
        coords = []
        for l in range(1, self.n):
            for m in range(1, min(l, k) + 1):
                coords.extend(self.block_coords(l, m))
        return coords

    def wleq_dim(self, k: int) -> int:
        return sum(min(l, k) * self.w[l - 1] for l in range(1, self.n))

    def wleq_subspace(self, k: int) -> Subspace:
        vectors = []
        for c in self.wleq_coords(k):
            v = [Fraction(0)] * self.d
            v[c] = Fraction(1)
            vectors.append(tuple(v))
        return canonicalize(vectors, self.d)

    def x(self) -> NilEndo:
        endo, labels = block_shift_x(self.w)
        assert labels == self.labels
        return endo


def _path_matrix(r: QuiverRep, path: LeftRightPath) -> RatMat:
    """B_p i_{out(p)} as a map from W_{out(p)} to V_{inc(p)}."""
    m = r.i[path.out]
    for edge in path.edges():
        m = r.B[edge] * m
    return m


def phi_k(r: QuiverRep, ctx: ThetaContext, k: int) -> RatMat:
    """The block map W^{<=k} -> V_k.

    The block on the copy W_s^(m) (m <= min(s, k)) is B_p i_s for the unique
    path p descending s -> m then ascending m -> k; the empty path at k
    contributes i_k on W_k^(k).  Columns follow the W^{<=k} coordinate order.
    """
    if r.w != ctx.w:
        raise DimensionMismatchError("context built for a different w")
    if any(not m.is_zero() for m in r.j.values()):
        raise LambdaPreconditionError("phi_k requires j = 0")
    if not 1 <= k <= ctx.n - 1:
        raise InvalidRankError(f"vertex {k} out of range")
    vk = r.v[k - 1]
    blocks = []
    for l in range(1, ctx.n):
        for m in range(1, min(l, k) + 1):
            path = LeftRightPath(l, m, k)
            blocks.append(_path_matrix(r, path))
    if not blocks:
        return RatMat.zeros(vk, 0)
    out = blocks[0]
    for b in blocks[1:]:
        out = out.hstack(b)
    return out


def theta(r: QuiverRep, ctx: ThetaContext) -> Flag:
    """Flag with F_k = ker phi_k, for a stable Lagrangian point.

    The kernel does not change along gauge orbits, so the output is a
    well-defined function of the orbit; its composition is a(v, w) and it lies
    in the fiber of the canonical block-shift nilpotent of w.
    """
    if not in_Lambda(r):
        raise LambdaPreconditionError("point is not in the Lagrangian locus")
    if not is_stable(r):
        raise LambdaPreconditionError("point is not stable")
    d, n = ctx.d, ctx.n
    spaces = [zero_space(d)]
    for k in range(1, n):
        ker = canonicalize(kernel_basis(phi_k(r, ctx, k)), ctx.wleq_dim(k))
        spaces.append(embed(ker, ctx.wleq_coords(k), d))
    spaces.append(full_space(d))
    return Flag(spaces, n)


def theta_w1_special(r: QuiverRep) -> tuple[RatMat, Flag]:
    """Special form when W is concentrated at vertex 1.

    Returns x = j_1 i_1 and the flag F_l = ker(B_{l-1,l} ... B_{1,2} i_1);
    agrees with theta on Lagrangian points, where x = 0.
    """
    n = r.n
    if any(r.w[k - 1] != 0 for k in range(2, n)):
        raise IncompatibleError("W must be concentrated at vertex 1")
    d = r.w[0]
    x = r.j[1] * r.i[1]
    spaces = [zero_space(d)]
    m = r.i[1]
    for l in range(1, n):
        spaces.append(canonicalize(kernel_basis(m), d))
        if l < n - 1:
            m = r.B[(l, l + 1)] * m
    spaces.append(full_space(d))
    return x, Flag(spaces, n)


