"""A_{n-1} quiver representation points (B, i, j): moment map, nilpotency,
stability, the Lagrangian locus, dimension/sign formulas, Hecke quotients and
the point-level maximal stratum reduction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .cartan import DimVec, HighestWeight, as_dimvec, as_highest_weight, cartan_matrix
from .errors import (
    DimensionMismatchError,
    GeoCrystalError,
    IncompatibleError,
    InvalidRankError,
    LambdaPreconditionError,
    SampleExhaustedError,
)
from .linalg import (
    RatMat,
    Subspace,
    canonicalize,
    kernel_basis,
    zero_space,
)

Edge = tuple[int, int]  # (out(h), inc(h)) with |out - inc| = 1


@dataclass(frozen=True)
class QuiverShape:
    """Vertices 1..n-1; edges h_{k,l} for |k-l|=1; orientation = leftward."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidRankError(f"n must be >= 2, got {self.n}")

    @property
    def vertices(self) -> range:
        return range(1, self.n)

    def edges(self) -> list[Edge]:
        out = []
        for k in range(2, self.n):
            out.append((k, k - 1))
        for k in range(1, self.n - 1):
            out.append((k, k + 1))
        return out

    def omega(self) -> list[Edge]:
        """The fixed orientation: edges heading left."""
        return [(k, k - 1) for k in range(2, self.n)]

    @staticmethod
    def bar(h: Edge) -> Edge:
        return (h[1], h[0])

    @staticmethod
    def sign(h: Edge) -> int:
        """+1 on the orientation (leftward), -1 on its reversal."""
        return 1 if h[0] == h[1] + 1 else -1

    def edges_into(self, k: int) -> list[Edge]:
        return [h for h in self.edges() if h[1] == k]

    def edges_out_of(self, k: int) -> list[Edge]:
        return [h for h in self.edges() if h[0] == k]


class QuiverRep:
    """A point (B, i, j) on graded spaces (V, W) for the A_{n-1} quiver.

    All edge maps are materialized (zero by default): B[(k,l)] maps V_k to
    V_l, i[k] maps W_k to V_k, j[k] maps V_k to W_k.
    """

    __slots__ = ("shape", "v", "w", "B", "i", "j")

    def __init__(self, n: int, v, w, B=None, i=None, j=None):
        shape = QuiverShape(n)
        v = as_dimvec(v)
        w = as_highest_weight(w)
        if v.n != n or w.n != n:
            raise DimensionMismatchError("v or w rank does not match n")
        B = dict(B or {})
        i = dict(i or {})
        j = dict(j or {})
        full_B: dict[Edge, RatMat] = {}
        for h in shape.edges():
            m = B.pop(h, None)
            expected = (v[h[1] - 1], v[h[0] - 1])
            if m is None:
                m = RatMat.zeros(*expected)
            elif m.shape != expected:
                raise DimensionMismatchError(f"B{h} has shape {m.shape}, want {expected}")
            full_B[h] = m
        if B:
            raise DimensionMismatchError(f"unknown edges {sorted(B)}")
        full_i: dict[int, RatMat] = {}
        full_j: dict[int, RatMat] = {}
        for k in shape.vertices:
            mi = i.pop(k, None)
            if mi is None:
                mi = RatMat.zeros(v[k - 1], w[k - 1])
            elif mi.shape != (v[k - 1], w[k - 1]):
                raise DimensionMismatchError(f"i[{k}] has wrong shape")
            full_i[k] = mi
            mj = j.pop(k, None)
            if mj is None:
                mj = RatMat.zeros(w[k - 1], v[k - 1])
            elif mj.shape != (w[k - 1], v[k - 1]):
                raise DimensionMismatchError(f"j[{k}] has wrong shape")
            full_j[k] = mj
        if i or j:
            raise DimensionMismatchError("unknown framing vertices")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "B", full_B)
        object.__setattr__(self, "i", full_i)
        object.__setattr__(self, "j", full_j)

    def __setattr__(self, name, value):
        raise AttributeError("QuiverRep is immutable")

    @property
    def n(self) -> int:
        return self.shape.n

    def __repr__(self):
        return f"QuiverRep(n={self.n}, v={self.v.v}, w={self.w.w})"

    def to_json(self) -> dict:
        maps = {}
        for (a, b), m in sorted(self.B.items()):
            maps[f"B:{a}->{b}"] = m.to_json()
        for k, m in sorted(self.i.items()):
            maps[f"i:{k}"] = m.to_json()
        for k, m in sorted(self.j.items()):
            maps[f"j:{k}"] = m.to_json()
        return {
            "schema_version": "1",
            "n": self.n,
            "v": self.v.to_json(),
            "w": self.w.to_json(),
            "maps": maps,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuiverRep":
        n = int(obj["n"])
        B: dict[Edge, RatMat] = {}
        i: dict[int, RatMat] = {}
        j: dict[int, RatMat] = {}
        for key, payload in obj.get("maps", {}).items():
            m = RatMat.from_json(payload)
            if key.startswith("B:"):
                a, b = key[2:].split("->")
                B[(int(a), int(b))] = m
            elif key.startswith("i:"):
                i[int(key[2:])] = m
            elif key.startswith("j:"):
                j[int(key[2:])] = m
            else:
                raise IncompatibleError(f"unknown map key {key!r}")
        return cls(n, obj["v"], obj["w"], B=B, i=i, j=j)


class GradedSubspace:
    """One subspace S_k ⊆ V_k per vertex."""

    __slots__ = ("n", "spaces")

    def __init__(self, n: int, spaces: dict[int, Subspace]):
        if set(spaces) != set(range(1, n)):
            raise DimensionMismatchError("need one subspace per vertex")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "spaces", dict(spaces))

    def __setattr__(self, name, value):
        raise AttributeError("GradedSubspace is immutable")

    def __getitem__(self, k: int) -> Subspace:
        return self.spaces[k]

    def dims(self) -> tuple[int, ...]:
        return tuple(self.spaces[k].dim for k in range(1, self.n))

    def __eq__(self, other):
        return (
            isinstance(other, GradedSubspace)
            and self.n == other.n
            and self.spaces == other.spaces
        )


def moment_map(r: QuiverRep) -> list[RatMat]:
    """mu_k = sum over edges into k of sign(h) B_h B_hbar, plus i_k j_k."""
    out = []
    for k in r.shape.vertices:
        vk = r.v[k - 1]
        acc = r.i[k] * r.j[k]
        for h in r.shape.edges_into(k):
            term = r.B[h] * r.B[r.shape.bar(h)]
            acc = acc + (term if r.shape.sign(h) == 1 else -term)
        if acc.shape != (vk, vk):
            raise DimensionMismatchError("moment map block has wrong shape")
        out.append(acc)
    return out


def _total_endomorphism(r: QuiverRep) -> RatMat:
    offsets = [0]
    for k in r.shape.vertices:
        offsets.append(offsets[-1] + r.v[k - 1])
    D = offsets[-1]
    rows = [[Fraction(0)] * D for _ in range(D)]
    for (a, b), m in r.B.items():
        ra, rb = offsets[a - 1], offsets[b - 1]
        for p in range(m.rows):
            for q in range(m.cols):
                rows[rb + p][ra + q] = m.entries[p][q]
    return RatMat(rows, cols=D)


def is_nilpotent_B(r: QuiverRep) -> bool:
    """All long edge-path compositions vanish; tested by powering the total
    endomorphism on the direct sum of the V_k (bound forced by dimension)."""
    D = sum(r.v)
    if D == 0:
        return True
    T = _total_endomorphism(r)
    power = T
    e = 1
    while e < D:
        power = power * power
        e *= 2
    return power.is_zero()


def stable_closure(r: QuiverRep) -> GradedSubspace:
    """Smallest B-stable graded subspace containing the image of i."""
    spans: dict[int, list] = {
        k: r.i[k].columns() for k in r.shape.vertices
    }
    spaces = {
        k: canonicalize(spans[k], r.v[k - 1]) for k in r.shape.vertices
    }
    changed = True
    while changed:
        changed = False
        for h in r.shape.edges():
            a, b = h
            image = [r.B[h].apply(c) for c in spaces[a].basis.columns()]
            grown = canonicalize(
                spaces[b].basis.columns() + image, r.v[b - 1]
            )
            if grown.dim > spaces[b].dim:
                spaces[b] = grown
                changed = True
    return GradedSubspace(r.n, spaces)


def is_stable(r: QuiverRep) -> bool:
    return stable_closure(r).dims() == r.v.v


def in_Lambda(r: QuiverRep) -> bool:
    """j = 0, moment map = 0 and B nilpotent."""
    if any(not m.is_zero() for m in r.j.values()):
        return False
    if any(not m.is_zero() for m in moment_map(r)):
        return False
    return is_nilpotent_B(r)


def epsilon_k_point(r: QuiverRep, k: int) -> int:
    """Dimension of the joint kernel of all B_h with out(h) = k."""
    if not 1 <= k <= r.n - 1:
        raise InvalidRankError(f"vertex {k} out of range")
    outgoing = r.shape.edges_out_of(k)
    if not outgoing:
        return r.v[k - 1]
    stacked = r.B[outgoing[0]]
    for h in outgoing[1:]:
        stacked = stacked.vstack(r.B[h])
    return len(kernel_basis(stacked))


def joint_outgoing_kernel(r: QuiverRep, k: int) -> Subspace:
    outgoing = r.shape.edges_out_of(k)
    if not outgoing:
        return canonicalize(RatMat.identity(r.v[k - 1]), r.v[k - 1])
    stacked = r.B[outgoing[0]]
    for h in outgoing[1:]:
        stacked = stacked.vstack(r.B[h])
    return canonicalize(kernel_basis(stacked), r.v[k - 1])


def dim_and_sign(v, w, k: int) -> tuple[int, int]:
    """dim M(v,w) = v.(2w - Cv) and r_k(v,w) = -e^k.(w - Cv) - 1."""
    v, w = as_dimvec(v), as_highest_weight(w)
    if v.n != w.n:
        raise DimensionMismatchError("rank mismatch")
    if not 1 <= k <= v.n - 1:
        raise InvalidRankError(f"vertex {k} out of range")
    C = cartan_matrix(v.n)
    Cv = [sum(row[j] * v[j] for j in range(len(v))) for row in C]
    dimM = sum(v[idx] * (2 * w[idx] - Cv[idx]) for idx in range(len(v)))
    r_k = -(w[k - 1] - Cv[k - 1]) - 1
    return dimM, r_k


def quotient_by_invariant_subspace(r: QuiverRep, S: GradedSubspace) -> QuiverRep:
    """Induced point on V/S for a B-invariant S killed by j."""
    if S.n != r.n:
        raise DimensionMismatchError("graded subspace rank mismatch")
    for k in r.shape.vertices:
        if S[k].ambient_dim != r.v[k - 1]:
            raise DimensionMismatchError(f"S_{k} lives in wrong ambient")
        for col in S[k].basis.columns():
            if any(a != 0 for a in r.j[k].apply(col)):
                raise IncompatibleError(f"j_{k} does not kill S_{k}")
    for h in r.shape.edges():
        a, b = h
        for col in S[a].basis.columns():
            if not S[b].contains_vector(r.B[h].apply(col)):
                raise IncompatibleError(f"S is not B-invariant along {h}")
    # Per-vertex: complete the S-basis by standard vectors, then the quotient
    # map is "last coordinates" of the inverse change of basis.
    proj: dict[int, RatMat] = {}
    emb: dict[int, RatMat] = {}
    for k in r.shape.vertices:
        vk = r.v[k - 1]
        cols = S[k].basis.columns()
        chosen: list = []
        current = canonicalize(cols, vk)
        for t in range(vk):
            if current.dim == vk:
                break
            e_t = tuple(Fraction(int(s == t)) for s in range(vk))
            if not current.contains_vector(e_t):
                chosen.append(e_t)
                current = canonicalize(cols + chosen, vk)
        comp = RatMat.from_columns(chosen, vk)
        full = S[k].basis.hstack(comp) if S[k].dim else comp
        inv = full.inverse() if vk else RatMat.zeros(0, 0)
        proj[k] = RatMat(inv.entries[S[k].dim :], cols=vk) if vk else RatMat.zeros(0, 0)
        emb[k] = comp
    newB = {
        (a, b): proj[b] * r.B[(a, b)] * emb[a] for (a, b) in r.shape.edges()
    }
    newi = {k: proj[k] * r.i[k] for k in r.shape.vertices}
    newj = {k: r.j[k] * emb[k] for k in r.shape.vertices}
    newv = tuple(r.v[k - 1] - S[k].dim for k in r.shape.vertices)
    return QuiverRep(r.n, newv, r.w, B=newB, i=newi, j=newj)


def kashiwara_reduce(r: QuiverRep, k: int) -> tuple[QuiverRep, int]:
    """Quotient by the joint outgoing kernel at vertex k (the unique maximal
    stratum reduction); output has epsilon_k = 0 and v' = v - c e^k."""
    if not in_Lambda(r):
        raise LambdaPreconditionError("point is not in the Lagrangian locus")
    if not is_stable(r):
        raise LambdaPreconditionError("point is not stable")
    kernel = joint_outgoing_kernel(r, k)
    c = kernel.dim
    if c == 0:
        return r, 0
    spaces = {
        l: (kernel if l == k else zero_space(r.v[l - 1]))
        for l in r.shape.vertices
    }
    return quotient_by_invariant_subspace(r, GradedSubspace(r.n, spaces)), c


def apply_gauge(r: QuiverRep, g: dict[int, RatMat]) -> QuiverRep:
    """g(B, i, j) = (g B g^{-1}, g i, j g^{-1}) for vertex-wise invertible g."""
    inv = {k: g[k].inverse() for k in r.shape.vertices}
    newB = {
        (a, b): g[b] * r.B[(a, b)] * inv[a] for (a, b) in r.shape.edges()
    }
    newi = {k: g[k] * r.i[k] for k in r.shape.vertices}
    newj = {k: r.j[k] * inv[k] for k in r.shape.vertices}
    return QuiverRep(r.n, r.v, r.w, B=newB, i=newi, j=newj)


def random_gauge(rng: random.Random, v, lo: int = -2, hi: int = 2) -> dict[int, RatMat]:
    """Deterministic per-rng invertible vertex-wise matrices (L*U, unit diag)."""
    v = as_dimvec(v)
    out = {}
    for k in range(1, v.n):
        m = v[k - 1]
        lower = [[Fraction(0)] * m for _ in range(m)]
        upper = [[Fraction(0)] * m for _ in range(m)]
        for a in range(m):
            lower[a][a] = Fraction(1)
            upper[a][a] = Fraction(1)
            for b in range(a):
                lower[a][b] = Fraction(rng.randint(lo, hi))
                upper[b][a] = Fraction(rng.randint(lo, hi))
        out[k] = RatMat(lower, cols=m) * RatMat(upper, cols=m)
    return out


def _solve_right_maps(
    r_left: dict[Edge, RatMat], n: int, v, rng: random.Random, lo: int, hi: int
) -> dict[Edge, RatMat] | None:
    """Solve mu = 0 (with j = 0) for the rightward maps, given the leftward
    ones; mu is linear in the rightward block.  Returns a random kernel point."""
    shape = QuiverShape(n)
    right_edges = [(k, k + 1) for k in range(1, n - 1)]
    slots = []
    for h in right_edges:
        rows, cols = v[h[1] - 1], v[h[0] - 1]
        slots.extend((h, p, q) for p in range(rows) for q in range(cols))
    if not slots:
        return {}

    def mu_of(right: dict[Edge, RatMat]) -> list[Fraction]:
        flat = []
        for k in shape.vertices:
            vk = v[k - 1]
            acc = RatMat.zeros(vk, vk)
            for h in shape.edges_into(k):
                B_h = r_left[h] if h in r_left else right[h]
                B_bar = (
                    r_left[shape.bar(h)]
                    if shape.bar(h) in r_left
                    else right[shape.bar(h)]
                )
                term = B_h * B_bar
                acc = acc + (term if shape.sign(h) == 1 else -term)
            flat.extend(a for row in acc.entries for a in row)
        return flat

    zero_right = {
        h: RatMat.zeros(v[h[1] - 1], v[h[0] - 1]) for h in right_edges
    }
    columns = []
    for h, p, q in slots:
        unit = dict(zero_right)
        rows = [[Fraction(0)] * v[h[0] - 1] for _ in range(v[h[1] - 1])]
        rows[p][q] = Fraction(1)
        unit[h] = RatMat(rows, cols=v[h[0] - 1])
        columns.append(mu_of(unit))
    system = RatMat.from_columns(columns, len(columns[0]))
    kernel = kernel_basis(system)
    coeffs = [Fraction(rng.randint(lo, hi)) for _ in kernel]
    solution = [Fraction(0)] * len(slots)
    for c, vec in zip(coeffs, kernel):
        if c:
            solution = [s + c * x for s, x in zip(solution, vec)]
    out = {}
    idx = 0
    for h in right_edges:
        rows, cols = v[h[1] - 1], v[h[0] - 1]
        block = [
            [solution[idx + p * cols + q] for q in range(cols)] for p in range(rows)
        ]
        idx += rows * cols
        out[h] = RatMat(block, cols=cols)
    return out


def _extend_at_vertex(
    r: QuiverRep, k: int, s: int, rng: random.Random, lo: int, hi: int
) -> QuiverRep | None:
    """One random attempt to enlarge V_k by an s-dimensional sink summand.

    The new summand S sits in the joint kernel of the outgoing maps (so the
    outgoing maps kill it); the incoming maps acquire new S-components N_h
    subject to the linear moment-map condition sum eps(h) N_h B_{bar h} = 0,
    and i_k acquires a free S-component.  Returns None when the random choice
    fails to make S reachable (stability would break).
    """
    n = r.n
    shape = r.shape
    incoming = shape.edges_into(k)
    old_vk = r.v[k - 1]
    # Unknowns: one s x v_out block per incoming edge; condition rows are the
    # S-rows of mu_k against the old V_k.
    slots = []
    for h in incoming:
        cols = r.v[h[0] - 1]
        slots.extend((h, p, q) for p in range(s) for q in range(cols))
    blocks: dict[Edge, RatMat] = {}
    if slots:
        columns = []
        for h, p, q in slots:
            col = [Fraction(0)] * (s * old_vk)
            bar = r.B[shape.bar(h)]  # old map V_k -> V_out(h)
            sign = shape.sign(h)
            for t in range(old_vk):
                col[p * old_vk + t] = Fraction(sign) * bar.entries[q][t]
            columns.append(tuple(col))
        system = RatMat.from_columns(columns, s * old_vk)
        kernel = kernel_basis(system)
        coeffs = [Fraction(rng.randint(lo, hi)) for _ in kernel]
        solution = [Fraction(0)] * len(slots)
        for cf, vec in zip(coeffs, kernel):
            if cf:
                solution = [a + cf * b for a, b in zip(solution, vec)]
        idx = 0
        for h in incoming:
            cols = r.v[h[0] - 1]
            block = [
                [solution[idx + p * cols + q] for q in range(cols)]
                for p in range(s)
            ]
            idx += s * cols
            blocks[h] = RatMat(block, cols=cols)
    else:
        blocks = {h: RatMat.zeros(s, r.v[h[0] - 1]) for h in incoming}
    M = RatMat(
        [[Fraction(rng.randint(lo, hi)) for _ in range(r.w[k - 1])] for _ in range(s)],
        cols=r.w[k - 1],
    )
    reach = M
    for h in incoming:
        reach = reach.hstack(blocks[h])
    from .linalg import rref as _rref

    if len(_rref(reach)[1]) < s:
        return None
    newv = tuple(
        r.v[t] + (s if t == k - 1 else 0) for t in range(n - 1)
    )
    newB: dict[Edge, RatMat] = {}
    for h in shape.edges():
        m = r.B[h]
        if h[0] == k:
            newB[h] = m.hstack(RatMat.zeros(m.rows, s))
        elif h[1] == k:
            newB[h] = m.vstack(blocks[h])
        else:
            newB[h] = m
    newi = {t: r.i[t] for t in shape.vertices}
    newi[k] = r.i[k].vstack(M)
    out = QuiverRep(n, newv, r.w, B=newB, i=newi)
    if not (in_Lambda(out) and is_stable(out)):
        return None
    return out


@lru_cache(maxsize=64)
def _cached_crystal(w_tuple: tuple[int, ...]):
    from .crystal import highest_weight_crystal

    return highest_weight_crystal(w_tuple)


def _crystal_guided_sample(
    v: DimVec, w: HighestWeight, seed: int, lo: int, hi: int
) -> QuiverRep | None:
    """Constructive sampler walking a lowering path of the crystal model.

    Starting from the zero point, each lowering step at vertex k is realized
    as kashiwara_reduce followed by an extension one dimension bigger; the
    intermediate strata are non-empty because they are crystal vertices.
    Needed because rejection sampling essentially never lands on the stable
    irreducible component in deep strata.
    """
    from .cartan import a_of_vw
    from .crystal import e_op

    try:
        a = a_of_vw(v, w)
    except GeoCrystalError:
        return None
    graph = _cached_crystal(w.w)
    target = None
    for word in graph.sorted_words():
        if graph.vertices[word].a == a:
            target = word
            break
    if target is None:
        return None
    path = []
    word = target
    while word != graph.highest:
        for k in range(1, w.n):
            up = e_op(word, k)
            if up is not None:
                path.append(k)
                word = up
                break
        else:
            return None
    path.reverse()
    rng = random.Random(seed)
    for _ in range(8):
        point = QuiverRep(w.n, (0,) * (w.n - 1), w)
        ok = True
        for k in path:
            reduced, c = kashiwara_reduce(point, k)
            extended = None
            for _ in range(12):
                extended = _extend_at_vertex(reduced, k, c + 1, rng, lo, hi)
                if extended is not None:
                    break
            if extended is None:
                ok = False
                break
            point = extended
        if ok and point.v == v:
            return point
    return None


def sample_lambda_point(
    v, w, seed: int, max_tries: int = 32, lo: int = -2, hi: int = 2
) -> QuiverRep:
    """Deterministic sampler for stable Lagrangian points.

    Draws the leftward maps with small random integers (zeroing each edge by
    a coin flip, since stability sometimes forces vanishing leftward maps),
    solves the moment map equations exactly for the rightward maps (falling
    back to zero rightward maps on half the attempts), then rejection-samples
    on nilpotency and stability.  Deep strata where rejection sampling cannot
    find the stable component fall through to the crystal-guided constructive
    walk.  Raises SampleExhaustedError when the locus appears empty.
    """
    v, w = as_dimvec(v), as_highest_weight(w)
    if v.n != w.n:
        raise DimensionMismatchError("rank mismatch")
    n = v.n
    rng = random.Random(seed)
    left_edges = [(k, k - 1) for k in range(2, n)]

    def draw_left(rows: int, cols: int) -> RatMat:
        # zero / rank-one / dense mix: full-rank draws force a trivial
        # annihilator for the rightward solve, so low-rank variety matters
        kind = rng.randrange(3)
        if kind == 0 or rows == 0 or cols == 0:
            return RatMat.zeros(rows, cols)
        if kind == 1:
            col = [Fraction(rng.randint(lo, hi)) for _ in range(rows)]
            row = [Fraction(rng.randint(lo, hi)) for _ in range(cols)]
            return RatMat([[a * b for b in row] for a in col], cols=cols)
        return RatMat(
            [[Fraction(rng.randint(lo, hi)) for _ in range(cols)] for _ in range(rows)],
            cols=cols,
        )

    for attempt in range(max_tries):
        left = {
            h: draw_left(v[h[1] - 1], v[h[0] - 1]) for h in left_edges
        }
        if attempt % 4 == 3:
            right = {
                (k, k + 1): RatMat.zeros(v[k], v[k - 1]) for k in range(1, n - 1)
            }
        else:
            right = _solve_right_maps(left, n, v, rng, lo, hi)
        i = {}
        for k in range(1, n):
            i[k] = RatMat(
                [
                    [Fraction(rng.randint(lo, hi)) for _ in range(w[k - 1])]
                    for _ in range(v[k - 1])
                ],
                cols=w[k - 1],
            )
        B = dict(left)
        B.update(right)
        point = QuiverRep(n, v, w, B=B, i=i)
        if in_Lambda(point) and is_stable(point):
            return point
    guided = _crystal_guided_sample(v, w, seed, lo, hi)
    if guided is not None:
        return guided
    raise SampleExhaustedError(
        f"no stable Lambda point for v={v.v}, w={w.w} after {max_tries} tries"
    )
