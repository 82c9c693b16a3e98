"""Combinatorial realization of the highest weight crystal via tensor words.

Fixed bracketing convention (frozen by golden tests): for the operator at
vertex k, letter k contributes "+" and letter k+1 contributes "-", read in
word order; a "+" immediately followed by an unmatched "-" cancels.  The
raising operator flips the letter of the rightmost surviving "-", the
lowering operator flips the letter of the leftmost surviving "+".  Seed words
are column readings (right-to-left, top-to-bottom) of the highest tableau,
and the constructor re-checks that the seed is killed by every raising
operator instead of trusting the convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import (
    Composition,
    HighestWeight,
    Weight,
    as_highest_weight,
    hw_to_partition,
    pair_with_coroot,
)
from .errors import (
    IncompatibleError,
    InternalConsistencyError,
    InvalidRankError,
)

Word = tuple[int, ...]


def _signature(word: Word, k: int) -> tuple[list[int], list[int]]:
    """Positions of surviving minuses and pluses for the k-bracketing."""
    plus_stack: list[int] = []
    minus_list: list[int] = []
    for pos, letter in enumerate(word):
        if letter == k:
            plus_stack.append(pos)
        elif letter == k + 1:
            if plus_stack:
                plus_stack.pop()
            else:
                minus_list.append(pos)
    return minus_list, plus_stack


def eps_k(word: Word, k: int) -> int:
    minus, _ = _signature(word, k)
    return len(minus)


def phi_k_word(word: Word, k: int) -> int:
    _, plus = _signature(word, k)
    return len(plus)


def e_op(word: Word, k: int) -> Word | None:
    """Raising operator: rightmost surviving k+1 becomes k; None if eps = 0."""
    minus, _ = _signature(word, k)
    if not minus:
        return None
    pos = minus[-1]
    return word[:pos] + (k,) + word[pos + 1 :]


def f_op(word: Word, k: int) -> Word | None:
    """Lowering operator: leftmost surviving k becomes k+1; None if phi = 0."""
    _, plus = _signature(word, k)
    if not plus:
        return None
    pos = plus[0]
    return word[:pos] + (k + 1,) + word[pos + 1 :]


def word_content(word: Word, n: int) -> Composition:
    counts = [0] * n
    for letter in word:
        if not 1 <= letter <= n:
            raise IncompatibleError(f"letter {letter} outside 1..{n}")
        counts[letter - 1] += 1
    return Composition(tuple(counts))


def word_weight(word: Word, n: int) -> Weight:
    return Weight.from_eps(word_content(word, n).parts)


@dataclass(frozen=True)
class TensorWordOps:
    eps: int
    phi: int
    e_result: Word | None
    f_result: Word | None


def tensor_word_ops(word, k: int) -> TensorWordOps:
    """All four bracketing statistics/operators for one word and vertex."""
    word = tuple(int(a) for a in word)
    return TensorWordOps(
        eps_k(word, k), phi_k_word(word, k), e_op(word, k), f_op(word, k)
    )


@dataclass(frozen=True)
class CrystalVertex:
    word: Word
    wt: Weight
    a: Composition
    eps: tuple[int, ...]
    phi: tuple[int, ...]


class CrystalGraph:
    """Vertices with statistics plus the partial raising/lowering edge maps."""

    __slots__ = ("n", "w", "vertices", "f_edges", "e_edges", "highest")

    def __init__(
        self,
        n: int,
        w: HighestWeight,
        vertices: dict[Word, CrystalVertex],
        f_edges: dict[tuple[Word, int], Word],
        highest: Word,
    ):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "f_edges", dict(f_edges))
        object.__setattr__(
            self,
            "e_edges",
            {(dst, k): src for (src, k), dst in f_edges.items()},
        )
        object.__setattr__(self, "highest", highest)

    def __setattr__(self, name, value):
        raise AttributeError("CrystalGraph is immutable")

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, word):
        return tuple(word) in self.vertices

    def sorted_words(self) -> list[Word]:
        return sorted(self.vertices)

    def f(self, word: Word, k: int) -> Word | None:
        return self.f_edges.get((tuple(word), k))

    def e(self, word: Word, k: int) -> Word | None:
        return self.e_edges.get((tuple(word), k))

    def stats(self, word) -> CrystalVertex:
        word = tuple(word)
        if word not in self.vertices:
            raise IncompatibleError(f"word {word} not a vertex")
        return self.vertices[word]


def _vertex_of(word: Word, n: int) -> CrystalVertex:
    a = word_content(word, n)
    wt = Weight.from_eps(a.parts)
    eps = tuple(eps_k(word, k) for k in range(1, n))
    phi = tuple(phi_k_word(word, k) for k in range(1, n))
    for k in range(1, n):
        if phi[k - 1] - eps[k - 1] != pair_with_coroot(wt, k):
            raise InternalConsistencyError("phi - eps != <h_k, wt>")
    return CrystalVertex(word, wt, a, eps, phi)


def _close_under_f(seed: Word, n: int, w: HighestWeight) -> CrystalGraph:
    vertices = {seed: _vertex_of(seed, n)}
    f_edges: dict[tuple[Word, int], Word] = {}
    frontier = [seed]
    while frontier:
        nxt = []
        for word in frontier:
            for k in range(1, n):
                image = f_op(word, k)
                if image is None:
                    continue
                f_edges[(word, k)] = image
                if image not in vertices:
                    vertices[image] = _vertex_of(image, n)
                    nxt.append(image)
        frontier = nxt
    return CrystalGraph(n, w, vertices, f_edges, seed)


def yamanouchi_seed(w) -> Word:
    """Column reading (right-to-left, top-to-bottom) of the highest tableau."""
    w = as_highest_weight(w)
    lam = hw_to_partition(w)
    conj = lam.conjugate().parts
    word: list[int] = []
    for col in range(len(conj), 0, -1):
        word.extend(range(1, conj[col - 1] + 1))
    return tuple(word)


def standard_crystal(n: int) -> CrystalGraph:
    """The letter crystal: vertices 1..n with f_k(k) = k+1."""
    if n < 2:
        raise InvalidRankError(f"n must be >= 2, got {n}")
    return highest_weight_crystal(HighestWeight((1,) + (0,) * (n - 2)))


def highest_weight_crystal(w) -> CrystalGraph:
    """Closure of the Yamanouchi seed of shape lambda(w) under all f_k."""
    w = as_highest_weight(w)
    n = w.n
    seed = yamanouchi_seed(w)
    for k in range(1, n):
        if e_op(seed, k) is not None:
            raise InternalConsistencyError(
                f"seed {seed} is not killed by the raising operator at {k}"
            )
    seed_wt = word_weight(seed, n)
    if seed_wt.omega != w.w:
        raise InternalConsistencyError(
            f"seed weight {seed_wt.omega} != {w.w}"
        )
    return _close_under_f(seed, n, w)


def vertex_stats(
    g: CrystalGraph, word
) -> tuple[Weight, Composition, tuple[int, ...], tuple[int, ...]]:
    """(wt, composition, eps list, phi list) for a vertex of the graph."""
    vx = g.stats(word)
    return vx.wt, vx.a, vx.eps, vx.phi


def weight_multiplicity(g: CrystalGraph, a) -> int:
    """Number of vertices whose composition equals a."""
    a = tuple(a)
    if any(c < 0 for c in a):
        return 0
    return sum(1 for vx in g.vertices.values() if vx.a.parts == a)


@dataclass(frozen=True)
class StembridgeReport:
    ok: bool
    vertices: int
    checks: int
    violation: str | None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "vertices": self.vertices,
            "checks": self.checks,
            "violation": self.violation,
        }


def _chain_len(g: CrystalGraph, word: Word, k: int, direction: str) -> int:
    step = g.e if direction == "e" else g.f
    count = 0
    current = word
    while True:
        nxt = step(current, k)
        if nxt is None:
            return count
        current = nxt
        count += 1
        if count > len(g):
            raise InternalConsistencyError("monochromatic cycle detected")


def stembridge_verify(g: CrystalGraph) -> StembridgeReport:
    """Check the simply-laced local axioms on the stored graph structure.

    Verified per vertex: operators mutually inverse, seminormal statistics
    (eps/phi equal the monochromatic chain lengths), weight steps, the
    eps/phi difference bounds across an edge of a different color, the
    commuting square for non-boosting pairs and the hexagon relation for
    doubly-boosting adjacent pairs.  Returns the first violation found.
    """
    n = g.n
    checks = 0

    def fail(msg: str) -> StembridgeReport:
        return StembridgeReport(False, len(g), checks, msg)

    cartan = {
        (i, j): (2 if i == j else (-1 if abs(i - j) == 1 else 0))
        for i in range(1, n)
        for j in range(1, n)
    }
    for word, vx in g.vertices.items():
        for k in range(1, n):
            up = g.e(word, k)
            down = g.f(word, k)
            checks += 1
            if up is not None and g.f(up, k) != word:
                return fail(f"f_{k} e_{k} != id at {word}")
            if down is not None and g.e(down, k) != word:
                return fail(f"e_{k} f_{k} != id at {word}")
            if _chain_len(g, word, k, "e") != vx.eps[k - 1]:
                return fail(f"eps_{k} not seminormal at {word}")
            if _chain_len(g, word, k, "f") != vx.phi[k - 1]:
                return fail(f"phi_{k} not seminormal at {word}")
            if (up is None) != (vx.eps[k - 1] == 0):
                return fail(f"e_{k} definedness disagrees with eps at {word}")
            if (down is None) != (vx.phi[k - 1] == 0):
                return fail(f"f_{k} definedness disagrees with phi at {word}")
            if vx.phi[k - 1] - vx.eps[k - 1] != pair_with_coroot(vx.wt, k):
                return fail(f"phi - eps != <h_{k}, wt> at {word}")
            if down is not None:
                wt_down = g.vertices[down].wt
                delta = tuple(
                    vx.wt.omega[t] - wt_down.omega[t] for t in range(n - 1)
                )
                alpha_k = tuple(cartan[(t + 1, k)] for t in range(n - 1))
                if delta != alpha_k:
                    return fail(f"wt(f_{k} x) != wt(x) - alpha_{k} at {word}")
    for word, vx in g.vertices.items():
        for i in range(1, n):
            up_i = g.e(word, i)
            if up_i is None:
                continue
            for j in range(1, n):
                if j == i:
                    continue
                checks += 1
                d_eps = g.vertices[up_i].eps[j - 1] - vx.eps[j - 1]
                d_phi = g.vertices[up_i].phi[j - 1] - vx.phi[j - 1]
                a_ij = cartan[(i, j)]
                if d_eps not in (0, -a_ij):
                    return fail(
                        f"eps_{j} changed by {d_eps} under e_{i} at {word}"
                    )
                if d_phi != d_eps + a_ij:
                    return fail(
                        f"phi_{j} step {d_phi} inconsistent under e_{i} at {word}"
                    )
    for word, vx in g.vertices.items():
        for i in range(1, n):
            up_i = g.e(word, i)
            if up_i is None:
                continue
            for j in range(i + 1, n):
                up_j = g.e(word, j)
                if up_j is None:
                    continue
                checks += 1
                boost_j = g.vertices[up_i].eps[j - 1] - vx.eps[j - 1]
                boost_i = g.vertices[up_j].eps[i - 1] - vx.eps[i - 1]
                if boost_j == 0 or boost_i == 0:
                    a = g.e(up_i, j)
                    b = g.e(up_j, i)
                    if a is None or b is None or a != b:
                        return fail(f"square e_{i}/e_{j} fails at {word}")
                else:
                    a = up_i
                    for step in (j, j, i):
                        a = g.e(a, step) if a is not None else None
                    b = up_j
                    for step in (i, i, j):
                        b = g.e(b, step) if b is not None else None
                    if a is None or b is None or a != b:
                        return fail(f"hexagon e_{i}/e_{j} fails at {word}")
    return StembridgeReport(True, len(g), checks, None)


@dataclass(frozen=True)
class StrataReport:
    ok: bool
    vertex_count: int
    stratum_sizes: dict
    violation: str | None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "vertex_count": self.vertex_count,
            "stratum_sizes": {str(c): s for c, s in sorted(self.stratum_sizes.items())},
            "violation": self.violation,
        }


def strata_maps(g: CrystalGraph, k: int) -> StrataReport:
    """Verify that both operators factor through the eps_k = 0 stratum.

    For eps_k(X) = c: e_k^c lands in the 0-stratum; the composites
    f_k^{c-1} e_k^c and f_k^{c+1} e_k^c reproduce the direct operators;
    e_k vanishes exactly on the 0-stratum; f_k raises eps_k by one.
    """
    if not 1 <= k <= g.n - 1:
        raise InvalidRankError(f"vertex {k} out of range")
    sizes: dict[int, int] = {}

    def compose(word: Word | None, op, times: int) -> Word | None:
        for _ in range(times):
            if word is None:
                return None
            word = op(word, k)
        return word

    for word, vx in g.vertices.items():
        c = vx.eps[k - 1]
        sizes[c] = sizes.get(c, 0) + 1
        reduced = compose(word, g.e, c)
        if reduced is None or g.vertices[reduced].eps[k - 1] != 0:
            return StrataReport(
                False, len(g), sizes, f"e_{k}^{c} does not reach the 0-stratum at {word}"
            )
        if (g.e(word, k) is None) != (c == 0):
            return StrataReport(
                False, len(g), sizes, f"e_{k} vanishing does not match c = 0 at {word}"
            )
        if c > 0:
            composite_e = compose(reduced, g.f, c - 1)
            if composite_e != g.e(word, k):
                return StrataReport(
                    False, len(g), sizes, f"f^{c - 1} e^{c} != e_{k} at {word}"
                )
        composite_f = compose(reduced, g.f, c + 1)
        if composite_f != g.f(word, k):
            return StrataReport(
                False, len(g), sizes, f"f^{c + 1} e^{c} != f_{k} at {word}"
            )
        down = g.f(word, k)
        if down is not None and g.vertices[down].eps[k - 1] != c + 1:
            return StrataReport(
                False, len(g), sizes, f"eps_{k}(f_{k} X) != eps_{k}(X) + 1 at {word}"
            )
    return StrataReport(True, len(g), sizes, None)


def _word_id(word: Word) -> str:
    return "w" + "".join(str(a) for a in word)


def crystal_to_dot(g: CrystalGraph) -> str:
    """Deterministic DOT: nodes labeled by composition, edges labeled by k."""
    lines = [
        "// schema_version 1",
        "digraph crystal {",
        "  rankdir=TB;",
    ]
    for word in g.sorted_words():
        a = g.vertices[word].a.parts
        label = "(" + ",".join(str(c) for c in a) + ")"
        lines.append(f'  {_word_id(word)} [label="{label}"];')
    edges = sorted(g.f_edges.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    for (src, k), dst in edges:
        lines.append(f'  {_word_id(src)} -> {_word_id(dst)} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def crystal_to_json(g: CrystalGraph) -> dict:
    """Deterministic JSON payload with vertices, edges and summary stats."""
    vertices = []
    for word in g.sorted_words():
        vx = g.vertices[word]
        vertices.append(
            {
                "word": "".join(str(a) for a in word),
                "a": vx.a.to_json(),
                "wt": vx.wt.to_json(),
                "eps": list(vx.eps),
                "phi": list(vx.phi),
            }
        )
    edges = [
        {"from": "".join(str(a) for a in src), "k": k, "to": "".join(str(a) for a in dst)}
        for (src, k), dst in sorted(g.f_edges.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    ]
    multiplicities: dict[tuple[int, ...], int] = {}
    for vx in g.vertices.values():
        multiplicities[vx.a.parts] = multiplicities.get(vx.a.parts, 0) + 1
    return {
        "schema_version": "1",
        "n": g.n,
        "w": g.w.to_json(),
        "highest": "".join(str(a) for a in g.highest),
        "vertex_count": len(g),
        "vertices": vertices,
        "edges": edges,
        "weight_multiplicities": [
            {"a": list(a), "count": c} for a, c in sorted(multiplicities.items())
        ],
    }
