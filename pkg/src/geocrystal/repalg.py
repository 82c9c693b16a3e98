"""Explicit tensor representation of sl_n on (Q^n)^{tensor d}, its
decomposition into irreducibles, the two quotient dimensions, Kostka and RSK
combinatorics, and the closing rank-3 separation example.

Multiplicities are certified exact: singular-vector ranks are computed modulo
a large prime, then the checksum sum(mult * dim) = n^d proves there was no
rank drop (mod-p kernels can only be too big); on checksum failure the ranks
are recomputed with exact rational elimination.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
from scipy import sparse

from .cartan import (
    HighestWeight,
    Partition,
    as_composition,
    as_highest_weight,
    as_partition,
    a_of_vw,
    cartan_matrix,
    hw_to_partition,
    is_partition_of,
    partition_to_hw,
    reduce_mod_full_columns,
)
from .errors import (
    BudgetExceededError,
    GeoCrystalError,
    IncompatibleError,
    InvalidRankError,
    NotInImageError,
    SizeMismatchError,
)
from .linalg import RatMat, kernel_basis

DEFAULT_BUDGET = 100_000
_PRIME = 2_147_483_647  # Mersenne prime 2^31 - 1; products fit in int64


def size_budget(budget: int | None = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("GEOCRYSTAL_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(n: int, d: int, budget: int | None) -> None:
    if n < 2:
        raise InvalidRankError(f"n must be >= 2, got {n}")
    if d < 0:
        raise IncompatibleError("d must be >= 0")
    if n**d > size_budget(budget):
        raise BudgetExceededError(
            f"n^d = {n**d} exceeds the size budget {size_budget(budget)}"
        )


@dataclass(frozen=True)
class TensorAction:
    """Chevalley generators acting on the lex-ordered word basis of (Q^n)^d."""

    n: int
    d: int
    dim: int
    e: dict[int, sparse.csr_matrix]
    f: dict[int, sparse.csr_matrix]
    h: dict[int, sparse.csr_matrix]


def _word_index(word: tuple[int, ...], n: int) -> int:
    idx = 0
    for letter in word:
        idx = idx * n + (letter - 1)
    return idx


def tensor_action(n: int, d: int, budget: int | None = None) -> TensorAction:
    """Leibniz-rule action of e_k, f_k, h_k on pure tensors, exact integers."""
    _check_budget(n, d, budget)
    dim = n**d
    e: dict[int, sparse.csr_matrix] = {}
    f: dict[int, sparse.csr_matrix] = {}
    h: dict[int, sparse.csr_matrix] = {}
    words = list(product(range(1, n + 1), repeat=d))
    for k in range(1, n):
        e_rows, e_cols, e_vals = [], [], []
        f_rows, f_cols, f_vals = [], [], []
        h_vals = np.zeros(dim, dtype=np.int64)
        for word in words:
            col = _word_index(word, n)
            weight = 0
            for pos, letter in enumerate(word):
                if letter == k + 1:
                    weight -= 1
                    target = word[:pos] + (k,) + word[pos + 1 :]
                    e_rows.append(_word_index(target, n))
                    e_cols.append(col)
                    e_vals.append(1)
                elif letter == k:
                    weight += 1
                    target = word[:pos] + (k + 1,) + word[pos + 1 :]
                    f_rows.append(_word_index(target, n))
                    f_cols.append(col)
                    f_vals.append(1)
            h_vals[col] = weight
        e[k] = sparse.csr_matrix(
            (np.array(e_vals, dtype=np.int64), (e_rows, e_cols)), shape=(dim, dim)
        )
        f[k] = sparse.csr_matrix(
            (np.array(f_vals, dtype=np.int64), (f_rows, f_cols)), shape=(dim, dim)
        )
        h[k] = sparse.csr_matrix(
            (h_vals, (range(dim), range(dim))), shape=(dim, dim)
        )
    return TensorAction(n, d, dim, e, f, h)


@dataclass(frozen=True)
class Constituent:
    w: HighestWeight
    gl_partition: Partition
    sl_partition: Partition
    multiplicity: int
    dimension: int
    strict_partition_of_d: bool

    def to_json(self) -> dict:
        return {
            "w": self.w.to_json(),
            "gl_partition": self.gl_partition.to_json(),
            "sl_partition": self.sl_partition.to_json(),
            "multiplicity": self.multiplicity,
            "dimension": self.dimension,
            "strict_partition_of_d": self.strict_partition_of_d,
        }


@dataclass(frozen=True)
class Decomposition:
    n: int
    d: int
    constituents: tuple[Constituent, ...]

    @property
    def total(self) -> int:
        return sum(c.multiplicity * c.dimension for c in self.constituents)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "total": self.total,
            "constituents": [c.to_json() for c in self.constituents],
        }


def _contents_by_word(n: int, d: int) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    blocks: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for word in product(range(1, n + 1), repeat=d):
        counts = [0] * n
        for letter in word:
            counts[letter - 1] += 1
        blocks.setdefault(tuple(counts), []).append(word)
    return blocks


def _raising_block(
    source: list[tuple[int, ...]], target_index: dict[tuple[int, ...], int], k: int
) -> list[tuple[int, int, int]]:
    """Triplets of the e_k map restricted to one weight block."""
    triplets = []
    for col, word in enumerate(source):
        for pos, letter in enumerate(word):
            if letter == k + 1:
                tgt = word[:pos] + (k,) + word[pos + 1 :]
                triplets.append((target_index[tgt], col, 1))
    return triplets


def _rank_mod_p(rows: int, cols: int, triplets: list[tuple[int, int, int]]) -> int:
    if rows == 0 or cols == 0 or not triplets:
        return 0
    m = np.zeros((rows, cols), dtype=np.int64)
    for r, c, vt in triplets:
        m[r, c] = (m[r, c] + vt) % _PRIME
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, c] % _PRIME:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, c]), _PRIME - 2, _PRIME)
        m[rank] = (m[rank] * inv) % _PRIME
        mask = (m[:, c] % _PRIME) != 0
        mask[rank] = False
        if mask.any():
            m[mask] = (m[mask] - np.outer(m[mask, c], m[rank])) % _PRIME
        rank += 1
        if rank == rows:
            break
    return rank


def _rank_exact(rows: int, cols: int, triplets: list[tuple[int, int, int]]) -> int:
    if rows == 0 or cols == 0 or not triplets:
        return 0
    data = [[0] * cols for _ in range(rows)]
    for r, c, vt in triplets:
        data[r][c] += vt
    m = RatMat(data, cols=cols)
    return cols - len(kernel_basis(m))


def _singular_multiplicities(
    n: int, d: int, exact_only: bool = False
) -> dict[tuple[int, ...], int]:
    """Multiplicity of each dominant content, certified exact via checksum."""
    blocks = _contents_by_word(n, d)
    dominant = sorted(
        (a for a in blocks if all(a[t] >= a[t + 1] for t in range(n - 1))),
        reverse=True,
    )

    def kernels(use_exact: bool) -> dict[tuple[int, ...], int]:
        mults = {}
        for a in dominant:
            source = blocks[a]
            triplets: list[tuple[int, int, int]] = []
            row_offset = 0
            for k in range(1, n):
                target = list(a)
                target[k - 1] += 1
                target[k] -= 1
                if target[k] < 0:
                    continue
                tgt_words = blocks.get(tuple(target), [])
                tgt_index = {wd: i for i, wd in enumerate(tgt_words)}
                for r, c, vt in _raising_block(source, tgt_index, k):
                    triplets.append((row_offset + r, c, vt))
                row_offset += len(tgt_words)
            rank_fn = _rank_exact if use_exact else _rank_mod_p
            rank = rank_fn(row_offset, len(source), triplets)
            mults[a] = len(source) - rank
        return mults

    mults = kernels(exact_only)
    if not exact_only:
        checksum = sum(
            m * irrep_dim(_partition_of_content(a), n) for a, m in mults.items()
        )
        if checksum != n**d:
            mults = kernels(True)
    return mults


def _partition_of_content(a: tuple[int, ...]) -> Partition:
    return Partition(tuple(p for p in a if p > 0))


def decompose_tensor(n: int, d: int, budget: int | None = None) -> Decomposition:
    """Decomposition of (Q^n)^{tensor d} into sl_n irreducibles.

    Multiplicities come from joint kernels of the raising operators on each
    dominant weight space; the constituent records both the GL partition (the
    dominant content) and its sl_n reduction mod full columns, plus the strict
    partition-of-d flag.
    """
    _check_budget(n, d, budget)
    mults = _singular_multiplicities(n, d)
    constituents = []
    for a in sorted(mults, reverse=True):
        mult = mults[a]
        if mult == 0:
            continue
        gl_part = _partition_of_content(a)
        w = partition_to_hw(reduce_mod_full_columns(gl_part, n), n)
        constituents.append(
            Constituent(
                w=w,
                gl_partition=gl_part,
                sl_partition=reduce_mod_full_columns(gl_part, n),
                multiplicity=mult,
                dimension=irrep_dim(gl_part, n),
                strict_partition_of_d=is_partition_of(w, d),
            )
        )
    dec = Decomposition(n, d, tuple(constituents))
    if dec.total != n**d:
        raise IncompatibleError(
            f"decomposition checksum {dec.total} != {n**d}"
        )
    return dec


def irrep_dim(lam, n: int) -> int:
    """Dimension of the sl_n irreducible of highest weight lam (mod full
    columns), by the hook content formula."""
    lam = as_partition(lam)
    if len(lam) > n:
        raise IncompatibleError(f"partition {lam.parts} has more than {n} rows")
    lam = reduce_mod_full_columns(lam, n)
    if not lam.parts:
        return 1
    conj = lam.conjugate().parts
    num = 1
    den = 1
    for i, row in enumerate(lam.parts, start=1):
        for j in range(1, row + 1):
            num *= n + j - i
            den *= row - j + conj[j - 1] - i + 1
    dim, rem = divmod(num, den)
    if rem:
        raise IncompatibleError("hook content product is not integral")
    return dim


def dim_quotient_Id(n: int, d: int, budget: int | None = None) -> int:
    """Sum of squared dimensions over the distinct sl_n constituents of the
    d-th tensor power of the natural module."""
    dec = decompose_tensor(n, d, budget)
    seen: dict[tuple[int, ...], int] = {}
    for c in dec.constituents:
        seen[c.sl_partition.parts] = c.dimension
    return sum(dim * dim for dim in seen.values())


def dominant_weights_of(w) -> list[tuple[HighestWeight, bool]]:
    """Dominant candidates omega_w - alpha_v with their weight-membership flag.

    Candidates are enumerated over the box where the associated composition is
    non-negative; membership in L(omega_w) is decided by the crystal model
    (count of vertices at that weight), with the Kostka number available as an
    independent combinatorial check.
    """
    from .crystal import highest_weight_crystal, weight_multiplicity

    w = as_highest_weight(w)
    n = w.n
    d = w.level_d
    C = cartan_matrix(n)
    graph = highest_weight_crystal(w)
    out = []
    for v in product(range(d + 1), repeat=n - 1):
        Cv = [sum(row[t] * v[t] for t in range(n - 1)) for row in C]
        mu = tuple(w[t] - Cv[t] for t in range(n - 1))
        if any(c < 0 for c in mu):
            continue
        try:
            a = a_of_vw(v, w)
        except NotInImageError:
            out.append((HighestWeight(mu), False))
            continue
        member = weight_multiplicity(graph, a.parts) > 0
        out.append((HighestWeight(mu), member))
    out.sort(key=lambda pair: pair[0].w, reverse=True)
    return out


def dim_quotient_Jw(w, budget: int | None = None) -> int:
    """Sum of squared dimensions over the dominant weights of L(omega_w)."""
    w = as_highest_weight(w)
    _check_budget(w.n, max(w.level_d, 1), budget)
    total = 0
    for mu, member in dominant_weights_of(w):
        if member:
            total += irrep_dim(hw_to_partition(mu), w.n) ** 2
    return total


def kostka(lam, a) -> int:
    """Number of semistandard tableaux of shape lam and content a."""
    lam = as_partition(lam)
    a = tuple(int(c) for c in a)
    if any(c < 0 for c in a):
        return 0
    if lam.size != sum(a):
        raise SizeMismatchError(f"|{lam.parts}| != sum{a}")
    if not lam.parts:
        return 1
    rows = len(lam.parts)
    shape = lam.parts
    remaining = list(a)
    column: list[list[int]] = [[0] * r for r in shape]

    def fill(row: int, col: int) -> int:
        if row == rows:
            return 1
        nrow, ncol = (row, col + 1) if col + 1 < shape[row] else (row + 1, 0)
        total = 0
        lo = column[row][col - 1] if col > 0 else 1
        for letter in range(lo, len(remaining) + 1):
            if remaining[letter - 1] == 0:
                continue
            if row > 0 and col < shape[row - 1] and letter <= column[row - 1][col]:
                continue
            column[row][col] = letter
            remaining[letter - 1] -= 1
            total += fill(nrow, ncol)
            remaining[letter - 1] += 1
            column[row][col] = 0
        return total

    return fill(0, 0)


def _bounded_compositions(total: int, bounds: tuple[int, ...]):
    """Compositions of total with part i <= bounds[i]."""
    if len(bounds) == 1:
        if total <= bounds[0]:
            yield (total,)
        return
    for first in range(min(total, bounds[0]) + 1):
        for rest in _bounded_compositions(total - first, bounds[1:]):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _margin_count(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    # cache shared across all margin pairs: states are (row-sum suffix, state)
    if not rows:
        return 1 if all(c == 0 for c in cols) else 0
    total = 0
    for row in _bounded_compositions(rows[0], cols):
        total += _margin_count(rows[1:], tuple(c - t for c, t in zip(cols, row)))
    return total


def margin_matrix_count(d1, d2) -> int:
    """Number of non-negative integer matrices with row sums d1, col sums d2."""
    d1 = as_composition(d1)
    d2 = as_composition(d2)
    if d1.d != d2.d:
        raise SizeMismatchError(f"totals differ: {d1.d} != {d2.d}")
    if len(d2) == 0:
        return 1 if d1.d == 0 else 0
    return _margin_count(tuple(d1.parts), tuple(d2.parts))


Tableau = list[list[int]]


def _row_insert(tableau: Tableau, recording: Tableau, x: int, label: int) -> None:
    row = 0
    while True:
        if row == len(tableau):
            tableau.append([x])
            recording.append([label])
            return
        current = tableau[row]
        bump_at = None
        for idx, val in enumerate(current):
            if val > x:
                bump_at = idx
                break
        if bump_at is None:
            current.append(x)
            recording[row].append(label)
            return
        current[bump_at], x = x, current[bump_at]
        row += 1


def rsk(matrix) -> tuple[Tableau, Tableau]:
    """RSK of a non-negative integer matrix: (insertion P, recording Q).

    The biword takes pairs (i, j) with multiplicity m[i][j] in lexicographic
    order; P receives the column labels (content = column sums) and Q the row
    labels (content = row sums).
    """
    P: Tableau = []
    Q: Tableau = []
    for i, row in enumerate(matrix, start=1):
        for j, mult in enumerate(row, start=1):
            if mult < 0:
                raise IncompatibleError("negative matrix entry")
            for _ in range(mult):
                _row_insert(P, Q, j, i)
    return P, Q


def rsk_inverse(P: Tableau, Q: Tableau, nrows: int, ncols: int) -> list[list[int]]:
    """Invert RSK back to the margin matrix of shape nrows x ncols.

    Repeatedly removes the rightmost corner cell carrying the maximal
    recording label (the last-inserted cell) and reverse-bumps its value up
    through P: at each row above, the rightmost entry strictly below the
    carried value is swapped out.
    """
    P = [list(r) for r in P]
    Q = [list(r) for r in Q]
    if [len(r) for r in P] != [len(r) for r in Q]:
        raise SizeMismatchError("P and Q have different shapes")
    matrix = [[0] * ncols for _ in range(nrows)]
    while P:
        label = max(r[-1] for r in Q)
        best = None
        for r, qrow in enumerate(Q):
            if qrow[-1] == label and (best is None or len(qrow) > len(Q[best])):
                best = r
        r = best
        x = P[r].pop()
        Q[r].pop()
        if not P[r]:
            P.pop(r)
            Q.pop(r)
        for above in range(r - 1, -1, -1):
            row = P[above]
            swap_at = None
            for idx in range(len(row) - 1, -1, -1):
                if row[idx] < x:
                    swap_at = idx
                    break
            row[swap_at], x = x, row[swap_at]
        if not 1 <= label <= nrows or not 1 <= x <= ncols:
            raise SizeMismatchError("tableau entry outside the requested shape")
        matrix[label - 1][x - 1] += 1
    return matrix


@dataclass(frozen=True)
class Fact:
    name: str
    value: object
    expected: object

    @property
    def ok(self) -> bool:
        return self.value == self.expected

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "expected": self.expected,
            "ok": self.ok,
        }


def verify_sl3_example(budget: int | None = None) -> dict:
    """The rank-3 separation example: both readings of "partition of 3", the
    vanishing multiplicity, and the two different quotient dimensions.

    Each fact is evaluated in isolation so a failing computation yields a red
    report naming that fact instead of aborting the run.
    """
    w_top = HighestWeight((3, 0))
    w_adj = HighestWeight((1, 1))

    def guarded(name, thunk, expected):
        try:
            return Fact(name, thunk(), expected)
        except GeoCrystalError as exc:
            return Fact(name, f"error: {exc}", expected)

    facts = [
        guarded("is_partition_of((3,0), 3)", lambda: is_partition_of(w_top, 3), True),
        guarded(
            "multiplicity of 3*omega_1 in L(omega_1+omega_2)",
            lambda: kostka(hw_to_partition(w_adj), (3, 0, 0)),
            0,
        ),
        guarded("dim U/I_3", lambda: dim_quotient_Id(3, 3, budget), 165),
        guarded("dim U/J_(1,1)", lambda: dim_quotient_Jw(w_adj, budget), 65),
    ]
    facts.append(Fact("quotients differ", facts[2].value != facts[3].value, True))
    return {
        "schema_version": "1",
        "facts": [f.to_json() for f in facts],
        "pass": all(f.ok for f in facts),
    }
