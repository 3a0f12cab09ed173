"""Explicit matrix realizations of modules over the finite-set category.

A TruncatedFunctor stores dimensions and generator-action matrices on all
set sizes <= N.  The category is presented by the adjacent transpositions
within each automorphism group, the order-preserving inclusion t -> t+1,
and the surjection t+1 -> t folding the top two points; every map between
skeleton objects factors as a word in these, so naturality need only be
imposed on generators (with exhaustive small-size functoriality checks as
a safety net).

Set elements are 0-indexed: the object of size t is {0, .., t-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..partitions import Partition, partitions_of
from ..symrep import ClassFunction, IrrDecomposition, character_table, decompose
from . import linalg

MAX_ABS_GUARD = 1 << 55


class OracleError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Sparse exact matrices


class SpMat:
    """Sparse integer matrix with one global denominator."""

    __slots__ = ("m", "n", "rows", "cols", "vals", "den", "_cidx")

    def __init__(self, m, n, rows, cols, vals, den=1):
        self._cidx = None
        self.m, self.n = int(m), int(n)
        rows = np.asarray(rows, dtype=np.int64).reshape(-1)
        cols = np.asarray(cols, dtype=np.int64).reshape(-1)
        vals = np.asarray(vals, dtype=np.int64).reshape(-1)
        if len(vals):
            if np.abs(vals).max() > MAX_ABS_GUARD:
                raise OracleError("integer magnitude guard tripped")
            order = np.lexsort((cols, rows))
            rows, cols, vals = rows[order], cols[order], vals[order]
            keys = rows * (self.n + 1) + cols
            uniq, idx = np.unique(keys, return_index=True)
            sums = np.add.reduceat(vals, idx)
            keep = sums != 0
            rows = (uniq // (self.n + 1))[keep]
            cols = (uniq % (self.n + 1))[keep]
            vals = sums[keep]
        self.rows, self.cols, self.vals = rows, cols, vals
        self.den = int(den)
        self._normalize()

    def _normalize(self):
        from math import gcd

        if self.den < 0:
            self.den = -self.den
            self.vals = -self.vals
        if self.den != 1:
            if not len(self.vals):
                self.den = 1
                return
            g = int(np.gcd.reduce(np.abs(self.vals)))
            g = gcd(g, self.den)
            if g > 1:
                self.vals = self.vals // g
                self.den //= g

    @classmethod
    def zeros(cls, m, n):
        return cls(m, n, [], [], [])

    @classmethod
    def identity(cls, n):
        idx = np.arange(n)
        return cls(n, n, idx, idx, np.ones(n, dtype=np.int64))

    @classmethod
    def from_colmap(cls, m, n, col_to_row, signs=None):
        """One entry per column: col j -> row col_to_row[j] (-1 = zero)."""
        cols = [j for j in range(n) if col_to_row[j] >= 0]
        rows = [col_to_row[j] for j in cols]
        vals = [1] * len(cols) if signs is None else [signs[j] for j in cols]
        return cls(m, n, rows, cols, vals)

    @classmethod
    def from_sparse_columns(cls, m, columns: Sequence[Dict[int, Fraction]]):
        from math import lcm

        den = 1
        for col in columns:
            for v in col.values():
                den = lcm(den, Fraction(v).denominator)
        rows, cols, vals = [], [], []
        for j, col in enumerate(columns):
            for i, v in col.items():
                x = Fraction(v) * den
                rows.append(i)
                cols.append(j)
                vals.append(int(x))
        return cls(m, len(columns), rows, cols, vals, den)

    @property
    def shape(self):
        return (self.m, self.n)

    @property
    def nnz(self):
        return len(self.vals)

    def apply_dense(self, X: np.ndarray) -> np.ndarray:
        """Integer part of self @ X for dense int64 X (ignore self.den)."""
        out = np.zeros((self.m,) + X.shape[1:], dtype=np.int64)
        if self.nnz:
            contrib = self.vals.reshape((-1,) + (1,) * (X.ndim - 1)) * X[self.cols]
            np.add.at(out, self.rows, contrib)
            if out.size and np.abs(out).max() > MAX_ABS_GUARD:
                raise OracleError("integer magnitude guard tripped in apply")
        return out

    def apply_vec(self, v: np.ndarray) -> np.ndarray:
        return self.apply_dense(v.reshape(-1, 1)).reshape(-1)

    def compose(self, other: "SpMat") -> "SpMat":
        assert self.n == other.m, (self.shape, other.shape)
        self_cols: Dict[int, List[Tuple[int, int]]] = {}
        for r, c, v in zip(self.rows, self.cols, self.vals):
            self_cols.setdefault(int(c), []).append((int(r), int(v)))
        acc: Dict[Tuple[int, int], int] = {}
        for r, c, v in zip(other.rows, other.cols, other.vals):
            for rr, vv in self_cols.get(int(r), ()):
                key = (rr, int(c))
                acc[key] = acc.get(key, 0) + vv * int(v)
        rows = [k[0] for k, v in acc.items() if v]
        cols = [k[1] for k, v in acc.items() if v]
        vals = [v for v in acc.values() if v]
        return SpMat(self.m, other.n, rows, cols, vals, self.den * other.den)

    def __add__(self, other: "SpMat") -> "SpMat":
        from math import lcm

        assert self.shape == other.shape
        big = lcm(self.den, other.den)
        rows = np.concatenate([self.rows, other.rows])
        cols = np.concatenate([self.cols, other.cols])
        vals = np.concatenate(
            [self.vals * (big // self.den), other.vals * (big // other.den)]
        )
        return SpMat(self.m, self.n, rows, cols, vals, big)

    def scale(self, num: int, den: int = 1) -> "SpMat":
        return SpMat(
            self.m, self.n, self.rows, self.cols, self.vals * num, self.den * den
        )

    def trace(self) -> Fraction:
        mask = self.rows == self.cols
        return Fraction(int(self.vals[mask].sum()), self.den)

    def column_sparse(self, j: int) -> Dict[int, Fraction]:
        mask = self.cols == j
        return {
            int(r): Fraction(int(v), self.den)
            for r, v in zip(self.rows[mask], self.vals[mask])
        }

    def column_intvec(self, j: int) -> Tuple[np.ndarray, int]:
        out = np.zeros(self.m, dtype=np.int64)
        mask = self.cols == j
        out[self.rows[mask]] = self.vals[mask]
        return out, self.den

    def to_fraction_rows(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.n for _ in range(self.m)]
        for r, c, v in zip(self.rows, self.cols, self.vals):
            out[int(r)][int(c)] = Fraction(int(v), self.den)
        return out

    def is_zero(self) -> bool:
        return self.nnz == 0

    def equals(self, other: "SpMat") -> bool:
        return (self + other.scale(-1)).is_zero()


# ---------------------------------------------------------------------------
# Generator words and map factorization


def perm_word(g: Tuple[int, ...]) -> List[int]:
    """Adjacent-transposition word for g (as an image tuple on 0..n-1).

    Returns w with g = s_{w[0]} o ... o s_{w[-1]} (rightmost applied
    first), where s_i swaps i-1 and i (1-indexed label)."""
    arr = list(g)
    n = len(arr)
    swaps: List[int] = []
    for _ in range(n):
        done = True
        for j in range(n - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                swaps.append(j + 1)
                done = False
        if done:
            break
    return swaps[::-1]


def _transport_perm(t: int, a: int, b: int) -> Tuple[int, ...]:
    p = list(range(t))
    p[a], p[b] = p[b], p[a]
    return tuple(p)


def _transport_pair_perm(s: int, x: int, y: int) -> Tuple[int, ...]:
    rest = [i for i in range(s) if i not in (x, y)]
    p = [0] * s
    for pos, i in enumerate(rest):
        p[i] = pos
    p[x], p[y] = s - 2, s - 1
    return tuple(p)


@lru_cache(maxsize=65536)
def factor_map(f: Tuple[int, ...], s: int, t: int) -> Tuple[Tuple, ...]:
    """Factor a set map f: s -> t into generator steps, first step first."""
    if s == t and sorted(f) == list(range(t)):
        return tuple(("tau", t, i) for i in reversed(perm_word(f)))
    image = set(f)
    if len(image) < t:
        missing = next(c for c in range(t - 1, -1, -1) if c not in image)
        p = _transport_perm(t, missing, t - 1)
        pf = tuple(p[x] for x in f)
        inner = factor_map(pf, s, t - 1)
        return inner + (("inc", t - 1),) + tuple(
            ("tau", t, i) for i in reversed(perm_word(p))
        )
    # surjective with s > t: merge a doubled pair through the fold
    seen: Dict[int, int] = {}
    x = y = -1
    for i, v in enumerate(f):
        if v in seen:
            x, y = seen[v], i
            break
        seen[v] = i
    rho = _transport_pair_perm(s, x, y)
    rho_inv = tuple(rho.index(i) for i in range(s))
    f2 = tuple(f[rho_inv[i]] for i in range(s - 1))
    inner = factor_map(f2, s - 1, t)
    return tuple(("tau", s, i) for i in reversed(perm_word(rho))) + (
        ("fold", s - 1),
    ) + inner


def _tau_map(t: int, i: int) -> Tuple[int, ...]:
    g = list(range(t))
    g[i - 1], g[i] = g[i], g[i - 1]
    return tuple(g)


def _inc_map(t: int) -> Tuple[int, ...]:
    return tuple(range(t))


def _fold_map(t: int) -> Tuple[int, ...]:
    """The fold t+1 -> t sending t to t-1."""
    return tuple(list(range(t)) + [t - 1])


# ---------------------------------------------------------------------------
# Truncated functors


GenKey = Tuple


@dataclass
class TruncatedFunctor:
    """A module over the finite-set category realized on sizes 0..N."""

    N: int
    dims: List[int]
    act: Dict[GenKey, SpMat]
    generators: List[Tuple[int, np.ndarray]]
    name: str = "F"
    outer_n: int = 0
    outer_act: Dict[Tuple[int, int], SpMat] = field(default_factory=dict)
    span_cache: Optional[object] = None

    def dim(self, t: int) -> int:
        return self.dims[t]

    def gen_keys(self) -> List[GenKey]:
        keys: List[GenKey] = [("inc", t) for t in range(self.N)]
        keys += [("fold", t) for t in range(1, self.N)]
        for t in range(2, self.N + 1):
            keys += [("tau", t, i) for i in range(1, t)]
        return keys

    @staticmethod
    def gen_src_dst(key: GenKey) -> Tuple[int, int]:
        if key[0] == "inc":
            return key[1], key[1] + 1
        if key[0] == "fold":
            return key[1] + 1, key[1]
        return key[1], key[1]

    def perm_matrix(self, g: Tuple[int, ...], t: int) -> SpMat:
        mat = SpMat.identity(self.dims[t])
        for i in perm_word(g):
            mat = self.act[("tau", t, i)].compose(mat)
        return mat

    def outer_matrix(self, g: Tuple[int, ...], t: int) -> SpMat:
        mat = SpMat.identity(self.dims[t])
        for i in perm_word(g):
            mat = self.outer_act[(i, t)].compose(mat)
        return mat

    def check_functoriality(self, max_size: int = 4) -> None:
        top = min(max_size, self.N)
        for s in range(top + 1):
            for u in range(top + 1):
                for h in _all_maps(s, u):
                    Fh = map_matrix(self, h, s, u)
                    for t in range(top + 1):
                        for g in _all_maps(u, t):
                            comp = tuple(g[h[i]] for i in range(s))
                            lhs = map_matrix(self, comp, s, t)
                            rhs = map_matrix(self, g, u, t).compose(Fh)
                            if not lhs.equals(rhs):
                                raise OracleError(
                                    f"{self.name}: functoriality fails at "
                                    f"{h}: {s}->{u}, {g}: {u}->{t}"
                                )


@lru_cache(maxsize=None)
def _all_maps(s: int, t: int) -> Tuple[Tuple[int, ...], ...]:
    if s == 0:
        return ((),)
    return tuple(itertools.product(range(t), repeat=s))


def map_matrix(F: TruncatedFunctor, f: Tuple[int, ...], s: int, t: int) -> SpMat:
    """Matrix of F on an arbitrary set map f: s -> t (image tuple)."""
    if s > F.N or t > F.N:
        raise OracleError("map exceeds truncation")
    mat = SpMat.identity(F.dims[s])
    for step in factor_map(tuple(f), s, t):
        mat = F.act[(step[0],) + tuple(step[1:])].compose(mat)
    return mat


# ---------------------------------------------------------------------------
# Basic builders


def _check_truncation(N: int) -> None:
    if N < 2:
        raise OracleError("truncation below 2 leaves nothing to check")


def _tuple_index(tup: Tuple[int, ...], base: int) -> int:
    idx = 0
    for v in tup:
        idx = idx * base + v
    return idx


def _monomial_action(n: int, g: Tuple[int, ...], s: int, t: int) -> SpMat:
    """Action of a set map on tuple bases by value-wise application."""
    cmap = [
        _tuple_index(tuple(g[v] for v in tup), t)
        for tup in itertools.product(range(s), repeat=n)
    ]
    return SpMat.from_colmap(t**n, s**n, cmap)


def build_pfin(n: int, N: int) -> TruncatedFunctor:
    """Standard projective of degree n: X |-> k[X]^{(x)n}, basis = tuples.

    Outer action: place permutations of the n tensor positions."""
    _check_truncation(N)
    dims = [t**n for t in range(N + 1)]
    act: Dict[GenKey, SpMat] = {}
    for t in range(N):
        act[("inc", t)] = _monomial_action(n, _inc_map(t), t, t + 1)
    for t in range(1, N):
        act[("fold", t)] = _monomial_action(n, _fold_map(t), t + 1, t)
    for t in range(2, N + 1):
        for i in range(1, t):
            act[("tau", t, i)] = _monomial_action(n, _tau_map(t, i), t, t)

    outer_act: Dict[Tuple[int, int], SpMat] = {}
    for i in range(1, n):
        for t in range(N + 1):
            cmap = []
            for tup in itertools.product(range(t), repeat=n):
                lst = list(tup)
                lst[i - 1], lst[i] = lst[i], lst[i - 1]
                cmap.append(_tuple_index(tuple(lst), t))
            outer_act[(i, t)] = SpMat.from_colmap(t**n, t**n, cmap)

    gens = []
    if n <= N:
        col = np.zeros(dims[n], dtype=np.int64)
        col[_tuple_index(tuple(range(n)), n)] = 1
        gens.append((n, col))
    else:
        raise OracleError(f"pfin({n}) needs N >= {n}")
    return TruncatedFunctor(
        N, dims, act, gens, name=f"pfin({n})", outer_n=n, outer_act=outer_act
    )


def _constlike(N: int, dims: List[int], gen_degree: int, name: str) -> TruncatedFunctor:
    act: Dict[GenKey, SpMat] = {}

    def mat(ds, dt):
        if ds and dt:
            return SpMat.identity(1)
        return SpMat.zeros(dt, ds)

    for t in range(N):
        act[("inc", t)] = mat(dims[t], dims[t + 1])
    for t in range(1, N):
        act[("fold", t)] = mat(dims[t + 1], dims[t])
    for t in range(2, N + 1):
        for i in range(1, t):
            act[("tau", t, i)] = mat(dims[t], dims[t])
    return TruncatedFunctor(
        N, dims, act, [(gen_degree, np.array([1], dtype=np.int64))], name=name
    )


def build_k0(N: int) -> TruncatedFunctor:
    """The module supported on the empty set."""
    _check_truncation(N)
    F = _constlike(N, [1] + [0] * N, 0, "k0")
    # inc out of degree 0 must be zero even though both dims could be 1
    F.act[("inc", 0)] = SpMat.zeros(F.dims[1], F.dims[0])
    return F


def build_const_k(N: int) -> TruncatedFunctor:
    """The constant module k."""
    _check_truncation(N)
    return _constlike(N, [1] * (N + 1), 0, "k")


def build_kbar(N: int) -> TruncatedFunctor:
    """The constant module restricted to nonempty sets."""
    _check_truncation(N)
    return _constlike(N, [0] + [1] * N, 1, "kbar")


def build_kfi(n: int, N: int) -> TruncatedFunctor:
    """Injection module of degree n; non-injective composites act by 0."""
    _check_truncation(N)
    bases: List[List[Tuple[int, ...]]] = []
    index: List[Dict[Tuple[int, ...], int]] = []
    for t in range(N + 1):
        tuples = list(itertools.permutations(range(t), n))
        bases.append(tuples)
        index.append({p: i for i, p in enumerate(tuples)})
    dims = [len(b) for b in bases]

    def action(g: Tuple[int, ...], s: int, t: int) -> SpMat:
        cmap = []
        for tup in bases[s]:
            img = tuple(g[v] for v in tup)
            cmap.append(index[t].get(img, -1) if len(set(img)) == n else -1)
        return SpMat.from_colmap(dims[t], dims[s], cmap)

    act: Dict[GenKey, SpMat] = {}
    for t in range(N):
        act[("inc", t)] = action(_inc_map(t), t, t + 1)
    for t in range(1, N):
        act[("fold", t)] = action(_fold_map(t), t + 1, t)
    for t in range(2, N + 1):
        for i in range(1, t):
            act[("tau", t, i)] = action(_tau_map(t, i), t, t)

    outer_act: Dict[Tuple[int, int], SpMat] = {}
    for i in range(1, n):
        for t in range(N + 1):
            cmap = []
            for tup in bases[t]:
                lst = list(tup)
                lst[i - 1], lst[i] = lst[i], lst[i - 1]
                cmap.append(index[t][tuple(lst)])
            outer_act[(i, t)] = SpMat.from_colmap(dims[t], dims[t], cmap)

    gens = []
    if n <= N:
        col = np.zeros(dims[n], dtype=np.int64)
        col[index[n][tuple(range(n))]] = 1
        gens.append((n, col))
    return TruncatedFunctor(
        N, dims, act, gens, name=f"kfi({n})", outer_n=n, outer_act=outer_act
    )


def build_pbar_tensor(n: int, N: int) -> TruncatedFunctor:
    """Tensor power of the reduced standard projective, in the difference
    basis with base point 0: value at t >= 1 has basis {1..t-1}^n, the
    tuple y standing for the product of ([y_i] - [0])."""
    _check_truncation(N)
    if n == 0:
        return build_kbar(N)
    if n + 1 > N:
        raise OracleError(f"pbar_tensor({n}) needs N >= {n + 1}")
    dims = [(t - 1) ** n if t >= 1 else 0 for t in range(N + 1)]

    def tindex(tup: Tuple[int, ...], t: int) -> int:
        idx = 0
        for v in tup:
            idx = idx * (t - 1) + (v - 1)
        return idx

    def action(g: Tuple[int, ...], s: int, t: int) -> SpMat:
        if s < 2 or t < 1:
            return SpMat.zeros(dims[t], dims[s])
        rows, cols, vals = [], [], []
        g0 = g[0]
        for tup in itertools.product(range(1, s), repeat=n):
            j = tindex(tup, s)
            terms: List[Tuple[Tuple[int, ...], int]] = [((), 1)]
            for y in tup:
                gy = g[y]
                new_terms = []
                for prefix, sign in terms:
                    if gy != 0:
                        new_terms.append((prefix + (gy,), sign))
                    if g0 != 0:
                        new_terms.append((prefix + (g0,), -sign))
                terms = new_terms
            for full, sign in terms:
                rows.append(tindex(full, t))
                cols.append(j)
                vals.append(sign)
        return SpMat(dims[t], dims[s], rows, cols, vals)

    act: Dict[GenKey, SpMat] = {}
    for t in range(N):
        act[("inc", t)] = action(_inc_map(t), t, t + 1)
    for t in range(1, N):
        act[("fold", t)] = action(_fold_map(t), t + 1, t)
    for t in range(2, N + 1):
        for i in range(1, t):
            act[("tau", t, i)] = action(_tau_map(t, i), t, t)

    outer_act: Dict[Tuple[int, int], SpMat] = {}
    for i in range(1, n):
        for t in range(N + 1):
            if dims[t] == 0:
                outer_act[(i, t)] = SpMat.zeros(0, 0)
                continue
            cmap = []
            for tup in itertools.product(range(1, t), repeat=n):
                lst = list(tup)
                lst[i - 1], lst[i] = lst[i], lst[i - 1]
                cmap.append(tindex(tuple(lst), t))
            outer_act[(i, t)] = SpMat.from_colmap(dims[t], dims[t], cmap)

    col = np.zeros(dims[n + 1], dtype=np.int64)
    col[tindex(tuple(range(1, n + 1)), n + 1)] = 1
    return TruncatedFunctor(
        N,
        dims,
        act,
        [(n + 1, col)],
        name=f"pbar({n})",
        outer_n=n,
        outer_act=outer_act,
    )


# ---------------------------------------------------------------------------
# Exterior powers (direct wedge-basis constructions)


def _wedge_index(subsets: List[Tuple[int, ...]]) -> Dict[Tuple[int, ...], int]:
    return {s: i for i, s in enumerate(subsets)}


def _sort_sign(tup: Tuple[int, ...]) -> Tuple[Optional[Tuple[int, ...]], int]:
    """Sort a tuple, returning (sorted tuple, permutation sign); None on
    repeated entries."""
    if len(set(tup)) != len(tup):
        return None, 0
    order = sorted(range(len(tup)), key=lambda i: tup[i])
    sign = 1
    seen = [False] * len(tup)
    for start in range(len(tup)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = order[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(sorted(tup)), sign


def build_lambda_pfin(k: int, N: int) -> TruncatedFunctor:
    """k-th exterior power of the standard degree-one projective.

    Basis at t: k-subsets of {0..t-1}; a set map acts by the wedge of its
    values (zero on collisions)."""
    _check_truncation(N)
    if k == 0:
        return build_const_k(N)
    subsets = [list(itertools.combinations(range(t), k)) for t in range(N + 1)]
    index = [_wedge_index(s) for s in subsets]
    dims = [len(s) for s in subsets]

    def action(g: Tuple[int, ...], s: int, t: int) -> SpMat:
        cmap, signs = [], []
        for S in subsets[s]:
            img = tuple(g[v] for v in S)
            sorted_img, sign = _sort_sign(img)
            if sorted_img is None:
                cmap.append(-1)
                signs.append(0)
            else:
                cmap.append(index[t][sorted_img])
                signs.append(sign)
        return SpMat.from_colmap(dims[t], dims[s], cmap, signs)

    act: Dict[GenKey, SpMat] = {}
    for t in range(N):
        act[("inc", t)] = action(_inc_map(t), t, t + 1)
    for t in range(1, N):
        act[("fold", t)] = action(_fold_map(t), t + 1, t)
    for t in range(2, N + 1):
        for i in range(1, t):
            act[("tau", t, i)] = action(_tau_map(t, i), t, t)

    gens = []
    if k <= N:
        col = np.zeros(dims[k], dtype=np.int64)
        col[index[k][tuple(range(k))]] = 1
        gens.append((k, col))
    else:
        raise OracleError(f"lambda_pfin({k}) needs N >= {k}")
    return TruncatedFunctor(N, dims, act, gens, name=f"lambda_pfin({k})")


def build_lambda_pbar(k: int, N: int) -> TruncatedFunctor:
    """k-th exterior power of the reduced projective, in wedge-difference
    coordinates: basis at t is the k-subsets of {1..t-1}."""
    _check_truncation(N)
    if k == 0:
        return build_kbar(N)
    if k + 1 > N:
        raise OracleError(f"lambda_pbar({k}) needs N >= {k + 1}")
    subsets = [
        list(itertools.combinations(range(1, t), k)) if t >= 1 else []
        for t in range(N + 1)
    ]
    index = [_wedge_index(s) for s in subsets]
    dims = [len(s) for s in subsets]

    def action(g: Tuple[int, ...], s: int, t: int) -> SpMat:
        """Wedge over y in S of (e_{g(y)} - e_{g(0)}), with e_0 = 0.

        The base-point term can survive in at most one factor, so the
        expansion has at most 1 + k terms."""
        if s < 1 or t < 1:
            return SpMat.zeros(dims[t], dims[s])
        rows, cols, vals = [], [], []
        g0 = g[0]
        for S in subsets[s]:
            j = index[s][S]
            imgs = tuple(g[y] for y in S)
            candidates: List[Tuple[Tuple[int, ...], int]] = []
            sorted_img, sign = _sort_sign(imgs)
            if sorted_img is not None and 0 not in sorted_img:
                candidates.append((sorted_img, sign))
            if g0 != 0:
                for pos in range(len(S)):
                    repl = imgs[:pos] + (g0,) + imgs[pos + 1 :]
                    sorted_r, sign_r = _sort_sign(repl)
                    if sorted_r is not None and 0 not in sorted_r:
                        candidates.append((sorted_r, -sign_r))
            for tup, sg in candidates:
                rows.append(index[t][tup])
                cols.append(j)
                vals.append(sg)
        return SpMat(dims[t], dims[s], rows, cols, vals)

    act: Dict[GenKey, SpMat] = {}
    for t in range(N):
        act[("inc", t)] = action(_inc_map(t), t, t + 1)
    for t in range(1, N):
        act[("fold", t)] = action(_fold_map(t), t + 1, t)
    for t in range(2, N + 1):
        for i in range(1, t):
            act[("tau", t, i)] = action(_tau_map(t, i), t, t)

    col = np.zeros(dims[k + 1], dtype=np.int64)
    col[index[k + 1][tuple(range(1, k + 1))]] = 1
    return TruncatedFunctor(N, dims, act, [(k + 1, col)], name=f"lambda_pbar({k})")


def lambda_pbar_embedding(n: int, N: int) -> List[List[Dict[int, Fraction]]]:
    """Columns of the top exterior power inside the n-th tensor power of
    the reduced projective (difference-tuple coordinates), per set size."""
    if n == 0:
        # Lambda^0(Pbar) = kbar = pbar_tensor(0): the whole thing
        return [[{0: Fraction(1)}] if t >= 1 else [] for t in range(N + 1)]
    cols: List[List[Dict[int, Fraction]]] = []
    for t in range(N + 1):
        at_t: List[Dict[int, Fraction]] = []
        if t >= 1:
            for S in itertools.combinations(range(1, t), n):
                col: Dict[int, Fraction] = {}
                for perm in itertools.permutations(range(n)):
                    tup = tuple(S[p] for p in perm)
                    idx = 0
                    for v in tup:
                        idx = idx * (t - 1) + (v - 1)
                    _, sign = _sort_sign(perm)
                    col[idx] = col.get(idx, Fraction(0)) + sign
                at_t.append(col)
        cols.append(at_t)
    return cols


# ---------------------------------------------------------------------------
# Derived builders: quotients, direct sums, isotypic pieces


def quotient_functor(
    parent: TruncatedFunctor,
    sub_columns: List[List[Dict[int, Fraction]]],
    name: str,
) -> TruncatedFunctor:
    """Quotient of `parent` by the subfunctor spanned by the given sparse
    columns (one list per set size).  Stability of the span under every
    generator is verified exactly."""
    reducers: List[linalg.ColumnBasis] = []
    quot_coords: List[List[int]] = []
    for t in range(parent.N + 1):
        cb = linalg.ColumnBasis(parent.dims[t])
        for col in sub_columns[t]:
            cb.add(col)
        reducers.append(cb)
        pivset = set(cb.pivots.keys())
        quot_coords.append([j for j in range(parent.dims[t]) if j not in pivset])
    dims = [len(q) for q in quot_coords]

    def project(t: int, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        residual, _ = reducers[t].reduce(vec)
        lookup = {c: i for i, c in enumerate(quot_coords[t])}
        out = {}
        for c, v in residual.items():
            if c not in lookup:
                raise OracleError(f"{name}: sub-span not stable at size {t}")
            out[lookup[c]] = v
        return out

    act: Dict[GenKey, SpMat] = {}
    for key in parent.gen_keys():
        s, t = parent.gen_src_dst(key)
        pm = parent.act[key]
        # stability check: images of sub columns must reduce to zero
        for col in sub_columns[s]:
            img = _apply_sparse(pm, col)
            residual, _ = reducers[t].reduce(img)
            if residual:
                raise OracleError(f"{name}: subfunctor not stable under {key}")
        cols = []
        for j in quot_coords[s]:
            img = _apply_sparse(pm, {j: Fraction(1)})
            cols.append(project(t, img))
        act[key] = SpMat.from_sparse_columns(dims[t], cols)

    gens = []
    for d, col in parent.generators:
        pc = project(d, linalg.sparse_from_dense(col))
        if pc:
            vec, den = _sparse_to_intvec(pc, dims[d])
            gens.append((d, vec))
    outer_act: Dict[Tuple[int, int], SpMat] = {}
    for (i, t), m in parent.outer_act.items():
        for col in sub_columns[t]:
            img = _apply_sparse(m, col)
            residual, _ = reducers[t].reduce(img)
            if residual:
                raise OracleError(f"{name}: subfunctor not outer-stable")
        cols = []
        for j in quot_coords[t]:
            cols.append(project(t, _apply_sparse(m, {j: Fraction(1)})))
        outer_act[(i, t)] = SpMat.from_sparse_columns(dims[t], cols)
    return TruncatedFunctor(
        parent.N,
        dims,
        act,
        gens,
        name=name,
        outer_n=parent.outer_n,
        outer_act=outer_act,
    )


def _apply_sparse(m: SpMat, col: Dict[int, Fraction]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for r, c, v in zip(m.rows, m.cols, m.vals):
        cv = col.get(int(c))
        if cv:
            key = int(r)
            nv = out.get(key, Fraction(0)) + Fraction(int(v), m.den) * cv
            if nv:
                out[key] = nv
            elif key in out:
                del out[key]
    return out


def _sparse_to_intvec(col: Dict[int, Fraction], dim: int) -> Tuple[np.ndarray, int]:
    from math import lcm

    den = 1
    for v in col.values():
        den = lcm(den, v.denominator)
    vec = np.zeros(dim, dtype=np.int64)
    for i, v in col.items():
        vec[i] = int(v * den)
    return vec, den


def kernel_functor(
    F: TruncatedFunctor,
    G: TruncatedFunctor,
    mats: List[SpMat],
    name: str,
) -> TruncatedFunctor:
    """Kernel of a natural transformation F -> G given by one matrix per
    set size.  Naturality of the map family is verified exactly; the
    kernel's module generators are taken to be all of its basis vectors
    (redundant generators are harmless downstream)."""
    if F.N != G.N:
        raise OracleError("truncations differ")
    for key in F.gen_keys():
        s, t = F.gen_src_dst(key)
        lhs = mats[t].compose(F.act[key])
        rhs = G.act[key].compose(mats[s])
        if not lhs.equals(rhs):
            raise OracleError(f"{name}: the given map family is not natural")
    kernels: List[List[List[int]]] = []
    for t in range(F.N + 1):
        if F.dims[t] == 0:
            kernels.append([])
            continue
        if G.dims[t] == 0 or mats[t].is_zero():
            kernels.append(
                [[1 if i == j else 0 for i in range(F.dims[t])] for j in range(F.dims[t])]
            )
            continue
        rows = [[0] * F.dims[t] for _ in range(G.dims[t])]
        for r, c, v in zip(mats[t].rows, mats[t].cols, mats[t].vals):
            rows[int(r)][int(c)] = int(v)
        kernels.append(linalg.kernel_basis(rows, F.dims[t]))
    reducers: List[linalg.ColumnBasis] = []
    for t in range(F.N + 1):
        cb = linalg.ColumnBasis(F.dims[t])
        for col in kernels[t]:
            cb.add(linalg.sparse_from_dense(col))
        reducers.append(cb)
    dims = [len(k) for k in kernels]

    def restrict(m: SpMat, s: int, t: int) -> SpMat:
        cols = []
        for col in kernels[s]:
            img = _apply_sparse(m, linalg.sparse_from_dense(col))
            cols.append(reducers[t].expand(img))
        return SpMat.from_sparse_columns(dims[t], cols)

    act = {
        key: restrict(F.act[key], *F.gen_src_dst(key)) for key in F.gen_keys()
    }
    gens = []
    for t in range(F.N + 1):
        for j in range(dims[t]):
            col = np.zeros(dims[t], dtype=np.int64)
            col[j] = 1
            gens.append((t, col))
    outer_act: Dict[Tuple[int, int], SpMat] = {}
    if F.outer_n:
        for (i, t), m in F.outer_act.items():
            outer_act[(i, t)] = restrict(m, t, t)
    return TruncatedFunctor(
        F.N, dims, act, gens, name=name, outer_n=F.outer_n, outer_act=outer_act
    )


def direct_sum(
    summands: List[TruncatedFunctor],
    name: str,
    outer_specs: Optional[List[str]] = None,
    outer_n: int = 0,
) -> TruncatedFunctor:
    """Direct sum; outer_specs[i] is 'inherit' (use the summand's outer
    action) or 'sign' (outer transpositions act by -1 on that summand)."""
    N = summands[0].N
    dims = [sum(F.dims[t] for F in summands) for t in range(N + 1)]
    act: Dict[GenKey, SpMat] = {}
    for key in summands[0].gen_keys():
        s, t = TruncatedFunctor.gen_src_dst(key)
        rows, cols, vals = [], [], []
        den = 1
        from math import lcm

        for F in summands:
            den = lcm(den, F.act[key].den)
        roff = coff = 0
        for F in summands:
            m = F.act[key]
            scale = den // m.den
            rows.extend((m.rows + roff).tolist())
            cols.extend((m.cols + coff).tolist())
            vals.extend((m.vals * scale).tolist())
            roff += F.dims[t]
            coff += F.dims[s]
        act[key] = SpMat(dims[t], dims[s], rows, cols, vals, den)

    gens = []
    offset_at = lambda idx, d: sum(F.dims[d] for F in summands[:idx])
    for idx, F in enumerate(summands):
        for d, col in F.generators:
            big = np.zeros(dims[d], dtype=np.int64)
            off = offset_at(idx, d)
            big[off : off + F.dims[d]] = col
            gens.append((d, big))

    outer_act: Dict[Tuple[int, int], SpMat] = {}
    if outer_specs is not None:
        for i in range(1, outer_n):
            for t in range(N + 1):
                rows, cols, vals = [], [], []
                den = 1
                from math import lcm

                for idx, F in enumerate(summands):
                    if outer_specs[idx] == "inherit":
                        den = lcm(den, F.outer_act[(i, t)].den)
                roff = 0
                for idx, F in enumerate(summands):
                    dt = F.dims[t]
                    if outer_specs[idx] == "sign":
                        rows.extend(range(roff, roff + dt))
                        cols.extend(range(roff, roff + dt))
                        vals.extend([-den] * dt)
                    else:
                        m = F.outer_act[(i, t)]
                        scale = den // m.den
                        rows.extend((m.rows + roff).tolist())
                        cols.extend((m.cols + roff).tolist())
                        vals.extend((m.vals * scale).tolist())
                    roff += dt
                outer_act[(i, t)] = SpMat(dims[t], dims[t], rows, cols, vals, den)
    return TruncatedFunctor(
        N, dims, act, gens, name=name, outer_n=outer_n, outer_act=outer_act
    )


def isotypic_subfunctor(parent: TruncatedFunctor, lam: Partition) -> TruncatedFunctor:
    """Image of the exact central projector for the outer isotypic type lam
    (an unnormalized integer multiple of the projector is used).

    Realizes the lam-isotypic summand, i.e. dim(S_lam) copies of the Schur
    construction of type lam on the underlying object."""
    m = parent.outer_n
    if lam.size != m:
        raise ValueError(f"{lam} is not a partition of the outer degree {m}")
    table = character_table(m)
    chi = {}
    for g in itertools.permutations(range(m)):
        chi[g] = table[(lam, _cycle_type(g))]

    projs: List[SpMat] = []
    for t in range(parent.N + 1):
        total = SpMat.zeros(parent.dims[t], parent.dims[t])
        for g, c in chi.items():
            if c:
                total = total + parent.outer_matrix(g, t).scale(c)
        projs.append(total)

    # exact naturality of the projector family (outer action is central)
    for key in parent.gen_keys():
        s, t = parent.gen_src_dst(key)
        a = projs[t].compose(parent.act[key])
        b = parent.act[key].compose(projs[s])
        if not a.equals(b):
            raise OracleError("isotypic projector is not natural")

    reducers: List[linalg.ColumnBasis] = []
    columns: List[List[Dict[int, Fraction]]] = []
    for t in range(parent.N + 1):
        cb = linalg.ColumnBasis(parent.dims[t])
        cols_t: List[Dict[int, Fraction]] = []
        for j in range(parent.dims[t]):
            col = projs[t].column_sparse(j)
            if col:
                idx, _ = cb.add(col)
                if idx is not None:
                    cols_t.append(col)
        reducers.append(cb)
        columns.append(cols_t)
    dims = [len(c) for c in columns]

    def restrict(key_mat: SpMat, s: int, t: int) -> SpMat:
        cols = []
        for col in columns[s]:
            img = _apply_sparse(key_mat, col)
            cols.append(reducers[t].expand(img))
        return SpMat.from_sparse_columns(dims[t], cols)

    act = {
        key: restrict(parent.act[key], *parent.gen_src_dst(key))
        for key in parent.gen_keys()
    }
    outer_act = {
        (i, t): restrict(parent.outer_act[(i, t)], t, t)
        for (i, t) in parent.outer_act
    }
    gens = []
    for d, col in parent.generators:
        img = _apply_sparse(projs[d], linalg.sparse_from_dense(col))
        if img:
            vec, den = _sparse_to_intvec(reducers[d].expand(img), dims[d])
            gens.append((d, vec))
    if not gens and any(dims):
        raise OracleError("isotypic piece has no generator")
    return TruncatedFunctor(
        parent.N,
        dims,
        act,
        gens,
        name=f"{parent.name}[{','.join(map(str, lam))}]",
        outer_n=parent.outer_n,
        outer_act=outer_act,
    )


def _cycle_type(g: Tuple[int, ...]) -> Partition:
    n = len(g)
    seen = [False] * n
    lens = []
    for i in range(n):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = g[j]
            ln += 1
        lens.append(ln)
    return Partition(tuple(sorted(lens, reverse=True)))


def build_proj_cover(n: int, N: int) -> TruncatedFunctor:
    """The projective cover of the n-th tensor power of the reduced
    projective: the (n+1)-st exterior power of the standard projective
    (outer transpositions acting by the sign) plus the tensor power modulo
    its top exterior summand."""
    _check_truncation(N)
    lam_part = build_lambda_pfin(n + 1, N)
    if n == 0:
        F = lam_part
        F.name = "P_0"
        return F
    pbar = build_pbar_tensor(n, N)
    quot = quotient_functor(
        pbar, lambda_pbar_embedding(n, N), name=f"pbar({n})/lambda"
    )
    return direct_sum(
        [lam_part, quot],
        name=f"P_{n}",
        outer_specs=["sign", "inherit"],
        outer_n=n,
    )


# ---------------------------------------------------------------------------
# Characters and symmetric-sequence data


def inner_character(F: TruncatedFunctor, t: int) -> ClassFunction:
    """Character of the evaluation symmetric-group action on F(t)."""
    from ..symrep import representative

    values = {}
    for mu in partitions_of(t):
        rep = representative(mu)
        values[mu] = F.perm_matrix(rep, t).trace()
    return ClassFunction(t, values)


def inner_class(F: TruncatedFunctor, t: int) -> IrrDecomposition:
    dec = decompose(inner_character(F, t))
    if dec.is_virtual:
        raise OracleError(f"non-genuine character for {F.name} at size {t}")
    return dec


def fb_module_data(F: TruncatedFunctor):
    """Underlying symmetric-sequence data, for the closed-form calculus."""
    from ..facalc import FBModuleData

    return FBModuleData(
        F.N,
        F.dims[0],
        {t: inner_class(F, t) for t in range(1, F.N + 1) if F.dims[t]},
    )


def sgn_coinvariant_reduction(F: TruncatedFunctor, t: int):
    """Sign-coinvariants of F(t): returns (ColumnBasis of the relation span
    {F(tau) x + x}, list of free coordinates).  The quotient dimension is
    dim F(t) - len(relations)."""
    cb = linalg.ColumnBasis(F.dims[t])
    for i in range(1, t):
        m = F.act[("tau", t, i)]
        for j in range(F.dims[t]):
            col = m.column_sparse(j)
            col[j] = col.get(j, Fraction(0)) + 1
            col = {k: v for k, v in col.items() if v}
            if col:
                cb.add(col)
    pivset = set(cb.pivots.keys())
    free = [j for j in range(F.dims[t]) if j not in pivset]
    return cb, free


def sgn_coinvariant_dim(F: TruncatedFunctor, t: int) -> int:
    _, free = sgn_coinvariant_reduction(F, t)
    return len(free)
