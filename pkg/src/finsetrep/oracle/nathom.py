"""Exact natural-transformation solver between truncated functors.

A natural transformation out of a functor with declared module generators
is determined by its values on those generators.  Once per source functor,
a spanning basis of every value F(t) is built by closing the generators
under the category's generator moves (span pass), along with the expansion
of every move image in that basis.  Solving hom(F, G) is then linear
algebra in the unknown generator values: each basis column corresponds to
an explicit vector G(path)(v), and every generator move contributes exact
linear constraints.  Constraints are folded into integer Gram matrices
(x is in the kernel of sum W_i^T W_i iff W_i x = 0 for all i, valid over
the rationals), and the parameter space is cut batch by batch so the large
top-degree data is only built on an already-small parameter space.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Tuple

import numpy as np

from ..partitions import Partition, partitions_of
from ..symrep import JointClassFunction, joint_decompose, representative
from . import linalg
from .functors import MAX_ABS_GUARD, OracleError, SpMat, TruncatedFunctor

Path = Tuple  # ("gen", a) | ("step", genkey, parent_t, parent_idx)

def _colindex(m: SpMat) -> Dict[int, List[Tuple[int, int]]]:
    if m._cidx is None:
        idx: Dict[int, List[Tuple[int, int]]] = {}
        for r, c, v in zip(m.rows, m.cols, m.vals):
            idx.setdefault(int(c), []).append((int(r), int(v)))
        m._cidx = idx
    return m._cidx


def apply_sparse(m: SpMat, col: Dict[int, Fraction]) -> Dict[int, Fraction]:
    """m @ col for a sparse column (exact; includes m's denominator)."""
    out: Dict[int, Fraction] = {}
    idx = _colindex(m)
    for c, cv in col.items():
        for r, v in idx.get(c, ()):
            nv = out.get(r, Fraction(0)) + Fraction(v, m.den) * cv
            if nv:
                out[r] = nv
            elif r in out:
                del out[r]
    return out


@dataclass
class SpanData:
    """Spanning data: per size, a basis of reachable columns with their
    construction paths, and the expansion of every generator move.

    gen_used flags the declared generators that actually entered the
    basis; redundant generators (possible for kernel-style builders) are
    absorbed into the span of the others and carry no free unknowns."""

    F: TruncatedFunctor
    paths: List[List[Path]]
    cbs: List[linalg.ColumnBasis]
    order: List[Tuple[int, int]]
    gen_used: List[bool]
    gammas: Dict[Tuple, List[Dict[int, Fraction]]] = field(default_factory=dict)


def build_span(F: TruncatedFunctor) -> SpanData:
    if F.span_cache is not None:
        return F.span_cache
    N = F.N
    paths: List[List[Path]] = [[] for _ in range(N + 1)]
    vecs: List[List[Dict[int, Fraction]]] = [[] for _ in range(N + 1)]
    cbs = [linalg.ColumnBasis(F.dims[t]) for t in range(N + 1)]
    order: List[Tuple[int, int]] = []

    heap: List[Tuple[int, int, Path, Dict[int, Fraction]]] = []
    counter = itertools.count()

    def push(t: int, path: Path, vec: Dict[int, Fraction]):
        heapq.heappush(heap, (t, next(counter), path, vec))

    for a, (d, col) in enumerate(F.generators):
        push(d, ("gen", a), linalg.sparse_from_dense(col))

    moves_of: Dict[int, List[Tuple]] = {}
    for t in range(N + 1):
        moves: List[Tuple] = []
        if t < N:
            moves.append(("inc", t))
        if t >= 2:
            moves.append(("fold", t - 1))
        moves.extend(("tau", t, i) for i in range(1, t))
        moves_of[t] = moves

    gen_used = [False] * len(F.generators)
    while heap:
        t, _, path, vec = heapq.heappop(heap)
        if not vec:
            continue
        idx, _ = cbs[t].add(vec)
        if idx is None:
            continue
        if path[0] == "gen":
            gen_used[path[1]] = True
        paths[t].append(path)
        vecs[t].append(vec)
        order.append((t, idx))
        for key in moves_of[t]:
            _, t2 = TruncatedFunctor.gen_src_dst(key)
            if F.dims[t2] == 0:
                continue
            img = apply_sparse(F.act[key], vec)
            if img:
                push(t2, ("step", key, t, idx), img)

    for t in range(N + 1):
        if len(paths[t]) != F.dims[t]:
            raise OracleError(
                f"{F.name}: generators span only {len(paths[t])} of "
                f"{F.dims[t]} dimensions at size {t}"
            )

    span = SpanData(F, paths, cbs, order, gen_used)
    for key in F.gen_keys():
        s, t = TruncatedFunctor.gen_src_dst(key)
        span.gammas[key] = [
            cbs[t].expand(apply_sparse(F.act[key], vecs[s][j]))
            for j in range(len(paths[s]))
        ]
    F.span_cache = span
    return span


def _imatmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact matmul; int64 when provably safe, python ints otherwise."""
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if A.dtype == np.int64 and B.dtype == np.int64:
        amax = int(np.abs(A).max(initial=0))
        bmax = int(np.abs(B).max(initial=0))
        if amax * bmax * A.shape[1] < (1 << 62):
            return A @ B
    return A.astype(object) @ B.astype(object)


class NatHomResult:
    """Solution space of natural transformations F -> G at truncation N."""

    def __init__(self, F, G, span, P_cols: List[List[int]], blocks):
        self.F, self.G = F, G
        self.span = span
        # parameter basis as a list of columns (each an int list of len n_v)
        self.P_cols = P_cols
        # blocks: generator index -> (degree, offset), used generators only
        self.blocks = blocks
        self._vcache: Dict[Tuple[int, int], Tuple[np.ndarray, int]] = {}

    @property
    def dimension(self) -> int:
        return len(self.P_cols)

    @property
    def n_v(self) -> int:
        return sum(self.G.dims[d] for d, _ in self.blocks.values())

    def _P(self) -> np.ndarray:
        if not self.P_cols:
            return np.zeros((self.n_v, 0), dtype=np.int64)
        return np.array(self.P_cols, dtype=np.int64).T

    def _v(self, t: int, idx: int) -> Tuple[np.ndarray, int]:
        key = (t, idx)
        if key in self._vcache:
            return self._vcache[key]
        P = self._P()
        # materialize along creation order to avoid deep recursion
        for tt, ii in self.span.order:
            k2 = (tt, ii)
            if k2 in self._vcache:
                continue
            path = self.span.paths[tt][ii]
            if path[0] == "gen":
                d, off = self.blocks[path[1]]
                self._vcache[k2] = (P[off : off + self.G.dims[d]].copy(), 1)
            else:
                _, gkey, pt, pidx = path
                parr, pden = self._vcache[(pt, pidx)]
                m = self.G.act[gkey]
                self._vcache[k2] = (m.apply_dense(parr), pden * m.den)
        return self._vcache[key]

    def solution_matrix(self, k: int, t: int) -> linalg.RationalMatrix:
        """The t-component of the k-th basis solution, as an exact matrix."""
        dF, dG = self.F.dims[t], self.G.dims[t]
        if dF == 0 or dG == 0:
            return linalg.RationalMatrix.zero(dG, dF)
        cb = self.span.cbs[t]
        cols = []
        for coord in range(dF):
            combo = cb.expand({coord: Fraction(1)})
            col = [Fraction(0)] * dG
            for bidx, coeff in combo.items():
                arr, den = self._v(t, bidx)
                vec = arr[:, k]
                for i in range(dG):
                    if vec[i]:
                        col[i] += coeff * Fraction(int(vec[i]), den)
            cols.append(col)
        return linalg.RationalMatrix.from_columns(cols)

    def basis_matrices(self) -> List[List[linalg.RationalMatrix]]:
        return [
            [self.solution_matrix(k, t) for t in range(self.F.N + 1)]
            for k in range(self.dimension)
        ]

    def verify(self) -> None:
        """Exact re-check that every basis solution is natural."""
        for k in range(self.dimension):
            # columns of each eta_t, as Fraction lists
            eta = {}
            for t in range(self.F.N + 1):
                mat = self.solution_matrix(k, t)
                eta[t] = [mat.column(j) for j in range(self.F.dims[t])]
            for key in self.F.gen_keys():
                s, t = TruncatedFunctor.gen_src_dst(key)
                Fg, Gg = self.F.act[key], self.G.act[key]
                fidx, gidx = _colindex(Fg), _colindex(Gg)
                for c in range(self.F.dims[s]):
                    lhs = [Fraction(0)] * self.G.dims[t]
                    for kk, fv in (
                        (r, Fraction(v, Fg.den))
                        for r, v in fidx.get(c, ())
                    ):
                        for i in range(self.G.dims[t]):
                            if eta[t][kk][i]:
                                lhs[i] += fv * eta[t][kk][i]
                    rhs = [Fraction(0)] * self.G.dims[t]
                    col = eta[s][c]
                    for src in range(self.G.dims[s]):
                        if col[src]:
                            for r, v in gidx.get(src, ()):
                                rhs[r] += Fraction(v, Gg.den) * col[src]
                    if lhs != rhs:
                        raise OracleError("solution fails naturality")

    # -- outer characters ---------------------------------------------------

    def _action_matrix(self, g: Tuple[int, ...], h: Tuple[int, ...]):
        p = self.dimension
        n_v = self.n_v
        Pmat = linalg.RationalMatrix(self._P().tolist())
        stacked = [[Fraction(0)] * p for _ in range(n_v)]
        for a, (d, off) in self.blocks.items():
            w = self.F.generators[a][1]
            gw = self.F.outer_matrix(g, d)
            vec = gw.apply_vec(np.asarray(w, dtype=np.int64))
            combo = self.span.cbs[d].expand(
                {i: Fraction(int(v), gw.den) for i, v in enumerate(vec) if v}
            )
            hmat = self.G.outer_matrix(h, d)
            hidx = _colindex(hmat)
            dG = self.G.dims[d]
            block = [[Fraction(0)] * p for _ in range(dG)]
            for bidx, coeff in combo.items():
                arr, den = self._v(d, bidx)
                for i in range(dG):
                    for kk in range(p):
                        if arr[i, kk]:
                            block[i][kk] += coeff * Fraction(int(arr[i, kk]), den)
            # apply rho_G(h)
            for c in range(dG):
                row_has = any(block[c][kk] for kk in range(p))
                if not row_has:
                    continue
                for r, v in hidx.get(c, ()):
                    fv = Fraction(v, hmat.den)
                    for kk in range(p):
                        if block[c][kk]:
                            stacked[off + r][kk] += fv * block[c][kk]
        X_cols = []
        for j in range(p):
            rhs = [stacked[i][j] for i in range(n_v)]
            X_cols.append(Pmat.solve(rhs))
        return linalg.RationalMatrix.from_columns(X_cols)

    def outer_character(self) -> JointClassFunction:
        s_deg = self.F.outer_n
        t_deg = self.G.outer_n
        values: Dict[Tuple[Partition, Partition], int] = {}
        for alpha in partitions_of(s_deg):
            g = representative(alpha)
            for beta in partitions_of(t_deg):
                h = representative(beta)
                if self.dimension == 0:
                    values[(alpha, beta)] = 0
                    continue
                A = self._action_matrix(g, h)
                tr = sum((A.data[i][i] for i in range(A.nrows)), Fraction(0))
                assert tr.denominator == 1
                values[(alpha, beta)] = int(tr)
        return JointClassFunction(s_deg, t_deg, values)

    def outer_bimodule(self) -> Dict[Tuple[Partition, Partition], int]:
        return joint_decompose(self.outer_character())


def nat_hom(F: TruncatedFunctor, G: TruncatedFunctor) -> NatHomResult:
    """Exact solution space of natural transformations F -> G."""
    if F.N != G.N:
        raise OracleError("truncations differ")
    span = build_span(F)
    blocks: Dict[int, Tuple[int, int]] = {}
    off = 0
    for a, (d, _) in enumerate(F.generators):
        if span.gen_used[a]:
            blocks[a] = (d, off)
            off += G.dims[d]
    n_v = off
    if n_v == 0:
        return NatHomResult(F, G, span, [], blocks)

    P = np.eye(n_v, dtype=np.int64)
    vcache: Dict[Tuple[int, int], Tuple[np.ndarray, int]] = {}

    def v_col(t: int, idx: int) -> Tuple[np.ndarray, int]:
        key = (t, idx)
        got = vcache.get(key)
        if got is not None:
            return got
        for tt, ii in span.order:
            k2 = (tt, ii)
            if k2 in vcache:
                continue
            path = span.paths[tt][ii]
            if path[0] == "gen":
                d, o = blocks[path[1]]
                vcache[k2] = (P[o : o + G.dims[d]].copy(), 1)
            else:
                _, gkey, pt, pidx = path
                parr, pden = vcache[(pt, pidx)]
                m = G.act[gkey]
                vcache[k2] = (m.apply_dense(parr), pden * m.den)
            if k2 == key:
                break
        return vcache[key]

    def cut(kernel_rows: List[List[int]]):
        nonlocal P, vcache
        if not kernel_rows:
            P = np.zeros((n_v, 0), dtype=np.int64)
            vcache = {k: (a[:, :0], d) for k, (a, d) in vcache.items()}
            return
        K = np.array(kernel_rows, dtype=np.int64).T
        P = _as_int64(_imatmul(P, K))
        vcache = {k: (_as_int64(_imatmul(a, K)), d) for k, (a, d) in vcache.items()}

    keys = sorted(
        F.gen_keys(),
        key=lambda k: (max(TruncatedFunctor.gen_src_dst(k)), k[0] != "tau"),
    )
    for key in keys:
        s, t = TruncatedFunctor.gen_src_dst(key)
        if len(span.paths[s]) == 0 or G.dims[t] == 0:
            continue
        if P.shape[1] == 0:
            break
        p = P.shape[1]
        gram: np.ndarray | None = None
        gammas = span.gammas[key]
        m = G.act[key]
        for j in range(len(span.paths[s])):
            combo = gammas[j]
            sarr, sden = v_col(s, j)
            rhs = m.apply_dense(sarr)
            dens = [m.den * sden] + [
                coeff.denominator * v_col(t, i)[1] for i, coeff in combo.items()
            ]
            L = 1
            for d in dens:
                L = lcm(L, d)
            W = rhs * (-(L // (m.den * sden)))
            overflow = False
            for i, coeff in combo.items():
                arr_i, den_i = v_col(t, i)
                scale = coeff.numerator * (L // (coeff.denominator * den_i))
                if abs(scale) > MAX_ABS_GUARD:
                    overflow = True
                    break
                W = W + arr_i * scale
            if overflow or (W.size and np.abs(W).max() > MAX_ABS_GUARD):
                # rebuild in exact object arithmetic
                W = rhs.astype(object) * (-(L // (m.den * sden)))
                for i, coeff in combo.items():
                    arr_i, den_i = v_col(t, i)
                    scale = coeff.numerator * (L // (coeff.denominator * den_i))
                    W = W + arr_i.astype(object) * scale
            block = _gram(W)
            gram = block if gram is None else _gram_add(gram, block)
        if gram is None:
            continue
        gram_rows = [[int(x) for x in row] for row in np.atleast_2d(gram)]
        if all(all(x == 0 for x in row) for row in gram_rows):
            continue
        ker = linalg.kernel_basis(gram_rows, p)
        if len(ker) < p:
            cut(ker)

    return NatHomResult(
        F, G, span, [list(map(int, P[:, j])) for j in range(P.shape[1])], blocks
    )


def _gram(W: np.ndarray) -> np.ndarray:
    if W.dtype == np.int64:
        wmax = int(np.abs(W).max(initial=0))
        if wmax * wmax * W.shape[0] < (1 << 62):
            return W.T @ W
        W = W.astype(object)
    return W.T @ W


def _gram_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == np.int64 and b.dtype == np.int64:
        amax = int(np.abs(a).max(initial=0)) + int(np.abs(b).max(initial=0))
        if amax < (1 << 62):
            return a + b
    return a.astype(object) + b.astype(object)


def _as_int64(A: np.ndarray) -> np.ndarray:
    if A.dtype == np.int64:
        return A
    mx = max((abs(int(x)) for x in A.flat), default=0)
    if mx > MAX_ABS_GUARD:
        raise OracleError("parameter magnitude guard tripped")
    return A.astype(np.int64)


def nat_hom_dim(F: TruncatedFunctor, G: TruncatedFunctor) -> int:
    return nat_hom(F, G).dimension


def nat_hom_dense_dim(F: TruncatedFunctor, G: TruncatedFunctor) -> int:
    """Reference solver over the raw matrix unknowns (tiny inputs only)."""
    N = F.N
    offsets, total = [], 0
    for t in range(N + 1):
        offsets.append(total)
        total += F.dims[t] * G.dims[t]
    rows = []
    for key in F.gen_keys():
        s, t = TruncatedFunctor.gen_src_dst(key)
        Fg = F.act[key].to_fraction_rows()
        Gg = G.act[key].to_fraction_rows()
        for r in range(G.dims[t]):
            for c in range(F.dims[s]):
                row = [Fraction(0)] * total
                for k in range(F.dims[t]):
                    if Fg[k][c]:
                        row[offsets[t] + r * F.dims[t] + k] += Fg[k][c]
                for k in range(G.dims[s]):
                    if Gg[r][k]:
                        row[offsets[s] + k * F.dims[s] + c] -= Gg[r][k]
                if any(row):
                    rows.append(row)
    if not rows:
        return total
    return total - linalg.rank(rows)
