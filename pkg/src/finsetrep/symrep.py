"""Exact character theory of symmetric groups.

Everything is computed over the rationals: character tables by the
Murnaghan-Nakayama recursion, inner products and decompositions into
irreducibles, induction products over Young subgroups (the degreewise Day
convolution), pointwise (Kronecker) products, sign twists, and the joint
characters of symmetric-group pairs acting on sets of maps between finite
sets.  Convention: the partition (1^n) indexes the sign representation.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterable, Tuple

import numpy as np

from .partitions import Partition, one_column, one_row, partitions_of

_DEGREE_BOUND = 12
_table_lock = threading.Lock()
_table_cache: Dict[int, Dict[Tuple[Partition, Partition], int]] = {}


class DegreeBoundError(ValueError):
    """Raised when a symmetric-group degree exceeds the configured bound."""


def degree_bound() -> int:
    return _DEGREE_BOUND


def set_degree_bound(n: int) -> None:
    global _DEGREE_BOUND
    _DEGREE_BOUND = int(n)


def centralizer_order(mu: Partition) -> int:
    """z_mu = prod_j j^{m_j} m_j! for cycle type mu."""
    z = 1
    mult: Dict[int, int] = {}
    for p in mu:
        mult[p] = mult.get(p, 0) + 1
    for j, m in mult.items():
        z *= j**m * factorial(m)
    return z


def class_size(mu: Partition) -> int:
    """Number of permutations of cycle type mu in S_{|mu|}."""
    return factorial(mu.size) // centralizer_order(mu)


def _beta_set(lam: Partition) -> Tuple[int, ...]:
    k = len(lam)
    return tuple(lam[i] + k - 1 - i for i in range(k))


def _partition_from_beta(beta: Iterable[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    k = len(beta)
    parts = [beta[i] - (k - 1 - i) for i in range(k)]
    return Partition(tuple(p for p in parts if p > 0))


@lru_cache(maxsize=None)
def _mn_value(lam: Partition, mu: Partition) -> int:
    """Murnaghan-Nakayama: chi_lam evaluated on cycle type mu."""
    if lam.size == 0:
        return 1
    ell = mu[0]
    rest = Partition(mu.parts[1:])
    beta = set(_beta_set(lam))
    total = 0
    for b in beta:
        if b - ell >= 0 and (b - ell) not in beta:
            # sign: number of beta elements strictly between b-ell and b
            height = sum(1 for c in beta if b - ell < c < b)
            new_beta = (beta - {b}) | {b - ell}
            total += (-1) ** height * _mn_value(_partition_from_beta(new_beta), rest)
    return total


def character_table(n: int) -> Dict[Tuple[Partition, Partition], int]:
    """chi_lam(mu) for all lam, mu |- n.  First orthogonality holds exactly."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > _DEGREE_BOUND:
        raise DegreeBoundError(f"degree {n} exceeds configured bound {_DEGREE_BOUND}")
    with _table_lock:
        if n not in _table_cache:
            parts = partitions_of(n)
            _table_cache[n] = {
                (lam, mu): _mn_value(lam, mu) for lam in parts for mu in parts
            }
        return _table_cache[n]


def irr_dim(lam: Partition) -> int:
    """dim S_lam = chi_lam(1^n)."""
    return character_table(lam.size)[(lam, one_column(lam.size))]


@dataclass(frozen=True)
class ClassFunction:
    """A rational-valued function on the cycle types of a fixed S_n."""

    n: int
    values: Dict[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        expected = set(partitions_of(self.n))
        given = set(self.values)
        if given - expected:
            raise ValueError(f"unexpected cycle types: {given - expected}")
        for mu in expected - given:
            self.values[mu] = Fraction(0)

    def __call__(self, mu: Partition) -> Fraction:
        return self.values[mu]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        assert self.n == other.n
        return ClassFunction(
            self.n, {mu: self.values[mu] + other.values[mu] for mu in self.values}
        )

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            assert self.n == other.n
            return ClassFunction(
                self.n, {mu: self.values[mu] * other.values[mu] for mu in self.values}
            )
        return ClassFunction(self.n, {mu: v * other for mu, v in self.values.items()})

    __rmul__ = __mul__


@dataclass
class IrrDecomposition:
    """Multiplicities of irreducibles in a (virtual) S_n-class."""

    n: int
    mults: Dict[Partition, object] = field(default_factory=dict)

    def __post_init__(self):
        self.mults = {lam: m for lam, m in self.mults.items() if m}
        for lam in self.mults:
            if lam.size != self.n:
                raise ValueError(f"{lam} is not a partition of {self.n}")

    @property
    def is_virtual(self) -> bool:
        """True when some multiplicity is negative or non-integral."""
        return any(
            m < 0 or (isinstance(m, Fraction) and m.denominator != 1)
            for m in self.mults.values()
        )

    def __getitem__(self, lam: Partition):
        return self.mults.get(lam, 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IrrDecomposition)
            and self.n == other.n
            and self.mults == other.mults
        )

    def __add__(self, other: "IrrDecomposition") -> "IrrDecomposition":
        assert self.n == other.n
        merged = dict(self.mults)
        for lam, m in other.mults.items():
            merged[lam] = merged.get(lam, 0) + m
        return IrrDecomposition(self.n, merged)

    def scale(self, c) -> "IrrDecomposition":
        return IrrDecomposition(self.n, {lam: c * m for lam, m in self.mults.items()})

    def dim(self) -> int:
        return sum(m * irr_dim(lam) for lam, m in self.mults.items())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mults": [
                {"partition": lam.to_json(), "mult": m}
                for lam, m in sorted(self.mults.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "IrrDecomposition":
        return cls(
            data["n"],
            {Partition(e["partition"]): e["mult"] for e in data["mults"]},
        )

    @classmethod
    def irreducible(cls, lam: Partition) -> "IrrDecomposition":
        return cls(lam.size, {lam: 1})


def trivial_class(n: int) -> IrrDecomposition:
    return IrrDecomposition.irreducible(one_row(n))


def sign_class(n: int) -> IrrDecomposition:
    return IrrDecomposition.irreducible(one_column(n))


def reconstruct(dec: IrrDecomposition) -> ClassFunction:
    """Class function of a virtual decomposition."""
    table = character_table(dec.n)
    values = {}
    for mu in partitions_of(dec.n):
        values[mu] = Fraction(
            sum(m * table[(lam, mu)] for lam, m in dec.mults.items())
        )
    return ClassFunction(dec.n, values)


def decompose(f: ClassFunction) -> IrrDecomposition:
    """Inner-product decomposition <f, chi_lam> over all lam |- n.

    Negative or non-integral multiplicities are legal (virtual classes) and
    are reported via IrrDecomposition.is_virtual rather than as an error.
    """
    n = f.n
    table = character_table(n)
    order = factorial(n)
    mults = {}
    for lam in partitions_of(n):
        val = sum(class_size(mu) * f(mu) * table[(lam, mu)] for mu in partitions_of(n))
        val = Fraction(val, order)
        if val:
            mults[lam] = int(val) if val.denominator == 1 else val
    return IrrDecomposition(n, mults)


def _split_multiset(parts: Tuple[int, ...], target: int) -> Dict[Tuple[int, ...], int]:
    """Distinct submultisets of `parts` with the given sum, each with the
    number of cycle-subsets realizing it (cycles of equal length count as
    distinguishable)."""
    return {
        sub: ways
        for sub, ways in _split_multiset_all(parts).items()
        if sum(sub) == target
    }


def induction_product(a: IrrDecomposition, b: IrrDecomposition) -> IrrDecomposition:
    """Induced character of the external product over S_m x S_n <= S_{m+n}.

    Bilinear over virtual inputs; this is the degreewise Day convolution of
    FB-module classes, and agrees with the Littlewood-Richardson rule.
    """
    m, n = a.n, b.n
    if m + n > _DEGREE_BOUND:
        raise DegreeBoundError(f"degree {m + n} exceeds bound {_DEGREE_BOUND}")
    fa, fb = reconstruct(a), reconstruct(b)
    values = {}
    for gamma in partitions_of(m + n):
        z_gamma = centralizer_order(gamma)
        total = Fraction(0)
        for alpha_parts, ways in _split_multiset(gamma.parts, m).items():
            alpha = Partition(tuple(sorted(alpha_parts, reverse=True)))
            beta_list = list(gamma.parts)
            for p in alpha_parts:
                beta_list.remove(p)
            beta = Partition(tuple(sorted(beta_list, reverse=True)))
            # ways counts distinct cycle-subsets realizing alpha; converting
            # to the z-weighted formula: sum over subsets equals
            # z_gamma/(z_alpha*z_beta) summed over distinct (alpha, beta).
            total += ways * fa(alpha) * fb(beta)
        # ways-accounting above already equals z_gamma/(z_alpha z_beta):
        values[gamma] = total
    return decompose(ClassFunction(m + n, values))


def pointwise_product(a: IrrDecomposition, b: IrrDecomposition) -> IrrDecomposition:
    """Kronecker (internal tensor) product of S_n-classes."""
    assert a.n == b.n
    return decompose(reconstruct(a) * reconstruct(b))


def sign_twist(a: IrrDecomposition) -> IrrDecomposition:
    """Tensor with the sign character: S_lam -> S_{lam'}."""
    return IrrDecomposition(a.n, {lam.conjugate(): m for lam, m in a.mults.items()})


def sgn_coinvariants(a: IrrDecomposition) -> int:
    """Multiplicity of S_(1^k); equals dim sgn_k (x)_{S_k} M for genuine M."""
    return a[one_column(a.n)]


# ---------------------------------------------------------------------------
# Joint characters of map sets


def representative(mu: Partition) -> Tuple[int, ...]:
    """A permutation of cycle type mu on {0..n-1}, as an image tuple."""
    perm = []
    start = 0
    for c in mu:
        perm.extend([start + (i + 1) % c for i in range(c)])
        start += c
    return tuple(perm)


@dataclass(frozen=True)
class JointClassFunction:
    """Character of S_s^op x S_t acting on a set of maps s -> t."""

    s: int
    t: int
    values: Dict[Tuple[Partition, Partition], int]

    def value(self, alpha: Partition, beta: Partition) -> int:
        return self.values[(alpha, beta)]

    def total(self) -> int:
        """Value at the identity pair: the number of maps counted."""
        return self.values[(one_column(self.s), one_column(self.t))]


def _fix_count(ell: int, beta: Partition) -> int:
    """Fixed points of tau^ell for tau of cycle type beta."""
    return sum(d for d in beta if ell % d == 0)


def all_maps_character(s: int, t: int) -> JointClassFunction:
    """Fixed maps f: s -> t under f |-> tau o f o sigma^{-1}, by cycle type."""
    values = {}
    for alpha in partitions_of(s):
        for beta in partitions_of(t):
            v = 1
            for c in alpha:
                v *= _fix_count(c, beta)
            values[(alpha, beta)] = v
    return JointClassFunction(s, t, values)


def surjections_character(s: int, t: int) -> JointClassFunction:
    """Fixed surjections, by inclusion-exclusion over tau-invariant images.

    A fixed map has tau-invariant image, and tau-invariant subsets are
    unions of cycles of tau; Moebius inversion over that boolean lattice
    turns all-map counts into surjection counts.
    """
    values = {}
    for alpha in partitions_of(s):
        for beta in partitions_of(t):
            total = 0
            n_cycles = len(beta)
            for sub_parts, ways in _split_multiset_all(beta.parts).items():
                sub = Partition(tuple(sorted(sub_parts, reverse=True)))
                v = 1
                for c in alpha:
                    v *= _fix_count(c, sub)
                total += ways * (-1) ** (n_cycles - len(sub_parts)) * v
            values[(alpha, beta)] = total
    return JointClassFunction(s, t, values)


def _split_multiset_all(parts: Tuple[int, ...]) -> Dict[Tuple[int, ...], int]:
    """All distinct submultisets of `parts` with their subset counts."""
    values = sorted(set(parts), reverse=True)
    counts = {v: parts.count(v) for v in values}
    result: Dict[Tuple[int, ...], int] = {(): 1}
    for v in values:
        new: Dict[Tuple[int, ...], int] = {}
        for chosen, ways in result.items():
            for j in range(counts[v] + 1):
                key = chosen + (v,) * j
                new[key] = new.get(key, 0) + ways * comb(counts[v], j)
        result = new
    return result


def enumerated_character(
    s: int, t: int, surjective_only: bool, injective_only: bool = False
) -> JointClassFunction:
    """Joint character by explicit enumeration of all maps s -> t.

    Independent of the counting formulas; intended as their oracle at
    desk scale (t**s up to a few hundred thousand).
    """
    if t**s > 500_000:
        raise ValueError(f"enumeration of {t}^{s} maps refused")
    rows = list(itertools.product(range(t), repeat=s))
    maps = np.array(rows, dtype=np.int64).reshape(len(rows), s)
    keep = np.ones(len(maps), dtype=bool)
    for i, row in enumerate(rows):
        if surjective_only and len(set(row)) != t:
            keep[i] = False
        if injective_only and len(set(row)) != len(row):
            keep[i] = False
    maps = maps[keep]
    values = {}
    for alpha in partitions_of(s):
        sigma = np.array(representative(alpha), dtype=np.int64)
        for beta in partitions_of(t):
            tau = np.array(representative(beta), dtype=np.int64)
            if s == 0:
                values[(alpha, beta)] = len(maps)
                continue
            # fixed iff f o sigma == tau o f
            lhs = maps[:, sigma]
            rhs = tau[maps]
            values[(alpha, beta)] = int(np.all(lhs == rhs, axis=1).sum())
    return JointClassFunction(s, t, values)


def perm_character_maps(
    s: int, t: int, surjective_only: bool, cross_check: bool = True
) -> JointClassFunction:
    """Joint character of S_s^op x S_t on maps (or surjections) s -> t.

    Surjection characters are always computed by inclusion-exclusion from
    the all-maps character; when enumeration is affordable the two routes
    are asserted equal.
    """
    result = surjections_character(s, t) if surjective_only else all_maps_character(s, t)
    if cross_check and t**s <= 100_000:
        enum = enumerated_character(s, t, surjective_only)
        if enum.values != result.values:
            raise AssertionError(
                f"map-character mismatch at s={s}, t={t}, surj={surjective_only}"
            )
    return result


def joint_decompose(
    joint: JointClassFunction,
) -> Dict[Tuple[Partition, Partition], int]:
    """Decompose a joint character into sum of S_alpha (x) S_beta."""
    s, t = joint.s, joint.t
    table_s, table_t = character_table(s), character_table(t)
    order = factorial(s) * factorial(t)
    out = {}
    for lam in partitions_of(s):
        for mu in partitions_of(t):
            val = sum(
                class_size(a)
                * class_size(b)
                * joint.values[(a, b)]
                * table_s[(lam, a)]
                * table_t[(mu, b)]
                for a in partitions_of(s)
                for b in partitions_of(t)
            )
            val = Fraction(val, order)
            if val:
                if val.denominator != 1:
                    raise AssertionError("joint character is not a genuine character")
                out[(lam, mu)] = int(val)
    return out


def contract_left_sign(
    bimod: Dict[Tuple[Partition, Partition], int], k: int, t: int
) -> IrrDecomposition:
    """Multiplicity-space class sgn_k (x)_{S_k} M for a (S_k, S_t)-bimodule
    given by irreducible bidecomposition: keep terms with left factor (1^k)."""
    mults = {}
    for (lam, mu), c in bimod.items():
        if lam == one_column(k):
            mults[mu] = mults.get(mu, 0) + c
    return IrrDecomposition(t, mults)


# ---------------------------------------------------------------------------
# Schur polynomial dimensions


def schur_dim(lam: Partition, m: int) -> int:
    """dim S_lam(k^m), via the place-permutation character; cross-checked
    against a direct count of semistandard tableaux."""
    t = lam.size
    if t == 0:
        return 1
    table = character_table(t)
    val = sum(
        class_size(mu) * table[(lam, mu)] * m ** len(mu) for mu in partitions_of(t)
    )
    dim = Fraction(val, factorial(t))
    assert dim.denominator == 1
    dim = int(dim)
    if t <= 6 and m <= 7:
        assert dim == _ssyt_count(lam, m), (lam, m)
    return dim


def _ssyt_count(lam: Partition, m: int) -> int:
    """Count semistandard Young tableaux of shape lam with entries <= m."""
    cells = list(lam.cells())

    def rec(idx: int, filling: Dict[Tuple[int, int], int]) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        lo = 1
        if (i, j - 1) in filling:
            lo = max(lo, filling[(i, j - 1)])
        if (i - 1, j) in filling:
            lo = max(lo, filling[(i - 1, j)] + 1)
        total = 0
        for v in range(lo, m + 1):
            filling[(i, j)] = v
            total += rec(idx + 1, filling)
        filling.pop((i, j), None)
        return total

    return rec(0, {})
