"""Grothendieck groups of FB-modules and FB-bimodules, truncated by degree.

A virtual FB-module class is a formal integer combination of partitions of
size at most a truncation degree N; a bimodule class is indexed by pairs of
partitions.  The key operations are Day convolution (degreewise induction
product), the pointwise product, the alternating sign series S(k), the hook
series H(k), and the convolution inverse of - (.) triv.

Sign convention: S(k) = sum_{t >= 0} (-1)^t [sgn_{k+t}].  This is the
convention forced by S(k) + S(k+1) = [sgn_k] and by S(k)(k) = [sgn_k];
see the decisions ledger for the discrepancy it resolves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Tuple

from .partitions import Partition, hook, one_column, one_row
from .symrep import IrrDecomposition, induction_product, pointwise_product


@lru_cache(maxsize=None)
def _induct_irr(lam: Partition, mu: Partition) -> IrrDecomposition:
    return induction_product(
        IrrDecomposition.irreducible(lam), IrrDecomposition.irreducible(mu)
    )


@dataclass
class VirtualFB:
    """Sparse integer combination of partitions of size <= trunc."""

    trunc: int
    coeffs: Dict[Partition, int] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {lam: int(c) for lam, c in self.coeffs.items() if c}
        for lam in self.coeffs:
            if lam.size > self.trunc:
                raise ValueError(f"{lam} exceeds truncation {self.trunc}")

    def __getitem__(self, lam: Partition) -> int:
        return self.coeffs.get(lam, 0)

    def degree(self, n: int) -> IrrDecomposition:
        return IrrDecomposition(
            n, {lam: c for lam, c in self.coeffs.items() if lam.size == n}
        )

    def degrees(self) -> range:
        return range(self.trunc + 1)

    def truncate(self, new_trunc: int) -> "VirtualFB":
        return VirtualFB(
            new_trunc,
            {lam: c for lam, c in self.coeffs.items() if lam.size <= new_trunc},
        )

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def __add__(self, other: "VirtualFB") -> "VirtualFB":
        t = min(self.trunc, other.trunc)
        merged: Dict[Partition, int] = {}
        for src in (self.coeffs, other.coeffs):
            for lam, c in src.items():
                if lam.size <= t:
                    merged[lam] = merged.get(lam, 0) + c
        return VirtualFB(t, merged)

    def __sub__(self, other: "VirtualFB") -> "VirtualFB":
        return self + other.scale(-1)

    def scale(self, c: int) -> "VirtualFB":
        return VirtualFB(self.trunc, {lam: c * v for lam, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VirtualFB)
            and self.trunc == other.trunc
            and self.coeffs == other.coeffs
        )

    def dim_at(self, n: int) -> int:
        return self.degree(n).dim()

    def to_json(self) -> dict:
        return {
            "trunc": self.trunc,
            "coeffs": [
                {"partition": lam.to_json(), "coeff": c}
                for lam, c in sorted(self.coeffs.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "VirtualFB":
        return cls(
            data["trunc"],
            {Partition(e["partition"]): e["coeff"] for e in data["coeffs"]},
        )

    @classmethod
    def from_decomposition(cls, dec: IrrDecomposition, trunc: int) -> "VirtualFB":
        return cls(trunc, dict(dec.mults))


def unit(trunc: int) -> VirtualFB:
    """[k_0] = [triv_0], the unit of Day convolution."""
    return VirtualFB(trunc, {Partition(()): 1})


def triv_class(trunc: int) -> VirtualFB:
    """[triv]: the trivial representation in every degree 0..trunc."""
    return VirtualFB(trunc, {one_row(n): 1 for n in range(trunc + 1)})


def sgn_class(k: int, trunc: int) -> VirtualFB:
    """[sgn_k] as a class concentrated in degree k."""
    return VirtualFB(trunc, {one_column(k): 1})


def day(a: VirtualFB, b: VirtualFB) -> VirtualFB:
    """Day convolution: degreewise bilinear extension of the induction
    product; trunc = min(a.trunc, b.trunc)."""
    t = min(a.trunc, b.trunc)
    out: Dict[Partition, int] = {}
    for lam, c in a.coeffs.items():
        for mu, d in b.coeffs.items():
            if lam.size + mu.size > t:
                continue
            prod = _induct_irr(lam, mu)
            for nu, m in prod.mults.items():
                out[nu] = out.get(nu, 0) + c * d * m
    return VirtualFB(t, out)


def pointwise(a: VirtualFB, b: VirtualFB) -> VirtualFB:
    """Degreewise Kronecker product of classes."""
    t = min(a.trunc, b.trunc)
    out: Dict[Partition, int] = {}
    for n in range(t + 1):
        an, bn = a.degree(n), b.degree(n)
        if not an.mults or not bn.mults:
            continue
        for nu, m in pointwise_product(an, bn).mults.items():
            out[nu] = out.get(nu, 0) + m
    return VirtualFB(t, out)


def series_S(k: int, trunc: int) -> VirtualFB:
    """S(k) = sum_{t>=0, k+t<=trunc} (-1)^t [sgn_{k+t}]."""
    if k > trunc:
        raise ValueError(f"k={k} exceeds truncation {trunc}")
    return VirtualFB(
        trunc, {one_column(k + t): (-1) ** t for t in range(trunc - k + 1)}
    )


def series_H(k: int, trunc: int) -> VirtualFB:
    """H(0) = [k_0]; H(k) = sum_{n=k}^{trunc} [S_(n-k+1, 1^(k-1))] for k > 0."""
    if k > trunc:
        raise ValueError(f"k={k} exceeds truncation {trunc}")
    if k == 0:
        return unit(trunc)
    return VirtualFB(trunc, {hook(n, k): 1 for n in range(k, trunc + 1)})


def invert_triv(a: VirtualFB) -> VirtualFB:
    """Day convolution with S(0): inverts - (.) [triv] up to truncation."""
    return day(a, series_S(0, a.trunc))


@dataclass
class VirtualFBBimod:
    """Sparse integer combination of partition pairs.

    Key convention: coefficient keys are (left, right) where `left` indexes
    the FB^op variable and `right` the FB variable.  For the surjection
    bimodule kFS the left slot is the surjection's domain; in hom-space
    classes hom(P_bullet, X_star) the left slot carries the *-variable and
    the right slot the bullet-variable.
    """

    trunc_left: int
    trunc_right: int
    coeffs: Dict[Tuple[Partition, Partition], int] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: int(c) for k, c in self.coeffs.items() if c}
        for lam, mu in self.coeffs:
            if lam.size > self.trunc_left or mu.size > self.trunc_right:
                raise ValueError(f"({lam},{mu}) exceeds truncations")

    def __getitem__(self, key: Tuple[Partition, Partition]) -> int:
        return self.coeffs.get(key, 0)

    def __add__(self, other: "VirtualFBBimod") -> "VirtualFBBimod":
        tl = min(self.trunc_left, other.trunc_left)
        tr = min(self.trunc_right, other.trunc_right)
        merged: Dict[Tuple[Partition, Partition], int] = {}
        for src in (self.coeffs, other.coeffs):
            for (lam, mu), c in src.items():
                if lam.size <= tl and mu.size <= tr:
                    key = (lam, mu)
                    merged[key] = merged.get(key, 0) + c
        return VirtualFBBimod(tl, tr, merged)

    def __sub__(self, other: "VirtualFBBimod") -> "VirtualFBBimod":
        return self + other.scale(-1)

    def scale(self, c: int) -> "VirtualFBBimod":
        return VirtualFBBimod(
            self.trunc_left, self.trunc_right, {k: c * v for k, v in self.coeffs.items()}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VirtualFBBimod)
            and self.trunc_left == other.trunc_left
            and self.trunc_right == other.trunc_right
            and self.coeffs == other.coeffs
        )

    def bidegree(self, a: int, b: int) -> Dict[Tuple[Partition, Partition], int]:
        """Coefficients with left size a and right size b."""
        return {
            (lam, mu): c
            for (lam, mu), c in self.coeffs.items()
            if lam.size == a and mu.size == b
        }

    def dim_at(self, a: int, b: int) -> int:
        from .symrep import irr_dim

        return sum(
            c * irr_dim(lam) * irr_dim(mu) for (lam, mu), c in self.bidegree(a, b).items()
        )

    def left_class(self, b_partition: Partition) -> VirtualFB:
        """The left-variable class paired with a fixed right partition."""
        return VirtualFB(
            self.trunc_left,
            {lam: c for (lam, mu), c in self.coeffs.items() if mu == b_partition},
        )

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def to_json(self) -> dict:
        return {
            "trunc_left": self.trunc_left,
            "trunc_right": self.trunc_right,
            "coeffs": [
                {"left": lam.to_json(), "right": mu.to_json(), "coeff": c}
                for (lam, mu), c in sorted(self.coeffs.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "VirtualFBBimod":
        return cls(
            data["trunc_left"],
            data["trunc_right"],
            {
                (Partition(e["left"]), Partition(e["right"])): e["coeff"]
                for e in data["coeffs"]
            },
        )


def external_product(a: VirtualFB, b: VirtualFB) -> VirtualFBBimod:
    """a boxtimes b: coefficients multiply, a in the left slot."""
    return VirtualFBBimod(
        a.trunc,
        b.trunc,
        {
            (lam, mu): c * d
            for lam, c in a.coeffs.items()
            for mu, d in b.coeffs.items()
        },
    )


def bimod_convolve_left(a: VirtualFBBimod, b: VirtualFB) -> VirtualFBBimod:
    """Day convolution in the left (FB^op) variable, right carried along."""
    tl = min(a.trunc_left, b.trunc)
    out: Dict[Tuple[Partition, Partition], int] = {}
    for (lam, mu), c in a.coeffs.items():
        for nu, d in b.coeffs.items():
            if lam.size + nu.size > tl or mu.size > a.trunc_right:
                continue
            prod = _induct_irr(lam, nu)
            for rho, m in prod.mults.items():
                key = (rho, mu)
                out[key] = out.get(key, 0) + c * d * m
    return VirtualFBBimod(tl, a.trunc_right, out)


def bimod_convolve_right(a: VirtualFBBimod, b: VirtualFB) -> VirtualFBBimod:
    """Day convolution in the right (FB) variable, left carried along."""
    tr = min(a.trunc_right, b.trunc)
    out: Dict[Tuple[Partition, Partition], int] = {}
    for (lam, mu), c in a.coeffs.items():
        for nu, d in b.coeffs.items():
            if mu.size + nu.size > tr:
                continue
            prod = _induct_irr(mu, nu)
            for rho, m in prod.mults.items():
                key = (lam, rho)
                out[key] = out.get(key, 0) + c * d * m
    return VirtualFBBimod(a.trunc_left, tr, out)
