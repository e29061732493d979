"""Recover defining equations of loci in parameter space by interpolation.

The vanishing system of a point set at a given degree is the kernel of the
points-by-monomials evaluation matrix; oversampled draws guard against
overfitting to isolated solutions, and tangent-space dimension filters
transversally-cut isolated points out of the sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import exactla
from .errors import BudgetExceeded, ContextMismatch, InsufficientPoints, NotOnVariety
from .fields import FieldCtx, FieldElement, parse_element
from .poly import MultiPoly, monomial_basis
from .rng import split

DEFAULT_COLUMN_CAP = 20_000


@dataclass
class PointSet:
    ctx: FieldCtx
    points: list[tuple]
    dedup: bool = True

    def __post_init__(self):
        pts = []
        seen = set()
        for pt in self.points:
            tup = tuple(self.ctx.element(v) for v in pt)
            key = tuple(v.coeffs for v in tup)
            if self.dedup:
                if key in seen:
                    continue
                seen.add(key)
            pts.append(tup)
        self.points = pts

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def from_text(cls, ctx: FieldCtx, text: str, dedup: bool = True) -> "PointSet":
        pts = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            pts.append(tuple(parse_element(ctx, tok) for tok in line.split()))
        return cls(ctx, pts, dedup)


@dataclass
class VanishingSystem:
    ctx: FieldCtx
    nvars: int
    degree: int
    homogeneous: bool
    monomials: list[tuple[int, ...]]
    basis: list[list]  # coefficient vectors over the field, one per polynomial

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def polys(self) -> list[MultiPoly]:
        out = []
        for vec in self.basis:
            terms = {m: c for m, c in zip(self.monomials, vec)}
            out.append(MultiPoly(self.nvars, self.ctx, terms))
        return out

    def contains(self, f: MultiPoly) -> bool:
        """Is f (over the same field, same degree bound) in the span?"""
        vec = [f.terms.get(m, 0) for m in self.monomials]
        extra = set(f.terms) - set(self.monomials)
        if extra:
            return False
        return exactla.in_row_span(self.basis, vec, self.ctx)


def _evaluation_rows(points: Sequence[tuple], monomials, ctx: FieldCtx):
    rows = []
    if ctx.k == 1:
        p = ctx.p
        for pt in points:
            vals = [v.coeffs[0] for v in pt]
            maxdeg = max((max(m) for m in monomials), default=0)
            pows = [[1] * (maxdeg + 1) for _ in vals]
            for i, v in enumerate(vals):
                for e in range(1, maxdeg + 1):
                    pows[i][e] = pows[i][e - 1] * v % p
            row = []
            for m in monomials:
                acc = 1
                for i, e in enumerate(m):
                    if e:
                        acc = acc * pows[i][e] % p
                row.append(acc)
            rows.append(row)
    else:
        for pt in points:
            row = []
            for m in monomials:
                acc = ctx.one()
                for v, e in zip(pt, m):
                    if e:
                        acc = acc * v**e
                row.append(acc)
            rows.append(row)
    return rows


def vanishing_system(
    pts: PointSet,
    degree: int,
    homogeneous: bool = False,
    column_cap: int = DEFAULT_COLUMN_CAP,
) -> VanishingSystem:
    """Basis of degree-`degree` polynomials vanishing on every point."""
    if not pts.points:
        raise InsufficientPoints("empty point set")
    nvars = len(pts.points[0])
    monomials = monomial_basis(nvars, degree, "exactly" if homogeneous else "at-most")
    if len(monomials) > column_cap:
        raise BudgetExceeded(
            f"{len(monomials)} monomial columns exceed the cap {column_cap}"
        )
    rows = _evaluation_rows(pts.points, monomials, pts.ctx)
    kernel = exactla.nullspace(exactla.ExactMatrix.make(pts.ctx, rows))
    return VanishingSystem(pts.ctx, nvars, degree, homogeneous, monomials, kernel)


def oversampled_system(
    pts: PointSet,
    degree: int,
    slack: int = 2,
    homogeneous: bool = False,
    draws: int = 3,
    seed: int = 0,
    column_cap: int = DEFAULT_COLUMN_CAP,
) -> VanishingSystem:
    """Interpolate through several slightly-oversampled draws and intersect.

    Each draw uses |monomials| + slack points sampled without replacement,
    so a polynomial must vanish on every draw to survive; this suppresses
    components that only exist because of repeated isolated solutions.
    """
    if slack < 1:
        raise ValueError("slack must be >= 1")
    nvars = len(pts.points[0]) if pts.points else 0
    monomials = monomial_basis(nvars, degree, "exactly" if homogeneous else "at-most")
    need = len(monomials) + slack
    if len(pts.points) < need:
        raise InsufficientPoints(
            f"need {need} points (|monomials| + slack), have {len(pts.points)}"
        )
    current: list[list] | None = None
    for d in range(draws):
        sample = list(pts.points)
        split(seed, d).shuffle(sample)
        subset = PointSet(pts.ctx, sample[:need], dedup=False)
        system = vanishing_system(subset, degree, homogeneous, column_cap)
        if current is None:
            current = system.basis
        else:
            current = exactla.span_intersection(current, system.basis, pts.ctx)
        if not current:
            break
    return VanishingSystem(pts.ctx, nvars, degree, homogeneous, monomials, current or [])


def tangent_dim(gens: Sequence[MultiPoly], pt: Sequence) -> int:
    """Ambient dimension minus the Jacobian rank of the generators at pt."""
    if not gens:
        raise NotOnVariety("no generators given")
    nvars = gens[0].nvars
    domain = gens[0].domain
    point = list(pt)
    rows = []
    for g in gens:
        val = g.eval(point)
        if not _is_zero(val):
            raise NotOnVariety(f"generator {g} does not vanish at the point")
        rows.append([g.partial(i).eval(point) for i in range(nvars)])
    la_domain = domain if isinstance(domain, FieldCtx) else exactla.QQ
    rk = exactla.rank(exactla.ExactMatrix.make(la_domain, rows))
    return nvars - rk


def _is_zero(v) -> bool:
    if isinstance(v, FieldElement):
        return v.is_zero()
    return v == 0


def filter_isolated(pts: PointSet, gens: Sequence[MultiPoly]) -> PointSet:
    """Drop points with zero-dimensional tangent space; keep the rest."""
    kept = [pt for pt in pts.points if tangent_dim(gens, pt) >= 1]
    return PointSet(pts.ctx, kept, dedup=pts.dedup)
