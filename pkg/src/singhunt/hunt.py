"""Detect singular members in a family and classify isolated singularities.

A member is singular at a projective point when the defining polynomial and
all its geometric partials vanish there.  Classification is numeric: corank
of the Hessian plus the Tjurina number computed by truncated local-algebra
linear algebra, which separates the A_k types without any Groebner machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import exactla
from .errors import (
    BudgetExceeded,
    ContextMismatch,
    NotLinearInParams,
    NotSingular,
    SmallCharacteristic,
)
from .fields import FieldCtx, FieldElement
from .poly import QQ, MultiPoly, ParametricFamily, monomial_basis
from .rng import split

DEFAULT_POINT_BUDGET = 2_000_000
DEFAULT_CAP = 8
UNCLASSIFIED = "?"


@dataclass(frozen=True)
class SingularPoint:
    coords: tuple
    label: str = UNCLASSIFIED
    corank: int | None = None
    tjurina: int | None = None
    diagnostic: str = ""

    def text(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"


@dataclass
class SingularMember:
    params: tuple
    points: list[SingularPoint] = field(default_factory=list)

    def signature(self) -> str:
        return signature_string([pt.label for pt in self.points])

    def has_unclassified(self) -> bool:
        return any(pt.label == UNCLASSIFIED for pt in self.points)

    def text(self) -> str:
        params = "(" + ",".join(str(v) for v in self.params) + ")"
        pts = " ".join(pt.text() for pt in self.points)
        return f"{params} | {self.signature()} | {pts}"


def signature_string(labels: Sequence[str]) -> str:
    """Canonical multiset string, e.g. ['A1','A3','A1','A3'] -> '2A1+2A3'."""
    counts: dict[str, int] = {}
    for lab in labels:
        counts[lab] = counts.get(lab, 0) + 1

    def key(lab: str):
        if lab.startswith("A") and lab[1:].isdigit():
            return (0, int(lab[1:]))
        return (1, lab)

    parts = [f"{counts[lab]}{lab}" for lab in sorted(counts, key=key)]
    return "+".join(parts) if parts else "smooth"


# ---------------------------------------------------------------------------
# projective point enumeration
# ---------------------------------------------------------------------------

def projective_size(q: int, nvars: int) -> int:
    return (q**nvars - 1) // (q - 1)


def projective_points(ctx: FieldCtx, nvars: int) -> Iterator[tuple[FieldElement, ...]]:
    """Canonical representatives: first nonzero coordinate equals 1."""
    elems = list(ctx.elements())
    one = ctx.one()
    zero = ctx.zero()

    def free(count: int) -> Iterator[tuple[FieldElement, ...]]:
        if count == 0:
            yield ()
            return
        for rest in free(count - 1):
            for e in elems:
                yield rest + (e,)

    for lead in range(nvars):
        prefix = (zero,) * lead + (one,)
        for tail in free(nvars - lead - 1):
            yield prefix + tail


# ---------------------------------------------------------------------------
# singular locus of one member
# ---------------------------------------------------------------------------

def singular_points(
    f: MultiPoly, ctx: FieldCtx, budget: int = DEFAULT_POINT_BUDGET
) -> list[tuple[FieldElement, ...]]:
    """All canonical points of P^(nvars-1) where f and every partial vanish."""
    f = _over_field(f, ctx)
    n = f.nvars
    total = projective_size(ctx.q, n)
    if total > budget:
        raise BudgetExceeded(
            f"projective space has {total} points, budget is {budget}"
        )
    if n == 2 and ctx.k == 1 and f.is_homogeneous():
        return _binary_singular_points(f, ctx)
    partials = [f.partial(i) for i in range(n)]
    found = []
    if ctx.k == 1:
        polys = [_int_terms(g) for g in [f, *partials]]
        p = ctx.p
        for pt in _int_projective_points(p, n):
            if all(_int_eval(terms, pt, p) == 0 for terms in polys):
                found.append(tuple(ctx.element(c) for c in pt))
    else:
        for pt in projective_points(ctx, n):
            if f.eval(pt).is_zero() and all(g.eval(pt).is_zero() for g in partials):
                found.append(pt)
    return found


def _over_field(f: MultiPoly, ctx: FieldCtx) -> MultiPoly:
    if isinstance(f.domain, FieldCtx):
        if f.domain != ctx:
            raise ContextMismatch("polynomial lives over a different field")
        return f
    return f.map_domain(ctx)


def _int_terms(f: MultiPoly) -> list[tuple[tuple[int, ...], int]]:
    return [(e, c.coeffs[0]) for e, c in f.terms.items()]


def _int_projective_points(p: int, n: int) -> Iterator[tuple[int, ...]]:
    def free(count: int) -> Iterator[tuple[int, ...]]:
        if count == 0:
            yield ()
            return
        for rest in free(count - 1):
            for e in range(p):
                yield rest + (e,)

    for lead in range(n):
        for tail in free(n - lead - 1):
            yield (0,) * lead + (1,) + tail


def _int_eval(terms, pt: tuple[int, ...], p: int) -> int:
    acc = 0
    for exps, c in terms:
        t = c
        for x, e in zip(pt, exps):
            if e:
                if x == 0:
                    t = 0
                    break
                t = t * pow(x, e, p) % p
        acc += t
    return acc % p


# -- degree-one-variable shortcut: binary forms via univariate gcd -----------

def _binary_singular_points(f: MultiPoly, ctx: FieldCtx) -> list[tuple[FieldElement, ...]]:
    p = ctx.p
    if f.is_zero():
        return [tuple(ctx.element(c) for c in pt) for pt in _int_projective_points(p, 2)]
    d = f.total_degree()
    dense = [0] * (d + 1)  # dense[e] = coefficient of x0^e * x1^(d-e)
    for (e0, _e1), c in f.terms.items():
        dense[e0] = c.coeffs[0]
    fx0 = [(e * dense[e]) % p for e in range(1, d + 1)]  # coeff of x0^(e-1) x1^(d-e)
    fx1 = [((d - e) * dense[e]) % p for e in range(0, d)]  # coeff of x0^e x1^(d-1-e)
    # (1:0) lies off the x1 = 1 chart: its values are the top coefficients
    at_infinity = (
        dense[d] % p == 0
        and (d == 0 or fx0[d - 1] % p == 0)
        and (d == 0 or fx1[d - 1] % p == 0)
    )
    g = _ugcd(_utrim(list(dense)), _ugcd(_utrim(list(fx0)), _utrim(list(fx1)), p), p)
    out = []
    for a in _uroots(g, p):
        if a == 0:
            out.append((ctx.zero(), ctx.one()))
        else:  # canonical representative: first nonzero coordinate is 1
            out.append((ctx.one(), ctx.element(pow(a, p - 2, p))))
    if at_infinity:
        out.append((ctx.one(), ctx.zero()))
    out.sort(key=lambda pt: tuple(c.coeffs for c in pt))
    return out


def _utrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ugcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _urem(a, b, p)
    return a


def _urem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a:
        if a[-1] == 0:
            a.pop()
            continue
        f0 = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f0 * c) % p
        a.pop()
    return _utrim(a)


def _uroots(g: list[int], p: int) -> list[int]:
    if not g:  # the zero gcd: every point of the chart
        return list(range(p))
    if len(g) == 1:
        return []
    out = []
    for a in range(p):
        acc = 0
        for c in reversed(g):
            acc = (acc * a + c) % p
        if acc == 0:
            out.append(a)
    return out


# ---------------------------------------------------------------------------
# classification: corank + Tjurina number of an isolated singularity
# ---------------------------------------------------------------------------

def classify_local(
    g: MultiPoly, cap: int = DEFAULT_CAP, point: tuple | None = None
) -> SingularPoint:
    """Classify the singularity of g at the affine origin.

    g must vanish at 0 with vanishing Jacobian.  The label is A_tau when the
    Hessian corank is <= 1 and tau stabilized between caps; otherwise the
    point is reported unclassified with a diagnostic.
    """
    domain = g.domain
    if isinstance(domain, FieldCtx):
        deg = g.total_degree()
        if domain.p <= deg:
            raise SmallCharacteristic(
                f"characteristic {domain.p} <= degree {deg}: classification unreliable"
            )
    n = g.nvars
    zero_exps = (0,) * n
    if zero_exps in g.terms:
        raise NotSingular("polynomial does not vanish at the origin")
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        if e in g.terms:
            raise NotSingular("Jacobian does not vanish at the origin")

    corank = n - _hessian_rank(g)
    tau_lo = _tjurina_truncated(g, cap - 1)
    tau_hi = _tjurina_truncated(g, cap)
    coords = point if point is not None else zero_exps
    if tau_lo != tau_hi:
        return SingularPoint(
            coords, UNCLASSIFIED, corank, None,
            f"tjurina not stabilized at cap {cap} ({tau_lo} vs {tau_hi})",
        )
    if corank > 1:
        return SingularPoint(
            coords, UNCLASSIFIED, corank, tau_hi, f"corank {corank} > 1"
        )
    return SingularPoint(coords, f"A{tau_hi}", corank, tau_hi, "")


def _hessian_rank(g: MultiPoly) -> int:
    n = g.nvars
    domain = g.domain
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            c = g.terms.get(tuple(e), 0)
            if i == j:
                c = c * _two(domain) if c else 0
            row.append(c)
        entries.append(row)
    return exactla.rank(exactla.ExactMatrix.make(_la_domain(domain), entries))


def _two(domain):
    if isinstance(domain, FieldCtx):
        return domain.element(2)
    return 2


def _la_domain(domain):
    return domain if isinstance(domain, FieldCtx) else exactla.QQ


def _tjurina_truncated(g: MultiPoly, cap: int) -> int:
    """dim of O/(g, dg) modulo degree >= cap terms."""
    n = g.nvars
    domain = g.domain
    basis = monomial_basis(n, cap - 1, "at-most")
    index = {m: i for i, m in enumerate(basis)}
    gens = [g] + [g.partial(i) for i in range(n)]
    rows = []
    for h in gens:
        if h.is_zero():
            continue
        order = min(sum(e) for e in h.terms)
        if order > cap - 1:
            continue  # every multiple is truncated away
        for m in monomial_basis(n, cap - 1 - order, "at-most"):
            row = [0] * len(basis)
            nonzero = False
            for exps, c in h.terms.items():
                shifted = tuple(a + b for a, b in zip(exps, m))
                pos = index.get(shifted)
                if pos is not None:
                    row[pos] = c
                    nonzero = True
            if nonzero:
                rows.append(row)
    if not rows:
        return len(basis)
    rk = exactla.rank(exactla.ExactMatrix.make(_la_domain(domain), rows))
    return len(basis) - rk


def classify(
    f: MultiPoly, pt: Sequence, cap: int = DEFAULT_CAP
) -> SingularPoint:
    """Classify a singular point of a homogeneous hypersurface.

    Dehomogenizes on the chart of the first nonzero coordinate, translates
    the point to the origin, and classifies the local equation.
    """
    if not f.is_homogeneous():
        raise NotSingular("projective classification needs a homogeneous polynomial")
    if f.domain == "ZZ":
        f = f.map_domain(QQ)  # chart scaling needs division
    n = f.nvars
    domain = f.domain
    pt = [_as_scalar(domain, v) for v in pt]
    chart = next((i for i, v in enumerate(pt) if not _scalar_zero(v)), None)
    if chart is None:
        raise NotSingular("zero vector is not a projective point")
    if f.eval(pt) != _zero_scalar(domain):
        raise NotSingular("point does not lie on the hypersurface")
    # local coordinates: one variable per position != chart
    images = []
    local_index = 0
    m = n - 1
    inv_c = _scalar_inv(domain, pt[chart])
    for i in range(n):
        if i == chart:
            images.append(MultiPoly.constant(m, domain, 1))
        else:
            const = MultiPoly.constant(m, domain, pt[i] * inv_c)
            var = MultiPoly.variable(m, domain, local_index)
            images.append(const + var)
            local_index += 1
    local = f.substitute(images)
    result = classify_local(local, cap, point=tuple(pt))
    return result


def _as_scalar(domain, v):
    if isinstance(domain, FieldCtx):
        return domain.element(v)
    return Fraction(v) if domain == QQ else v


def _scalar_zero(v) -> bool:
    return v.is_zero() if isinstance(v, FieldElement) else v == 0


def _zero_scalar(domain):
    if isinstance(domain, FieldCtx):
        return domain.zero()
    return Fraction(0) if domain == QQ else 0


def _scalar_inv(domain, v):
    if isinstance(domain, FieldCtx):
        from .fields import inv

        return inv(v)
    return Fraction(1) / Fraction(v)


# ---------------------------------------------------------------------------
# hunting
# ---------------------------------------------------------------------------

def hunt_members(
    fam: ParametricFamily,
    ctx: FieldCtx,
    strategy: str = "random-params",
    trials: int = 100,
    seed: int = 0,
    budget: int = DEFAULT_POINT_BUDGET,
    classify_points: bool = False,
    cap: int = DEFAULT_CAP,
    threads: int = 1,
    member_cap: int = 10_000,
) -> list[SingularMember]:
    """Search parameter space for members with nonempty singular locus.

    random-params samples parameter points without replacement (so a trial
    count covering the whole space degenerates to an exhaustive scan);
    solve-at-point fixes a random geometric point and solves the linear
    conditions on the parameters.  Deterministic for fixed seed regardless
    of thread count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if strategy == "random-params":
        candidates = _param_candidates(fam.nparams, ctx, trials, seed)
    elif strategy == "solve-at-point":
        candidates = _solve_at_point_candidates(
            fam, ctx, trials, seed, member_cap
        )
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    results: dict[tuple, SingularMember] = {}

    def test(params: tuple) -> SingularMember | None:
        member_poly = fam.specialize(list(params))
        pts = singular_points(member_poly, ctx, budget)
        if not pts:
            return None
        spts = []
        for coords in pts:
            if classify_points:
                try:
                    spts.append(classify(member_poly, coords, cap))
                except SmallCharacteristic as exc:
                    spts.append(
                        SingularPoint(coords, UNCLASSIFIED, None, None, str(exc))
                    )
            else:
                spts.append(SingularPoint(coords))
        return SingularMember(tuple(params), spts)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            tested = list(pool.map(test, candidates))
    else:
        tested = [test(c) for c in candidates]
    for member in tested:
        if member is not None and member.params not in results:
            results[member.params] = member
    return [results[k] for k in sorted(results, key=_param_key)]


def _param_key(params: tuple):
    return tuple(v.coeffs for v in params)


def _param_candidates(
    nparams: int, ctx: FieldCtx, trials: int, seed: int
) -> list[tuple]:
    space = ctx.q**nparams
    if nparams == 0:
        return [()]
    if space <= trials and space <= 2_000_000:
        # full scan in a seeded-shuffled order
        points = list(_all_param_points(ctx, nparams))
        split(seed, 0).shuffle(points)
        return points
    seen: set[tuple] = set()
    out: list[tuple] = []
    attempts = 0
    limit = 20 * trials + 1000
    i = 0
    while len(out) < trials and attempts < limit:
        rng = split(seed, i)
        i += 1
        attempts += 1
        pt = tuple(_draw_element(rng, ctx) for _ in range(nparams))
        key = tuple(v.coeffs for v in pt)
        if key in seen:
            continue
        seen.add(key)
        out.append(pt)
    return out


def _all_param_points(ctx: FieldCtx, nparams: int) -> Iterator[tuple]:
    elems = list(ctx.elements())

    def rec(prefix: tuple) -> Iterator[tuple]:
        if len(prefix) == nparams:
            yield prefix
            return
        for e in elems:
            yield from rec(prefix + (e,))

    yield from rec(())


def _draw_element(rng, ctx: FieldCtx) -> FieldElement:
    return ctx.element(tuple(rng.below(ctx.p) for _ in range(ctx.k)))


def _solve_at_point_candidates(
    fam: ParametricFamily, ctx: FieldCtx, trials: int, seed: int, member_cap: int
) -> list[tuple]:
    if not fam.is_linear_in_params():
        raise NotLinearInParams(
            "solve-at-point needs a family that is linear in the parameters"
        )
    n = fam.nvars
    npar = fam.nparams
    poly = fam.poly.map_domain(ctx) if not isinstance(fam.poly.domain, FieldCtx) else fam.poly
    eqs = [poly] + [poly.partial(i) for i in range(n)]
    candidates: list[tuple] = []
    seen: set[tuple] = set()
    size = projective_size(ctx.q, n)
    for t in range(trials):
        rng = split(seed, t)
        pt = _nth_projective_point(ctx, n, rng.below(size))
        rows = []
        rhs = []
        for eq in eqs:
            # substitute the geometric point, keep the parameters symbolic
            const = ctx.zero()
            coeffs = [ctx.zero()] * npar
            for exps, c in eq.terms.items():
                val = c
                for x, e in zip(pt, exps[:n]):
                    if e:
                        val = val * x**e
                pidx = next((j for j, e in enumerate(exps[n:]) if e), None)
                if pidx is None:
                    const = const + val
                else:
                    coeffs[pidx] = coeffs[pidx] + val
            rows.append(coeffs)
            rhs.append(-const)
        sol, kernel = exactla.solve(exactla.ExactMatrix.make(ctx, rows), rhs)
        if sol is None:
            continue
        count = ctx.q ** len(kernel)
        if count > member_cap:
            raise BudgetExceeded(
                f"solution space has {count} parameter points (cap {member_cap})"
            )
        for combo in _span_points(ctx, kernel):
            params = tuple(
                ctx.element(s) + c for s, c in zip(sol, combo)
            )
            key = tuple(v.coeffs for v in params)
            if key not in seen:
                seen.add(key)
                candidates.append(params)
    return candidates


def _span_points(ctx: FieldCtx, kernel: list[list]) -> Iterator[list[FieldElement]]:
    dim = len(kernel)
    width = len(kernel[0]) if kernel else 0

    def rec(i: int, acc: list[FieldElement]) -> Iterator[list[FieldElement]]:
        if i == dim:
            yield acc
            return
        for e in ctx.elements():
            vec = [a + e * ctx.element(k) for a, k in zip(acc, kernel[i])]
            yield from rec(i + 1, vec)

    start = [ctx.zero()] * width if width else []
    if dim == 0:
        yield start
        return
    yield from rec(0, start)


def _nth_projective_point(ctx: FieldCtx, nvars: int, index: int) -> tuple:
    for pt in projective_points(ctx, nvars):
        if index == 0:
            return pt
        index -= 1
    raise IndexError("projective index out of range")
