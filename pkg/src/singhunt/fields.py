"""Exact arithmetic in GF(p) and GF(p^k) with a fixed basis per context.

The extension modulus is chosen deterministically (see ``field_create``),
so two runs -- or two machines -- agree on the basis {1, t, ..., t^(k-1)}
and coefficient tuples can be compared across runs when lifting.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import (
    ContextMismatch,
    DivisionByZero,
    InvalidDegree,
    NonPrime,
    PolySyntaxError,
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2^64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# dense univariate polynomials over GF(p), used only for modulus selection
# and extension arithmetic; coefficient lists are low-degree first
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_rem(prod, mod, p)


def _poly_rem(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - dm
        factor = a[-1] * inv_lead % p
        for i, c in enumerate(mod):
            a[shift + i] = (a[shift + i] - factor * c) % p
        a.pop()
    return _poly_trim(a)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_powmod(base: list[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_rem(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


class FieldCtx:
    """Immutable description of GF(p^k); shareable across threads.

    For k > 1, ``modulus`` is the monic irreducible degree-k polynomial over
    GF(p) whose coefficient vector (t^(k-1), ..., t, 1) is lexicographically
    smallest; elements are coefficient tuples in the basis {1, t, ..., t^(k-1)}.
    """

    __slots__ = ("p", "k", "modulus", "q")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.k = k
        self.modulus = modulus  # low-degree-first coefficients, monic; None iff k == 1
        self.q = p**k

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}; t: {format_modulus(self)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    # -- element constructors ------------------------------------------------

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def element(self, value) -> "FieldElement":
        """Coerce an int, coefficient sequence, or FieldElement into this field."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise ContextMismatch(f"element of {value.ctx} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.k:
            raise ContextMismatch(
                f"tuple of length {len(coeffs)} for extension degree {self.k}"
            )
        return FieldElement(self, coeffs)

    def gen(self) -> "FieldElement":
        """The basis element t (only defined for k > 1)."""
        if self.k == 1:
            raise InvalidDegree("prime field has no extension generator")
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self) -> Iterator["FieldElement"]:
        """All q elements, in lexicographic order of basis tuples."""
        def rec(prefix: tuple[int, ...]) -> Iterator[FieldElement]:
            if len(prefix) == self.k:
                yield FieldElement(self, prefix)
                return
            for c in range(self.p):
                yield from rec(prefix + (c,))

        yield from rec(())


class FieldElement:
    """An element of a FieldCtx, stored as its basis coefficient tuple."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    # -- helpers ---------------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ContextMismatch(
                    f"cannot combine elements of {self.ctx} and {other.ctx}"
                )
            return other
        if isinstance(other, int):
            return self.ctx.element(other)
        return NotImplemented  # type: ignore[return-value]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, ((self.coeffs[0] * other.coeffs[0]) % ctx.p,))
        prod = _poly_mulmod(self.coeffs, other.coeffs, ctx.modulus, ctx.p)
        prod += [0] * (ctx.k - len(prod))
        return FieldElement(ctx, tuple(prod))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return inv(self) ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * inv(other)

    def __rtruediv__(self, other):
        return self.ctx.element(other) / self

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ctx.element(other)
        return (
            isinstance(other, FieldElement)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.k, self.coeffs))

    def __repr__(self) -> str:
        return format_element(self)


_CTX_CACHE: dict[tuple[int, int], FieldCtx] = {}


def field_create(p: int, k: int = 1) -> FieldCtx:
    """Create (or fetch the cached) GF(p^k) context.

    The modulus search order compares candidate coefficient vectors from the
    t^(k-1) coefficient down to the constant, so e.g. GF(25) always gets
    t^2 + 2 and every run of every process agrees on the basis.
    """
    if k < 1:
        raise InvalidDegree(f"extension degree must be >= 1, got {k}")
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    key = (p, k)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        modulus = None if k == 1 else _first_irreducible(p, k)
        ctx = FieldCtx(p, k, modulus)
        _CTX_CACHE[key] = ctx
    return ctx


def _first_irreducible(p: int, k: int) -> tuple[int, ...]:
    def candidates() -> Iterator[list[int]]:
        # counter[i] is the coefficient of t^(k-1-i): most significant first
        counter = [0] * k
        while True:
            yield [counter[k - 1 - i] for i in range(k)] + [1]
            i = k - 1
            while i >= 0:
                counter[i] += 1
                if counter[i] < p:
                    break
                counter[i] = 0
                i -= 1
            if i < 0:
                return

    for f in candidates():
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found (unreachable)")


def _is_irreducible(f: list[int], p: int) -> bool:
    """Monic f of degree k: no factor of degree d <= k/2 divides f, checked
    via gcd(x^(p^d) - x, f); then x^(p^k) = x mod f closes the argument."""
    k = len(f) - 1
    if k == 1:
        return True
    xp = [0, 1]
    for d in range(1, k // 2 + 1):
        xp = _poly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(list(f), _poly_trim(diff), p)) - 1 >= 1:
            return False
    for _ in range(k // 2 + 1, k + 1):
        xp = _poly_powmod(xp, p, f, p)
    final = list(xp) + [0] * max(0, 2 - len(xp))
    final[1] = (final[1] - 1) % p
    return not _poly_trim(final)


def inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises DivisionByZero on a = 0."""
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    ctx = a.ctx
    if ctx.k == 1:
        return FieldElement(ctx, (pow(a.coeffs[0], ctx.p - 2, ctx.p),))
    return a ** (ctx.q - 2)


def to_basis_tuple(a: FieldElement) -> tuple[int, ...]:
    """Coordinates of a in the fixed basis {1, t, ..., t^(k-1)}."""
    return a.coeffs


def from_basis_tuple(ctx: FieldCtx, coeffs: Sequence[int]) -> FieldElement:
    if len(coeffs) != ctx.k:
        raise ContextMismatch(
            f"tuple of length {len(coeffs)} does not match extension degree {ctx.k}"
        )
    return FieldElement(ctx, tuple(int(c) % ctx.p for c in coeffs))


# ---------------------------------------------------------------------------
# textual element syntax: decimal integers for prime fields, polynomials in
# t (e.g. "3*t+1", "t^2+4*t") for extensions; round trip is bit-exact
# ---------------------------------------------------------------------------

def format_element(a: FieldElement) -> str:
    if a.ctx.k == 1:
        return str(a.coeffs[0])
    parts = []
    for e in range(a.ctx.k - 1, -1, -1):
        c = a.coeffs[e]
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append("t" if c == 1 else f"{c}*t")
        else:
            parts.append(f"t^{e}" if c == 1 else f"{c}*t^{e}")
    return "+".join(parts) if parts else "0"


def format_modulus(ctx: FieldCtx) -> str:
    assert ctx.modulus is not None
    parts = []
    for e in range(ctx.k, -1, -1):
        c = ctx.modulus[e]
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append("t" if c == 1 else f"{c}*t")
        else:
            parts.append(f"t^{e}" if c == 1 else f"{c}*t^{e}")
    return "+".join(parts)


def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    """Inverse of format_element for the given context."""
    s = text.replace(" ", "")
    if not s:
        raise PolySyntaxError("empty field element")
    if ctx.k == 1:
        try:
            return ctx.element(int(s))
        except ValueError:
            raise PolySyntaxError(f"bad prime-field element {text!r}") from None
    coeffs = [0] * ctx.k
    # split into signed monomial chunks: c, c*t, c*t^e, t, t^e
    chunks = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur:
            chunks.append(cur)
            cur = ch if ch == "-" else ""
        else:
            cur += ch
    chunks.append(cur)
    for chunk in chunks:
        if not chunk or chunk in "+-":
            raise PolySyntaxError(f"bad field element {text!r}")
        sign = 1
        body = chunk
        if body[0] == "-":
            sign, body = -1, body[1:]
        elif body[0] == "+":
            body = body[1:]
        if "t" not in body:
            try:
                c, e = int(body), 0
            except ValueError:
                raise PolySyntaxError(f"bad field element {text!r}") from None
        else:
            head, _, tail = body.partition("t")
            c = 1
            if head:
                if not head.endswith("*"):
                    raise PolySyntaxError(f"bad field element {text!r}")
                try:
                    c = int(head[:-1])
                except ValueError:
                    raise PolySyntaxError(f"bad field element {text!r}") from None
            if tail:
                if not tail.startswith("^"):
                    raise PolySyntaxError(f"bad field element {text!r}")
                try:
                    e = int(tail[1:])
                except ValueError:
                    raise PolySyntaxError(f"bad field element {text!r}") from None
            else:
                e = 1
        if e >= ctx.k or e < 0:
            raise PolySyntaxError(f"exponent t^{e} outside basis of {ctx}")
        coeffs[e] = (coeffs[e] + sign * c) % ctx.p
    return FieldElement(ctx, tuple(coeffs))
