"""Quadratic and hermitian forms over R and Q_p.

Everything is exact: square classes are stored as canonical integer
representatives and all invariants are signs.  The discriminant of a
quadratic space is the *signed* discriminant
``(-1)**(n*(n-1)//2) * det``, so that a sum of hyperbolic planes has
discriminant 1 in every dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]


class FormError(ValueError):
    """Invalid or unrealizable form data."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: ``Place()`` is the real place, ``Place(p)`` is Q_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise FormError(f"{self.p} is not prime")

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self):
        return "R" if self.p is None else f"Q{self.p}"

    @classmethod
    def parse(cls, obj) -> "Place":
        if isinstance(obj, Place):
            return obj
        if obj in ("real", "R", "inf", None):
            return cls()
        if isinstance(obj, Mapping):
            return cls(int(obj["p"]))
        return cls(int(obj))

    def to_json(self):
        return "real" if self.p is None else {"p": self.p}


REAL = Place()


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise FormError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    for u in range(2, p):
        if pow(u, (p - 1) // 2, p) == p - 1:
            return u
    raise FormError(f"no non-residue mod {p}")


def _as_integer_class(x: Number) -> int:
    # a/b and a*b differ by the square b**2
    x = Fraction(x)
    if x == 0:
        raise FormError("zero has no square class")
    return x.numerator * x.denominator


def canonical_rep(x: Number, place: Place) -> int:
    """Canonical representative of the square class of ``x`` at ``place``.

    R: +-1.  Q_p, p odd: 1, u, p, u*p with u the least non-residue.
    Q_2: +-1, +-5, +-2, +-10.
    """
    n = _as_integer_class(x)
    if place.is_real:
        return 1 if n > 0 else -1
    p = place.p
    v = valuation(n, p)
    unit = n // p**v
    if p == 2:
        unit = {1: 1, 3: -5, 5: 5, 7: -1}[unit % 8]
    else:
        unit = 1 if pow(unit % p, (p - 1) // 2, p) == 1 else smallest_nonresidue(p)
    return unit * (p if v % 2 else 1)


def square_classes(place: Place) -> list[int]:
    """All canonical square-class representatives at ``place``."""
    if place.is_real:
        return [1, -1]
    p = place.p
    if p == 2:
        return [1, -1, 5, -5, 2, -2, 10, -10]
    u = smallest_nonresidue(p)
    return [1, u, p, u * p]


@dataclass(frozen=True)
class SquareClass:
    rep: int
    place: Place

    def __post_init__(self):
        object.__setattr__(self, "rep", canonical_rep(self.rep, self.place))

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.place != other.place:
            raise FormError("square classes at different places")
        return SquareClass(self.rep * other.rep, self.place)

    @property
    def is_trivial(self) -> bool:
        return self.rep == 1

    def __int__(self):
        return self.rep


def _rep(x, place: Place) -> int:
    if isinstance(x, SquareClass):
        if x.place != place:
            raise FormError("square class used at the wrong place")
        return x.rep
    return canonical_rep(x, place)


def hilbert_symbol(a, b, place: Place) -> int:
    """The Hilbert symbol (a, b) at ``place``: +1 iff z^2 = a x^2 + b y^2 is
    nontrivially soluble."""
    a = _rep(a, place)
    b = _rep(b, place)
    if place.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = place.p
    alpha, beta = valuation(a, p), valuation(b, p)
    u, v = a // p**alpha, b // p**beta
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2
        omega = lambda t: ((t * t - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    leg = lambda t: 1 if pow(t % p, (p - 1) // 2, p) == 1 else -1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * leg(u) ** beta * leg(v) ** alpha


def _diag_hasse(entries: Sequence[int], place: Place) -> int:
    h = 1
    for x, y in combinations(entries, 2):
        h *= hilbert_symbol(x, y, place)
    return h


def signed_disc(entries: Iterable[Number], place: Place) -> int:
    entries = list(entries)
    n = len(entries)
    det = Fraction((-1) ** (n * (n - 1) // 2))
    for x in entries:
        det *= x
    return canonical_rep(det, place)


def _real_hasse(neg: int) -> int:
    # (-1,-1)_R = -1 for each pair of negative entries
    return -1 if (neg * (neg - 1) // 2) % 2 else 1


@dataclass(frozen=True)
class QuadraticSpace:
    """A nondegenerate quadratic space up to isometry.

    Over Q_p it is stored as (dim, disc, hasse) with ``hasse`` the
    classical invariant prod_{i<j} (a_i, a_j); over R as a signature.
    """

    place: Place
    dim: int
    disc: int = 1
    hasse: int = 1
    signature: tuple[int, int] | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise FormError("negative dimension")
        if self.place.is_real:
            if self.signature is None:
                raise FormError("a real space needs a signature")
            pos, neg = self.signature
            if pos < 0 or neg < 0 or pos + neg != self.dim:
                raise FormError(f"bad signature {self.signature} for dim {self.dim}")
            object.__setattr__(self, "signature", (pos, neg))
            object.__setattr__(self, "disc", signed_disc([1] * pos + [-1] * neg, self.place))
            object.__setattr__(self, "hasse", _real_hasse(neg))
            return
        if self.signature is not None:
            raise FormError("signature given at a p-adic place")
        object.__setattr__(self, "disc", canonical_rep(self.disc, self.place))
        if self.hasse not in (1, -1):
            raise FormError("hasse invariant must be +-1")
        n, d, h = self.dim, self.disc, self.hasse
        if n == 0 and (d != 1 or h != 1):
            raise FormError("the zero space has trivial invariants")
        if n == 1 and h != 1:
            raise FormError("a line has classical Hasse invariant +1")
        # the binary form of signed disc 1 is the hyperbolic plane
        if n == 2 and d == 1 and h != 1:
            raise FormError("binary forms of discriminant 1 are hyperbolic")

    @classmethod
    def from_diagonal(cls, entries: Sequence[Number], place: Place) -> "QuadraticSpace":
        entries = [canonical_rep(x, place) for x in entries]
        if place.is_real:
            neg = sum(1 for x in entries if x < 0)
            return cls(place, len(entries), signature=(len(entries) - neg, neg))
        return cls(place, len(entries), signed_disc(entries, place), _diag_hasse(entries, place))

    @classmethod
    def real(cls, pos: int, neg: int) -> "QuadraticSpace":
        return cls(REAL, pos + neg, signature=(pos, neg))

    @classmethod
    def with_normalized_hasse(cls, place: Place, dim: int, disc: Number, hasse: int) -> "QuadraticSpace":
        """The p-adic space with the given normalized Hasse invariant."""
        if place.is_real:
            raise FormError("use a signature at the real place")
        disc = canonical_rep(disc, place)
        ref = quasi_split_space(place, dim, disc)
        return cls(place, dim, disc, hasse * ref.hasse)

    def to_json(self) -> dict:
        out = {"place": self.place.to_json(), "dim": self.dim}
        if self.place.is_real:
            out["signature"] = list(self.signature)
        else:
            out["disc"] = self.disc
            out["hasse"] = hasse_normalized(self)
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "QuadraticSpace":
        place = Place.parse(obj.get("place", "real" if "signature" in obj else None))
        if "signature" in obj:
            pos, neg = obj["signature"]
            return cls.real(int(pos), int(neg))
        return cls.with_normalized_hasse(place, int(obj["dim"]), int(obj.get("disc", 1)), int(obj.get("hasse", 1)))


def reference_entries(dim: int, disc: Number) -> list[Fraction]:
    """Diagonal entries of the fixed maximally isotropic form of dimension
    ``dim`` and signed discriminant ``disc``.

    These are rational, so their localizations form a global form and the
    normalized invariants still satisfy the product formula.
    """
    m, odd = divmod(dim, 2)
    d = Fraction(disc)
    if dim == 0:
        return []
    if odd:
        return [Fraction(1), Fraction(-1)] * m + [d]
    return [Fraction(1), Fraction(-1)] * (m - 1) + [Fraction(1), -d]


@lru_cache(maxsize=8192)
def quasi_split_space(place: Place, dim: int, disc: Number) -> QuadraticSpace:
    entries = reference_entries(dim, disc)
    if dim % 2 == 0 and canonical_rep(disc, place) == 1:
        entries = [Fraction(1), Fraction(-1)] * (dim // 2)
    return QuadraticSpace.from_diagonal(entries, place)


def hasse_classical(space) -> int:
    """Classical Hasse invariant of a p-adic space or a diagonal
    ``(entries, place)`` pair."""
    if isinstance(space, QuadraticSpace):
        if space.place.is_real:
            raise FormError("wrong place kind: classify real spaces by signature")
        return space.hasse
    entries, place = space
    if place.is_real:
        raise FormError("wrong place kind: classify real spaces by signature")
    return _diag_hasse([canonical_rep(x, place) for x in entries], place)


def hasse_normalized(space: QuadraticSpace) -> int:
    ref = quasi_split_space(space.place, space.dim, space.disc)
    return space.hasse * ref.hasse


def enumerate_spaces(place: Place, dim: int, disc: Number) -> list[QuadraticSpace]:
    if dim < 0:
        raise FormError("negative dimension")
    d = canonical_rep(disc, place)
    if place.is_real:
        out = []
        for neg in range(dim + 1):
            space = QuadraticSpace.real(dim - neg, neg)
            if space.disc == d:
                out.append(space)
        return out
    out = []
    for h in (1, -1):
        try:
            out.append(QuadraticSpace(place, dim, d, h))
        except FormError:
            pass
    return out


@lru_cache(maxsize=8192)
def witt_index(space: QuadraticSpace) -> int:
    """Number of hyperbolic planes split off in a Witt decomposition."""
    if space.place.is_real:
        return min(space.signature)
    place = space.place
    n = space.dim
    det = canonical_rep((-1) ** (n * (n - 1) // 2) * space.disc, place)
    eps = space.hasse
    w = 0
    while True:
        if n <= 1:
            return w
        if n == 2:
            isotropic = canonical_rep(-det, place) == 1
        elif n == 3:
            isotropic = eps == hilbert_symbol(-1, -det, place)
        elif n == 4:
            isotropic = det != 1 or eps == hilbert_symbol(-1, -1, place)
        else:
            isotropic = True
        if not isotropic:
            return w
        # q = H + q'  with det q' = -det q and eps q = eps q' * (-1, det q')
        det = canonical_rep(-det, place)
        eps = eps * hilbert_symbol(-1, det, place)
        n -= 2
        w += 1


def kottwitz_sign(space: QuadraticSpace) -> int:
    if space.place.is_real:
        ref = real_reference(space.dim, space.disc)
    else:
        ref = quasi_split_space(space.place, space.dim, space.disc)
    return -1 if (witt_index(ref) - witt_index(space)) % 2 else 1


def real_reference(dim: int, disc: Number) -> QuadraticSpace:
    return QuadraticSpace.from_diagonal(reference_entries(dim, disc), REAL)


def real_hasse_normalized(space: QuadraticSpace) -> int:
    """Normalized invariant at R: classical Hasse of the signature times that
    of the rational reference form."""
    return space.hasse * real_reference(space.dim, space.disc).hasse


def normalized_invariant(space: QuadraticSpace) -> int:
    if space.place.is_real:
        return real_hasse_normalized(space)
    return hasse_normalized(space)


@dataclass(frozen=True)
class HermitianSpace:
    """Hermitian space for E = F(sqrt(ext)) given by a diagonalization with
    entries in F."""

    place: Place
    ext: int
    entries: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "ext", canonical_rep(self.ext, self.place))
        object.__setattr__(self, "entries", tuple(canonical_rep(x, self.place) for x in self.entries))
        if self.ext == 1:
            raise FormError("the quadratic extension class must be nontrivial")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def trace_form(self) -> QuadraticSpace:
        # a * N(x + y sqrt(d)) = a x^2 - a d y^2
        diag = []
        for a in self.entries:
            diag += [a, -a * self.ext]
        return QuadraticSpace.from_diagonal(diag, self.place)


def hermitian_hasse(space: HermitianSpace) -> int:
    q = space.trace_form()
    return normalized_invariant(q)


def product_formula_check(family: Mapping[Place, QuadraticSpace], global_disc: Number | None = None) -> bool:
    """True iff the normalized Hasse invariants multiply to +1."""
    spaces = list(family.items())
    if not spaces:
        return True
    dims = {s.dim for _, s in spaces}
    if len(dims) != 1:
        raise FormError(f"mismatched dimensions {sorted(dims)}")
    for place, s in spaces:
        if s.place != place:
            raise FormError(f"space for {place} lives at {s.place}")
        if global_disc is not None and s.disc != canonical_rep(global_disc, place):
            raise FormError(f"discriminant at {place} is not the localization of {global_disc}")
    signs = [normalized_invariant(s) for _, s in spaces]
    prod = 1
    for x in signs:
        prod *= x
    return prod == 1


def product_of_symbols(a: Number, b: Number) -> int:
    """prod over R and the primes dividing 2ab of (a, b)_v."""
    n = abs(_as_integer_class(a) * _as_integer_class(b)) * 2
    out = hilbert_symbol(a, b, REAL)
    for p in prime_factors(n):
        out *= hilbert_symbol(a, b, Place(p))
    return out


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out
