"""Finite lattices, their ideals, filters, prime ideals and homomorphisms.

Carriers are index based (0..n-1) with a name table; carrier subsets are bit
masks (see :mod:`lattice_spectra.bitsets`).  Every structure validates its
axioms eagerly at construction and is immutable afterwards, so instances are
safe to share between threads and all operations here are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .bitsets import BitMask, bits, full_mask, is_subset, mask_of
from .errors import (
    CyclicCovers,
    EmptyGeneratorSet,
    MissingMapping,
    NotAHom,
    NotALattice,
)


@dataclass(frozen=True)
class FiniteLattice:
    """A finite (hence bounded) lattice given by its order and operation tables.

    ``up[i]`` is the bit mask of elements above ``i`` (inclusive).  The meet
    and join tables must hold the exact greatest lower / least upper bounds;
    this is re-verified exhaustively at construction together with the order
    axioms, so no unchecked instance can exist.
    """

    names: tuple[str, ...]
    up: tuple[BitMask, ...]
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = len(self.names)
        if n < 1:
            raise ValueError("a lattice needs at least one element")
        if len(set(self.names)) != n:
            raise ValueError("element names must be unique")
        if len(self.up) != n or len(self.meet_table) != n or len(self.join_table) != n:
            raise ValueError("table sizes disagree with the carrier")
        full = full_mask(n)
        for i in range(n):
            if self.up[i] & ~full:
                raise ValueError("order relation mentions elements outside the carrier")
            if not self.up[i] >> i & 1:
                raise ValueError("order relation is not reflexive")
        for i in range(n):
            for j in bits(self.up[i]):
                if i != j and self.up[j] >> i & 1:
                    raise ValueError("order relation is not antisymmetric")
                if self.up[j] & ~self.up[i]:
                    raise ValueError("order relation is not transitive")
        down = self.down
        for i in range(n):
            for j in range(n):
                m = self.meet_table[i][j]
                lb = down[i] & down[j]
                if not (lb >> m & 1 and is_subset(lb, down[m])):
                    raise NotALattice(self.names[i], self.names[j], "glb")
                w = self.join_table[i][j]
                ub = self.up[i] & self.up[j]
                if not (ub >> w & 1 and is_subset(ub, self.up[w])):
                    raise NotALattice(self.names[i], self.names[j], "lub")
        if self.up[self.bottom] != full:
            raise ValueError("declared bottom is not below every element")
        if down[self.top] != full:
            raise ValueError("declared top is not above every element")

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def down(self) -> tuple[BitMask, ...]:
        """``down[i]`` is the mask of elements below ``i`` (inclusive)."""
        n = self.n
        out = [0] * n
        for i in range(n):
            for j in bits(self.up[i]):
                out[j] |= 1 << i
        return tuple(out)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet_of(self, mask: BitMask) -> int:
        """Meet of a subset; the empty meet is the top element."""
        out = self.top
        for x in bits(mask):
            out = self.meet_table[out][x]
        return out

    def join_of(self, mask: BitMask) -> int:
        """Join of a subset; the empty join is the bottom element."""
        out = self.bottom
        for x in bits(mask):
            out = self.join_table[out][x]
        return out

    def index(self, name: str) -> int:
        return self.names.index(name)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram edges as (lower, upper) pairs."""
        out = []
        for x in range(self.n):
            strict_up = self.up[x] & ~(1 << x)
            for y in bits(strict_up):
                between = strict_up & self.down[y] & ~(1 << y)
                if between == 0:
                    out.append((x, y))
        return tuple(out)

    def set_label(self, mask: BitMask) -> str:
        return "{" + ",".join(self.names[i] for i in bits(mask)) + "}"

    def __repr__(self) -> str:  # keep reprs short; tables are noise
        tag = self.name or ",".join(self.names)
        return f"<FiniteLattice {tag} n={self.n}>"


def lattice_from_order(names, up, name: str = "") -> FiniteLattice:
    """Build a lattice from an explicit order relation, computing the tables.

    Raises :class:`NotALattice` if some pair has no greatest lower or least
    upper bound (uniqueness is automatic once existence holds).
    """
    names = tuple(names)
    up = tuple(up)
    n = len(names)
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i

    def bound(i, j, masks, which):
        common = masks[i] & masks[j]
        for m in bits(common):
            if is_subset(common, masks[m]):
                return m
        raise NotALattice(names[i], names[j], which)

    meet = tuple(
        tuple(bound(i, j, down, "glb") for j in range(n)) for i in range(n)
    )
    join = tuple(tuple(bound(i, j, up, "lub") for j in range(n)) for i in range(n))
    bottom = next(i for i in range(n) if up[i] == full_mask(n))
    top = next(i for i in range(n) if down[i] == full_mask(n))
    return FiniteLattice(names, up, meet, join, bottom, top, name=name)


def build_lattice(names, cover_pairs, name: str = "") -> FiniteLattice:
    """Build a lattice from element names and a cover relation.

    ``cover_pairs`` is an iterable of (lower, upper) element names.  The order
    is the reflexive-transitive closure of the covers; a cycle raises
    :class:`CyclicCovers` and a missing bound raises :class:`NotALattice`.
    """
    names = tuple(names)
    n = len(names)
    if len(set(names)) != n:
        raise ValueError("element names must be unique")
    index = {s: i for i, s in enumerate(names)}
    up = [1 << i for i in range(n)]
    for lo, hi in cover_pairs:
        up[index[lo]] |= 1 << index[hi]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            grown = up[i]
            for j in bits(up[i]):
                grown |= up[j]
            if grown != up[i]:
                up[i] = grown
                changed = True
    for i in range(n):
        for j in bits(up[i]):
            if i != j and up[j] >> i & 1:
                raise CyclicCovers(f"cycle through {names[i]!r} and {names[j]!r}")
    return lattice_from_order(names, up, name=name)


def product_lattice(a: FiniteLattice, b: FiniteLattice, name: str = "") -> FiniteLattice:
    """Direct product with componentwise order; names are joined with '|'."""
    names = tuple(f"{x}|{y}" for x in a.names for y in b.names)
    nb = b.n
    up = []
    for i in range(a.n):
        for j in range(b.n):
            m = 0
            for k in bits(a.up[i]):
                for l in bits(b.up[j]):
                    m |= 1 << (k * nb + l)
            up.append(m)
    return lattice_from_order(names, up, name=name or f"{a.name}x{b.name}")


# ---------------------------------------------------------------------------
# ideals and filters


def _ideal_closure(lat: FiniteLattice, mask: BitMask) -> BitMask:
    """Least down-closed join-closed superset of a nonempty mask."""
    m = mask
    while True:
        prev = m
        for x in bits(m):
            m |= lat.down[x]
        for x, y in itertools.combinations(list(bits(m)), 2):
            m |= 1 << lat.join_table[x][y]
        if m == prev:
            return m


def _filter_closure(lat: FiniteLattice, mask: BitMask) -> BitMask:
    m = mask
    while True:
        prev = m
        for x in bits(m):
            m |= lat.up[x]
        for x, y in itertools.combinations(list(bits(m)), 2):
            m |= 1 << lat.meet_table[x][y]
        if m == prev:
            return m


@dataclass(frozen=True)
class Ideal:
    """Nonempty, down-closed, join-closed carrier subset."""

    lattice: FiniteLattice
    members: BitMask

    def __post_init__(self) -> None:
        lat, m = self.lattice, self.members
        if m == 0:
            raise ValueError("an ideal is nonempty")
        if m & ~full_mask(lat.n):
            raise ValueError("ideal members outside the carrier")
        for x in bits(m):
            if lat.down[x] & ~m:
                raise ValueError("ideal is not down-closed")
        for x, y in itertools.combinations(list(bits(m)), 2):
            if not m >> lat.join_table[x][y] & 1:
                raise ValueError("ideal is not join-closed")

    def label(self) -> str:
        return self.lattice.set_label(self.members)


@dataclass(frozen=True)
class Filter:
    """Nonempty, up-closed, meet-closed carrier subset."""

    lattice: FiniteLattice
    members: BitMask

    def __post_init__(self) -> None:
        lat, m = self.lattice, self.members
        if m == 0:
            raise ValueError("a filter is nonempty")
        if m & ~full_mask(lat.n):
            raise ValueError("filter members outside the carrier")
        for x in bits(m):
            if lat.up[x] & ~m:
                raise ValueError("filter is not up-closed")
        for x, y in itertools.combinations(list(bits(m)), 2):
            if not m >> lat.meet_table[x][y] & 1:
                raise ValueError("filter is not meet-closed")

    def label(self) -> str:
        return self.lattice.set_label(self.members)


@dataclass(frozen=True)
class PrimeIdeal(Ideal):
    """An ideal whose complement is a filter."""

    def __post_init__(self) -> None:
        super().__post_init__()
        rest = full_mask(self.lattice.n) & ~self.members
        if rest == 0:
            raise ValueError("a prime ideal is proper")
        Filter(self.lattice, rest)


def principal_ideal(lat: FiniteLattice, x: int) -> Ideal:
    return Ideal(lat, lat.down[x])


def principal_filter(lat: FiniteLattice, x: int) -> Filter:
    return Filter(lat, lat.up[x])


def generated_ideal(lat: FiniteLattice, generators: BitMask) -> Ideal:
    """Least ideal containing the generators (fixed-point closure)."""
    if generators == 0:
        raise EmptyGeneratorSet("ideal generation needs a nonempty set")
    return Ideal(lat, _ideal_closure(lat, generators))


def generated_filter(lat: FiniteLattice, generators: BitMask) -> Filter:
    if generators == 0:
        raise EmptyGeneratorSet("filter generation needs a nonempty set")
    return Filter(lat, _filter_closure(lat, generators))


def all_ideals(lat: FiniteLattice) -> list[Ideal]:
    """Every ideal of the lattice, sorted by member mask.

    In a finite lattice each ideal contains the join of its members, so every
    ideal is principal and this list has exactly one entry per element.
    """
    return [Ideal(lat, m) for m in sorted(set(lat.down))]


def all_filters(lat: FiniteLattice) -> list[Filter]:
    return [Filter(lat, m) for m in sorted(set(lat.up))]


def is_ideal_mask(lat: FiniteLattice, members: BitMask) -> bool:
    if members == 0 or members & ~full_mask(lat.n):
        return False
    for x in bits(members):
        if lat.down[x] & ~members:
            return False
    for x, y in itertools.combinations(list(bits(members)), 2):
        if not members >> lat.join_table[x][y] & 1:
            return False
    return True


def is_filter_mask(lat: FiniteLattice, members: BitMask) -> bool:
    if members == 0 or members & ~full_mask(lat.n):
        return False
    for x in bits(members):
        if lat.up[x] & ~members:
            return False
    for x, y in itertools.combinations(list(bits(members)), 2):
        if not members >> lat.meet_table[x][y] & 1:
            return False
    return True


def is_prime_ideal(lat: FiniteLattice, members: BitMask) -> bool:
    """Valid ideal whose complement is a valid filter."""
    if not is_ideal_mask(lat, members):
        return False
    return is_filter_mask(lat, full_mask(lat.n) & ~members)


def prime_ideals(lat: FiniteLattice) -> list[PrimeIdeal]:
    """All ideals whose complement is a filter; the classical spectrum as a set."""
    return [
        PrimeIdeal(lat, i.members)
        for i in all_ideals(lat)
        if is_prime_ideal(lat, i.members)
    ]


# ---------------------------------------------------------------------------
# distributivity


@dataclass(frozen=True)
class SublatticeWitness:
    kind: str  # "m5" (diamond with three atoms) or "n5" (pentagon)
    elements: tuple[int, ...]


@dataclass(frozen=True)
class DistributivityReport:
    distributive: bool
    triple: tuple[int, int, int] | None = None
    sublattice: SublatticeWitness | None = None


def _find_violating_triple(lat: FiniteLattice):
    n = lat.n
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = lat.meet_table[x][lat.join_table[y][z]]
                rhs = lat.join_table[lat.meet_table[x][y]][lat.meet_table[x][z]]
                if lhs != rhs:
                    return (x, y, z)
    return None


def _find_forbidden_sublattice(lat: FiniteLattice):
    # A five element subset closed under meet and join whose middle layer has
    # at most one comparable pair is a copy of the diamond m5 or pentagon n5.
    n = lat.n
    for combo in itertools.combinations(range(n), 5):
        cm = mask_of(combo)
        closed = True
        for x, y in itertools.combinations(combo, 2):
            if not (cm >> lat.meet_table[x][y] & 1 and cm >> lat.join_table[x][y] & 1):
                closed = False
                break
        if not closed:
            continue
        bot = lat.meet_of(cm)
        top = lat.join_of(cm)
        middles = [v for v in combo if v != bot and v != top]
        if len(middles) != 3:
            continue
        comparable = sum(
            1
            for u, v in itertools.combinations(middles, 2)
            if lat.leq(u, v) or lat.leq(v, u)
        )
        if comparable == 0:
            return SublatticeWitness("m5", combo)
        if comparable == 1:
            return SublatticeWitness("n5", combo)
    return None


def is_distributive(lat: FiniteLattice) -> DistributivityReport:
    """Distributivity via the triple law, cross-checked against the forbidden
    sublattice criterion (a copy of the three atom diamond or the pentagon).

    The two detectors must agree; a disagreement would mean a broken lattice
    and raises RuntimeError.
    """
    triple = _find_violating_triple(lat)
    witness = _find_forbidden_sublattice(lat)
    if (triple is None) != (witness is None):
        raise RuntimeError(
            f"distributivity detectors disagree on {lat!r}: "
            f"triple={triple} sublattice={witness}"
        )
    return DistributivityReport(triple is None, triple, witness)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class LatticeHom:
    """A total map between lattice carriers preserving meet and join.

    Preservation is verified exhaustively at construction.
    """

    source: FiniteLattice
    target: FiniteLattice
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        src, tgt, f = self.source, self.target, self.mapping
        if len(f) != src.n:
            raise MissingMapping("mapping must cover every source element")
        if any(not 0 <= v < tgt.n for v in f):
            raise ValueError("mapping hits elements outside the target carrier")
        for x in range(src.n):
            for y in range(src.n):
                if f[src.meet_table[x][y]] != tgt.meet_table[f[x]][f[y]]:
                    raise NotAHom(src.names[x], src.names[y], "meet")
                if f[src.join_table[x][y]] != tgt.join_table[f[x]][f[y]]:
                    raise NotAHom(src.names[x], src.names[y], "join")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def preimage(self, target_mask: BitMask) -> BitMask:
        return mask_of(i for i, v in enumerate(self.mapping) if target_mask >> v & 1)

    def label(self) -> str:
        return " ".join(
            f"{self.source.names[i]}->{self.target.names[v]}"
            for i, v in enumerate(self.mapping)
        )


def check_hom(source: FiniteLattice, target: FiniteLattice, mapping) -> LatticeHom:
    """Validate a raw element map as a lattice homomorphism."""
    return LatticeHom(source, target, tuple(mapping))


def identity_hom(lat: FiniteLattice) -> LatticeHom:
    return LatticeHom(lat, lat, tuple(range(lat.n)))


def compose(f: LatticeHom, g: LatticeHom) -> LatticeHom:
    """g after f (requires f.target == g.source)."""
    if f.target != g.source:
        raise ValueError("homomorphisms are not composable")
    return LatticeHom(f.source, g.target, tuple(g.mapping[v] for v in f.mapping))


def all_homs(source: FiniteLattice, target: FiniteLattice) -> list[LatticeHom]:
    """Every homomorphism source -> target, in lexicographic map order.

    Brute force over all maps; guarded so it is only used on small corpora.
    """
    if source.n > 6:
        raise ValueError("hom enumeration is limited to sources with <= 6 elements")
    out = []
    for f in itertools.product(range(target.n), repeat=source.n):
        ok = True
        for x in range(source.n):
            for y in range(x, source.n):
                if (
                    f[source.meet_table[x][y]] != target.meet_table[f[x]][f[y]]
                    or f[source.join_table[x][y]] != target.join_table[f[x]][f[y]]
                ):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(LatticeHom(source, target, f))
    return out
