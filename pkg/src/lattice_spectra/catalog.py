"""Lattice file formats, the named catalog, generation and DOT export.

Lattice file (UTF-8, line based)::

    lattice <name>
    elements <name>+          # whitespace separated, unique
    cover <lower> <upper>     # one per line; '#' starts a comment

Hom file::

    hom <name> from <lattice> to <lattice>
    map <source-element> <target-element>
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .bitsets import bits, full_mask
from .errors import MissingMapping, ParseError, SizeBoundExceeded, UnknownElement
from .lattices import (
    FiniteLattice,
    LatticeHom,
    build_lattice,
    check_hom,
    lattice_from_order,
    product_lattice,
)
from .spectra import BitopSpectrum, ClassicalSpectrum

_EXHAUSTIVE_BOUND = 6


@dataclass(frozen=True)
class LatticeDoc:
    """Parsed form of a lattice text document."""

    name: str
    element_names: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]


def parse_lattice_doc(text: str) -> LatticeDoc:
    name = None
    element_names: tuple[str, ...] = ()
    covers: list[tuple[str, str]] = []
    seen_elements = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "lattice":
            if name is not None:
                raise ParseError(lineno, "duplicate 'lattice' line")
            if len(words) != 2:
                raise ParseError(lineno, "expected 'lattice <name>'")
            name = words[1]
        elif words[0] == "elements":
            if name is None:
                raise ParseError(lineno, "'elements' before 'lattice'")
            if seen_elements:
                raise ParseError(lineno, "duplicate 'elements' line")
            if len(words) < 2:
                raise ParseError(lineno, "at least one element is required")
            if len(set(words[1:])) != len(words) - 1:
                raise ParseError(lineno, "element names must be unique")
            element_names = tuple(words[1:])
            seen_elements = True
        elif words[0] == "cover":
            if not seen_elements:
                raise ParseError(lineno, "'cover' before 'elements'")
            if len(words) != 3:
                raise ParseError(lineno, "expected 'cover <lower> <upper>'")
            lo, hi = words[1], words[2]
            for w in (lo, hi):
                if w not in element_names:
                    raise UnknownElement(lineno, w)
            if lo == hi:
                raise ParseError(lineno, f"reflexive cover {lo!r}")
            covers.append((lo, hi))
        else:
            raise ParseError(lineno, f"unknown directive {words[0]!r}")
    if name is None:
        raise ParseError(1, "missing 'lattice' line")
    if not seen_elements:
        raise ParseError(1, "missing 'elements' line")
    return LatticeDoc(name, element_names, tuple(covers))


def lattice_from_doc(doc: LatticeDoc) -> FiniteLattice:
    return build_lattice(doc.element_names, doc.covers, name=doc.name)


def parse_lattice(text: str) -> FiniteLattice:
    """Parse and validate a lattice document (cover cycles and missing bounds
    surface as CyclicCovers / NotALattice)."""
    return lattice_from_doc(parse_lattice_doc(text))


def render_lattice(lat: FiniteLattice) -> str:
    """Canonical document for a lattice; parse(render(L)) == L."""
    lines = [f"lattice {lat.name or 'unnamed'}"]
    lines.append("elements " + " ".join(lat.names))
    for lo, hi in lat.covers:
        lines.append(f"cover {lat.names[lo]} {lat.names[hi]}")
    return "\n".join(lines) + "\n"


def parse_hom(text: str, source: FiniteLattice, target: FiniteLattice) -> LatticeHom:
    mapping: dict[int, int] = {}
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "hom":
            if header_seen:
                raise ParseError(lineno, "duplicate 'hom' line")
            if len(words) != 6 or words[2] != "from" or words[4] != "to":
                raise ParseError(lineno, "expected 'hom <name> from <lattice> to <lattice>'")
            if source.name and words[3] != source.name:
                raise ParseError(lineno, f"source lattice is {source.name!r}, file says {words[3]!r}")
            if target.name and words[5] != target.name:
                raise ParseError(lineno, f"target lattice is {target.name!r}, file says {words[5]!r}")
            header_seen = True
        elif words[0] == "map":
            if len(words) != 3:
                raise ParseError(lineno, "expected 'map <source-element> <target-element>'")
            if words[1] not in source.names:
                raise UnknownElement(lineno, words[1])
            if words[2] not in target.names:
                raise UnknownElement(lineno, words[2])
            src = source.index(words[1])
            if src in mapping:
                raise ParseError(lineno, f"element {words[1]!r} mapped twice")
            mapping[src] = target.index(words[2])
        else:
            raise ParseError(lineno, f"unknown directive {words[0]!r}")
    missing = [source.names[i] for i in range(source.n) if i not in mapping]
    if missing:
        raise MissingMapping(f"unmapped source elements: {' '.join(missing)}")
    return check_hom(source, target, tuple(mapping[i] for i in range(source.n)))


# ---------------------------------------------------------------------------
# named catalog


def _chain(k: int) -> FiniteLattice:
    names = [str(i) for i in range(k)]
    covers = [(str(i), str(i + 1)) for i in range(k - 1)]
    return build_lattice(names, covers, name=f"chain{k}")


def catalog() -> dict[str, FiniteLattice]:
    """The named lattices used by the verification suites."""
    m5 = build_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        name="m5",
    )
    n5 = build_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        name="n5",
    )
    diamond = build_lattice(
        ["0", "p", "q", "1"],
        [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")],
        name="diamond",
    )
    b3 = build_lattice(
        ["0", "x", "y", "z", "xy", "xz", "yz", "1"],
        [
            ("0", "x"), ("0", "y"), ("0", "z"),
            ("x", "xy"), ("x", "xz"), ("y", "xy"), ("y", "yz"),
            ("z", "xz"), ("z", "yz"),
            ("xy", "1"), ("xz", "1"), ("yz", "1"),
        ],
        name="b3",
    )
    m5_doubled_arm = build_lattice(
        ["0", "a1", "a2", "b", "c", "1"],
        [
            ("0", "a1"), ("a1", "a2"), ("a2", "1"),
            ("0", "b"), ("b", "1"), ("0", "c"), ("c", "1"),
        ],
        name="m5_doubled_arm",
    )
    hexagon = build_lattice(
        ["0", "a", "b", "c", "d", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "d"), ("d", "1")],
        name="hexagon",
    )
    chains = {f"chain{k}": _chain(k) for k in range(1, 6)}
    out: dict[str, FiniteLattice] = {}
    out.update(chains)
    out["diamond"] = diamond
    out["b3"] = b3
    out["m5"] = m5
    out["n5"] = n5
    out["m5_doubled_arm"] = m5_doubled_arm
    out["hexagon"] = hexagon
    out["chain2xchain3"] = product_lattice(chains["chain2"], chains["chain3"], name="chain2xchain3")
    out["chain3xchain3"] = product_lattice(chains["chain3"], chains["chain3"], name="chain3xchain3")
    out["m5xchain2"] = product_lattice(m5, chains["chain2"], name="m5xchain2")
    return out


# ---------------------------------------------------------------------------
# enumeration up to isomorphism


@dataclass(frozen=True)
class GeneratorConfig:
    mode: str  # "exhaustive" | "random"
    max_size: int
    seed: int | None = None
    count: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "random"):
            raise ValueError("mode is 'exhaustive' or 'random'")
        if self.max_size < 1:
            raise ValueError("max_size must be positive")
        if self.mode == "exhaustive" and self.max_size > _EXHAUSTIVE_BOUND:
            raise SizeBoundExceeded(
                f"exhaustive enumeration is bounded at {_EXHAUSTIVE_BOUND} elements"
            )
        if self.mode == "random" and self.seed is None:
            raise ValueError("random mode requires a seed")
        if self.mode == "random" and (self.count is None or self.count < 1):
            raise ValueError("random mode requires a positive count")


def canonical_form(lat: FiniteLattice) -> bytes:
    """Isomorphism-invariant encoding of the order relation.

    Elements are grouped by a refined invariant (down-set and up-set sizes
    plus the multiset of neighbour invariants); the minimum relation matrix
    over all group-respecting permutations is the canonical form.
    """
    n = lat.n
    down = lat.down
    inv = [(bin(down[i]).count("1"), bin(lat.up[i]).count("1")) for i in range(n)]
    for _ in range(2):
        inv = [
            (
                inv[i],
                tuple(sorted(inv[j] for j in bits(down[i]))),
                tuple(sorted(inv[j] for j in bits(lat.up[i]))),
            )
            for i in range(n)
        ]
    order = sorted(range(n), key=lambda i: (inv[i], i))
    groups: list[list[int]] = []
    for i in order:
        if groups and inv[groups[-1][0]] == inv[i]:
            groups[-1].append(i)
        else:
            groups.append([i])

    best: bytes | None = None
    for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = [i for group in perms for i in group]
        pos = [0] * n
        for new, old in enumerate(perm):
            pos[old] = new
        rows = bytearray()
        for old in perm:
            row = 0
            for j in bits(lat.up[old]):
                row |= 1 << pos[j]
            rows += row.to_bytes((n + 7) // 8, "little")
        enc = bytes(rows)
        if best is None or enc < best:
            best = enc
    assert best is not None
    return bytes([n]) + best


def _extensions(up: list[int], n: int):
    """Down-sets of the current poset, as candidate strict-lower sets for a
    new maximal element."""
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    full = full_mask(n)
    for mask in range(full + 1):
        ok = True
        for i in bits(mask):
            if down[i] & ~mask:
                ok = False
                break
        if ok:
            yield mask


def _has_all_glbs(up: list[int], down: list[int], n: int) -> bool:
    for i in range(n):
        for j in range(i + 1, n):
            common = down[i] & down[j]
            if common == 0:
                return False
            if not any(common & ~down[m] == 0 for m in bits(common)):
                return False
    return True


def _is_lattice_order(up: list[int], n: int) -> bool:
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    for i in range(n):
        for j in range(i + 1, n):
            common_d = down[i] & down[j]
            if not any(common_d & ~down[m] == 0 for m in bits(common_d)):
                return False
            common_u = up[i] & up[j]
            if not any(common_u & ~up[m] == 0 for m in bits(common_u)):
                return False
    return True


def _grow(up: list[int], n: int, target: int, sink):
    """Depth-first natural-labelled extension by maximal elements.

    Prefixes that are not meet-semilattices are pruned: later elements are
    only ever added above existing ones, so a pair without a greatest lower
    bound can never acquire one.
    """
    if n == target:
        if _is_lattice_order(up, n):
            sink(tuple(up))
        return
    for mask in _extensions(up, n):
        new_up = [u | (1 << n) if mask >> i & 1 else u for i, u in enumerate(up)]
        # also lift elements below the members of mask transitively: mask is
        # down-closed already, so nothing else changes
        new_up.append(1 << n)
        down = [0] * (n + 1)
        for i in range(n + 1):
            for j in bits(new_up[i]):
                down[j] |= 1 << i
        if _has_all_glbs(new_up, down, n + 1):
            _grow(new_up, n + 1, target, sink)


def _exhaustive(max_size: int):
    seen: set[bytes] = set()
    for n in range(1, max_size + 1):
        found: list[tuple[int, ...]] = []
        _grow([], 0, n, found.append)
        canon: dict[bytes, tuple[int, ...]] = {}
        for up in found:
            names = tuple(f"x{i}" for i in range(n))
            lat = lattice_from_order(names, up)
            key = canonical_form(lat)
            if key not in canon:
                canon[key] = up
        for idx, key in enumerate(sorted(canon)):
            if key in seen:
                continue
            seen.add(key)
            names = tuple(f"x{i}" for i in range(n))
            yield lattice_from_order(names, canon[key], name=f"gen{n}_{idx}")


def _random(max_size: int, seed: int, count: int):
    rng = random.Random(seed)
    produced = 0
    attempts = 0
    while produced < count:
        attempts += 1
        if attempts > 10000 * count:
            raise RuntimeError("random lattice sampling failed to converge")
        n = rng.randint(1, max_size)
        up: list[int] = []
        ok = True
        for k in range(n):
            exts = list(_extensions(up, k))
            mask = rng.choice(exts)
            new_up = [u | (1 << k) if mask >> i & 1 else u for i, u in enumerate(up)]
            new_up.append(1 << k)
            down = [0] * (k + 1)
            for i in range(k + 1):
                for j in bits(new_up[i]):
                    down[j] |= 1 << i
            if not _has_all_glbs(new_up, down, k + 1):
                ok = False
                break
            up = new_up
        if not ok or not _is_lattice_order(up, n):
            continue
        names = tuple(f"x{i}" for i in range(n))
        produced += 1
        yield lattice_from_order(names, tuple(up), name=f"rnd{seed}_{produced}")


def enumerate_lattices(config: GeneratorConfig):
    """Stream lattices per the configuration.

    Exhaustive mode yields every lattice with at most ``max_size`` elements
    exactly once up to isomorphism, ordered by size then canonical form.
    Random mode yields ``count`` seeded samples; the stream is deterministic
    for a fixed configuration.
    """
    if config.mode == "exhaustive":
        yield from _exhaustive(config.max_size)
    else:
        assert config.seed is not None and config.count is not None
        yield from _random(config.max_size, config.seed, config.count)


# ---------------------------------------------------------------------------
# DOT export


def _split_statements(body: str):
    """Split a DOT body on ';' outside quoted strings."""
    out = []
    current = []
    in_string = False
    i = 0
    while i < len(body):
        ch = body[i]
        if in_string:
            if ch == "\\" and i + 1 < len(body):
                current.append(body[i : i + 2])
                i += 2
                continue
            if ch == '"':
                in_string = False
            current.append(ch)
        elif ch == '"':
            in_string = True
            current.append(ch)
        elif ch == ";":
            out.append("".join(current))
            current = []
        else:
            current.append(ch)
        i += 1
    if in_string:
        raise ValueError("unterminated string")
    out.append("".join(current))
    return out


def validate_dot(text: str) -> None:
    """Minimal syntactic check of a DOT digraph document."""
    stripped = text.strip()
    if not stripped.startswith("digraph"):
        raise ValueError("missing digraph header")
    if not stripped.endswith("}"):
        raise ValueError("missing closing brace")
    body = stripped[stripped.index("{") + 1 : stripped.rindex("}")]
    for stmt in _split_statements(body):
        stmt = stmt.strip()
        if not stmt:
            continue
        bare = _strip_strings(stmt)
        if "{" in bare or "}" in bare:
            raise ValueError(f"unexpected brace in statement {stmt!r}")
        if "[" in bare or "]" in bare:
            if bare.count("[") != 1 or bare.count("]") != 1 or bare.index("[") > bare.index("]"):
                raise ValueError(f"malformed attribute list in {stmt!r}")


def _strip_strings(stmt: str) -> str:
    out = []
    in_string = False
    i = 0
    while i < len(stmt):
        ch = stmt[i]
        if in_string:
            if ch == "\\":
                i += 2
                continue
            if ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        else:
            out.append(ch)
        i += 1
    if in_string:
        raise ValueError(f"unbalanced quotes in statement {stmt!r}")
    return "".join(out)


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def to_dot(obj) -> str:
    """DOT rendering of a lattice (Hasse diagram), a classical spectrum or a
    bitopological spectrum (both specialization preorders, labelled)."""
    if isinstance(obj, FiniteLattice):
        lines = [f"digraph {_quote(obj.name or 'lattice')} {{", "  rankdir=BT;"]
        for name in obj.names:
            lines.append(f"  {_quote(name)};")
        for lo, hi in obj.covers:
            lines.append(f"  {_quote(obj.names[lo])} -> {_quote(obj.names[hi])};")
        lines.append("}")
    elif isinstance(obj, ClassicalSpectrum):
        lines = [f"digraph {_quote((obj.lattice.name or 'lattice') + '_spec')} {{", "  rankdir=BT;"]
        for p in obj.points:
            lines.append(f"  {_quote(p.label())};")
        mn = obj.space.min_nbhd
        for x in range(len(obj.points)):
            for y in bits(mn[x]):
                if x != y:
                    lines.append(
                        f"  {_quote(obj.points[x].label())} -> {_quote(obj.points[y].label())};"
                    )
        lines.append("}")
    elif isinstance(obj, BitopSpectrum):
        lat = obj.lattice
        lines = [f"digraph {_quote((lat.name or 'lattice') + '_spec_b')} {{", "  rankdir=BT;"]
        for k, p in enumerate(obj.points):
            in_delta = ",".join(lat.names[x] for x in range(lat.n) if obj.delta[x] >> k & 1)
            in_eps = ",".join(lat.names[x] for x in range(lat.n) if obj.epsilon[x] >> k & 1)
            label = f"{p.label()}\\nd:{in_delta} e:{in_eps}"
            lines.append(f"  {_quote(p.label())} [label={_quote(label)}];")
        space = obj.space
        for x in range(space.n):
            for y in bits(space.up_tau[x]):
                if x != y:
                    lines.append(
                        f"  {_quote(obj.points[x].label())} -> {_quote(obj.points[y].label())}"
                        ' [color=blue];'
                    )
            for y in bits(space.up_sigma[x]):
                if x != y:
                    lines.append(
                        f"  {_quote(obj.points[x].label())} -> {_quote(obj.points[y].label())}"
                        ' [color=red, style=dashed];'
                    )
        lines.append("}")
    else:
        raise TypeError(f"no DOT rendering for {type(obj).__name__}")
    text = "\n".join(lines) + "\n"
    validate_dot(text)
    return text
