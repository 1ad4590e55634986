"""Brute-force oracles used by the tests, independent of the library paths
they check."""

import itertools

from lattice_spectra.bitsets import bits


def ideal_masks_brute(lat):
    """Every ideal found by scanning all carrier subsets."""
    out = []
    for m in range(1, 1 << lat.n):
        if any(lat.down[x] & ~m for x in bits(m)):
            continue
        if any(
            not m >> lat.join_table[x][y] & 1
            for x, y in itertools.combinations(list(bits(m)), 2)
        ):
            continue
        out.append(m)
    return sorted(out)


def filter_masks_brute(lat):
    out = []
    for m in range(1, 1 << lat.n):
        if any(lat.up[x] & ~m for x in bits(m)):
            continue
        if any(
            not m >> lat.meet_table[x][y] & 1
            for x, y in itertools.combinations(list(bits(m)), 2)
        ):
            continue
        out.append(m)
    return sorted(out)


def comaximal_pairs_brute(lat):
    """The comaximality conditions spelled out over all super-ideals and
    super-filters."""
    ideals = ideal_masks_brute(lat)
    filters = filter_masks_brute(lat)
    out = []
    for i in ideals:
        for f in filters:
            if i & f:
                continue
            if any(i & ~j == 0 and i != j and j & f == 0 for j in ideals):
                continue
            if any(f & ~k == 0 and f != k and k & i == 0 for k in filters):
                continue
            out.append((i, f))
    return sorted(out)


def labeled_posets_brute(n):
    """All partial orders on n labelled points, as up-mask tuples.

    Each unordered pair is unrelated or oriented one of two ways; transitivity
    is checked on the closure candidate.
    """
    pairs = list(itertools.combinations(range(n), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        up = [1 << i for i in range(n)]
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                up[i] |= 1 << j
            elif c == 2:
                up[j] |= 1 << i
        ok = True
        for i in range(n):
            for j in bits(up[i]):
                if up[j] & ~up[i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield tuple(up)


def is_lattice_up_masks(up, n):
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    for i in range(n):
        for j in range(i + 1, n):
            cd = down[i] & down[j]
            if not any(cd & ~down[m] == 0 for m in bits(cd)):
                return False
            cu = up[i] & up[j]
            if not any(cu & ~up[m] == 0 for m in bits(cu)):
                return False
    return True


def perm_canonical(up, n):
    """Minimum encoding over all permutations; an exact isomorphism key."""
    best = None
    for perm in itertools.permutations(range(n)):
        rows = []
        for old in perm:
            row = 0
            for j in bits(up[old]):
                row |= 1 << perm.index(j)
        # note: perm.index is the inverse permutation lookup
            rows.append(row)
        enc = tuple(rows)
        if best is None or enc < best:
            best = enc
    return best


def count_lattices_brute(n):
    """Number of lattices on exactly n labelled points, up to isomorphism."""
    seen = set()
    for up in labeled_posets_brute(n):
        if is_lattice_up_masks(up, n):
            seen.add(perm_canonical(up, n))
    return len(seen)
