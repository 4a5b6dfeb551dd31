"""Finite groups as explicit multiplication tables.

Groups are built from raw Cayley tables, permutation generators, builtin
families, or direct products. Element 0 is always the identity. The group
operation on permutations is composition applying the right factor first:
(p * q)(x) = p(q(x)).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from sympy import factorint

from . import errors

__all__ = [
    "DEFAULT_ORDER_LIMIT",
    "TABLE_ORDER_LIMIT",
    "configured_order_limit",
    "ElementSet",
    "Group",
    "ConjugacyPartition",
    "GroupStats",
    "from_cayley_table",
    "from_permutation_generators",
    "direct_product",
    "builtin",
    "conjugacy_classes",
    "closure",
    "derived_subgroup",
    "group_stats",
    "element_order",
    "group_from_pgens_file",
    "group_from_ctab_file",
]

DEFAULT_ORDER_LIMIT = 2000
# Table ingestion runs the full cubic associativity scan, so its default
# cap is lower than the general construction limit.
TABLE_ORDER_LIMIT = 512


def configured_order_limit(default: int = DEFAULT_ORDER_LIMIT) -> int:
    """Order cap used by constructors; TPPB_ORDER_LIMIT overrides it."""
    raw = os.environ.get("TPPB_ORDER_LIMIT")
    return int(raw) if raw else default


class ElementSet:
    """Dense bit-vector set of element indices with cached size."""

    __slots__ = ("mask", "size", "is_subgroup")

    def __init__(self, mask: int, size: int | None = None, is_subgroup: bool = False):
        self.mask = mask
        self.size = mask.bit_count() if size is None else size
        self.is_subgroup = is_subgroup

    @classmethod
    def from_indices(cls, idxs, is_subgroup: bool = False) -> "ElementSet":
        mask = 0
        for i in idxs:
            mask |= 1 << i
        return cls(mask, is_subgroup=is_subgroup)

    def indices(self):
        """Yield member indices in increasing order."""
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __contains__(self, i: int) -> bool:
        return (self.mask >> i) & 1 == 1

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementSet) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        return f"ElementSet({sorted(self.indices())}, subgroup={self.is_subgroup})"


class Group:
    """Immutable finite group over element indices 0..order-1."""

    __slots__ = ("order", "mul", "inv", "labels", "perms", "_label_index", "_mul_array")

    def __init__(self, mul, inv, labels=None, perms=None):
        self.order = len(mul)
        self.mul = mul
        self.inv = inv
        self.labels = labels
        self.perms = perms
        self._label_index = None
        self._mul_array = None

    def mul_array(self) -> np.ndarray:
        if self._mul_array is None:
            self._mul_array = np.asarray(self.mul, dtype=np.int64)
        return self._mul_array

    def label_of(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return f"g{i}"

    def index_of_label(self, text: str) -> int:
        """Resolve a display label back to an element index."""
        if self._label_index is None:
            self._label_index = {self.label_of(i): i for i in range(self.order)}
        try:
            return self._label_index[text]
        except KeyError:
            raise errors.UnknownElement(f"no element labeled {text!r}") from None

    def __repr__(self) -> str:
        return f"Group(order={self.order})"


@dataclass(frozen=True)
class ConjugacyPartition:
    """Conjugacy classes as element sets plus the element -> class map."""

    classes: list
    class_of: list


@dataclass(frozen=True)
class GroupStats:
    order: int
    is_abelian: bool
    exponent: int
    center_size: int


def _check_limit(n: int, limit: int, what: str):
    if n > limit:
        raise errors.OrderLimitExceeded(f"{what} of order {n} exceeds limit {limit}")


def from_cayley_table(n: int, table, order_limit: int | None = None) -> Group:
    """Validate a raw n x n multiplication table and wrap it as a Group.

    Checks, in order: shape and entry range, the Latin-square property by
    rows then columns, identity at index 0, then the full associativity
    scan. The first failing witness is reported.
    """
    limit = order_limit if order_limit is not None else configured_order_limit(TABLE_ORDER_LIMIT)
    if n < 1:
        raise errors.BadParameter("order must be at least 1")
    _check_limit(n, limit, "table")
    M = np.asarray(table, dtype=np.int64)
    if M.shape != (n, n):
        raise errors.BadParameter(f"table must be {n}x{n}, got shape {M.shape}")
    if M.min() < 0 or M.max() >= n:
        raise errors.BadParameter("table entries must lie in 0..n-1")

    ref = np.arange(n)
    row_ok = (np.sort(M, axis=1) == ref).all(axis=1)
    if not row_ok.all():
        raise errors.NotLatinSquare("row", int(np.nonzero(~row_ok)[0][0]))
    col_ok = (np.sort(M, axis=0) == ref[:, None]).all(axis=0)
    if not col_ok.all():
        raise errors.NotLatinSquare("column", int(np.nonzero(~col_ok)[0][0]))

    if not (M[0] == ref).all() or not (M[:, 0] == ref).all():
        raise errors.NoIdentityAtZero("row/column 0 is not the identity map")

    for a in range(n):
        left = M[M[a], :]
        right = M[a][M]
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)
            b, c = (int(v) for v in bad[np.lexsort((bad[:, 1], bad[:, 0]))[0]])
            raise errors.NotAssociative(a, b, c)

    inv = [0] * n
    for a, b in np.argwhere(M == 0):
        inv[int(a)] = int(b)
    mul = [list(map(int, row)) for row in M]
    return Group(mul, inv)


def _as_zero_based_perm(seq, degree: int):
    images = list(seq)
    if len(images) != degree or sorted(images) != list(range(1, degree + 1)):
        raise errors.NotAPermutation(f"{images!r} is not a permutation of 1..{degree}")
    return tuple(i - 1 for i in images)


def from_permutation_generators(degree: int, gens, order_limit: int | None = None) -> Group:
    """Close a set of one-line permutations of 1..degree into a Group.

    Elements get indices in breadth-first discovery order from the
    identity; labels are one-line notation with 1-based images.
    """
    limit = order_limit if order_limit is not None else configured_order_limit()
    if degree < 1:
        raise errors.BadParameter("degree must be at least 1")
    gens0 = [_as_zero_based_perm(g, degree) for g in gens]

    identity = tuple(range(degree))
    index = {identity: 0}
    elems = [identity]
    pos = 0
    while pos < len(elems):
        cur = elems[pos]
        pos += 1
        for g in gens0:
            new = tuple(g[c] for c in cur)
            if new not in index:
                if len(elems) + 1 > limit:
                    raise errors.OrderLimitExceeded(
                        f"closure exceeds order limit {limit}",
                        partial_count=len(elems) + 1,
                    )
                index[new] = len(elems)
                elems.append(new)

    n = len(elems)
    rng = range(degree)
    mul = []
    for pa in elems:
        row = [0] * n
        for j, pb in enumerate(elems):
            row[j] = index[tuple(pa[pb[x]] for x in rng)]
        mul.append(row)
    inv = [0] * n
    for i, p in enumerate(elems):
        q = [0] * degree
        for x, y in enumerate(p):
            q[y] = x
        inv[i] = index[tuple(q)]
    labels = [" ".join(str(x + 1) for x in p) for p in elems]
    return Group(mul, inv, labels=labels, perms=elems)


def direct_product(A: Group, B: Group, order_limit: int | None = None) -> Group:
    """Componentwise product; element (a, b) gets index a*|B| + b."""
    limit = order_limit if order_limit is not None else configured_order_limit()
    n = A.order * B.order
    _check_limit(n, limit, "direct product")
    nb = B.order
    rb = range(nb)
    ra = range(A.order)
    mul = []
    for a in ra:
        arow = A.mul[a]
        for b in rb:
            brow = B.mul[b]
            mul.append([arow[a2] * nb + brow[b2] for a2 in ra for b2 in rb])
    inv = [A.inv[a] * nb + B.inv[b] for a in ra for b in rb]
    return Group(mul, inv)


def _dicyclic_perms(m: int):
    """Left-regular images of the two standard dicyclic generators.

    Elements a^i b^j are indexed i + (m//2)*j with a of order m/2 and
    b^2 = a^(m/4); multiplication follows the defining relations.
    """
    half = m // 2
    quarter = m // 4

    def mul_rule(i, j, k, l):
        if j == 0:
            return (i + k) % half, l
        if l == 0:
            return (i - k) % half, 1
        return (i - k + quarter) % half, 0

    def left_mult(i, j):
        images = [0] * m
        for k in range(half):
            for l in (0, 1):
                ri, rj = mul_rule(i, j, k, l)
                images[k + half * l] = ri + half * rj + 1
        return images

    return [left_mult(1, 0), left_mult(0, 1)]


def validate_family_parameter(family: str, parameter: int) -> None:
    """Check a builtin family parameter without constructing the group."""
    p = parameter
    if family == "cyclic":
        if p < 1:
            raise errors.BadParameter("cyclic parameter must be >= 1")
    elif family == "dihedral":
        if p < 4 or p % 2:
            raise errors.BadParameter("dihedral parameter is the group order, even and >= 4")
    elif family == "dicyclic":
        if p < 8 or p % 4:
            raise errors.BadParameter("dicyclic parameter is the group order, divisible by 4 and >= 8")
    elif family == "sym":
        if p < 1:
            raise errors.BadParameter("sym parameter must be >= 1")
    elif family == "alt":
        if p < 3:
            raise errors.BadParameter("alt parameter must be >= 3")
    elif family == "elem_abelian":
        if p < 2:
            raise errors.BadParameter("elem_abelian parameter must be a prime power >= 2")
        if len(factorint(p)) != 1:
            raise errors.BadParameter(f"{p} is not a prime power")
    else:
        raise errors.UnknownFamily(f"unknown builtin family {family!r}")


def builtin(family: str, parameter: int, order_limit: int | None = None) -> Group:
    """Construct a builtin family member via an explicit permutation
    representation.

    Families: cyclic:n, dihedral:m (order m, even, >= 4), dicyclic:m
    (order m, 4 | m, >= 8), sym:k, alt:k (k >= 3), elem_abelian:q for a
    prime power q.
    """
    validate_family_parameter(family, parameter)
    p = parameter
    if family == "cyclic":
        if p == 1:
            return from_permutation_generators(1, [[1]], order_limit)
        cycle = list(range(2, p + 1)) + [1]
        return from_permutation_generators(p, [cycle], order_limit)
    if family == "dihedral":
        if p == 4:
            return from_permutation_generators(4, [[2, 1, 3, 4], [1, 2, 4, 3]], order_limit)
        k = p // 2
        rot = list(range(2, k + 1)) + [1]
        ref = list(range(k, 0, -1))
        return from_permutation_generators(k, [rot, ref], order_limit)
    if family == "dicyclic":
        return from_permutation_generators(p, _dicyclic_perms(p), order_limit)
    if family == "sym":
        if p == 1:
            return from_permutation_generators(1, [[1]], order_limit)
        gens = [[2, 1] + list(range(3, p + 1))]
        if p > 2:
            gens.append(list(range(2, p + 1)) + [1])
        return from_permutation_generators(p, gens, order_limit)
    if family == "alt":
        three = [2, 3, 1] + list(range(4, p + 1))
        if p == 3:
            gens = [three]
        elif p % 2:
            gens = [three, list(range(2, p + 1)) + [1]]
        else:
            gens = [three, [1] + list(range(3, p + 1)) + [2]]
        return from_permutation_generators(p, gens, order_limit)
    (prime, k), = factorint(p).items()
    degree = prime * k
    gens = []
    for block in range(k):
        base = block * prime
        images = list(range(1, degree + 1))
        for off in range(prime):
            images[base + off] = base + (off + 1) % prime + 1
        gens.append(images)
    return from_permutation_generators(degree, gens, order_limit)


def conjugacy_classes(G: Group) -> ConjugacyPartition:
    """Partition elements by the orbit relation x ~ g*x*g^-1.

    Classes are numbered by ascending minimal element, so the identity
    class is always class 0.
    """
    n = G.order
    mul = G.mul
    inv = G.inv
    class_of = [-1] * n
    classes = []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        cid = len(classes)
        orbit = {mul[mul[g][x]][inv[g]] for g in range(n)}
        for y in orbit:
            class_of[y] = cid
        classes.append(ElementSet.from_indices(orbit))
    return ConjugacyPartition(classes, class_of)


def closure(G: Group, seed) -> ElementSet:
    """Smallest subgroup containing the seed elements."""
    mul = G.mul
    idxs = seed.indices() if isinstance(seed, ElementSet) else seed
    mask = 1
    members = [0]
    frontier = []
    for i in idxs:
        if not (mask >> i) & 1:
            mask |= 1 << i
            members.append(i)
            frontier.append(i)
    while frontier:
        new = []
        for x in frontier:
            row = mul[x]
            for y in members:
                for z in (row[y], mul[y][x]):
                    if not (mask >> z) & 1:
                        mask |= 1 << z
                        new.append(z)
        members.extend(new)
        frontier = new
    return ElementSet(mask, is_subgroup=True)


def derived_subgroup(G: Group) -> ElementSet:
    """Closure of all commutators g^-1 * h^-1 * g * h."""
    n = G.order
    mul = G.mul
    inv = G.inv
    comms = set()
    for g in range(n):
        ig = inv[g]
        for h in range(n):
            comms.add(mul[mul[mul[ig][inv[h]]][g]][h])
    return closure(G, comms)


def element_order(G: Group, g: int) -> int:
    k = 1
    x = g
    while x != 0:
        x = G.mul[x][g]
        k += 1
    return k


def group_stats(G: Group) -> GroupStats:
    """Order, commutativity, exponent (lcm of element orders), center size."""
    M = G.mul_array()
    eq = M == M.T
    is_abelian = bool(eq.all())
    center_size = int(eq.all(axis=1).sum())
    exponent = 1
    for g in range(G.order):
        exponent = math.lcm(exponent, element_order(G, g))
    return GroupStats(G.order, is_abelian, exponent, center_size)


def _data_lines(path):
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line


def group_from_pgens_file(path, order_limit: int | None = None) -> Group:
    """Load a .pgens file: `degree <d>` then one generator per line in
    one-line notation (1-based images)."""
    lines = list(_data_lines(path))
    if not lines or not lines[0].startswith("degree "):
        raise errors.ParseError(lines[0] if lines else "", 0, "expected leading 'degree <d>' line")
    try:
        degree = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise errors.ParseError(lines[0], 0, "expected leading 'degree <d>' line") from None
    gens = []
    for line in lines[1:]:
        try:
            gens.append([int(tok) for tok in line.split()])
        except ValueError:
            raise errors.ParseError(line, 0, "generator lines must be integers") from None
    if not gens:
        raise errors.ParseError(lines[0], 0, "no generators in file")
    return from_permutation_generators(degree, gens, order_limit)


def group_from_ctab_file(path, order_limit: int | None = None) -> Group:
    """Load a .ctab file: `<n>` then n rows of n 0-based indices."""
    lines = list(_data_lines(path))
    if not lines:
        raise errors.ParseError("", 0, "empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise errors.ParseError(lines[0], 0, "expected leading order line") from None
    rows = []
    for line in lines[1:]:
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise errors.ParseError(line, 0, "table rows must be integers") from None
    if len(rows) != n:
        raise errors.ParseError(lines[0], 0, f"expected {n} rows, got {len(rows)}")
    return from_cayley_table(n, rows, order_limit)
