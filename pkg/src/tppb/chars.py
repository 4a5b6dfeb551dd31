"""Irreducible character degrees over characteristic zero, computed by a
finite-field common-eigenvector method on conjugacy class matrices.

The class sums K_r multiply as K_r K_s = sum_t a_rst K_t. Over a prime
field with p = 1 (mod exponent) and p^2 > 4|G|, the matrices
(M_r)[s][t] = a_rst commute and share exactly one common eigenvector per
irreducible character: the central character values. Each degree is
recovered from the orthogonality relation d^2 = |G| / sum_j w_j w_j* / |C_j|
evaluated mod p and lifted to the unique integer in (0, sqrt(|G|)].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sympy import isprime

from . import errors
from .groups import Group, conjugacy_classes, group_stats

__all__ = [
    "CharacterDegrees",
    "admissible_primes",
    "dixon_prime",
    "character_degrees",
    "d_sum_int",
    "d_sum_real",
    "ingest_degrees",
    "validate_degrees",
]

PRIME_SEARCH_CAP = 10_000_000
RETRY_PRIMES = 3


@dataclass(frozen=True)
class CharacterDegrees:
    """Sorted multiset of irreducible character degrees of a group."""

    degrees: tuple
    group_order: int


def admissible_primes(G: Group):
    """Yield primes p = 1 (mod exponent) with p^2 > 4|G|, ascending."""
    st = group_stats(G)
    e = st.exponent
    floor = 4 * st.order
    k = 1
    while k <= PRIME_SEARCH_CAP:
        p = k * e + 1
        if p * p > floor and isprime(p):
            yield p
        k += 1
    raise errors.PrimeSearchExhausted(f"no admissible prime below {PRIME_SEARCH_CAP * e}")


def dixon_prime(G: Group) -> int:
    """Smallest admissible prime for the finite-field method."""
    return next(admissible_primes(G))


def _rref_mod(A: np.ndarray, p: int):
    """Reduced row echelon form over F_p; returns (R, pivot columns)."""
    R = np.array(A % p, dtype=np.int64)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def _nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Row basis of the right null space {x : A x = 0} over F_p."""
    R, pivots = _rref_mod(A, p)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-int(R[r, fc])) % p
    return basis


def _class_matrices(G: Group):
    """Structure-constant matrices M_r with (M_r)[s][t] = a_rst, plus
    class sizes and the inverse-class permutation."""
    part = conjugacy_classes(G)
    k = len(part.classes)
    class_of = part.class_of
    sizes = [len(c) for c in part.classes]
    reps = [next(c.indices()) for c in part.classes]
    inv_class = [class_of[G.inv[r]] for r in reps]
    mul = G.mul
    inv = G.inv
    A = np.zeros((k, k, k), dtype=np.int64)
    for t in range(k):
        zt = reps[t]
        for x in range(G.order):
            A[class_of[x], class_of[mul[inv[x]][zt]], t] += 1
    return A, sizes, inv_class


def _split_to_lines(A: np.ndarray, sizes, p: int):
    """Split F_p^k into the common eigenvector lines of the class
    matrices, processing matrices in ascending class-size order."""
    k = A.shape[0]
    eye = np.eye(k, dtype=np.int64)
    spaces = [(eye, list(range(k)))]
    order = sorted(range(1, k), key=lambda j: (sizes[j], j))
    for j in order:
        if all(B.shape[0] == 1 for B, _ in spaces):
            break
        M = A[j] % p
        next_spaces = []
        for B, piv in spaces:
            d = B.shape[0]
            if d == 1:
                next_spaces.append((B, piv))
                continue
            coords = (M @ B.T) % p
            Rm = coords[piv, :]
            found = 0
            for lam in range(p):
                C = (Rm - lam * np.eye(d, dtype=np.int64)) % p
                nb = _nullspace_mod(C, p)
                if nb.shape[0]:
                    sub = _rref_mod((nb @ B) % p, p)
                    next_spaces.append(sub)
                    found += nb.shape[0]
                    if found == d:
                        break
            if found != d:
                raise errors.EigenspaceSplitFailure(
                    f"matrix {j} is not diagonalizable over F_{p}"
                )
        spaces = next_spaces
    if any(B.shape[0] != 1 for B, _ in spaces):
        raise errors.EigenspaceSplitFailure(
            f"common eigenspaces not one-dimensional over F_{p}"
        )
    return [B[0] % p for B, _ in spaces]


def _degrees_from_lines(lines, sizes, inv_class, n: int, p: int):
    half = (p - 1) // 2
    inv_sizes = [pow(sz, -1, p) for sz in sizes]
    degrees = []
    for v in lines:
        if v[0] == 0:
            raise errors.EigenspaceSplitFailure("identity-class coordinate vanished")
        w = (v * pow(int(v[0]), -1, p)) % p
        denom = 0
        for j, js in enumerate(inv_class):
            denom = (denom + int(w[j]) * int(w[js]) % p * inv_sizes[j]) % p
        if denom == 0:
            raise errors.EigenspaceSplitFailure("orthogonality denominator vanished")
        d2 = n % p * pow(denom, -1, p) % p
        d = next((r for r in range(1, half + 1) if r * r % p == d2), None)
        if d is None:
            raise errors.EigenspaceSplitFailure(f"{d2} has no square root mod {p}")
        degrees.append(d)
    if sum(d * d for d in degrees) != n:
        raise errors.EigenspaceSplitFailure("degree squares do not sum to the group order")
    return tuple(sorted(degrees))


def character_degrees(G: Group, prime: int | None = None) -> CharacterDegrees:
    """Exact degree multiset of the irreducible characters of G.

    Abelian groups short-circuit to all ones. With an explicit prime the
    computation runs once; otherwise split failures retry on the next
    admissible primes before giving up.
    """
    st = group_stats(G)
    n = st.order
    if st.is_abelian:
        return CharacterDegrees((1,) * n, n)

    if prime is not None:
        if prime % st.exponent != 1 or prime * prime <= 4 * n or not isprime(prime):
            raise errors.BadParameter(
                f"prime {prime} is not admissible for exponent {st.exponent}, order {n}"
            )
        candidates = [prime]
    else:
        gen = admissible_primes(G)
        candidates = [next(gen) for _ in range(RETRY_PRIMES)]

    A, sizes, inv_class = _class_matrices(G)
    failure = None
    for p in candidates:
        try:
            lines = _split_to_lines(A, sizes, p)
            return CharacterDegrees(_degrees_from_lines(lines, sizes, inv_class, n, p), n)
        except errors.EigenspaceSplitFailure as exc:
            failure = exc
    raise failure


def d_sum_int(deg: CharacterDegrees, w: int) -> int:
    """Exact integer degree-power sum at integer exponent w >= 1."""
    if w < 1:
        raise errors.BadParameter("exponent must be a positive integer")
    return sum(d ** w for d in deg.degrees)


def d_sum_real(deg: CharacterDegrees, x: float) -> float:
    """Floating-point degree-power sum on the solver domain [2, 3]."""
    if not 2.0 <= x <= 3.0:
        raise errors.DomainError(f"exponent {x} outside [2, 3]")
    return float(sum(d ** x for d in deg.degrees))


def validate_degrees(degrees, order: int) -> CharacterDegrees:
    """Validate a degree multiset against the invariants a genuine group
    must satisfy; raises InvariantViolation naming the failed one."""
    degs = tuple(sorted(degrees))
    if not degs:
        raise errors.InvariantViolation("positivity", "empty degree list")
    if any(d < 1 for d in degs):
        raise errors.InvariantViolation("positivity", f"non-positive degree in {degs}")
    total = sum(d * d for d in degs)
    if total != order:
        raise errors.InvariantViolation(
            "sum of squares equals group order", f"sum {total} != order {order}"
        )
    bad = [d for d in degs if order % d != 0]
    if bad:
        raise errors.InvariantViolation(
            "every degree divides the group order", f"{bad[0]} does not divide {order}"
        )
    if degs[0] != 1:
        raise errors.InvariantViolation("trivial character present", "no degree equals 1")
    return CharacterDegrees(degs, order)


def ingest_degrees(path) -> CharacterDegrees:
    """Load `<order>: d1 d2 ... dk` from a file (one record, # comments)."""
    records = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                records.append(line)
    if len(records) != 1:
        raise errors.InvariantViolation(
            "single record", f"expected exactly one record line, got {len(records)}"
        )
    head, sep, tail = records[0].partition(":")
    if not sep:
        raise errors.InvariantViolation("record format", "missing ':' separator")
    try:
        order = int(head.strip())
        degrees = [int(tok) for tok in tail.split()]
    except ValueError:
        raise errors.InvariantViolation(
            "record format", "order and degrees must be integers"
        ) from None
    return validate_degrees(degrees, order)
