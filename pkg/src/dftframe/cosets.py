"""Classification of k-row selections under circular shift and reversal.

Two row sets related by a circular shift (or by index reversal) select
subframes with identical Gram spectra, so the C(n, k) possible selections
collapse into far fewer equivalence classes ("cosets").  This module walks
those orbits, picks a canonical leader for each, and checks the counting
bounds C(n,k)/(2n) < count <= C(n,k)/n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

from .errors import ConstructionError, InvalidArgumentError, ResourceLimitError
from .frames import COMPLEX_BCH, FrameSpec, generator
from .spectra import IndexSet, Spectrum, gram_spectrum

ENUMERATION_LIMIT = 24
_SPECTRUM_CLASS_TOL = 1e-8


# ============================================================
# Orbit maps
# ============================================================

def shift(rows: IndexSet, c: int) -> IndexSet:
    """Add c to every index modulo n (staying 1-based), re-sorted."""
    n = rows.n
    return IndexSet(n=n, indices=tuple((i - 1 + c) % n + 1 for i in rows.indices))


def reversal(rows: IndexSet) -> IndexSet:
    """Map every index x to n+1-x modulo n (staying 1-based), re-sorted."""
    n = rows.n
    return IndexSet(n=n, indices=tuple((n - i) % n + 1 for i in rows.indices))


def _shift_orbit(n: int, base: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    """All distinct shifts of base, in successive-shift order from base."""
    seen = set()
    orbit = []
    cur = base
    for _ in range(n):
        if cur not in seen:
            seen.add(cur)
            orbit.append(cur)
        cur = tuple(sorted((i - 1 + 1) % n + 1 for i in cur))
    return orbit


def _full_orbit(n: int, base: Tuple[int, ...], merge_reversal: bool) -> List[Tuple[int, ...]]:
    orbit = _shift_orbit(n, base)
    if merge_reversal:
        rev = tuple(sorted((n - i) % n + 1 for i in base))
        seen = set(orbit)
        orbit += [m for m in _shift_orbit(n, rev) if m not in seen]
    return orbit


def canonical_leader(rows: IndexSet, merge_reversal: bool = False) -> IndexSet:
    """The most compact member of the orbit: smallest final index, then lex.

    Minimizing the last element first packs the leader against row 1, which
    is what makes {1,3,4} the leader of its orbit even though the same orbit
    contains the lexicographically smaller {1,2,6}.
    """
    orbit = _full_orbit(rows.n, rows.indices, merge_reversal)
    best = min(orbit, key=lambda t: (t[-1], t))
    return IndexSet(n=rows.n, indices=best)


# ============================================================
# Coset catalog
# ============================================================

def _circular_distance(n: int, p: int, q: int) -> int:
    d = abs(q - p) % n
    return min(d, n - d)


def _pairwise_weight(n: int, indices: Tuple[int, ...]) -> int:
    return sum(_circular_distance(n, p, q) for p, q in combinations(indices, 2))


def _arc_cycle(n: int, indices: Tuple[int, ...]) -> Tuple[int, ...]:
    """Successive circular distances around the set, lex-min rotation."""
    k = len(indices)
    raw = [_circular_distance(n, indices[j], indices[(j + 1) % k]) for j in range(k)]
    rotations = [tuple(raw[j:] + raw[:j]) for j in range(k)]
    return min(rotations)


@dataclass(frozen=True)
class Coset:
    """One equivalence class: leader, members in orbit order, and summaries.

    distance_signature is the sorted multiset of successive circular
    distances (a shift/reversal invariant); distance_cycle is the same
    values in cyclic order, rotated to the lexicographically smallest
    starting point, for display.
    """

    leader: IndexSet
    members: Tuple[IndexSet, ...]
    distance_signature: Tuple[int, ...]
    distance_cycle: Tuple[int, ...]
    weight: int
    spectrum: Spectrum

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "leader": list(self.leader.indices),
            "members": [list(m.indices) for m in self.members],
            "distance_signature": list(self.distance_signature),
            "distance_cycle": list(self.distance_cycle),
            "weight": self.weight,
            "spectrum": self.spectrum.to_json(),
        }


@dataclass(frozen=True)
class CosetCatalog:
    """All cosets of k-subsets of [1, n], plus spectral grouping.

    count is the number of orbits; cosets whose leaders share a spectrum
    (within a small tolerance) are additionally grouped into spectral
    classes, since distinct orbits occasionally produce identical spectra.
    """

    n: int
    k: int
    merged_reversals: bool
    cosets: Tuple[Coset, ...]
    spectral_classes: Tuple[Tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.cosets)

    @property
    def spectral_class_count(self) -> int:
        return len(self.spectral_classes)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "merged_reversals": self.merged_reversals,
            "count": self.count,
            "spectral_class_count": self.spectral_class_count,
            "spectral_classes": [list(c) for c in self.spectral_classes],
            "cosets": [c.to_json() for c in self.cosets],
        }

    def to_csv_rows(self) -> List[dict]:
        """Rows for CSV export: leader, member count, distances, weight, eigenvalues."""
        return [
            {
                "leader": " ".join(str(i) for i in c.leader.indices),
                "members": c.size,
                "distance_cycle": " ".join(str(d) for d in c.distance_cycle),
                "weight": c.weight,
                "eigenvalues": " ".join(f"{v:.4f}" for v in c.spectrum.eigenvalues),
            }
            for c in self.cosets
        ]


def enumerate_cosets(n: int, k: int, merge_reversal: bool = False,
                     n_limit: int = ENUMERATION_LIMIT) -> CosetCatalog:
    """Partition all C(n, k) row subsets into shift (and reversal) orbits.

    Leaders follow the compact rule (minimal last element, then lex); the
    catalog is sorted by (weight ascending, leader lex); each orbit's
    spectrum is computed once, on its leader.
    """
    if not (1 <= k <= n):
        raise InvalidArgumentError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n > n_limit:
        raise ResourceLimitError(
            f"enumeration over C({n},{k}) subsets exceeds the n <= {n_limit} bound")

    gen = generator(FrameSpec(n=n, k=k, variant=COMPLEX_BCH))
    visited = set()
    cosets: List[Coset] = []
    member_total = 0
    for combo in combinations(range(1, n + 1), k):
        if combo in visited:
            continue
        orbit = _full_orbit(n, combo, merge_reversal)
        visited.update(orbit)
        member_total += len(orbit)
        leader_t = min(orbit, key=lambda t: (t[-1], t))
        leader = IndexSet(n=n, indices=leader_t)
        ordered = _full_orbit(n, leader_t, merge_reversal)
        arc_cycle = _arc_cycle(n, leader_t)
        cosets.append(Coset(
            leader=leader,
            members=tuple(IndexSet(n=n, indices=m) for m in ordered),
            distance_signature=tuple(sorted(arc_cycle)),
            distance_cycle=arc_cycle,
            weight=_pairwise_weight(n, leader_t),
            spectrum=gram_spectrum(gen, leader),
        ))
    if member_total != math.comb(n, k):
        raise ConstructionError(
            f"orbit partition covered {member_total} subsets, expected C({n},{k})")

    cosets.sort(key=lambda c: (c.weight, c.leader.indices))

    classes: List[List[int]] = []
    reps: List[Tuple[float, ...]] = []
    for idx, c in enumerate(cosets):
        ev = c.spectrum.eigenvalues
        for cls, rep in zip(classes, reps):
            if len(rep) == len(ev) and max(abs(a - b) for a, b in zip(rep, ev)) <= _SPECTRUM_CLASS_TOL:
                cls.append(idx)
                break
        else:
            classes.append([idx])
            reps.append(ev)

    return CosetCatalog(
        n=n, k=k, merged_reversals=merge_reversal,
        cosets=tuple(cosets),
        spectral_classes=tuple(tuple(c) for c in classes),
    )


def count_bounds(n: int, k: int) -> Tuple[float, float]:
    """(C(n,k)/(2n), C(n,k)/n): the open lower / closed upper coset-count bounds."""
    if not (1 <= k <= n):
        raise InvalidArgumentError(f"need 1 <= k <= n, got n={n}, k={k}")
    c = math.comb(n, k)
    return (c / (2 * n), c / n)
