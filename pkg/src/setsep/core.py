"""Set systems and weight assignments with distinct subset sums.

The central routine is :func:`assign_deterministic`: process the ground set
in its fixed order and give each element the smallest positive integer that
is neither the weight of any already-projected set nor the difference of two
such weights.  That greedy rule keeps all prefix projections of the family
at pairwise distinct total weights, so in particular the family members end
up separated.  :func:`verify_separated` is the independent check: it sums
every member directly and compares the sums, never touching the projection
machinery.

Weights and sums are Python integers throughout, so they are exact at any
magnitude.  The incremental forbidden-value bookkeeping uses a NumPy boolean
table for speed, guarded by a magnitude check; values that cannot fit safely
in int64 fall back to a pure-Python path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

from .errors import IncompleteAssignmentError

# Above this, int64 differences could overflow; use exact Python ints instead.
_INT64_SAFE = 1 << 62

_FREE_SCAN_CHUNK = 2048


class SetSystem:
    """An ordered ground set plus a family of subsets, given by indices.

    The universe order is taken verbatim from the input; it is the fixed
    element ordering every other operation relies on.  Family members are
    deduplicated on construction (two equal sets can never receive distinct
    totals, so keeping both would be unsatisfiable); ``had_duplicate_members``
    records whether anything was merged.  The empty set is a legal member.
    """

    __slots__ = ("universe", "family", "had_duplicate_members")

    def __init__(self, universe: Iterable[str], family: Iterable[Iterable[int]]):
        self.universe: tuple[str, ...] = tuple(universe)
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("universe contains duplicate element identifiers")
        n = len(self.universe)
        members: list[frozenset[int]] = []
        seen: set[frozenset[int]] = set()
        duplicates = False
        for raw in family:
            listed = tuple(raw)
            member = frozenset(listed)
            if len(member) != len(listed):
                raise ValueError(f"family member {sorted(listed)} repeats an index")
            for idx in member:
                if not isinstance(idx, int) or isinstance(idx, bool):
                    raise ValueError(f"family member index {idx!r} is not an integer")
                if not 0 <= idx < n:
                    raise ValueError(f"family member index {idx} outside universe of size {n}")
            if member in seen:
                duplicates = True
                continue
            seen.add(member)
            members.append(member)
        self.family: tuple[frozenset[int], ...] = tuple(members)
        self.had_duplicate_members = duplicates

    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def max_member_size(self) -> int:
        """Cardinality of a largest family member (0 for an empty family)."""
        return max((len(s) for s in self.family), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetSystem):
            return NotImplemented
        return self.universe == other.universe and self.family == other.family

    def __repr__(self) -> str:
        return f"SetSystem(n={self.n}, family_size={len(self.family)})"

    def to_json_dict(self) -> dict:
        return {
            "universe": list(self.universe),
            "family": [sorted(member) for member in self.family],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SetSystem":
        return cls(data["universe"], data["family"])


@dataclass(frozen=True, slots=True)
class WeightAssignment:
    """Positive integer weight per universe index, in universe order."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(self.weights))
        for i, w in enumerate(self.weights):
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise ValueError(f"weight at index {i} must be a positive integer, got {w!r}")

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, index: int) -> int:
        return self.weights[index]

    def to_json_dict(self) -> dict:
        return {"weights": list(self.weights)}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "WeightAssignment":
        return cls(tuple(data["weights"]))


@dataclass(frozen=True, slots=True)
class ProjectedFamily:
    """All projections of the family onto element prefixes up to ``level``.

    Contains every ``S ∩ {first i elements}`` for ``i <= level`` plus the
    empty set, which is seeded unconditionally at level 0.
    """

    level: int
    sets: frozenset[frozenset[int]]

    def __len__(self) -> int:
        return len(self.sets)


@dataclass(frozen=True, slots=True)
class ForbiddenSet:
    """Weights of projected sets plus all pairwise absolute differences."""

    values: frozenset[int]

    def __contains__(self, value: int) -> bool:
        return value in self.values

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, slots=True)
class SeparationReport:
    """Outcome of a separation check plus the relevant weight-range bounds.

    ``bound_thm1`` is the coarse range bound gamma^2 * |family|^2;
    ``bound_thm2`` is the sharper one, (number of distinct prefix
    projections, empty set included)^2.  ``witness`` is the first pair of
    family indices with equal totals in lexicographic order, or None.
    """

    separated: bool
    witness: tuple[int, int] | None
    max_weight: int
    bound_thm1: int
    bound_thm2: int

    def __post_init__(self) -> None:
        if self.separated != (self.witness is None):
            raise ValueError("witness must be present exactly when not separated")

    def to_json_dict(self) -> dict:
        return {
            "separated": self.separated,
            "witness": list(self.witness) if self.witness is not None else None,
            "max_weight": self.max_weight,
            "bound_thm1": self.bound_thm1,
            "bound_thm2": self.bound_thm2,
        }


WeightsLike = Union[WeightAssignment, Sequence[int]]


def _weight_seq(weights: WeightsLike) -> Sequence[int]:
    if isinstance(weights, WeightAssignment):
        return weights.weights
    return weights


def project(system: SetSystem, level: int) -> ProjectedFamily:
    """Project every family member onto the first ``level`` elements.

    Returns the accumulated, deduplicated union over all levels up to
    ``level``; the empty set is always included.
    """
    n = system.n
    if not 0 <= level <= n:
        raise ValueError(f"projection level {level} outside [0, {n}]")
    sets: set[frozenset[int]] = {frozenset()}
    for member in system.family:
        inside = sorted(i for i in member if i < level)
        for p in range(1, len(inside) + 1):
            sets.add(frozenset(inside[:p]))
    return ProjectedFamily(level=level, sets=frozenset(sets))


def forbidden_set(projected: ProjectedFamily, weights: WeightsLike) -> ForbiddenSet:
    """Compute the forbidden values for the next element's weight.

    These are the total weights of all projected sets together with every
    pairwise absolute difference of two such totals.  ``weights`` must cover
    every index that occurs in ``projected`` (a prefix of the universe
    suffices).
    """
    seq = _weight_seq(weights)
    totals: list[int] = []
    for s in projected.sets:
        total = 0
        for idx in s:
            if idx >= len(seq):
                raise IncompleteAssignmentError(
                    f"no weight for element index {idx} referenced at level {projected.level}"
                )
            w = seq[idx]
            if w < 1:
                raise ValueError(f"weight at index {idx} must be positive, got {w}")
            total += w
        totals.append(total)
    values = set(totals)
    for i, a in enumerate(totals):
        for b in totals[i + 1 :]:
            values.add(abs(a - b))
    return ForbiddenSet(frozenset(values))


def _prefix_projections(system: SetSystem) -> set[tuple[int, ...]]:
    """Distinct prefix projections of all members, as sorted index tuples.

    Includes the empty tuple (the always-seeded empty set).
    """
    seen: set[tuple[int, ...]] = {()}
    for member in system.family:
        s = sorted(member)
        for p in range(1, len(s) + 1):
            seen.add(tuple(s[:p]))
    return seen


class _ForbiddenTable:
    """Grow-only membership table for forbidden values in [0, cap].

    Values above ``cap`` are irrelevant: the chosen weight at any step never
    exceeds (number of distinct projections)^2 = cap, so larger forbidden
    values can never block the minimum-free scan.
    """

    def __init__(self, cap: int):
        self.cap = cap
        self.table = np.zeros(cap + 1, dtype=bool)
        self.table[0] = True

    def insert_batch(self, new_totals: list[int], all_totals: list[int], max_total: int) -> None:
        """Mark ``new_totals`` and their differences against ``all_totals``."""
        cap = self.cap
        if max_total < _INT64_SAFE:
            new_arr = np.asarray(new_totals, dtype=np.int64)
            in_range = new_arr[new_arr <= cap]
            self.table[in_range] = True
            base = np.asarray(all_totals, dtype=np.int64)
            # Chunk the outer difference to keep peak memory modest.
            chunk = max(1, (1 << 22) // max(1, len(new_arr)))
            for lo in range(0, len(base), chunk):
                diffs = np.abs(new_arr[:, None] - base[None, lo : lo + chunk]).ravel()
                diffs = diffs[diffs <= cap]
                self.table[diffs] = True
        else:
            # Exact big-int path; only reachable far beyond desk scale.
            for a in new_totals:
                if a <= cap:
                    self.table[a] = True
                for b in all_totals:
                    d = abs(a - b)
                    if d <= cap:
                        self.table[d] = True

    def next_free(self, start: int) -> int:
        """Smallest index >= start not marked forbidden."""
        pos = start
        size = self.table.shape[0]
        while pos < size:
            chunk = self.table[pos : pos + _FREE_SCAN_CHUNK]
            hits = np.flatnonzero(~chunk)
            if hits.size:
                return pos + int(hits[0])
            pos += _FREE_SCAN_CHUNK
        raise AssertionError("no free weight within the projection-count bound")


def assignment_steps(system: SetSystem) -> Iterator[tuple[int, int, int]]:
    """Yield (element_index, chosen_weight, projections_before_step) per step.

    This is the greedy rule itself; :func:`assign_deterministic` consumes it.
    ``projections_before_step`` is the size of the accumulated projected
    family the choice was made against (empty set included).
    """
    n = system.n
    prefixes = _prefix_projections(system)
    new_at: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    for pref in prefixes:
        if pref:
            new_at[pref[-1] + 1].append(pref)
    for level_list in new_at:
        level_list.sort()

    total_projections = len(prefixes)
    table = _ForbiddenTable(cap=total_projections * total_projections)
    total_of: dict[tuple[int, ...], int] = {(): 0}
    all_totals: list[int] = [0]
    max_total = 0
    cursor = 1

    for step in range(n):
        # The table currently reflects the projections of levels <= step,
        # i.e. exactly the forbidden values governing this element's weight.
        count_before = len(total_of)
        w = table.next_free(cursor)
        cursor = w  # min-free never decreases: the forbidden set only grows
        yield step, w, count_before

        new_totals: list[int] = []
        for pref in new_at[step + 1]:
            total = total_of[pref[:-1]] + w
            total_of[pref] = total
            new_totals.append(total)
        if new_totals:
            max_total = max(max_total, max(new_totals))
            all_totals.extend(new_totals)
            table.insert_batch(new_totals, all_totals, max_total)


def assign_deterministic(system: SetSystem) -> tuple[WeightAssignment, SeparationReport]:
    """Assign weights greedily so all family members get distinct totals.

    The first element receives weight 1 whenever the family is nonempty (and
    also when it is empty: the forbidden set is then always {0}).  Every
    element receives the smallest positive integer avoiding the current
    forbidden values.  The maximum assigned weight is at most the squared
    number of distinct prefix projections (empty set included), hence at
    most (gamma * |family| + 1)^2.
    """
    weights = [w for _, w, _ in assignment_steps(system)]
    max_weight = max(weights, default=0)
    gamma = system.max_member_size
    family_size = len(system.family)
    projections = len(_prefix_projections(system))
    report = SeparationReport(
        separated=True,
        witness=None,
        max_weight=max_weight,
        bound_thm1=gamma * gamma * family_size * family_size,
        bound_thm2=projections * projections,
    )
    return WeightAssignment(tuple(weights)), report


def assign_randomized(system: SetSystem, max_weight: int, seed: int) -> WeightAssignment:
    """Draw each weight independently and uniformly from {1, ..., max_weight}.

    The stream is CPython's Mersenne Twister (`random.Random`), one
    ``randint(1, max_weight)`` call per element in universe order, so equal
    seeds give equal assignments.
    """
    if max_weight < 1:
        raise ValueError(f"weight range must be at least 1, got {max_weight}")
    rng = random.Random(seed)
    return WeightAssignment(tuple(rng.randint(1, max_weight) for _ in system.universe))


def set_weight(weights: WeightsLike, subset: Iterable[int]) -> int:
    """Total weight of a subset of universe indices; the empty set weighs 0."""
    seq = _weight_seq(weights)
    total = 0
    for idx in subset:
        if not 0 <= idx < len(seq):
            raise IncompleteAssignmentError(f"no weight assigned for element index {idx}")
        total += seq[idx]
    return total


def verify_separated(system: SetSystem, weights: WeightsLike) -> SeparationReport:
    """Brute-force separation check, independent of the greedy machinery.

    Sums every family member directly and compares totals; the witness, if
    any, is the lexicographically first colliding index pair.  Never goes
    through :func:`project` or :func:`forbidden_set`.
    """
    seq = _weight_seq(weights)
    if len(seq) != system.n:
        raise IncompleteAssignmentError(
            f"assignment covers {len(seq)} elements, universe has {system.n}"
        )
    totals = [sum(seq[i] for i in member) for member in system.family]

    witness: tuple[int, int] | None = None
    order = sorted(range(len(totals)), key=lambda i: (totals[i], i))
    run_start = 0
    for k in range(1, len(order) + 1):
        if k == len(order) or totals[order[k]] != totals[order[run_start]]:
            if k - run_start > 1:
                group = sorted(order[run_start:k])
                candidate = (group[0], group[1])
                if witness is None or candidate < witness:
                    witness = candidate
            run_start = k

    gamma = system.max_member_size
    family_size = len(system.family)
    projections = len(_prefix_projections(system))
    return SeparationReport(
        separated=witness is None,
        witness=witness,
        max_weight=max(seq, default=0),
        bound_thm1=gamma * gamma * family_size * family_size,
        bound_thm2=projections * projections,
    )


def separation_trial_rate(system: SetSystem, max_weight: int, trials: int, seed: int) -> float:
    """Fraction of seeded random assignments that separate the family.

    Per-trial seeds are drawn from a master `random.Random(seed)` stream, so
    the rate is a pure function of (system, max_weight, trials, seed).
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    master = random.Random(seed)
    successes = 0
    for _ in range(trials):
        assignment = assign_randomized(system, max_weight, master.getrandbits(64))
        if verify_separated(system, assignment).separated:
            successes += 1
    return successes / trials
