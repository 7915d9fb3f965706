"""3-dimensional perfect matching -> exact bin filling, over separated weights.

The construction: give every element of the three parts a weight under which
all subsets of size at most 3 have distinct totals, make those the small
items, and add one large item per triple with weight ``capacity - w(triple)``.
A packing that fills every bin to exactly the capacity is then forced to put
exactly one large item and exactly three small items per bin, and the three
small items must be precisely the large item's source triple -- so feasible
packings and perfect matchings translate into each other.

Two capacity modes: ``safe`` derives the capacity from the actual small
weights (twice their sum plus one), which satisfies the required weight
inequalities at every instance size; ``paper`` uses n^10, which only works
once n is large enough and fails loudly otherwise.

Both solvers here are exhaustive oracles for desk-scale instances, with
deterministic search order, guarded by explicit size limits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import SetSystem, assign_deterministic
from .errors import (
    ConstantsInfeasibleError,
    EquivalenceFailureError,
    InvalidSolutionError,
    SeparationViolationError,
    SizeLimitError,
)
from .families import bounded_subset_family

DEFAULT_3DPM_LIMIT = 4
DEFAULT_BINFILL_ITEM_LIMIT = 16

CAPACITY_MODES = ("safe", "paper")


@dataclass(frozen=True, slots=True)
class ThreeDPMInstance:
    """Three parts of size n each, plus triples (x, y, z) of part indices."""

    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("part size must be at least 1")
        normalized = tuple((int(x), int(y), int(z)) for x, y, z in self.triples)
        object.__setattr__(self, "triples", normalized)
        seen = set()
        for t in normalized:
            for coordinate in t:
                if not 0 <= coordinate < self.n:
                    raise ValueError(f"triple {t} has index outside [0, {self.n})")
            if t in seen:
                raise ValueError(f"duplicate triple {t}")
            seen.add(t)

    def element_index(self, part: int, index: int) -> int:
        """Flat index of part element: X first, then Y, then Z."""
        return part * self.n + index

    def triple_elements(self, triple_index: int) -> frozenset[int]:
        x, y, z = self.triples[triple_index]
        return frozenset((x, self.n + y, 2 * self.n + z))

    def to_json_dict(self) -> dict:
        return {"n": self.n, "triples": [list(t) for t in self.triples]}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "ThreeDPMInstance":
        return cls(data["n"], tuple((x, y, z) for x, y, z in data["triples"]))


@dataclass(frozen=True, slots=True)
class LargeItem:
    """One item per triple, weighing capacity minus the triple's weight."""

    weight: int
    triple: int


@dataclass(frozen=True, slots=True)
class BinFillingInstance:
    """Items plus bin capacity and count; every bin must be filled exactly.

    ``small_items[i]`` is the weight of flat element i; ``large_items`` keep
    their source triple index as provenance.  Invariants enforced here keep
    the structural argument valid: small items cannot fill a bin on their
    own, and two large items never fit together.
    """

    small_items: tuple[int, ...]
    large_items: tuple[LargeItem, ...]
    capacity: int
    bins: int

    def __post_init__(self) -> None:
        if self.capacity < 1:
            raise ValueError("capacity must be positive")
        if self.bins < 1:
            raise ValueError("bin count must be positive")
        object.__setattr__(self, "small_items", tuple(int(w) for w in self.small_items))
        for i, w in enumerate(self.small_items):
            if w < 1:
                raise ValueError(f"small item {i} must have positive weight, got {w}")
        if sum(self.small_items) >= self.capacity:
            raise ValueError("small items together must weigh less than the capacity")
        for j, item in enumerate(self.large_items):
            if item.weight < 1:
                raise ValueError(f"large item {j} must have positive weight, got {item.weight}")
            if 2 * item.weight <= self.capacity:
                raise ValueError(
                    f"large item {j} weighs {item.weight}, not more than half the capacity"
                )

    @property
    def unary_size(self) -> int:
        """Unary encoding size: all item weights plus capacity per bin."""
        return (
            sum(self.small_items)
            + sum(item.weight for item in self.large_items)
            + self.capacity * self.bins
        )

    def to_json_dict(self) -> dict:
        return {
            "capacity": self.capacity,
            "bins": self.bins,
            "small_items": list(self.small_items),
            "large_items": [{"weight": li.weight, "triple": li.triple} for li in self.large_items],
            "unary_size": self.unary_size,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "BinFillingInstance":
        return cls(
            small_items=tuple(data["small_items"]),
            large_items=tuple(LargeItem(d["weight"], d["triple"]) for d in data["large_items"]),
            capacity=data["capacity"],
            bins=data["bins"],
        )


@dataclass(frozen=True, slots=True)
class Matching:
    """Chosen triple indices forming a perfect 3D matching."""

    chosen: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "chosen", tuple(sorted(self.chosen)))
        if len(set(self.chosen)) != len(self.chosen):
            raise ValueError("matching repeats a triple index")

    def to_json_dict(self) -> dict:
        return {"chosen": list(self.chosen)}


@dataclass(frozen=True, slots=True)
class PackedItem:
    """Tagged reference into an instance's item lists."""

    kind: str  # "small" | "large"
    index: int

    def __post_init__(self) -> None:
        if self.kind not in ("small", "large"):
            raise ValueError(f"unknown item kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index}


@dataclass(frozen=True, slots=True)
class Packing:
    """Bin contents plus discarded items, all as tagged references."""

    bins: tuple[tuple[PackedItem, ...], ...]
    discarded: tuple[PackedItem, ...]

    def to_json_dict(self) -> dict:
        return {
            "bins": [[item.to_json_dict() for item in group] for group in self.bins],
            "discarded": [item.to_json_dict() for item in self.discarded],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Packing":
        return cls(
            bins=tuple(
                tuple(PackedItem(d["kind"], d["index"]) for d in group) for group in data["bins"]
            ),
            discarded=tuple(PackedItem(d["kind"], d["index"]) for d in data["discarded"]),
        )


@dataclass(frozen=True, slots=True)
class BinViolation:
    bin_index: int
    message: str


@dataclass(frozen=True, slots=True)
class StructureReport:
    """Per-bin one-large/three-small check results."""

    ok: bool
    violations: tuple[BinViolation, ...]


@dataclass(frozen=True, slots=True)
class BinSummary:
    bin_index: int
    large_triple: int
    small_elements: tuple[int, ...]
    total: int

    def to_json_dict(self) -> dict:
        return {
            "bin": self.bin_index,
            "large_triple": self.large_triple,
            "small_elements": list(self.small_elements),
            "total": self.total,
        }


@dataclass(frozen=True, slots=True)
class EquivalenceReport:
    """Joint verdict of both oracles on an instance and its reduction."""

    dpm_feasible: bool
    binfill_feasible: bool
    structure_ok: bool
    details: tuple[BinSummary, ...] = field(default_factory=tuple)

    def to_json_dict(self) -> dict:
        return {
            "dpm_feasible": self.dpm_feasible,
            "binfill_feasible": self.binfill_feasible,
            "structure_ok": self.structure_ok,
            "details": [d.to_json_dict() for d in self.details],
        }


def _reduction_system(inst: ThreeDPMInstance) -> SetSystem:
    """All subsets of size <= 3 of the 3n part elements, X then Y then Z."""
    n = inst.n
    names = (
        [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)] + [f"z{i}" for i in range(n)]
    )
    base = bounded_subset_family(3 * n, 3)
    return SetSystem(names, base.family)


def reduce_3dpm_to_binfilling(
    inst: ThreeDPMInstance, capacity_mode: str = "safe"
) -> BinFillingInstance:
    """Build the bin-filling instance whose feasibility mirrors the matching.

    Small item weights come from the deterministic assigner run on the
    family of all subsets of size at most 3 of the part elements; each
    triple contributes a large item of weight ``capacity - w(triple)``.
    """
    if capacity_mode not in CAPACITY_MODES:
        raise ValueError(f"capacity mode must be one of {CAPACITY_MODES}, got {capacity_mode!r}")
    system = _reduction_system(inst)
    assignment, _ = assign_deterministic(system)
    smalls = assignment.weights
    small_sum = sum(smalls)

    if capacity_mode == "paper":
        capacity = inst.n ** 10
    else:
        capacity = 2 * small_sum + 1

    if small_sum >= capacity:
        raise ConstantsInfeasibleError(
            f"capacity mode {capacity_mode!r}: total small weight {small_sum} "
            f"is not below the capacity {capacity}"
        )
    large_items = []
    for t, _triple in enumerate(inst.triples):
        triple_weight = sum(smalls[e] for e in inst.triple_elements(t))
        if triple_weight >= capacity:
            raise ConstantsInfeasibleError(
                f"capacity mode {capacity_mode!r}: triple {t} weighs {triple_weight}, "
                f"so its large item {capacity} - {triple_weight} would not be positive"
            )
        large_weight = capacity - triple_weight
        if 2 * large_weight <= capacity:
            raise ConstantsInfeasibleError(
                f"capacity mode {capacity_mode!r}: large item for triple {t} weighs "
                f"{large_weight}, not more than half the capacity {capacity}"
            )
        large_items.append(LargeItem(large_weight, t))

    return BinFillingInstance(
        small_items=smalls,
        large_items=tuple(large_items),
        capacity=capacity,
        bins=inst.n,
    )


def solve_3dpm_bruteforce(
    inst: ThreeDPMInstance, limit: int = DEFAULT_3DPM_LIMIT
) -> Matching | None:
    """Exhaustive matching search; first hit in lexicographic index order."""
    if inst.n > limit:
        raise SizeLimitError(f"instance size {inst.n} exceeds the brute-force limit {limit}")
    n = inst.n
    masks = []
    for x, y, z in inst.triples:
        masks.append((1 << x) | (1 << (n + y)) | (1 << (2 * n + z)))
    full = (1 << (3 * n)) - 1
    chosen: list[int] = []

    def search(start: int, covered: int) -> bool:
        if len(chosen) == n:
            return covered == full
        remaining = n - len(chosen)
        for idx in range(start, len(masks) - remaining + 1):
            if covered & masks[idx]:
                continue
            chosen.append(idx)
            if search(idx + 1, covered | masks[idx]):
                return True
            chosen.pop()
        return False

    if search(0, 0):
        return Matching(tuple(chosen))
    return None


def _packing_items(inst: BinFillingInstance) -> list[tuple[PackedItem, int]]:
    """Search order: large items first (they prune hardest), then small."""
    items: list[tuple[PackedItem, int]] = []
    for j, li in enumerate(inst.large_items):
        items.append((PackedItem("large", j), li.weight))
    for i, w in enumerate(inst.small_items):
        items.append((PackedItem("small", i), w))
    return items


def solve_binfilling_bruteforce(
    inst: BinFillingInstance, limit: int = DEFAULT_BINFILL_ITEM_LIMIT
) -> Packing | None:
    """Exhaustive exact-fill search over bin assignments.

    Items are processed large-first in declaration order; each item tries
    bins by ascending index (only the first of the currently empty bins) and
    finally the discard pile.  The first complete assignment under that
    order is returned, so results are deterministic.
    """
    items = _packing_items(inst)
    if len(items) > limit:
        raise SizeLimitError(f"{len(items)} items exceed the brute-force limit {limit}")
    capacity = inst.capacity
    bin_count = inst.bins
    suffix = [0] * (len(items) + 1)
    for k in range(len(items) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + items[k][1]

    loads = [0] * bin_count
    placement: list[int | None] = [None] * len(items)  # bin index or None=discard

    def search(k: int) -> bool:
        deficit = capacity * bin_count - sum(loads)
        if suffix[k] < deficit:
            return False
        if k == len(items):
            return deficit == 0
        _, weight = items[k]
        seen_empty = False
        for b in range(bin_count):
            if loads[b] == 0:
                if seen_empty:
                    continue  # empty bins are interchangeable
                seen_empty = True
            if loads[b] + weight <= capacity:
                loads[b] += weight
                placement[k] = b
                if search(k + 1):
                    return True
                loads[b] -= weight
        placement[k] = None
        return search(k + 1)

    if not search(0):
        return None
    bins: list[list[PackedItem]] = [[] for _ in range(bin_count)]
    discarded: list[PackedItem] = []
    for (item, _), where in zip(items, placement):
        if where is None:
            discarded.append(item)
        else:
            bins[where].append(item)
    return Packing(bins=tuple(tuple(g) for g in bins), discarded=tuple(discarded))


def _item_weight(inst: BinFillingInstance, item: PackedItem) -> int:
    if item.kind == "small":
        if not 0 <= item.index < len(inst.small_items):
            raise InvalidSolutionError(f"small item index {item.index} out of range")
        return inst.small_items[item.index]
    if not 0 <= item.index < len(inst.large_items):
        raise InvalidSolutionError(f"large item index {item.index} out of range")
    return inst.large_items[item.index].weight


def _check_packing_feasible(inst: BinFillingInstance, packing: Packing) -> None:
    """Raise InvalidSolutionError unless every bin is exactly full and no item repeats."""
    if len(packing.bins) != inst.bins:
        raise InvalidSolutionError(
            f"packing has {len(packing.bins)} bins, instance wants {inst.bins}"
        )
    used: set[PackedItem] = set()
    for group in packing.bins + (packing.discarded,):
        for item in group:
            _item_weight(inst, item)  # validates the reference
            if item in used:
                raise InvalidSolutionError(f"item {item} used more than once")
            used.add(item)
    for b, group in enumerate(packing.bins):
        total = sum(_item_weight(inst, item) for item in group)
        if total != inst.capacity:
            raise InvalidSolutionError(
                f"bin {b} sums to {total}, capacity is {inst.capacity}"
            )


def validate_packing_structure(inst: BinFillingInstance, packing: Packing) -> StructureReport:
    """Check every bin holds exactly one large and exactly three small items."""
    _check_packing_feasible(inst, packing)
    violations: list[BinViolation] = []
    for b, group in enumerate(packing.bins):
        larges = sum(1 for item in group if item.kind == "large")
        smalls = sum(1 for item in group if item.kind == "small")
        if larges != 1:
            violations.append(BinViolation(b, f"expected exactly one large item, found {larges}"))
        if smalls != 3:
            violations.append(BinViolation(b, f"expected exactly three small items, found {smalls}"))
    return StructureReport(ok=not violations, violations=tuple(violations))


def extract_matching(
    inst: ThreeDPMInstance, reduced: BinFillingInstance, packing: Packing
) -> Matching:
    """Read the perfect matching off a feasible packing.

    Each bin selects its large item's source triple; the bin's small items
    must be exactly that triple's elements, otherwise the distinct-weight
    guarantee was violated somewhere and we refuse to proceed.
    """
    _check_packing_feasible(reduced, packing)
    chosen: list[int] = []
    for b, group in enumerate(packing.bins):
        larges = [item for item in group if item.kind == "large"]
        if len(larges) != 1:
            raise InvalidSolutionError(
                f"bin {b} holds {len(larges)} large items; expected exactly one"
            )
        triple_index = reduced.large_items[larges[0].index].triple
        small_elements = frozenset(item.index for item in group if item.kind == "small")
        expected = inst.triple_elements(triple_index)
        if small_elements != expected:
            raise SeparationViolationError(
                f"bin {b} carries small elements {sorted(small_elements)}, but its large item "
                f"comes from triple {triple_index} with elements {sorted(expected)}"
            )
        chosen.append(triple_index)
    matching = Matching(tuple(chosen))
    if not is_perfect_matching(inst, matching):
        raise SeparationViolationError("bins select triples that do not form a perfect matching")
    return matching


def is_perfect_matching(inst: ThreeDPMInstance, matching: Matching) -> bool:
    """True when the chosen triples cover every part element exactly once."""
    if len(matching.chosen) != inst.n:
        return False
    covered: set[int] = set()
    for t in matching.chosen:
        if not 0 <= t < len(inst.triples):
            return False
        elements = inst.triple_elements(t)
        if covered & elements:
            return False
        covered |= elements
    return len(covered) == 3 * inst.n


def packing_from_matching(
    inst: ThreeDPMInstance, reduced: BinFillingInstance, matching: Matching
) -> Packing:
    """Forward translation: one bin per matched triple, large item plus its smalls."""
    if not is_perfect_matching(inst, matching):
        raise InvalidSolutionError("not a perfect matching for this instance")
    large_by_triple = {li.triple: j for j, li in enumerate(reduced.large_items)}
    bins: list[tuple[PackedItem, ...]] = []
    used_larges: set[int] = set()
    for t in matching.chosen:
        j = large_by_triple[t]
        used_larges.add(j)
        smalls = tuple(PackedItem("small", e) for e in sorted(inst.triple_elements(t)))
        bins.append((PackedItem("large", j),) + smalls)
    discarded = tuple(
        PackedItem("large", j) for j in range(len(reduced.large_items)) if j not in used_larges
    )
    packing = Packing(bins=tuple(bins), discarded=discarded)
    _check_packing_feasible(reduced, packing)
    return packing


def check_equivalence(
    inst: ThreeDPMInstance,
    capacity_mode: str = "safe",
    dpm_limit: int = DEFAULT_3DPM_LIMIT,
    binfill_limit: int = DEFAULT_BINFILL_ITEM_LIMIT,
) -> EquivalenceReport:
    """Run both oracles and check they agree, end to end.

    On a feasible instance this also validates the packing structure,
    extracts the matching from the packing, and re-packs the directly found
    matching; any inconsistency raises EquivalenceFailureError.
    """
    matching = solve_3dpm_bruteforce(inst, limit=dpm_limit)
    reduced = reduce_3dpm_to_binfilling(inst, capacity_mode)
    packing = solve_binfilling_bruteforce(reduced, limit=binfill_limit)

    dpm_feasible = matching is not None
    binfill_feasible = packing is not None
    if dpm_feasible != binfill_feasible:
        raise EquivalenceFailureError(
            f"matching oracle says {dpm_feasible}, bin-filling oracle says {binfill_feasible}"
        )

    details: tuple[BinSummary, ...] = ()
    structure_ok = True
    if packing is not None and matching is not None:
        structure = validate_packing_structure(reduced, packing)
        structure_ok = structure.ok
        if not structure.ok:
            raise EquivalenceFailureError(
                f"feasible packing violates the bin structure: {structure.violations}"
            )
        extracted = extract_matching(inst, reduced, packing)
        if not is_perfect_matching(inst, extracted):
            raise EquivalenceFailureError("extracted triples do not form a perfect matching")
        packing_from_matching(inst, reduced, matching)  # raises if the forward direction breaks
        summaries = []
        for b, group in enumerate(packing.bins):
            large = next(item for item in group if item.kind == "large")
            summaries.append(
                BinSummary(
                    bin_index=b,
                    large_triple=reduced.large_items[large.index].triple,
                    small_elements=tuple(
                        sorted(item.index for item in group if item.kind == "small")
                    ),
                    total=sum(_item_weight(reduced, item) for item in group),
                )
            )
        details = tuple(summaries)
    return EquivalenceReport(
        dpm_feasible=dpm_feasible,
        binfill_feasible=binfill_feasible,
        structure_ok=structure_ok,
        details=details,
    )
