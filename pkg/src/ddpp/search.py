"""Label-setting search for a minimal-cost link-disjoint route pair.

The search graph is implicit: vertices are canonical unordered node pairs,
and expanding a label appends one network link to one of its two routes.
Labels are settled in nondecreasing label-cost order from a priority queue
with lazy deletion; each vertex keeps only its undominated labels under
the relation selected by ``SearchOptions.mode``.  The first label settled
at the destination vertex (both routes ended at the destination) is
optimal because link costs are non-negative and extending a label never
lowers its cost.

Ties are broken by a fixed total order: label cost, vertex, the two
interval starts, then a generation sequence number, so a solve is
deterministic for fixed inputs.
"""

from __future__ import annotations

import bisect
import heapq
import time
from dataclasses import dataclass, field

from .net_model import Demand, Network, incident_links, validate_demand
from .spectrum_core import (
    ADDITIVE,
    MODES,
    CostModel,
    Label,
    Trait,
    UnitInterval,
    Vertex,
    label_extend,
)

_OTHER_SLOT = {"a": "b", "b": "a"}


@dataclass
class SearchOptions:
    mode: str = "prime"
    max_route_cost: int | None = None
    cost_model: CostModel = field(default=ADDITIVE)
    enumerate_all: bool = False

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}, expected one of {MODES}")
        if self.max_route_cost is not None:
            if self.mode != "base":
                raise ValueError(
                    "max_route_cost requires mode 'base'; the cost-sum relation "
                    "is not exact under a per-route limit"
                )
            if self.max_route_cost < 0:
                raise ValueError(f"max_route_cost must be >= 0, got {self.max_route_cost}")


@dataclass
class SearchStats:
    labels_generated: int = 0
    labels_dominated: int = 0
    labels_settled: int = 0
    queue_pops: int = 0
    max_labels_per_vertex: int = 0
    wall_time: float = 0.0

    def to_doc(self) -> dict:
        return {
            "labels_generated": self.labels_generated,
            "labels_dominated": self.labels_dominated,
            "labels_settled": self.labels_settled,
            "queue_pops": self.queue_pops,
            "max_labels_per_vertex": self.max_labels_per_vertex,
            "wall_time": self.wall_time,
        }


@dataclass
class RouteLeg:
    nodes: list[str]
    links: list[int]
    slots: UnitInterval

    def to_doc(self) -> dict:
        return {"nodes": self.nodes, "links": self.links, "slots": self.slots.to_doc()}


@dataclass
class Solution:
    status: str
    total_cost: int | None
    working: RouteLeg | None
    protecting: RouteLeg | None
    stats: SearchStats

    @property
    def routed(self) -> bool:
        return self.status == "routed"

    def to_doc(self) -> dict:
        doc: dict = {"status": self.status}
        if self.routed:
            doc["cost"] = self.total_cost
            doc["working"] = self.working.to_doc()
            doc["protecting"] = self.protecting.to_doc()
        doc["stats"] = self.stats.to_doc()
        return doc


class _Staircase:
    """2-D cost Pareto front: cost_a strictly increasing, cost_b strictly
    decreasing.  Any two labels with the same interval pair are comparable
    on cost alone, so within one interval bucket the undominated labels
    form exactly this staircase."""

    __slots__ = ("cost_a", "cost_b", "labels")

    def __init__(self) -> None:
        self.cost_a: list[int] = []
        self.cost_b: list[int] = []
        self.labels: list[Label] = []

    def covers(self, ca: int, cb: int) -> bool:
        """Some member has cost_a <= ca and cost_b <= cb."""
        pos = bisect.bisect_right(self.cost_a, ca)
        return pos > 0 and self.cost_b[pos - 1] <= cb

    def evict(self, ca: int, cb: int) -> list[Label]:
        """Remove and return members with cost_a >= ca and cost_b >= cb."""
        start = bisect.bisect_left(self.cost_a, ca)
        end = start
        while end < len(self.cost_b) and self.cost_b[end] >= cb:
            end += 1
        victims = self.labels[start:end]
        if victims:
            del self.cost_a[start:end]
            del self.cost_b[start:end]
            del self.labels[start:end]
        return victims

    def add(self, ca: int, cb: int, label: Label) -> None:
        pos = bisect.bisect_left(self.cost_a, ca)
        self.cost_a.insert(pos, ca)
        self.cost_b.insert(pos, cb)
        self.labels.insert(pos, label)


class EfficientSet:
    """Undominated labels at one vertex.

    The set stays an antichain under the active relation: a candidate
    dominated by a member (equivalence included, so the incumbent wins) is
    rejected, and an accepted candidate kills every member it dominates.
    Killed labels stay in the queue and are skipped on pop.

    Labels are bucketed by their interval pair (lo_a, hi_a, lo_b, hi_b).
    Dominance between buckets reduces to componentwise interval
    containment; within a bucket it reduces to cost comparison, held as a
    2-D staircase in base mode and a single cheapest label in prime mode
    (equal intervals make any two labels cost-comparable there).  At
    same-node vertices every test is also run against the slot-swapped
    bucket key, which is the cross comparison.  A property test pins this
    structure to the pure relations in spectrum_core.
    """

    def __init__(self, same_node: bool, mode: str, cost_model: CostModel) -> None:
        self._same = same_node
        self._mode = mode
        self._model = cost_model
        # base: bucket -> _Staircase; prime: bucket -> (label_cost, Label)
        self._buckets: dict[tuple[int, int, int, int], object] = {}
        self._alive = 0
        self.peak = 0

    def __len__(self) -> int:
        return self._alive

    def alive_labels(self) -> list[Label]:
        if self._mode == "prime":
            return [entry[1] for entry in self._buckets.values()]
        out: list[Label] = []
        for stair in self._buckets.values():
            out.extend(stair.labels)
        return out

    @staticmethod
    def _bucket(label: Label) -> tuple[int, int, int, int]:
        return (label.trait_a.ri.lo, label.trait_a.ri.hi,
                label.trait_b.ri.lo, label.trait_b.ri.hi)

    @staticmethod
    def _contains(outer: tuple, inner: tuple) -> bool:
        return (outer[0] <= inner[0] and outer[1] >= inner[1]
                and outer[2] <= inner[2] and outer[3] >= inner[3])

    def insert(self, label: Label) -> tuple[bool, int]:
        """Insert if undominated; returns (accepted, members_removed)."""
        key = self._bucket(label)
        swapped = (key[2], key[3], key[0], key[1])
        if self._mode == "prime":
            cost = self._model.label_cost(label)
            costs = (cost, cost)
        else:
            costs = (label.trait_a.cost, label.trait_b.cost)

        for bucket, entry in self._buckets.items():
            if self._contains(bucket, key):
                if self._dominated_in(entry, costs[0], costs[1]):
                    return False, 0
            if self._same and self._contains(bucket, swapped):
                if self._dominated_in(entry, costs[1], costs[0]):
                    return False, 0

        removed = 0
        emptied = []
        for bucket, entry in self._buckets.items():
            if self._contains(key, bucket):
                removed += self._evict_in(entry, costs[0], costs[1])
            if self._same and self._contains(swapped, bucket):
                removed += self._evict_in(entry, costs[1], costs[0])
            if self._emptied(entry):
                emptied.append(bucket)
        for bucket in emptied:
            del self._buckets[bucket]
        self._alive -= removed

        if self._mode == "prime":
            self._buckets[key] = (costs[0], label)
        else:
            stair = self._buckets.get(key)
            if stair is None:
                stair = self._buckets[key] = _Staircase()
            stair.add(costs[0], costs[1], label)
        self._alive += 1
        if self._alive > self.peak:
            self.peak = self._alive
        return True, removed

    def _dominated_in(self, entry, ca: int, cb: int) -> bool:
        if self._mode == "prime":
            return entry[0] <= ca
        return entry.covers(ca, cb)

    def _evict_in(self, entry, ca: int, cb: int) -> int:
        """Kill members dominated at (ca, cb); returns how many died now."""
        if self._mode == "prime":
            if entry[0] >= ca and entry[1].alive:
                entry[1].alive = False
                return 1
            return 0
        victims = entry.evict(ca, cb)
        for victim in victims:
            victim.alive = False
        return len(victims)

    def _emptied(self, entry) -> bool:
        if self._mode == "prime":
            return not entry[1].alive
        return not entry.labels


def reconstruct(label: Label, net: Network, units: int) -> tuple[RouteLeg, RouteLeg]:
    """Split the parent chain of a destination label into its two routes.

    Walks back to the root, assigning each appended link to the route that
    was extended; ``ext_slot``/``appended_side`` track the slot swaps that
    vertex canonicalization introduced.  Slot assignment is first fit: the
    lowest sub-interval of the demanded width inside each final interval.
    """
    if label.parent is None:
        raise ValueError("cannot reconstruct routes of the root label")
    reversed_links: dict[str, list[int]] = {"a": [], "b": []}
    slot_at = {"a": "a", "b": "b"}
    cursor: Label | None = label
    while cursor.parent is not None:
        for dest_slot in ("a", "b"):
            if slot_at[dest_slot] == cursor.ext_slot:
                reversed_links[dest_slot].append(cursor.appended_link)
                slot_at[dest_slot] = cursor.appended_side
            else:
                slot_at[dest_slot] = _OTHER_SLOT[cursor.appended_side]
        cursor = cursor.parent
    src = cursor.vertex.a

    legs = []
    for dest_slot in ("a", "b"):
        sequence = reversed_links[dest_slot][::-1]
        if not sequence:
            raise ValueError("destination label with an empty route")
        nodes = [src]
        here = src
        for link_id in sequence:
            link = net.links[link_id]
            if not link.touches(here):
                raise RuntimeError(
                    f"malformed parent chain: link {link_id} does not touch {here!r}"
                )
            here = link.other_end(here)
            nodes.append(here)
        ri = label.trait(dest_slot).ri
        legs.append(RouteLeg(nodes, sequence, UnitInterval(ri.lo, ri.lo + units)))
    return legs[0], legs[1]


class PairSearch:
    """One solve: mutable per-query state over an immutable network."""

    def __init__(self, net: Network, demand: Demand, opts: SearchOptions | None = None):
        self.opts = opts if opts is not None else SearchOptions()
        self.opts.validate()
        validate_demand(net, demand)
        self.net = net
        self.demand = demand
        self.stats = SearchStats()
        self._model = self.opts.cost_model
        self._incidence = {node: tuple(incident_links(net, node)) for node in net.nodes}
        self._dest = Vertex(demand.dst, demand.dst)
        self._sets: dict[Vertex, EfficientSet] = {}
        self._seq = 0
        self._ran = False

    def _set_for(self, vertex: Vertex) -> EfficientSet:
        found = self._sets.get(vertex)
        if found is None:
            found = EfficientSet(vertex.same_node, self.opts.mode, self._model)
            self._sets[vertex] = found
        return found

    def _queue_key(self, label: Label) -> tuple:
        return (
            self._model.label_cost(label),
            label.vertex.a,
            label.vertex.b,
            label.trait_a.ri.lo,
            label.trait_b.ri.lo,
            label.seq,
        )

    @property
    def destination_count(self) -> int:
        """Labels currently stored at the destination vertex."""
        found = self._sets.get(self._dest)
        return len(found) if found is not None else 0

    def expand(self, label: Label) -> list[Label]:
        """Candidate labels from appending one unused incident link.

        Both vertex nodes contribute their links; at a same-node vertex
        only slot a is extended, because slots are interchangeable there
        and the slot-b expansion reappears one step later with the roles
        swapped.  Under a route-cost limit, candidates whose extended
        trait exceeds the limit are dropped.
        """
        out: list[Label] = []
        sides = ("a",) if label.vertex.same_node else ("a", "b")
        limit = self.opts.max_route_cost
        for side in sides:
            node = label.vertex.a if side == "a" else label.vertex.b
            for link in self._incidence[node]:
                if label.uses(link.id):
                    continue
                for cand in label_extend(label, link, side, self.demand.units, self._model):
                    if limit is not None and cand.trait(cand.ext_slot).cost > limit:
                        continue
                    self._seq += 1
                    cand.seq = self._seq
                    out.append(cand)
        return out

    def run(self) -> Solution:
        if self._ran:
            raise RuntimeError("PairSearch.run may only be called once")
        self._ran = True
        started = time.perf_counter()
        stats = self.stats
        full = UnitInterval(0, self.net.unit_count)
        root = Label(Trait(0, full), Trait(0, full), Vertex(self.demand.src, self.demand.src))
        stats.labels_generated = 1
        self._set_for(root.vertex).insert(root)
        heap: list[tuple[tuple, Label]] = [(self._queue_key(root), root)]
        best: Label | None = None
        last_cost = None

        while heap:
            key, label = heapq.heappop(heap)
            stats.queue_pops += 1
            if not label.alive:
                continue
            if last_cost is not None and key[0] < last_cost:
                raise RuntimeError("internal invariant breach: pop costs decreased")
            last_cost = key[0]
            stats.labels_settled += 1
            if label.vertex == self._dest:
                # terminal: extending past the destination cannot help,
                # costs only grow and intervals only shrink
                if best is None:
                    best = label
                    if not self.opts.enumerate_all:
                        break
                continue
            for cand in self.expand(label):
                stats.labels_generated += 1
                accepted, removed = self._set_for(cand.vertex).insert(cand)
                stats.labels_dominated += removed
                if accepted:
                    heapq.heappush(heap, (self._queue_key(cand), cand))
                else:
                    cand.alive = False
                    stats.labels_dominated += 1

        stats.max_labels_per_vertex = max(
            (s.peak for s in self._sets.values()), default=0
        )
        stats.wall_time = time.perf_counter() - started
        if best is None:
            return Solution("blocked", None, None, None, stats)
        working, protecting = reconstruct(best, self.net, self.demand.units)
        return Solution("routed", self._model.label_cost(best), working, protecting, stats)


def solve(net: Network, demand: Demand, opts: SearchOptions | None = None) -> Solution:
    """Find a minimal-cost link-disjoint route pair, or report blocked."""
    return PairSearch(net, demand, opts).run()
