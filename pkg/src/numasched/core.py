"""Shared data model: machine topology, per-quantum access counts, thread
placements, and the cost/metric arithmetic every policy is scored with.

All types are immutable after construction and safe to share across
threads; every operation in this module is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

_I64_MAX = np.iinfo(np.int64).max

# Thread ids are dense integers 0..N-1; a plain int is enough.
ThreadId = int


def _checked_sum(values: np.ndarray) -> int:
    """Exact sum of non-negative int64 values as a Python int.

    Uses the vectorized int64 sum only when it provably cannot wrap
    (max element times element count fits in int64), otherwise falls
    back to arbitrary-precision accumulation.
    """
    if values.size == 0:
        return 0
    peak = int(values.max())
    if peak <= _I64_MAX // values.size:
        return int(values.sum(dtype=np.int64))
    return sum(values.ravel().tolist())


def _frozen_int64(data, *, what: str) -> np.ndarray:
    arr = np.asarray(data)
    if arr.dtype.kind not in "iu":
        raise ValueError(f"{what} must be integers, got dtype {arr.dtype}")
    if arr.size and arr.dtype.kind == "u" and int(arr.max()) > _I64_MAX:
        raise ValueError(f"{what} exceed the 64-bit signed range")
    arr = arr.astype(np.int64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Topology:
    """A machine with `sockets` packages, each running `cores_per_socket`
    threads (one per core)."""

    sockets: int
    cores_per_socket: int

    def __post_init__(self) -> None:
        if self.sockets < 1:
            raise ValueError(f"sockets must be >= 1, got {self.sockets}")
        if self.cores_per_socket < 1:
            raise ValueError(
                f"cores_per_socket must be >= 1, got {self.cores_per_socket}"
            )

    @property
    def capacity(self) -> int:
        """Number of schedulable threads: sockets * cores_per_socket."""
        return self.sockets * self.cores_per_socket


@dataclass(frozen=True, eq=False)
class AccessMatrix:
    """Per-quantum DRAM access counts: counts[t, s] is the number of
    accesses thread t made to memory homed on socket s."""

    counts: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_int64(self.counts, what="access counts")
        if arr.ndim != 2:
            raise ValueError(f"access counts must be 2-D, got {arr.ndim}-D")
        if arr.size and int(arr.min()) < 0:
            raise ValueError("access counts must be non-negative")
        object.__setattr__(self, "counts", arr)

    @classmethod
    def from_rows(cls, rows) -> "AccessMatrix":
        return cls(np.array(rows))

    @property
    def n_threads(self) -> int:
        return self.counts.shape[0]

    @property
    def n_sockets(self) -> int:
        return self.counts.shape[1]

    def total(self) -> int:
        """Grand total of all entries (exact, never wraps)."""
        return _checked_sum(self.counts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AccessMatrix):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Schedule:
    """Total mapping of threads to sockets: assignment[t] is thread t's
    socket for the quantum."""

    assignment: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_int64(self.assignment, what="socket assignments")
        if arr.ndim != 1:
            raise ValueError("assignment must be 1-D (indexed by thread id)")
        object.__setattr__(self, "assignment", arr)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Schedule":
        """Build from a thread -> socket mapping; ids must be dense 0..N-1."""
        n = len(mapping)
        arr = np.full(n, -1, dtype=np.int64)
        for thread, socket in mapping.items():
            if not 0 <= thread < n:
                raise ValueError(f"thread ids must be dense 0..{n - 1}, got {thread}")
            arr[thread] = socket
        return cls(arr)

    @property
    def n_threads(self) -> int:
        return self.assignment.shape[0]

    def __getitem__(self, thread: int) -> int:
        return int(self.assignment[thread])

    def __len__(self) -> int:
        return self.n_threads

    def as_dict(self) -> dict[int, int]:
        return {t: int(s) for t, s in enumerate(self.assignment)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Schedule):
            return NotImplemented
        return np.array_equal(self.assignment, other.assignment)

    __hash__ = None


@dataclass(frozen=True)
class QuantumMetrics:
    """Scoring of one quantum: the local/remote access split, placement
    churn against the previous schedule, and selection-work counters."""

    local_accesses: int
    remote_accesses: int
    migrations: int
    selection_calls: int = 0
    recomputations: int = 0

    @property
    def total_accesses(self) -> int:
        return self.local_accesses + self.remote_accesses


def validate_schedule(schedule: Schedule, topology: Topology) -> str | None:
    """Check both placement invariants; None if valid, else a description
    of the first violated one (missing thread, bad socket, capacity)."""
    cap = topology.capacity
    n = schedule.n_threads
    if n < cap:
        return f"missing thread {n}: schedule covers {n} threads, capacity is {cap}"
    if n > cap:
        return f"unexpected thread {cap}: schedule covers {n} threads, capacity is {cap}"
    assignment = schedule.assignment
    if n:
        lo, hi = int(assignment.min()), int(assignment.max())
        if lo < 0 or hi >= topology.sockets:
            bad = lo if lo < 0 else hi
            return f"socket {bad} out of range [0, {topology.sockets})"
    per_socket = np.bincount(assignment, minlength=topology.sockets)
    for socket, occupancy in enumerate(per_socket):
        if occupancy > topology.cores_per_socket:
            return f"socket {socket} over capacity: {int(occupancy)} > {topology.cores_per_socket}"
        if occupancy < topology.cores_per_socket:
            return f"socket {socket} under capacity: {int(occupancy)} < {topology.cores_per_socket}"
    return None


def locality_cost(matrix: AccessMatrix, schedule: Schedule) -> tuple[int, int]:
    """Split the matrix total into (local, remote) accesses under the
    given placement. local + remote always equals the grand total."""
    counts = matrix.counts
    if schedule.n_threads != counts.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix has {counts.shape[0]} threads, "
            f"schedule has {schedule.n_threads}"
        )
    assignment = schedule.assignment
    if counts.shape[0] and (
        int(assignment.min()) < 0 or int(assignment.max()) >= counts.shape[1]
    ):
        raise ValueError("schedule names a socket outside the matrix columns")
    local_entries = counts[np.arange(counts.shape[0]), assignment]
    local = _checked_sum(local_entries)
    return local, matrix.total() - local


def count_migrations(previous: Schedule, next_schedule: Schedule) -> int:
    """Number of threads whose socket differs between two schedules."""
    if previous.n_threads != next_schedule.n_threads:
        raise ValueError(
            f"mismatched thread populations: {previous.n_threads} vs "
            f"{next_schedule.n_threads}"
        )
    return int((previous.assignment != next_schedule.assignment).sum())
