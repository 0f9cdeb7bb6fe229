"""Synchronous round-based message passing over a unit ball graph topology.

Lock-step semantics: everything a node sends during round r is readable by
the destination at the start of round r+1. Under CONGEST, a logical send is
chunked into ceil(words / W_MAX) per-round messages on its directed edge
(FIFO, at most one chunk per edge per round) and the destination sees the
reassembled message on the round its last chunk lands. Under LOCAL a send is
a single message of any size.

A word is one node id or one coordinate pair; payload width is counted in
words. Two engine primitives exist for LOCAL programs only: gather_khop(k),
which returns the induced k-hop neighborhood and charges k rounds, and
announce_edges, which files edge records with both endpoints and charges one
round.
"""
from __future__ import annotations

import csv
import io
import random
from collections import deque
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable

from .graph import EdgeList, UnitBallGraph, k_hop_neighborhood
from .metric import PointSet

W_MAX = 8  # CONGEST message width, in words


class Model(Enum):
    LOCAL = "LOCAL"
    CONGEST = "CONGEST"


class EngineError(RuntimeError):
    pass


class RoundLimitError(EngineError):
    def __init__(self, message: str, trace: "RoundTrace"):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class Message:
    kind: int
    src: int
    dst: int
    payload: tuple

    @property
    def words(self) -> int:
        return len(self.payload)


@dataclass
class TraceRow:
    round: int
    messages: int
    max_words: int


class RoundTrace:
    def __init__(self):
        self.rows: list[TraceRow] = []

    def append(self, row: TraceRow) -> None:
        if self.rows and row.round <= self.rows[-1].round:
            raise EngineError("trace rounds must increase monotonically")
        self.rows.append(row)

    @property
    def rounds_elapsed(self) -> int:
        return self.rows[-1].round if self.rows else 0

    @property
    def max_words(self) -> int:
        return max((r.max_words for r in self.rows), default=0)

    @property
    def total_messages(self) -> int:
        return sum(r.messages for r in self.rows)

    def extend_offset(self, other: "RoundTrace") -> None:
        """Append another trace's rows, renumbered to follow this one."""
        base = self.rounds_elapsed
        for row in other.rows:
            self.rows.append(TraceRow(base + row.round, row.messages, row.max_words))

    def to_csv(self, path: str | Path | None = None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["round", "messages", "max_words"])
        for row in self.rows:
            writer.writerow([row.round, row.messages, row.max_words])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text


class NodeProgram:
    """Per-node handler. Deterministic given its state, the sorted inbox, and
    the node's seeded PRNG stream."""

    def init(self, ctx: "NodeContext") -> None:  # pragma: no cover - interface
        pass

    def on_round(self, ctx: "NodeContext", inbox: list[Message]) -> None:
        raise NotImplementedError


@dataclass
class _Chunk:
    kind: int
    src: int
    dst: int
    words: tuple
    seq: int
    final: bool


class NodeContext:
    def __init__(self, engine: "Engine", node_id: int):
        self._engine = engine
        self.node_id = node_id
        self.halted = False
        self.output: dict = {}
        self.rng = random.Random(f"{engine.seed}/{node_id}")
        self._gather_due: int | None = None
        self._gather_result: tuple[PointSet, EdgeList] | None = None

    @property
    def model(self) -> Model:
        return self._engine.model

    @property
    def round(self) -> int:
        return self._engine.round

    @property
    def coords(self) -> tuple:
        return tuple(self._engine.graph.points.point(self.node_id).coords)

    @property
    def neighbors(self) -> dict[int, float]:
        return self._engine.neighbor_weights[self.node_id]

    @property
    def neighbor_coords(self) -> dict[int, tuple]:
        return self._engine.neighbor_coords[self.node_id]

    def send(self, dst: int, kind: int, payload: Iterable, atomic: bool = False) -> int:
        """Logical send; returns the number of chunks it will occupy."""
        return self._engine._send(self.node_id, dst, kind, tuple(payload), atomic)

    def gather_khop(self, k: int) -> None:
        self._engine._request_gather(self, k)

    @property
    def gather_ready(self) -> bool:
        return self._gather_result is not None and self._gather_due == self._engine.round

    @property
    def gather_result(self) -> tuple[PointSet, EdgeList]:
        if self._gather_result is None:
            raise EngineError("no gather result available")
        return self._gather_result

    def announce_edges(self, records: Iterable[tuple[int, int, float]]) -> None:
        self._engine._announce(self.node_id, list(records))

    def halt(self) -> None:
        self.halted = True


class Engine:
    def __init__(
        self,
        graph: UnitBallGraph,
        program_factory: Callable[[int], NodeProgram],
        model: Model,
        round_limit: int = 100_000,
        seed: int = 0,
    ):
        if round_limit < 1:
            raise ValueError("round_limit must be >= 1")
        self.graph = graph
        self.model = model
        self.round_limit = round_limit
        self.seed = seed
        self.round = 0
        self.trace = RoundTrace()
        ids = [int(i) for i in graph.ids]
        self.neighbor_weights = {i: dict(graph.neighbors_of(i)) for i in ids}
        self.neighbor_coords = {
            i: {j: tuple(graph.points.point(j).coords) for j in self.neighbor_weights[i]}
            for i in ids
        }
        self.contexts = {i: NodeContext(self, i) for i in ids}
        self.programs = {i: program_factory(i) for i in ids}
        self.stores: dict[int, list[tuple[int, int, float]]] = {i: [] for i in ids}
        self._queues: dict[tuple[int, int], deque[_Chunk]] = {}
        self._partial: dict[tuple[int, int, int], list] = {}
        self._inboxes: dict[int, list[Message]] = {i: [] for i in ids}
        self._announces: list[tuple[int, list[tuple[int, int, float]]]] = []
        self._seq = 0

    # -- program-facing internals ------------------------------------------

    def _send(self, src: int, dst: int, kind: int, payload: tuple, atomic: bool) -> int:
        if dst not in self.neighbor_weights[src]:
            raise EngineError(f"node {src} tried to message non-neighbor {dst}")
        self._seq += 1
        if self.model is Model.LOCAL:
            chunks = [_Chunk(kind, src, dst, payload, self._seq, True)]
        else:
            if atomic and len(payload) > W_MAX:
                raise EngineError(
                    f"atomic payload of {len(payload)} words exceeds W_MAX={W_MAX}"
                )
            parts = [payload[i : i + W_MAX] for i in range(0, len(payload), W_MAX)]
            if not parts:
                parts = [()]
            chunks = [
                _Chunk(kind, src, dst, part, self._seq, idx == len(parts) - 1)
                for idx, part in enumerate(parts)
            ]
        self._queues.setdefault((src, dst), deque()).extend(chunks)
        return len(chunks)

    def _request_gather(self, ctx: NodeContext, k: int) -> None:
        if self.model is not Model.LOCAL:
            raise EngineError("gather_khop is a LOCAL-only primitive")
        if k < 0:
            raise EngineError("gather_khop needs k >= 0")
        sub = k_hop_neighborhood(self.graph, ctx.node_id, k)
        edges = self.graph.induced(sub.ids).edge_list()
        ctx._gather_result = (sub, edges)
        ctx._gather_due = self.round + k

    def _announce(self, src: int, records: list[tuple[int, int, float]]) -> None:
        if self.model is not Model.LOCAL:
            raise EngineError("announce_edges is a LOCAL-only primitive")
        self._announces.append((self.round + 1, records))

    # -- main loop -----------------------------------------------------------

    def _idle(self) -> bool:
        if any(self._queues.values()):
            return False
        if self._announces:
            return False
        for ctx in self.contexts.values():
            if not ctx.halted:
                return False
            if ctx._gather_due is not None and ctx._gather_due > self.round:
                return False
        return True

    def run(self) -> tuple[dict[int, dict], RoundTrace]:
        for node in sorted(self.programs):
            self.programs[node].init(self.contexts[node])
        while not self._idle():
            if self.round >= self.round_limit:
                raise RoundLimitError(
                    f"round limit {self.round_limit} exhausted", self.trace
                )
            self.round += 1
            messages = 0
            max_words = 0
            for key in sorted(self._queues):
                queue = self._queues[key]
                chunk = queue.popleft()
                if not queue:
                    del self._queues[key]
                messages += 1
                max_words = max(max_words, len(chunk.words))
                if self.model is Model.CONGEST and len(chunk.words) > W_MAX:
                    raise EngineError("CONGEST width violated")  # unreachable
                part_key = (chunk.src, chunk.dst, chunk.seq)
                self._partial.setdefault(part_key, []).extend(chunk.words)
                if chunk.final:
                    words = tuple(self._partial.pop(part_key))
                    self._inboxes[chunk.dst].append(
                        Message(chunk.kind, chunk.src, chunk.dst, words)
                    )
            due_now = [rec for due, rec in self._announces if due == self.round]
            self._announces = [
                (due, rec) for due, rec in self._announces if due != self.round
            ]
            for records in due_now:
                for u, v, w in records:
                    self.stores[u].append((u, v, w))
                    self.stores[v].append((u, v, w))
            for node in sorted(self.programs):
                ctx = self.contexts[node]
                # Stable sort: FIFO arrival order within equal (src, kind).
                inbox = sorted(self._inboxes[node], key=lambda m: (m.src, m.kind))
                self._inboxes[node] = []
                if ctx.halted:
                    continue
                self.programs[node].on_round(ctx, inbox)
            self.trace.append(TraceRow(self.round, messages, max_words))
        outputs = {node: self.contexts[node].output for node in sorted(self.contexts)}
        return outputs, self.trace


def run(
    g: UnitBallGraph,
    program_factory: Callable[[int], NodeProgram],
    model: Model,
    round_limit: int = 100_000,
    seed: int = 0,
) -> tuple[dict[int, dict], RoundTrace]:
    """Run one synchronous protocol to completion; see module docstring."""
    return Engine(g, program_factory, model, round_limit=round_limit, seed=seed).run()
