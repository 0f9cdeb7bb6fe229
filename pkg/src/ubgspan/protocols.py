"""Distributed node programs: randomized MIS, the LOCAL spanner protocol, the
CONGEST spanner protocol (short-edge and long-edge phases), and their offline
emulators used as oracles.

Round accounting contracts:
  * LOCAL spanner runs: exactly MIS rounds + 3 (gather two hops costs 2,
    announcing edges to endpoints costs 1).
  * CONGEST spanner runs: exactly MIS rounds + T_END, where T_END is a fixed
    calendar computed from per-phase chunk budgets below. The budgets are
    protocol constants (independent of n); every logical send asserts its
    budget, so an instance denser than the design envelope fails loudly
    instead of silently stretching the schedule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import EdgeList, UnitBallGraph, build_ubg, k_hop_neighborhood
from .metric import PointSet
from .netsim import Engine, Model, NodeProgram, RoundTrace
from .spanner import Spanner, centralized_euclidean_spanner, centralized_spanner


class ProtocolError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Greedy MIS over known point sets (ascending id; used inside single nodes)
# ---------------------------------------------------------------------------


def _greedy_mis_ids(ids: list[int], coords: dict[int, tuple], r: float) -> list[int]:
    chosen: list[int] = []
    for i in sorted(ids):
        ci = coords[i]
        ok = True
        for j in chosen:
            cj = coords[j]
            acc = 0.0
            for a, b in zip(ci, cj):
                diff = a - b
                acc = acc + diff * diff
            if math.sqrt(acc) <= r:
                ok = False
                break
        if ok:
            chosen.append(i)
    return chosen


def local_mis_greedy(ps: PointSet, r: float) -> set[int]:
    """Greedy r-separated maximal set: scan ids ascending, keep a point iff no
    kept point lies within distance <= r."""
    coords = {int(i): tuple(c) for i, c in zip(ps.ids, ps.coords)}
    return set(_greedy_mis_ids(list(coords), coords, r))


# ---------------------------------------------------------------------------
# Distributed MIS (Luby-style, 3 rounds per iteration)
# ---------------------------------------------------------------------------

_PRIO, _JOIN, _RETIRE = 11, 12, 13


@dataclass
class MISResult:
    members: frozenset[int]
    rounds: int


class LubyMISProgram(NodeProgram):
    """Each iteration: propose random priorities, local minima join and
    announce, dominated nodes retire and announce, survivors go again."""

    def __init__(self, node_id: int):
        self.node = node_id
        self.active: set[int] = set()
        self.phase = "decide"
        self.my_prio = 0

    def _join(self, ctx) -> None:
        for nb in sorted(self.active):
            ctx.send(nb, _JOIN, ())
        ctx.output["in_mis"] = True
        ctx.halt()

    def _propose(self, ctx) -> None:
        self.my_prio = ctx.rng.getrandbits(62)
        for nb in sorted(self.active):
            ctx.send(nb, _PRIO, (self.my_prio,))
        self.phase = "decide"

    def init(self, ctx) -> None:
        self.active = set(ctx.neighbors)
        if not self.active:
            ctx.output["in_mis"] = True
            ctx.halt()
            return
        self._propose(ctx)

    def on_round(self, ctx, inbox) -> None:
        if self.phase == "decide":
            prios = {m.src: m.payload[0] for m in inbox if m.kind == _PRIO}
            mine = (self.my_prio, self.node)
            if all(mine < (prios[nb], nb) for nb in self.active):
                self._join(ctx)
                return
            self.phase = "joins"
        elif self.phase == "joins":
            joined = {m.src for m in inbox if m.kind == _JOIN}
            if joined:
                # Joiners are halted; only surviving neighbors need the notice.
                for nb in sorted(self.active - joined):
                    ctx.send(nb, _RETIRE, ())
                ctx.output["in_mis"] = False
                ctx.halt()
                return
            self.phase = "retires"
        elif self.phase == "retires":
            self.active -= {m.src for m in inbox if m.kind == _RETIRE}
            if not self.active:
                ctx.output["in_mis"] = True
                ctx.halt()
                return
            self._propose(ctx)


def _run_mis(
    g: UnitBallGraph, seed: int, model: Model, round_limit: int
) -> tuple[frozenset[int], RoundTrace]:
    engine = Engine(g, LubyMISProgram, model, round_limit=round_limit, seed=seed)
    outputs, trace = engine.run()
    members = frozenset(i for i, out in outputs.items() if out.get("in_mis"))
    return members, trace


def distributed_mis(
    g: UnitBallGraph,
    seed: int,
    model: Model = Model.CONGEST,
    round_limit: int = 100_000,
) -> MISResult:
    """Round-based randomized MIS on the simulator; rounds are recorded but no
    specific round bound is asserted."""
    members, trace = _run_mis(g, seed, model, round_limit)
    return MISResult(members, trace.rounds_elapsed)


# ---------------------------------------------------------------------------
# LOCAL protocol: centers span their 2-hop neighborhoods
# ---------------------------------------------------------------------------


@dataclass
class ProtocolResult:
    spanner: Spanner
    trace: RoundTrace
    rounds: int
    mis_rounds: int
    mis_members: frozenset[int]
    shares: dict[int, EdgeList]
    protocol: str = ""
    param: float = 0.0
    artifacts: "CongestArtifacts | None" = None

    @property
    def max_words(self) -> int:
        return self.trace.max_words

    def summary(self) -> dict:
        return {
            "protocol": self.protocol,
            "n": self.spanner.points.n,
            "param": self.param,
            "rounds": self.rounds,
            "mis_rounds": self.mis_rounds,
            "max_words": self.max_words,
        }


class LocalSpannerProgram(NodeProgram):
    def __init__(self, node_id: int, centers: frozenset[int], build_share):
        self.node = node_id
        self.is_center = node_id in centers
        self.build_share = build_share

    def init(self, ctx) -> None:
        if self.is_center:
            ctx.gather_khop(2)
        else:
            ctx.halt()

    def on_round(self, ctx, inbox) -> None:
        if ctx.gather_ready:
            sub, _ = ctx.gather_result
            share = self.build_share(build_ubg(sub, 1.0))
            ctx.announce_edges(list(share.edges))
            ctx.output["share"] = share.edges
            ctx.halt()


def _run_local_protocol(
    g: UnitBallGraph,
    seed: int,
    stretch: float,
    build_share,
    round_limit: int,
    protocol: str,
    param: float,
) -> ProtocolResult:
    members, mis_trace = _run_mis(g, seed, Model.LOCAL, round_limit)
    engine = Engine(
        g,
        lambda i: LocalSpannerProgram(i, members, build_share),
        Model.LOCAL,
        round_limit=round_limit,
        seed=seed,
    )
    outputs, phase_trace = engine.run()
    edges = []
    for records in engine.stores.values():
        edges.extend(records)
    spanner = Spanner(g.points, EdgeList(edges), stretch)
    trace = RoundTrace()
    trace.extend_offset(mis_trace)
    trace.extend_offset(phase_trace)
    shares = {i: out["share"] for i, out in outputs.items() if "share" in out}
    return ProtocolResult(
        spanner=spanner,
        trace=trace,
        rounds=mis_trace.rounds_elapsed + phase_trace.rounds_elapsed,
        mis_rounds=mis_trace.rounds_elapsed,
        mis_members=members,
        shares=shares,
        protocol=protocol,
        param=param,
    )


def distributed_spanner(
    g: UnitBallGraph, eps: float, seed: int, round_limit: int = 100_000
) -> ProtocolResult:
    """LOCAL-model (1+eps)-spanner: MIS centers span their 2-hop balls."""
    if not (0 < eps <= 1.0):
        raise ValueError("eps must lie in (0, 1]")
    return _run_local_protocol(
        g, seed, 1.0 + eps, lambda ubg: centralized_spanner(ubg, eps),
        round_limit, "local", eps,
    )


def distributed_euclidean_spanner(
    g: UnitBallGraph, t: float, seed: int, round_limit: int = 100_000
) -> ProtocolResult:
    """LOCAL-model planar t-spanner: centers run the truncated greedy."""
    if t <= 1:
        raise ValueError("stretch factor t must exceed 1")
    if g.points.dimension != 2:
        raise ValueError("euclidean protocol expects planar points")
    return _run_local_protocol(
        g, seed, t, lambda ubg: centralized_euclidean_spanner(ubg, t),
        round_limit, "euclid", t,
    )


def emulate_local_shares(
    g: UnitBallGraph, members: frozenset[int], build_share
) -> dict[int, EdgeList]:
    """Offline emulation oracle: iterate centers sequentially."""
    shares = {}
    for w in sorted(members):
        sub = k_hop_neighborhood(g, w, 2)
        shares[w] = build_share(build_ubg(sub, 1.0)).edges
    return shares


# ---------------------------------------------------------------------------
# CONGEST protocol
# ---------------------------------------------------------------------------

# Per-edge chunk budgets (rounds). One word = one id or one coordinate pair.
REPLY_BUDGET = 64  # one membership reply: 2 words per member
TRIG_BUDGET = 32  # one trigger-relay batch: 1 word per target
DELIV_BUDGET = 32  # one partner-id delivery batch: 1 word per record
SPRIME_BUDGET = 768  # one relayed record batch: 2 words per record
FWD_BUDGET = 128  # forwarded partner ids emitted by one relay edge

_SIG1, _REPLY1, _SIG2 = 1, 21, 2
_SIG3, _REPLY3, _SIG4 = 3, 23, 4
_TRIG2_RELAY, _TRIG4_RELAY = 32, 34
_SPRIME_RELAY, _DELIV = 40, 41


def congest_calendar() -> dict[str, int]:
    """Fixed wake-up rounds; identical for every node and every instance."""
    t_i = 1 + REPLY_BUDGET
    t_sle = t_i + TRIG_BUDGET + 1
    t_l0 = t_sle + DELIV_BUDGET
    t_j = t_l0 + 1 + REPLY_BUDGET
    t_sdd = t_j + TRIG_BUDGET + 1
    t_end = t_j + TRIG_BUDGET + SPRIME_BUDGET + FWD_BUDGET + DELIV_BUDGET
    return {
        "T_I": t_i,
        "T_SLE": t_sle,
        "T_L0": t_l0,
        "T_J": t_j,
        "T_SDD": t_sdd,
        "T_END": t_end,
    }


CONGEST_OVERHEAD = congest_calendar()["T_END"]


@dataclass
class CongestArtifacts:
    """Per-center sets needed by the covering checks, as computed in-protocol."""

    i_of: dict[int, list[int]] = field(default_factory=dict)
    i_prime_of: dict[int, list[int]] = field(default_factory=dict)


class CongestSpannerProgram(NodeProgram):
    def __init__(self, node_id: int, centers: frozenset[int], eps: float):
        self.node = node_id
        self.is_center = node_id in centers
        self.eps = eps
        self.cal = congest_calendar()
        self._wake = set(self.cal.values())
        self.reply1: dict[int, list[tuple[int, tuple]]] = {}
        self.reply3: dict[int, list[tuple[int, tuple]]] = {}
        self.triggered2 = False
        self.triggered4 = False
        self.forwarded2: set[int] = set()
        self.forwarded4: set[int] = set()
        self.incident: set[tuple[int, int]] = set()
        self.i_w: list[int] = []
        self.i_prime_w: list[int] = []

    # -- helpers -------------------------------------------------------------

    def _known_points(self, ctx) -> tuple[list[int], dict[int, tuple]]:
        coords = {self.node: ctx.coords}
        coords.update(ctx.neighbor_coords)
        return sorted(coords), coords

    def _mis_reply(self, ctx, requester: int, r: float) -> list[tuple[int, tuple]]:
        ids, coords = self._known_points(ctx)
        members = _greedy_mis_ids(ids, coords, r)
        return [(m, coords[m]) for m in members]

    def _send_budgeted(self, ctx, dst, kind, payload, budget, label) -> None:
        chunks = ctx.send(dst, kind, payload)
        if chunks > budget:
            raise ProtocolError(
                f"{label} to {dst} needs {chunks} rounds, budget {budget}"
            )

    def _record(self, a: int, b: int) -> None:
        self.incident.add((a, b) if a < b else (b, a))

    def _deliver_share(self, ctx, edges: EdgeList) -> None:
        """File each edge with both endpoints; all endpoints are neighbors."""
        per_target: dict[int, list[int]] = {}
        for u, v, _ in edges:
            for a, b in ((u, v), (v, u)):
                if a == self.node:
                    self._record(a, b)
                else:
                    per_target.setdefault(a, []).append(b)
        for a in sorted(per_target):
            self._send_budgeted(
                ctx, a, _DELIV, per_target[a], DELIV_BUDGET, "share delivery"
            )

    def _spanner_on(self, ids: list[int], coords: dict[int, tuple], eps: float) -> EdgeList:
        sids = sorted(ids)
        ps = PointSet(sids, [coords[i] for i in sids])
        return centralized_spanner(build_ubg(ps, 1.0), eps).edges

    # -- trigger fan-out via reporters ----------------------------------------

    def _fan_out_triggers(
        self, ctx, members: list[int], replies, kind: int, label: str
    ) -> bool:
        """Send one relay batch per reporting neighbor covering all 2-hop
        targets (the reporter forwards); direct neighbors ride the same batch.
        Returns whether this node itself is a member."""
        reporter: dict[int, int] = {}
        for src in sorted(replies):
            for mid, _ in replies[src]:
                reporter.setdefault(mid, src)
        batches: dict[int, list[int]] = {}
        self_member = False
        for m in members:
            if m == self.node:
                self_member = True
            elif m in ctx.neighbors:
                batches.setdefault(m, []).append(m)
            else:
                batches.setdefault(reporter[m], []).append(m)
        for v in sorted(batches):
            self._send_budgeted(ctx, v, kind, batches[v], TRIG_BUDGET, label)
        return self_member

    # -- message handling ------------------------------------------------------

    def _handle(self, ctx, m) -> None:
        if m.kind == _SIG1:
            reply = self._mis_reply(ctx, m.src, 0.25)
            words = [w for pair in reply for w in pair]
            self._send_budgeted(ctx, m.src, _REPLY1, words, REPLY_BUDGET, "I_1/4 reply")
        elif m.kind == _REPLY1:
            pairs = list(zip(m.payload[0::2], m.payload[1::2]))
            self.reply1[m.src] = [(int(i), tuple(c)) for i, c in pairs]
        elif m.kind == _TRIG2_RELAY:
            for target in m.payload:
                target = int(target)
                if target == self.node:
                    self.triggered2 = True
                elif target not in self.forwarded2:
                    self.forwarded2.add(target)
                    ctx.send(target, _SIG2, ())
        elif m.kind == _SIG2:
            if ctx.round > self.cal["T_SLE"]:
                raise ProtocolError("late short-phase trigger")
            self.triggered2 = True
        elif m.kind == _SIG3:
            reply = self._mis_reply(ctx, m.src, self.eps / 40.0)
            words = [w for pair in reply for w in pair]
            self._send_budgeted(ctx, m.src, _REPLY3, words, REPLY_BUDGET, "I_eps/40 reply")
        elif m.kind == _REPLY3:
            pairs = list(zip(m.payload[0::2], m.payload[1::2]))
            self.reply3[m.src] = [(int(i), tuple(c)) for i, c in pairs]
        elif m.kind == _TRIG4_RELAY:
            for target in m.payload:
                target = int(target)
                if target == self.node:
                    self.triggered4 = True
                elif target not in self.forwarded4:
                    self.forwarded4.add(target)
                    ctx.send(target, _SIG4, ())
        elif m.kind == _SIG4:
            if ctx.round > self.cal["T_SDD"]:
                raise ProtocolError("late long-phase trigger")
            self.triggered4 = True
        elif m.kind == _SPRIME_RELAY:
            per_target: dict[int, list[int]] = {}
            for tgt, partner in zip(m.payload[0::2], m.payload[1::2]):
                per_target.setdefault(int(tgt), []).append(int(partner))
            for tgt in sorted(per_target):
                self._send_budgeted(
                    ctx, tgt, _DELIV, per_target[tgt], FWD_BUDGET, "record forward"
                )
        elif m.kind == _DELIV:
            for partner in m.payload:
                self._record(self.node, int(partner))

    # -- per-phase actions ------------------------------------------------------

    def _short_phase_center(self, ctx) -> None:
        ids, coords = self._known_points(ctx)
        own = [(m, coords[m]) for m in _greedy_mis_ids(ids, coords, 0.25)]
        replies = dict(self.reply1)
        replies[self.node] = own
        union_coords: dict[int, tuple] = {}
        for entries in replies.values():
            for mid, c in entries:
                union_coords[mid] = c
        members = _greedy_mis_ids(list(union_coords), union_coords, 0.25)
        self.i_w = members
        if self._fan_out_triggers(ctx, members, replies, _TRIG2_RELAY, "type-2 triggers"):
            self.triggered2 = True

    def _long_phase_center(self, ctx) -> None:
        r = self.eps / 40.0
        ids, coords = self._known_points(ctx)
        own = [(m, coords[m]) for m in _greedy_mis_ids(ids, coords, r)]
        replies = dict(self.reply3)
        replies[self.node] = own
        union_coords: dict[int, tuple] = {}
        for entries in replies.values():
            for mid, c in entries:
                union_coords[mid] = c
        members = _greedy_mis_ids(list(union_coords), union_coords, r)
        self.i_prime_w = members
        if self._fan_out_triggers(ctx, members, replies, _TRIG4_RELAY, "type-4 triggers"):
            self.triggered4 = True
        # S'(w): spanner over the selected centers, stretched at eps/5.
        sprime = self._spanner_on(members, union_coords, self.eps / 5.0)
        reporter: dict[int, int] = {}
        for src in sorted(replies):
            for mid, _ in replies[src]:
                reporter.setdefault(mid, src)
        direct: dict[int, list[int]] = {}
        relayed: dict[int, list[int]] = {}
        for u, v, _ in sprime:
            for a, b in ((u, v), (v, u)):
                if a == self.node:
                    self._record(a, b)
                elif a in ctx.neighbors:
                    direct.setdefault(a, []).append(b)
                else:
                    relayed.setdefault(reporter[a], []).extend((a, b))
        for a in sorted(direct):
            self._send_budgeted(ctx, a, _DELIV, direct[a], DELIV_BUDGET, "S' delivery")
        for vrelay in sorted(relayed):
            self._send_budgeted(
                ctx, vrelay, _SPRIME_RELAY, relayed[vrelay], SPRIME_BUDGET, "S' relay"
            )
        ctx.output["sprime_share"] = sprime

    def _short_share(self, ctx) -> None:
        ids, coords = self._known_points(ctx)
        share = self._spanner_on(ids, coords, self.eps)
        ctx.output["short_share"] = share
        self._deliver_share(ctx, share)

    def _dd_share(self, ctx) -> None:
        ids, coords = self._known_points(ctx)
        me = coords[self.node]
        ball = []
        for i in ids:
            acc = 0.0
            for a, b in zip(coords[i], me):
                diff = a - b
                acc = acc + diff * diff
            if math.sqrt(acc) <= self.eps / 20.0:
                ball.append(i)
        share = self._spanner_on(ball, coords, self.eps)
        ctx.output["dd_share"] = share
        self._deliver_share(ctx, share)

    # -- engine hooks -------------------------------------------------------------

    def init(self, ctx) -> None:
        if self.is_center:
            for nb in sorted(ctx.neighbors):
                ctx.send(nb, _SIG1, ())

    def on_round(self, ctx, inbox) -> None:
        for m in inbox:
            self._handle(ctx, m)
        r = ctx.round
        if r not in self._wake:
            return
        if r == self.cal["T_I"] and self.is_center:
            self._short_phase_center(ctx)
        if r == self.cal["T_SLE"] and self.triggered2:
            self._short_share(ctx)
        if r == self.cal["T_L0"] and self.is_center:
            for nb in sorted(ctx.neighbors):
                ctx.send(nb, _SIG3, ())
        if r == self.cal["T_J"] and self.is_center:
            self._long_phase_center(ctx)
        if r == self.cal["T_SDD"] and self.triggered4:
            self._dd_share(ctx)
        if r == self.cal["T_END"]:
            ctx.output["edges"] = sorted(self.incident)
            if self.is_center:
                ctx.output["I_w"] = list(self.i_w)
                ctx.output["I_prime_w"] = list(self.i_prime_w)
            ctx.halt()


def congest_spanner(
    g: UnitBallGraph, eps: float, seed: int, round_limit: int = 100_000
) -> ProtocolResult:
    """CONGEST-model (1+eps)-spanner; every message fits W_MAX words and the
    post-MIS schedule is the fixed constant CONGEST_OVERHEAD."""
    if not (0 < eps <= 1.0):
        raise ValueError("eps must lie in (0, 1]")
    members, mis_trace = _run_mis(g, seed, Model.CONGEST, round_limit)
    engine = Engine(
        g,
        lambda i: CongestSpannerProgram(i, members, eps),
        Model.CONGEST,
        round_limit=round_limit,
        seed=seed,
    )
    outputs, phase_trace = engine.run()
    if phase_trace.rounds_elapsed != CONGEST_OVERHEAD:
        raise ProtocolError(
            f"schedule overrun: {phase_trace.rounds_elapsed} rounds, "
            f"expected {CONGEST_OVERHEAD}"
        )
    dmat = g.dmat
    row_of = g.points.row_of
    edges = []
    for out in outputs.values():
        for a, b in out.get("edges", ()):
            edges.append((a, b, float(dmat[row_of(a), row_of(b)])))
    spanner = Spanner(g.points, EdgeList(edges), 1.0 + eps)
    trace = RoundTrace()
    trace.extend_offset(mis_trace)
    trace.extend_offset(phase_trace)
    artifacts = CongestArtifacts(
        i_of={i: out["I_w"] for i, out in outputs.items() if "I_w" in out},
        i_prime_of={
            i: out["I_prime_w"] for i, out in outputs.items() if "I_prime_w" in out
        },
    )
    shares: dict[int, EdgeList] = {}
    for i, out in outputs.items():
        for key in ("short_share", "dd_share", "sprime_share"):
            if key in out:
                shares[i] = shares.get(i, EdgeList()).union(out[key])
    return ProtocolResult(
        spanner=spanner,
        trace=trace,
        rounds=mis_trace.rounds_elapsed + phase_trace.rounds_elapsed,
        mis_rounds=mis_trace.rounds_elapsed,
        mis_members=members,
        shares=shares,
        protocol="congest",
        param=eps,
        artifacts=artifacts,
    )


# ---------------------------------------------------------------------------
# Offline emulation of the CONGEST phases (oracle for the engine runs)
# ---------------------------------------------------------------------------


def _dist(a: tuple, b: tuple) -> float:
    acc = 0.0
    for x, y in zip(a, b):
        diff = x - y
        acc = acc + diff * diff
    return math.sqrt(acc)


def _closed_neighborhood(g: UnitBallGraph, v: int) -> tuple[list[int], dict[int, tuple]]:
    coords = {v: tuple(g.points.point(v).coords)}
    for nb, _ in g.neighbors_of(v):
        coords[nb] = tuple(g.points.point(nb).coords)
    return sorted(coords), coords


@dataclass
class ShortPhaseResult:
    i_w: list[int]
    shares: dict[int, EdgeList]


@dataclass
class LongPhaseResult:
    i_prime_w: list[int]
    sprime: EdgeList
    shares: dict[int, EdgeList]


def span_short_edges(g: UnitBallGraph, w: int, eps: float) -> ShortPhaseResult:
    """Functional form of the short-edge phase at center w: neighbors report
    their greedy 1/4-MIS, w selects covering centers, each spans its 1-hop
    ball at stretch 1+eps."""
    ids, coords = _closed_neighborhood(g, w)
    union_coords: dict[int, tuple] = {}
    for v in ids:
        v_ids, v_coords = _closed_neighborhood(g, v)
        for m in _greedy_mis_ids(v_ids, v_coords, 0.25):
            union_coords[m] = v_coords[m]
    members = _greedy_mis_ids(list(union_coords), union_coords, 0.25)
    shares = {}
    for m in members:
        m_ids, m_coords = _closed_neighborhood(g, m)
        ps = PointSet(m_ids, [m_coords[i] for i in m_ids])
        shares[m] = centralized_spanner(build_ubg(ps, 1.0), eps).edges
    return ShortPhaseResult(members, shares)


def span_long_edges(g: UnitBallGraph, w: int, eps: float) -> LongPhaseResult:
    """Functional form of the long-edge phase at center w: eps/40 covering
    centers, a stretched-down spanner over them, and eps/20-ball spanners."""
    r = eps / 40.0
    ids, coords = _closed_neighborhood(g, w)
    union_coords: dict[int, tuple] = {}
    for v in ids:
        v_ids, v_coords = _closed_neighborhood(g, v)
        for m in _greedy_mis_ids(v_ids, v_coords, r):
            union_coords[m] = v_coords[m]
    members = _greedy_mis_ids(list(union_coords), union_coords, r)
    smembers = sorted(members)
    ps = PointSet(smembers, [union_coords[i] for i in smembers])
    sprime = centralized_spanner(build_ubg(ps, 1.0), eps / 5.0).edges
    shares = {}
    for m in members:
        m_ids, m_coords = _closed_neighborhood(g, m)
        me = m_coords[m]
        ball = []
        for i in m_ids:
            acc = 0.0
            for a, b in zip(m_coords[i], me):
                diff = a - b
                acc = acc + diff * diff
            if math.sqrt(acc) <= eps / 20.0:
                ball.append(i)
        ps_ball = PointSet(ball, [m_coords[i] for i in ball])
        shares[m] = centralized_spanner(build_ubg(ps_ball, 1.0), eps).edges
    return LongPhaseResult(members, sprime, shares)


def emulate_congest(
    g: UnitBallGraph, members: frozenset[int], eps: float
) -> tuple[EdgeList, CongestArtifacts]:
    """Sequential emulation of the whole CONGEST protocol for a known MIS."""
    artifacts = CongestArtifacts()
    triggered2: set[int] = set()
    triggered4: set[int] = set()
    sprime_edges: list[tuple[int, int, float]] = []
    for w in sorted(members):
        short = span_short_edges(g, w, eps)
        artifacts.i_of[w] = short.i_w
        triggered2.update(short.i_w)
        long_ = span_long_edges(g, w, eps)
        artifacts.i_prime_of[w] = long_.i_prime_w
        triggered4.update(long_.i_prime_w)
        sprime_edges.extend(long_.sprime)
    edges = list(sprime_edges)
    for m in sorted(triggered2):
        m_ids, m_coords = _closed_neighborhood(g, m)
        ps = PointSet(m_ids, [m_coords[i] for i in m_ids])
        edges.extend(centralized_spanner(build_ubg(ps, 1.0), eps).edges)
    for m in sorted(triggered4):
        m_ids, m_coords = _closed_neighborhood(g, m)
        me = m_coords[m]
        ball = [
            i
            for i in m_ids
            if _dist(m_coords[i], me) <= eps / 20.0
        ]
        ps = PointSet(ball, [m_coords[i] for i in ball])
        edges.extend(centralized_spanner(build_ubg(ps, 1.0), eps).edges)
    return EdgeList(edges), artifacts
