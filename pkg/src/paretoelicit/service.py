"""Live elicitation sessions over HTTP.

A session owns one framework run and exposes it question by question: the
service serves the currently selected question, accumulates votes, finalizes
outcomes through threshold aggregation plus contradiction resolution, and
reports partitions, results, and the dominance graph.  Strictly sequential:
a session never has two open questions.

Concurrency: sessions are independent; within a session, vote submission is
applied under a per-session lock and reads see the latest finalized state.
"""

from __future__ import annotations

import hashlib
import json
import secrets
import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .aggregation import AggregationConfig, VoteTally, aggregate, resolve_contradiction
from .errors import (
    CorruptSnapshot,
    Exhausted,
    InvalidSpec,
    SessionTerminal,
    StaleQuestion,
    UnknownSession,
)
from .knowledge import KnowledgeBase, is_terminal
from .model import Outcome, Question, Vote, make_problem
from .report import export_dominance_graph
from .rng import SplitMix64
from .selection import candidate_sets, make_strategy

SNAPSHOT_VERSION = 1


@dataclass(frozen=True)
class SessionConfig:
    """Aggregation parameters plus the per-question response cap.

    A question finalizes as soon as a strict outcome reaches the threshold
    (with at least ``k_min`` responses), when no strict outcome can reach it
    anymore, or when ``response_cap`` responses have been collected.  Skips
    count toward none of these.  Interactive single-human sessions use
    k_min = 1, theta = 0.51, response_cap = 1 so one answer finalizes each
    question.
    """

    k_min: int = 5
    theta: float = 0.6
    response_cap: int | None = None

    @property
    def cap(self) -> int:
        return self.response_cap if self.response_cap is not None else 3 * self.k_min

    def aggregation(self) -> AggregationConfig:
        return AggregationConfig(k_min=self.k_min, theta=self.theta)


INTERACTIVE_SESSION = SessionConfig(k_min=1, theta=0.51, response_cap=1)


class Session:
    def __init__(
        self,
        objects,
        criteria,
        strategy: str = "frq",
        cfg: SessionConfig | None = None,
        seed: int = 0,
        session_id: str | None = None,
    ):
        self.problem = make_problem(objects, criteria)
        self.id = session_id or secrets.token_hex(8)
        self.cfg = cfg or SessionConfig()
        self.cfg.aggregation()  # validate theta/k_min now
        self.strategy = make_strategy(strategy)
        self.rng = SplitMix64(seed)
        self.kb = KnowledgeBase(self.problem)
        self.partition = self.kb.compute_partition()
        self.posed = 0
        self.question_counter = 0
        self.current: Question | None = None
        self.current_id: str | None = None
        self.tally = VoteTally()
        self.votes: list[tuple[str, str]] = []
        self.lock = threading.Lock()
        self._advance()

    # -- state machine -----------------------------------------------------

    @property
    def terminal(self) -> bool:
        return is_terminal(self.partition)

    def _advance(self) -> None:
        """Select the next question, or mark the session terminal."""
        if self.terminal:
            self.current = None
            self.current_id = None
            return
        cands = candidate_sets(self.kb, self.partition)
        try:
            q = self.strategy.select(self.kb, self.partition, cands, self.rng)
        except Exhausted as exc:  # pragma: no cover - candidates exist pre-termination
            raise AssertionError("no question available before termination") from exc
        self.current = q
        self.question_counter += 1
        self.current_id = f"q{self.question_counter}"
        self.posed += 1
        self.tally = VoteTally()
        self.votes = []

    def submit_vote(self, question_id: str, vote: Vote, respondent: str) -> dict:
        with self.lock:
            if self.terminal or self.current is None:
                raise SessionTerminal(f"session {self.id} already terminal")
            if question_id != self.current_id:
                raise StaleQuestion(
                    f"vote for {question_id!r} but open question is {self.current_id!r}"
                )
            self.votes.append((respondent, vote.value))
            self.tally = self.tally.with_vote(vote)
            outcome = self._maybe_finalize()
            delta = {
                "question_id": question_id,
                "finalized": outcome is not None,
                "outcome": outcome.value if outcome else None,
                "terminal": self.terminal,
                "tally": self._tally_dict(),
            }
            if outcome is not None:
                delta["next_question"] = self.question_view()
            return delta

    def _maybe_finalize(self) -> Outcome | None:
        tally = self.tally
        responded = tally.responded
        cap = self.cfg.cap
        if responded < self.cfg.k_min:
            return None
        proposed = aggregate(tally, self.cfg.aggregation())
        if proposed is Outcome.INDIFFERENT and responded < cap:
            # Wait while some strict outcome could still reach the threshold.
            headroom = cap - responded
            best_x = (tally.prefer_x + headroom) / cap
            best_y = (tally.prefer_y + headroom) / cap
            if best_x >= self.cfg.theta or best_y >= self.cfg.theta:
                return None
        return self._finalize(proposed)

    def _finalize(self, proposed: Outcome) -> Outcome:
        q = self.current
        assert q is not None
        final = resolve_contradiction(self.kb, q, proposed)
        self.kb.record_outcome(q, final)
        self.partition = self.kb.compute_partition()
        self._advance()
        return final

    # -- views ---------------------------------------------------------------

    def _tally_dict(self) -> dict:
        return {
            "prefer_x": self.tally.prefer_x,
            "prefer_y": self.tally.prefer_y,
            "indifferent": self.tally.indifferent,
            "skipped": self.tally.skipped,
        }

    def question_view(self) -> dict | None:
        if self.current is None:
            return None
        q = self.current
        return {
            "question_id": self.current_id,
            "x": self.problem.objects[q.x],
            "y": self.problem.objects[q.y],
            "criterion": self.problem.criteria[q.c],
            "choices": ["prefer_x", "indifferent", "prefer_y", "skip"],
        }

    def state_view(self) -> dict:
        part = self.partition
        labels = self.problem.objects
        cands = candidate_sets(self.kb, self.partition)
        return {
            "id": self.id,
            "status": "terminal" if self.terminal else "active",
            "objects": list(labels),
            "criteria": list(self.problem.criteria),
            "confirmed": sorted(labels[i] for i in part.confirmed),
            "unknown": sorted(labels[i] for i in part.unknown),
            "dominated": sorted(labels[i] for i in part.dominated),
            "asked": self.kb.asked_count,
            "derived": self.kb.derived_count,
            "remaining_candidates": len(cands.q1) + len(cands.q2),
            "brute_force_total": self.problem.brute_force_total(),
            "progress": self.kb.asked_count / max(self.problem.brute_force_total(), 1),
            "question": self.question_view(),
            "tally": self._tally_dict(),
        }

    def result_view(self) -> dict:
        part = self.partition
        labels = self.problem.objects
        return {
            "id": self.id,
            "terminal": self.terminal,
            "pareto": sorted(labels[i] for i in part.confirmed),
            "dominated": sorted(labels[i] for i in part.dominated),
            "asked": self.kb.asked_count,
        }

    def dominance_dot(self) -> str:
        return export_dominance_graph(self.kb, self.partition, draft=not self.terminal)

    # -- persistence -----------------------------------------------------

    def snapshot(self) -> dict:
        payload = {
            "id": self.id,
            "objects": list(self.problem.objects),
            "criteria": list(self.problem.criteria),
            "strategy": {"kind": self.strategy.kind, "state": self.strategy.state()},
            "cfg": {
                "k_min": self.cfg.k_min,
                "theta": self.cfg.theta,
                "response_cap": self.cfg.response_cap,
            },
            "rng_state": self.rng.getstate(),
            "asked": [
                [q.x, q.y, q.c, o.value] for q, o in self.kb.asked
            ],
            "posed": self.posed,
            "question_counter": self.question_counter,
            "current": None
            if self.current is None
            else {
                "question_id": self.current_id,
                "x": self.current.x,
                "y": self.current.y,
                "c": self.current.c,
                "tally": [
                    self.tally.prefer_x,
                    self.tally.prefer_y,
                    self.tally.indifferent,
                    self.tally.skipped,
                ],
                "votes": [list(v) for v in self.votes],
            },
        }
        body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        checksum = hashlib.sha256(body.encode()).hexdigest()
        return {"version": SNAPSHOT_VERSION, "payload": payload, "checksum": checksum}

    @classmethod
    def restore(cls, snapshot: dict) -> "Session":
        if not isinstance(snapshot, dict) or snapshot.get("version") != SNAPSHOT_VERSION:
            raise CorruptSnapshot("unsupported snapshot schema")
        payload = snapshot.get("payload")
        if payload is None or "checksum" not in snapshot:
            raise CorruptSnapshot("snapshot missing payload or checksum")
        body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        if hashlib.sha256(body.encode()).hexdigest() != snapshot["checksum"]:
            raise CorruptSnapshot("checksum mismatch")
        try:
            session = cls.__new__(cls)
            session.problem = make_problem(payload["objects"], payload["criteria"])
            session.id = payload["id"]
            cfg = payload["cfg"]
            session.cfg = SessionConfig(
                k_min=cfg["k_min"], theta=cfg["theta"], response_cap=cfg["response_cap"]
            )
            session.strategy = make_strategy(payload["strategy"]["kind"])
            session.strategy.restore(payload["strategy"]["state"])
            session.rng = SplitMix64(0)
            session.rng.setstate(payload["rng_state"])
            session.kb = KnowledgeBase(session.problem)
            for x, y, c, value in payload["asked"]:
                session.kb.record_outcome(Question(x, y, c), Outcome(value))
            session.partition = session.kb.compute_partition()
            session.posed = payload["posed"]
            session.question_counter = payload["question_counter"]
            current = payload["current"]
            if current is None:
                session.current = None
                session.current_id = None
                session.tally = VoteTally()
                session.votes = []
            else:
                session.current = Question(current["x"], current["y"], current["c"])
                session.current_id = current["question_id"]
                px, py, pi, sk = current["tally"]
                session.tally = VoteTally(px, py, pi, sk)
                session.votes = [tuple(v) for v in current["votes"]]
            session.lock = threading.Lock()
            return session
        except CorruptSnapshot:
            raise
        except Exception as exc:
            raise CorruptSnapshot(f"malformed snapshot: {exc}") from exc

    def persist(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.snapshot(), sort_keys=True, indent=1))


def load_session(path: str | Path) -> Session:
    try:
        snapshot = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptSnapshot(f"unreadable snapshot: {exc}") from exc
    return Session.restore(snapshot)


# -- HTTP layer --------------------------------------------------------------


class SessionSpec(BaseModel):
    objects: list[str]
    criteria: list[str]
    strategy: str = "frq"
    k_min: int = 5
    theta: float = 0.6
    response_cap: int | None = None
    seed: int = 0


class VoteBody(BaseModel):
    question_id: str
    vote: str
    respondent: str = "anonymous"


class SessionStore:
    def __init__(self, state_dir: str | Path | None = None):
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()
        self.state_dir = Path(state_dir) if state_dir else None
        if self.state_dir and self.state_dir.is_dir():
            for path in self.state_dir.glob("session-*.json"):
                session = load_session(path)
                self.sessions[session.id] = session

    def add(self, session: Session) -> None:
        with self.lock:
            self.sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self.lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id!r}")
        return session

    def persist(self, session: Session) -> None:
        if self.state_dir:
            self.state_dir.mkdir(parents=True, exist_ok=True)
            session.persist(self.state_dir / f"session-{session.id}.json")


def create_app(store: SessionStore | None = None, static_dir: str | Path | None = None) -> FastAPI:
    store = store or SessionStore()
    app = FastAPI(title="paretoelicit")
    app.state.store = store

    @app.exception_handler(UnknownSession)
    async def _unknown(request: Request, exc: UnknownSession):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(StaleQuestion)
    async def _stale(request: Request, exc: StaleQuestion):
        return JSONResponse(status_code=409, content={"error": str(exc), "kind": "stale_question"})

    @app.exception_handler(SessionTerminal)
    async def _terminal(request: Request, exc: SessionTerminal):
        return JSONResponse(status_code=409, content={"error": str(exc), "kind": "session_terminal"})

    @app.exception_handler(InvalidSpec)
    async def _invalid(request: Request, exc: InvalidSpec):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.post("/sessions", status_code=201)
    def create_session(spec: SessionSpec):
        if spec.strategy not in ("frq", "randomq", "randomp", "bruteforce"):
            raise InvalidSpec(f"unknown strategy {spec.strategy!r}")
        session = Session(
            spec.objects,
            spec.criteria,
            strategy=spec.strategy,
            cfg=SessionConfig(spec.k_min, spec.theta, spec.response_cap),
            seed=spec.seed,
        )
        store.add(session)
        store.persist(session)
        return session.state_view()

    @app.get("/sessions/{session_id}/question")
    def get_question(session_id: str):
        session = store.get(session_id)
        view = session.question_view()
        if view is None:
            raise SessionTerminal(f"session {session_id} is terminal")
        return view

    @app.post("/sessions/{session_id}/votes")
    def post_vote(session_id: str, body: VoteBody):
        session = store.get(session_id)
        try:
            vote = Vote(body.vote)
        except ValueError:
            raise InvalidSpec(f"unknown vote {body.vote!r}")
        delta = session.submit_vote(body.question_id, vote, body.respondent)
        if delta["finalized"]:
            store.persist(session)
        return delta

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        return store.get(session_id).state_view()

    @app.get("/sessions/{session_id}/result")
    def get_result(session_id: str):
        return store.get(session_id).result_view()

    @app.get("/sessions/{session_id}/dominance.dot")
    def get_dominance(session_id: str):
        return PlainTextResponse(
            store.get(session_id).dominance_dot(), media_type="text/vnd.graphviz"
        )

    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


app = create_app()
