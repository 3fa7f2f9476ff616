"""Stateful learner sessions over the planner, exposed as an HTTP API.

A session holds the plan produced by one strategy run plus the learner's
progress through it: candidates move from pending to consulted as they are
closed, readiness is recomputed from initial knowledge plus consulted
contents, and expansion results can be adopted into the pending list.
Sessions are snapshotted to a JSON file on every mutation so they survive
restarts.
"""

from __future__ import annotations

import enum
import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import wire
from .engine import (
    DEFAULT_CONFIG,
    CoursePlan,
    LearnerProfile,
    PlannerConfig,
    PlanStatus,
    PlanStep,
    backward_navigate,
    conceptual_expansion,
    forward_navigate,
    template_instantiate,
)
from .errors import (
    BudgetTooSmall,
    ConceptNavError,
    DuplicateId,
    EmptyObjective,
    EmptyTemplate,
    InvalidProfile,
    InvariantViolation,
    NoRelations,
    NotFound,
    ParseError,
    RuleConflict,
    UnknownType,
)
from .graphs import covers, merge_into
from .ontology import Ontology
from .store import ResourceStore


class Strategy(enum.Enum):
    BACKWARD = "backward"
    FORWARD = "forward"
    TEMPLATE = "template"


@dataclass
class Session:
    id: str
    profile: LearnerProfile
    strategy: Strategy
    plan: CoursePlan
    pending: list[str] = field(default_factory=list)
    consulted: list[str] = field(default_factory=list)
    created_at: float = 0.0

    def contains(self, candidate_id: str) -> bool:
        return candidate_id in self.pending or candidate_id in self.consulted


class SessionManager:
    """Creates, mutates, snapshots, and restores sessions."""

    def __init__(
        self,
        store: ResourceStore,
        ontology: Ontology,
        config: PlannerConfig = DEFAULT_CONFIG,
        snapshot_path: str | Path | None = None,
    ):
        self._store = store
        self._ontology = ontology
        self._config = config
        self._snapshot_path = Path(snapshot_path) if snapshot_path else None
        self._sessions: dict[str, Session] = {}
        self._lock = threading.RLock()
        if self._snapshot_path and self._snapshot_path.exists():
            self._restore()

    # -- lifecycle ------------------------------------------------------------

    def create(
        self,
        profile: LearnerProfile,
        strategy: Strategy,
        strategy_args: Mapping[str, Any] | None = None,
    ) -> Session:
        args = dict(strategy_args or {})
        plan = self._run_strategy(profile, strategy, args)
        with self._lock:
            session = Session(
                id=uuid.uuid4().hex,
                profile=profile,
                strategy=strategy,
                plan=plan,
                pending=[step.candidate_id for step in plan.steps],
                consulted=[],
                created_at=time.time(),
            )
            self._sessions[session.id] = session
            self._snapshot()
            return session

    def _run_strategy(
        self, profile: LearnerProfile, strategy: Strategy, args: dict[str, Any]
    ) -> CoursePlan:
        if strategy is Strategy.BACKWARD:
            return backward_navigate(profile, self._store, self._ontology, self._config)
        if strategy is Strategy.FORWARD:
            start_id = args.get("start_id")
            if not start_id:
                raise InvalidProfile("forward navigation needs strategy_args.start_id")
            if profile.time_budget is None:
                raise InvalidProfile("forward navigation needs a bounded time budget")
            return forward_navigate(
                start_id, self._store, self._ontology, profile.time_budget, self._config
            )
        if strategy is Strategy.TEMPLATE:
            segments = args.get("template")
            if not isinstance(segments, list):
                raise InvalidProfile("template strategy needs strategy_args.template")
            template = [wire.vector_from_json(seg) for seg in segments]
            return template_instantiate(
                template, profile, self._store, self._ontology, self._config
            )
        raise InvalidProfile(f"unknown strategy {strategy!r}")

    def get(self, session_id: str) -> Session:
        with self._lock:
            try:
                return self._sessions[session_id]
            except KeyError:
                raise NotFound(f"session {session_id}") from None

    # -- progress ------------------------------------------------------------

    def mark_consulted(self, session_id: str, candidate_id: str) -> Session:
        with self._lock:
            session = self.get(session_id)
            if candidate_id in session.consulted:
                return session
            if candidate_id not in session.pending:
                raise NotFound(f"{candidate_id} is not part of session {session_id}")
            session.pending.remove(candidate_id)
            session.consulted.append(candidate_id)
            self._snapshot()
            return session

    def readiness(self, session_id: str) -> list[dict[str, Any]]:
        with self._lock:
            session = self.get(session_id)
            acc = self._consulted_knowledge(session)
            report = []
            for candidate_id in session.pending:
                prereqs = self._store.resolve(candidate_id).prerequisites
                report.append(
                    {"id": candidate_id, "ready": covers(prereqs, acc, self._ontology)}
                )
            return report

    def _consulted_knowledge(self, session: Session):
        acc = session.profile.known
        for candidate_id in session.consulted:
            acc = merge_into(acc, self._store.resolve(candidate_id).content)
        return acc

    def request_more(self, session_id: str, candidate_id: str):
        with self._lock:
            session = self.get(session_id)
            if not session.contains(candidate_id):
                raise NotFound(f"{candidate_id} is not part of session {session_id}")
            members = set(session.pending) | set(session.consulted)
            return conceptual_expansion(
                candidate_id,
                self._store,
                self._ontology,
                limit=self._config.expansion_limit,
                unit=self._config.selection_unit,
                exclude=members,
            )

    def adopt(self, session_id: str, candidate_id: str) -> Session:
        with self._lock:
            session = self.get(session_id)
            self._store.resolve(candidate_id)  # NotFound for unknown candidates
            if session.contains(candidate_id):
                return session
            session.pending.append(candidate_id)
            self._snapshot()
            return session

    # -- views ---------------------------------------------------------------

    def session_json(self, session: Session) -> dict[str, Any]:
        with self._lock:
            readiness = {
                item["id"]: item["ready"] for item in self.readiness(session.id)
            }
            pending = []
            for candidate_id in session.pending:
                cand = self._store.resolve(candidate_id)
                pending.append(
                    {
                        "id": candidate_id,
                        "title": cand.title,
                        "uri": cand.uri,
                        "time": cand.time_value,
                        "ready": readiness[candidate_id],
                    }
                )
            consulted = []
            consulted_time = 0.0
            for candidate_id in session.consulted:
                cand = self._store.resolve(candidate_id)
                consulted.append(
                    {"id": candidate_id, "title": cand.title, "uri": cand.uri}
                )
                consulted_time += cand.time_value
            budget = session.profile.time_budget
            return {
                "id": session.id,
                "strategy": session.strategy.value,
                "created_at": session.created_at,
                "status": session.plan.status.value,
                "total_time": session.plan.total_time,
                "within_budget": session.plan.within_budget,
                "time_budget": budget,
                "remaining_time": None if budget is None else budget - consulted_time,
                "pending": pending,
                "consulted": consulted,
                "residual_objective": wire.vector_to_json(session.plan.residual_objective),
                "warnings": list(session.plan.warnings),
            }

    # -- persistence -----------------------------------------------------------

    def _snapshot(self) -> None:
        if self._snapshot_path is None:
            return
        payload = {"sessions": [self._session_snapshot(s) for s in self._sessions.values()]}
        self._snapshot_path.parent.mkdir(parents=True, exist_ok=True)
        self._snapshot_path.write_text(json.dumps(payload, indent=2), encoding="utf-8")

    @staticmethod
    def _session_snapshot(session: Session) -> dict[str, Any]:
        return {
            "id": session.id,
            "profile": wire.profile_to_json(session.profile),
            "strategy": session.strategy.value,
            "created_at": session.created_at,
            "pending": list(session.pending),
            "consulted": list(session.consulted),
            "plan": {
                "steps": [
                    {
                        "candidate_id": step.candidate_id,
                        "selection_round": step.selection_round,
                        "cp_at_selection": step.cp_at_selection,
                        "time_value": step.time_value,
                    }
                    for step in session.plan.steps
                ],
                "total_time": session.plan.total_time,
                "within_budget": session.plan.within_budget,
                "residual_objective": wire.vector_to_json(session.plan.residual_objective),
                "status": session.plan.status.value,
                "warnings": list(session.plan.warnings),
            },
        }

    def _restore(self) -> None:
        payload = json.loads(self._snapshot_path.read_text(encoding="utf-8"))
        for data in payload.get("sessions", []):
            plan_data = data["plan"]
            plan = CoursePlan(
                steps=tuple(
                    PlanStep(
                        candidate_id=s["candidate_id"],
                        selection_round=s["selection_round"],
                        cp_at_selection=s["cp_at_selection"],
                        time_value=s["time_value"],
                    )
                    for s in plan_data["steps"]
                ),
                total_time=plan_data["total_time"],
                within_budget=plan_data["within_budget"],
                residual_objective=wire.vector_from_json(plan_data["residual_objective"]),
                status=PlanStatus(plan_data["status"]),
                warnings=tuple(plan_data["warnings"]),
            )
            session = Session(
                id=data["id"],
                profile=wire.profile_from_json(data["profile"]),
                strategy=Strategy(data["strategy"]),
                plan=plan,
                pending=list(data["pending"]),
                consulted=list(data["consulted"]),
                created_at=data["created_at"],
            )
            self._sessions[session.id] = session


# -- HTTP API -----------------------------------------------------------------


class ProfileBody(BaseModel):
    known: list[dict[str, Any]] = []
    objective: list[dict[str, Any]] = []
    time_budget: float | None = None


class SessionBody(BaseModel):
    profile: ProfileBody
    strategy: str
    strategy_args: dict[str, Any] = {}


_STATUS_BY_ERROR: list[tuple[type[ConceptNavError], int]] = [
    (NotFound, 404),
    (DuplicateId, 409),
    (RuleConflict, 409),
    (EmptyObjective, 400),
    (EmptyTemplate, 400),
    (InvalidProfile, 400),
    (BudgetTooSmall, 400),
    (UnknownType, 400),
    (ParseError, 400),
    (InvariantViolation, 400),
]


def create_app(
    ontology: Ontology,
    store: ResourceStore,
    config: PlannerConfig = DEFAULT_CONFIG,
    sessions_path: str | Path | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    manager = SessionManager(store, ontology, config, sessions_path)
    app = FastAPI(title="conceptnav")
    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    @app.exception_handler(ConceptNavError)
    async def _domain_error(request: Request, exc: ConceptNavError) -> JSONResponse:
        for err_type, status in _STATUS_BY_ERROR:
            if isinstance(exc, err_type):
                return JSONResponse({"detail": str(exc)}, status_code=status)
        return JSONResponse({"detail": str(exc)}, status_code=500)

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionBody) -> dict[str, Any]:
        try:
            strategy = Strategy(body.strategy)
        except ValueError:
            raise InvalidProfile(f"unknown strategy {body.strategy!r}") from None
        profile = wire.profile_from_json(body.profile.model_dump())
        session = manager.create(profile, strategy, body.strategy_args)
        return manager.session_json(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict[str, Any]:
        return manager.session_json(manager.get(session_id))

    @app.get("/sessions/{session_id}/readiness")
    def get_readiness(session_id: str) -> dict[str, Any]:
        return {"steps": manager.readiness(session_id)}

    @app.post("/sessions/{session_id}/consulted/{candidate_id}")
    def consult(session_id: str, candidate_id: str) -> dict[str, Any]:
        return manager.session_json(manager.mark_consulted(session_id, candidate_id))

    @app.post("/sessions/{session_id}/more/{candidate_id}")
    def more(session_id: str, candidate_id: str) -> dict[str, Any]:
        try:
            ranked = manager.request_more(session_id, candidate_id)
        except NoRelations:
            return {"items": [], "reason": "no_relations"}
        items = []
        for r in ranked:
            cand = store.resolve(r.candidate_id)
            items.append(
                {
                    "id": r.candidate_id,
                    "cp": r.cp,
                    "time": r.time_value,
                    "title": cand.title,
                    "uri": cand.uri,
                }
            )
        return {"items": items, "reason": None}

    @app.post("/sessions/{session_id}/adopt/{candidate_id}")
    def adopt(session_id: str, candidate_id: str) -> dict[str, Any]:
        return manager.session_json(manager.adopt(session_id, candidate_id))

    @app.get("/resources")
    def resources() -> dict[str, Any]:
        return {
            "items": [
                {
                    "id": rd.id,
                    "title": rd.title,
                    "uri": rd.uri,
                    "time_value": rd.time_value,
                    "pedagogic_role": rd.pedagogic_role.name if rd.pedagogic_role else None,
                }
                for rd in store.list()
            ]
        }

    @app.get("/resources/{resource_id}")
    def resource(resource_id: str) -> dict[str, Any]:
        return wire.rd_to_json(store.get(resource_id))

    @app.get("/ontology")
    def ontology_view() -> dict[str, Any]:
        return wire.ontology_to_json(ontology)

    return app
