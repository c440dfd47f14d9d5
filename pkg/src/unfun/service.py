"""HTTP front door: task issuance, submissions, ratings, leaderboard, export.

Handlers are stateless; every mutation goes through the store's locked
writer.  Task sampling draws a per-request generator from the server seed
and a request counter, so a seeded server replays identically.
"""

from __future__ import annotations

import itertools
import uuid
from random import Random
from typing import Optional

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .config import ServerConfig
from .game import Label, NoTaskError, TaskKind, reward_rating, sample_task
from .store import CorpusStore, RatingRecord, Submission, UnknownHeadlineError

SESSION_COOKIE = "unfun_session"
SESSION_HEADER = "X-Session-Token"


class UnfunBody(BaseModel):
    headline_id: str
    modified_text: str


class RatingItem(BaseModel):
    id: str
    value: float = Field(ge=0.0, le=1.0)


class RatingsBody(BaseModel):
    items: list[RatingItem] = Field(min_length=2, max_length=2)


def create_app(store: CorpusStore, config: Optional[ServerConfig] = None) -> FastAPI:
    config = config or ServerConfig()
    reward_cfg = config.reward_config()
    app = FastAPI(title="unfun", version="0.1.0")
    request_counter = itertools.count()

    def session_id(request: Request, response: Response) -> str:
        token = request.headers.get(SESSION_HEADER) or request.cookies.get(SESSION_COOKIE)
        if not token:
            token = uuid.uuid4().hex[:16]
        response.set_cookie(SESSION_COOKIE, token)
        return token

    @app.get("/api/task")
    def get_task(request: Request, response: Response):
        player = session_id(request, response)
        rng = Random(f"{config.seed}:{next(request_counter)}")
        try:
            task = sample_task(store.task_pool(), player, rng, reward_cfg,
                               pattern_priority=config.pattern_priority)
        except NoTaskError as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        if task.kind is TaskKind.TASK1:
            return {"task": "unfun", "headline": task.headline_text,
                    "headline_id": task.headline_id}
        store.open_assignment(player, task.modified_id, task.ground_truth_id,
                              task.ground_truth_label)
        return {"task": "rate",
                "items": [{"id": i, "text": t} for i, t in task.items]}

    @app.post("/api/unfun")
    def post_unfun(body: UnfunBody, request: Request, response: Response):
        player = session_id(request, response)
        if not body.modified_text.strip():
            raise HTTPException(status_code=422, detail="modified_text is empty")
        try:
            modified = store.record_submission(
                Submission(player_id=player, original_id=body.headline_id,
                           modified_text=body.modified_text)
            )
        except UnknownHeadlineError:
            raise HTTPException(status_code=404, detail="unknown headline")
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        submission = store.get_submission(player, body.headline_id, body.modified_text)
        return {"submission_id": submission.id, "modified_id": modified.id,
                "pending_reward": True}

    @app.post("/api/ratings")
    def post_ratings(body: RatingsBody, request: Request, response: Response):
        player = session_id(request, response)
        item_ids = [item.id for item in body.items]
        assignment = store.find_open_assignment(player, item_ids)
        if assignment is None:
            raise HTTPException(status_code=409, detail="no open rating assignment for these items")
        values = {item.id: item.value for item in body.items}
        for item_id in item_ids:
            if store.record_rating(RatingRecord(player, item_id, values[item_id])) == "duplicate":
                raise HTTPException(status_code=409, detail="already rated")
        store.close_assignment(assignment["seq"])
        truth_id = assignment["ground_truth_id"]
        reward = reward_rating(values[truth_id], Label(assignment["ground_truth_label"]),
                               reward_cfg)
        store.bank_rating_reward(player, reward)
        return {"reward": reward}

    @app.get("/api/me")
    def get_me(request: Request, response: Response):
        player = session_id(request, response)
        profile = store.player_profile(player, reward_cfg)
        return {
            "player_id": profile.player_id,
            "unfun_reward": profile.unfun_reward,
            "rating_reward": profile.rating_reward,
            "total_reward": profile.unfun_reward + profile.rating_reward,
            "submissions": profile.submissions,
            "ratings": profile.ratings,
        }

    @app.get("/api/leaderboard")
    def get_leaderboard(limit: Optional[int] = None):
        profiles = store.leaderboard(limit or config.leaderboard_size, reward_cfg)
        return [
            {
                "player_id": p.player_id,
                "total_reward": p.unfun_reward + p.rating_reward,
                "unfun_reward": p.unfun_reward,
                "rating_reward": p.rating_reward,
            }
            for p in profiles
        ]

    @app.get("/api/export")
    def get_export():
        return PlainTextResponse(store.export_pairs_text(),
                                 media_type="application/jsonl; charset=utf-8")

    if config.static_dir:
        from pathlib import Path

        from fastapi.staticfiles import StaticFiles

        static = Path(config.static_dir)
        if static.is_dir():
            app.mount("/", StaticFiles(directory=str(static), html=True), name="ui")

    return app
