"""HTTP JSON API: sessions, scenarios, surveys, images, visions, game, reports.

Every endpoint delegates to one engine operation. All non-2xx responses are a
single error envelope ``{code, message, details?}`` whose code comes straight
from the engine error, so clients can switch on it.
"""

from __future__ import annotations

import random
from pathlib import Path

from fastapi import Depends, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import analytics, content, game, survey
from .config import Config
from .domain import ImageRef, Role, ScenarioStatus, mood_catalog, parse_mood
from .errors import ConflictOnUnique, Forbidden, PlatformError, Unauthorized, ValidationError
from .images import HttpImageProvider, ImageSearch, ImageSearchQuery, StubImageProvider
from .sessions import Session, issue_session, verify_session
from .storage import Store, open_store

_STATUS_BY_CODE = {
    "validation_error": 400,
    "illegal_transition": 400,
    "scenario_not_published": 400,
    "incomplete_answers": 400,
    "level_out_of_range": 400,
    "invalid_query": 400,
    "self_guess": 400,
    "unauthorized": 401,
    "not_owner": 403,
    "forbidden": 403,
    "not_found": 404,
    "unknown_scenario": 404,
    "unknown_statement": 404,
    "unknown_vision": 404,
    "no_eligible_visions": 404,
    "duplicate_response": 409,
    "duplicate_guess": 409,
    "conflict_on_unique": 409,
    "provider_unavailable": 503,
    "rate_limited": 503,
    "storage_unavailable": 503,
    "transaction_conflict": 503,
}


def _envelope(code: str, message: str, details: dict | None = None) -> dict:
    body: dict = {"code": code, "message": message}
    if details:
        body["details"] = details
    return body


class SessionCreate(BaseModel):
    handle: str
    role: str | None = None


class ScenarioCreate(BaseModel):
    title: str
    description: str = ""
    statements: list[str] = []


class StatusPatch(BaseModel):
    status: str


class SurveySubmit(BaseModel):
    answers: dict[str, int]


class ImageBody(BaseModel):
    source_url: str
    thumbnail_url: str | None = None
    attribution: str = ""
    provider_id: str = ""


class VisionCreate(BaseModel):
    caption: str
    mood: str
    image: ImageBody | None = None
    image_url: str | None = None  # direct-URL fallback when the provider is down


class GuessCreate(BaseModel):
    vision_id: str
    guessed_mood: str


def build_image_search(config: Config) -> ImageSearch:
    if config.provider_base_url:
        provider = HttpImageProvider(config.provider_base_url, config.provider_api_key)
    else:
        provider = StubImageProvider()
    return ImageSearch(provider, ttl_seconds=config.cache_ttl_seconds)


def create_app(
    config: Config | None = None,
    store: Store | None = None,
    image_search: ImageSearch | None = None,
    rng: random.Random | None = None,
    webapp_dir: str | Path | None = None,
) -> FastAPI:
    config = config or Config.from_env()
    store = store or open_store(config.storage_url)
    image_search = image_search or build_image_search(config)
    rng = rng or random.Random()

    app = FastAPI(title="civicmood", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.config = config
    app.state.store = store
    app.state.image_search = image_search
    app.state.rng = rng

    app.add_middleware(
        CORSMiddleware,
        allow_origins=config.cors_origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(PlatformError)
    async def platform_error_handler(_request: Request, exc: PlatformError) -> JSONResponse:
        status = _STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse(
            status_code=status, content=_envelope(exc.code, exc.message, exc.details)
        )

    @app.exception_handler(RequestValidationError)
    async def request_validation_handler(
        _request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        details = {"errors": [str(e.get("msg", e)) for e in exc.errors()[:5]]}
        return JSONResponse(
            status_code=400, content=_envelope("validation_error", "invalid request body", details)
        )

    @app.exception_handler(StarletteHTTPException)
    async def http_exception_handler(
        _request: Request, exc: StarletteHTTPException
    ) -> JSONResponse:
        code = {404: "not_found", 405: "method_not_allowed"}.get(exc.status_code, "http_error")
        return JSONResponse(
            status_code=exc.status_code, content=_envelope(code, str(exc.detail))
        )

    @app.exception_handler(Exception)
    async def unexpected_error_handler(_request: Request, _exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=500, content=_envelope("internal_error", "unexpected server error")
        )

    def current_session(request: Request) -> Session:
        auth = request.headers.get("authorization", "")
        if not auth.lower().startswith("bearer "):
            raise Unauthorized("missing bearer session token")
        return verify_session(auth[7:].strip(), config.session_secret)

    def policymaker_session(session: Session = Depends(current_session)) -> Session:
        if session.role is not Role.POLICYMAKER:
            raise Forbidden("this endpoint requires a policymaker session")
        return session

    # -- sessions ----------------------------------------------------------

    @app.post("/api/sessions", status_code=201)
    def create_session(body: SessionCreate, request: Request) -> JSONResponse:
        role = Role.CITIZEN
        if body.role is not None:
            try:
                role = Role(body.role)
            except ValueError:
                raise ValidationError("role must be citizen or policymaker", role=body.role) from None
        if role is Role.POLICYMAKER:
            admin_key = request.headers.get("x-admin-key", "")
            if not config.admin_key or admin_key != config.admin_key:
                raise Forbidden("policymaker sessions require a valid X-Admin-Key header")
        try:
            user = store.users.create(body.handle, role)
        except ConflictOnUnique:
            raise ConflictOnUnique("handle already taken", handle=body.handle) from None
        session = issue_session(user.user_id, user.role, config.session_secret)
        return JSONResponse(status_code=201, content=session.to_dict())

    # -- scenarios ---------------------------------------------------------

    @app.post("/api/scenarios", status_code=201)
    def post_scenario(
        body: ScenarioCreate, session: Session = Depends(policymaker_session)
    ) -> JSONResponse:
        owner = store.users.get(session.user_id)
        scenario = content.create_scenario(
            store, owner, body.title, body.description, body.statements
        )
        return JSONResponse(status_code=201, content=scenario.to_dict())

    @app.patch("/api/scenarios/{scenario_id}/status")
    def patch_status(
        scenario_id: str, body: StatusPatch, session: Session = Depends(current_session)
    ) -> dict:
        try:
            target = ScenarioStatus(body.status)
        except ValueError:
            raise ValidationError("unknown scenario status", status=body.status) from None
        return content.change_scenario_status(store, session.user_id, scenario_id, target).to_dict()

    @app.get("/api/scenarios")
    def get_scenarios(
        status: str | None = None, _session: Session = Depends(current_session)
    ) -> list[dict]:
        parsed = None
        if status is not None:
            try:
                parsed = ScenarioStatus(status)
            except ValueError:
                raise ValidationError("unknown scenario status", status=status) from None
        return [s.to_dict() for s in content.list_scenarios(store, parsed)]

    @app.get("/api/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str, _session: Session = Depends(current_session)) -> dict:
        return survey.get_scenario(store, scenario_id).to_dict()

    # -- survey ------------------------------------------------------------

    @app.get("/api/scenarios/{scenario_id}/survey")
    def get_survey(scenario_id: str, _session: Session = Depends(current_session)) -> dict:
        scenario = survey.get_scenario(store, scenario_id)
        return {
            "scenario_id": scenario.scenario_id,
            "statements": [s.to_dict() for s in scenario.statements],
        }

    @app.post("/api/scenarios/{scenario_id}/survey-responses", status_code=201)
    def post_survey_response(
        scenario_id: str, body: SurveySubmit, session: Session = Depends(current_session)
    ) -> JSONResponse:
        response = survey.submit_response(store, session.user_id, scenario_id, body.answers)
        return JSONResponse(status_code=201, content=response.to_dict())

    # -- images ------------------------------------------------------------

    @app.get("/api/images")
    def get_images(
        q: str = Query(default=""),
        page: int = Query(default=1),
        per_page: int = Query(default=20),
        _session: Session = Depends(current_session),
    ) -> dict:
        result = image_search.search_images(ImageSearchQuery(keywords=q, page=page, per_page=per_page))
        return result.to_dict()

    # -- visions -----------------------------------------------------------

    @app.post("/api/scenarios/{scenario_id}/visions", status_code=201)
    def post_vision(
        scenario_id: str, body: VisionCreate, session: Session = Depends(current_session)
    ) -> JSONResponse:
        if body.image is not None:
            image = ImageRef(
                source_url=body.image.source_url,
                thumbnail_url=body.image.thumbnail_url or body.image.source_url,
                attribution=body.image.attribution,
                provider_id=body.image.provider_id,
            )
        elif body.image_url:
            image = ImageRef(source_url=body.image_url, thumbnail_url=body.image_url)
        else:
            raise ValidationError("either image or image_url is required")
        vision = content.create_vision(
            store, session.user_id, scenario_id, image, body.caption, parse_mood(body.mood)
        )
        return JSONResponse(status_code=201, content=vision.to_dict())

    @app.get("/api/scenarios/{scenario_id}/visions")
    def get_vision_feed(
        scenario_id: str,
        page: int = Query(default=1),
        page_size: int = Query(default=20),
        _session: Session = Depends(current_session),
    ) -> dict:
        return content.vision_feed(store, scenario_id, page=page, page_size=page_size).to_dict()

    # -- game ----------------------------------------------------------------

    @app.get("/api/moods")
    def get_moods(_session: Session = Depends(current_session)) -> list[dict]:
        return [
            {"value": mood.value, "valence": mood.valence, "arousal": mood.arousal}
            for mood in mood_catalog()
        ]

    @app.get("/api/scenarios/{scenario_id}/game/next")
    def get_next_challenge(
        scenario_id: str, session: Session = Depends(current_session)
    ) -> dict:
        vision = game.next_challenge(store, session.user_id, scenario_id, rng=rng)
        return game.challenge_view(vision)

    @app.post("/api/guesses", status_code=201)
    def post_guess(body: GuessCreate, session: Session = Depends(current_session)) -> JSONResponse:
        result = game.submit_guess(
            store, session.user_id, body.vision_id, parse_mood(body.guessed_mood), config.scoring
        )
        return JSONResponse(status_code=201, content=result.to_dict())

    @app.get("/api/users/me/stats")
    def get_my_stats(
        scenario: str = Query(...), session: Session = Depends(current_session)
    ) -> dict:
        return game.player_stats(store, session.user_id, scenario).to_dict()

    @app.get("/api/users/me/empathy")
    def get_my_empathy(
        scenario: str = Query(...), session: Session = Depends(current_session)
    ) -> dict:
        return game.empathy_profile(store, session.user_id, scenario).to_dict()

    # -- reports & health ----------------------------------------------------

    @app.get("/api/scenarios/{scenario_id}/report")
    def get_report(scenario_id: str, session: Session = Depends(policymaker_session)) -> dict:
        return analytics.scenario_report(store, scenario_id, session.role).to_dict()

    @app.get("/api/health")
    def get_health() -> dict:
        handle = store.handle
        return {"status": "ok", "schema_version": handle.schema_version}

    if webapp_dir and Path(webapp_dir).is_dir():
        app.mount("/app", StaticFiles(directory=str(webapp_dir), html=True), name="webapp")

    return app
