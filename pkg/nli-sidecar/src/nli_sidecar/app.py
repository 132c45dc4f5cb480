"""The HTTP service: three endpoints, strict error contract.

POST /v1/entail scores one premise against 1..64 hypothesis sentences.
Malformed bodies get 400 with the offending field path, overload gets 429
with Retry-After, scorer crashes get 500. GET /healthz and GET /v1/meta
are unauthenticated probes.
"""

import argparse
import threading

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .scoring import CONVENTION, pick_scorer

MAX_HYPOTHESES = 64
MAX_BODY_BYTES = 1_048_576


class EntailRequest(BaseModel):
    premise: str
    hypotheses: list[str] = Field(min_length=1, max_length=MAX_HYPOTHESES)


class _InflightGate:
    """Counting gate; acquire never blocks, it just says no."""

    def __init__(self, limit: int):
        self.limit = limit
        self._lock = threading.Lock()
        self._inflight = 0

    def acquire(self) -> bool:
        with self._lock:
            if self._inflight >= self.limit:
                return False
            self._inflight += 1
            return True

    def release(self) -> None:
        with self._lock:
            self._inflight -= 1


def _field_path(error: dict) -> str:
    return ".".join(str(part) for part in error.get("loc", ()))


def create_app(scorer=None, model_ref: str = None, max_inflight: int = 8,
               token: str = None) -> FastAPI:
    if scorer is None:
        scorer = pick_scorer(model_ref)
    app = FastAPI(title="nli-sidecar", docs_url=None, redoc_url=None)
    gate = _InflightGate(max_inflight)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        return JSONResponse(
            status_code=400,
            content={
                "error": first.get("msg", "malformed request"),
                "field": _field_path(first) or "body",
            },
        )

    @app.middleware("http")
    async def body_size_limit(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and int(length) > MAX_BODY_BYTES:
            return JSONResponse(
                status_code=400,
                content={"error": "payload exceeds 1 MB", "field": "body"},
            )
        return await call_next(request)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/v1/meta")
    def meta():
        return {
            "model_id": scorer.model_id,
            "convention": CONVENTION,
            "max_hypotheses": MAX_HYPOTHESES,
        }

    @app.post("/v1/entail")
    def entail(body: EntailRequest, request: Request):
        if token is not None and request.headers.get("x-token") != token:
            return JSONResponse(
                status_code=401,
                content={"error": "invalid or missing token", "field": "headers.x-token"},
            )
        if not gate.acquire():
            return JSONResponse(
                status_code=429,
                content={"error": "too many in-flight requests"},
                headers={"Retry-After": "1"},
            )
        try:
            scores = scorer.score_pairs(body.premise, body.hypotheses)
        except Exception as exc:
            return JSONResponse(
                status_code=500,
                content={"error": f"model failure: {exc}"},
            )
        finally:
            gate.release()
        return {
            "scores": scores,
            "model_id": scorer.model_id,
            "convention": CONVENTION,
        }

    return app


def main() -> None:
    import uvicorn

    parser = argparse.ArgumentParser(description="NLI entailment scoring service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8400)
    parser.add_argument("--model", default=None,
                        help="transformers model id or local path; omit for the offline scorer")
    parser.add_argument("--max-inflight", type=int, default=8)
    parser.add_argument("--token", default=None,
                        help="require this value in the X-Token header")
    args = parser.parse_args()
    uvicorn.run(
        create_app(model_ref=args.model, max_inflight=args.max_inflight,
                   token=args.token),
        host=args.host, port=args.port,
    )


if __name__ == "__main__":
    main()
