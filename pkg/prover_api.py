import logging
from typing import Any, Dict, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from core_terms import bird_print
from frontend import ParseError, parse, parse_term, render_clause, render_proof_line
from oracle import CapExceeded, normalize, ruleset
from saturation import LimitReached, ProofFound, saturate
from trc_corpus import run_corpus

logger = logging.getLogger(__name__)

app = FastAPI(title="microtter")


class ProveRequest(BaseModel):
    text: str
    overrides: Dict[str, Any] = Field(default_factory=dict)


class NormalizeRequest(BaseModel):
    term: str
    system: str = "trcstar"
    cap: Optional[int] = Field(default=None, ge=1)


@app.get("/")
def health():
    return {"status": "ok"}


@app.post("/prove")
def prove(request: ProveRequest):
    try:
        parsed = parse(request.text, source="request")
    except ParseError as e:
        raise HTTPException(status_code=400, detail=str(e))
    try:
        outcome = saturate(parsed, request.overrides)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))

    bird = parsed.options.bird_print
    logger.info(f"🧮 /prove 결과: {type(outcome).__name__}")
    body = {
        "outcome": type(outcome).__name__,
        "exit_status": outcome.exit_status,
        "statistics": dict(outcome.statistics.rows()),
    }
    if isinstance(outcome, ProofFound):
        body["success"] = render_clause(outcome.success, bird)
        body["proof"] = [render_proof_line(c, bird) for c in outcome.proof]
    if isinstance(outcome, LimitReached):
        body["limit"] = outcome.which
    return body


@app.post("/normalize")
def normalize_term(request: NormalizeRequest):
    try:
        term = parse_term(request.term)
        result = normalize(term, ruleset(request.system), request.cap)
    except (ParseError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    if isinstance(result, CapExceeded):
        return {"cap_exceeded": True, "last": bird_print(result.last), "steps": result.steps}
    return {"normal_form": bird_print(result.term), "steps": result.steps}


@app.get("/corpus")
def corpus():
    logger.info("📊 문제 모음 실행을 시작합니다.")
    report = run_corpus()
    return {
        "passed": report.passed,
        "rows": [row.__dict__ for row in report.rows],
    }
