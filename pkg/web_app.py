#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
곡면 격자 계산기 웹 인터페이스

CLI 와 같은 JSON 레코드를 HTTP 로 제공합니다.
라이브러리 오류는 입력 오류 422, 정리 적용 불가 409, 탐색 한도 초과 503 으로 응답합니다.
"""

import logging
from pathlib import Path
from typing import List, Literal, Optional

from fastapi import FastAPI, Query, Request
from fastapi.responses import HTMLResponse, JSONResponse, PlainTextResponse
from fastapi.templating import Jinja2Templates
from pydantic import BaseModel
import uvicorn

# 로컬 모듈 임포트
import reports
import surfaces
from data_manager import Settings, load_config
from lattices import errors
from lattices.lattice_core import make_lattice, parse_decomposition, standard
from run import lattice_record

# 로깅 설정
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# FastAPI 앱 초기화
app = FastAPI(
    title="곡면 격자 계산기",
    description="곡면의 교차 격자와 원시 격자 P_X 계산",
    version="1.0.0"
)

# 템플릿 엔진 설정
template_dir = Path(__file__).resolve().parent / "templates"
templates = Jinja2Templates(directory=str(template_dir))

# 전역 설정 (startup 에서 설정 파일로 교체)
settings = Settings()

HTTP_STATUS = {2: 422, 3: 409, 4: 503}


class SurfaceRequest(BaseModel):
    b1: int
    c1sq: int
    c2: int
    h_sq: int
    h_characteristic: bool
    parity: Literal["even", "odd"]
    canonically_polarized: bool = False
    mod_z: bool = False


class GramRequest(BaseModel):
    gram: List[List[int]]
    mod_z: bool = False


class ExprRequest(BaseModel):
    expr: str
    mod_z: bool = False


@app.exception_handler(errors.LatticeError)
async def lattice_error_handler(request: Request, exc: errors.LatticeError):
    status = HTTP_STATUS.get(exc.exit_code, 422)
    logger.error(f"{request.url.path}: {type(exc).__name__} - {exc}")
    return JSONResponse(
        status_code=status,
        content={"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code},
    )


@app.on_event("startup")
async def startup_event():
    """애플리케이션 시작 시 설정 로드"""
    global settings
    logger.info("곡면 격자 계산기를 시작합니다...")
    settings = load_config()


@app.get("/", response_class=HTMLResponse)
async def home(request: Request):
    """메인 페이지: 예제 표 목록"""
    return templates.TemplateResponse(
        request,
        "index.html",
        {"request": request, "tables": [t for t in reports.TABLES if t != "candidates"]},
    )


@app.post("/api/surface/classify")
async def classify_surface(body: SurfaceRequest):
    """곡면 불변량으로부터 원시 격자 P_X 결정"""
    inv = surfaces.derive_invariants(body.b1, body.c1sq, body.c2)
    result = surfaces.primitive_lattice(
        inv,
        even=body.parity == "even",
        hsq=body.h_sq,
        h_characteristic=body.h_characteristic,
        canonically_polarized=body.canonically_polarized,
        **settings.search_options(),
    )
    return result.to_json(mod_z=body.mod_z)


@app.post("/api/lattice/info")
async def lattice_info(body: GramRequest):
    return lattice_record(make_lattice(body.gram), mod_z=body.mod_z)


@app.post("/api/lattice/standard")
async def lattice_standard(body: ExprRequest):
    """분해 문자열의 표준 그람과 종"""
    expr = parse_decomposition(body.expr)
    lattice = standard(expr)
    record = lattice_record(lattice, mod_z=body.mod_z)
    record.update({"decomposition": str(expr), "gram": lattice.rows()})
    return record


@app.get("/api/examples/{table}", response_class=PlainTextResponse)
async def example_table(table: str, c1sq: Optional[int] = Query(None, description="candidates 표의 c1²")):
    """예제 표 텍스트 (CLI 의 examples reproduce 와 같은 출력)"""
    return reports.reproduce(table, settings, c1sq=c1sq)


if __name__ == "__main__":
    uvicorn.run(
        "web_app:app",
        host="0.0.0.0",
        port=8000,
        reload=True,
        log_level="info"
    )
