import logging
from contextlib import asynccontextmanager
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from app.config import settings
from app.dsl.spec_parser import parse_spec
from app.errors import LabError
from app.handlers.commands import commands
from app.ordinals.cnf import parse_ordinal

# Configure logging
logging.basicConfig(level=getattr(logging, settings.log_level.upper()))
logger = logging.getLogger(__name__)


class RankRequest(BaseModel):
    spec: str
    name: str
    alpha: Optional[str] = None


class TreeRequest(BaseModel):
    spec: str
    name: str
    k: int = Field(ge=0)
    format: Literal["json", "dot"] = "json"


class ClassifyRequest(BaseModel):
    expr: str
    spec: str = ""
    alpha: Optional[str] = None


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager"""
    logger.info("Starting CLI rank laboratory...")
    logger.info(f"✅ Element budget {settings.max_group_order}, ordinal depth {settings.ordinal_max_depth}")
    yield
    logger.info("✅ CLI rank laboratory shutdown complete")


# Create FastAPI app
app = FastAPI(
    title="CLI Rank Laboratory",
    description="Ordinal ranks of chain groups and symbolic CLI groups",
    version="1.0.0",
    lifespan=lifespan
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _bad_request(e: LabError) -> HTTPException:
    logger.error(f"❌ {type(e).__name__}: {e}")
    return HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}")


# Health check endpoint
@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "message": "CLI rank laboratory is running"}


@app.post("/rank")
def rank(request: RankRequest):
    """rho_k table of a chain group or classification of an expression"""
    try:
        alpha = parse_ordinal(request.alpha) if request.alpha else None
        return commands.cmd_rank(parse_spec(request.spec), request.name, alpha)
    except LabError as e:
        raise _bad_request(e)


@app.post("/tree")
def tree(request: TreeRequest):
    """Orbit tree of G/G_k as JSON records or DOT"""
    try:
        return commands.cmd_tree(parse_spec(request.spec), request.name, request.k, request.format)
    except LabError as e:
        raise _bad_request(e)


@app.post("/classify")
def classify(request: ClassifyRequest):
    """Classify an expression written inline, resolved against an optional spec"""
    try:
        spec = parse_spec(f"{request.spec}\ngroup __query__ = {request.expr}\n")
        alpha = parse_ordinal(request.alpha) if request.alpha else None
        return commands.classify(spec.expr("__query__"), alpha)
    except LabError as e:
        raise _bad_request(e)


@app.get("/examples")
def examples(alpha: str = Query(...), kind: Optional[Literal["G", "H"]] = None):
    """The witnesses G_alpha and H_alpha with their classifications"""
    try:
        return commands.cmd_examples(parse_ordinal(alpha), kind)
    except LabError as e:
        raise _bad_request(e)
