# main.py
"""HTTP front end for the q-calculus: family tables, conversions, suites and the characterization replay"""

import asyncio
import logging
from contextlib import asynccontextmanager
from datetime import datetime
from fractions import Fraction
from functools import partial
from typing import Any, Callable, Dict, List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

import config
from qcalculus import __version__
from qcalculus.errors import QCalcError
from services import calc_service
from services.cache_service import cache_manager

logging.basicConfig(level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)


# Lifecycle management for the result cache
@asynccontextmanager
async def lifespan(app: FastAPI):
    """Initialize and close the result cache"""
    await cache_manager.initialize()

    health = await cache_manager.health_check()
    if health.get("redis_available"):
        logger.info(f"Redis connected: {health.get('status')}")
    else:
        logger.warning("Redis not available - using the local result store")

    yield

    await cache_manager.close()


app = FastAPI(title="q-calculus", version=__version__, lifespan=lifespan)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["http://localhost:3000"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


class EvalRequest(BaseModel):
    name: str
    n: int = Field(ge=0)
    x: str
    s: Optional[str] = None
    q: Optional[str] = None
    precision: int = Field(default=config.PRECISION_BITS, ge=16)


class CharacterizeRequest(BaseModel):
    max_n: int = Field(default=10, ge=4)
    # "a1:a2:s" triples; None means the configured grid
    samples: Optional[List[str]] = None


async def run_blocking(fn: Callable[..., Any], *args, **kwargs) -> Any:
    """Run a computation in the default executor under the request timeout"""
    loop = asyncio.get_event_loop()
    try:
        return await asyncio.wait_for(
            loop.run_in_executor(None, partial(fn, *args, **kwargs)),
            timeout=config.REQUEST_TIMEOUT,
        )
    except asyncio.TimeoutError:
        logger.error(f"{fn.__name__} timed out after {config.REQUEST_TIMEOUT}s")
        raise HTTPException(status_code=504, detail="computation timed out")
    except QCalcError as e:
        raise HTTPException(status_code=400, detail=str(e))


async def cached(kind: str, compute: Callable[[], Any], **params: Any) -> Dict[str, Any]:
    """Serve from the cache, else compute, serialize and store"""
    key = cache_manager.make_key(kind, **params)
    hit = await cache_manager.get_json(key)
    if hit is not None:
        return hit
    result = await run_blocking(compute)
    payload = result.to_dict()
    await cache_manager.set_json(key, payload)
    return payload


@app.get("/family/{name}/{n}")
async def family(name: str, n: int):
    def compute():
        table, _ = calc_service.build_family(name, n)
        return table

    return await cached("family", compute, name=name, n=n)


@app.get("/convert/{direction}/{n}")
async def convert(direction: str, n: int):
    return await cached("convert", partial(calc_service.convert, direction, n), direction=direction, n=n)


@app.post("/eval")
async def evaluate(request: EvalRequest):
    result = await run_blocking(
        calc_service.evaluate,
        request.name,
        request.n,
        request.x,
        s=request.s,
        q=request.q,
        precision=request.precision,
    )
    return result.to_dict()


@app.get("/verify/{suite}")
async def verify(
    suite: str,
    max_n: int = config.MAX_N,
    t_order: int = config.T_ORDER,
    iterated_max_n: int = config.ITERATED_MAX_N,
):
    payload = await cached(
        "verify",
        partial(calc_service.verify, suite, max_n, t_order, iterated_max_n),
        suite=suite,
        max_n=max_n,
        t_order=t_order,
        iterated_max_n=iterated_max_n,
    )
    payload["passed"] = not payload.get("failures")
    return payload


@app.post("/characterize")
async def characterize(request: CharacterizeRequest):
    if request.samples is None:
        samples = list(config.SAMPLES)
    else:
        try:
            samples = config.parse_samples(";".join(request.samples))
        except (ValueError, ZeroDivisionError) as e:
            raise HTTPException(status_code=400, detail=f"bad sample: {e}")
    report = await run_blocking(calc_service.characterize, request.max_n, samples, Fraction(config.CERT_S))
    return report.to_dict()


@app.get("/health")
async def health():
    """Health check with cache status"""
    cache_health = await cache_manager.health_check()

    return {
        "status": "healthy",
        "cache": cache_health,
        "timestamp": datetime.now().isoformat(),
    }


@app.get("/")
async def home():
    """Simple status page"""
    return {
        "status": "running",
        "service": "q-calculus",
        "version": __version__,
        "families": list(calc_service.FAMILY_NAMES),
        "suites": list(calc_service.SUITE_NAMES),
        "directions": list(calc_service.DIRECTIONS),
        "endpoints": {
            "family": "/family/{name}/{n} (GET)",
            "convert": "/convert/{direction}/{n} (GET)",
            "eval": "/eval (POST)",
            "verify": "/verify/{suite} (GET)",
            "characterize": "/characterize (POST)",
            "health": "/health (GET)",
        },
    }


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=config.PORT)
