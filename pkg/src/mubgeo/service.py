"""HTTP service wrapping construction, verification, and audits.

Every endpoint is a pure function of its request body, so responses are as
reproducible as the CLI artifacts.  Invalid parameters map to 422 with the
same machine-readable error codes the CLI emits.
"""

from typing import List, Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import audit as audit_mod
from . import verify as verify_mod
from .cli import geometry_payload
from .constructions import build_family
from .errors import MubError

app = FastAPI(title="mubgeo",
              description="Complete MUB families: construction, exact "
                          "verification, and structure audits")


class ConstructionParams(BaseModel):
    construction: Literal["planar", "alltop", "symplectic", "galois-ring"]
    p: Optional[int] = None
    n: int
    s: Optional[int] = None
    planar_poly: Optional[List[int]] = Field(
        default=None, description="ascending coefficients over Z_p")


class VerifyRequest(BaseModel):
    family: ConstructionParams
    mode: Literal["full", "sampled"] = "full"
    samples: int = 200
    seed: int = 0


class CompareRequest(BaseModel):
    family_a: ConstructionParams
    family_b: ConstructionParams


class FamilyResponse(BaseModel):
    q: int
    m: int
    construction: str
    params: dict
    includes_standard_basis: bool
    bases: List[List[List[int]]]


class VerifyResponse(BaseModel):
    family: dict
    mode: str
    seed: Optional[int]
    verdict: str
    histogram: dict
    failures: list
    pairs_checked: int


class CompareResponse(BaseModel):
    verdict: str
    size_a: int
    size_b: int
    only_in_a: List[List[int]]
    only_in_b: List[List[int]]


def _build(params: ConstructionParams):
    try:
        return build_family(params.construction, p=params.p, n=params.n,
                            s=params.s, planar_poly=params.planar_poly)
    except MubError as exc:
        raise HTTPException(status_code=422, detail=exc.as_dict())


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/construct", response_model=FamilyResponse)
def construct(params: ConstructionParams):
    return _build(params).to_json_dict()


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest):
    family = _build(request.family)
    try:
        report = verify_mod.verify_family(family, mode=request.mode,
                                          samples=request.samples,
                                          seed=request.seed)
    except MubError as exc:
        raise HTTPException(status_code=422, detail=exc.as_dict())
    return report.to_json_dict()


@app.post("/audit")
def audit(params: ConstructionParams):
    family = _build(params)
    try:
        return audit_mod.audit_family(family).to_json_dict()
    except MubError as exc:
        raise HTTPException(status_code=422, detail=exc.as_dict())


@app.post("/geometry")
def geometry(params: ConstructionParams):
    family = _build(params)
    try:
        return geometry_payload(audit_mod.audit_family(family))
    except MubError as exc:
        raise HTTPException(status_code=422, detail=exc.as_dict())


@app.post("/all")
def run_all(request: VerifyRequest):
    family = _build(request.family)
    try:
        report = verify_mod.verify_family(family, mode=request.mode,
                                          samples=request.samples,
                                          seed=request.seed)
        audit_report = audit_mod.audit_family(family)
    except MubError as exc:
        raise HTTPException(status_code=422, detail=exc.as_dict())
    return {"family": family.to_json_dict(),
            "verify": report.to_json_dict(),
            "audit": audit_report.to_json_dict(),
            "geometry": geometry_payload(audit_report)}


@app.post("/compare-derived", response_model=CompareResponse)
def compare_derived(request: CompareRequest):
    fam_a = _build(request.family_a)
    fam_b = _build(request.family_b)
    if fam_a.q != fam_b.q or fam_a.m != fam_b.m:
        raise HTTPException(status_code=422, detail={
            "error": "invalid_parameters",
            "message": f"dimension mismatch: q={fam_a.q}/{fam_b.q}, "
                       f"m={fam_a.m}/{fam_b.m}"})
    set_a = {tuple(r) for r in audit_mod.derive_sets(fam_a).closure.tolist()}
    set_b = {tuple(r) for r in audit_mod.derive_sets(fam_b).closure.tolist()}
    only_a = sorted(set_a - set_b)
    only_b = sorted(set_b - set_a)
    if not only_a and not only_b:
        verdict = "equal"
    elif not only_b:
        verdict = "a-contains-b"
    elif not only_a:
        verdict = "b-contains-a"
    else:
        verdict = "incomparable"
    return {"verdict": verdict, "size_a": len(set_a), "size_b": len(set_b),
            "only_in_a": [list(v) for v in only_a[:10]],
            "only_in_b": [list(v) for v in only_b[:10]]}
