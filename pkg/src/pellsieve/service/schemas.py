"""Wire models for the HTTP service.

Unbounded integers travel as decimal strings so no client is forced through
IEEE doubles; requests accept either form, responses always emit strings.
"""

from __future__ import annotations

from typing import Annotated, Literal

from pydantic import BaseModel, BeforeValidator, Field, PlainSerializer


def _to_bigint(value):
    if isinstance(value, bool):
        raise ValueError("expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        body = value[1:] if value.startswith("-") else value
        if body.isascii() and body.isdigit():
            return int(value)
    raise ValueError("expected an integer or a decimal string")


BigInt = Annotated[
    int, BeforeValidator(_to_bigint), PlainSerializer(str, return_type=str)
]


class HealthResponse(BaseModel):
    status: Literal["ok"] = "ok"
    version: str


class HitModel(BaseModel):
    a: BigInt
    b: BigInt
    n: BigInt
    x: BigInt


class SearchRequest(BaseModel):
    a: BigInt
    b: BigInt
    n_max: int = Field(default=30, ge=1, le=10_000)


class SearchResponse(BaseModel):
    hits: list[HitModel]


class ClassifyRequest(BaseModel):
    a: BigInt
    b: BigInt


class ClassifyResponse(BaseModel):
    tag: Literal["A1", "A2", "A3", "NONE"]


class SieveConfigModel(BaseModel):
    """Optional overrides; omitted fields keep the library defaults."""

    moduli_pool: list[int] | None = None
    split_sequence: list[int] | None = None
    max_class_modulus: int | None = None
    explicit_bound: int | None = None
    use_structural_gates: bool | None = None


class ProveRequest(BaseModel):
    a: BigInt
    b: BigInt
    config: SieveConfigModel | None = None


class SolutionModel(BaseModel):
    n: BigInt
    x: BigInt


class ProveResponse(BaseModel):
    status: Literal["COMPLETE", "PARTIAL"]
    known_solutions: list[SolutionModel]
    surviving_classes: int
    certificate: str  # canonical JSON text, ready to store or verify


class VerifyRequest(BaseModel):
    certificate: str


class VerifyItemModel(BaseModel):
    name: str
    status: Literal["PASS", "FAIL", "ASSUMED"]
    detail: str = ""


class VerifyResponse(BaseModel):
    ok: bool
    items: list[VerifyItemModel]


class PellResponse(BaseModel):
    d: BigInt
    x1: BigInt
    y1: BigInt


class LucasRequest(BaseModel):
    p: BigInt
    q: BigInt
    n: BigInt = Field(ge=0)
    mod: BigInt | None = None


class LucasResponse(BaseModel):
    u: BigInt
    v: BigInt


class ScanRequest(BaseModel):
    a_max: int = Field(ge=2, le=1_000)
    b_max: int = Field(ge=3, le=1_000)
    n_max: int = Field(default=30, ge=1, le=10_000)


class ReplayPairModel(BaseModel):
    a: BigInt
    b: BigInt
    status: Literal["COMPLETE", "PARTIAL"]
    known_solutions: list[SolutionModel]
    surviving_classes: int
    verified: bool
    matches_expected: bool
    elapsed: float


class GoldenFactModel(BaseModel):
    fact: str
    passed: bool


class ReplayResponse(BaseModel):
    ok: bool
    pairs: list[ReplayPairModel]
    goldens: list[GoldenFactModel]
