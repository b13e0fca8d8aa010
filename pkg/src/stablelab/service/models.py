"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class SolveRequest(BaseModel):
    program: str
    method: str = Field("equations", pattern="^(equations|bruteforce|schemes|both)$")
    reduced: bool = True
    max_atoms: int = 20
    timeout_ms: int | None = None


class SolveResponse(BaseModel):
    models: list[list[str]]
    methods: dict[str, list[list[str]]] | None = None
    agree: bool | None = None


class CheckRequest(BaseModel):
    program: str
    model: list[str]


class CheckResponse(BaseModel):
    stable: bool
    gl: list[str]


class ReductRequest(BaseModel):
    program: str
    model: list[str]


class ReductResponse(BaseModel):
    program: str


class SchemesRequest(BaseModel):
    program: str
    atom: str
    max_steps: int = 4


class SchemeStep(BaseModel):
    clause: str
    atom: str


class SchemeOut(BaseModel):
    steps: list[SchemeStep]
    support: list[str]


class SchemesResponse(BaseModel):
    schemes: list[SchemeOut]


class SupportsRequest(BaseModel):
    program: str
    minimal: bool = True


class SupportsResponse(BaseModel):
    supports: dict[str, list[list[str]]]


class EquationsRequest(BaseModel):
    program: str
    reduced: bool = True
    export_cnf: bool = False


class EquationsResponse(BaseModel):
    equations: list[str]
    cnf: str | None = None


class LabRealizeRequest(BaseModel):
    atoms: int = 3
    exhaustive: bool = True
    samples: int = 100
    seed: int = 0


class LabRealizeResponse(BaseModel):
    checked: int
    failures: list[str]


class LabFspRequest(BaseModel):
    family: str
    to: int = 6


class LabFspResponse(BaseModel):
    counts: list[tuple[int, int]]
    trend: str


class LabAntimonoRequest(BaseModel):
    program: str


class LabAntimonoResponse(BaseModel):
    antimonotone: bool
    witness: tuple[list[str], list[str]] | None = None


class CCSupportOut(BaseModel):
    atoms: list[str]
    upper: int


class CCSupportsRequest(BaseModel):
    program: str
    minimal: bool = True


class CCSupportsResponse(BaseModel):
    supports: dict[str, list[list[CCSupportOut]]]


class ErrorResponse(BaseModel):
    error: str
    detail: str
