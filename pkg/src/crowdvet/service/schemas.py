"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class ValidateRequest(BaseModel):
    config: dict[str, Any] = Field(default_factory=dict)


class ValidateResponse(BaseModel):
    valid: bool
    config: dict[str, Any] | None = None
    errors: list[str] = Field(default_factory=list)


class RunRequest(BaseModel):
    config: dict[str, Any] = Field(default_factory=dict)
    seed: int


class RunResponse(BaseModel):
    seed: int
    metrics: dict[str, Any]
    event_log: list[str]
    state_digest: str
    elapsed_seconds: float


class ReplayRequest(BaseModel):
    event_log: list[str]


class ReplayResponse(BaseModel):
    metrics: dict[str, Any]
    state_digest: str
    final_tick: int


class CompareRequest(BaseModel):
    config: dict[str, Any] = Field(default_factory=dict)
    variants: list[str]
    seeds: list[int]


class CompareResponse(BaseModel):
    report: dict[str, Any]


class ElementRow(BaseModel):
    element: str
    user_type: str
    motivation: str
    issues_addressed: list[str]


class ElementsResponse(BaseModel):
    rows: list[ElementRow]
