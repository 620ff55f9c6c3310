"""Request/response models for the verification service."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


class SolveRequest(BaseModel):
    spec: str = Field(description="spec text: sectioned format or the "
                      "one-line alias form, e.g. 'sl2 spinor n=3'")
    include: List[str] = Field(default=["snj1", "snj2"],
                               description="constraint families to impose")
    convention: Optional[str] = Field(default=None,
                                      description="cyclic or symmetric")
    pin: Optional[str] = Field(default=None,
                               description="normalization, e.g. b3_222=6")


class IdentitiesRequest(BaseModel):
    n: int = Field(default=3, ge=2, le=12)
    seed: int = 0
    samples: int = Field(default=100, ge=1, le=10000)


class HopfRequest(BaseModel):
    n: int = Field(default=3, ge=2, le=12)
    N_max: int = Field(default=3, ge=1, le=6)
    seed: int = 0


class DualRequest(BaseModel):
    name: str = Field(description="translation, single_generator or "
                      "sl2_spinor")
    n: Optional[int] = Field(default=None, ge=2, le=12)
    N: Optional[int] = Field(default=None, ge=1, le=6)
    u_max_len: Optional[int] = Field(default=None, ge=1, le=6)
    dual_max_len: Optional[int] = Field(default=None, ge=1, le=6)


class RealizationRequest(BaseModel):
    n: int = Field(default=3, ge=2, le=12)
    M: int = Field(default=8, ge=4, le=64)


class ReportAllRequest(BaseModel):
    seed: int = 0
    samples: int = Field(default=100, ge=1, le=10000)
    M: int = Field(default=8, ge=4, le=64)


class Report(BaseModel):
    """report_v1 envelope; kind-specific payload rides along as extras."""

    model_config = ConfigDict(extra="allow", populate_by_name=True)

    schema_version: str = Field(alias="schema")
    kind: str
    ok: bool = Field(alias="pass")


class Health(BaseModel):
    status: str
    version: str
