"""Pydantic request/response models for the query service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class StatsRowModel(BaseModel):
    name: str
    repository: str
    n_strong: int
    k_p: int
    mhp: int
    mhp_parents: list[str]
    adjusted_mhp: Optional[float] = None
    mcohp: int
    mcohp_pair: Optional[list[str]] = None
    k_c: int
    hc: Optional[float] = None
    adjusted_hc: Optional[float] = None
    k_d: int
    hd: Optional[float] = None
    k_id: int
    hid: Optional[float] = None
    adjusted_hid: Optional[float] = None
    total_downstream: int
    gini_from_parents: Optional[float] = None
    gini_on_children: Optional[float] = None
    depth: int


class PackagesPage(BaseModel):
    total: int
    page: int
    per_page: int
    sort: str
    dir: Literal["asc", "desc"]
    rows: list[StatsRowModel]


class ParentEdgeModel(BaseModel):
    parent: str
    h: int


class ChildEdgeModel(BaseModel):
    child: str
    h: int


class PackageDetail(StatsRowModel):
    parents: list[ParentEdgeModel]
    weak_parents: list[str]
    children: list[ChildEdgeModel]
    reducible: Optional[bool] = None    # reserved; requires source analysis


class UpstreamEntry(BaseModel):
    package: str
    path: list[str]
    distance: int
    h_u: int


class GraphNodeModel(BaseModel):
    name: str
    kind: Literal["package", "leaf-group"] = "package"
    repository: Optional[str] = None
    depth: Optional[int] = None
    parent: Optional[str] = None        # leaf-group only
    count: Optional[int] = None
    members: Optional[list[dict]] = None


class GraphEdgeModel(BaseModel):
    parent: str
    child: str
    relation: str = "strong"
    h: Optional[int] = None
    betweenness: Optional[float] = None
    key_path: Optional[bool] = None


class GraphDocModel(BaseModel):
    directed: bool = True
    root: Optional[str] = None
    nodes: list[GraphNodeModel]
    edges: list[GraphEdgeModel]


class UpstreamResponse(BaseModel):
    package: str
    entries: list[UpstreamEntry]
    graph: GraphDocModel


class DownstreamEntry(BaseModel):
    package: str
    path: list[str]
    depth: int
    h_u: int


class DownstreamResponse(BaseModel):
    package: str
    min_depth: Optional[int] = None
    max_depth: Optional[int] = None
    entries: list[DownstreamEntry]


class CoreGraphResponse(GraphDocModel):
    h_threshold: int
    retained_nodes: int
    retained_edges: int
    source_nodes: int
    source_edges: int
    flow_fraction: float


class KeyPathsResponse(GraphDocModel):
    h_threshold: int
    bt_threshold: float
    flow_fraction: float


class SummaryResponse(BaseModel):
    schema_name: str = Field("depheavy/summary@1", alias="schema")
    snapshot: str = ""
    repositories: dict[str, dict]

    model_config = {"populate_by_name": True}


class WhatIfRequest(BaseModel):
    package: str
    demote: list[str] = Field(default_factory=list)


class WhatIfResponse(BaseModel):
    package: str
    demote: list[str]
    n_before: int
    new_count: int
    reduced: list[str]


class ReloadRequest(BaseModel):
    path: Optional[str] = None


class ReloadResponse(BaseModel):
    status: Literal["ok"]
    packages: int
    snapshot: str


class ErrorBody(BaseModel):
    error: str
    package: Optional[str] = None
