"""
Output records. Field order is the JSON key order; every command prints
one of these with model_dump_json(indent=2, by_alias=True).
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class VertexRecord(BaseModel):
    """Graph-of-groups vertex: rigid free group, QH surface or cyclic group"""
    id: str
    kind: str
    orientable: Optional[bool] = None
    genus: Optional[int] = None
    boundaries: Optional[int] = None
    basis: List[str] = []


class EdgeRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    from_: str = Field(alias="from")
    to: str
    loop: bool
    image_from: str
    image_to: str


class GraphRecord(BaseModel):
    vertices: List[VertexRecord]
    edges: List[EdgeRecord]


class ParamsRecord(BaseModel):
    n: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None


class WitnessRecord(BaseModel):
    chain: List[str]
    basis: List[str]


class ClassificationRecord(BaseModel):
    input: str
    verdict: str
    params: ParamsRecord
    witness: Optional[WitnessRecord] = None
    bounded: bool
    graph: Optional[GraphRecord] = None


class MembershipRecord(BaseModel):
    word: str
    subgroup: List[str]
    member: bool
    rank: int
    index: Optional[int] = None
    rewritten: Optional[str] = None
    basis: Optional[Dict[str, str]] = None


class OrbitRecord(BaseModel):
    input: str
    minimal: str
    length: int
    chain: List[str]
    orbit_size: int
    orbit: List[str]


class PrimitivityRecord(BaseModel):
    input: str
    primitive: bool
    in_proper_free_factor: bool
    minimal: str
    chain: List[str]


class AutEquivalenceRecord(BaseModel):
    first: str
    second: str
    equivalent: bool
    inverted: Optional[bool] = None
    chain: Optional[List[str]] = None


class IvanovWordRecord(BaseModel):
    length: int
    exponent_sums: List[int]
    word: str


class SuiteReport(BaseModel):
    """Pass/fail counts of one verification suite"""
    suite: str
    samples: int
    seed: int
    passed: int
    failures: int
    failed_samples: List[str] = []


class VerifyReport(BaseModel):
    seed: int
    suites: List[SuiteReport]
    failures: int


class HomRecord(BaseModel):
    """Images of a1, a2, b1, b2 as word strings"""
    a1: str
    a2: str
    b1: str
    b2: str


class FactorizationRecord(BaseModel):
    hom: HomRecord
    variant: str
    k: Optional[int] = None
    roots: Optional[List[str]] = None
    exponents: Optional[List[int]] = None
    recomposed: bool


class SeparabilityReport(BaseModel):
    g: str
    samples: int
    seed: int
    eta_homs: int
    pi_homs: int
    members: int
    separated: int
    failed_samples: List[str] = []


class VersionRecord(BaseModel):
    version: str
