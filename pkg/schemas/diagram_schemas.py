from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from exceptions import DataValidationException


class TermIn(BaseModel):
    word: List[int] = []
    coeff: str = "1"

    @field_validator("coeff", mode="before")
    @classmethod
    def coeff_as_text(cls, v):
        if isinstance(v, (int, str)):
            return str(v)
        raise DataValidationException(f"Coefficient must be an integer or a 'p/q' string, got {v!r}")


# a polynomial is either a list of terms or DSL text in the relevant generator names
PolyIn = Union[List[TermIn], str]


class DiagramMapsIn(BaseModel):
    alpha: List[PolyIn]
    beta: List[PolyIn]
    gamma: List[PolyIn]
    delta: List[PolyIn]


class DiagramIn(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    R: str
    S: str
    Aprime: str
    A: str
    maps: DiagramMapsIn
    x: Optional[PolyIn] = None
    y: Optional[PolyIn] = None
    a: Optional[List[PolyIn]] = None
    label: str = ""


class AlphaIn(BaseModel):
    R: str
    S: str
    alpha: List[PolyIn]
    a: Optional[List[PolyIn]] = None


class FamilyFactorIn(BaseModel):
    A: str
    base_images: List[PolyIn]
    point: Dict[str, str] = {}

    @field_validator("point", mode="before")
    @classmethod
    def point_as_text(cls, v):
        return {name: str(value) for name, value in dict(v).items()}


class FamilyIn(BaseModel):
    factors: List[FamilyFactorIn] = Field(min_length=1)
    count: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    # N_d level used to tell N_d targets from ambient ones
    d: int = Field(default=1, ge=0)


class BracketIn(BaseModel):
    left: int
    right: int
    coefficients: Dict[int, PolyIn] = {}
    scalar: PolyIn = []


class AlgebroidIn(BaseModel):
    base: str
    generators: List[str]
    anchor: List[List[PolyIn]] = []
    brackets: List[BracketIn] = []
    bound: Optional[int] = Field(default=None, ge=1)
