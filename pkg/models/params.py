from enum import Enum
from typing import List, Optional

import galois
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Scheme(str, Enum):
    """Which storage scheme a parameter set is planned for"""
    STATIC = "static"
    NAIVE = "naive"


class FieldParams(BaseModel):
    """Base field order, extension degree and modulus of F_{q^N}"""
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"q": 3, "N": 2, "modulus_poly": [1, 0, 1]}
        },
    )

    q: int = Field(..., ge=3, description="Prime order of the base field")
    N: int = Field(..., ge=1, description="Extension degree")
    modulus_poly: List[int] = Field(
        ...,
        description="N+1 base-q coefficients of the monic irreducible modulus, little-endian"
    )

    @field_validator('q')
    @classmethod
    def validate_q(cls, v):
        if not galois.is_prime(v):
            raise ValueError(f'q must be prime, got {v}')
        return v

    @model_validator(mode='after')
    def validate_modulus(self):
        coeffs = self.modulus_poly
        if len(coeffs) != self.N + 1:
            raise ValueError(
                f'modulus_poly must have N+1 = {self.N + 1} coefficients, got {len(coeffs)}'
            )
        if any(c < 0 or c >= self.q for c in coeffs):
            raise ValueError('modulus_poly coefficients must lie in [0, q)')
        if coeffs[-1] != 1:
            raise ValueError('modulus_poly must be monic')
        poly = galois.Poly(coeffs, field=galois.GF(self.q), order='asc')
        if not poly.is_irreducible():
            raise ValueError(f'modulus_poly {poly} is not irreducible over F_{self.q}')
        return self


class SystemParams(BaseModel):
    """Parameters of the concatenated Gabidulin / MDS array storage system"""
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "q": 3, "N": 12, "m": 12, "alpha": 4, "k": 3, "n": 5, "d": 4,
                "beta": 2, "t": 1, "K": 4, "delta": 9, "scheme": "static"
            }
        },
    )

    q: int = Field(..., ge=3, description="Base field order")
    N: int = Field(..., ge=1, description="Extension degree of the symbol field")
    m: int = Field(..., ge=1, description="Outer code length, m = alpha * k")
    alpha: int = Field(..., ge=1, description="Symbols stored per node")
    k: int = Field(..., ge=1, description="Nodes needed for data collection")
    n: int = Field(..., ge=2, description="Total storage nodes")
    d: int = Field(..., ge=1, description="Helpers contacted per repair")
    beta: int = Field(..., ge=1, description="Symbols downloaded per helper")
    t: int = Field(0, ge=0, description="Adversary budget (compromised nodes)")
    K: int = Field(..., ge=1, description="Outer code dimension over F_{q^N}")
    delta: int = Field(..., ge=1, description="Outer minimum rank distance")
    scheme: Scheme = Field(Scheme.STATIC, description="Scheme the bound is checked against")
    enforce_bound: bool = Field(
        True,
        description="Reject parameter sets that violate the scheme's error-tolerance bound"
    )

    @model_validator(mode='after')
    def validate_invariants(self):
        errors = []
        if self.m != self.alpha * self.k:
            errors.append(f'm = alpha*k violated ({self.m} != {self.alpha}*{self.k})')
        if self.delta != self.m - self.K + 1:
            errors.append(f'delta = m-K+1 violated ({self.delta} != {self.m - self.K + 1})')
        if self.K > self.m:
            errors.append(f'K <= m violated ({self.K} > {self.m})')
        if self.m > self.N:
            errors.append(f'm <= N violated ({self.m} > {self.N})')
        if not self.k < self.n:
            errors.append(f'k < n violated ({self.k} >= {self.n})')
        if not self.k <= self.d <= self.n - 1:
            errors.append(f'k <= d <= n-1 violated (d = {self.d})')
        if self.alpha % (self.d - self.k + 1) or self.beta != self.alpha // (self.d - self.k + 1):
            errors.append('beta = alpha/(d-k+1) must be integral')
        if self.enforce_bound:
            required = self.required_distance()
            if self.delta < required:
                errors.append(
                    f'delta >= {required} violated for the {self.scheme.value} scheme '
                    f'(delta = {self.delta})'
                )
        if errors:
            raise ValueError('; '.join(errors))
        return self

    def required_distance(self) -> int:
        """Smallest outer distance the scheme's guarantee needs"""
        if self.scheme == Scheme.NAIVE:
            return 2 * self.t * self.beta + (self.k - 1) * (self.alpha - self.beta) + 1
        return 2 * self.t * self.alpha + 1

    @property
    def repair_download(self) -> int:
        return self.d * self.beta

    @property
    def file_size(self) -> int:
        """Base-field symbols stored: K*N"""
        return self.K * self.N


class CapacityRow(BaseModel):
    """One row of the capacity table printed by ``plan --table``"""
    t: int
    K: Optional[int] = Field(None, description="Outer dimension, None when k <= 2t")
    delta: Optional[int] = None
    capacity: int = Field(..., description="Resilience capacity bound in symbols")
    naive_bound: int = Field(..., description="Naive dynamic repair bound alpha+(k-2t-1)beta")
    attained: bool = False
