from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from src.errors import ConfigurationError
from src.gf2 import default_polynomial, degree, is_irreducible


class HashFamily(str, Enum):
    NWISE = "nwise"
    CYCLIC = "cyclic"
    GENERAL = "general"
    ID37 = "id37"
    HYBRID = "hybrid"
    RANDOM = "random"


class GeneratorKind(str, Enum):
    DEFAULT_PRNG = "default_prng"
    MERSENNE_TWISTER = "mersenne_twister"
    PHILOX = "philox"
    OS_ENTROPY_SNAPSHOT = "os_entropy_snapshot"


class SymbolMode(str, Enum):
    BYTES = "bytes"
    CODEPOINTS = "codepoints"


class HashFamilyConfig(BaseModel):
    """Parameters of one n-gram hash family.

    width is L, base is the ID37 multiplier B, pieces is the Hybrid piece
    count p. poly is the General modulus including its x^L term; it is
    resolved to a default irreducible polynomial when omitted.
    """

    family: HashFamily
    n: int = Field(..., ge=1)
    width: int = Field(19, ge=1, le=64)
    poly: Optional[int] = Field(None, gt=1)
    base: int = 37
    pieces: int = Field(2, ge=1)
    unsafe_shared_table: bool = False

    model_config = {"frozen": True}

    @model_validator(mode="before")
    @classmethod
    def resolve_polynomial(cls, data):
        if not isinstance(data, dict):
            return data
        family = data.get("family")
        if family not in (HashFamily.GENERAL, HashFamily.GENERAL.value):
            return data
        width = data.get("width", 19)
        poly = data.get("poly")
        if poly is None:
            data = {**data, "poly": default_polynomial(width)}
        elif isinstance(poly, int) and 0 < poly < (1 << width):
            # completion of a companion mask with its leading term
            data = {**data, "poly": poly | (1 << width)}
        return data

    @model_validator(mode="after")
    def check_family_constraints(self) -> "HashFamilyConfig":
        family, n, width = self.family, self.n, self.width
        if family is HashFamily.GENERAL:
            if degree(self.poly) != width:
                raise ConfigurationError(
                    f"General polynomial {self.poly:#x} has degree {degree(self.poly)}, expected {width}"
                )
            if not is_irreducible(self.poly):
                raise ConfigurationError(f"General polynomial {self.poly:#x} is not irreducible")
            if n > width:
                raise ConfigurationError(f"General requires n <= L (n={n}, L={width})")
        elif family is HashFamily.CYCLIC:
            if n > width:
                raise ConfigurationError(f"Cyclic requires n <= L (n={n}, L={width})")
        elif family is HashFamily.ID37:
            if self.base % 2 == 0:
                raise ConfigurationError(f"ID37 multiplier must be odd, got B={self.base}")
        elif family is HashFamily.HYBRID:
            if n % self.pieces != 0 or n < 2 * self.pieces:
                raise ConfigurationError(
                    f"Hybrid requires p | n and n >= 2p (n={n}, p={self.pieces})"
                )
        if self.unsafe_shared_table and family is not HashFamily.NWISE:
            raise ConfigurationError("unsafe_shared_table only applies to the nwise family")
        return self


class IcebergPredicate(BaseModel):
    """Occurrence-count predicate: f >= min_count or f == exact_count."""

    min_count: Optional[int] = Field(None, ge=0)
    exact_count: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def check_single_mode(self) -> "IcebergPredicate":
        if self.min_count is not None and self.exact_count is not None:
            raise ValueError("Use either min_count or exact_count, not both")
        return self

    @property
    def is_set(self) -> bool:
        return self.min_count is not None or self.exact_count is not None

    def __call__(self, count: int) -> bool:
        if self.exact_count is not None:
            return count == self.exact_count
        if self.min_count is not None:
            return count >= self.min_count
        return True

    def describe(self) -> str:
        if self.exact_count is not None:
            return f"f == {self.exact_count}"
        if self.min_count is not None:
            return f"f >= {self.min_count}"
        return "f > 0"


class ZipfConfig(BaseModel):
    exponent: float = Field(..., gt=0)
    alphabet: int = Field(..., ge=1)
    length: int = Field(..., ge=0)
    seed: int = Field(42, ge=0, lt=2**64)

    @classmethod
    def parse(cls, text: str, seed: int = 42) -> "ZipfConfig":
        """Parse the command-line form "s,alphabet,N"."""
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected s,alphabet,N but got {text!r}")
        return cls(exponent=float(parts[0]), alphabet=int(parts[1]), length=int(float(parts[2])), seed=seed)


class BoundQuery(BaseModel):
    p: int = Field(..., ge=2)
    capacity: int = Field(..., ge=1)
    eps: Optional[float] = Field(None, gt=0, lt=1)
    delta: Optional[float] = Field(None, gt=0, lt=1)
    alpha: Optional[float] = Field(None, gt=0, lt=1)

    @model_validator(mode="after")
    def check_alpha_range(self) -> "BoundQuery":
        if self.alpha is not None and self.alpha < self.alpha_min:
            raise ValueError(f"alpha must lie in [4p/M, 1) = [{self.alpha_min:.6g}, 1)")
        return self

    @property
    def alpha_min(self) -> float:
        return 4 * self.p / self.capacity

    @property
    def simplified_valid(self) -> bool:
        return self.capacity >= 8 * self.p


class EpsilonBound(BaseModel):
    p: int
    capacity: int
    delta: float
    eps: Optional[float] = None
    alpha: Optional[float] = None

    @property
    def feasible(self) -> bool:
        return self.eps is not None

    def as_percent(self) -> str:
        if self.eps is None:
            return "—"
        return f"{100 * self.eps:.1f}%"


class CorollaryBound(BaseModel):
    eps: float
    capacity: float
    proof_expression: float
    delta: float


class AgnosticEstimates(BaseModel):
    literal_unoccupied: float
    standard_expected_distinct: float


class StreamStats(BaseModel):
    distinct_estimate: float
    level: int
    buffered: int
    total: int
    entropy_estimate: Optional[float] = None
    iceberg_estimate: Optional[float] = None


class ExactStats(BaseModel):
    n: int
    distinct: int
    total: int
    entropy_bits: float
    alphabet_size: int
    counts: dict[tuple[int, ...], int]

    def iceberg(self, predicate) -> int:
        return sum(1 for count in self.counts.values() if predicate(count))


class ExperimentConfig(BaseModel):
    input_path: Optional[Path] = None
    zipf: Optional[ZipfConfig] = None
    mode: SymbolMode = SymbolMode.BYTES
    n: int = Field(5, ge=1)
    family: HashFamily = HashFamily.GENERAL
    width: int = Field(19, ge=1, le=64)
    poly: Optional[int] = None
    base: int = 37
    pieces: int = Field(2, ge=1)
    capacity: int = Field(1024, ge=1)
    runs: int = Field(100, ge=1)
    seed: int = Field(42, ge=0, lt=2**64)
    rng: GeneratorKind = GeneratorKind.DEFAULT_PRNG
    median_of: Optional[int] = Field(None, ge=1)
    iceberg: IcebergPredicate = Field(default_factory=IcebergPredicate)
    csv_path: Optional[Path] = None
    record_timing: bool = True
    workers: int = Field(1, ge=1)
    read_chunk_size: int = Field(65536, ge=1)
    oracle_max_keys: int = Field(2**26, ge=1)

    @model_validator(mode="after")
    def check_single_input(self) -> "ExperimentConfig":
        if (self.input_path is None) == (self.zipf is None):
            raise ValueError("Exactly one of input_path or zipf must be given")
        return self

    def family_config(self, n: Optional[int] = None) -> HashFamilyConfig:
        return HashFamilyConfig(
            family=self.family,
            n=self.n if n is None else n,
            width=self.width,
            poly=self.poly,
            base=self.base,
            pieces=self.pieces,
        )


class RunResult(BaseModel):
    run: int
    seed: int
    estimate: float
    exact: int
    rel_error: float
    level: int
    buffered: int
    entropy_estimate: Optional[float] = None
    entropy_exact: float
    iceberg_estimate: Optional[float] = None
    iceberg_exact: int
    wall_ms: float = 0.0
    abs_flag: bool = False
    status: str = "ok"


class MultiRunResult(BaseModel):
    run: int
    seed: int
    k: int
    estimate: float
    exact: int
    rel_error: float
    level: int
    buffered: int


class ErrorSummary(BaseModel):
    p25: float
    p50: float
    p75: float
    p95: float
    mean: float

    @field_validator("p25", "p50", "p75", "p95", "mean")
    @classmethod
    def check_nonnegative(cls, v: float) -> float:
        if v < 0:
            raise ValueError("errors are nonnegative")
        return v


class SummaryStats(BaseModel):
    exact_distinct: int
    exact_entropy: float
    exact_iceberg: int
    distinct: ErrorSummary
    entropy: Optional[ErrorSummary] = None
    iceberg: Optional[ErrorSummary] = None
    median: Optional[ErrorSummary] = None
