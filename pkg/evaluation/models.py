from typing import Optional

from pydantic import BaseModel, Field


class EvaluationReport(BaseModel):
    precision: Optional[float] = None
    recall: Optional[float] = None
    f1: Optional[float] = None
    predicted_pairs: int = 0
    truth_pairs: int = 0
    true_pairs: int = 0
    predicted_clusters: int = 0
    truth_clusters: int = 0
    evaluable_instances: int = 0
    flags: list[str] = Field(default_factory=list)


class PowerLawFit(BaseModel):
    slope: Optional[float] = None
    intercept: Optional[float] = None
    r_squared: Optional[float] = None
    points: int = 0
    fit_range: tuple[int, int] = (1, 60)
    flags: list[str] = Field(default_factory=list)


class BlockStats(BaseModel):
    instances: int
    blocks: int
    block_sizes: dict[str, int]
    # n -> share of blocks holding n or more instances
    ratios: dict[int, float]
    fit: PowerLawFit


class ClusterSizeRow(BaseModel):
    bucket: str
    clusters: int
    ratio: float


class ClusterSizeDistribution(BaseModel):
    clusters: int
    rows: list[ClusterSizeRow]


class TagRatioRow(BaseModel):
    category: str
    subset_ratio: float
    population_ratio: float

    @property
    def difference(self) -> float:
        return abs(self.subset_ratio - self.population_ratio)


class TagRatioReport(BaseModel):
    subset_size: int
    population_size: int
    rows: list[TagRatioRow]

    @property
    def categories(self) -> list[str]:
        return [row.category for row in self.rows]
