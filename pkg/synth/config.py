from typing import Self

from pydantic import BaseModel, Field, model_validator


class SynthConfig(BaseModel):
    n_authors: int = Field(default=300, ge=0)
    # Papers led by each author: 1 + Poisson(mean - 1); a mean of 0 generates no papers.
    papers_per_author_mean: float = Field(default=2.2, ge=0.0)
    # Byline length: 1 + Poisson(mean - 1), capped.
    team_size_mean: float = Field(default=3.0, ge=1.0)
    max_team_size: int = Field(default=8, ge=1)
    collaborators_per_author: int = Field(default=4, ge=0)
    homonym_rate: float = Field(default=0.1, ge=0.0, le=1.0)
    synonym_rate: float = Field(default=0.1, ge=0.0, le=1.0)
    email_coverage: float = Field(default=0.6, ge=0.0, le=1.0)
    self_cite_prob: float = Field(default=0.3, ge=0.0, le=1.0)
    background_cite_prob: float = Field(default=0.0, ge=0.0, le=1.0)
    title_words: tuple[int, int] = (4, 8)
    seed: int = 0

    @model_validator(mode="after")
    def _check_feasible(self) -> Self:
        if 0.0 < self.papers_per_author_mean < 1.0:
            raise ValueError("papers_per_author_mean must be 0 or at least 1")
        if self.n_authors == 0 and self.papers_per_author_mean > 0:
            raise ValueError("Cannot generate papers without authors (n_authors=0)")
        low, high = self.title_words
        if not 1 <= low <= high:
            raise ValueError(f"Invalid title_words range: {self.title_words}")
        return self
