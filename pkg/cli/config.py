import hashlib
import json
import logging
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field

from corpus.emails import DEFAULT_PATTERNS, CandidatePattern
from corpus.reader import CorpusFormat
from disambiguator.classifiers.models import ClassifierKind, TrainingConfig
from disambiguator.hac import GridMode
from matching.rules import DEFAULT_RULES, Feature, MatchRule, Scheme
from synth.config import SynthConfig

logger = logging.getLogger(__name__)


class PathsConfig(BaseModel):
    corpus: Optional[Path] = None
    corpus_format: CorpusFormat = CorpusFormat.TSV
    supplemental_citations: Optional[Path] = None
    authority_profiles: Optional[Path] = None
    truth_labels: Optional[Path] = None
    # Held-out corpus for disambiguate/evaluate; defaults to the labeling corpus.
    test_corpus: Optional[Path] = None
    test_truth_labels: Optional[Path] = None
    tag_map: Optional[Path] = None
    stopwords: Optional[Path] = None


class MLConfig(BaseModel):
    classifiers: list[ClassifierKind] = Field(default_factory=lambda: list(ClassifierKind))
    train_ratio: float = Field(default=0.5, gt=0.0, lt=1.0)
    seed: int = 0
    grid_mode: GridMode = GridMode.UNIFORM
    grid_step: float = Field(default=0.01, gt=0.0, le=1.0)
    full_forename_blocks: bool = False
    training: TrainingConfig = Field(default_factory=TrainingConfig)


class EvaluationConfig(BaseModel):
    fit_range: tuple[int, int] = (1, 60)
    top_k_tags: Optional[int] = 10
    cluster_size_open_bucket: int = Field(default=10, ge=2)
    # Count only same-block pairs in pairwise metrics.
    same_block_pairs: bool = False


class PipelineConfig(BaseModel):
    paths: PathsConfig = Field(default_factory=PathsConfig)
    rules: list[MatchRule] = Field(default_factory=lambda: list(DEFAULT_RULES))
    email_patterns: list[CandidatePattern] = Field(default_factory=lambda: list(DEFAULT_PATTERNS))
    email_within_block: bool = False
    ml: MLConfig = Field(default_factory=MLConfig)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    synth: SynthConfig = Field(default_factory=SynthConfig)
    output_dir: Path = Path("out")

    @property
    def config_hash(self) -> str:
        # Where results are written does not change them.
        canonical = json.dumps(self.model_dump(mode="json", exclude={"output_dir"}), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_config(path: Optional[str | Path] = None, seed: Optional[int] = None, output_dir: Optional[str | Path] = None) -> PipelineConfig:
    if path is None:
        config = PipelineConfig()
    else:
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"Config file not found: {path}")
        with path.open("r", encoding="utf-8") as f:
            config = PipelineConfig.model_validate(json.load(f))
    if seed is not None:
        config.ml.seed = seed
        config.ml.training.seed = seed
        config.synth.seed = seed
    if output_dir is not None:
        config.output_dir = Path(output_dir)
    logger.debug(f"Config hash {config.config_hash}")
    return config


def parse_rules(text: str) -> list[MatchRule]:
    """Parse "feature/scheme[/k]" rules separated by commas, e.g. "email/full_string,coauthor/first_initial/2"."""
    rules = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        parts = item.split("/")
        if len(parts) not in (2, 3):
            raise ValueError(f"Invalid rule {item!r}; expected feature/scheme[/k]")
        rules.append(MatchRule(
            feature=Feature(parts[0]),
            scheme=Scheme(parts[1]),
            min_shared=int(parts[2]) if len(parts) == 3 else 1,
        ))
    if not rules:
        raise ValueError("No rules given")
    return rules
