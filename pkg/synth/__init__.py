from .config import SynthConfig
from .generator import SynthAuthor, SynthResult, SynthSummary, generate, summarize

__all__ = ["SynthAuthor", "SynthConfig", "SynthResult", "SynthSummary", "generate", "summarize"]
