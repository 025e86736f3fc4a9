from .commands import Command, command
from .config import PipelineConfig, load_config, parse_rules
from .formats import ReportFormat, write_report
from .pipeline import Pipeline

__all__ = ["Command", "Pipeline", "PipelineConfig", "ReportFormat", "command", "load_config", "parse_rules", "write_report"]
