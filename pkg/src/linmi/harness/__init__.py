"""Sweep harness: corpus specifiers, configuration, reports and the CLI."""

from .config import ConfigError, SweepConfig, dump_config, load_config, parse_config
from .corpus import DEFAULT_CORPUS, build_code, build_corpus, expand_specs
from .report import emit_reports, records_to_csv, records_to_jsonl, summary_line
from .sweep import RECORD_FIELDS, ReportRecord, run_id_for, run_sweep

__all__ = [
    "ConfigError", "SweepConfig", "dump_config", "load_config", "parse_config",
    "DEFAULT_CORPUS", "build_code", "build_corpus", "expand_specs",
    "emit_reports", "records_to_csv", "records_to_jsonl", "summary_line",
    "RECORD_FIELDS", "ReportRecord", "run_id_for", "run_sweep",
]
