from .config import ExperimentConfig, load_config_file, parse_config, parse_widths
from .runner import RunResult, run
from .writer import CsvTableWriter, JsonLinesTableWriter, write_table
