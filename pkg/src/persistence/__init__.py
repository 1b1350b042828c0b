# Persistence package
from .serializers import ResultSerializer, canonical_json
from .result_store import CSV_HEADER, RESULT_FORMAT_VERSION, ResultStore, csv_rows
from .config_files import load_config_directory, load_experiment_config

__all__ = [
    "CSV_HEADER",
    "RESULT_FORMAT_VERSION",
    "ResultSerializer",
    "ResultStore",
    "canonical_json",
    "csv_rows",
    "load_config_directory",
    "load_experiment_config",
]
