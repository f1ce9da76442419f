from .reporting import (
    CsvFormatter,
    JsonFormatter,
    ReportFormatter,
    ReportRow,
    SweepRow,
    TextFormatter,
    get_formatter,
    parse_json_report,
)
from .run_config import RunConfig, default_digits, parse_complex
