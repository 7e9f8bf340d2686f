"""Experiment harness: campaigns, RTD statistics, dominance ranking, exports."""
from .experiment import SweepRow, pd_sweep, run_experiment, run_seed
from .ranking import (
    AlgorithmSummary,
    Dominance,
    InstanceResult,
    rank_algorithms,
    summary_from_csv,
    summary_from_records,
)
from .records import (
    FIELDS,
    RecordError,
    RunRecord,
    check_record,
    read_records,
    records_from_csv,
    records_from_jsonl,
    records_to_csv,
    records_to_jsonl,
    write_cdf,
    write_records,
)
from .stats import (
    MEASURES,
    RtdSummary,
    aggregate_instrumentation,
    exponential_cdf,
    exponential_fit,
    ks_distance,
    median,
    rtd_cdf,
    summarize,
)
