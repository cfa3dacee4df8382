from .clock import Clock, SimulatedClock, StageTimer, WallClock, build_clock
from .metrics import (
    MetricsReport,
    build_report,
    compute_percentiles,
    detect_shift_metrics,
    match_shifts,
)
from .pipeline import HarnessConfig, PipelineComponents, build_pipeline
from .policy import PolicySpec
from .replay import ReplayTrace, TraceRecord, replay, replay_sessions
from .report import emit_report, render_report, write_traces
from .sessions import (
    SegmentSpec,
    SyntheticStreamSpec,
    dump_ground_truth,
    dump_sessions,
    load_ground_truth,
    load_sessions,
    synth_dataset,
    synth_sessions,
    synthetic_catalog,
)
