"""tutorprof: usage profiles from tutorial-video classifier scores.

Turns per-frame UI-classifier confidence series into recognized user
execution paths and popularity-weighted usage profiles, with the
evaluation harness (confusion matrices, precision/recall/F1, 11-point
interpolated AP) to score the decoding.
"""

__version__ = "0.1.0"

from .decoder import (
    GRAMMARS,
    ActionGrammar,
    ExecutionPath,
    PathPrediction,
    decode_clip,
    fallback_path,
)
from .grammar import Match, Pattern, PatternError, compile_pattern, find_leftmost, remove
from .metrics import (
    ClassMetrics,
    ConfusionMatrix,
    RankedPredictionList,
    accumulate,
    average_precision,
    mean_average_precision,
    precision_recall_f1,
)
from .profiles import UsageProfile, VideoMeta, build_profile, load_meta_csv
from .saliency import read_pgm_stream, select_salient, write_pgm_stream
from .score_model import (
    CLASS_SYMBOLS,
    ScoreFileError,
    ScoreSeries,
    SymbolString,
    argmax_decode,
    parse_score_file,
    rate_frames,
    serialize_score_series,
)
from .smoothing import smooth, window_width
from .synth import generate_clip, min_duration

__all__ = [
    "ActionGrammar",
    "ClassMetrics",
    "CLASS_SYMBOLS",
    "ConfusionMatrix",
    "ExecutionPath",
    "GRAMMARS",
    "Match",
    "PathPrediction",
    "Pattern",
    "PatternError",
    "RankedPredictionList",
    "ScoreFileError",
    "ScoreSeries",
    "SymbolString",
    "UsageProfile",
    "VideoMeta",
    "accumulate",
    "argmax_decode",
    "average_precision",
    "build_profile",
    "compile_pattern",
    "decode_clip",
    "fallback_path",
    "find_leftmost",
    "generate_clip",
    "load_meta_csv",
    "mean_average_precision",
    "min_duration",
    "parse_score_file",
    "precision_recall_f1",
    "rate_frames",
    "read_pgm_stream",
    "remove",
    "select_salient",
    "serialize_score_series",
    "smooth",
    "window_width",
    "write_pgm_stream",
]
