from .scoring import (
    JudgeScores,
    JudgeWeights,
    RemoteJudge,
    aggregate,
    build_eval_prompt,
    mean_total,
    parse_scores,
)
