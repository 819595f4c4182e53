"""Evaluation-as-a-service harness for optimization contests.

Instance suites with per-instance time limits, sandboxed solver execution,
objective-function judging with informative error verdicts, submission
throttling, and leaderboards, together with six ready-made combinatorial
optimization problems (packing, Steiner trees, fire-fighting schedules,
3D knapsack, and shopping-plan assignment).
"""

__version__ = "0.1.0"
