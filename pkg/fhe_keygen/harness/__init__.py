"""
Experiment and benchmark runners, and the file formats they write.
"""

from .benchmark import BenchmarkComparison, TimingReport, run_timing_benchmark
from .experiment import CategoryCounts, run_category_experiment

__all__ = [
    "BenchmarkComparison",
    "CategoryCounts",
    "TimingReport",
    "run_category_experiment",
    "run_timing_benchmark",
]
