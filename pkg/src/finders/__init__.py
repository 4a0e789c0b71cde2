# Optimal adjustment-set finders
from src.finders.base_finder import NO_ADMISSIBLE_SET, BaseFinder, CutKind, CutResult
from src.finders.global_finder import GlobalOptimalFinder, find_opt, optimality_condition
from src.finders.minimal_finder import OptimalMinimalFinder, find_opt_minimal
from src.finders.minimum_finder import OptimalMinimumFinder, find_opt_minimum
from src.finders.report import AdjustmentReport, analyze
