"""Exact sliding-window statistics under explicit space budgets."""

from .edwin import (EdSolver, HashSolver, OneSidedNoise, SortSolver, avg_case_ed_sliding,
                    ed_single_hash, ed_single_sort, ed_sliding_via_reduction, reduce_window_ed)
from .fkwin import first_window_fk, sliding_f0_mod2, sliding_fk
from .meter import BudgetViolation, CostMeter, SpaceBudget, word_bits_for
from .oracle import oracle_ed, oracle_f0_mod2, oracle_fk, oracle_order
from .oswin import (max_payload, sliding_max, sliding_min, sliding_order_baseline, sliding_order_sorted,
                    verify_sorting_reduction)
from .seqio import GenSpec, SymbolSeq, generate, load_seq, save_seq

__version__ = "0.1.0"
