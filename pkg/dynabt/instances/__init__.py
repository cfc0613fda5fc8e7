"""
Problem Instances

Builders for map coloring, worked examples, random binary CSPs and crossword
fills, plus problem, frame and wordlist files.
"""

from .builders import (
    FIGURE1_COLORS,
    MapSpec,
    figure1_instance,
    figure1_spec,
    figure1_walkthrough_preferences,
    map_coloring,
    random_binary_csp,
    relabel_values,
    xyz_unsat_instance,
)
from .crossword import (
    CrosswordFrame,
    bundled_frame,
    bundled_frame_names,
    Crossing,
    Slot,
    bundled_wordlist,
    crossword_csp,
    generate_frame,
    load_frame,
    load_wordlist,
    parse_frame,
    parse_wordlist,
    shuffle_wordlist,
    unfillable_slots,
    validate_wordlist,
)
from .storage import dumps_problem, load_problem, loads_problem, problem_from_dict, problem_to_dict, save_problem

__all__ = [
    "FIGURE1_COLORS",
    "Crossing",
    "CrosswordFrame",
    "MapSpec",
    "Slot",
    "bundled_frame",
    "bundled_frame_names",
    "bundled_wordlist",
    "crossword_csp",
    "dumps_problem",
    "figure1_instance",
    "figure1_spec",
    "figure1_walkthrough_preferences",
    "generate_frame",
    "load_frame",
    "load_problem",
    "load_wordlist",
    "loads_problem",
    "map_coloring",
    "parse_frame",
    "parse_wordlist",
    "problem_from_dict",
    "problem_to_dict",
    "random_binary_csp",
    "relabel_values",
    "save_problem",
    "shuffle_wordlist",
    "unfillable_slots",
    "validate_wordlist",
    "xyz_unsat_instance",
]
