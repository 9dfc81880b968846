"""String attractors: verification, compressor-induced attractors, and the structures built from them."""

from .adag import ADag, ADagConfig, build_adag, extract, space_report
from .bounds import BoundsReport, bounds_report, kmer_counts, lc_and_bound, lmax_bounds
from .compressors import (
    BidirectionalParse,
    BwtRuns,
    Lz77Parse,
    MacroScheme,
    RlGrammar,
    attractor_from_bwt_runs,
    attractor_from_grammar,
    attractor_from_lz77,
    attractor_from_macro,
    attractor_from_suffix_tree,
    bwt_runs,
    decode_macro,
    induced_attractors,
    lz77_parse,
)
from .derive import PaddedAttractor, Slp, measures_report, pad_attractor, parse_from_attractor, slp_from_attractor
from .errors import AttractorError
from .textcore import (
    AttractorSet,
    SuffixIndex,
    Text,
    build_index,
    find_occurrence_crossing,
    smallest_attractor_bruteforce,
    verify_attractor,
)
from .treeattr import (
    LabeledTree,
    PathAttractor,
    SetCoverInstance,
    bruteforce_path_attractor,
    greedy_path_attractor,
    greedy_string_attractor,
    tree_from_setcover,
    verify_path_attractor,
)
