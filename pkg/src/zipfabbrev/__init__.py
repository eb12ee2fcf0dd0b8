"""Word-length compression and law-of-abbreviation analysis for corpora."""

from zipfabbrev.model import (
    CharacterInventory,
    Lexicon,
    TypeRecord,
    Unit,
    build_lexicon,
    character_inventory,
)
from zipfabbrev.lengths import UnitMapping, char_length, mapped_length, median_duration
from zipfabbrev.ingest import RawToken, parse_alignment, parse_conllu, parse_typelist
from zipfabbrev.filtering import (
    ClusterSplit,
    FilterConfig,
    apply_alphabet_filter,
    cjk_complement_filter,
    cluster_1d_exact,
    mandatory_filter,
    working_alphabet,
)
from zipfabbrev.stats import (
    ShuffleVariant,
    StatsSummary,
    enumerate_shuffles,
    holm_bonferroni,
    kendall_tau,
    mean_token_length,
    pearson_r,
    permutation_test,
    random_baseline,
    summarize,
)
from zipfabbrev.report import LanguageReport, analyze_language, run_batch

__version__ = "0.1.0"
