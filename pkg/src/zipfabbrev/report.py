"""Per-language pipeline, batch runs across languages, and report output."""

from __future__ import annotations

import csv
import io
import json
import logging
import re
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

from zipfabbrev.filtering import (
    DegenerateClusteringError,
    FilterConfig,
    apply_alphabet_filter,
    cjk_complement_filter,
    mandatory_filter,
    working_alphabet,
    write_alphabet_audit,
)
from zipfabbrev.ingest import RawToken, parse_alignment, parse_conllu, parse_typelist
from zipfabbrev.lengths import UnitMapping, load_unit_mapping
from zipfabbrev.plot import scatter_svg
from zipfabbrev.model import CharacterInventory, Lexicon, Unit, build_lexicon, character_inventory
from zipfabbrev.stats import EXACT_CAP, StatsSummary, holm_bonferroni, summarize

log = logging.getLogger(__name__)

TSV_COLUMNS = [
    "language", "family", "script", "A", "A_filtered", "n", "T", "n_filtered", "T_filtered",
    "L", "L_r", "tau", "tau_p", "tau_p_adj", "r", "r_p", "r_p_adj",
]
_INT_COLUMNS = {"A", "A_filtered", "n", "T", "n_filtered", "T_filtered"}
_STAT_COLUMNS = {"L", "L_r", "tau", "r"}
_P_COLUMNS = {"tau_p", "tau_p_adj", "r_p", "r_p_adj"}

FORMATS = ("conllu", "alignment", "typelist")


@dataclass(frozen=True)
class AnalysisOptions:
    unit: Unit = Unit.CHARACTERS
    filter: FilterConfig = FilterConfig()
    mapping: Optional[UnitMapping] = None
    trials: int = 0
    seed: int = 0
    exact_cap: int = EXACT_CAP


@dataclass(frozen=True)
class LanguageReport:
    language: str
    family: str
    script: str
    unit: Unit
    A: int
    A_filtered: int
    n: int
    T: int
    n_filtered: int
    T_filtered: int
    summary: StatsSummary
    tau_p_adjusted: float
    r_p_adjusted: float
    alphabet: Optional[frozenset] = None
    inventory: Optional[dict] = None

    def row(self) -> dict:
        s = self.summary
        return {
            "language": self.language, "family": self.family, "script": self.script,
            "A": self.A, "A_filtered": self.A_filtered, "n": self.n, "T": self.T,
            "n_filtered": self.n_filtered, "T_filtered": self.T_filtered,
            "L": s.L, "L_r": s.L_r, "tau": s.tau, "tau_p": s.tau_pvalue,
            "tau_p_adj": self.tau_p_adjusted, "r": s.r, "r_p": s.r_pvalue,
            "r_p_adj": self.r_p_adjusted,
        }

    def to_dict(self) -> dict:
        return {
            "language": self.language,
            "family": self.family,
            "script": self.script,
            "unit": self.unit.value,
            "alphabet": {"A": self.A, "A_filtered": self.A_filtered,
                         "working": sorted(self.alphabet) if self.alphabet is not None else None},
            "counts": {"n": self.n, "T": self.T, "n_filtered": self.n_filtered,
                       "T_filtered": self.T_filtered},
            "summary": self.summary.to_dict(),
            "adjusted": {
                "tau_p": self.tau_p_adjusted, "tau_sig": significance_marker(self.tau_p_adjusted),
                "r_p": self.r_p_adjusted, "r_sig": significance_marker(self.r_p_adjusted),
            },
        }


def significance_marker(p: float) -> str:
    if p <= 0.01:
        return "***"
    if p <= 0.05:
        return "**"
    if p <= 0.1:
        return "*"
    return ""


def _drop_unmappable(tokens: Iterable[RawToken], mapping: UnitMapping) -> Iterable[RawToken]:
    dropped = 0
    for tok in tokens:
        if all(ch in mapping for ch in tok.form):
            yield tok
        else:
            dropped += 1
    if dropped:
        log.info("dropped %d tokens with unmapped characters", dropped)


def analyze_language(
    source: Union[Iterable[RawToken], Lexicon],
    options: AnalysisOptions = AnalysisOptions(),
    language: str = "",
    family: str = "",
    script: str = "",
) -> LanguageReport:
    """Mandatory filter, optional filter, lexicon, statistics for one language."""
    cfg = options.filter
    if isinstance(source, Lexicon):
        lex = source.with_metadata(language, family, script)
        if cfg.drop_digit_tokens:
            lex = lex.subset(lambda r: not any("0" <= ch <= "9" for ch in r.form))
    else:
        tokens = mandatory_filter(source, cfg)
        if options.unit is Unit.MAPPED:
            if options.mapping is None:
                raise ValueError("mapped unit requires a mapping")
            tokens = _drop_unmappable(tokens, options.mapping)
        lex = build_lexicon(
            ((t.form, t.duration_s) for t in tokens),
            options.unit, options.mapping, language, family, script,
        )
    if lex.n == 0:
        raise ValueError("empty corpus")

    inventory = character_inventory(lex)
    alphabet = None
    filtered = lex
    if cfg.cjk_mode:
        filtered = cjk_complement_filter(lex)
    elif cfg.optional_filter:
        try:
            alphabet = working_alphabet(inventory)
        except DegenerateClusteringError as exc:
            log.warning("%s: %s; keeping every character", language or "language", exc)
        else:
            filtered = apply_alphabet_filter(lex, alphabet)

    summary = summarize(filtered, options.trials, options.seed, options.exact_cap)
    return LanguageReport(
        language=language, family=family, script=script, unit=lex.unit,
        A=inventory.A, A_filtered=character_inventory(filtered).A,
        n=lex.n, T=lex.T, n_filtered=filtered.n, T_filtered=filtered.T,
        summary=summary,
        tau_p_adjusted=summary.tau_pvalue, r_p_adjusted=summary.r_pvalue,
        alphabet=alphabet, inventory=dict(inventory.entries),
    )


def adjust_reports(reports: Sequence[LanguageReport]) -> List[LanguageReport]:
    """Holm correction across languages, separately for the tau and r families."""
    tau_adj = holm_bonferroni([r.summary.tau_pvalue for r in reports])
    r_adj = holm_bonferroni([r.summary.r_pvalue for r in reports])
    return [replace(rep, tau_p_adjusted=t, r_p_adjusted=q) for rep, t, q in zip(reports, tau_adj, r_adj)]


# ---------------------------------------------------------------- batch config


@dataclass(frozen=True)
class LanguageEntry:
    language: str
    input: Path
    format: str
    unit: Unit = Unit.CHARACTERS
    family: str = ""
    script: str = ""
    mapping: Optional[Path] = None
    optional_filter: bool = True
    cjk_mode: bool = False
    drop_pos: tuple = ("PUNCT",)


@dataclass(frozen=True)
class BatchConfig:
    languages: tuple
    seed: int = 0
    trials: int = 0
    exact_cap: int = EXACT_CAP
    workers: int = 1


class ConfigError(ValueError):
    pass


_ENTRY_KEYS = {f for f in LanguageEntry.__dataclass_fields__}
_BATCH_KEYS = {"languages", "seed", "trials", "exact_cap", "workers", "defaults"}


def load_config(path: Union[str, Path]) -> BatchConfig:
    """Read a JSON batch config; relative input paths resolve against its directory."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(doc, path.parent)


def config_from_dict(doc: dict, base: Union[str, Path] = ".") -> BatchConfig:
    base = Path(base)
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - _BATCH_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    entries = doc.get("languages")
    if not entries:
        raise ConfigError("config lists no languages")
    defaults = doc.get("defaults", {})
    langs = []
    for i, raw in enumerate(entries):
        item = {**defaults, **raw}
        bad = set(item) - _ENTRY_KEYS
        if bad:
            raise ConfigError(f"language entry {i}: unknown keys {sorted(bad)}")
        for key in ("language", "input", "format"):
            if key not in item:
                raise ConfigError(f"language entry {i}: missing {key!r}")
        if item["format"] not in FORMATS:
            raise ConfigError(f"language entry {i}: unknown format {item['format']!r}")
        try:
            item["unit"] = Unit(item.get("unit", "chars"))
        except ValueError:
            raise ConfigError(f"language entry {i}: unknown unit {item['unit']!r}") from None
        item["input"] = base / item["input"]
        if item.get("mapping"):
            item["mapping"] = base / item["mapping"]
        if "drop_pos" in item:
            item["drop_pos"] = tuple(item["drop_pos"])
        langs.append(LanguageEntry(**item))
    names = [e.language for e in langs]
    if len(set(names)) != len(names):
        raise ConfigError("language names must be unique")
    return BatchConfig(
        languages=tuple(langs),
        seed=int(doc.get("seed", 0)),
        trials=int(doc.get("trials", 0)),
        exact_cap=int(doc.get("exact_cap", EXACT_CAP)),
        workers=int(doc.get("workers", 1)),
    )


def language_seed(seed: int, language: str) -> int:
    # independent of batch order
    return (seed * 1_000_003 + zlib.crc32(language.encode("utf-8"))) % 2**32


def read_source(path: Union[str, Path], fmt: str, **metadata):
    """Parse an input file into tokens (conllu, alignment) or a Lexicon (typelist)."""
    with open(path, encoding="utf-8", newline="") as fh:
        if fmt == "conllu":
            return list(parse_conllu(fh))
        if fmt == "alignment":
            return list(parse_alignment(fh))
        if fmt == "typelist":
            return parse_typelist(fh, **metadata)
    raise ValueError(f"unknown format {fmt!r}")


def run_entry(entry: LanguageEntry, seed: int, trials: int, exact_cap: int) -> LanguageReport:
    mapping = None
    if entry.mapping is not None:
        with open(entry.mapping, encoding="utf-8", newline="") as fh:
            mapping = load_unit_mapping(fh)
    options = AnalysisOptions(
        unit=entry.unit,
        filter=FilterConfig(drop_pos=frozenset(entry.drop_pos), optional_filter=entry.optional_filter,
                            cjk_mode=entry.cjk_mode),
        mapping=mapping,
        trials=trials,
        seed=language_seed(seed, entry.language),
        exact_cap=exact_cap,
    )
    source = read_source(entry.input, entry.format)
    return analyze_language(source, options, entry.language, entry.family, entry.script)


@dataclass
class BatchResult:
    reports: List[LanguageReport]
    errors: Dict[str, str] = field(default_factory=dict)
    outputs: Dict[str, Path] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 2 if self.errors else 0


def _safe_run(args):
    entry, seed, trials, cap = args
    try:
        return entry.language, run_entry(entry, seed, trials, cap), None
    except Exception as exc:  # one language failing must not abort the batch
        return entry.language, None, f"{type(exc).__name__}: {exc}"


def run_batch(
    config: Union[str, Path, BatchConfig],
    out_dir: Optional[Union[str, Path]] = None,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
) -> BatchResult:
    """Analyze every configured language, Holm-adjust across them and write reports."""
    if not isinstance(config, BatchConfig):
        config = load_config(config)
    seed = config.seed if seed is None else seed
    trials = config.trials if trials is None else trials
    jobs = [(e, seed, trials, config.exact_cap) for e in config.languages]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_safe_run, jobs))
    else:
        results = [_safe_run(j) for j in jobs]

    reports, errors = [], {}
    for language, rep, err in results:
        if err is None:
            reports.append(rep)
        else:
            log.error("%s: %s", language, err)
            errors[language] = err
    reports = adjust_reports(reports)
    result = BatchResult(reports, errors)
    if out_dir is not None:
        result.outputs = write_outputs(result, out_dir)
    return result


# ---------------------------------------------------------------- output


def _fmt(column: str, value) -> str:
    if column in _INT_COLUMNS:
        return str(int(value))
    if column in _STAT_COLUMNS:
        return f"{value:.2f}"
    if column in _P_COLUMNS:
        return f"{value:.2e}"
    return str(value).replace("\t", " ")


def report_tsv(reports: Sequence[LanguageReport]) -> str:
    buf = io.StringIO()
    buf.write(f"# Holm-Bonferroni applied separately to the tau and r p-values across {len(reports)} languages\n")
    buf.write("\t".join(TSV_COLUMNS) + "\n")
    for rep in reports:
        row = rep.row()
        buf.write("\t".join(_fmt(c, row[c]) for c in TSV_COLUMNS) + "\n")
    return buf.getvalue()


def parse_report_tsv(text: str) -> List[dict]:
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    rows = []
    for rec in csv.DictReader(lines, delimiter="\t", quoting=csv.QUOTE_NONE):
        row = {}
        for c in TSV_COLUMNS:
            v = rec[c]
            if c in _INT_COLUMNS:
                row[c] = int(v)
            elif c in _STAT_COLUMNS or c in _P_COLUMNS:
                row[c] = float(v)
            else:
                row[c] = v
        rows.append(row)
    return rows


def report_json(result: BatchResult) -> str:
    doc = {
        "holm_families": "tau and r corrected separately across languages",
        "languages": [r.to_dict() for r in result.reports],
        "errors": result.errors,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _slug(name: str) -> str:
    return re.sub(r"[^\w.-]+", "_", name, flags=re.UNICODE).strip("_") or "language"


def write_outputs(result: BatchResult, out_dir: Union[str, Path]) -> Dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "tsv": out / "report.tsv",
        "json": out / "report.json",
        "svg": out / "scatter.svg",
    }
    paths["tsv"].write_text(report_tsv(result.reports), encoding="utf-8")
    paths["json"].write_text(report_json(result), encoding="utf-8")
    points = [(r.language, r.summary.L_r, r.summary.L) for r in result.reports]
    paths["svg"].write_text(scatter_svg(points), encoding="utf-8")
    for rep in result.reports:
        if rep.inventory is None:
            continue
        p = out / f"alphabet_{_slug(rep.language)}.txt"
        with open(p, "w", encoding="utf-8") as fh:
            write_alphabet_audit(CharacterInventory(rep.inventory), rep.alphabet, fh)
        paths[f"alphabet:{rep.language}"] = p
    return paths
