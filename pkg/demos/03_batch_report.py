# A batch run over several languages: per-language statistics, Holm-Bonferroni
# across languages, a TSV/JSON report and the L-vs-L_r scatter.

import json
import tempfile
from pathlib import Path

from zipfabbrev.report import run_batch

LANGS = {
    "toy-a": [("a", 500, 1), ("of", 300, 2), ("the", 280, 3), ("and", 120, 3), ("house", 15, 5),
              ("window", 9, 6), ("elephant", 3, 8), ("tree", 40, 4), ("is", 200, 2)],
    "toy-b": [("o", 400, 1), ("de", 350, 2), ("que", 150, 3), ("casa", 30, 4), ("ventana", 6, 7),
              ("arbol", 20, 5), ("es", 220, 2), ("elefante", 2, 8)],
    "toy-c": [("i", 90, 1), ("da", 80, 2), ("nie", 70, 3), ("dom", 25, 3), ("okno", 20, 4),
              ("drzewo", 8, 6), ("slon", 5, 4), ("krzeslo", 4, 7)],
}

work = Path(tempfile.mkdtemp())
entries = []
for name, rows in LANGS.items():
    (work / f"{name}.csv").write_text(
        "form,frequency,length\n" + "".join(f"{f},{k},{l}\n" for f, k, l in rows), encoding="utf-8")
    entries.append({"language": name, "family": "Toy", "script": "Latin", "input": f"{name}.csv",
                    "format": "typelist", "unit": "mapped", "optional_filter": False})
config = work / "config.json"
config.write_text(json.dumps({"seed": 7, "trials": 2000, "languages": entries}), encoding="utf-8")

result = run_batch(config, work / "out")
print((work / "out" / "report.tsv").read_text(encoding="utf-8"))
for rep in result.reports:
    s = rep.summary
    print(f"{rep.language}: L={s.L:.3f} < L_r={s.L_r:.3f}? {s.L < s.L_r}; Monte Carlo p={s.perm_pvalue:.4f}")
print("scatter written to", result.outputs["svg"])
