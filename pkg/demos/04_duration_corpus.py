# Word length measured as duration: per-type median of aligned word durations.

import numpy as np

from zipfabbrev.filtering import FilterConfig
from zipfabbrev.ingest import parse_alignment
from zipfabbrev.model import Unit
from zipfabbrev.report import AnalysisOptions, analyze_language

rng = np.random.default_rng(1)
words = {"a": (0.08, 400), "the": (0.12, 350), "of": (0.11, 250), "house": (0.38, 30),
         "window": (0.41, 12), "morning": (0.45, 20), "elephant": (0.62, 4), "yes": (0.2, 60)}

rows = ["utt\tform\tstart\tend"]
t = 0.0
for form, (dur, count) in words.items():
    for i in range(count):
        d = max(0.02, rng.normal(dur, dur / 4))
        rows.append(f"utt{i}\t{form}\t{t:.3f}\t{t + d:.3f}")
        t += d + 0.05
rows += ["utt0\t<unk>\t0.0\t0.3", "utt0\t\t0.3\t0.5"]  # unreadable word, pause

opts = AnalysisOptions(unit=Unit.DURATION_SECONDS, filter=FilterConfig(optional_filter=False), trials=5000, seed=3)
rep = analyze_language(parse_alignment(rows), opts, "toy speech")
s = rep.summary
print(f"types={s.n} tokens={s.T}")
print(f"L = {s.L:.3f}s, L_r = {s.L_r:.3f}s")
print(f"Kendall tau = {s.tau:.3f} (p = {s.tau_pvalue:.3g}), Pearson r = {s.r:.3f} (t-test p = {s.r_pvalue:.3g})")
print(f"permutation test on L: p = {s.perm_pvalue:.4f}")
