# Mean word length L against the random baseline L_r on a three-type toy lexicon.
#
# Every word type has a frequency f_i and a length l_i. L weights lengths by
# token frequency; L_r is what L would be on average if lengths were handed out
# to types at random. It turns out L_r is just the plain mean type length M.

import numpy as np

from zipfabbrev.ingest import parse_typelist
from zipfabbrev.stats import (
    ShuffleVariant,
    enumerate_shuffles,
    exact_permutation_pvalue,
    mean_token_length,
    pearson_r,
    random_baseline,
)

lex = parse_typelist("""form,frequency,length
x,100,2
y,20,1
z,5,3
""")

print("L   =", mean_token_length(lex))  # 235/125 = 1.88
print("L_r =", random_baseline(lex))  # (2+1+3)/3 = 2

# All 3! re-pairings of the length column.
shuffled = enumerate_shuffles(lex, ShuffleVariant.SHUFFLE_LENGTHS)
print("L' over all shuffles:", np.sort(shuffled))
print("mean L'             :", shuffled.mean())

# The same holds whichever column is shuffled.
for variant in ShuffleVariant:
    print(f"{variant.value:>20}: E[L'] = {enumerate_shuffles(lex, variant).mean():.12f}")

# Left tail of the shuffle distribution: how often is a random pairing at least as short?
print("exact permutation p:", exact_permutation_pvalue(lex))

# L - L_r is a rescaled Pearson correlation between probability and length.
r, p, s_p, s_l, cov = pearson_r(lex)
print(f"r = {r:.5f}; (L - L_r)/((n-1) s_p s_l) = {(mean_token_length(lex) - 2) / (2 * s_p * s_l):.5f}")
