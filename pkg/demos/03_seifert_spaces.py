"""Small Seifert fibered spaces M(e0; r1, r2, r3).

Run: python demos/03_seifert_spaces.py
"""
# %% Arms come from negative continued fractions of -1/r
from fractions import Fraction

from planarcheck import detect_bad_configuration, negative_continued_fraction, seifert_graph, seifert_planarity_check
from planarcheck.plumbing import evaluate_negative_continued_fraction

for r in [Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 7), Fraction(5, 13)]:
    cf = negative_continued_fraction(r.denominator, r.numerator)
    print(f"r={r}: {cf}  evaluates to {evaluate_negative_continued_fraction(cf)}")

# %% The star detector on the plumbing graph
G = seifert_graph(-2, ["1/3", "1/3", "1/3"])
print("weights:", G.weights, "configuration:", detect_bad_configuration(G.intersection_graph()))

# %% With the L-space flag and r_i >= 1/3 the verdict covers every tight structure
for rs, lspace in [(["1/2", "1/2", "1/2"], True), (["2/5", "1/3", "1/2"], True), (["1/3", "1/3", "1/3"], False), (["1/2", "1/2", "1/4"], True)]:
    v = seifert_planarity_check(-2, rs, lspace)
    print(rs, "lspace" if lspace else "      ", "->", v.verdict, v.caveats)
