"""Compiling a group presentation into a planar Lefschetz fibration.

Run: python demos/04_group_presentations.py
"""
# %% Badness counts inverse letters and surplus letters in long words
from planarcheck import badness, compile_presentation, parse_presentation, reduce_presentation
from planarcheck.grouppres import abelianization

P = parse_presentation("< a b c d | b a d, c a b, a b^-1 a c^-1 >")
print(badness(P).to_json())

# %% Each rewrite adds generators and short relators and lowers the badness by one
trace = reduce_presentation(P)
for step, Q in zip(trace.to_json(), trace.presentations[1:]):
    print(step["case"], "in relator", step["relator"], "->", Q.to_text())
print("abelianization kept:", abelianization(P), abelianization(trace.final))

# %% Realize relators as curves around their generators' holes
bundle = compile_presentation(P)
print("holes:", bundle.factorization.holes, "curves:", len(bundle.factorization))
print("page euler", bundle.page_euler, ">= bound", bundle.euler_lower_bound, bundle.euler_bound_holds)
print("H1:", list(bundle.homology.h1))

# %% A perfect group with a balanced presentation gives an integral homology ball
ball = compile_presentation("< s t | s s s t^-1 s^-1 t^-1 s^-1, t t t t t t^-1 s^-1 t^-1 s^-1 >")
print("steps:", len(ball.trace.steps), "H1:", list(ball.homology.h1), "H2 rank:", ball.homology.h2_rank)
