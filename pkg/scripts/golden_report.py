"""Print per-sentence golden segmentation results (development aid)."""

import sys

from gcdtkit.segmenter import analyze_sentence
from gcdtkit.segmenter.golden import golden_corpus

verbose = "-v" in sys.argv
only = [a for a in sys.argv[1:] if not a.startswith("-")]
tp = fp = fn = 0
for g in golden_corpus():
    if only and g.id not in only:
        continue
    a = analyze_sentence(g.tokens)
    pred = {s.first_token for s in a.spans if s.first_token > 1}
    t, p_, n_ = len(pred & g.boundaries), len(pred - g.boundaries), len(g.boundaries - pred)
    tp += t; fp += p_; fn += n_
    flag = "ok " if not p_ and not n_ else "BAD"
    print(f"{flag} {g.id} core={g.core} gold={sorted(g.boundaries)} pred={sorted(pred)}")
    if verbose or (flag == "BAD" and only):
        print("   ", " ".join(f"{t.index}:{t.form}" for t in g.tokens))
        for c in a.candidates:
            print("   ", c)
prec = tp / (tp + fp) if tp + fp else 1.0
rec = tp / (tp + fn) if tp + fn else 1.0
print(f"P={prec:.3f} R={rec:.3f} F1={2*prec*rec/(prec+rec) if prec+rec else 0:.3f}")
