"""Causal rejection on small examples.

A person goes home without money and to a restaurant with it.  Learning
that they were robbed rejects the fact ``money.``, and the four causal
rejection semantics agree on the outcome.  The remaining DLPs show where
those semantics part ways.
"""

from dlplab import causal
from dlplab.fixtures import DLPS
from dlplab.models import sort_interpretations
from dlplab.parser import parse_dlp
from dlplab.syntax import format_id


def show(models):
    return sort_interpretations(models)


intro = parse_dlp(DLPS["intro"])
print("DLP:\n" + str(intro))
for sem in causal.SEMANTICS:
    print(f"{sem.upper()}: {show(causal.models(sem, intro))}")
for model, rejected in causal.explain("ju", intro):
    print("rejected in", sorted(map(str, model)), "->", sorted(format_id(r) for r in rejected))

print()
for name in ("P1", "P2", "P3", "P4", "P5", "P5'"):
    dlp = parse_dlp(DLPS[name])
    row = {s: show(m) for s, m in causal.all_models(dlp).items()}
    print(f"{name}: " + "; ".join(f"{s}={row[s]}" for s in causal.SEMANTICS))

# RD agrees with the level-mapping characterisation
assert causal.rd_models_levelmapping(intro) == causal.models("rd", intro)
