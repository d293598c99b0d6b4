"""Preference- and revision-based semantics next to causal rejection.

Each semantics is run only where it is defined; asking for one outside its
domain raises an error that names the restriction.
"""

from dlplab.errors import ApplicabilityError
from dlplab.fixtures import DLPS
from dlplab.models import sort_interpretations
from dlplab.parser import parse_dlp
from dlplab.registry import compute_models

rows = ["latent", "prz-tautology", "cr-P1", "cr-P5", "cr-P6", "taut-P6", "taut-P7", "rvd-3"]
semantics = ["ju", "rd", "prz", "rvs", "rvd", "eb"]

print("dlp".ljust(14) + "".join(s.ljust(30) for s in semantics))
for name in rows:
    dlp = parse_dlp(DLPS[name])
    cells = []
    for s in semantics:
        try:
            cells.append(str(sort_interpretations(compute_models(s, dlp))))
        except ApplicabilityError:
            cells.append("n/a")
    print(name.ljust(14) + "".join(c.ljust(30) for c in cells))

try:
    compute_models("rvs", parse_dlp(DLPS["rvd-3"]))
except ApplicabilityError as e:
    print("\n" + str(e))
