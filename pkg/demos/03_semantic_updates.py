"""Updates that work on RE-models instead of syntax.

The exception-driven operator keeps a program as the set of RE-model sets of
its rules.  Two programs with the same HT-models can still be updated
differently, which is the point of working at the level of single rules.
"""

from dlplab import semantic
from dlplab.fixtures import DLPS
from dlplab.models import Universe, equiv, re_models, sort_interpretations
from dlplab.parser import parse_dlp, parse_program, parse_rule
from dlplab.syntax import interp

u = Universe.of(atoms=["p", "q"])
m0, m1 = re_models(parse_rule("p."), u), re_models(parse_rule("not p :- not q."), u)
for j in ("", "p", "p q"):
    print(f"J={{{j}}}: M0 forces {semantic.forces(m0, 'p', interp(j))}, "
          f"M1 forces {semantic.forces(m1, 'p', interp(j))}, "
          f"conflicts {sorted(map(str, semantic.conflicts(m0, m1, interp(j))))}")

c = semantic.exception_fold("b", parse_dlp(DLPS["intro"]))
print("\nintro under eb:", sort_interpretations(c.stable_models()))
print("rule-base after the update:\n" + c.render())

p, q = parse_program("p.\nq."), parse_program("p :- q.\nq.")
print("\nHT-equivalent:", equiv("HT", p, q))
for name in ("impossible-P", "impossible-Q"):
    got = semantic.eb_models(parse_dlp(DLPS[name]))
    print(f"{name} updated by 'not q.':", sort_interpretations(got))

print("\ncardinality revision of {p.} by {not p.}:",
      list(map(str, semantic.cardinality_revision(parse_program("p."), parse_program("not p.")))))
