"""Winslett's update checked against the update and revision postulates."""

from dlplab.classical import Formula, check_revision_postulates, check_update_postulates, winslett_update

phi = Formula.from_worlds([["p", "q"]])
mu = Formula.from_worlds([[], ["p"], ["q"]])
print("p∧q updated by ¬(p∧q):", winslett_update(phi, mu))

print(check_update_postulates(winslett_update, ["p", "q"]).to_markdown())
print(check_revision_postulates(winslett_update, ["p", "q"]).to_markdown())
