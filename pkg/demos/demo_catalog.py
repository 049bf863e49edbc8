"""The six-dimensional witness catalog, re-verified from scratch.

Every entry stores an algebra (by its differential string), a complex
structure, and one or more metrics with expected verdicts; this demo
recomputes all of them and prints the summary table.  It also shows the
named families with their parameter guards.
"""

from hermlie import named_algebra, render_salamon, witness_lists
from hermlie.catalog import verify_catalog
from hermlie.errors import ConstraintViolatedError

print("named families:")
print("  r'_{3,lambda} at 0:", render_salamon(named_algebra("r'_{3,lambda}", {"lambda": 0})))
print("  r_{4,mu,lambda}:   ", render_salamon(named_algebra("r_{4,mu,lambda}", {"mu": 1, "lambda": "1/2"})))
try:
    named_algebra("N_{6,1}", {"alpha": "-1/2", "beta": "-1/2", "gamma": 0, "delta": 0})
except ConstraintViolatedError as exc:
    print("  N_{6,1} at gamma = delta = 0 is rejected:", exc.constraint)

print("\nwitness catalog:")
for entry in witness_lists():
    expected = ", ".join(
        f"{w.label}: " + "".join(k[0].upper() if v else "-" for k, v in sorted(w.expected.items()))
        for w in entry.witnesses
    )
    print(f"  {entry.name:55s} {entry.salamon:42s} [{expected}]")

rows = verify_catalog()
bad = [r for r in rows if not r[2]]
print(f"\nrecomputed {len(rows)} stored verdicts; failures: {bad or 'none'}")
