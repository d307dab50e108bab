"""Enumerative machines: computing f(n) means writing down f(1)..f(n).

An enumerative machine leaves its whole value history on a write-only
output tape, each value stamped with the step count at which it appeared.
That makes "you cannot shortcut to f(n)" an empirically checkable claim:
a finisher machine must turn the i-th intermediate result into f(i) within
c * T(i) / i steps.  A finisher that merely copies passes easily; one that
recomputes the enumeration from scratch blows the bound.
"""

from fractions import Fraction

from emergelab import turing
from emergelab.fixtures import load_text

enum = turing.parse_machine(load_text("succ_enum.tm"))
copy = turing.parse_machine(load_text("copy_last_block.tm"))

print("A run leaves the whole enumeration on the output tape")
print("=" * 60)
trace = turing.run(enum, 6, step_budget=10 ** 6)
print(f"machine {enum.name}, input 6, halted={trace.halted}, "
      f"total steps {trace.total_steps}")
print("output tape:", trace.raw_output)
print("index  value  written-at-step")
for i, entry in enumerate(trace.entries, start=1):
    print(f"{i:5d}  {entry.value:5d}  {entry.step:8d}")
assert turing.verify_enumeration(trace, [1, 2, 3, 4, 5, 6])

print()
print("Earlier runs are prefixes of later ones (step stamps may drift)")
print("=" * 60)
for n in (3, 4, 5):
    t = turing.run(enum, n, 10 ** 6)
    stamps = " ".join(f"{e.value}@{e.step}" for e in t.entries)
    print(f"n={n}: {stamps}")

print()
print("Two-stage computation: approximation, then finisher")
print("=" * 60)
value, total, breakdown = turing.compose(enum, copy, 9, 10 ** 6)
print(f"f(9) via compose = {value}; {breakdown.approx_steps} enumerator steps"
      f" + {breakdown.finisher_steps} finisher steps")

print()
print("The audit: is each intermediate result 'close to' f(i)?")
print("=" * 60)
indices = range(1, 21)
values = list(indices)
timing = [turing.run(enum, i, 10 ** 6).total_steps for i in indices]
witness = turing.BigOWitness(c=Fraction(8), n0=1)

for finisher, label in ((copy, "copying finisher"),
                        (enum, "recompute-from-scratch finisher")):
    report = turing.audit_approximation(enum, finisher, values, timing,
                                        witness, indices)
    print(f"{label}: {'PASS' if report.verdict else 'FAIL'}")
    for rec in report.records:
        if rec.index in (1, 8, 9, 20):
            print(f"   i={rec.index:2d}  r_i={rec.intermediate:3d}  "
                  f"finisher {rec.finisher_steps:4d} steps  "
                  f"bound {float(rec.bound):8.1f}  "
                  f"{'ok' if rec.passed else 'exceeded'}")
print()
print("note:", report.timing_note)
