"""
Tutorial 03: Writing Your Own Plan
==================================

In this tutorial, you'll learn:
- The declarations a plan file is made of
- How to parse, print and run a plan held in a string
- How a failing check shows up in the report and the exit code
- What syntax and name errors look like

Scenario:
You want to explore <a, t | t^-1 a t = a^2> without writing Python: declare
it in a plan, add a few checks (one of them deliberately wrong) and read
the report.
"""

import sys
from pathlib import Path

# Add project root to path to import hopf_forge
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from hopf_forge import HopfForgeError, RunOptions, parse, print_plan, resolve, run
from hopf_forge.cli import MARKERS

PLAN = """
# <a, t | t^-1 a t = a^2>
group F = free(a)
group BS = hnn(F, t, cyclic { a -> a^2 })

endo sq : BS {
    a -> a^2;
    t -> t;
}

check "t^-1 a t = a^2" { equal(BS, t^-1 a t, a^2) }
check "t^-1 a^3 t is a^6" { member(BS, a, t^-1 a^3 t) = 6 }
check "t a t^-1 is a square root of a" { identity(BS, [t a t^-1, a]) }
check "a has order 2" { order(BS, a) = 2 }
check "sq is an endomorphism" { homomorphism(sq) }
"""


def main():
    """Run the plan writing tutorial."""

    print("=" * 70)
    print("Tutorial 03: Writing Your Own Plan")
    print("=" * 70)

    # Step 1: Parse
    print("\n Step 1: Parsing the plan...")
    plan = parse(PLAN)
    print(f"[OK] {len(plan.declarations)} declarations")
    print("\nCanonical form:")
    print(print_plan(plan))

    # Step 2: Run
    print("\n Step 2: Running every declaration and check...")
    report, code = run(plan, RunOptions(plan_name="bs12", property_cases=20))
    for entry in report.entries:
        print(f"{MARKERS[entry.status]:<10}{entry.id}  {entry.description}")
        if entry.evidence:
            print(f"{'':<10}{entry.evidence}")

    # Step 3: The verdict
    print("\n Step 3: Reading the verdict...")
    print(f"Verdict: {report.verdict}")
    print(f"Exit code: {code} (0 all pass, 1 some entry fails, 2 invalid plan)")

    # Step 4: Errors before anything runs
    print("\n Step 4: Plans that do not parse or resolve...")
    broken = {
        "missing comma": "group F = free(a)\ngroup X = hnn(F t, cyclic { a -> a^2 })",
        "unknown group": "group X = hnn(Y, t, cyclic { a -> a^2 })",
        "stable letter clash": "group F = free(a t)\ngroup X = hnn(F, t, cyclic { a -> a^2 })",
    }
    for label, text in broken.items():
        try:
            resolve(parse(text))
            print(f"[??] {label}: accepted")
        except HopfForgeError as e:
            print(f"[ERROR] {label}: {type(e).__name__}: {e}")

    print("\n[EXERCISE] EXERCISE: Add the group <a, t | t^-1 a^2 t = a^3>")
    print("Hint: change the association to a^2 -> a^3 and drop the sq endomorphism")

    print("\n" + "=" * 70)
    print("[SUCCESS] Tutorial Complete!")
    print("=" * 70)
    print("\nKey Takeaways:")
    print("1. A plan declares groups, maps, certificates, recipes and checks")
    print("2. Names must be declared before they are used")
    print("3. Every check becomes one report entry, in declaration order")
    print("4. Syntax and name errors carry the line of the declaration")


if __name__ == "__main__":
    main()
