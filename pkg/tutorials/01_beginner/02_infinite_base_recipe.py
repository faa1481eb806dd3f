"""
Tutorial 02: The Recipe over a Base without Torsion
===================================================

In this tutorial, you'll learn:
- How to run a whole plan with check_file and read its report
- How to summarize report entries with Polars
- How two variants of one construction are compared side by side
- How cited facts appear in a report next to computed ones

Scenario:
H is the HNN extension of Z^2 = <a, b> identifying a^2 with a^4, and psi
squares a. The plan declares the construction twice, once with u built from
b and once from b^2, and both must come out as non-Hopf witnesses.
"""

import sys
from pathlib import Path

import polars as pl

# Add project root to path to import hopf_forge
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from hopf_forge import RunOptions, check_file


def main():
    """Run the infinite base recipe tutorial."""

    print("=" * 70)
    print("Tutorial 02: The Recipe over a Base without Torsion")
    print("=" * 70)

    # Step 1: Run the plan
    print("\n Step 1: Running corpus/prop4_2.plan...")
    plan_path = project_root / "corpus" / "prop4_2.plan"
    options = RunOptions(plan_name="prop4_2", bound=(2, 1), property_cases=50)
    report, code, message = check_file(plan_path, options)

    if report is None:
        print(f"[ERROR] {message}")
        return

    print(f"[OK] {len(report.entries)} entries, exit code {code}")
    print(f"Verdict: {report.verdict}")

    # Step 2: Summarize with Polars
    print("\n Step 2: Summarizing the report...")
    df = report.to_frame().with_columns(
        pl.col("id").str.split(".").list.first().alias("section")
    )
    summary = (
        df.group_by(["section", "status"])
        .agg(pl.col("id").count().alias("entries"), pl.col("ms").sum().alias("total_ms"))
        .sort(["section", "status"])
    )
    print(summary)

    # Step 3: Compare the two recipes
    print("\n Step 3: Comparing the b and b^2 variants...")
    stages = ["hypothesis.u_in_image", "hyperbolic", "elementary", "surjective.a", "non_injective"]
    for stage in stages:
        row = [report.entry(f"{name}.{stage}") for name in ("G", "G_b2")]
        print(f"{stage:<24} G: {row[0].status.value:<6} G_b2: {row[1].status.value}")
        print(f"{'':<24} {row[0].evidence}")
        print(f"{'':<24} {row[1].evidence}")

    # Step 4: Cited facts
    print("\n Step 4: Entries that rest on cited results...")
    assumed = df.filter(pl.col("status") == "assumed").select(["id", "evidence"])
    for entry_id, evidence in assumed.iter_rows():
        print(f"[ASSUMED] {entry_id}")
        print(f"          {evidence}")

    # Step 5: The slowest checks
    print("\n Step 5: Where the time goes...")
    print(df.sort("ms", descending=True).head(5).select(["id", "ms"]))

    print("\n[EXERCISE] EXERCISE: Write the JSON report to a file")
    print("Hint: report.dumps() returns one JSON document")

    print("\n" + "=" * 70)
    print("[SUCCESS] Tutorial Complete!")
    print("=" * 70)
    print("\nKey Takeaways:")
    print("1. check_file parses, resolves and runs a plan in one call")
    print("2. Every entry has an id, a status and the evidence behind it")
    print("3. The exit code is 0 only when every entry passes or is cited")
    print("4. Reports are ordinary Polars frames for further analysis")
    print("\nNext: Tutorial 03 - Writing your own plan")


if __name__ == "__main__":
    main()
