"""
Tutorial 01: The Image-Extension Recipe over a Finite Base
==========================================================

In this tutorial, you'll learn:
- How a plan file declares a tower, an endomorphism and a quotient certificate
- Which hypotheses the recipe needs before it builds anything
- How G = Hnn(H * <x>, t, v -> [u, x]) is built and psi is extended to it
- How the surjectivity witnesses and the kernel element close the argument

Scenario:
H is a tower of two HNN extensions over the dihedral group of order 18 and
psi multiplies the exponents of c and s by 3. Both u and v die under psi,
while a quotient of order 6 shows that v is not in the image of psi. The
extended map is then a surjection of G onto itself that kills u.
"""

import sys
from pathlib import Path

# Add project root to path to import hopf_forge
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from hopf_forge import apply, check_hypotheses, format_word, run_recipe
from hopf_forge.morphism import certify_nonmembership
from hopf_forge.plan import load, resolve
from hopf_forge.report import Status


def main():
    """Run the finite base recipe tutorial."""

    print("=" * 70)
    print("Tutorial 01: The Image-Extension Recipe over a Finite Base")
    print("=" * 70)

    # Step 1: Load the plan
    print("\n Step 1: Loading corpus/prop4_1.plan...")
    plan_path = project_root / "corpus" / "prop4_1.plan"

    if not plan_path.exists():
        print(f"[ERROR] Plan file not found: {plan_path}")
        return

    env = resolve(load(plan_path))
    print(f"[OK] Resolved {len(env.groups)} groups, {len(env.endos)} endomorphism(s)")
    inp = env.recipes["G"]
    H = inp.H
    print(f"H = {H.name}, generators: {', '.join(g.name for g in H.generators)}")
    print(f"u = {format_word(inp.u)}")
    print(f"v = {format_word(inp.v)}")
    print(f"y = {format_word(inp.y)}")

    # Step 2: The hypotheses
    print("\n Step 2: Checking the hypotheses on H, psi, u and v...")
    hypotheses = check_hypotheses(inp)
    for entry in hypotheses.entries:
        marker = "[OK]" if entry.status is Status.PASS else "[FAIL]"
        print(f"{marker:<8}{entry.id}")
        print(f"{'':<8}{entry.evidence}")

    # Step 3: Why v is the interesting element
    print("\n Step 3: psi kills v, yet v is not in the image of psi...")
    image = apply(inp.psi, inp.v)
    print(f"psi(v) = {format_word(image)}")
    print(f"  reduces to {format_word(H.reduce(image))}")
    gens = [inp.psi.image_of(g) for g in H.generators]
    certificate = certify_nonmembership(H, gens, inp.v, inp.cert)
    print(f"In the order {inp.cert.table.order} quotient: {certificate.evidence}")

    # Step 4: Run the whole recipe
    print("\n Step 4: Running every stage of the recipe...")
    result = run_recipe(inp, bound=(2, 1))
    print(f"[OK] {len(result.report.entries)} entries recorded")
    print(result.report.render_table())

    # Step 5: The witness
    print("\n Step 5: Examining the non-Hopf witness...")
    if result.witness is None:
        print("[ERROR] The recipe did not produce a witness")
        return
    G = result.witness.G
    print(f"G has {len(G.generators)} generators and {len(G.relators)} relators")
    print(f"psi~ kills {format_word(result.witness.kernel_element)}")
    print(f"Hopfian input: {result.witness.hopfian_assumption}")

    print("\n[EXERCISE] EXERCISE: Raise the elementary search bound to (4, 2)")
    print("Hint: run_recipe(inp, bound=(4, 2)) searches longer words and higher powers")

    print("\n" + "=" * 70)
    print("[SUCCESS] Tutorial Complete!")
    print("=" * 70)
    print("\nKey Takeaways:")
    print("1. The hypotheses are checked before G is built")
    print("2. psi~ fixes x and t, and t [y, x] t^-1 is a preimage of v")
    print("3. Surjectivity is shown generator by generator with explicit preimages")
    print("4. Hopficity of H and relative hyperbolicity are cited, not computed")
    print("\nNext: Tutorial 02 - A base of infinite order elements")


if __name__ == "__main__":
    main()
