"""
Tutorial 00: Words, Towers and the Word Problem
===============================================

In this tutorial, you'll learn:
- How words are written and freely reduced
- How a finite base group is enumerated from its presentation
- How free products and HNN extensions stack into a tower
- How to ask a tower for reduced forms, equality, element orders and
  membership in a cyclic subgroup

Scenario:
Before checking any construction you want to be sure the solver agrees with
facts you can verify on paper: the dihedral group of order 18, the group
<a, t | t^-1 a t = a^2>, and an automorphism extension of the dihedral group.
"""

import sys
from pathlib import Path

# Add project root to path to import hopf_forge
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from hopf_forge import (
    BaseAutomorphism,
    CyclicAssoc,
    FiniteGroup,
    FinitePresentation,
    FreeGroup,
    FreeProduct,
    GeneratorId,
    Word,
    enumerate_group,
    format_word,
    hnn,
    parse_word,
)
from hopf_forge.tower import finite_automorphism_inverse


def words_over(node):
    """Parse plan-syntax words over the generators of a node."""
    return lambda text: parse_word(text, node.generator)


def main():
    """Run the word problem tutorial."""

    print("=" * 70)
    print("Tutorial 00: Words, Towers and the Word Problem")
    print("=" * 70)

    # Step 1: Words
    print("\n Step 1: Building and reducing words...")
    a, b = GeneratorId("a", "F"), GeneratorId("b", "F")
    w = Word.of(a, 2) * Word.of(b) * Word.of(b, -1) * Word.of(a, -1)
    print(f"a^2 b b^-1 a^-1 reduces freely to: {format_word(w)}")
    print(f"Its inverse: {format_word(w.inverse())}")
    print(f"The empty word prints as: {format_word(Word.identity())}")

    # Step 2: A finite base
    print("\n Step 2: Enumerating the dihedral group of order 18...")
    gens = (GeneratorId("b", "H0"), GeneratorId("c", "H0"))
    by_name = {g.name: g for g in gens}
    relators = tuple(parse_word(r, by_name.__getitem__) for r in ["b^2", "c^9", "b^-1 c b c"])
    presentation = FinitePresentation(gens, relators)
    table = enumerate_group(presentation)
    H0 = FiniteGroup("H0", presentation, table)
    h0 = words_over(H0)
    print(f"[OK] |H0| = {table.order}")
    for text in ["b", "c", "c^3", "b c"]:
        print(f"  order({text}) = {H0.order(h0(text))}")

    # Step 3: Free products
    print("\n Step 3: Gluing a free letter on with a free product...")
    Z = FreeGroup("Z", (GeneratorId("z", "Z"),))
    P = FreeProduct("P", H0, Z)
    p = words_over(P)
    for text in ["b z z^-1 b", "c^9 z b^2", "z b z^-1"]:
        print(f"  {text:<12} -> {format_word(P.reduce(p(text)))}")
    print(f"  order(z b z^-1) = {P.order(p('z b z^-1'))}")
    print(f"  order(z b) = {P.order(p('z b'))}")

    # Step 4: A cyclic HNN extension
    print("\n Step 4: The HNN extension <a, t | t^-1 a t = a^2>...")
    F = FreeGroup("F", (GeneratorId("a", "F"),))
    f = words_over(F)
    BS = hnn("BS", F, GeneratorId("t", "BS"), CyclicAssoc(f("a"), f("a^2")))
    bs = words_over(BS)
    print(f"  t^-1 a t = a^2 ? {BS.are_equal(bs('t^-1 a t'), bs('a^2'))}")
    print(f"  order(t a t^-1) = {BS.order(bs('t a t^-1'))}")
    print(f"  t^-1 a^3 t is a^{BS.cyclic_member(bs('a'), bs('t^-1 a^3 t'))}")
    print(f"  is t a t^-1 a power of a? {BS.cyclic_member(bs('a'), bs('t a t^-1'))}")

    # Step 5: An automorphism extension
    print("\n Step 5: Extending H0 by the automorphism b -> b c^-3, c -> c...")
    mapping = {by_name["b"]: h0("b c^-3"), by_name["c"]: h0("c")}
    inverse = finite_automorphism_inverse(H0, mapping)
    H1 = hnn("H1", H0, GeneratorId("s", "H1"), BaseAutomorphism(mapping, inverse))
    h1 = words_over(H1)
    print(f"  inverse automorphism: b -> {format_word(inverse[by_name['b']])}")
    print(f"  s^-1 b s = b c^-3 ? {H1.are_equal(h1('s^-1 b s'), h1('b c^-3'))}")
    print(f"  normal form of s b s^-1 c: {format_word(H1.reduce(h1('s b s^-1 c')))}")
    print(f"  order(s b) = {H1.order(h1('s b'))}")

    print("\n[EXERCISE] EXERCISE: Try the HNN extension t^-1 a^2 t = a^3")
    print("Hint: the associated words only need infinite order in the base")

    print("\n" + "=" * 70)
    print("[SUCCESS] Tutorial Complete!")
    print("=" * 70)
    print("\nKey Takeaways:")
    print("1. Words are freely reduced as soon as they are built")
    print("2. Finite bases answer every question from their multiplication table")
    print("3. Each level of a tower delegates to the level below it")
    print("4. Membership in <g> returns the exponent, or None")
    print("\nNext: Tutorial 01 - The image-extension recipe over a finite base")


if __name__ == "__main__":
    main()
