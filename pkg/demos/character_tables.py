"""Exact character tables by the modular method, with the certificate.

Run:  python3 demos/character_tables.py
"""

from iwartin import (
    CyclicFactor,
    PermGroup,
    ProductWithCyclic,
    dixon_table,
    find_modular_prime,
    regular_character,
)
from iwartin.chartab import decompose, verify_orthogonality

A5 = PermGroup.from_generators(5, [[2, 3, 4, 5, 1], [2, 3, 1, 4, 5]])


def main():
    ell = find_modular_prime(A5)
    print(f"|A5| = {A5.order}, exponent {A5.exponent()}, "
          f"working prime ell = {ell}")

    table = dixon_table(A5)
    print("degrees:", table.degrees())
    print("sum of squares:", sum(d * d for d in table.degrees()))

    # the golden-ratio values of the two 3-dimensional characters live in
    # Z[zeta_5]; print one row exactly
    chi3 = next(c for c in table.irreducibles
                if c.degree.rational_value() == 3)
    print("a degree-3 row:", [v.to_json()["coords"] for v in chi3.values])

    verify_orthogonality(table)
    print("orthogonality certificate: exact, passed")

    print("regular character decomposes with multiplicity = degree:")
    print(" ", decompose(regular_character(A5), table))

    H = ProductWithCyclic(A5, CyclicFactor(29, 2))
    big = dixon_table(H)
    print(f"product with the mod-29 units: order {H.order}, "
          f"{len(big.irreducibles)} irreducibles, "
          f"degree multiset {sorted(set(big.degrees()))}")


if __name__ == "__main__":
    main()
