"""Coinvariant finiteness layer by layer, and the regular-twist search.

Run:  python3 demos/regular_twists.py
"""

from iwartin import (
    CoefficientRing,
    ElementaryModule,
    coinvariants_finite,
    find_regular_twist,
    module_twist,
    omega,
)


def main():
    R = CoefficientRing(p=3, N=16, M=30)
    print(f"ring: p = {R.p}, precision ({R.N}, {R.M})")
    print("omega_1 =", omega(R, 1).to_list())

    # Lambda/(X) has infinite coinvariants at every layer: X divides
    # every omega_n
    E = ElementaryModule(R, (), ((R.x(), 1),))
    print("module Lambda/(X):")
    for n in range(3):
        print(f"  layer {n}: {coinvariants_finite(E, n)}")

    t = find_regular_twist(E, 2)
    print(f"regular twist found: u = {t.u[0]}")
    Ew = module_twist(E, t)
    P = Ew.poly_factors[0][0]
    print(f"twisted generator: {P.to_list()}")
    for n in range(3):
        print(f"  layer {n}: {coinvariants_finite(Ew, n)}")

    # p-power factors never obstruct finiteness
    E2 = ElementaryModule(R, (2,), ((R.series([3, 1]), 1),))
    print("module Lambda/(p^2) + Lambda/(X+p):",
          coinvariants_finite(E2, 1))


if __name__ == "__main__":
    main()
