"""Weierstrass preparation, twists, the involution, and the functional
equation decision on truncated series.

Run:  python3 demos/operator_calculus.py
"""

from iwartin import (
    CoefficientRing,
    TwistCharacter,
    funceq_check,
    involute,
    twist,
    wprep,
)


def main():
    R = CoefficientRing(p=3, N=8, M=24)
    print(f"ring: p = {R.p}, {R.N} p-digits, series truncated at X^{R.M}")

    F = R.series([3]) * R.series([3, 1]) * R.series([1, 1])
    print("F = p (X+p) (1+X) =", F.to_list())
    w = wprep(F)
    print(f"wprep: mu = {w.mu}, P = {w.P.to_list()}, "
          f"unit = {w.unit.to_list()}, certified {w.precision}")

    kappa = TwistCharacter.kappa(R)
    print("Tw_kappa(X) =", twist(R.x(), kappa).to_list(),
          "   (X -> (1+p)(1+X) - 1)")
    print("involute(X) =", involute(R.x()).to_list()[:6], "...")

    # forward-construct a pair satisfying the functional equation, then
    # break it by nudging the distinguished part
    F_V = R.series([9, 3, 27, 1, 2, 0, 5])
    F_U = twist(involute(F_V), kappa.inverse())
    print("forward-constructed pair:", funceq_check(F_V, F_U, kappa))
    F_bad = F_V + R.series([3])
    print("perturbed pair:          ", funceq_check(F_bad, F_U, kappa))


if __name__ == "__main__":
    main()
