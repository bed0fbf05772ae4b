"""Randomized property batteries over the operator calculus.

Every battery draws its instances from a seeded generator, so a given
(seed, precision, count) triple always produces the same summary text.
Instances that exceed the working precision are recorded as skips, never
as failures: the precision policy refuses rather than guesses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DegreeCapExceeded, PrecisionExhausted
from .iwasawa import (
    CoefficientRing,
    ElementaryModule,
    TwistCharacter,
    char_ideal,
    ext1_elementary,
    funceq_check,
    involute,
    normal_form_equal,
    omega,
    twist,
    twist_lemma_check,
    wprep,
)

DEFAULT_SEED = 1
DEFAULT_COUNT = 200
_PRIMES = (3, 5, 7, 5)
_FIELD_DEGREES = (1, 1, 1, 2)


@dataclass
class PropertyResult:
    name: str
    passed: int
    failed: int
    skipped: int
    first_failure: str = ""

    @property
    def total(self) -> int:
        return self.passed + self.failed + self.skipped


def _ring(rng: random.Random, precision: tuple) -> CoefficientRing:
    i = rng.randrange(4)
    return CoefficientRing(p=_PRIMES[i], f=_FIELD_DEGREES[i],
                           N=precision[0], M=precision[1])


def _random_o(rng: random.Random, R: CoefficientRing) -> tuple:
    return tuple(rng.randrange(R.pN) for _ in range(R.f))


def _random_series(rng: random.Random, R: CoefficientRing):
    n = rng.randint(1, min(9, R.M + 1))
    coeffs = [_random_o(rng, R) for _ in range(n)]
    if all(R.o_val(c) == R.N for c in coeffs):
        coeffs[0] = R.o_one()
    return R.series(coeffs)


def _random_unit_series(rng: random.Random, R: CoefficientRing):
    F = _random_series(rng, R)
    coeffs = list(F.coeffs) or [R.o_zero()]
    c0 = list(coeffs[0])
    if c0[0] % R.p == 0:
        c0[0] = (c0[0] + 1) % R.pN
    coeffs[0] = tuple(c0)
    return R.series(coeffs)


def _random_distinguished(rng: random.Random, R: CoefficientRing, lam: int):
    coeffs = [R.o_from(R.p * rng.randrange(R.pN // R.p or 1))
              for _ in range(lam)] + [R.o_one()]
    return R.series(coeffs)


def _random_twist(rng: random.Random, R: CoefficientRing) -> TwistCharacter:
    u = (1 + R.p * rng.randrange(1, max(R.pN // R.p, 2))) % R.pN
    return TwistCharacter.from_value(R, u)


def _random_module(rng: random.Random, R: CoefficientRing) -> ElementaryModule:
    mus = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 2)))
    factors = []
    for _ in range(rng.randint(0, 2)):
        factors.append((_random_distinguished(rng, R, rng.randint(1, 3)),
                        rng.randint(1, 2)))
    return ElementaryModule(R, mus, tuple(factors))


def _battery(name: str, rng: random.Random, count: int, check) -> PropertyResult:
    res = PropertyResult(name, 0, 0, 0)
    for i in range(count):
        try:
            ok, detail = check(rng)
        except (PrecisionExhausted, DegreeCapExceeded):
            res.skipped += 1
            continue
        if ok:
            res.passed += 1
        else:
            res.failed += 1
            if not res.first_failure:
                res.first_failure = f"instance {i}: {detail}"
    return res


def _congruent(R, A, B, digits: int) -> bool:
    q = R.p ** digits
    n = max(len(A.coeffs), len(B.coeffs))
    return all((x - y) % q == 0
               for k in range(n)
               for x, y in zip(A.coeff(k), B.coeff(k)))


def run_suite(seed: int = DEFAULT_SEED, precision: tuple = (8, 24),
              count: int = DEFAULT_COUNT) -> list:
    """Run every battery; each draws `count` fresh instances."""

    def p_wprep_reconstruction(rng):
        R = _ring(rng, precision)
        F = _random_series(rng, R)
        w = wprep(F)
        rec = (w.P * w.unit).scale(R.p ** w.mu % R.pN)
        ok = _congruent(R, rec, F, w.precision[0])
        return ok, f"F={F.to_list()}"

    def p_invariants_twist(rng):
        R = _ring(rng, precision)
        F = _random_series(rng, R)
        t = _random_twist(rng, R)
        w1, w2 = wprep(F), wprep(twist(F, t))
        ok = (w1.mu, w1.lam) == (w2.mu, w2.lam)
        return ok, f"F={F.to_list()} u={t.u}"

    def p_invariants_involution(rng):
        R = _ring(rng, precision)
        F = _random_series(rng, R)
        w1, w2 = wprep(F), wprep(involute(F))
        ok = (w1.mu, w1.lam) == (w2.mu, w2.lam)
        return ok, f"F={F.to_list()}"

    def p_involution_involutive(rng):
        R = _ring(rng, precision)
        F = _random_series(rng, R)
        ok = involute(involute(F)) == F
        return ok, f"F={F.to_list()}"

    def p_twist_composition(rng):
        R = _ring(rng, precision)
        F = _random_series(rng, R)
        t1, t2 = _random_twist(rng, R), _random_twist(rng, R)
        ok = twist(twist(F, t1), t2) == twist(F, t1.compose(t2))
        return ok, f"F={F.to_list()} u={t1.u} v={t2.u}"

    def p_twist_lemma(rng):
        R = _ring(rng, precision)
        E = _random_module(rng, R)
        t = _random_twist(rng, R)
        verdict = twist_lemma_check(E, t)
        return verdict == "Pass", f"u={t.u}"

    def p_ext1_normal_form(rng):
        R = _ring(rng, precision)
        E = _random_module(rng, R)
        ok = normal_form_equal(char_ideal(ext1_elementary(E)), char_ideal(E))
        return ok, "ext1 changed the ideal"

    def p_additivity(rng):
        R = _ring(rng, precision)
        E1, E2 = _random_module(rng, R), _random_module(rng, R)
        Esum = ElementaryModule(R, E1.p_power_factors + E2.p_power_factors,
                                E1.poly_factors + E2.poly_factors)
        w1, w2, ws = (wprep(char_ideal(E)) for E in (E1, E2, Esum))
        ok = ws.mu == w1.mu + w2.mu and ws.lam == w1.lam + w2.lam
        return ok, "mu/lambda not additive"

    def p_omega_divides(rng):
        R = _ring(rng, precision)
        n_cap = 0
        while R.p ** (n_cap + 2) <= R.M:
            n_cap += 1
        n = rng.randint(0, n_cap)
        from .iwasawa import _poly_divmod
        _, rem = _poly_divmod(omega(R, n + 1), omega(R, n))
        return rem.is_zero(), f"omega_{n} does not divide omega_{n + 1}"

    def _funceq_pair(rng):
        R = _ring(rng, precision)
        mu = rng.randint(0, 1)
        lam = rng.randint(1, 3)
        P = _random_distinguished(rng, R, lam)
        F_V = (P * _random_unit_series(rng, R)).scale(R.p ** mu)
        kappa = TwistCharacter.kappa(R)
        F_U = twist(involute(F_V), kappa.inverse())
        return R, P, F_V, F_U, kappa

    def p_funceq_forward(rng):
        R, P, F_V, F_U, kappa = _funceq_pair(rng)
        return funceq_check(F_V, F_U, kappa) == "Pass", f"F_V={F_V.to_list()}"

    def p_funceq_perturbed(rng):
        R, P, F_V, F_U, kappa = _funceq_pair(rng)
        # nudge the distinguished part: adding p * X^j * (unit) below the
        # distinguished degree moves P by a unit multiple of p, which stays
        # visible above the comparison guard band
        mu = wprep(F_V).mu
        j = rng.randrange(P.degree)
        bump = R.series([0] * j + [R.p ** (mu + 1) % R.pN])
        F_bad = F_V + bump * _random_unit_series(rng, R)
        return funceq_check(F_bad, F_U, kappa) == "Fail", f"F_V={F_V.to_list()}"

    rng = random.Random(seed)
    batteries = [
        ("wprep_reconstruction", p_wprep_reconstruction),
        ("mu_lambda_twist_invariant", p_invariants_twist),
        ("mu_lambda_involution_invariant", p_invariants_involution),
        ("involution_involutive", p_involution_involutive),
        ("twist_composition", p_twist_composition),
        ("twist_lemma", p_twist_lemma),
        ("ext1_preserves_normal_form", p_ext1_normal_form),
        ("char_ideal_additivity", p_additivity),
        ("omega_divisibility", p_omega_divides),
        ("funceq_forward", p_funceq_forward),
        ("funceq_perturbed", p_funceq_perturbed),
    ]
    return [_battery(name, random.Random(rng.randrange(2**32)), count, fn)
            for name, fn in batteries]


def format_summary(results: list, seed: int, precision: tuple) -> str:
    lines = [f"property suite: seed={seed} precision={precision[0]},{precision[1]}"]
    for r in results:
        line = (f"  {r.name}: {r.passed} passed, {r.failed} failed, "
                f"{r.skipped} skipped")
        if r.first_failure:
            line += f"  [{r.first_failure}]"
        lines.append(line)
    total = sum(r.total for r in results)
    failed = sum(r.failed for r in results)
    skipped = sum(r.skipped for r in results)
    lines.append(f"total: {total} instances, {failed} failed, {skipped} skipped")
    lines.append("RESULT: " + ("FAIL" if failed else "PASS"))
    return "\n".join(lines)
