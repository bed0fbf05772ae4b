"""Hypothesis auditor for a representation triple and its twisted dual.

An instance supplies an odd prime p, a defining polynomial, a permutation
group with a marked complex conjugation, a decomposition subgroup, an
irreducible character rho, and a chosen multiset of local constituents
(the plus subspace).  The audit computes d+, d-, the twisted dual sigma,
the orthogonal complement's constituents, and checks every hypothesis the
functional-equation theorem needs, reporting one verdict per condition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .chartab import (
    CharTable,
    ClassFunction,
    decompose,
    dixon_table,
    find_irrep_index,
    inner_product,
    restrict,
    trivial_character,
)
from .cyclotomic import CycloElement
from .errors import (
    NotAnInvolution,
    NotASubMultiset,
    SchemaViolation,
)
from .modpfactor import PolyModP, frobenius_consistency
from .perms import (
    CyclicFactor,
    PermGroup,
    ProductWithCyclic,
    compose,
    cycle_lengths,
    identity_perm,
    perm_from_one_line,
    perm_order,
)

INSTANCE_FIELDS = {"prime", "polynomial", "group", "complex_conjugation",
                   "decomposition_generators", "rho", "v_plus",
                   "torsion_assumed"}
OPTIONAL_FIELDS = {"pinned_u_plus", "label"}


def smallest_primitive_root(p: int) -> int:
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            seen.add(x)
            x = x * g % p
        if len(seen) == p - 1:
            return g
    raise ValueError(f"no primitive root mod {p}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ArtinInstance:
    """Validated audit input; see from_json for the file format."""

    p: int
    polynomial: tuple
    group: PermGroup
    conjugation: tuple  # element of group
    decomposition: PermGroup  # subgroup of group
    rho_index: int
    pinned_values: tuple | None
    v_plus: tuple  # ((irrep_index, multiplicity), ...)
    torsion_assumed: bool
    pinned_u_plus: tuple | None = None
    label: str | None = None

    @classmethod
    def from_json(cls, data: dict) -> "ArtinInstance":
        if not isinstance(data, dict):
            raise SchemaViolation("instance must be a JSON object")
        missing = INSTANCE_FIELDS - set(data)
        if missing:
            raise SchemaViolation(f"missing fields: {sorted(missing)}")
        unknown = set(data) - INSTANCE_FIELDS - OPTIONAL_FIELDS
        if unknown:
            raise SchemaViolation(f"unknown fields: {sorted(unknown)}")

        p = data["prime"]
        if not isinstance(p, int) or not _is_prime(p) or p == 2:
            raise SchemaViolation(f"prime: {p!r} is not an odd prime")

        poly = data["polynomial"]
        if (not isinstance(poly, list) or len(poly) < 2
                or not all(isinstance(c, int) for c in poly)
                or poly[-1] == 0):
            raise SchemaViolation(
                "polynomial: need ascending integer coefficients, "
                "nonzero leading term")

        grp = data["group"]
        try:
            degree = grp["degree"]
            G = PermGroup.from_generators(degree, grp["generators"])
        except (KeyError, TypeError) as exc:
            raise SchemaViolation(f"group: {exc}") from None
        if degree != len(poly) - 1:
            raise SchemaViolation(
                f"group degree {degree} != polynomial degree {len(poly) - 1}")

        c = perm_from_one_line(data["complex_conjugation"], degree)
        if c not in G:
            raise SchemaViolation("complex_conjugation: not in group")
        if c == identity_perm(degree) or compose(c, c) != identity_perm(degree):
            raise NotAnInvolution(
                "complex_conjugation: must be a non-trivial involution")

        dec_gens = [perm_from_one_line(g, degree)
                    for g in data["decomposition_generators"]]
        D = G.subgroup(dec_gens)

        if (G.order * (p - 1)) % p == 0:
            raise SchemaViolation(
                f"p = {p} divides the order {G.order * (p - 1)} of the full group")

        rho = data["rho"]
        if not isinstance(rho, dict) or "index" not in rho:
            raise SchemaViolation("rho: need an object with an index")
        pinned = rho.get("pinned_values")
        if pinned is not None:
            pinned = tuple(CycloElement.from_json(v) for v in pinned)

        vp = data["v_plus"]
        if not isinstance(vp, list) or not vp:
            raise SchemaViolation("v_plus: need a non-empty list")
        v_plus = []
        for item in vp:
            try:
                idx, mult = item["irrep_index"], item["multiplicity"]
            except (KeyError, TypeError):
                raise SchemaViolation(
                    "v_plus: entries need irrep_index and multiplicity") from None
            if not isinstance(mult, int) or mult < 1:
                raise SchemaViolation("v_plus: multiplicities must be >= 1")
            v_plus.append((idx, mult))

        if not isinstance(data["torsion_assumed"], bool):
            raise SchemaViolation("torsion_assumed: must be a boolean")

        pup = data.get("pinned_u_plus")
        if pup is not None:
            pup = tuple((item["irrep_index"], item["multiplicity"])
                        for item in pup)

        return cls(p=p, polynomial=tuple(poly), group=G, conjugation=c,
                   decomposition=D, rho_index=rho["index"],
                   pinned_values=pinned, v_plus=tuple(v_plus),
                   torsion_assumed=data["torsion_assumed"],
                   pinned_u_plus=pup, label=data.get("label"))

    @classmethod
    def from_file(cls, path) -> "ArtinInstance":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaViolation(f"invalid JSON: {exc}") from None
        return cls.from_json(data)


class DecompositionModel:
    """The local group D' x (Z/pZ)^x with its order-(p-1) cyclic character."""

    def __init__(self, d_prime: PermGroup, p: int, primitive_root=None):
        g = primitive_root if primitive_root else smallest_primitive_root(p)
        self.p = p
        self.primitive_root = g
        self.cyclic = CyclicFactor(p, g)
        self.group = ProductWithCyclic(d_prime, self.cyclic)
        self.table = dixon_table(self.group)
        self.tau = self._tau(self.group)

    def _tau(self, H: ProductWithCyclic) -> ClassFunction:
        vals = []
        for cl in H.classes:
            k = H.cyclic_exponent(cl.representative)
            vals.append(CycloElement.zeta(self.p - 1, k))
        return ClassFunction(H, tuple(vals))

    def extend_tau(self, ambient: ProductWithCyclic) -> ClassFunction:
        """The same cyclic character viewed on a bigger product group."""
        vals = []
        for cl in ambient.classes:
            k = ambient.cyclic_exponent(cl.representative)
            vals.append(CycloElement.zeta(self.p - 1, k))
        return ClassFunction(ambient, tuple(vals))


def d_plus(chi: ClassFunction, c) -> int:
    """Multiplicity of the trivial character of <c> in chi, for an
    involution c: (chi(1) + chi(c)) / 2."""
    c = tuple(c)
    G = chi.group
    if c == identity_perm(G.degree) or compose(c, c) != identity_perm(G.degree):
        raise NotAnInvolution(f"{c} is not a non-trivial involution")
    total = chi.degree + chi(c)
    val = total.divided_by(2)
    if val.denominator != 1:
        raise NotAnInvolution(f"(chi(1) + chi(c))/2 = {val} is not an integer")
    return int(val)


def inflate(chi: ClassFunction, product: ProductWithCyclic) -> ClassFunction:
    """View a character of the left factor as a character of the product,
    trivial on the cyclic factor."""
    vals = []
    for cl in product.classes:
        left = product.project_left(cl.representative)
        vals.append(chi(left))
    return ClassFunction(product, tuple(vals))


def build_sigma(chi_rho: ClassFunction, tau: ClassFunction) -> ClassFunction:
    """Character of the twisted dual: conj(chi_rho) * tau."""
    return chi_rho.conj() * tau


def restriction_decomposition(chi: ClassFunction,
                              model: DecompositionModel) -> list:
    """(irrep index, multiplicity) pairs of chi restricted to the local
    group, indices into the model's canonical table."""
    return decompose(restrict(chi, model.group), model.table)


def _as_multiset(pairs) -> dict:
    out: dict[int, int] = {}
    for idx, mult in pairs:
        out[idx] = out.get(idx, 0) + mult
    return out


def _sub_multiset(small: dict, big: dict) -> bool:
    return all(big.get(k, 0) >= m for k, m in small.items())


def _multiset_diff(big: dict, small: dict) -> dict:
    out = {k: m - small.get(k, 0) for k, m in big.items()}
    return {k: m for k, m in out.items() if m}


def u_plus(v_plus_pairs, rho_rest, model: DecompositionModel) -> list:
    """Constituents of the dual-side plus subspace: conj(w) * tau over the
    complement of v_plus inside the rho restriction."""
    vp = _as_multiset(v_plus_pairs)
    rr = _as_multiset(rho_rest)
    if not _sub_multiset(vp, rr):
        raise NotASubMultiset(
            f"v_plus {sorted(vp.items())} is not contained in the "
            f"restriction {sorted(rr.items())}")
    complement = _multiset_diff(rr, vp)
    out: dict[int, int] = {}
    for idx, mult in complement.items():
        w = model.table.irreducibles[idx]
        dual = build_sigma(w, model.tau)
        j = find_irrep_index(model.table, dual)
        out[j] = out.get(j, 0) + mult
    return sorted(out.items())


@dataclass
class AuditReport:
    label: str | None
    p: int
    delta_order: int
    decomposition_order: int
    degree_profile: list
    verdicts: dict = field(default_factory=dict)
    d: int = 0
    d_plus: int = 0
    d_minus: int = 0
    d_plus_sigma: int = 0
    rho_restriction: list = field(default_factory=list)
    sigma_restriction: list = field(default_factory=list)
    u_plus: list = field(default_factory=list)
    torsion: str = ""
    pinned_u_plus_agrees: bool | None = None
    overall: bool = False

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "prime": self.p,
            "delta_order": self.delta_order,
            "decomposition_order": self.decomposition_order,
            "degree_profile": self.degree_profile,
            "verdicts": dict(self.verdicts),
            "d": self.d,
            "d_plus": self.d_plus,
            "d_minus": self.d_minus,
            "d_plus_sigma": self.d_plus_sigma,
            "rho_restriction": [list(t) for t in self.rho_restriction],
            "sigma_restriction": [list(t) for t in self.sigma_restriction],
            "u_plus": [list(t) for t in self.u_plus],
            "torsion": self.torsion,
            "pinned_u_plus_agrees": self.pinned_u_plus_agrees,
            "overall": self.overall,
        }

    def summary(self) -> str:
        lines = []
        if self.label:
            lines.append(f"instance: {self.label}")
        lines.append(f"p = {self.p}, |group x units| = {self.delta_order}, "
                     f"|local| = {self.decomposition_order * (self.p - 1)}")
        lines.append(f"mod-p degree profile: {self.degree_profile}")
        lines.append(f"d = {self.d}, d+ = {self.d_plus}, d- = {self.d_minus}, "
                     f"d+(dual) = {self.d_plus_sigma}")
        lines.append(f"restriction: {self.rho_restriction}, "
                     f"dual restriction: {self.sigma_restriction}")
        lines.append(f"complement dual constituents: {self.u_plus}")
        if self.pinned_u_plus_agrees is not None:
            lines.append(
                f"pinned dual constituents agree: {self.pinned_u_plus_agrees}")
        for name, ok in self.verdicts.items():
            lines.append(f"  {name}: {ok}")
        lines.append(f"torsion: {self.torsion}")
        lines.append(f"overall: {'pass' if self.overall else 'fail'}")
        return "\n".join(lines)


def full_audit(inst: ArtinInstance, primitive_root=None) -> AuditReport:
    p = inst.p
    G = inst.group
    delta_order = G.order * (p - 1)

    fbar = PolyModP.from_integers(list(inst.polynomial), p)
    if fbar.is_squarefree():
        profile = fbar.degree_profile()
    else:
        profile = [list(t) for t in fbar.factor_degrees()]

    report = AuditReport(
        label=inst.label, p=p, delta_order=delta_order,
        decomposition_order=inst.decomposition.order,
        degree_profile=profile)
    v = report.verdicts

    v["HYP1"] = p % 2 == 1 and delta_order % p != 0
    v["totally_complex"] = inst.conjugation != identity_perm(G.degree)

    table = dixon_table(G)
    chi_rho = table.irreducibles[inst.rho_index]
    if inst.pinned_values is not None:
        if tuple(inst.pinned_values) != tuple(chi_rho.values):
            raise SchemaViolation(
                f"rho.pinned_values do not match irrep {inst.rho_index}")

    model = DecompositionModel(inst.decomposition, p,
                               primitive_root=primitive_root)
    ambient = ProductWithCyclic(G, model.cyclic)
    chi_rho_amb = inflate(chi_rho, ambient)
    tau_amb = model.extend_tau(ambient)
    chi_sigma = build_sigma(chi_rho_amb, tau_amb)
    assert inner_product(chi_sigma, chi_sigma) == 1

    d = chi_rho.degree.rational_value()
    dp = d_plus(chi_rho, inst.conjugation)
    dm = d - dp
    # complex conjugation inside the product: pair c with inversion on units
    c_amb = _conjugation_in_product(inst.conjugation, ambient)
    dps = d_plus(chi_sigma, c_amb)
    report.d, report.d_plus, report.d_minus, report.d_plus_sigma = d, dp, dm, dps
    assert dps == dm

    rho_rest = restriction_decomposition(chi_rho_amb, model)
    sigma_rest = restriction_decomposition(chi_sigma, model)
    report.rho_restriction = rho_rest
    report.sigma_restriction = sigma_rest

    vp = _as_multiset(inst.v_plus)
    rr = _as_multiset(rho_rest)
    dims = {i: irr.degree.rational_value()
            for i, irr in enumerate(model.table.irreducibles)}
    if not _sub_multiset(vp, rr):
        v["HYP2a"] = False
        v["HYP2b"] = False
    else:
        vp_dim = sum(dims[i] * m for i, m in vp.items())
        v["HYP2a"] = vp_dim == dp and 0 < dp < d
        complement = _multiset_diff(rr, vp)
        v["HYP2b"] = not (set(vp) & set(complement))
        report.u_plus = u_plus(inst.v_plus, rho_rest, model)
        up_dim = sum(dims[i] * m for i, m in report.u_plus)
        assert up_dim == dm == dps
        if inst.pinned_u_plus is not None:
            report.pinned_u_plus_agrees = (
                _as_multiset(inst.pinned_u_plus) == _as_multiset(report.u_plus))

    trivial_idx = find_irrep_index(model.table,
                                   trivial_character(model.group))
    v["H0_V"] = all(i != trivial_idx for i, _ in rho_rest)
    v["H0_U"] = all(i != trivial_idx for i, _ in sigma_rest)

    claim = _cyclic_generator_cycle_type(inst.decomposition)
    if claim is None:
        diag = ("RamifiedInputAccepted" if not fbar.is_squarefree()
                else "Inconsistent")
    else:
        diag = frobenius_consistency(list(inst.polynomial), p, claim)
    v["frobenius_diag"] = diag

    if dp == 1:
        report.torsion = "auto-satisfied"
    elif inst.torsion_assumed:
        report.torsion = "assumed"
    else:
        report.torsion = "not established"

    report.overall = (
        all(v[k] for k in ("HYP1", "totally_complex", "HYP2a", "HYP2b",
                           "H0_V", "H0_U"))
        and diag != "Inconsistent"
        and report.torsion in ("auto-satisfied", "assumed"))
    return report


def _conjugation_in_product(c, product: ProductWithCyclic):
    """(c, -1): the left involution paired with negation on the units."""
    p = product.cyclic.modulus
    n = product.left.degree
    neg = tuple(n + ((p - 1) * (i + 1)) % p - 1 for i in range(p - 1))
    return tuple(c) + neg


def _cyclic_generator_cycle_type(D: PermGroup):
    """Cycle type of a generator if D is cyclic, else None.  All generators
    of a cyclic group share one cycle type, so the choice is immaterial."""
    for x in D.elements:
        if perm_order(x) == D.order:
            return cycle_lengths(x)
    return None
