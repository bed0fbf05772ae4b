"""End-to-end audits of the bundled instances and schema validation."""

import json
from importlib import resources

import pytest

from iwartin.artin import ArtinInstance, full_audit, smallest_primitive_root
from iwartin.errors import NotAnInvolution, SchemaViolation


def load_json(name: str) -> dict:
    ref = resources.files("iwartin").joinpath("instances", f"{name}.json")
    return json.loads(ref.read_text())


def load(name: str) -> ArtinInstance:
    return ArtinInstance.from_json(load_json(name))


@pytest.mark.parametrize("name,p,dp,dm,torsion,diag", [
    ("example1", 7, 1, 1, "auto-satisfied", "Consistent"),
    ("example2", 7, 1, 1, "auto-satisfied", "Consistent"),
    ("example3", 17, 1, 1, "auto-satisfied", "Consistent"),
    ("example4", 11, 2, 2, "assumed", "Consistent"),
    ("example5", 11, 2, 2, "assumed", "Consistent"),
    ("example6", 29, 1, 2, "auto-satisfied", "RamifiedInputAccepted"),
])
def test_bundled_instances_audit_pass(name, p, dp, dm, torsion, diag):
    report = full_audit(load(name))
    assert report.p == p
    assert report.d_plus == dp and report.d_minus == dm
    assert report.d_plus_sigma == dm
    assert report.torsion == torsion
    assert report.verdicts["frobenius_diag"] == diag
    assert report.overall


def test_example1_specifics():
    report = full_audit(load("example1"))
    assert report.delta_order == 36
    assert report.decomposition_order == 3
    assert report.degree_profile == [3]
    assert report.d == 2
    # restriction is a conjugate pair of linear characters
    assert len(report.rho_restriction) == 2
    assert all(m == 1 for _, m in report.rho_restriction)
    assert report.verdicts["H0_V"] and report.verdicts["H0_U"]


def test_example6_specifics():
    report = full_audit(load("example6"))
    assert report.d == 3
    assert report.decomposition_order == 6
    # the local restriction splits as a linear plus a 2-dimensional piece
    from iwartin.artin import DecompositionModel
    inst = load("example6")
    model = DecompositionModel(inst.decomposition, inst.p)
    degs = sorted(model.table.irreducibles[i].degree.rational_value()
                  for i, _ in report.rho_restriction)
    assert degs == [1, 2]
    assert report.pinned_u_plus_agrees is True


def test_smallest_primitive_root():
    assert smallest_primitive_root(7) == 3
    assert smallest_primitive_root(11) == 2
    assert smallest_primitive_root(17) == 3
    assert smallest_primitive_root(29) == 2


def test_report_json_roundtrip():
    report = full_audit(load("example1"))
    data = json.loads(json.dumps(report.to_json()))
    assert data["prime"] == 7
    assert data["overall"] is True
    assert data["verdicts"]["HYP1"] is True


def test_schema_missing_field():
    data = load_json("example1")
    del data["prime"]
    with pytest.raises(SchemaViolation):
        ArtinInstance.from_json(data)


def test_schema_unknown_field():
    data = load_json("example1")
    data["extra"] = 1
    with pytest.raises(SchemaViolation):
        ArtinInstance.from_json(data)


def test_schema_composite_prime():
    data = load_json("example1")
    data["prime"] = 15
    with pytest.raises(SchemaViolation):
        ArtinInstance.from_json(data)


def test_schema_conjugation_must_be_involution():
    data = load_json("example1")
    data["complex_conjugation"] = [2, 3, 1]
    with pytest.raises(NotAnInvolution):
        ArtinInstance.from_json(data)


def test_schema_p_dividing_group_order():
    data = load_json("example1")
    data["prime"] = 3  # divides |S3| x |units|
    with pytest.raises(SchemaViolation):
        ArtinInstance.from_json(data)


def test_overfull_v_plus_fails_hyp2a():
    data = load_json("example1")
    data["v_plus"] = [{"irrep_index": data["v_plus"][0]["irrep_index"],
                       "multiplicity": 5}]
    report = full_audit(ArtinInstance.from_json(data))
    assert report.verdicts["HYP2a"] is False
    assert not report.overall


def test_pinned_values_mismatch_detected():
    data = load_json("example1")
    data["rho"]["index"] = 1  # sign-like character, pinned values now wrong
    with pytest.raises(SchemaViolation):
        full_audit(ArtinInstance.from_json(data))
