import pytest

from chernwall.chern import ChernCalculus
from chernwall.cohomology import NotAUnitError, load_rings, parse_display
from chernwall.vanish import KERNEL_AXIOM, STAGES, Pipeline
from chernwall.vanish.helpers import DisplayError, read_display, scalar_ratio, term_diff


def test_stages_match(pipeline) -> None:
    certificates = pipeline.verify_stages()

    assert [c.stage for c in certificates] == list(STAGES)
    for c in certificates:
        assert c.match, (c.stage, c.notes, [str(d) for d in c.diff])
        assert c.elapsed_ms is None


def test_grr_identities_hold(pipeline) -> None:
    certificate = pipeline.verify_stage("grr_expansion")

    assert "D = A + 3uv: ok" in certificate.notes
    assert "F = B + 3uv: ok" in certificate.notes


def test_c7_vanishes(pipeline) -> None:
    certificate = pipeline.verify_c7()

    assert certificate.match, certificate.notes
    assert certificate.stage == "c7"
    assert certificate.values == {"c7": "0"}
    assert certificate.computed == "0"
    assert certificate.sign in (1, -1)


def test_c8_vanishes(pipeline) -> None:
    certificate = pipeline.verify_c8()

    assert certificate.match, certificate.notes
    assert certificate.values["residual"] == "81*xi^2*b^2"
    assert certificate.values["multiplier"] == "3"
    assert certificate.values["c"] == "-3"
    assert certificate.values["c8"] == "0"
    assert KERNEL_AXIOM in certificate.notes


def test_verify_all_is_cached(pipeline) -> None:
    first = pipeline.verify_all()
    second = pipeline.verify_all()

    assert [c.stage for c in first] == [*STAGES, "c7", "c8"]
    assert all(c.match for c in first)
    assert [c.computed for c in first] == [c.computed for c in second]


def test_runs_without_timings_are_identical(pipeline, rings) -> None:
    again = Pipeline(rings, timings=False).verify_stage("cF")

    assert again == pipeline.verify_stage("cF")


def test_perturbed_display_is_flagged(rings) -> None:
    perturbed = Pipeline(rings, timings=False, displays={"normal_bundle": "1 - 6*xi + 4*a"})

    certificate = perturbed.verify_stage("normal_bundle")

    assert not certificate.match
    assert certificate.diff
    assert all(d.monomial for d in certificate.diff)


def test_corrupted_relation_is_flagged(tmp_path, write_presentations) -> None:
    directory = write_presentations(
        tmp_path / "rings", {"b": ("rel u^3 + a*u + b", "rel u^3 + a*u + 2*b")}
    )

    corrupted = load_rings(directory)
    broken = Pipeline(corrupted, timings=False)

    certificate = broken.verify_stage("normal_bundle")

    assert not certificate.match
    claimed = corrupted.parse(corrupted.b, broken.display_text("normal_bundle"))
    residue = corrupted.b.normal_form(broken.normal_bundle - claimed)
    assert str(residue.homogeneous_part(6)) == "6*b"


def test_unknown_display_override(rings) -> None:
    with pytest.raises(ValueError):
        Pipeline(rings, displays={"c9": "0"})


def test_read_display() -> None:
    assert read_display("c8_residual") == "81*xi^2*b^2"
    with pytest.raises(DisplayError):
        read_display("c9")


def test_scalar_ratio_and_term_diff(rings) -> None:
    s1 = rings.s1
    mu_like = s1.parse("xi^2*b^2")

    assert scalar_ratio(s1.parse("81*xi^2*b^2"), s1.parse("27*xi^2*b^2")) == 3
    assert scalar_ratio(s1.parse("xi^2"), mu_like) is None
    assert scalar_ratio(mu_like, s1.ring.zero) is None

    diff = term_diff(s1.parse("xi + 2*a"), s1.parse("xi + 3*a"))
    assert [str(d) for d in diff] == ["a: claimed 2, computed 3"]


def test_c7_vanishes_on_a_fiber(pipeline) -> None:
    assert "c7 vanishes on a fiber (a = b = 0): ok" in pipeline.verify_c7().notes


@pytest.mark.parametrize("name, degree", [("c7", 14), ("c8", 16)])
def test_displayed_classes_are_homogeneous(model, name, degree) -> None:
    assert model.is_homogeneous(model.embed(parse_display(read_display(name))), degree)


@pytest.mark.parametrize(
    "ring, name, degree",
    [("btilde", "chk7", 12), ("btilde", "ch8van", 14), ("s1", "c8_residual", 16)],
)
def test_displayed_polynomials_are_homogeneous(rings, ring, name, degree) -> None:
    presentation = getattr(rings, ring)

    assert rings.parse(presentation, read_display(name)).is_homogeneous(degree)


def test_chern_classes_are_homogeneous_pieces(pipeline) -> None:
    model = pipeline.model
    total = pipeline.log_cotangent
    pieces = [pipeline.chern.chern_class(total, i) for i in range(model.truncation // 2 + 1)]

    for i, piece in enumerate(pieces):
        assert model.is_homogeneous(piece, 2 * i)
    assert sum(pieces[1:], pieces[0]) == model.truncate(total)


def test_s1_relation_with_wrong_b_coefficient(tmp_path, write_presentations) -> None:
    directory = write_presentations(tmp_path / "rings", {"s1": ("27*b^2", "26*b^2")})
    broken = Pipeline(load_rings(directory), timings=False)

    c8 = broken.verify_c8()

    assert not c8.match
    assert c8.values["residual"] == "81*xi^2*b^2"
    assert c8.values["multiplier"] == "81/26"
    assert "residual is 3*mu's residual: FAILED" in c8.notes
    assert c8.values["c8"] == "unverified"
    assert broken.verify_c7().match


def test_perturbed_c7_display_fails_c7(rings) -> None:
    perturbed = Pipeline(rings, timings=False, displays={"c7": read_display("c7") + " + xi^7"})

    display = perturbed.verify_stage("c7_display")
    c7 = perturbed.verify_c7()

    assert not display.match
    assert display.diff
    assert not c7.match
    assert "prerequisite stage failed: c7_display" in c7.notes
    assert c7.values == {"c7": "unverified"}


def test_failed_computation_becomes_a_failed_certificate(rings, monkeypatch) -> None:
    def not_a_unit(self, excess=None):
        raise NotAUnitError("constant term is not 1")

    monkeypatch.setattr(ChernCalculus, "log_cotangent_total", not_a_unit)
    broken = Pipeline(rings, timings=False)

    certificates = broken.verify_all()

    assert [c.stage for c in certificates] == [*STAGES, "c7", "c8"]
    assert broken.verify_stage("cF").match
    for c in certificates:
        if c.stage in ("c7_display", "c8_display", "c7", "c8"):
            assert not c.match
            assert c.notes == ("computation failed: constant term is not 1",)
