import copy
import json
from dataclasses import replace
from importlib import resources

import jsonschema
import pytest

from covergraph.certify import (
    COVER_RULES,
    NOT_COVER_RULES,
    Certificate,
    ChiGirthRule,
    ChicGirthRule,
    ExactExhaustion,
    ExactWitness,
    HomIntoCover,
    HomOntoTarget,
    SupergraphOfNonCover,
    TrianglePresent,
    Verdict,
    certificate_from_json,
    certificate_from_obj,
    certificate_to_json,
    certificate_to_obj,
    certify_corollary15,
    certify_exact,
    certify_theorem7,
    certify_theorem8,
    certify_theorem12,
    certify_theorem13,
    check_theorem6,
    validate,
)
from covergraph.circular import CircularColoring
from covergraph.constructions import direct_product, mycielskian
from covergraph.errors import CapacityError, FormatError, InvalidParameterError
from covergraph.graph import INFINITY, ROOT, Myc, Pair, Plain, build_cycle, complete, edgeless, girth, path, petersen
from covergraph.hom import projection
from covergraph.orientations import is_cover_exact

SCHEMA = json.loads(resources.files("covergraph").joinpath("certificate.schema.json").read_text())


def _schema_ok(cert):
    jsonschema.validate(json.loads(certificate_to_json(cert)), SCHEMA)


def test_grammar_is_closed():
    assert len(COVER_RULES) + len(NOT_COVER_RULES) == 8
    assert not set(COVER_RULES) & set(NOT_COVER_RULES)


def test_validate_examples():
    C5 = build_cycle(5)
    cert = Certificate(C5, Verdict.COVER, ChiGirthRule({Myc(0, j): [0, 1, 0, 1, 2][j] for j in range(5)}, 5))
    assert validate(cert, C5).ok
    K4 = complete(4)
    assert validate(Certificate(K4, Verdict.NOT_COVER, TrianglePresent((Plain(0), Plain(1), Plain(2)))), K4).ok
    target = certify_theorem7(1, 4)
    bad = {v: Myc(0, 0) for v in C5.vertices}
    r = validate(Certificate(C5, Verdict.COVER, HomIntoCover(bad), (target,)))
    assert not r.ok and r.locus == "root.step" and "violates edge" in r.reason


def test_grammar_violations_are_rejected():
    K3 = complete(3)
    tri = TrianglePresent((Plain(0), Plain(1), Plain(2)))
    r = validate(Certificate(K3, Verdict.COVER, tri))
    assert not r.ok and "cannot conclude COVER" in r.reason
    r = validate(Certificate(K3, Verdict.NOT_COVER, tri, (certify_exact(K3),)))
    assert not r.ok and "sub-certificate" in r.reason
    r = validate(Certificate(K3, Verdict.NOT_COVER, tri), build_cycle(3).with_name("x").__class__([Plain(0)]))
    assert not r.ok and r.locus == "root"


@pytest.mark.parametrize("m,n", [(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 6), (1, 7), (1, 8)])
def test_theorem7_parity(m, n):
    cert = certify_theorem7(m, n)
    assert cert.verdict is (Verdict.COVER if n % 2 == 0 else Verdict.NOT_COVER)
    assert cert.kind == ("ChiGirthRule" if n % 2 == 0 else "ExactExhaustion")
    assert validate(cert).ok
    _schema_ok(cert)


def test_theorem7_capacity_and_override():
    with pytest.raises(CapacityError):
        certify_theorem7(2, 5)
    cert = certify_theorem7(2, 5, bound_edges=30)
    assert cert.step == ExactExhaustion(30, 30, True) and validate(cert).ok
    assert certify_theorem7(1, 3).step == ExactExhaustion(28, 12, False)
    with pytest.raises(InvalidParameterError):
        certify_theorem7(1, 2)


def test_theorem8_examples():
    c = certify_theorem8(build_cycle(4), 1)
    assert c.verdict is Verdict.COVER and validate(c).ok
    c = certify_theorem8(complete(4), 1)
    assert c.verdict is Verdict.NOT_COVER and c.subs[0].graph == mycielskian(build_cycle(3), 1)
    assert validate(c).ok
    c = certify_theorem8(build_cycle(5), 1)
    assert all(k == v for k, v in c.step.mapping.items()) and validate(c).ok
    c = certify_theorem8(edgeless(3), 1)
    assert c.verdict is Verdict.COVER and c.step.girth == INFINITY and validate(c).ok
    _schema_ok(c)


def test_theorem12_examples():
    c = certify_theorem12(1, 1, 1, 1)
    assert c.graph.order == 49 and c.verdict is Verdict.NOT_COVER and validate(c).ok
    assert c.exhaustive_components() == [("M_1(C_3)", 12)]
    c = certify_theorem12(1, 2, 1, 2)
    assert (c.graph.order, c.graph.size) == (121, 800)
    assert c.exhaustive_components() == [("M_1(C_5)", 20)] and validate(c).ok
    c = certify_theorem12(1, 1, 1, 2)
    assert c.subs[0].graph == direct_product(mycielskian(build_cycle(5), 1), mycielskian(build_cycle(5), 1))
    assert validate(c).ok
    _schema_ok(c)


def test_theorem13_examples():
    c = certify_theorem13(build_cycle(4), build_cycle(5), 1, 1)
    assert c.verdict is Verdict.COVER and c.kind == "HomIntoCover" and validate(c).ok
    c = certify_theorem13(complete(4), build_cycle(5), 1, 1)
    assert c.verdict is Verdict.NOT_COVER and validate(c).ok
    c = certify_theorem13(build_cycle(3), build_cycle(3), 1, 1)
    assert c.verdict is Verdict.NOT_COVER and validate(c).ok
    assert c.subs[0].graph == certify_theorem12(1, 1, 1, 1).graph
    c = certify_theorem13(build_cycle(5), path(3), 2, 1)
    assert c.verdict is Verdict.COVER and validate(c).ok


def test_corollary15_examples():
    r = certify_corollary15(1, 2, 1, 2)
    assert r.value == 4 and r.holds
    assert [b.exact for b in r.factor_bounds] == [4, 4]
    r = certify_corollary15(1, 2, 2, 2, bound_edges=30)
    assert r.value == 4 and r.holds
    with pytest.raises(InvalidParameterError):
        certify_corollary15(1, 1, 1, 1)


def test_theorem6_cases():
    r = check_theorem6(complete(3), complete(3))
    assert r.case == 1 and r.certificate.verdict is Verdict.NOT_COVER and validate(r.certificate).ok
    r = check_theorem6(build_cycle(5), build_cycle(4))
    assert r.case == 2 and r.certificate.verdict is Verdict.COVER and validate(r.certificate).ok
    # chi(C_7) = 3, so the second case applies with G = C_5
    r = check_theorem6(build_cycle(5), build_cycle(7))
    assert r.case == 2 and validate(r.certificate).ok
    assert girth(r.certificate.graph) == 4
    r = check_theorem6(build_cycle(5), complete(4))
    assert r.case is None and r.certificate is None


def test_json_round_trip_is_byte_stable():
    for cert in (certify_theorem12(1, 2, 1, 2), certify_theorem13(build_cycle(4), build_cycle(5), 1, 1), certify_exact(petersen()),
                 certify_exact(complete(4)), certify_theorem7(1, 5)):
        text = certificate_to_json(cert)
        again = certificate_from_json(text)
        assert certificate_to_json(again) == text
        assert validate(again).ok
        _schema_ok(again)


def test_chic_rule_round_trip():
    C5 = build_cycle(5)
    col = CircularColoring(5, 2, {Myc(0, j): (2 * j) % 5 for j in range(5)})
    cert = Certificate(C5, Verdict.COVER, ChicGirthRule(col, 5))
    assert validate(cert).ok
    again = certificate_from_json(certificate_to_json(cert))
    assert again.step.coloring.assignment == col.assignment and validate(again).ok
    _schema_ok(cert)
    low = Certificate(C5, Verdict.COVER, ChicGirthRule(CircularColoring(6, 1, {Myc(0, j): j for j in range(5)}), 5))
    assert "not below girth" in validate(low).reason


def test_dangling_and_malformed_json():
    obj = certificate_to_obj(certify_theorem12(1, 1, 1, 1))
    broken = copy.deepcopy(obj)
    broken["subs"][0]["conclusion"]["graph"] = "0" * 64
    with pytest.raises(FormatError, match="dangling"):
        certificate_from_obj(broken)
    broken = copy.deepcopy(obj)
    broken["step"]["kind"] = "Magic"
    with pytest.raises(FormatError, match="unknown step"):
        certificate_from_obj(broken)
    with pytest.raises(FormatError):
        certificate_from_json("[]")
    with pytest.raises(FormatError):
        certificate_from_json("{")


# -- mutations ---------------------------------------------------------------


def _flip_map_entry(cert):
    """Send one mapped vertex somewhere else in the step's map."""
    mapping = dict(cert.step.mapping)
    keys = list(mapping)
    targets = sorted(set(mapping.values()), key=str)
    a = keys[0]
    mapping[a] = next(t for t in targets if t != mapping[a])
    return replace(cert, step=replace(cert.step, mapping=mapping))


def _drop_relation(cert):
    """Remove one arc from a witness orientation, or one color, or one triangle vertex."""
    step = cert.step
    if isinstance(step, ExactWitness):
        return replace(cert, step=ExactWitness(step.arcs[1:]))
    if isinstance(step, ChiGirthRule):
        col = dict(step.coloring)
        col.pop(next(iter(col)))
        return replace(cert, step=replace(step, coloring=col))
    raise TypeError


def _wrong_girth(cert):
    return replace(cert, step=replace(cert.step, girth=cert.step.girth + 1))


def _in_sub(cert, fn):
    return replace(cert, subs=(fn(cert.subs[0]),))


def test_mutated_certificates_fail_with_locus():
    thm12 = certify_theorem12(1, 2, 1, 2)
    r = validate(_flip_map_entry(thm12))
    assert not r.ok and r.locus == "root.step"
    r = validate(_in_sub(thm12, _flip_map_entry))
    assert not r.ok and r.locus == "root.subs[0].step"

    cover = certify_exact(build_cycle(6))
    assert cover.kind == "ChiGirthRule"
    r = validate(_drop_relation(cover))
    assert not r.ok and r.locus == "root.step"
    witness = Certificate(petersen(), Verdict.COVER, ExactWitness(tuple(is_cover_exact(petersen()).orientation.label_arcs())))
    assert validate(witness).ok
    r = validate(_drop_relation(witness))
    assert not r.ok and "cover every edge" in r.reason

    r = validate(_wrong_girth(cover))
    assert not r.ok and "girth" in r.reason
    thm13 = certify_theorem13(build_cycle(4), build_cycle(5), 1, 1)
    r = validate(_in_sub(thm13, _wrong_girth))
    assert not r.ok and r.locus == "root.subs[0].step"


def test_exhaustion_attestation_checks():
    c = certify_theorem7(1, 5)
    assert not validate(replace(c, step=ExactExhaustion(28, 19, False))).ok
    assert not validate(replace(c, step=ExactExhaustion(10, 20, False))).ok
    assert not validate(replace(c, step=ExactExhaustion(40, 20, False))).ok
    lie = Certificate(build_cycle(4), Verdict.NOT_COVER, ExactExhaustion(28, 4, False))
    r = validate(lie)
    assert not r.ok and "re-run" in r.reason
    assert validate(lie, rerun_exhaustion=False).ok


def test_soundness_spot_check(atlas):
    """Direct certificates agree with the exact decider on every small graph."""
    for G, row in atlas:
        if G.size > 14:
            continue
        cert = certify_exact(G)
        assert validate(cert).ok
        assert (cert.verdict is Verdict.COVER) == is_cover_exact(G).is_cover == (row["dmin"] == 0)


def test_chain_components_validate_independently():
    c = certify_theorem12(1, 2, 2, 2, bound_edges=30)
    for _, node in c.walk():
        assert validate(node).ok
