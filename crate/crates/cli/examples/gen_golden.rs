use qlag_cli::wire::{self, Document};
use qlag_core::{l2, qla, sample, scalar};
use qlag_core::algebra::ExtElement;
use std::fs;

fn write(name: &str, doc: &Document) {
    let path = format!("crates/cli/tests/golden/{name}");
    fs::write(&path, doc.to_bytes()).unwrap();
    println!("wrote {path}");
}

fn main() {
    // the string structure on so(3): passes
    let string = sample::string_so3();
    let mut doc = Document::new("l2algebra", serde_json::to_value(wire::l2_to_wire(&string)).unwrap());
    doc.metadata.name = Some("string-so3".into());
    write("string-so3.json", &doc);

    // strict crossed module structure: passes
    let strict = sample::strict_so3();
    let mut doc = Document::new("l2algebra", serde_json::to_value(wire::l2_to_wire(&strict)).unwrap());
    doc.metadata.name = Some("strict-so3".into());
    write("strict-so3.json", &doc);

    // the documented failing bracket: fails at l2
    let bad = sample::failing_jacobi();
    let mut doc = Document::new("l2algebra", serde_json::to_value(wire::l2_to_wire(&bad)).unwrap());
    doc.metadata.name = Some("failing-jacobi".into());
    write("failing-jacobi.json", &doc);

    // its quasi-q image: fails (for `mc --dgla groupoid` and `verify`)
    let (g, s) = qla::from_l2(&bad).unwrap();
    let mut doc = Document::new("quasiq", serde_json::to_value(wire::quasi_q_to_wire(&g, &s)).unwrap());
    doc.metadata.name = Some("broken-quasiq".into());
    write("broken-quasiq.json", &doc);

    // a passing quasi-q structure
    let (g, s) = qla::from_l2(&strict).unwrap();
    let mut doc = Document::new("quasiq", serde_json::to_value(wire::quasi_q_to_wire(&g, &s)).unwrap());
    doc.metadata.name = Some("strict-so3-quasiq".into());
    write("strict-so3-quasiq.json", &doc);

    // a gauge parameter for it
    let mut rng = qlag_core::rng::Rng::new(12);
    let b = sample::random_gauge_parameter(&mut rng, g.dim_e, g.dim_c, &scalar::one());
    let payload = wire::GaugePayload { dim_e: g.dim_e, dim_c: g.dim_c, b: wire::tensor_to_wire(&b) };
    let mut doc = Document::new("gaugeparam", serde_json::to_value(&payload).unwrap());
    doc.metadata.name = Some("gauge-b".into());
    write("gauge-b.json", &doc);

    // the sl2 standard bialgebra (passes) and a broken cobracket (fails)
    let p = sample::random_proto(1);
    let mut doc = Document::new("proto", serde_json::to_value(wire::proto_to_wire(&p)).unwrap());
    doc.metadata.name = Some("sl2-bialgebra".into());
    write("sl2-bialgebra.json", &doc);
    let mut bad_p = p.clone();
    bad_p.gamma.set(&[0], vec![scalar::int(1), scalar::zero(), scalar::zero()]).unwrap();
    let mut doc = Document::new("proto", serde_json::to_value(wire::proto_to_wire(&bad_p)).unwrap());
    doc.metadata.name = Some("broken-bialgebra".into());
    write("broken-bialgebra.json", &doc);

    // cocycle data for the closed-3-form extension over so(3) with C = 0
    let l2 = l2::L2Algebra::new(
        3, 0,
        qlag_core::linalg::Mat::zeros(3, 0),
        sample::so3_bracket(),
        vec![qlag_core::linalg::Mat::zeros(0, 0); 3],
        qlag_core::tensor::AltTensor::zero(3, 3, 0),
    ).unwrap();
    let (g0, s0) = qla::from_l2(&l2).unwrap();
    let mut doc = Document::new("quasiq", serde_json::to_value(wire::quasi_q_to_wire(&g0, &s0)).unwrap());
    doc.metadata.name = Some("so3-core0".into());
    write("so3-core0.json", &doc);
    let h = ExtElement::zero(g0.algebra());
    let xi = ExtElement::monomial(g0.base_algebra(), &[0, 1, 2], scalar::one());
    fs::write("crates/cli/tests/golden/h-zero.json",
        serde_json::to_vec_pretty(&wire::form_to_wire(&h)).unwrap()).unwrap();
    fs::write("crates/cli/tests/golden/xi-det.json",
        serde_json::to_vec_pretty(&wire::form_to_wire(&xi)).unwrap()).unwrap();

    // a ruth document (valid, with nonzero omega)
    let r = sample::random_ruth(3, 1);
    let mut doc = Document::new("ruth", serde_json::to_value(wire::ruth_to_wire(&r)).unwrap());
    doc.metadata.name = Some("ruth-omega".into());
    write("ruth-omega.json", &doc);

    // a crossed module
    let x = sample::xmod_so3_id();
    let mut doc = Document::new("xmod", serde_json::to_value(wire::xmod_to_wire(&x)).unwrap());
    doc.metadata.name = Some("xmod-so3".into());
    write("xmod-so3.json", &doc);

    // weak Lie 2-bialgebra tuple of a quasi-q structure
    let psi = qlag_core::bialg::WeakL2Bialgebra::from_quasi_q(&g, &s).unwrap();
    let mut doc = Document::new("weakl2bialg", serde_json::to_value(wire::weakl2_to_wire(&g, &psi).unwrap()).unwrap());
    doc.metadata.name = Some("quasiq-tuple".into());
    write("quasiq-tuple.json", &doc);

    // morphism documents: a gauge endomorphism and an identity
    let mid = qla::gauge_point(&g, &b, &s).unwrap();
    let middle = qla::to_l2_unchecked(&g, &mid).unwrap();
    let m = qla::gauge_as_morphism(&middle, &strict, &b).unwrap();
    let mut doc = Document::new("l2morphism", serde_json::to_value(wire::morphism_to_wire(&m)).unwrap());
    doc.metadata.name = Some("gauge-morphism".into());
    write("gauge-morphism.json", &doc);
    let idm = l2::L2Morphism::identity(&strict);
    let mut doc = Document::new("l2morphism", serde_json::to_value(wire::morphism_to_wire(&idm)).unwrap());
    doc.metadata.name = Some("identity-morphism".into());
    write("identity-morphism.json", &doc);

    // a two-morphism: identity homotopy on the gauge morphism
    let t = l2::L2TwoMorphism::identity(&m);
    let mut doc = Document::new("l2twomorphism", serde_json::to_value(wire::two_morphism_to_wire(&t)).unwrap());
    doc.metadata.name = Some("identity-homotopy".into());
    write("identity-homotopy.json", &doc);

    // a malformed document: for the exit-2 contract (not valid JSON schema)
    fs::write("crates/cli/tests/golden/unknown-kind.json",
        b"{\"kind\":\"mystery\",\"metadata\":{\"version\":\"1\"},\"payload\":{}}\n").unwrap();
    // normalization warning fixture
    fs::write("crates/cli/tests/golden/needs-normalizing.json", serde_json::to_vec_pretty(&serde_json::json!({
        "kind": "qla",
        "metadata": {"version": "1"},
        "payload": {"dim_c": 1, "dim_e": 1, "partial": [["2/4"]]}
    })).unwrap()).unwrap();
    println!("done");
}
