//! Every cargo example runs to completion.

mod exterior_calculus {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exterior_calculus.rs"));
}

mod maurer_cartan {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/maurer_cartan.rs"));
}

mod catalog_models {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/catalog_models.rs"));
}

mod flat_embedding {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/flat_embedding.rs"));
}

mod curved_embedding {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/curved_embedding.rs"));
}

mod decide_embeddable {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/decide_embeddable.rs"));
}

mod levi_flat {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/levi_flat.rs"));
}

mod kerr_congruence {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kerr_congruence.rs"));
}

mod metric_lift {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/metric_lift.rs"));
}

mod cli_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_report.rs"));
}

#[test]
fn exterior_calculus_runs() {
    exterior_calculus::run_example().expect("exterior calculus example");
}

#[test]
fn maurer_cartan_runs() {
    maurer_cartan::run_example().expect("maurer cartan example");
}

#[test]
fn catalog_models_runs() {
    catalog_models::run_example().expect("catalog models example");
}

#[test]
fn flat_embedding_runs() {
    flat_embedding::run_example().expect("flat embedding example");
}

#[test]
fn curved_embedding_runs() {
    curved_embedding::run_example().expect("curved embedding example");
}

#[test]
fn decide_embeddable_runs() {
    decide_embeddable::run_example().expect("decide embeddable example");
}

#[test]
fn levi_flat_runs() {
    levi_flat::run_example().expect("levi flat example");
}

#[test]
fn kerr_congruence_runs() {
    kerr_congruence::run_example().expect("kerr congruence example");
}

#[test]
fn metric_lift_runs() {
    metric_lift::run_example().expect("metric lift example");
}

#[test]
fn cli_report_runs() {
    cli_report::run_example().expect("cli report example");
}
