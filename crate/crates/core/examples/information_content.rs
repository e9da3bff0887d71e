//! Information content under both propagation rules and two log bases.

use taxosim::{FrequencyTable, IcConfig, IcMode, IcTable, Taxonomy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let t = Taxonomy::parse_str(&std::fs::read_to_string(format!("{dir}/toy_taxonomy.tsv"))?)?;
    let f = FrequencyTable::ingest_str(&std::fs::read_to_string(format!("{dir}/toy_freq.tsv"))?)?;
    println!("corpus size N = {}", f.total_n());

    let configs = [
        ("min, bits", IcConfig::default()),
        (
            "sum, bits",
            IcConfig {
                mode: IcMode::Sum,
                ..IcConfig::default()
            },
        ),
        (
            "min, nats",
            IcConfig {
                log_base: std::f64::consts::E,
                ..IcConfig::default()
            },
        ),
    ];
    for (name, cfg) in configs {
        let ic = IcTable::compute(&t, &f, &cfg)?;
        println!("\n[{name}]");
        for node in t.nodes() {
            println!(
                "{:<40} p={:.5} ic={:.4}",
                t.path(node.id),
                ic.probability(node.id),
                ic.ic(node.id)
            );
        }
    }
    Ok(())
}
