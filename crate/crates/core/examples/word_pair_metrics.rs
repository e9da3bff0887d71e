//! Every metric for a handful of word pairs.

use taxosim::{FrequencyTable, IcConfig, IcTable, MetricKind, Scorer, Taxonomy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let t = Taxonomy::parse_str(&std::fs::read_to_string(format!("{dir}/toy_taxonomy.tsv"))?)?;
    let f = FrequencyTable::ingest_str(&std::fs::read_to_string(format!("{dir}/toy_freq.tsv"))?)?;
    let ic = IcTable::compute(&t, &f, &IcConfig::default())?;
    let scorer = Scorer::new(&t, &ic);

    print!("{:<20}", "pair");
    for m in MetricKind::ALL {
        print!("{:>14}", m.name());
    }
    println!();
    for (a, b) in [
        ("car", "automobile"),
        ("car", "lamp"),
        ("crane", "bird"),
        ("coast", "shore"),
        ("car", "bird"),
    ] {
        print!("{:<20}", format!("{a}-{b}"));
        for m in MetricKind::ALL {
            print!("{:>14.4}", scorer.score(m, a, b)?.value);
        }
        println!();
    }

    let s = scorer.score(MetricKind::ResnikIC, "car", "lamp")?;
    println!(
        "\nresnik(car, lamp) picked {} and {}",
        t.path(s.chosen_senses.0),
        t.path(s.chosen_senses.1)
    );
    Ok(())
}
