//! Score a small rating set live against the toy thesaurus.

use taxosim::{
    run_live, BenchmarkFixture, FrequencyTable, HumanColumn, IcConfig, IcTable, MetricKind, Scorer,
    Taxonomy, Transforms, UnknownWords,
};

const RATINGS: &str = "\
word1,word2,human_mc
car,automobile,3.92
coast,shore,3.70
bird,crane,2.97
car,lamp,1.10
lamp,shore,0.42
car,bird,0.20
unicorn,car,0.10
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let t = Taxonomy::parse_str(&std::fs::read_to_string(format!("{dir}/toy_taxonomy.tsv"))?)?;
    let f = FrequencyTable::ingest_str(&std::fs::read_to_string(format!("{dir}/toy_freq.tsv"))?)?;
    let ic = IcTable::compute(&t, &f, &IcConfig::default())?;

    let fixture = BenchmarkFixture::load_str(RATINGS)?;
    let report = run_live(
        &Scorer::new(&t, &ic),
        &fixture,
        &MetricKind::ALL,
        &Transforms::standard(12.0, t.word_count() as f64),
        HumanColumn::Mc,
        UnknownWords::Skip,
    )?;
    println!(
        "{} pairs scored, {} dropped",
        report.n_pairs, report.dropped
    );
    report.write_json(std::io::stdout().lock())?;
    report.write_pairs_csv(std::io::stdout().lock())?;
    Ok(())
}
