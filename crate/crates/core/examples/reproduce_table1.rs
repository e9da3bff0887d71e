//! Correlate the stored Table 1 metric columns with both human rating columns.

use taxosim::{pearson, run_precomputed, BenchmarkFixture, HumanColumn, Transforms};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixture = BenchmarkFixture::table1();
    let transforms = Transforms::standard(12.0, 199_427.0);
    for human in [HumanColumn::Mc, HumanColumn::Repl] {
        let report = run_precomputed(&fixture, human, &transforms)?;
        println!("against {} ({} pairs)", human.name(), report.n_pairs);
        for (column, r) in &report.correlations {
            println!("  {column:<12} {r:.4}");
        }
    }

    let mc: Vec<f64> = fixture.column("human_mc")?.into_iter().flatten().collect();
    let repl: Vec<f64> = fixture
        .column("human_repl")?
        .into_iter()
        .flatten()
        .collect();
    println!("human_mc vs human_repl: {:.4}", pearson(&mc, &repl)?);
    Ok(())
}
