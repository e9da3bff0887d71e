//! Build an index from files, save it, load it back and export the IC table.

use taxosim::{BuildConfig, IcConfig, IndexBundle, MetricKind, Scorer};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let bundle = IndexBundle::build(BuildConfig {
        taxonomy_path: format!("{dir}/toy_taxonomy.tsv"),
        freq_path: format!("{dir}/toy_freq.tsv"),
        ic: IcConfig::default(),
        total_n: Some(1000.0),
    })?;

    let path = std::env::temp_dir().join("taxosim-example.idx");
    bundle.save(&path)?;
    let loaded = IndexBundle::load(&path)?;
    println!(
        "saved and reloaded {} ({} bytes)",
        path.display(),
        std::fs::metadata(&path)?.len()
    );

    let scorer = Scorer::new(&loaded.taxonomy, &loaded.ic);
    let jcn = scorer.score(MetricKind::JiangConrathDist, "coast", "shore")?;
    println!("jcn(coast, shore) = {:.4}", jcn.value);

    loaded.write_ic_tsv(std::io::stdout().lock())?;
    std::fs::remove_file(&path)?;
    Ok(())
}
