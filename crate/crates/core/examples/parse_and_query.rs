//! Load the toy thesaurus and walk its structure.

use taxosim::Taxonomy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/toy_taxonomy.tsv"
    );
    let t = Taxonomy::parse(std::io::BufReader::new(std::fs::File::open(path)?))?;
    println!("{} nodes, {} word senses", t.len(), t.word_count());

    for &sense in t.senses("car") {
        println!("car -> {} (depth {})", t.path(sense), t.depth(sense));
    }

    let car = t.senses("car")[0];
    let bird = t.senses("bird")[0];
    let ls = t.lowest_super_ordinate(car, bird);
    println!(
        "lowest super-ordinate of car and bird: {}",
        t.node(ls).label
    );
    println!("tree distance: {}", t.edge_distance(car, bird));
    println!("group distance: {}", t.group_distance(car, bird));
    println!("words between: {}", t.intervening_count(car, bird)?);
    Ok(())
}
