//! The persistence pipeline, driven through the library: generate,
//! verify, hash, append to a JSON-lines catalog, then query it.
//!
//! The same flow is available from the command line:
//!
//! ```bash
//! ybe gen theorem42 -p 7 -q 3 -n 1 -o s.json
//! ybe verify s.json --par 4 -o cert.json
//! ybe catalog append s.json cert.json --catalog results.jsonl
//! ybe catalog query --singular --catalog results.jsonl
//! ```
//!
//! ```bash
//! cargo run --example catalog_pipeline
//! ```

use ybe::catalog::{solution_hash, Catalog, CatalogEntry, CatalogFilter};
use ybe::certificate::{run_checks, Check};
use ybe::families;

fn main() {
    let dir = std::env::temp_dir().join("ybe-catalog-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.jsonl");
    let _ = std::fs::remove_file(&path);
    let catalog = Catalog::open(&path);

    for s in [
        families::theorem_main(2, 1).unwrap(),
        families::theorem23(2, 2).unwrap(),
        families::theorem42(7, 3, 1).unwrap(),
    ] {
        println!(
            "solution {} hash {}",
            s.family().unwrap().describe(),
            solution_hash(&s)
        );
        let outcome = run_checks(&s, &Check::DEFAULT, 4);
        catalog
            .append(&CatalogEntry::new(&s, outcome.certificate))
            .unwrap();
    }

    println!(
        "\ncatalog now holds {} entries at {}",
        catalog.entries().unwrap().len(),
        path.display()
    );

    let simple_of_8 = CatalogFilter {
        simple: Some(true),
        cardinality: Some(8),
        ..CatalogFilter::default()
    };
    for entry in catalog.query(&simple_of_8).unwrap() {
        println!("simple with 8 points: {}", entry.family.unwrap().describe());
    }

    let singular = CatalogFilter {
        singular: true,
        ..CatalogFilter::default()
    };
    for entry in catalog.query(&singular).unwrap() {
        println!(
            "singular: {} with primes {:?}",
            entry.family.unwrap().describe(),
            entry.certificate.singular_primes.unwrap()
        );
    }
}
