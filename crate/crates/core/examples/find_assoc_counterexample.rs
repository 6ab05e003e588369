//! Seeded search for forms on K4, not all closed, where the wedge product is
//! not associative. Prints the first triple found as a JSON array of forms.
//!
//!     cargo run -p exterior-graph --example find_assoc_counterexample -- [seed]

use std::sync::Arc;

use exterior_graph::calculus::{is_closed, wedge};
use exterior_graph::graph::named;
use exterior_graph::io::FormJson;
use exterior_graph::sample::random_form;
use exterior_graph::CliqueComplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let cx = CliqueComplex::build_full(Arc::new(named::complete(4))).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..10_000 {
        let r = rng.gen_range(0..=1);
        let s = rng.gen_range(0..=1);
        let t = rng.gen_range(0..=3 - r - s);
        let forms = [
            random_form(&mut rng, &cx, r, 0.4).unwrap(),
            random_form(&mut rng, &cx, s, 0.4).unwrap(),
            random_form(&mut rng, &cx, t, 0.4).unwrap(),
        ];
        if forms.iter().all(|f| is_closed(f).unwrap()) {
            continue;
        }
        let left = wedge(&wedge(&forms[0], &forms[1]).unwrap(), &forms[2]).unwrap();
        let right = wedge(&forms[0], &wedge(&forms[1], &forms[2]).unwrap()).unwrap();
        if left != right {
            let json: Vec<FormJson> = forms.iter().map(FormJson::from_form).collect();
            eprintln!("found after {} attempts (seed {seed})", attempt + 1);
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            return;
        }
    }
    eprintln!("no counterexample found");
    std::process::exit(1);
}
