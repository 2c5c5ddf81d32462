use rmt_edge::ensembles::{mc_expected_tailsum, EnsembleSpec};
fn main() {
    for (dim, n) in [(100usize, 400usize), (200, 400), (300, 300)] {
        let g = dim as f64 / n as f64;
        let edge = (1.0 + g.sqrt()).powi(2);
        let spec = EnsembleSpec::Wishart { dim, samples: n };
        let est = mc_expected_tailsum(&spec, 0.0, edge, 1_000_000, 5).unwrap();
        println!("({dim},{n}) gamma={g}: {:.5} +- {:.5} (dev from 0.16952: {:+.5})", est.mean, est.std_error, est.mean - 0.169518);
    }
}
